//! Assembly of every named operator of the model as an explicit sparse
//! matrix, organised in per-dimension registries.
//!
//! In the number basis the mode ladders are b^- = -lower, b^+ = -raise
//! (b-/+ equal minus the standard annihilator/creator); the overall sign
//! matters for the three-dimensional basis constructions and is fixed here.
//! Position and momentum derive from them:
//!   x_j = -(b_j^- + b_j^+)/sqrt(2 m w),   p_j = -i sqrt(m w / 2) (b_j^+ - b_j^-).
//!
//! Every registry operator carries a label, a canonical degree tag (where
//! the source grades it), and its creation degree `raising`, which drives
//! the interior-projector depth used when relations are checked.

mod dim1;
mod dim2;
mod dim3;
pub mod parastat;

use indexmap::IndexMap;

use crate::clifford::{dirac_representation, CliffordRep};
use crate::error::{Error, Result};
use crate::fock::{build_mode_ops, embed, embed_spinor, space_dim, FockCutoff};
use crate::graded::Degree;
use crate::linalg::{im, matmul, prune, re, scale, sub, SpMat, C64, ONE, ZERO};

pub use parastat::{parastatistics_audit, parastatistics_audit_all, Family};

#[derive(Debug, Clone)]
pub struct OscillatorModel {
    pub dim: usize,
    pub mass: f64,
    pub omega: f64,
    pub cutoff: FockCutoff,
    pub rep: CliffordRep,
}

/// Default per-mode cutoffs keeping a full relation sweep at desk scale.
pub fn default_cutoff(dim: usize) -> usize {
    match dim {
        1 => 40,
        2 => 16,
        _ => 8,
    }
}

impl OscillatorModel {
    pub fn new(dim: usize, mass: f64, omega: f64, n_max: usize) -> Result<Self> {
        if mass <= 0.0 || omega < 0.0 {
            return Err(Error::Config(format!(
                "mass must be positive and omega nonnegative (got m={mass}, w={omega})"
            )));
        }
        Ok(OscillatorModel {
            dim,
            mass,
            omega,
            cutoff: FockCutoff::new(n_max)?,
            rep: dirac_representation(dim)?,
        })
    }

    pub fn with_rep(mut self, rep: CliffordRep) -> Result<Self> {
        if rep.spatial_dim != self.dim {
            return Err(Error::InvalidDimension(rep.spatial_dim));
        }
        self.rep = rep;
        Ok(self)
    }

    pub fn space_dim(&self) -> usize {
        space_dim(self.dim, self.cutoff, self.rep.rep_dim)
    }

    pub fn sqrt_2mw(&self) -> f64 {
        (2.0 * self.mass * self.omega).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(Degree),
    Inhomogeneous,
}

/// A labelled operator: matrix + canonical degree tag.
#[derive(Debug, Clone)]
pub struct GradedOperator {
    pub label: String,
    pub matrix: SpMat,
    /// None when the source assigns no sector to the operator.
    pub grading: Option<Grading>,
    /// Maximum number of creation factors in any monomial; the interior
    /// depth this operator consumes.
    pub raising: usize,
}

impl GradedOperator {
    pub fn homogeneous_degree(&self) -> Result<&Degree> {
        match &self.grading {
            Some(Grading::Homogeneous(d)) => Ok(d),
            _ => Err(Error::Inhomogeneous(self.label.clone())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorRegistry {
    pub model: OscillatorModel,
    ops: IndexMap<String, GradedOperator>,
}

impl OperatorRegistry {
    fn new(model: OscillatorModel) -> Self {
        OperatorRegistry { model, ops: IndexMap::new() }
    }

    pub fn get(&self, label: &str) -> Result<&GradedOperator> {
        self.ops
            .get(label)
            .ok_or_else(|| Error::MissingLabel(label.into()))
    }

    pub fn matrix(&self, label: &str) -> Result<&SpMat> {
        Ok(&self.get(label)?.matrix)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &GradedOperator> {
        self.ops.values()
    }

    pub(crate) fn add(
        &mut self,
        label: &str,
        matrix: SpMat,
        grading: Option<Grading>,
        raising: usize,
    ) {
        debug_assert_eq!(matrix.rows(), self.model.space_dim(), "{label}");
        debug_assert!(!self.ops.contains_key(label), "duplicate label {label}");
        self.ops.insert(
            label.into(),
            GradedOperator { label: label.into(), matrix: prune(&matrix), grading, raising },
        );
    }

    pub(crate) fn add_hom(&mut self, label: &str, matrix: SpMat, degree: &str, raising: usize) {
        let d = Degree::parse(degree).expect("builtin degree");
        self.add(label, matrix, Some(Grading::Homogeneous(d)), raising);
    }
}

/// Shared raw material for the per-dimension builders.
pub(crate) struct Foundation {
    pub beta: SpMat,
    pub alphas: Vec<SpMat>,
    pub b_minus: Vec<SpMat>,
    pub b_plus: Vec<SpMat>,
    pub x: Vec<SpMat>,
    pub p: Vec<SpMat>,
    pub s_minus: Vec<SpMat>,
    pub s_plus: Vec<SpMat>,
}

impl Foundation {
    pub fn new(model: &OscillatorModel) -> Result<Self> {
        let d = model.dim;
        let cutoff = model.cutoff;
        let spinor = model.rep.rep_dim;
        let mode = build_mode_ops(cutoff);
        let s2mw = model.sqrt_2mw();

        let beta = embed_spinor(model.rep.beta(), d, cutoff);
        let alphas: Vec<SpMat> = model
            .rep
            .alphas()
            .iter()
            .map(|a| embed_spinor(a, d, cutoff))
            .collect();

        let mut b_minus = Vec::with_capacity(d);
        let mut b_plus = Vec::with_capacity(d);
        let mut x = Vec::with_capacity(d);
        let mut p = Vec::with_capacity(d);
        for j in 1..=d {
            let lower = embed(&mode.lower, j, d, cutoff, spinor)?;
            let raise = embed(&mode.raise, j, d, cutoff, spinor)?;
            let bm = scale(&lower, -ONE);
            let bp = scale(&raise, -ONE);
            x.push(scale(&crate::linalg::add(&bm, &bp), re(-1.0 / s2mw)));
            p.push(scale(
                &sub(&bp, &bm),
                im(-(model.mass * model.omega / 2.0).sqrt()),
            ));
            b_minus.push(bm);
            b_plus.push(bp);
        }

        let mut s_minus = Vec::with_capacity(d);
        let mut s_plus = Vec::with_capacity(d);
        for j in 0..d {
            let beta_alpha = matmul(model.rep.beta(), &model.rep.alphas()[j]);
            let sm = scale(
                &crate::linalg::add(&beta_alpha, &model.rep.alphas()[j]),
                im(-0.5),
            );
            let sp = scale(&sub(&beta_alpha, &model.rep.alphas()[j]), im(-0.5));
            s_minus.push(embed_spinor(&sm, d, cutoff));
            s_plus.push(embed_spinor(&sp, d, cutoff));
        }

        Ok(Foundation { beta, alphas, b_minus, b_plus, x, p, s_minus, s_plus })
    }

    /// H = sum_j alpha_j (p_j - beta i m w x_j) + beta m.
    pub fn hamiltonian(&self, model: &OscillatorModel) -> SpMat {
        let mut h = scale(&self.beta, re(model.mass));
        for j in 0..model.dim {
            let kinetic = matmul(&self.alphas[j], &self.p[j]);
            let linear = scale(
                &matmul(&matmul(&self.alphas[j], &self.beta), &self.x[j]),
                im(model.mass * model.omega),
            );
            h = crate::linalg::add(&h, &sub(&kinetic, &linear));
        }
        h
    }
}

/// Assemble the Dirac oscillator Hamiltonian for the model.
pub fn build_hamiltonian(model: &OscillatorModel) -> Result<GradedOperator> {
    let f = Foundation::new(model)?;
    Ok(GradedOperator {
        label: "H".into(),
        matrix: prune(&f.hamiltonian(model)),
        grading: Some(Grading::Inhomogeneous),
        raising: 1,
    })
}

/// Full operator registry for the model's dimension.
pub fn build_registry(model: &OscillatorModel) -> Result<OperatorRegistry> {
    match model.dim {
        1 => dim1::build(model),
        2 => dim2::build(model),
        3 => dim3::build(model),
        d => Err(Error::InvalidDimension(d)),
    }
}

/// The state annihilated by every lowering operator of the model (and by
/// S_- in three dimensions): spinor pinned to a beta = +1 component, all
/// modes empty.
pub fn vacuum_state(model: &OscillatorModel) -> Vec<C64> {
    let dim = model.space_dim();
    let modes = model.cutoff.states_per_mode().pow(model.dim as u32);
    let spinor_index = if model.dim == 3 { 1 } else { 0 };
    let mut v = vec![ZERO; dim];
    v[spinor_index * modes] = ONE;
    v
}

pub(crate) fn sum_all(mats: &[SpMat]) -> SpMat {
    let mut it = mats.iter();
    let first = it.next().expect("nonempty sum").clone();
    it.fold(first, |acc, m| crate::linalg::add(&acc, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fro_norm, hermiticity_residual, matvec, vec_norm, vec_sub_norm, vec_scale};

    #[test]
    fn hamiltonian_is_hermitian_every_dim() {
        for dim in 1..=3 {
            let model = OscillatorModel::new(dim, 1.0, 1.0, 3).unwrap();
            let h = build_hamiltonian(&model).unwrap();
            assert!(hermiticity_residual(&h.matrix) < 1e-12, "dim {dim}");
        }
    }

    #[test]
    fn vacuum_has_energy_m() {
        for dim in 1..=3 {
            let model = OscillatorModel::new(dim, 1.3, 0.7, 4).unwrap();
            let h = build_hamiltonian(&model).unwrap();
            let vac = vacuum_state(&model);
            let hv = matvec(&h.matrix, &vac);
            assert!(
                vec_sub_norm(&hv, &vec_scale(&vac, re(1.3))) < 1e-12,
                "dim {dim}"
            );
        }
    }

    #[test]
    fn adjoint_pairs_across_registries() {
        let pairs_by_dim: [(usize, &[(&str, &str)]); 3] = [
            (1, &[("b-", "b+"), ("s-", "s+"), ("b-s-", "b+s+"), ("b-s+", "b+s-")]),
            (
                2,
                &[
                    ("b1-", "b1+"),
                    ("b2-", "b2+"),
                    ("s1-", "s1+"),
                    ("a1-", "a1+"),
                    ("a2-", "a2+"),
                    ("c1-", "c1+"),
                    ("s-_p", "s+_p"),
                    ("a-_p", "a+_p"),
                    ("c-_m", "c+_m"),
                ],
            ),
            (
                3,
                &[
                    ("b1-", "b1+"),
                    ("s3-", "s3+"),
                    ("Bs-", "Bs+"),
                    ("Ss-", "Ss+"),
                    ("T-", "T+"),
                    ("Bs2-", "Bs2+"),
                    ("L-", "L+"),
                    ("S-", "S+"),
                    ("J-", "J+"),
                ],
            ),
        ];
        for (dim, pairs) in pairs_by_dim {
            let model = OscillatorModel::new(dim, 1.0, 1.0, 3).unwrap();
            let reg = build_registry(&model).unwrap();
            for (lo, hi) in pairs {
                let r = fro_norm(&sub(
                    &crate::linalg::adjoint(&reg.get(lo).unwrap().matrix),
                    &reg.get(hi).unwrap().matrix,
                ));
                assert!(r < 1e-12, "dim {dim}: ({lo})† != {hi}, r={r}");
            }
        }
    }

    #[test]
    fn rejects_bad_model_parameters() {
        assert!(OscillatorModel::new(1, 0.0, 1.0, 4).is_err());
        assert!(OscillatorModel::new(4, 1.0, 1.0, 4).is_err());
        assert!(OscillatorModel::new(1, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn vacuum_is_annihilated() {
        let model = OscillatorModel::new(3, 1.0, 1.0, 3).unwrap();
        let reg = build_registry(&model).unwrap();
        let vac = vacuum_state(&model);
        for label in ["b1-", "b2-", "b3-", "s1-", "s2-", "s3-", "S-"] {
            let out = matvec(reg.matrix(label).unwrap(), &vac);
            assert!(vec_norm(&out) < 1e-14, "{label} should kill the vacuum");
        }
    }
}

//! Representations of the complex Clifford algebra Cl_{n+1}(C) behind the
//! Dirac oscillator: the 4x4 Dirac representation in every dimension, a 2x2
//! minimal representation for one and two spatial dimensions as a
//! cross-check, and the derived spin matrices.
//!
//! Convention: {gamma_j, gamma_k} = 2 delta_jk Id with gamma_{d+1} = beta.
//! All entries are 0, +-1 or +-i, so the anticommutation relations hold with
//! exactly zero residual.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{anticommutator, eye, from_triplets, fro_norm, im, matmul, re, scale, sub, SpMat, I, ONE};
use crate::report::{RelationCheck, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Dirac4,
    Minimal,
}

#[derive(Debug, Clone)]
pub struct CliffordRep {
    pub spatial_dim: usize,
    /// gamma_1 .. gamma_{d+1}, with gamma_{d+1} = beta.
    pub generators: Vec<SpMat>,
    pub rep_dim: usize,
    pub flavor: Flavor,
}

impl CliffordRep {
    pub fn alphas(&self) -> &[SpMat] {
        &self.generators[..self.spatial_dim]
    }

    pub fn beta(&self) -> &SpMat {
        &self.generators[self.spatial_dim]
    }
}

/// Standard Pauli matrices, k in 1..=3.
pub fn pauli(k: usize) -> SpMat {
    match k {
        1 => from_triplets(2, 2, &[(0, 1, ONE), (1, 0, ONE)]),
        2 => from_triplets(2, 2, &[(0, 1, -I), (1, 0, I)]),
        3 => from_triplets(2, 2, &[(0, 0, ONE), (1, 1, -ONE)]),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// The 4x4 Dirac representation: beta = diag(Id, -Id), alpha_i = offdiag(sigma_i, sigma_i).
pub fn dirac_representation(spatial_dim: usize) -> Result<CliffordRep> {
    if !(1..=3).contains(&spatial_dim) {
        return Err(Error::InvalidDimension(spatial_dim));
    }
    let mut generators = Vec::with_capacity(spatial_dim + 1);
    for k in 1..=spatial_dim {
        let s = pauli(k);
        let mut entries = Vec::new();
        for (&v, (i, j)) in s.iter() {
            entries.push((i, j + 2, v));
            entries.push((i + 2, j, v));
        }
        generators.push(from_triplets(4, 4, &entries));
    }
    generators.push(from_triplets(
        4,
        4,
        &[(0, 0, ONE), (1, 1, ONE), (2, 2, -ONE), (3, 3, -ONE)],
    ));
    Ok(CliffordRep {
        spatial_dim,
        generators,
        rep_dim: 4,
        flavor: Flavor::Dirac4,
    })
}

/// 2x2 cross-check representation (beta = sigma_3, alpha_1 = sigma_1,
/// alpha_2 = sigma_2); only exists below three spatial dimensions.
pub fn minimal_representation(spatial_dim: usize) -> Result<CliffordRep> {
    if !(1..=3).contains(&spatial_dim) {
        return Err(Error::InvalidDimension(spatial_dim));
    }
    if spatial_dim > 2 {
        return Err(Error::NoMinimalRep(spatial_dim));
    }
    let mut generators: Vec<SpMat> = (1..=spatial_dim).map(pauli).collect();
    generators.push(pauli(3));
    Ok(CliffordRep {
        spatial_dim,
        generators,
        rep_dim: 2,
        flavor: Flavor::Minimal,
    })
}

/// Spin matrices derived from the alphas.
///
/// Three dimensions: S_i = -(i/2) alpha_j alpha_k (cyclic), the standard
/// (1/2) blockdiag(sigma_i, sigma_i) in the Dirac representation. Two
/// dimensions: the single total spin S_0 = -(1/2) i alpha_1 alpha_2.
pub fn spin_matrices(rep: &CliffordRep) -> Result<Vec<SpMat>> {
    match rep.spatial_dim {
        3 => Ok([(2, 3), (3, 1), (1, 2)]
            .iter()
            .map(|&(a, b)| {
                scale(
                    &matmul(&rep.generators[a - 1], &rep.generators[b - 1]),
                    im(-0.5),
                )
            })
            .collect()),
        2 => Ok(vec![scale(
            &matmul(&rep.generators[0], &rep.generators[1]),
            im(-0.5),
        )]),
        _ => Err(Error::NoSpinMatrices),
    }
}

/// Residuals of {gamma_j, gamma_k} - 2 delta_jk Id over all generator pairs.
/// Entries are exact, so the report passes only at residual zero.
pub fn verify_clifford(rep: &CliffordRep) -> VerificationReport {
    let n = rep.generators.len();
    let id = eye(rep.rep_dim);
    let mut checks = Vec::new();
    for j in 0..n {
        for k in j..n {
            let mut lhs = anticommutator(&rep.generators[j], &rep.generators[k]);
            if j == k {
                lhs = sub(&lhs, &scale(&id, re(2.0)));
            }
            let residual = fro_norm(&lhs);
            checks.push(RelationCheck::exact(
                format!("clifford.acomm.g{}.g{}", j + 1, k + 1),
                residual,
            ));
        }
    }
    VerificationReport::new("clifford", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, to_dense};

    #[test]
    fn dirac_beta_diagonal() {
        let rep = dirac_representation(3).unwrap();
        let b = to_dense(rep.beta());
        let want = [1.0, 1.0, -1.0, -1.0];
        for i in 0..4 {
            assert_eq!(b[(i, i)], re(want[i]));
        }
    }

    #[test]
    fn anticommutators_exact() {
        for d in 1..=3 {
            let rep = dirac_representation(d).unwrap();
            let report = verify_clifford(&rep);
            assert!(report.passed, "dim {d}: {report:?}");
            assert_eq!(report.max_residual, 0.0);
        }
    }

    #[test]
    fn one_dimensional_alpha_beta_anticommute() {
        let rep = dirac_representation(1).unwrap();
        let r = fro_norm(&anticommutator(&rep.generators[0], rep.beta()));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn beta_squares_to_identity() {
        let rep = dirac_representation(2).unwrap();
        let r = fro_norm(&sub(
            &anticommutator(rep.beta(), rep.beta()),
            &scale(&eye(4), re(2.0)),
        ));
        assert_eq!(r, 0.0);
    }

    #[test]
    fn minimal_rep_passes_and_3d_is_rejected() {
        let rep = minimal_representation(1).unwrap();
        assert_eq!(rep.rep_dim, 2);
        assert!(verify_clifford(&rep).passed);
        assert!(verify_clifford(&minimal_representation(2).unwrap()).passed);
        assert!(matches!(
            minimal_representation(3),
            Err(Error::NoMinimalRep(3))
        ));
    }

    #[test]
    fn corrupted_generator_is_flagged() {
        let mut rep = dirac_representation(2).unwrap();
        rep.generators[0] = add_corruption(&rep.generators[0]);
        let report = verify_clifford(&rep);
        assert!(!report.passed);
        assert!(report.max_residual > 0.1);
    }

    fn add_corruption(a: &SpMat) -> SpMat {
        let bump = from_triplets(4, 4, &[(0, 0, re(0.25))]);
        crate::linalg::add(a, &bump)
    }

    #[test]
    fn spin_su2_and_normalisation() {
        let rep = dirac_representation(3).unwrap();
        let s = spin_matrices(&rep).unwrap();
        // [S_i, S_j] = i eps_ijk S_k, direct matrix evaluation
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let r = fro_norm(&sub(&commutator(&s[i], &s[j]), &scale(&s[k], I)));
            assert!(r < 1e-15, "su2 {i}{j}: {r}");
        }
        for si in &s {
            let r = fro_norm(&sub(&matmul(si, si), &scale(&eye(4), re(0.25))));
            assert!(r < 1e-15);
        }
        // S_1 = (1/2) blockdiag(sigma_1, sigma_1)
        let d = to_dense(&s[0]);
        for i in 0..2 {
            for j in 0..2 {
                let expect = to_dense(&pauli(1))[(i, j)] * re(0.5);
                assert_eq!(d[(i, j)], expect);
                assert_eq!(d[(i + 2, j + 2)], expect);
            }
        }
    }

    #[test]
    fn spin_2d_is_half_sigma_z_blocks() {
        let rep = dirac_representation(2).unwrap();
        let s = spin_matrices(&rep).unwrap();
        assert_eq!(s.len(), 1);
        let d = to_dense(&s[0]);
        let want = [0.5, -0.5, 0.5, -0.5];
        for i in 0..4 {
            assert_eq!(d[(i, i)], re(want[i]));
        }
        assert!(matches!(
            spin_matrices(&dirac_representation(1).unwrap()),
            Err(Error::NoSpinMatrices)
        ));
    }
}

//! The labelled 3D eigenbasis |n,l,j,j3> built from the vacuum by the
//! operator words
//!
//! ```text
//! |n,l,j,j3> = (T+)^{n-l} (J-)^{j-j3} (b1+ + i b2+)^l S+ |0>          j = l + 1/2
//! |n,l,j,j3> = (T+)^{n-l} (J-)^{j-j3} ((b1+ + i b2+)^l
//!              + (b1+ + i b2+)^{l-1} b3+ S+) |0>                      j = l - 1/2
//! ```
//!
//! Vectors are kept unnormalised, exactly as the action rules state them;
//! norms are reported separately for conditioning diagnostics.

use std::collections::HashMap;
use std::fmt;

use ndarray::Array2;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{interior_projector, total_occupation};
use crate::linalg::{
    add, eigh, matvec, rank, re, scale, singular_values, vec_dot, vec_norm, vec_scale,
    vec_sub_norm, C64, I, ONE, ZERO,
};
use crate::oscillator::{OperatorRegistry, OscillatorModel};
use crate::report::{RelationCheck, VerificationReport};

/// Quantum numbers (n, l, j, j3) with j, j3 stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FockLabel3D {
    pub n: u32,
    pub l: u32,
    pub j2: u32,
    pub j3x2: i32,
}

impl FockLabel3D {
    pub fn new(n: u32, l: u32, j2: u32, j3x2: i32) -> Result<Self> {
        let label = FockLabel3D { n, l, j2, j3x2 };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.l <= self.n
            && (self.j2 == 2 * self.l + 1 || (self.l >= 1 && self.j2 + 1 == 2 * self.l))
            && self.j2 >= 1
            && self.j3x2.unsigned_abs() <= self.j2
            && (self.j3x2 - self.j2 as i32).rem_euclid(2) == 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidLabel(self.to_string()))
        }
    }

    /// j = l + 1/2 (upper) or j = l - 1/2 (lower) branch.
    pub fn upper_branch(&self) -> bool {
        self.j2 == 2 * self.l + 1
    }
}

impl fmt::Display for FockLabel3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}/2,{}/2>", self.n, self.l, self.j2, self.j3x2)
    }
}

pub struct FockBasis3D {
    pub model: OscillatorModel,
    pub n_built: u32,
    labels: Vec<FockLabel3D>,
    index: HashMap<FockLabel3D, usize>,
    vectors: Vec<Vec<C64>>,
    pub norms: Vec<f64>,
}

impl FockBasis3D {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[FockLabel3D] {
        &self.labels
    }

    pub fn get(&self, label: &FockLabel3D) -> Option<&[C64]> {
        self.index.get(label).map(|&i| self.vectors[i].as_slice())
    }

    /// JSON-lines export: one record per basis vector with its sparse
    /// coefficients in the product basis.
    pub fn export_jsonl(&self) -> String {
        let mut out = String::new();
        for (i, label) in self.labels.iter().enumerate() {
            let coeffs: Vec<(usize, f64, f64)> = self.vectors[i]
                .iter()
                .enumerate()
                .filter(|(_, z)| **z != ZERO)
                .map(|(k, z)| (k, z.re, z.im))
                .collect();
            let rec = serde_json::json!({
                "n": label.n,
                "l": label.l,
                "j2": label.j2,
                "j3x2": label.j3x2,
                "norm": self.norms[i],
                "coeffs": coeffs,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }
}

/// The joint kernel of {b_k^-, s_k^-, S_-}.
///
/// The positive operator A = sum X'X dominates the total boson number, so
/// its kernel lives in the zero-boson shell; the kernel is extracted from
/// that (spinor-dimensional) block and its dimension reported.
pub fn find_vacuum(registry: &OperatorRegistry) -> Result<(Vec<C64>, usize)> {
    let model = &registry.model;
    let dim = model.space_dim();
    let mut a = crate::linalg::zeros(dim);
    for label in ["b1-", "b2-", "b3-", "s1-", "s2-", "s3-", "S-"] {
        let x = registry.matrix(label)?;
        let xd = crate::linalg::adjoint(x);
        a = add(&a, &(&xd * x));
    }
    // zero-shell block indices (all modes empty, any spinor component)
    let modes = model.cutoff.states_per_mode().pow(3);
    let shell0: Vec<usize> = (0..dim)
        .filter(|i| total_occupation(i % modes, 3, model.cutoff) == 0)
        .collect();
    // A preserves boson shells; assert the block is really closed
    for (&v, (i, j)) in a.iter() {
        let si = total_occupation(i % modes, 3, model.cutoff);
        let sj = total_occupation(j % modes, 3, model.cutoff);
        if si != sj && v != ZERO {
            return Err(Error::Config(format!(
                "vacuum operator mixes boson shells ({si} vs {sj})"
            )));
        }
    }
    let k = shell0.len();
    let mut block = Array2::zeros((k, k));
    for (bi, &i) in shell0.iter().enumerate() {
        for (bj, &j) in shell0.iter().enumerate() {
            if let Some(v) = a.get(i, j) {
                block[(bi, bj)] = *v;
            }
        }
    }
    let (vals, vecs) = eigh(&block)?;
    let kernel_dim = vals.iter().filter(|&&v| v.abs() < 1e-10).count();
    if kernel_dim != 1 {
        return Err(Error::VacuumKernel(kernel_dim));
    }
    let mut vac = vec![ZERO; dim];
    for (bi, &i) in shell0.iter().enumerate() {
        vac[i] = vecs[(bi, 0)];
    }
    // fix the phase: largest component real positive
    let pivot = vac
        .iter()
        .cloned()
        .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        .unwrap();
    let phase = pivot / re(pivot.norm());
    let vac = vec_scale(&vac, phase.conj());
    Ok((vac, kernel_dim))
}

fn apply(registry: &OperatorRegistry, label: &str, v: &[C64]) -> Result<Vec<C64>> {
    Ok(matvec(registry.matrix(label)?, v))
}

/// Build every |n,l,j,j3> with n <= n_build; n_build must stay in the
/// trusted interior (n_max - 2).
pub fn build_basis(registry: &OperatorRegistry, n_build: u32) -> Result<FockBasis3D> {
    let model = registry.model.clone();
    if n_build as usize + 2 > model.cutoff.n_max {
        return Err(Error::CutoffTooSmallFor {
            n_max: model.cutoff.n_max,
            needed: n_build as usize + 2,
            what: format!("basis build to n = {n_build}"),
        });
    }
    let (vac, _) = find_vacuum(registry)?;
    let bup = add(registry.matrix("b1+")?, &scale(registry.matrix("b2+")?, I));
    let t_plus = registry.matrix("T+")?;
    let j_minus = registry.matrix("J-")?;

    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    let s_plus_vac = apply(registry, "S+", &vac)?;
    let mut bup_pow_s = s_plus_vac.clone(); // (b1+ + i b2+)^l S+ |0>
    let mut bup_pow = vac.clone(); // (b1+ + i b2+)^l |0>
    for l in 0..=n_build {
        if l > 0 {
            bup_pow_s = matvec(&bup, &bup_pow_s);
            bup_pow = matvec(&bup, &bup_pow);
        }
        // branch tops at n = l
        let mut tops: Vec<(u32, Vec<C64>)> = vec![(2 * l + 1, bup_pow_s.clone())];
        if l >= 1 {
            // (b1+ + i b2+)^l |0> + (b1+ + i b2+)^{l-1} b3+ S+ |0>
            let mut w = apply(registry, "S+", &vac)?;
            w = apply(registry, "b3+", &w)?;
            for _ in 0..(l - 1) {
                w = matvec(&bup, &w);
            }
            let lower_top: Vec<C64> = bup_pow.iter().zip(&w).map(|(a, b)| a + b).collect();
            tops.push((2 * l - 1, lower_top));
        }
        for (j2, top) in tops {
            let mut jvec = top;
            for k in 0..=j2 {
                if k > 0 {
                    jvec = matvec(&j_minus, &jvec);
                }
                let j3x2 = j2 as i32 - 2 * k as i32;
                let mut tvec = jvec.clone();
                for n in l..=n_build {
                    if n > l {
                        tvec = matvec(t_plus, &tvec);
                    }
                    let label = FockLabel3D::new(n, l, j2, j3x2)?;
                    labels.push(label);
                    vectors.push(tvec.clone());
                }
            }
        }
    }
    let norms: Vec<f64> = vectors.iter().map(|v| vec_norm(v)).collect();
    let index: HashMap<FockLabel3D, usize> =
        labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let basis = FockBasis3D { model, n_built: n_build, labels, index, vectors, norms };
    validate_basis(&basis, registry)?;
    Ok(basis)
}

/// Quantum-number and independence invariants of a freshly built basis.
fn validate_basis(basis: &FockBasis3D, registry: &OperatorRegistry) -> Result<()> {
    let n_op = registry.matrix("N")?;
    let l_sq = registry.matrix("L^2")?;
    let j_sq = registry.matrix("J^2")?;
    let j3 = registry.matrix("J3")?;
    for (i, label) in basis.labels.iter().enumerate() {
        let v = &basis.vectors[i];
        let nv = basis.norms[i];
        if nv == 0.0 {
            return Err(Error::RankDeficient { rank: 0, expected: 1 });
        }
        let checks = [
            (n_op, label.n as f64),
            (l_sq, label.l as f64 * (label.l as f64 + 1.0)),
            (j_sq, (label.j2 as f64 / 2.0) * (label.j2 as f64 / 2.0 + 1.0)),
            (j3, label.j3x2 as f64 / 2.0),
        ];
        for (op, eig) in checks {
            let resid = vec_sub_norm(&matvec(op, v), &vec_scale(v, re(eig))) / nv;
            if resid > 1e-9 {
                return Err(Error::Config(format!(
                    "{label} is not an eigenvector (eigenvalue {eig}, residual {resid:.3e})"
                )));
            }
        }
    }
    // linear independence within each N-eigenspace (distinct n are
    // orthogonal automatically); columns normalised for conditioning
    for n in 0..=basis.n_built {
        let cols: Vec<usize> = (0..basis.len())
            .filter(|&i| basis.labels[i].n == n)
            .collect();
        let mut mat = Array2::zeros((basis.model.space_dim(), cols.len()));
        for (c, &i) in cols.iter().enumerate() {
            for (r, z) in basis.vectors[i].iter().enumerate() {
                mat[(r, c)] = z / re(basis.norms[i]);
            }
        }
        let rk = rank(&mat, 1e-8)?;
        if rk != cols.len() {
            return Err(Error::RankDeficient { rank: rk, expected: cols.len() });
        }
    }
    Ok(())
}

/// Count of labels with N-eigenvalue n against the dimension of the n-th
/// trusted eigenspace of N (N is diagonal in the product basis).
pub fn completeness_check(basis: &FockBasis3D, registry: &OperatorRegistry) -> Result<Vec<RelationCheck>> {
    let n_op = registry.matrix("N")?;
    let dim = basis.model.space_dim();
    let mut diag = vec![0.0f64; dim];
    for (&v, (i, j)) in n_op.iter() {
        if i == j {
            diag[i] = v.re;
        }
    }
    let mut checks = Vec::new();
    for n in 0..=basis.n_built {
        let labelled = basis.labels.iter().filter(|l| l.n == n).count();
        let eigenspace = diag
            .iter()
            .filter(|&&d| (d - n as f64).abs() < 1e-9)
            .count();
        let residual = (labelled as f64 - eigenspace as f64).abs();
        checks.push(RelationCheck::new(
            format!("fock3d.completeness[n={n}]"),
            residual,
            residual,
            0,
            0.5,
        ));
    }
    Ok(checks)
}

/// The five action rules on the unnormalised basis, checked as exact vector
/// identities for every label whose image stays inside the built range.
pub fn verify_actions(basis: &FockBasis3D, registry: &OperatorRegistry) -> Result<VerificationReport> {
    let tol = 1e-8;
    let mut checks = Vec::new();
    let ss_plus = registry.matrix("Ss+")?;
    let ss_minus = registry.matrix("Ss-")?;
    let bs_plus = registry.matrix("Bs+")?;
    let bs_minus = registry.matrix("Bs-")?;
    let sc = registry.matrix("Sc")?;
    let rel_resid = |lhs: &[C64], rhs: &[C64], scale_hint: f64| {
        vec_sub_norm(lhs, rhs) / scale_hint.max(vec_norm(rhs)).max(1.0)
    };
    for (i, label) in basis.labels.iter().enumerate() {
        let v = &basis.vectors[i];
        let parity_even = (label.n - label.l) % 2 == 0;
        let nrm = basis.norms[i];

        // (i) Ss+ raises n by one on even parity, kills odd parity
        let lhs = matvec(ss_plus, v);
        if parity_even {
            if label.n < basis.n_built {
                let target = FockLabel3D { n: label.n + 1, ..*label };
                let rhs = basis.get(&target).expect("target in range");
                checks.push(RelationCheck::new(
                    format!("fock3d.Ss+[{label}]"),
                    rel_resid(&lhs, rhs, nrm),
                    rel_resid(&lhs, rhs, nrm),
                    0,
                    tol,
                ));
            }
        } else {
            checks.push(RelationCheck::new(
                format!("fock3d.Ss+kill[{label}]"),
                vec_norm(&lhs) / nrm,
                vec_norm(&lhs) / nrm,
                0,
                tol,
            ));
        }

        // (ii) Ss- lowers n by one on odd parity, kills even parity
        let lhs = matvec(ss_minus, v);
        if parity_even {
            checks.push(RelationCheck::new(
                format!("fock3d.Ss-kill[{label}]"),
                vec_norm(&lhs) / nrm,
                vec_norm(&lhs) / nrm,
                0,
                tol,
            ));
        } else {
            let target = FockLabel3D { n: label.n - 1, ..*label };
            let rhs = basis.get(&target).expect("lower target exists");
            checks.push(RelationCheck::new(
                format!("fock3d.Ss-[{label}]"),
                rel_resid(&lhs, rhs, nrm),
                rel_resid(&lhs, rhs, nrm),
                0,
                tol,
            ));
        }

        // (iii) Sc eigenvalue -(1/2)(-1)^{n-l}
        let eig = -0.5 * if parity_even { 1.0 } else { -1.0 };
        let lhs = matvec(sc, v);
        let resid = vec_sub_norm(&lhs, &vec_scale(v, re(eig))) / nrm;
        checks.push(RelationCheck::new(
            format!("fock3d.Sc[{label}]"),
            resid,
            resid,
            0,
            tol,
        ));

        // (iv) Bs+ maps to (n+1, l±1) with unit coefficient
        if label.n < basis.n_built {
            let lhs = matvec(bs_plus, v);
            let target = if label.upper_branch() {
                FockLabel3D { n: label.n + 1, l: label.l + 1, ..*label }
            } else {
                FockLabel3D { n: label.n + 1, l: label.l - 1, ..*label }
            };
            let rhs = basis.get(&target).expect("Bs+ target in range");
            checks.push(RelationCheck::new(
                format!("fock3d.Bs+[{label}]"),
                rel_resid(&lhs, rhs, nrm),
                rel_resid(&lhs, rhs, nrm),
                0,
                tol,
            ));
        }

        // (v) Bs- with the closed-form coefficients
        let lhs = matvec(bs_minus, v);
        let sign = if parity_even { 1.0 } else { -1.0 };
        let j = label.j2 as f64 / 2.0;
        let (coeff, target) = if label.upper_branch() {
            (
                label.n as f64 - j + 0.5 * sign,
                FockLabel3D { n: label.n.wrapping_sub(1), l: label.l + 1, ..*label },
            )
        } else {
            (
                label.n as f64 + j + 1.0 + 0.5 * sign,
                FockLabel3D { n: label.n.wrapping_sub(1), l: label.l - 1, ..*label },
            )
        };
        let target_exists = label.n >= 1 && target.validate().is_ok();
        if target_exists {
            let rhs = vec_scale(basis.get(&target).expect("Bs- target built"), re(coeff));
            checks.push(RelationCheck::new(
                format!("fock3d.Bs-[{label}]"),
                rel_resid(&lhs, &rhs, nrm),
                rel_resid(&lhs, &rhs, nrm),
                0,
                tol,
            ));
        } else {
            // the coefficient formula must vanish exactly when no target
            // label exists
            let coeff_resid = coeff.abs();
            let kill_resid = vec_norm(&lhs) / nrm;
            checks.push(RelationCheck::new(
                format!("fock3d.Bs-kill[{label}]"),
                coeff_resid.max(kill_resid),
                coeff_resid.max(kill_resid),
                0,
                tol,
            ));
        }
    }
    checks.extend(completeness_check(basis, registry)?);
    Ok(VerificationReport::new("fock3d-actions", checks))
}

/// Injectivity of T+ on the interior, commutant checks behind it, and the
/// positivity of N - Sc + Id on random states.
pub fn injectivity_report(registry: &OperatorRegistry, seed: u64) -> Result<VerificationReport> {
    let model = &registry.model;
    let tol = 1e-10;
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // interior-restricted T+ has full column rank
    let p3 = interior_projector(3, 3, model.cutoff, model.rep.rep_dim)?;
    let t_plus = registry.matrix("T+")?;
    let cols: Vec<usize> = (0..model.space_dim()).filter(|&i| p3.mask[i]).collect();
    let mut sub = Array2::zeros((model.space_dim(), cols.len()));
    for (&v, (i, j)) in t_plus.iter() {
        if p3.mask[j] {
            let c = cols.binary_search(&j).unwrap();
            sub[(i, c)] = v;
        }
    }
    let svals = singular_values(&sub)?;
    let smin = svals.last().copied().unwrap_or(0.0);
    let smax = svals.first().copied().unwrap_or(0.0);
    let full_rank = smin > 1e-10 * smax.max(1.0);
    checks.push(
        RelationCheck::new(
            "fock3d.Tplus.rank",
            if full_rank { 0.0 } else { 1.0 },
            if full_rank { 0.0 } else { 1.0 },
            3,
            0.5,
        ),
    );
    notes.push(format!(
        "T+ interior restriction: {} columns, sigma_min/sigma_max = {:.3e}",
        cols.len(),
        smin / smax.max(f64::MIN_POSITIVE)
    ));

    // commutant checks on the interior
    let pairs = [
        ("L^2", "Bs+^2"),
        ("L^2", "Ss-"),
        ("L^2", "Ss+"),
        ("J1", "Bs+"),
        ("J2", "Bs+"),
        ("J3", "Bs+"),
        ("J1", "Ss+"),
        ("J2", "Ss+"),
        ("J3", "Ss+"),
    ];
    for (a, b) in pairs {
        let oa = registry.get(a)?;
        let ob = registry.get(b)?;
        let depth = oa.raising + ob.raising;
        let p = interior_projector(depth, 3, model.cutoff, model.rep.rep_dim)?;
        let c = crate::linalg::commutator(&oa.matrix, &ob.matrix);
        let (masked, full) = crate::linalg::combo_norms(&[(ONE, &c)], Some(&p.mask));
        checks.push(RelationCheck::new(
            format!("fock3d.commutant[{a},{b}]"),
            masked,
            full,
            depth,
            tol,
        ));
    }

    // positivity of N - Sc + Id over random normalised states
    let n_op = registry.matrix("N")?;
    let sc = registry.matrix("Sc")?;
    let id = registry.matrix("Id")?;
    let pos = add(&crate::linalg::sub(n_op, sc), id);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut min_val = f64::INFINITY;
    for _ in 0..20 {
        let v: Vec<C64> = (0..model.space_dim())
            .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let nv = vec_norm(&v);
        let pv = matvec(&pos, &v);
        let val = vec_dot(&v, &pv).re / (nv * nv);
        min_val = min_val.min(val);
    }
    checks.push(RelationCheck::new(
        "fock3d.positivity",
        if min_val > 0.0 { 0.0 } else { 1.0 + min_val.abs() },
        if min_val > 0.0 { 0.0 } else { 1.0 + min_val.abs() },
        0,
        0.5,
    ));
    notes.push(format!("min <psi|(N - Sc + Id)|psi> over 20 random states: {min_val:.6}"));

    let mut report = VerificationReport::new("fock3d-injectivity", checks).with_seed(seed);
    report.notes = notes;
    Ok(report)
}

/// The theorem eigenvector combinations for one (n, j, j3); returns the
/// realised (vector, energy) pairs.
pub fn eigenvectors_3d(
    n: u32,
    j2: u32,
    j3x2: i32,
    basis: &FockBasis3D,
) -> Result<Vec<(Vec<C64>, f64)>> {
    let (m, w) = (basis.model.mass, basis.model.omega);
    let j = j2 as f64 / 2.0;
    let nf = n as f64;
    let lower_l = (j2 - 1) / 2; // l = j - 1/2
    let upper_l = (j2 + 1) / 2; // l = j + 1/2
    let lower = FockLabel3D::new(n, lower_l, j2, j3x2)?;
    let lower_vec = basis
        .get(&lower)
        .ok_or_else(|| Error::MissingBranch(lower.to_string()))?;
    let upper = FockLabel3D { n, l: upper_l, j2, j3x2 };
    let upper_vec = upper.validate().ok().and_then(|_| basis.get(&upper));
    let parity = (nf - j + 0.5).round() as i64;
    let odd = parity.rem_euclid(2) == 1;
    let two_mw_sqrt = (2.0 * m * w).sqrt();
    let e_sq = if odd {
        2.0 * m * w * (nf + j) + 3.0 * m * w + m * m
    } else {
        2.0 * m * w * (nf - j) + m * w + m * m
    };
    let e_abs = e_sq.max(0.0).sqrt();
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let e = sign * e_abs;
        let (c_lower, c_upper) = if odd {
            (e - m, two_mw_sqrt)
        } else {
            (two_mw_sqrt, e - m)
        };
        match upper_vec {
            Some(uv) => {
                let v: Vec<C64> = lower_vec
                    .iter()
                    .zip(uv)
                    .map(|(a, b)| re(c_lower) * a + re(c_upper) * b)
                    .collect();
                out.push((v, e));
            }
            None => {
                // single-branch level: only the combination whose missing
                // component has zero coefficient survives
                if c_upper.abs() < 1e-12 {
                    out.push((vec_scale(lower_vec, re(c_lower)), e));
                } else if odd {
                    return Err(Error::MissingBranch(upper.to_string()));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{build_registry, OscillatorModel};
    use once_cell::sync::Lazy;

    static REG: Lazy<OperatorRegistry> = Lazy::new(|| {
        let model = OscillatorModel::new(3, 1.0, 1.0, 6).unwrap();
        build_registry(&model).unwrap()
    });
    static BASIS: Lazy<FockBasis3D> = Lazy::new(|| build_basis(&REG, 4).unwrap());

    #[test]
    fn label_validation() {
        assert!(FockLabel3D::new(2, 1, 3, 1).is_ok());
        assert!(FockLabel3D::new(2, 1, 1, 1).is_ok());
        assert!(FockLabel3D::new(2, 0, 1, -1).is_ok());
        // j must be at least 1/2: l = 0 only pairs with j = 1/2
        assert!(FockLabel3D::new(2, 0, 3, 1).is_err());
        // l <= n
        assert!(FockLabel3D::new(1, 2, 5, 1).is_err());
        // |j3| <= j and parity
        assert!(FockLabel3D::new(2, 1, 3, 5).is_err());
        assert!(FockLabel3D::new(2, 1, 3, 0).is_err());
    }

    #[test]
    fn vacuum_is_unique_and_beta_positive() {
        let (vac, dim) = find_vacuum(&REG).unwrap();
        assert_eq!(dim, 1);
        let beta_vac = matvec(REG.matrix("beta").unwrap(), &vac);
        assert!(vec_sub_norm(&beta_vac, &vac) < 1e-12);
        let n_vac = matvec(REG.matrix("N").unwrap(), &vac);
        assert!(vec_norm(&n_vac) < 1e-12);
    }

    /// Independent oracle: the joint kernel dimension from a dense
    /// eigendecomposition of the full annihilator Gram operator.
    #[test]
    fn vacuum_kernel_oracle_small_cutoff() {
        let model = OscillatorModel::new(3, 1.0, 1.0, 2).unwrap();
        let reg = build_registry(&model).unwrap();
        let mut a = crate::linalg::zeros(model.space_dim());
        for label in ["b1-", "b2-", "b3-", "s1-", "s2-", "s3-", "S-"] {
            let x = reg.matrix(label).unwrap();
            a = add(&a, &(&crate::linalg::adjoint(x) * x));
        }
        let (vals, _) = eigh(&crate::linalg::to_dense(&a)).unwrap();
        let kernel = vals.iter().filter(|&&v| v.abs() < 1e-10).count();
        assert_eq!(kernel, 1);
        let (_, dim) = find_vacuum(&reg).unwrap();
        assert_eq!(dim, kernel);
    }

    #[test]
    fn first_basis_vector_is_splus_vacuum() {
        let (vac, _) = find_vacuum(&REG).unwrap();
        let sp = matvec(REG.matrix("S+").unwrap(), &vac);
        let v = BASIS.get(&FockLabel3D::new(0, 0, 1, 1).unwrap()).unwrap();
        // same direction
        let overlap = vec_dot(&sp, v).norm() / (vec_norm(&sp) * vec_norm(v));
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn highest_weight_annihilated_by_jplus() {
        for l in 0..=3u32 {
            let label = FockLabel3D::new(l.max(0), l, 2 * l + 1, (2 * l + 1) as i32).unwrap();
            let v = BASIS.get(&label).unwrap();
            let jp = matvec(REG.matrix("J+").unwrap(), v);
            assert!(
                vec_norm(&jp) / vec_norm(v) < 1e-10,
                "J+ on {label}: {}",
                vec_norm(&jp)
            );
        }
    }

    #[test]
    fn actions_pass_to_n4() {
        let report = verify_actions(&BASIS, &REG).unwrap();
        assert!(report.passed, "{}", report.to_text());
        // the parity kill and edge-coefficient kill cases are present
        assert!(report.checks.iter().any(|c| c.id.contains("Ss+kill")));
        assert!(report.checks.iter().any(|c| c.id.contains("Bs-kill")));
    }

    #[test]
    fn injectivity_and_positivity() {
        let report = injectivity_report(&REG, 7).unwrap();
        assert!(report.passed, "{}", report.to_text());
    }

    #[test]
    fn theorem_eigenvectors_are_h_eigenstates() {
        let h = REG.matrix("H").unwrap();
        // (n=1, j=1/2): odd branch, E = ±sqrt(7)
        let pairs = eigenvectors_3d(1, 1, 1, &BASIS).unwrap();
        assert_eq!(pairs.len(), 2);
        for (v, e) in &pairs {
            assert!((e.abs() - 7.0f64.sqrt()).abs() < 1e-12);
            let hv = matvec(h, v);
            let r = vec_sub_norm(&hv, &vec_scale(v, re(*e))) / vec_norm(v);
            assert!(r < 1e-7, "E={e}: residual {r}");
        }
        // (n=0, j=1/2): single branch, only E = +m survives
        let pairs = eigenvectors_3d(0, 1, 1, &BASIS).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!((pairs[0].1 - 1.0).abs() < 1e-12);
        let hv = matvec(h, &pairs[0].0);
        let r = vec_sub_norm(&hv, &vec_scale(&pairs[0].0, re(1.0))) / vec_norm(&pairs[0].0);
        assert!(r < 1e-7);
    }

    /// Bracket powers of T+ used in the raising argument:
    /// [[Ss+, (T+)^k]] = 0 for even k and (T+)^{k+1} for odd k.
    #[test]
    fn t_plus_bracket_powers() {
        // needs depth 2k+2; run on a deeper cutoff without diagonalising
        let model = OscillatorModel::new(3, 1.0, 1.0, 12).unwrap();
        let reg = build_registry(&model).unwrap();
        let t_plus = reg.matrix("T+").unwrap();
        let ss_plus = reg.matrix("Ss+").unwrap();
        let mut t_pow = reg.matrix("Id").unwrap().clone();
        for k in 1..=4usize {
            t_pow = &t_pow * t_plus;
            let depth = 2 * k + 2;
            let p = interior_projector(depth, 3, model.cutoff, 4).unwrap();
            // eps(10, k*10): anticommutator for odd k, commutator for even
            let (bracket, expect): (crate::linalg::SpMat, Vec<(C64, &crate::linalg::SpMat)>) =
                if k % 2 == 1 {
                    let t_next = &t_pow * t_plus;
                    (
                        crate::linalg::anticommutator(ss_plus, &t_pow),
                        vec![(ONE, Box::leak(Box::new(t_next)))],
                    )
                } else {
                    (crate::linalg::commutator(ss_plus, &t_pow), vec![])
                };
            let mut terms: Vec<(C64, &crate::linalg::SpMat)> = vec![(ONE, &bracket)];
            for (c, m) in &expect {
                terms.push((-*c, m));
            }
            let (masked, _) = crate::linalg::combo_norms(&terms, Some(&p.mask));
            assert!(masked < 1e-10, "k={k}: {masked}");
        }
    }
}

//! Truncated bosonic Fock spaces.
//!
//! Each mode is truncated hard at occupation `n_max` (the raising operator
//! annihilates the top state). The full space is ordered spinor index
//! slowest, then mode 1 ... mode d, i.e. `spinor (x) mode_1 (x) ... (x) mode_d`;
//! this ordering is frozen so matrix dumps are reproducible.
//!
//! Truncation artifacts live within `depth` quanta of the cutoff, where
//! `depth` is the creation degree of the expression under test; the interior
//! projectors quarantine them.

use crate::error::{Error, Result};
use crate::linalg::{adjoint, eye, from_triplets, kron, re, SpMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoff {
    pub n_max: usize,
}

impl FockCutoff {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::CutoffTooSmall);
        }
        Ok(FockCutoff { n_max })
    }

    pub fn states_per_mode(&self) -> usize {
        self.n_max + 1
    }
}

/// Raw ladder matrices on a single truncated mode.
#[derive(Debug, Clone)]
pub struct ModeOps {
    /// lower |k> = sqrt(k) |k-1>
    pub lower: SpMat,
    /// raise |k> = sqrt(k+1) |k+1> for k < n_max, raise |n_max> = 0
    pub raise: SpMat,
    /// diag(0..n_max)
    pub number: SpMat,
}

pub fn build_mode_ops(cutoff: FockCutoff) -> ModeOps {
    let m = cutoff.states_per_mode();
    let mut lower_entries = Vec::with_capacity(m.saturating_sub(1));
    let mut number_entries = Vec::with_capacity(m);
    for k in 1..m {
        lower_entries.push((k - 1, k, re((k as f64).sqrt())));
    }
    for k in 0..m {
        number_entries.push((k, k, re(k as f64)));
    }
    let lower = from_triplets(m, m, &lower_entries);
    let raise = adjoint(&lower);
    let number = from_triplets(m, m, &number_entries);
    ModeOps { lower, raise, number }
}

/// Dimension of the full space: spinor_dim * (n_max+1)^d.
pub fn space_dim(d: usize, cutoff: FockCutoff, spinor_dim: usize) -> usize {
    spinor_dim * cutoff.states_per_mode().pow(d as u32)
}

/// Embed a single-mode operator on mode `mode` (1-based) of `d` modes,
/// tensored with the identity elsewhere and on the spinor factor.
pub fn embed(
    op: &SpMat,
    mode: usize,
    d: usize,
    cutoff: FockCutoff,
    spinor_dim: usize,
) -> Result<SpMat> {
    if mode < 1 || mode > d {
        return Err(Error::ModeOutOfRange { mode, modes: d });
    }
    let m = cutoff.states_per_mode();
    let mut acc = eye(spinor_dim);
    for k in 1..=d {
        let factor = if k == mode { op.clone() } else { eye(m) };
        acc = kron(&acc, &factor);
    }
    Ok(acc)
}

/// Embed a spinor-space operator, identity on every mode.
pub fn embed_spinor(op: &SpMat, d: usize, cutoff: FockCutoff) -> SpMat {
    let m = cutoff.states_per_mode();
    let mut acc = op.clone();
    for _ in 0..d {
        acc = kron(&acc, &eye(m));
    }
    acc
}

/// Total boson occupation of a product-basis index.
pub fn total_occupation(index: usize, d: usize, cutoff: FockCutoff) -> usize {
    let m = cutoff.states_per_mode();
    let mut idx = index;
    let mut tot = 0;
    for _ in 0..d {
        tot += idx % m;
        idx /= m;
    }
    tot
}

/// Projector onto total boson occupation <= n_max - depth.
#[derive(Debug, Clone)]
pub struct InteriorProjector {
    pub depth: usize,
    pub matrix: SpMat,
    pub mask: Vec<bool>,
    pub rank: usize,
}

pub fn interior_projector(
    depth: usize,
    d: usize,
    cutoff: FockCutoff,
    spinor_dim: usize,
) -> Result<InteriorProjector> {
    if depth > cutoff.n_max {
        return Err(Error::DepthTooLarge { depth, n_max: cutoff.n_max });
    }
    let dim = space_dim(d, cutoff, spinor_dim);
    let keep = cutoff.n_max - depth;
    let mut mask = vec![false; dim];
    let mut entries = Vec::new();
    for i in 0..dim {
        if total_occupation(i, d, cutoff) <= keep {
            mask[i] = true;
            entries.push((i, i, re(1.0)));
        }
    }
    let rank = entries.len();
    Ok(InteriorProjector {
        depth,
        matrix: from_triplets(dim, dim, &entries),
        mask,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{combo_norms, commutator, fro_norm, matmul, sub, to_dense, ONE};

    #[test]
    fn two_level_lower() {
        let ops = build_mode_ops(FockCutoff::new(1).unwrap());
        let d = to_dense(&ops.lower);
        assert_eq!(d[(0, 1)], ONE);
        assert_eq!(fro_norm(&ops.lower), 1.0);
    }

    #[test]
    fn ladder_matrix_element() {
        let ops = build_mode_ops(FockCutoff::new(5).unwrap());
        let d = to_dense(&ops.raise);
        assert!((d[(3, 2)].re - 3.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ccr_on_interior() {
        let cutoff = FockCutoff::new(8).unwrap();
        let ops = build_mode_ops(cutoff);
        let ccr = sub(&commutator(&ops.lower, &ops.raise), &eye(9));
        let p = interior_projector(1, 1, cutoff, 1).unwrap();
        let (masked, full) = combo_norms(&[(ONE, &ccr)], Some(&p.mask));
        // (sqrt(k))^2 reproduces k only to rounding
        assert!(masked < 1e-14, "{masked}");
        // hard truncation shows up just below the edge
        assert!(full > 1.0);
    }

    #[test]
    fn raise_annihilates_top_state() {
        let ops = build_mode_ops(FockCutoff::new(3).unwrap());
        let top = [0.0, 0.0, 0.0, 1.0].map(crate::linalg::re);
        let out = crate::linalg::matvec(&ops.raise, &top);
        assert!(crate::linalg::vec_norm(&out) == 0.0);
    }

    #[test]
    fn number_is_raise_lower() {
        let ops = build_mode_ops(FockCutoff::new(6).unwrap());
        let n = matmul(&ops.raise, &ops.lower);
        assert!(fro_norm(&sub(&n, &ops.number)) < 1e-13);
    }

    #[test]
    fn embedded_number_trace() {
        // trace of N_1 on spinor(4) x mode^2 with n_max = 2:
        // sum over product basis of n_1 = 4 * 3 * (0+1+2) = 36
        let cutoff = FockCutoff::new(2).unwrap();
        let ops = build_mode_ops(cutoff);
        let n1 = embed(&ops.number, 1, 2, cutoff, 4).unwrap();
        let mut trace = 0.0;
        for (&v, (i, j)) in n1.iter() {
            if i == j {
                trace += v.re;
            }
        }
        // independent combinatorial count
        let mut expect = 0usize;
        for _spinor in 0..4 {
            for a in 0..3 {
                for _b in 0..3 {
                    expect += a;
                }
            }
        }
        assert_eq!(expect, 36);
        assert!((trace - expect as f64).abs() < 1e-12);
        assert_eq!(n1.rows(), 36);
    }

    #[test]
    fn identity_embedding_and_disjoint_modes_commute() {
        let cutoff = FockCutoff::new(2).unwrap();
        let ops = build_mode_ops(cutoff);
        let id_embedded = embed(&eye(3), 2, 2, cutoff, 4).unwrap();
        assert_eq!(fro_norm(&sub(&id_embedded, &eye(36))), 0.0);
        let a1 = embed(&ops.lower, 1, 2, cutoff, 4).unwrap();
        let r2 = embed(&ops.raise, 2, 2, cutoff, 4).unwrap();
        assert_eq!(fro_norm(&commutator(&a1, &r2)), 0.0);
        assert!(matches!(
            embed(&ops.lower, 3, 2, cutoff, 4),
            Err(Error::ModeOutOfRange { mode: 3, modes: 2 })
        ));
    }

    #[test]
    fn projector_counts_and_nesting() {
        let cutoff = FockCutoff::new(3).unwrap();
        // depth 0 is the identity
        let p0 = interior_projector(0, 1, cutoff, 2).unwrap();
        assert_eq!(fro_norm(&sub(&p0.matrix, &eye(8))), 0.0);
        // d=1, n_max=3, depth=2 keeps n <= 1: rank 2 * spinor_dim
        let p2 = interior_projector(2, 1, cutoff, 2).unwrap();
        assert_eq!(p2.rank, 4);
        // nesting: P_d P_d' = P_max
        let p1 = interior_projector(1, 1, cutoff, 2).unwrap();
        let prod = matmul(&p1.matrix, &p2.matrix);
        assert_eq!(fro_norm(&sub(&prod, &p2.matrix)), 0.0);
        assert!(matches!(
            interior_projector(4, 1, cutoff, 2),
            Err(Error::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn raise_is_adjoint_of_lower() {
        for n_max in [1usize, 4, 9] {
            let ops = build_mode_ops(FockCutoff::new(n_max).unwrap());
            assert_eq!(fro_norm(&sub(&adjoint(&ops.lower), &ops.raise)), 0.0);
        }
    }
}

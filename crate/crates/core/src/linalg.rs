//! Sparse/dense helpers shared by every module.
//!
//! Operators live as CSR matrices (`sprs`); dense arrays appear only at the
//! eigensolver boundary. LAPACK is reached through the `lapack` crate with
//! the system OpenBLAS supplying the symbols (see `build.rs`).

use ndarray::Array2;
use num_complex::Complex64;
use sprs::{CsMat, TriMat};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type SpMat = CsMat<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn im(x: f64) -> C64 {
    C64::new(0.0, x)
}

pub fn eye(n: usize) -> SpMat {
    CsMat::eye(n)
}

pub fn zeros(n: usize) -> SpMat {
    CsMat::zero((n, n))
}

pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, C64)]) -> SpMat {
    let mut t = TriMat::new((rows, cols));
    for &(i, j, v) in entries {
        if v != ZERO {
            t.add_triplet(i, j, v);
        }
    }
    t.to_csr()
}

pub fn scale(a: &SpMat, s: C64) -> SpMat {
    a.map(|v| v * s)
}

pub fn adjoint(a: &SpMat) -> SpMat {
    a.transpose_view().to_owned().into_csr().map(|v| v.conj())
}

pub fn matmul(a: &SpMat, b: &SpMat) -> SpMat {
    a * b
}

pub fn add(a: &SpMat, b: &SpMat) -> SpMat {
    a + b
}

pub fn sub(a: &SpMat, b: &SpMat) -> SpMat {
    a + &scale(b, -ONE)
}

pub fn commutator(a: &SpMat, b: &SpMat) -> SpMat {
    sub(&(a * b), &(b * a))
}

pub fn anticommutator(a: &SpMat, b: &SpMat) -> SpMat {
    add(&(a * b), &(b * a))
}

pub fn kron(a: &SpMat, b: &SpMat) -> SpMat {
    sprs::kronecker_product(a.view(), b.view())
}

/// Drop explicitly stored zeros introduced by additive cancellation.
pub fn prune(a: &SpMat) -> SpMat {
    let mut t = TriMat::new(a.shape());
    for (&v, (i, j)) in a.iter() {
        if v != ZERO {
            t.add_triplet(i, j, v);
        }
    }
    t.to_csr()
}

pub fn fro_norm(a: &SpMat) -> f64 {
    a.data().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermiticity_residual(a: &SpMat) -> f64 {
    fro_norm(&sub(a, &adjoint(a)))
}

pub fn matvec(a: &SpMat, v: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; a.rows()];
    for (row, vec) in a.outer_iterator().enumerate() {
        let mut acc = ZERO;
        for (col, val) in vec.iter() {
            acc += *val * v[col];
        }
        out[row] = acc;
    }
    out
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_sub_norm(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn vec_dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_scale(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|z| z * s).collect()
}

/// tr(a† b) over sparse operands; the inner product behind span fits.
pub fn inner(a: &SpMat, b: &SpMat) -> C64 {
    // Row-wise sparse dot of conj(a) and b.
    let mut acc = ZERO;
    for (arow, brow) in a.outer_iterator().zip(b.outer_iterator()) {
        let mut ai = arow.iter().peekable();
        let mut bi = brow.iter().peekable();
        while let (Some(&(ac, av)), Some(&(bc, bv))) = (ai.peek(), bi.peek()) {
            match ac.cmp(&bc) {
                std::cmp::Ordering::Less => {
                    ai.next();
                }
                std::cmp::Ordering::Greater => {
                    bi.next();
                }
                std::cmp::Ordering::Equal => {
                    acc += av.conj() * *bv;
                    ai.next();
                    bi.next();
                }
            }
        }
    }
    acc
}

/// Frobenius norms of `sum_k c_k T_k`, both masked (rows and columns
/// restricted to `mask`) and unmasked, without materialising the sum.
pub fn combo_norms(terms: &[(C64, &SpMat)], mask: Option<&[bool]>) -> (f64, f64) {
    if terms.is_empty() {
        return (0.0, 0.0);
    }
    let n = terms[0].1.rows();
    let ncols = terms[0].1.cols();
    let mut scratch = vec![ZERO; ncols];
    let mut touched = Vec::with_capacity(256);
    let mut hit = vec![false; ncols];
    let mut full = 0.0f64;
    let mut masked = 0.0f64;
    for row in 0..n {
        for &(c, t) in terms {
            if let Some(r) = t.outer_view(row) {
                for (col, val) in r.iter() {
                    if !hit[col] {
                        hit[col] = true;
                        touched.push(col);
                    }
                    scratch[col] += c * *val;
                }
            }
        }
        let row_in = mask.map_or(true, |m| m[row]);
        for &col in &touched {
            let v = scratch[col].norm_sqr();
            full += v;
            if row_in && mask.map_or(true, |m| m[col]) {
                masked += v;
            }
            scratch[col] = ZERO;
            hit[col] = false;
        }
        touched.clear();
    }
    (masked.sqrt(), full.sqrt())
}

pub fn to_dense(a: &SpMat) -> Array2<C64> {
    a.to_dense()
}

fn to_col_major(a: &Array2<C64>) -> Vec<lapack::c64> {
    let (m, n) = a.dim();
    let mut buf = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let z = a[(i, j)];
            buf.push(lapack::c64::new(z.re, z.im));
        }
    }
    buf
}

/// Eigendecomposition of a Hermitian matrix (LAPACK zheevd).
/// Eigenvalues ascending; eigenvectors returned as columns.
pub fn eigh(a: &Array2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut buf = to_col_major(a);
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    let (mut work, mut rwork, mut iwork) = (
        vec![lapack::c64::new(0.0, 0.0); 1],
        vec![0.0f64; 1],
        vec![0i32; 1],
    );
    unsafe {
        lapack::zheevd(
            b'V', b'L', n as i32, &mut buf, n as i32, &mut w, &mut work, -1, &mut rwork, -1,
            &mut iwork, -1, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zheevd(query)", info });
    }
    let lwork = work[0].re as usize;
    let lrwork = rwork[0] as usize;
    let liwork = iwork[0] as usize;
    work.resize(lwork.max(1), lapack::c64::new(0.0, 0.0));
    rwork.resize(lrwork.max(1), 0.0);
    iwork.resize(liwork.max(1), 0);
    unsafe {
        lapack::zheevd(
            b'V', b'L', n as i32, &mut buf, n as i32, &mut w, &mut work, lwork as i32, &mut rwork,
            lrwork as i32, &mut iwork, liwork as i32, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zheevd", info });
    }
    let mut vecs = Array2::zeros((n, n));
    for j in 0..n {
        for i in 0..n {
            let z = buf[j * n + i];
            vecs[(i, j)] = C64::new(z.re, z.im);
        }
    }
    Ok((w, vecs))
}

/// Singular values of a dense matrix (descending).
pub fn singular_values(a: &Array2<C64>) -> Result<Vec<f64>> {
    svd_impl(a, false).map(|(s, _)| s)
}

/// Singular values plus right singular vectors (columns of `v`, so
/// `a ~ u diag(s) v†`), via zgesvd.
pub fn svd_right(a: &Array2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let (s, vt) = svd_impl(a, true)?;
    let vt = vt.expect("requested vt");
    let k = s.len();
    let n = a.ncols();
    let mut v = Array2::zeros((n, k));
    for i in 0..k {
        for j in 0..n {
            v[(j, i)] = vt[(i, j)].conj();
        }
    }
    Ok((s, v))
}

fn svd_impl(a: &Array2<C64>, want_vt: bool) -> Result<(Vec<f64>, Option<Array2<C64>>)> {
    let (m, n) = a.dim();
    let k = m.min(n);
    if k == 0 {
        return Ok((vec![], want_vt.then(|| Array2::zeros((0, n)))));
    }
    let mut buf = to_col_major(a);
    let mut s = vec![0.0f64; k];
    let jobvt = if want_vt { b'S' } else { b'N' };
    let ldvt = if want_vt { k } else { 1 };
    let mut u = vec![lapack::c64::new(0.0, 0.0); 1];
    let mut vt = vec![lapack::c64::new(0.0, 0.0); if want_vt { ldvt * n } else { 1 }];
    let mut rwork = vec![0.0f64; 5 * k];
    let mut info = 0i32;
    let mut work = vec![lapack::c64::new(0.0, 0.0); 1];
    unsafe {
        lapack::zgesvd(
            b'N', jobvt, m as i32, n as i32, &mut buf, m as i32, &mut s, &mut u, 1, &mut vt,
            ldvt as i32, &mut work, -1, &mut rwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zgesvd(query)", info });
    }
    let lwork = work[0].re as usize;
    work.resize(lwork.max(1), lapack::c64::new(0.0, 0.0));
    unsafe {
        lapack::zgesvd(
            b'N', jobvt, m as i32, n as i32, &mut buf, m as i32, &mut s, &mut u, 1, &mut vt,
            ldvt as i32, &mut work, lwork as i32, &mut rwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zgesvd", info });
    }
    let out_vt = want_vt.then(|| {
        let mut arr = Array2::zeros((k, n));
        for j in 0..n {
            for i in 0..k {
                let z = vt[j * ldvt + i];
                arr[(i, j)] = C64::new(z.re, z.im);
            }
        }
        arr
    });
    Ok((s, out_vt))
}

/// Numerical rank with a relative singular-value threshold.
pub fn rank(a: &Array2<C64>, rel_tol: f64) -> Result<usize> {
    let s = singular_values(a)?;
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x > rel_tol * top).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SpMat {
        from_triplets(
            3,
            3,
            &[
                (0, 1, re(1.0)),
                (1, 2, re(2.0f64.sqrt())),
                (2, 0, im(0.5)),
            ],
        )
    }

    #[test]
    fn adjoint_is_conjugate_transpose() {
        let a = small();
        let ad = adjoint(&a);
        let d = to_dense(&a);
        let dd = to_dense(&ad);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(dd[(i, j)], d[(j, i)].conj());
            }
        }
    }

    #[test]
    fn combo_norms_match_explicit_sum() {
        let a = small();
        let b = adjoint(&a);
        let explicit = sub(&scale(&a, re(2.0)), &b);
        let (_, full) = combo_norms(&[(re(2.0), &a), (re(-1.0), &b)], None);
        assert!((full - fro_norm(&explicit)).abs() < 1e-14);
        let mask = vec![true, true, false];
        let (masked, _) = combo_norms(&[(re(2.0), &a), (re(-1.0), &b)], Some(&mask));
        let mut acc = 0.0;
        for (&v, (i, j)) in explicit.iter() {
            if mask[i] && mask[j] {
                acc += v.norm_sqr();
            }
        }
        assert!((masked - acc.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn eigh_recovers_diagonal() {
        let mut a = Array2::zeros((4, 4));
        for i in 0..4 {
            a[(i, i)] = re(i as f64);
        }
        a[(0, 1)] = im(0.25);
        a[(1, 0)] = im(-0.25);
        let (w, v) = eigh(&a).unwrap();
        // residual ||Av - v diag(w)||
        let av = a.dot(&v);
        let mut worst = 0.0f64;
        for j in 0..4 {
            for i in 0..4 {
                worst = worst.max((av[(i, j)] - v[(i, j)] * re(w[j])).norm());
            }
        }
        assert!(worst < 1e-12);
    }

    #[test]
    fn svd_right_reconstructs_gram() {
        let mut a = Array2::zeros((3, 2));
        a[(0, 0)] = re(3.0);
        a[(1, 1)] = re(4.0);
        a[(2, 0)] = im(1.0);
        let (s, v) = svd_right(&a).unwrap();
        assert_eq!(s.len(), 2);
        // columns of v are orthonormal eigenvectors of a†a with eigenvalues s²
        let gram = a.t().mapv(|z| z.conj()).dot(&a);
        for k in 0..2 {
            let col = v.column(k).to_owned();
            let gv = gram.dot(&col);
            let mut resid = 0.0f64;
            for i in 0..2 {
                resid += (gv[i] - col[i] * re(s[k] * s[k])).norm_sqr();
            }
            assert!(resid.sqrt() < 1e-10, "k={k} resid {resid}");
        }
    }
}

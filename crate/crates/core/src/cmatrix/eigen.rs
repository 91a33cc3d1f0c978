use alloc::vec;
use alloc::vec::Vec;

use super::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::math;
use crate::tol::BASE_EQ;

const MAX_QL_ITERATIONS: usize = 100;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V diag(λ) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let scaled =
            ComplexMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.eigenvalues[j]);
        &scaled * &self.vectors.adjoint()
    }

    /// Groups eigenvalue indices into maximal runs whose consecutive gaps are
    /// below `rel_gap * max|λ|`.
    pub fn clusters(&self, rel_gap: f64) -> Vec<Vec<usize>> {
        let scale = self
            .eigenvalues
            .iter()
            .map(|x| math::abs(*x))
            .fold(0.0, f64::max);
        let gap = rel_gap * scale;
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (i, &x) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some(cl) if x - self.eigenvalues[i - 1] <= gap => cl.push(i),
                _ => out.push(vec![i]),
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The matrix is checked to be Hermitian within a relative `1e-8` in the
/// Frobenius norm, then reduced to a real symmetric tridiagonal form and
/// diagonalized by the implicit QL algorithm.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenSystem> {
    hermitian_eig_with(h, BASE_EQ)
}

/// [`hermitian_eig`] with an explicit relative Hermiticity tolerance.
pub fn hermitian_eig_with(h: &ComplexMatrix, eps: f64) -> Result<EigenSystem> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch(
            "eigendecomposition of non-square matrix",
        ));
    }
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = h.hermitian_residual();
    if residual > eps * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    if n == 0 {
        return Ok(EigenSystem {
            eigenvalues: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let mut a = (h + &h.adjoint()).scale_real(0.5);
    let q = tridiagonalize(&mut a);

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n - 1 {
        let off = a[(i + 1, i)];
        e[i] = math::cabs(off);
        phases[i + 1] = phases[i] * math::phase(off);
    }
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z, n)?;

    let qd = ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j]);
    let vectors =
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| qd[(i, k)] * z[k * n + j]).sum());
    Ok(EigenSystem {
        eigenvalues: d,
        vectors,
    })
}

/// Householder reduction `a ← Q* a Q` to Hermitian tridiagonal form; returns Q.
fn tridiagonalize(a: &mut ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let sigma = math::sqrt(tail + x0.norm_sqr());
        let alpha = -math::phase(x0) * sigma;
        let mut v = vec![ZERO; n];
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vv;

        // w = τ A v, q = w − (τ/2)(v* w) v, A ← A − v q* − q v*
        let w: Vec<C64> = (0..n)
            .map(|i| (k + 1..n).map(|j| a[(i, j)] * v[j]).sum::<C64>() * tau)
            .collect();
        let vw: C64 = (k + 1..n).map(|i| v[i].conj() * w[i]).sum();
        let beta = 0.5 * tau * vw.re;
        let qv: Vec<C64> = (0..n).map(|i| w[i] - v[i] * beta).collect();
        for i in 0..n {
            for j in 0..n {
                let upd = v[i] * qv[j].conj() + qv[i] * v[j].conj();
                if upd != ZERO {
                    a[(i, j)] -= upd;
                }
            }
        }
        // Q ← Q (1 − τ v v*)
        for i in 0..n {
            let qvi: C64 = (k + 1..n).map(|j| q[(i, j)] * v[j]).sum::<C64>() * tau;
            for j in k + 1..n {
                let t = qvi * v[j].conj();
                q[(i, j)] -= t;
            }
        }
    }
    q
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d` and
/// subdiagonal `e` (`e[i]` couples `i` and `i + 1`, `e[n-1] = 0`).
/// Accumulates rotations into the row-major `n × n` matrix `z`, then sorts
/// eigenpairs ascending.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(math::abs(d[l]) + math::abs(e[l]));
        let mut m = l;
        while m < n - 1 && math::abs(e[m]) > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::ConvergenceFailure);
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = math::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for x in d.iter_mut().take(n).skip(l + 2) {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = math::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let hk = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * hk;
                        z[k * n + i] = c * z[k * n + i] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if math::abs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // selection sort keeps the column permutation simple
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                z.swap(row * n + i, row * n + k);
            }
        }
    }
    Ok(())
}

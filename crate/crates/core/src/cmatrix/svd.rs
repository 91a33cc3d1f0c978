use alloc::vec::Vec;

use super::{largest_entry, ComplexMatrix, HermitianForm, C64, ZERO};
use crate::error::{Error, Result};
use crate::math;

const MAX_SWEEPS: usize = 80;
const ORTHOGONALITY_EPS: f64 = 1e-15;

/// Thin singular value decomposition `A V = U diag(σ)`, singular values
/// descending. Columns of `u` belonging to zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
}

impl Svd {
    /// Number of singular values above `tol * σ_max`.
    pub fn rank(&self, tol: f64) -> usize {
        let max = self.singular_values.first().copied().unwrap_or(0.0);
        if max == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .filter(|&&s| s > tol * max)
            .count()
    }
}

/// One-sided (Hestenes) Jacobi SVD. Works for any shape; `v` is square of
/// size `a.cols()`.
pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut vcols: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { super::ONE } else { ZERO })
                .collect()
        })
        .collect();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: C64 = super::dot(&cols[p], &cols[q]);
                let g = math::cabs(gamma);
                if g <= ORTHOGONALITY_EPS * math::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let ph = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 }
                    / (math::abs(zeta) + math::hypot(1.0, zeta));
                let c = 1.0 / math::hypot(1.0, t);
                let s = c * t;
                rotate(&mut cols, p, q, c, s, ph, m);
                rotate(&mut vcols, p, q, c, s, ph, n);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::ConvergenceFailure);
    }

    let norms: Vec<f64> = cols.iter().map(|c| super::vector_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = ComplexMatrix::from_fn(m, n, |i, k| {
        let j = order[k];
        if norms[j] > 0.0 {
            cols[j][i] / norms[j]
        } else {
            ZERO
        }
    });
    let v = ComplexMatrix::from_fn(n, n, |i, k| vcols[order[k]][i]);
    Ok(Svd {
        singular_values,
        u,
        v,
    })
}

/// `a_p ← c a_p − s φ a_q`, `a_q ← s a_p + c φ a_q`.
fn rotate(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, ph: C64, len: usize) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for i in 0..len {
        let x = cp[i];
        let y = cq[i] * ph;
        cp[i] = x * c - y * s;
        cq[i] = x * s + y * c;
    }
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.singular_values)
}

/// Orthonormal basis (columns) of the null space: right singular vectors
/// whose singular value is at most `tol * σ_max`. A zero matrix has the
/// full space as null space.
pub fn null_space(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let s = svd(a)?;
    let r = s.rank(tol);
    let idx: Vec<usize> = (r..a.cols()).collect();
    Ok(s.v.select_columns(&idx))
}

/// Orthonormal basis, with respect to `form` (standard product when `None`),
/// of the numerical column space of `m`: singular values above
/// `tol * σ_max` are kept. The result has `rank` columns and is a
/// deterministic function of `m`; each column is phase-normalized so that its
/// first entry of largest modulus (in the form's square-root coordinates) is
/// real and positive.
pub fn orthonormal_column_space(
    m: &ComplexMatrix,
    form: Option<&HermitianForm>,
    tol: f64,
) -> Result<ComplexMatrix> {
    let work = match form {
        Some(f) => {
            if f.dim() != m.rows() {
                return Err(Error::ShapeMismatch(
                    "form dimension differs from row count",
                ));
            }
            f.sqrt() * m
        }
        None => m.clone(),
    };
    let s = svd(&work)?;
    let r = s.rank(tol);
    let mut basis = ComplexMatrix::zeros(m.rows(), r);
    for k in 0..r {
        let mut col = s.u.column(k);
        if let Some(z) = largest_entry(&col) {
            let ph = math::phase(z).conj();
            col.iter_mut().for_each(|x| *x *= ph);
        }
        basis.set_column(k, &col);
    }
    Ok(match form {
        Some(f) => f.inv_sqrt() * &basis,
        None => basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, rng};

    #[test]
    fn reconstructs_random_matrices() {
        let mut r = rng(11);
        for (m, n) in [(1, 1), (3, 3), (5, 3), (3, 5), (8, 8), (12, 4)] {
            let a = random_matrix(&mut r, m, n);
            let s = svd(&a).unwrap();
            let sig = ComplexMatrix::diagonal(
                &s.singular_values
                    .iter()
                    .map(|&x| C64::new(x, 0.0))
                    .collect::<Vec<_>>(),
            );
            let rec = &(&s.u * &sig) * &s.v.adjoint();
            assert!(
                rec.distance(&a) < 1e-12 * a.frobenius_norm().max(1.0),
                "{m}x{n}"
            );
            assert!(s.v.unitarity_residual() < 1e-12);
            assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn column_space_examples() {
        let z = ComplexMatrix::zeros(3, 3);
        assert_eq!(orthonormal_column_space(&z, None, 1e-8).unwrap().cols(), 0);

        let id = ComplexMatrix::identity(2);
        let b = orthonormal_column_space(&id, None, 1e-8).unwrap();
        assert_eq!(b.cols(), 2);
        assert!(b.unitarity_residual() < 1e-14);

        let ones = ComplexMatrix::from_real(2, 2, &[1.0; 4]).unwrap();
        let b = orthonormal_column_space(&ones, None, 1e-8).unwrap();
        assert_eq!(b.cols(), 1);
        let s = 0.5f64.sqrt();
        assert!((b[(0, 0)].re - s).abs() < 1e-14 && (b[(1, 0)].re - s).abs() < 1e-14);
    }

    #[test]
    fn column_space_with_form() {
        let mut r = rng(5);
        let g = crate::random::random_positive(&mut r, 4);
        let form = HermitianForm::new(g.clone(), 1e-8).unwrap();
        let m = random_matrix(&mut r, 4, 2);
        let b = orthonormal_column_space(&m, Some(&form), 1e-8).unwrap();
        assert_eq!(b.cols(), 2);
        let gram = &(&b.adjoint() * &g) * &b;
        assert!(gram.distance(&ComplexMatrix::identity(2)) < 1e-10);
        // same span: projecting m onto span(b) w.r.t. the form leaves m unchanged
        let proj = &(&b * &b.adjoint()) * &g;
        assert!((&proj * &m).distance(&m) < 1e-10);
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = ComplexMatrix::from_real(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0]).unwrap();
        let ns = null_space(&a, 1e-10).unwrap();
        assert_eq!(ns.cols(), 2);
        assert!((&a * &ns).frobenius_norm() < 1e-12);
    }
}

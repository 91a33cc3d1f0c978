use alloc::vec::Vec;

use super::{hermitian_eig, hermitian_eig_with, ComplexMatrix, EigenSystem, C64};
use crate::error::{Error, Result};
use crate::math;
use crate::tol::BASE_EQ;

/// A positive definite Hermitian scalar product `⟨x|y⟩ = x* G y`.
///
/// Square roots of the Gram matrix are computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    gram: ComplexMatrix,
    sqrt: ComplexMatrix,
    inv_sqrt: ComplexMatrix,
}

impl HermitianForm {
    /// Validates `gram` (Hermitian within relative `eps`, smallest eigenvalue
    /// above `eps` times the largest).
    pub fn new(gram: ComplexMatrix, eps: f64) -> Result<Self> {
        let es = hermitian_eig_with(&gram, eps)?;
        let n = gram.rows();
        let max = es.eigenvalues.last().copied().unwrap_or(1.0);
        let min = es.eigenvalues.first().copied().unwrap_or(1.0);
        if min.is_nan() || max.is_nan() || min <= eps * max {
            return Err(Error::NotPositiveForm { smallest: min });
        }
        let sqrt = spectral(&es, math::sqrt);
        let inv_sqrt = spectral(&es, |x| 1.0 / math::sqrt(x));
        let gram = (&gram + &gram.adjoint()).scale_real(0.5);
        debug_assert_eq!(sqrt.rows(), n);
        Ok(HermitianForm {
            gram,
            sqrt,
            inv_sqrt,
        })
    }

    /// The standard coordinate product.
    pub fn standard(n: usize) -> Self {
        HermitianForm {
            gram: ComplexMatrix::identity(n),
            sqrt: ComplexMatrix::identity(n),
            inv_sqrt: ComplexMatrix::identity(n),
        }
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    /// The positive square root `S` with `S² = G`.
    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    pub fn inv_sqrt(&self) -> &ComplexMatrix {
        &self.inv_sqrt
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn inner(&self, x: &[C64], y: &[C64]) -> C64 {
        super::dot(x, &self.gram.mul_vec(y))
    }
}

/// `V diag(f(λ)) V*`, re-symmetrized.
fn spectral(es: &EigenSystem, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let n = es.eigenvalues.len();
    let vals: Vec<f64> = es.eigenvalues.iter().map(|&x| f(x)).collect();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| es.vectors[(i, j)] * vals[j]);
    let b = &scaled * &es.vectors.adjoint();
    (&b + &b.adjoint()).scale_real(0.5)
}

/// The unique positive semidefinite square root of a positive semidefinite
/// Hermitian matrix. Eigenvalues down to `−1e-8·‖A‖` are clamped to zero.
pub fn operator_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    operator_sqrt_with(a, BASE_EQ)
}

pub fn operator_sqrt_with(a: &ComplexMatrix, eps: f64) -> Result<ComplexMatrix> {
    let es = hermitian_eig_with(a, eps)?;
    let scale = es
        .eigenvalues
        .iter()
        .map(|x| math::abs(*x))
        .fold(0.0, f64::max);
    if let Some(&min) = es.eigenvalues.first() {
        if min < -eps * scale {
            return Err(Error::NegativeEigenvalue { value: min });
        }
    }
    Ok(spectral(&es, |x| math::sqrt(x.max(0.0))))
}

/// Polar decomposition `A = T B` relative to scalar products on the source
/// (`form_v`) and target (`form_w`) spaces.
///
/// `B` is the positive square root of `D`, where `⟨x|Dy⟩_V = ⟨Ax|Ay⟩_W`, so
/// `B` is self-adjoint and positive for `form_v`; `T = A B⁻¹` is an isometry
/// from `(V, form_v)` to `(W, form_w)`.
pub fn polar_decompose(
    a: &ComplexMatrix,
    form_v: &HermitianForm,
    form_w: &HermitianForm,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() || form_v.dim() != a.cols() || form_w.dim() != a.rows() {
        return Err(Error::ShapeMismatch(
            "polar decomposition needs a square matrix matching both forms",
        ));
    }
    let sv = super::singular_values(a)?;
    let (max, min) = (
        sv.first().copied().unwrap_or(0.0),
        sv.last().copied().unwrap_or(0.0),
    );
    if min.is_nan() || max.is_nan() || min <= BASE_EQ * max {
        return Err(Error::Singular);
    }
    let s = form_v.sqrt();
    let s_inv = form_v.inv_sqrt();
    // D' = S⁻¹ A* G_W A S⁻¹ is Hermitian positive for the standard product
    let d = &(&(&(s_inv * &a.adjoint()) * form_w.gram()) * a) * s_inv;
    let d = (&d + &d.adjoint()).scale_real(0.5);
    let es = hermitian_eig(&d)?;
    let b_std = spectral(&es, math::sqrt);
    let b_std_inv = spectral(&es, |x| 1.0 / math::sqrt(x));
    let b = &(s_inv * &b_std) * s;
    let b_inv = &(s_inv * &b_std_inv) * s;
    let t = a * &b_inv;
    Ok((t, b))
}

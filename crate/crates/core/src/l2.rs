//! Functions on a group, the regular representations, invariant averaging and
//! unitarization.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::cmatrix::{sum_matrices, ComplexMatrix, HermitianForm, C64, ONE};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::math::pairwise_sum;
use crate::repr::{same_group, Intertwiner, Representation};
use crate::tol::Tolerances;

/// A complex function on the group, indexed by element.
#[derive(Debug, Clone)]
pub struct GroupFunction {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimMismatch("one value per group element required"));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(GroupFunction { group, values })
    }

    /// Indicator function of one element.
    pub fn delta(group: Arc<FiniteGroup>, g: usize) -> Self {
        let mut values = alloc::vec![C64::new(0.0, 0.0); group.order()];
        values[g] = ONE;
        GroupFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `(R(g) u)(a) = u(a g)`.
    pub fn right_shift(&self, g: usize) -> Self {
        let values = (0..self.group.order())
            .map(|a| self.values[self.group.mul(a, g)])
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `(L(g) u)(a) = u(g⁻¹ a)`.
    pub fn left_shift(&self, g: usize) -> Self {
        let gi = self.group.inv(g);
        let values = (0..self.group.order())
            .map(|a| self.values[self.group.mul(gi, a)])
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `(A u)(a) = u(a⁻¹)`.
    pub fn inverted(&self) -> Self {
        let values = (0..self.group.order())
            .map(|a| self.values[self.group.inv(a)])
            .collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// Invariant average `(1/N) Σ_g u(g)`.
    pub fn average(&self) -> C64 {
        let n = self.values.len();
        pairwise_sum(n, &|g| self.values[g], &|a, b| a + b).unwrap_or_default() / n as f64
    }
}

/// `⟨u|v⟩ = (1/N) Σ_g conj(u(g)) v(g)`.
pub fn l2_inner(u: &GroupFunction, v: &GroupFunction) -> Result<C64> {
    if !same_group(&u.group, &v.group) {
        return Err(Error::GroupMismatch);
    }
    let n = u.values.len();
    let s =
        pairwise_sum(n, &|g| u.values[g].conj() * v.values[g], &|a, b| a + b).unwrap_or_default();
    Ok(s / n as f64)
}

fn check_order(group: &FiniteGroup, max_order: usize) -> Result<()> {
    if group.order() > max_order {
        Err(Error::OrderLimitExceeded {
            limit: max_order,
            reached: group.order(),
        })
    } else {
        Ok(())
    }
}

fn permutation_matrix(n: usize, target: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        m[(a, target(a))] = ONE;
    }
    m
}

/// Right regular representation in the delta basis: row `a` of `R(g)` has its
/// single 1 in column `a·g`.
pub fn right_regular(group: &Arc<FiniteGroup>, max_order: usize) -> Result<Representation> {
    check_order(group, max_order)?;
    let n = group.order();
    let matrices = (0..n)
        .map(|g| permutation_matrix(n, |a| group.mul(a, g)))
        .collect();
    Ok(Representation::from_parts(group.clone(), matrices))
}

/// Left regular representation: row `a` of `L(g)` has its 1 in column `g⁻¹·a`.
pub fn left_regular(group: &Arc<FiniteGroup>, max_order: usize) -> Result<Representation> {
    check_order(group, max_order)?;
    let n = group.order();
    let matrices = (0..n)
        .map(|g| {
            let gi = group.inv(g);
            permutation_matrix(n, |a| group.mul(gi, a))
        })
        .collect();
    Ok(Representation::from_parts(group.clone(), matrices))
}

/// The map `v ↦ v∘inv`, an intertwiner from the left to the right regular
/// representation.
pub fn inversion_intertwiner(
    group: &Arc<FiniteGroup>,
    max_order: usize,
    tol: &Tolerances,
) -> Result<Intertwiner> {
    let l = left_regular(group, max_order)?;
    let r = right_regular(group, max_order)?;
    let a = permutation_matrix(group.order(), |x| group.inv(x));
    Intertwiner::new(l, r, a, tol)
}

/// Result of an invariant average.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragingReport {
    pub value: ComplexMatrix,
    pub terms: usize,
}

/// `(1/N) Σ_g φ(g)` for a matrix-valued function on the group.
pub fn average_matrix_function(
    group: &FiniteGroup,
    phi: impl Fn(usize) -> ComplexMatrix,
) -> Result<AveragingReport> {
    let n = group.order();
    let values: Vec<ComplexMatrix> = (0..n).map(&phi).collect();
    let (rows, cols) = (values[0].rows(), values[0].cols());
    if values.iter().any(|m| m.rows() != rows || m.cols() != cols) {
        return Err(Error::ShapeMismatch("averaged matrices differ in shape"));
    }
    let value = sum_matrices(n, rows, cols, |g| values[g].clone()).scale_real(1.0 / n as f64);
    Ok(AveragingReport { value, terms: n })
}

/// The averaged form `G = (1/N) Σ_g f(g)* f(g)`, invariant under every `f(g)`.
pub fn invariant_form(f: &Representation, tol: &Tolerances) -> Result<HermitianForm> {
    let report = average_matrix_function(f.group(), |g| {
        let m = f.matrix(g);
        &m.adjoint() * m
    })?;
    HermitianForm::new(report.value, tol.eq)
}

/// Returns `(h, S)` where `S` is the positive square root of the invariant
/// form and `h(g) = S f(g) S⁻¹` is unitary for the standard product.
pub fn unitarize(f: &Representation, tol: &Tolerances) -> Result<(Representation, ComplexMatrix)> {
    let form = invariant_form(f, tol)?;
    let s = form.sqrt().clone();
    let inv = form.inv_sqrt();
    let matrices = f.matrices().iter().map(|m| &(&s * m) * inv).collect();
    Ok((Representation::from_parts(f.group().clone(), matrices), s))
}

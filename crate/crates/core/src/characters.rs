//! Characters, class functions, character tables and multiplicities.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cmatrix::{ComplexMatrix, C64};
use crate::decompose::IrrepSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::math::{self, pairwise_sum};
use crate::repr::{same_group, Representation};
use crate::tol::Tolerances;

/// A function on the group that is constant on conjugacy classes, stored as
/// one value per class.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.class_count() {
            return Err(Error::DimMismatch("one value per conjugacy class required"));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(ClassFunction { group, values })
    }

    /// Averages per-element values over each class.
    pub fn from_element_values(group: Arc<FiniteGroup>, values: &[C64]) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimMismatch("one value per group element required"));
        }
        let cls = group.classes();
        let per_class = (0..cls.len())
            .map(|c| {
                let members = cls.members(c);
                let sum = pairwise_sum(members.len(), &|i| values[members[i]], &|a, b| a + b)
                    .unwrap_or_default();
                sum / members.len() as f64
            })
            .collect();
        ClassFunction::new(group, per_class)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Value at an element.
    pub fn at(&self, g: usize) -> C64 {
        self.values[self.group.classes().class_of(g)]
    }
}

/// The character of a representation, stored per conjugacy class.
#[derive(Debug, Clone)]
pub struct Character {
    function: ClassFunction,
    dim: usize,
}

impl Character {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[C64] {
        &self.function.values
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.function.group
    }

    pub fn as_class_function(&self) -> &ClassFunction {
        &self.function
    }

    pub fn at(&self, g: usize) -> C64 {
        self.function.at(g)
    }

    /// True when the values agree within `eps` (absolute, per class).
    pub fn approx_eq(&self, other: &Character, eps: f64) -> bool {
        same_group(self.group(), other.group())
            && self
                .values()
                .iter()
                .zip(other.values())
                .all(|(a, b)| math::cabs(a - b) <= eps)
    }
}

/// Per-class traces. Traces within a class must agree within
/// `tol.eq · max(1, dim)`; the value stored is their mean.
pub fn character(f: &Representation, tol: &Tolerances) -> Result<Character> {
    let traces = f.traces();
    let group = f.group().clone();
    let cls = group.classes();
    let bound = tol.eq * (f.dim() as f64).max(1.0);
    for c in 0..cls.len() {
        let members = cls.members(c);
        let first = traces[members[0]];
        let residual = members
            .iter()
            .map(|&g| math::cabs(traces[g] - first))
            .fold(0.0, f64::max);
        if residual > bound {
            return Err(Error::NotClassConstant { class: c, residual });
        }
    }
    let function = ClassFunction::from_element_values(group, &traces)?;
    Ok(Character {
        function,
        dim: f.dim(),
    })
}

/// `(1/N) Σ_c |c| conj(a_c) b_c`.
pub fn char_inner(a: &ClassFunction, b: &ClassFunction) -> Result<C64> {
    if !same_group(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    let sizes = a.group.classes().sizes();
    let s = pairwise_sum(
        sizes.len(),
        &|c| a.values[c].conj() * b.values[c] * sizes[c] as f64,
        &|x, y| x + y,
    )
    .unwrap_or_default();
    Ok(s / a.group.order() as f64)
}

/// `k_r = ⟨χ_r|χ_φ⟩`, each required to be within `tol.int` of a non-negative
/// integer, with `Σ k_r n_r = dim φ`.
pub fn multiplicities(
    phi: &Representation,
    set: &IrrepSet,
    tol: &Tolerances,
) -> Result<Vec<usize>> {
    if !same_group(phi.group(), set.group()) {
        return Err(Error::GroupMismatch);
    }
    let chi = character(phi, tol)?;
    let mut out = Vec::with_capacity(set.len());
    for (r, ch) in set.characters().iter().enumerate() {
        let value = char_inner(ch.as_class_function(), chi.as_class_function())?;
        let k = math::round(value.re);
        let residual = math::cabs(value - C64::new(k, 0.0));
        if residual > tol.int || k < 0.0 {
            return Err(Error::NotNearInteger {
                index: r,
                value: value.re,
                residual,
            });
        }
        out.push(k as usize);
    }
    let found: usize = out.iter().zip(set.dims()).map(|(k, n)| k * n).sum();
    if found != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found,
        });
    }
    Ok(out)
}

/// Canonical order of irreducible characters: ascending dimension, then
/// descending lexicographic order of the class values (real part before
/// imaginary part), where differences within `eps` count as ties.
pub fn canonical_order(dim_a: usize, a: &[C64], dim_b: usize, b: &[C64], eps: f64) -> Ordering {
    dim_a.cmp(&dim_b).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            for (p, q) in [(x.re, y.re), (x.im, y.im)] {
                if math::abs(p - q) > eps {
                    return q.partial_cmp(&p).unwrap_or(Ordering::Equal);
                }
            }
        }
        Ordering::Equal
    })
}

/// Square table of irreducible characters on conjugacy classes.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub dims: Vec<usize>,
    pub class_representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Row `r`, column `c`: `χ_r` on class `c`.
    pub values: ComplexMatrix,
    /// Worst deviation of the class-weighted Gram matrix from the identity.
    pub orthonormality_residual: f64,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// Character table of a complete irrep set, rows in the set's canonical order.
pub fn character_table(set: &IrrepSet, tol: &Tolerances) -> Result<CharacterTable> {
    let group = set.group();
    let m = group.class_count();
    if set.len() != m {
        return Err(Error::IncompleteSet(
            "number of irreps differs from number of classes",
        ));
    }
    if set.dims().iter().map(|n| n * n).sum::<usize>() != group.order() {
        return Err(Error::IncompleteSet(
            "sum of squared dimensions differs from group order",
        ));
    }
    let chars = set.characters();
    let values = ComplexMatrix::from_fn(m, m, |r, c| chars[r].values()[c]);
    let gram = character_gram(chars)?;
    let orthonormality_residual = gram.max_abs_diff(&ComplexMatrix::identity(m));
    if orthonormality_residual > tol.eq {
        return Err(Error::InvalidIrrepSet("characters are not orthonormal"));
    }
    let cls = group.classes();
    Ok(CharacterTable {
        dims: set.dims().to_vec(),
        class_representatives: cls.representatives().to_vec(),
        class_sizes: cls.sizes().to_vec(),
        values,
        orthonormality_residual,
    })
}

/// Gram matrix `⟨χ_r|χ_s⟩`.
pub fn character_gram(chars: &[Character]) -> Result<ComplexMatrix> {
    let m = chars.len();
    let mut g = ComplexMatrix::zeros(m, m);
    for r in 0..m {
        for s in 0..m {
            g[(r, s)] = char_inner(chars[r].as_class_function(), chars[s].as_class_function())?;
        }
    }
    Ok(g)
}

/// Coefficients `c_r = ⟨χ_r|φ⟩` of a class function in the irreducible
/// characters.
pub fn project_class_function(phi: &ClassFunction, set: &IrrepSet) -> Result<Vec<C64>> {
    if set.len() != set.group().class_count() {
        return Err(Error::IncompleteSet(
            "number of irreps differs from number of classes",
        ));
    }
    set.characters()
        .iter()
        .map(|ch| char_inner(ch.as_class_function(), phi))
        .collect()
}

/// `Σ c_r χ_r`.
pub fn reconstruct_class_function(coefficients: &[C64], set: &IrrepSet) -> Result<ClassFunction> {
    let m = set.group().class_count();
    if coefficients.len() != set.len() {
        return Err(Error::DimMismatch("one coefficient per irrep required"));
    }
    let values = (0..m)
        .map(|c| {
            pairwise_sum(
                coefficients.len(),
                &|r| coefficients[r] * set.characters()[r].values()[c],
                &|a, b| a + b,
            )
            .unwrap_or_default()
        })
        .collect();
    ClassFunction::new(set.group().clone(), values)
}

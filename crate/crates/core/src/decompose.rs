//! Discovery of a complete set of irreducible representations and the
//! decomposition of representations by projection operators.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::characters::{canonical_order, char_inner, character, multiplicities, Character};
use crate::cmatrix::{
    hermitian_eig, orthonormal_column_space, sum_matrices, svd, vector_norm, ComplexMatrix, C64,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::l2::unitarize;
use crate::math;
use crate::random::{random_hermitian, rng};
use crate::repr::{same_group, Representation, Subspace};
use crate::tol::Tolerances;

/// Number of random Hermitian draws before a subspace is declared stuck.
pub const SPLIT_ATTEMPTS: usize = 8;

/// A complete list of pairwise inequivalent unitary irreducible
/// representations, in canonical character-table order.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    group: Arc<FiniteGroup>,
    irreps: Vec<Representation>,
    characters: Vec<Character>,
}

impl IrrepSet {
    /// Validates unitarity, pairwise orthonormality of characters and
    /// completeness, then sorts into canonical order.
    pub fn new(
        group: Arc<FiniteGroup>,
        irreps: Vec<Representation>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if irreps.iter().any(|f| !same_group(f.group(), &group)) {
            return Err(Error::GroupMismatch);
        }
        for f in &irreps {
            if f.unitarity_residual() > tol.eq * (f.dim() as f64).max(1.0) {
                return Err(Error::InvalidIrrepSet("irrep is not unitary"));
            }
        }
        let characters = irreps
            .iter()
            .map(|f| character(f, tol))
            .collect::<Result<Vec<_>>>()?;
        for (r, a) in characters.iter().enumerate() {
            for (s, b) in characters.iter().enumerate() {
                let v = char_inner(a.as_class_function(), b.as_class_function())?;
                let expect = if r == s { 1.0 } else { 0.0 };
                if math::cabs(v - C64::new(expect, 0.0)) > tol.eq {
                    return Err(Error::InvalidIrrepSet("characters are not orthonormal"));
                }
            }
        }
        if irreps.len() != group.class_count() {
            return Err(Error::IncompleteSet(
                "number of irreps differs from number of classes",
            ));
        }
        if irreps.iter().map(|f| f.dim() * f.dim()).sum::<usize>() != group.order() {
            return Err(Error::IncompleteSet(
                "sum of squared dimensions differs from group order",
            ));
        }
        let mut pairs: Vec<(Representation, Character)> =
            irreps.into_iter().zip(characters).collect();
        let eps = tol.eq;
        pairs.sort_by(|(_, a), (_, b)| {
            canonical_order(a.dim(), a.values(), b.dim(), b.values(), eps)
        });
        let (irreps, characters) = pairs.into_iter().unzip();
        Ok(IrrepSet {
            group,
            irreps,
            characters,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn irreps(&self) -> &[Representation] {
        &self.irreps
    }

    pub fn irrep(&self, r: usize) -> Result<&Representation> {
        self.irreps.get(r).ok_or(Error::IrrepOutOfRange(r))
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Representation::dim).collect()
    }
}

/// `χ(g) = Σ_a Σ_j conj(B[a][j]) B[a·g][j]`: trace of the right regular
/// representation restricted to the column span of an orthonormal `B`.
fn regular_trace(group: &FiniteGroup, b: &ComplexMatrix, g: usize) -> C64 {
    let k = b.cols();
    let n = group.order();
    let mut s = C64::new(0.0, 0.0);
    for a in 0..n {
        let ra = b.row(a);
        let rag = b.row(group.mul(a, g));
        for j in 0..k {
            s += ra[j].conj() * rag[j];
        }
    }
    s
}

fn regular_character(group: &FiniteGroup, b: &ComplexMatrix) -> Vec<C64> {
    group
        .classes()
        .representatives()
        .iter()
        .map(|&g| regular_trace(group, b, g))
        .collect()
}

fn class_norm(group: &FiniteGroup, chi: &[C64]) -> f64 {
    let sizes = group.classes().sizes();
    let s: f64 = chi
        .iter()
        .zip(sizes)
        .map(|(z, &m)| z.norm_sqr() * m as f64)
        .sum();
    s / group.order() as f64
}

/// `f(g)[i][j] = Σ_a conj(B[a][i]) B[a·g][j]`.
fn regular_restriction(group: &FiniteGroup, b: &ComplexMatrix, g: usize) -> ComplexMatrix {
    let k = b.cols();
    let mut m = ComplexMatrix::zeros(k, k);
    for a in 0..group.order() {
        let ra = b.row(a);
        let rag = b.row(group.mul(a, g));
        for i in 0..k {
            let ci = ra[i].conj();
            for j in 0..k {
                m[(i, j)] += ci * rag[j];
            }
        }
    }
    m
}

/// Discovers a complete irrep set by splitting the right regular
/// representation.
///
/// Invariant subspaces are kept on a worklist. A subspace with character norm
/// 1 is irreducible; otherwise a random Hermitian `H₀` is averaged over the
/// group into an operator commuting with the representation, and the subspace
/// is split along the eigenvalue clusters of its compression. Irreducible
/// pieces are deduplicated by character, unitarized and sorted.
pub fn discover_irreps(
    group: &Arc<FiniteGroup>,
    seed: u64,
    max_order: usize,
    tol: &Tolerances,
) -> Result<IrrepSet> {
    let n = group.order();
    if n > max_order {
        return Err(Error::OrderLimitExceeded {
            limit: max_order,
            reached: n,
        });
    }
    let m = group.class_count();
    let mut r = rng(seed);
    let mut found: Vec<(ComplexMatrix, Vec<C64>)> = Vec::new();
    let mut work: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(n)];
    let mut covered = 0usize;

    while let Some(b) = work.pop() {
        if found.len() == m && covered == n {
            break;
        }
        let k = b.cols();
        let chi = regular_character(group, &b);
        let norm = class_norm(group, &chi);
        let rounded = math::round(norm);
        if rounded < 1.0 || math::abs(norm - rounded) > tol.int * rounded.max(1.0) {
            return Err(Error::NormNotNearInteger { norm });
        }
        if rounded == 1.0 {
            let scale = (k as f64).max(1.0);
            let known = found.iter().any(|(_, c)| {
                c.iter()
                    .zip(&chi)
                    .all(|(x, y)| math::cabs(x - y) <= tol.eq * scale)
            });
            if !known {
                covered += k * k;
                found.push((b, chi));
            }
            continue;
        }
        let mut pieces = None;
        for _ in 0..SPLIT_ATTEMPTS {
            let h0 = random_hermitian(&mut r, k);
            let k0 = &(&b * &h0) * &b.adjoint();
            // (1/N) Σ_g R(g) K₀ R(g)⁻¹ has entries (1/N) Σ_g K₀[a g][c g]
            let avg = ComplexMatrix::from_fn(n, n, |a, c| {
                let s =
                    math::pairwise_sum(n, &|g| k0[(group.mul(a, g), group.mul(c, g))], &|x, y| {
                        x + y
                    })
                    .unwrap_or_default();
                s / n as f64
            });
            let h = &(&b.adjoint() * &avg) * &b;
            let h = (&h + &h.adjoint()).scale_real(0.5);
            let es = hermitian_eig(&h)?;
            let clusters = es.clusters(tol.eig_cluster);
            if clusters.len() > 1 {
                pieces = Some(
                    clusters
                        .iter()
                        .map(|cl| &b * &es.vectors.select_columns(cl))
                        .collect::<Vec<_>>(),
                );
                break;
            }
        }
        match pieces {
            // smallest pieces are processed first
            Some(mut ps) => {
                ps.sort_by_key(|p| core::cmp::Reverse(p.cols()));
                work.extend(ps);
            }
            None => {
                return Err(Error::SplitStall {
                    dim: k,
                    attempts: SPLIT_ATTEMPTS,
                })
            }
        }
    }

    let mut irreps = Vec::with_capacity(found.len());
    for (b, _) in &found {
        let matrices = (0..n).map(|g| regular_restriction(group, b, g)).collect();
        let f = Representation::from_parts(group.clone(), matrices);
        let (h, _) = unitarize(&f, tol)?;
        irreps.push(h);
    }
    IrrepSet::new(group.clone(), irreps, tol)
}

/// The operators `P^i_j(r) = (n_r/N) Σ_a conj(F_r(a)[j][i]) φ(a)` for one
/// irrep `r`, stored as `ops[i][j]` (0-based).
#[derive(Debug, Clone)]
pub struct MatrixUnitProjectors {
    pub irrep: usize,
    pub ops: Vec<Vec<ComplexMatrix>>,
}

impl MatrixUnitProjectors {
    /// `P^i_j`.
    pub fn get(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.ops[i][j]
    }

    pub fn size(&self) -> usize {
        self.ops.len()
    }
}

pub fn matrix_unit_projectors(
    phi: &Representation,
    set: &IrrepSet,
    r: usize,
) -> Result<MatrixUnitProjectors> {
    if !same_group(phi.group(), set.group()) {
        return Err(Error::GroupMismatch);
    }
    let f = set.irrep(r)?;
    let nr = f.dim();
    let n = phi.group().order();
    let d = phi.dim();
    let w = nr as f64 / n as f64;
    let ops = (0..nr)
        .map(|i| {
            (0..nr)
                .map(|j| {
                    sum_matrices(n, d, d, |a| phi.matrix(a).scale(f.matrix(a)[(j, i)].conj()))
                        .scale_real(w)
                })
                .collect()
        })
        .collect();
    Ok(MatrixUnitProjectors { irrep: r, ops })
}

/// `P(r) = (n_r/N) Σ_a conj(χ_r(a)) φ(a)` for every irrep.
pub fn isotypic_projectors(phi: &Representation, set: &IrrepSet) -> Result<Vec<ComplexMatrix>> {
    if !same_group(phi.group(), set.group()) {
        return Err(Error::GroupMismatch);
    }
    let n = phi.group().order();
    let d = phi.dim();
    Ok(set
        .characters()
        .iter()
        .map(|chi| {
            let w = chi.dim() as f64 / n as f64;
            sum_matrices(n, d, d, |a| phi.matrix(a).scale(chi.at(a).conj())).scale_real(w)
        })
        .collect())
}

/// Isotypic components `V(r) = Im P(r)` with orthonormal bases; the rank of
/// each projector must equal `k_r · n_r`.
pub fn isotypic_decomposition(
    phi: &Representation,
    set: &IrrepSet,
    tol: &Tolerances,
) -> Result<Vec<Subspace>> {
    let k = multiplicities(phi, set, tol)?;
    let projectors = isotypic_projectors(phi, set)?;
    let dims = set.dims();
    projectors
        .iter()
        .enumerate()
        .map(|(r, p)| {
            let expected = k[r] * dims[r];
            let basis = if p.max_abs() == 0.0 {
                ComplexMatrix::zeros(phi.dim(), 0)
            } else {
                orthonormal_column_space(p, None, tol.rank)?
            };
            if basis.cols() != expected {
                return Err(Error::RankMismatch {
                    index: r,
                    expected,
                    found: basis.cols(),
                });
            }
            Subspace::new(basis, None, tol)
        })
        .collect()
}

/// One irreducible block of an adapted basis: copy `copy` of irrep `irrep`,
/// occupying columns `offset .. offset + dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub irrep: usize,
    pub copy: usize,
    pub offset: usize,
    pub dim: usize,
}

/// A full decomposition of a representation into irreducible blocks.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub multiplicities: Vec<usize>,
    pub isotypic_projectors: Vec<ComplexMatrix>,
    /// Columns ordered by irrep, then copy, then index within the copy.
    pub adapted_basis: ComplexMatrix,
    pub blocks: Vec<Block>,
    /// Worst entrywise deviation of `A⁻¹ φ(g) A` from the expected block
    /// matrix, over all elements.
    pub max_block_residual: f64,
}

/// Orthonormalizes columns of `p` in index order, skipping columns whose
/// remainder is at most `rel · max column norm`.
fn gram_schmidt_columns(p: &ComplexMatrix, rel: f64) -> Vec<Vec<C64>> {
    let cols: Vec<Vec<C64>> = (0..p.cols()).map(|j| p.column(j)).collect();
    let scale = cols.iter().map(|c| vector_norm(c)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    if scale == 0.0 {
        return basis;
    }
    for mut v in cols {
        for _ in 0..2 {
            for q in &basis {
                let c = crate::cmatrix::dot(q, &v);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let nv = vector_norm(&v);
        if nv > rel * scale {
            v.iter_mut().for_each(|x| *x /= nv);
            basis.push(v);
        }
    }
    basis
}

/// Adapted basis: for each irrep `r` a basis `e¹_s` of `Im P¹₁(r)`
/// (Gram-Schmidt on the projector's columns in index order) is transported
/// by `e^i_s = P¹_i(r) e¹_s`. In this basis `φ(g)` is block diagonal with
/// blocks equal to `F(g, r)`.
pub fn fine_decomposition(
    phi: &Representation,
    set: &IrrepSet,
    tol: &Tolerances,
) -> Result<Decomposition> {
    let k = multiplicities(phi, set, tol)?;
    let isotypic = isotypic_projectors(phi, set)?;
    let d = phi.dim();
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(d);
    let mut blocks = Vec::new();
    for (r, &kr) in k.iter().enumerate() {
        if kr == 0 {
            continue;
        }
        let units = matrix_unit_projectors(phi, set, r)?;
        let nr = units.size();
        let p11 = units.get(0, 0);
        let rank = svd(p11)?.rank(tol.rank);
        let seeds = gram_schmidt_columns(p11, tol.eig_cluster);
        if rank != kr || seeds.len() != kr {
            return Err(Error::RankMismatch {
                index: r,
                expected: kr,
                found: if rank != kr { rank } else { seeds.len() },
            });
        }
        for (s, seed) in seeds.iter().enumerate() {
            blocks.push(Block {
                irrep: r,
                copy: s,
                offset: columns.len(),
                dim: nr,
            });
            columns.push(seed.clone());
            for i in 1..nr {
                columns.push(units.get(0, i).mul_vec(seed));
            }
        }
    }
    let adapted_basis = ComplexMatrix::from_columns(d, &columns);
    let inv = adapted_basis.inverse().map_err(|_| Error::RankMismatch {
        index: set.len(),
        expected: d,
        found: svd(&adapted_basis).map(|s| s.rank(tol.rank)).unwrap_or(0),
    })?;
    let mut worst = (0, 0.0f64);
    for g in 0..phi.group().order() {
        let b = &(&inv * phi.matrix(g)) * &adapted_basis;
        let expect = ComplexMatrix::block_diag(
            &blocks
                .iter()
                .map(|bl| set.irreps()[bl.irrep].matrix(g))
                .collect::<Vec<_>>(),
        );
        let res = b.max_abs_diff(&expect);
        if res > worst.1 {
            worst = (g, res);
        }
    }
    if worst.1 > tol.block {
        return Err(Error::BlockResidualExceeded {
            element: worst.0,
            residual: worst.1,
            tolerance: tol.block,
        });
    }
    Ok(Decomposition {
        multiplicities: k,
        isotypic_projectors: isotypic,
        adapted_basis,
        blocks,
        max_block_residual: worst.1,
    })
}

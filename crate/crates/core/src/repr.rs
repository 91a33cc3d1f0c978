//! Representations of finite groups and the operations on them: conjugation,
//! direct sums, tensor products, restriction to invariant subspaces,
//! complements, commutants and intertwiner search.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::characters::{char_inner, character};
use crate::cmatrix::{
    null_space, orthonormal_column_space, polar_decompose, sum_matrices, svd, ComplexMatrix,
    HermitianForm, C64,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::math;
use crate::random::{random_matrix, rng};
use crate::tol::Tolerances;

/// Above this value of `N·dim` the homomorphism law is checked on random pairs.
pub const EXHAUSTIVE_HOMOMORPHISM_LIMIT: usize = 4096;
const SAMPLED_PAIRS: usize = 10_000;
const HOMOMORPHISM_SEED: u64 = 0x00c0_ffee;

/// Default number of random draws in [`find_intertwiner`].
pub const DEFAULT_TRIALS: usize = 3;

/// True when both handles denote the same group table.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn ensure_same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<()> {
    if same_group(a, b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// A group homomorphism into invertible `dim × dim` complex matrices, stored
/// as one matrix per group element.
#[derive(Debug, Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl Representation {
    /// Validates a full element table of matrices.
    pub fn new(
        group: Arc<FiniteGroup>,
        matrices: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimMismatch("one matrix per group element required"));
        }
        let dim = matrices[0].rows();
        if dim == 0 {
            return Err(Error::DimMismatch(
                "representation dimension must be positive",
            ));
        }
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimMismatch("matrices must be square of equal size"));
        }
        if matrices.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite);
        }
        let rep = Representation {
            group,
            dim,
            matrices,
        };
        rep.check_homomorphism(tol)?;
        Ok(rep)
    }

    pub(crate) fn from_parts(group: Arc<FiniteGroup>, matrices: Vec<ComplexMatrix>) -> Self {
        let dim = matrices[0].rows();
        Representation {
            group,
            dim,
            matrices,
        }
    }

    /// The representation sending every element to the `dim × dim` identity.
    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let matrices = vec![ComplexMatrix::identity(dim); group.order()];
        Representation {
            group,
            dim,
            matrices,
        }
    }

    /// Extends images of generators along the breadth-first word tree of the
    /// group and verifies the homomorphism law on the result.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        generators: &[usize],
        images: Vec<ComplexMatrix>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::DimMismatch("one image per generator required"));
        }
        if generators.iter().any(|&g| g >= group.order()) {
            return Err(Error::DimMismatch("generator index out of range"));
        }
        let dim = match images.first() {
            Some(m) => m.rows(),
            None if group.order() == 1 => {
                return Err(Error::DimMismatch(
                    "dimension cannot be inferred without generators",
                ))
            }
            None => return Err(Error::NotGenerating { element: 1 }),
        };
        if dim == 0 || images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimMismatch(
                "generator images must be square of equal size",
            ));
        }
        if images.iter().any(|m| !m.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tree = group.word_tree(generators);
        let n = group.order();
        let mut matrices: Vec<Option<ComplexMatrix>> = vec![None; n];
        matrices[0] = Some(ComplexMatrix::identity(dim));
        // BFS order guarantees parents are filled first when visiting by depth;
        // walk the tree explicitly to be independent of index order.
        let mut order: Vec<usize> = Vec::with_capacity(n);
        order.push(0);
        let mut head = 0;
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (c, p) in tree.iter().enumerate() {
            if let Some((a, _)) = p {
                children[*a].push(c);
            }
        }
        while head < order.len() {
            let a = order[head];
            head += 1;
            for &c in &children[a] {
                let (_, k) = tree[c].expect("child has a parent");
                let m = matrices[a].as_ref().expect("parent filled") * &images[k];
                matrices[c] = Some(m);
                order.push(c);
            }
        }
        if let Some(missing) = matrices.iter().position(Option::is_none) {
            return Err(Error::NotGenerating { element: missing });
        }
        let matrices: Vec<ComplexMatrix> = matrices.into_iter().map(Option::unwrap).collect();
        for (k, &g) in generators.iter().enumerate() {
            let residual = matrices[g].relative_distance(&images[k]);
            if residual > tol.eq {
                return Err(Error::NotAHomomorphism {
                    left: g,
                    right: 0,
                    residual,
                });
            }
        }
        Representation::new(group, matrices, tol)
    }

    /// Unchecked constructor for the one-dimensional representation with the
    /// given values; callers in tests and builders use it for characters of
    /// abelian groups.
    pub fn one_dimensional(
        group: Arc<FiniteGroup>,
        values: &[C64],
        tol: &Tolerances,
    ) -> Result<Self> {
        let matrices = values
            .iter()
            .map(|&z| ComplexMatrix::diagonal(&[z]))
            .collect();
        Representation::new(group, matrices, tol)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    /// Traces per element.
    pub fn traces(&self) -> Vec<C64> {
        self.matrices.iter().map(ComplexMatrix::trace).collect()
    }

    fn check_homomorphism(&self, tol: &Tolerances) -> Result<()> {
        let n = self.group.order();
        let id = ComplexMatrix::identity(self.dim);
        let r0 = self.matrices[0].relative_distance(&id);
        if r0 > tol.eq {
            return Err(Error::NotAHomomorphism {
                left: 0,
                right: 0,
                residual: r0,
            });
        }
        let check = |a: usize, b: usize| -> Result<()> {
            let residual = self.pair_residual(a, b);
            if residual > tol.eq {
                Err(Error::NotAHomomorphism {
                    left: a,
                    right: b,
                    residual,
                })
            } else {
                Ok(())
            }
        };
        if n * self.dim <= EXHAUSTIVE_HOMOMORPHISM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            for a in 0..n {
                check(a, self.group.inv(a))?;
            }
            let mut r = rng(HOMOMORPHISM_SEED);
            for _ in 0..SAMPLED_PAIRS {
                check(r.gen_range(0..n), r.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// `‖f(a)f(b) − f(ab)‖_F / max(1, ‖f(ab)‖_F)`.
    pub fn pair_residual(&self, a: usize, b: usize) -> f64 {
        let prod = &self.matrices[a] * &self.matrices[b];
        prod.relative_distance(&self.matrices[self.group.mul(a, b)])
    }

    /// Worst homomorphism residual over all pairs.
    pub fn homomorphism_residual(&self) -> f64 {
        let n = self.group.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.pair_residual(a, b))
            .fold(0.0, f64::max)
    }

    /// Worst `‖f(g)* f(g) − 1‖_F` over the group.
    pub fn unitarity_residual(&self) -> f64 {
        self.matrices
            .iter()
            .map(ComplexMatrix::unitarity_residual)
            .fold(0.0, f64::max)
    }

    /// Worst `‖f(g)* G f(g) − G‖_F / max(1, ‖G‖_F)` for the given form.
    pub fn form_unitarity_residual(&self, form: &HermitianForm) -> (usize, f64) {
        let g = form.gram();
        self.matrices
            .iter()
            .enumerate()
            .map(|(i, m)| (i, (&(&m.adjoint() * g) * m).relative_distance(g)))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    pub fn is_unitary(&self, tol: &Tolerances) -> bool {
        self.unitarity_residual() <= tol.eq * (self.dim as f64).max(1.0)
    }

    /// `h(g) = A f(g) A⁻¹`; `A` is then an intertwiner from `self` to `h`.
    pub fn conjugate(&self, a: &ComplexMatrix) -> Result<Self> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(Error::DimMismatch(
                "conjugating matrix must match the representation",
            ));
        }
        let inv = a.inverse()?;
        let matrices = self.matrices.iter().map(|m| &(a * m) * &inv).collect();
        Ok(Representation::from_parts(self.group.clone(), matrices))
    }

    /// Block-diagonal sum `f(g) ⊕ h(g)`.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        ensure_same_group(&self.group, &other.group)?;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| ComplexMatrix::block_diag(&[a, b]))
            .collect();
        Ok(Representation::from_parts(self.group.clone(), matrices))
    }

    /// Tensor product over the same group, Kronecker ordering `(i, q) ↦ i·m + q`.
    pub fn tensor(&self, other: &Representation) -> Result<Self> {
        ensure_same_group(&self.group, &other.group)?;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(Representation::from_parts(self.group.clone(), matrices))
    }

    /// Outer tensor product, a representation of `G1 × G2` whose matrix at
    /// index `i1·N2 + i2` is `f1(i1) ⊗ f2(i2)`.
    pub fn tensor_product_groups(
        f1: &Representation,
        f2: &Representation,
        max_order: usize,
    ) -> Result<Self> {
        let product = Arc::new(FiniteGroup::direct_product(
            &f1.group, &f2.group, max_order,
        )?);
        let n2 = f2.group.order();
        let matrices = (0..product.order())
            .map(|x| f1.matrices[x / n2].kron(&f2.matrices[x % n2]))
            .collect();
        Ok(Representation::from_parts(product, matrices))
    }

    /// Worst invariance residual `‖(1 − P_W) f(g) P_W‖_F / max(1, ‖f(g)‖_F)`
    /// with the element attaining it.
    pub fn invariance_residual(&self, w: &Subspace) -> (usize, f64) {
        let p = w.projector();
        let q = &ComplexMatrix::identity(self.dim) - &p;
        self.matrices
            .iter()
            .enumerate()
            .map(|(g, m)| {
                (
                    g,
                    (&(&q * m) * &p).frobenius_norm() / m.frobenius_norm().max(1.0),
                )
            })
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    /// Restriction to an invariant subspace, expressed in the subspace's basis.
    pub fn restrict(&self, w: &Subspace, tol: &Tolerances) -> Result<Self> {
        if w.ambient_dim() != self.dim {
            return Err(Error::DimMismatch("subspace lives in a different space"));
        }
        if w.dim() == 0 {
            return Err(Error::DimMismatch("restriction to the zero subspace"));
        }
        let (element, residual) = self.invariance_residual(w);
        if residual > tol.eq {
            return Err(Error::NotInvariant { element, residual });
        }
        let coords = w.coordinates_map();
        let matrices = self
            .matrices
            .iter()
            .map(|m| &(&coords * m) * w.basis())
            .collect();
        Ok(Representation::from_parts(self.group.clone(), matrices))
    }

    /// The factor representation by an invariant subspace `W`, realized as the
    /// restriction to the `form`-orthogonal complement of `W`. The
    /// representation must be unitary for `form`.
    pub fn quotient_via_complement(
        &self,
        w: &Subspace,
        form: &HermitianForm,
        tol: &Tolerances,
    ) -> Result<Self> {
        if w.ambient_dim() != self.dim || form.dim() != self.dim {
            return Err(Error::DimMismatch(
                "subspace or form lives in a different space",
            ));
        }
        let (element, residual) = self.form_unitarity_residual(form);
        if residual > tol.eq {
            return Err(Error::NotUnitary { element, residual });
        }
        if w.dim() == 0 {
            return Ok(self.clone());
        }
        if w.dim() == self.dim {
            return Err(Error::EmptyQuotient);
        }
        let (element, residual) = self.invariance_residual(w);
        if residual > tol.eq {
            return Err(Error::NotInvariant { element, residual });
        }
        let u = w.complement(Some(form), tol)?;
        self.restrict(&u, tol)
    }

    /// Basis of the commutant `{A : A f(g) = f(g) A for all g}`, as the null
    /// space of the stacked commutation equations over the group generators.
    pub fn commutant_basis(&self, tol: &Tolerances) -> Result<Vec<ComplexMatrix>> {
        let n = self.dim;
        let gens = self.group.generators();
        let mut stacked = ComplexMatrix::zeros(gens.len() * n * n, n * n);
        for (t, &g) in gens.iter().enumerate() {
            let f = &self.matrices[g];
            for i in 0..n {
                for j in 0..n {
                    let row = t * n * n + i * n + j;
                    // (f X)[i][j] = Σ_k f[i][k] X[k][j]
                    for k in 0..n {
                        stacked[(row, k * n + j)] += f[(i, k)];
                    }
                    // (X f)[i][j] = Σ_k X[i][k] f[k][j]
                    for k in 0..n {
                        stacked[(row, i * n + k)] -= f[(k, j)];
                    }
                }
            }
        }
        let ns = if stacked.rows() == 0 {
            ComplexMatrix::identity(n * n)
        } else {
            null_space(&stacked, tol.rank)?
        };
        Ok((0..ns.cols())
            .map(|c| ComplexMatrix::from_fn(n, n, |i, j| ns[(i * n + j, c)]))
            .collect())
    }

    /// Irreducibility via the character norm `⟨χ|χ⟩ = Σ k_r²`.
    pub fn is_irreducible(&self, tol: &Tolerances) -> Result<bool> {
        let norm = self.character_norm(tol)?;
        let k = math::round(norm);
        if k < 1.0 || math::abs(norm - k) > tol.int {
            return Err(Error::NormNotNearInteger { norm });
        }
        Ok(k == 1.0)
    }

    /// `⟨χ|χ⟩`, real part.
    pub fn character_norm(&self, tol: &Tolerances) -> Result<f64> {
        let chi = character(self, tol)?;
        Ok(char_inner(chi.as_class_function(), chi.as_class_function())?.re)
    }

    /// Rank of `span{f(g) x : g ∈ G}` for a vector `x`.
    pub fn orbit_span_rank(&self, x: &[C64], tol: &Tolerances) -> Result<usize> {
        if x.len() != self.dim {
            return Err(Error::DimMismatch("vector length differs from dimension"));
        }
        let cols: Vec<Vec<C64>> = self.matrices.iter().map(|m| m.mul_vec(x)).collect();
        let m = ComplexMatrix::from_columns(self.dim, &cols);
        Ok(svd(&m)?.rank(tol.rank))
    }
}

/// An orthonormal basis (columns) of a subspace, orthonormal with respect to
/// `form`, or to the standard product when `form` is `None`.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: ComplexMatrix,
    form: Option<HermitianForm>,
}

impl Subspace {
    /// Wraps a basis after checking orthonormality.
    pub fn new(
        basis: ComplexMatrix,
        form: Option<HermitianForm>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if let Some(f) = &form {
            if f.dim() != basis.rows() {
                return Err(Error::DimMismatch(
                    "form dimension differs from ambient dimension",
                ));
            }
        }
        let s = Subspace { basis, form };
        let gram = &s.coordinates_map() * &s.basis;
        let residual = gram.distance(&ComplexMatrix::identity(s.dim()));
        if residual > tol.eq * (s.dim() as f64).max(1.0) {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(s)
    }

    /// Form-orthonormal basis of the column space of `m`.
    pub fn span(m: &ComplexMatrix, form: Option<HermitianForm>, tol: &Tolerances) -> Result<Self> {
        let basis = orthonormal_column_space(m, form.as_ref(), tol.rank)?;
        Ok(Subspace { basis, form })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: ComplexMatrix::zeros(ambient_dim, 0),
            form: None,
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            basis: ComplexMatrix::identity(ambient_dim),
            form: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn form(&self) -> Option<&HermitianForm> {
        self.form.as_ref()
    }

    /// `B* G`: maps a vector of the subspace to its coordinates.
    pub fn coordinates_map(&self) -> ComplexMatrix {
        match &self.form {
            Some(f) => &self.basis.adjoint() * f.gram(),
            None => self.basis.adjoint(),
        }
    }

    /// Form-orthogonal projector `B B* G` onto the subspace.
    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * &self.coordinates_map()
    }

    /// The orthogonal complement with respect to `form` (standard product when
    /// `None`), with a basis orthonormal for that form.
    pub fn complement(&self, form: Option<&HermitianForm>, tol: &Tolerances) -> Result<Subspace> {
        let n = self.ambient_dim();
        if self.dim() == 0 {
            return match form {
                Some(f) => Subspace::span(&ComplexMatrix::identity(n), Some(f.clone()), tol),
                None => Ok(Subspace::full(n)),
            };
        }
        // ⟨w|x⟩_G = 0 for all basis vectors w
        let constraint = match form {
            Some(f) => &self.basis.adjoint() * f.gram(),
            None => self.basis.adjoint(),
        };
        let ns = null_space(&constraint, tol.rank)?;
        Subspace::span(&ns, form.cloned(), tol)
    }
}

/// A linear map `A` with `A f(g) = h(g) A` for every group element.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub source: Representation,
    pub target: Representation,
    pub matrix: ComplexMatrix,
}

impl Intertwiner {
    /// Checks the intertwining law within `tol.eq` relative to `‖A‖_F`.
    pub fn new(
        source: Representation,
        target: Representation,
        matrix: ComplexMatrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        ensure_same_group(&source.group, &target.group)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimMismatch(
                "intertwiner shape must be target_dim x source_dim",
            ));
        }
        let it = Intertwiner {
            source,
            target,
            matrix,
        };
        let (element, residual) = it.worst_residual();
        if residual > tol.eq * it.matrix.frobenius_norm().max(1.0) {
            return Err(Error::NotInvariant { element, residual });
        }
        Ok(it)
    }

    /// Worst `‖A f(g) − h(g) A‖_F` and the element attaining it.
    pub fn worst_residual(&self) -> (usize, f64) {
        (0..self.source.group.order())
            .map(|g| {
                let lhs = &self.matrix * self.source.matrix(g);
                let rhs = self.target.matrix(g) * &self.matrix;
                (g, lhs.distance(&rhs))
            })
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    pub fn residual(&self) -> f64 {
        self.worst_residual().1
    }
}

/// Searches for a nonzero intertwiner by averaging random matrices:
/// `C = (1/N) Σ_a h(a) B f(a⁻¹)`.
///
/// Returns the first nonzero `C` that passes the intertwining check. When both
/// representations are unitary and `C` is invertible the isometric factor of
/// its polar decomposition is returned instead; in every case the result is
/// rescaled so that its first entry of largest modulus is real and positive
/// (and equal to 1 in the non-unitary case). `None` means every trial averaged
/// to zero.
pub fn find_intertwiner(
    f: &Representation,
    h: &Representation,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Option<Intertwiner>> {
    ensure_same_group(&f.group, &h.group)?;
    let group = &f.group;
    let n = group.order();
    let mut r = rng(seed);
    let unitary = f.is_unitary(tol) && h.is_unitary(tol);
    for _ in 0..trials {
        let b = random_matrix(&mut r, h.dim, f.dim);
        let c = sum_matrices(n, h.dim, f.dim, |a| {
            &(h.matrix(a) * &b) * f.matrix(group.inv(a))
        })
        .scale_real(1.0 / n as f64);
        if c.frobenius_norm() <= tol.eq * b.frobenius_norm() {
            continue;
        }
        let candidate = if unitary && c.is_square() {
            let id = HermitianForm::standard(c.rows());
            match polar_decompose(&c, &id, &id) {
                Ok((t, _)) => t.normalize_phase(),
                Err(_) => unit_max(&c),
            }
        } else {
            unit_max(&c)
        };
        if let Ok(it) = Intertwiner::new(f.clone(), h.clone(), candidate, tol) {
            return Ok(Some(it));
        }
    }
    Ok(None)
}

fn unit_max(c: &ComplexMatrix) -> ComplexMatrix {
    let p = c.normalize_phase();
    let m = p.max_abs();
    p.scale_real(1.0 / m)
}

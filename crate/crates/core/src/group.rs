//! Finite groups as fully materialized multiplication tables.
//!
//! Element 0 is always the identity. Groups generated from permutations index
//! their elements in breadth-first discovery order, applying the generators
//! in the order given, so every downstream result is reproducible.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Above this order associativity is checked on random triples.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 10_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

/// Conjugacy classes of a group in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ClassPartition {
    /// Class index of element `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// Smallest element index in each class, strictly increasing.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Elements of class `c` in ascending order.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// A permutation of `0..degree`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive"));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() {
                return Err(Error::InvalidPermutation("image out of range"));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation("repeated image"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    classes: ClassPartition,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a Cayley table, `table[i][j]` being the index of
    /// `g_i * g_j`.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table"));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable("table is not square"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range"));
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        Self::from_flat_table(n, flat, Vec::new())
    }

    fn from_flat_table(n: usize, table: Vec<usize>, generators: Vec<usize>) -> Result<Self> {
        if (0..n).any(|j| table[j] != j || table[j * n] != j) {
            return Err(Error::IdentityNotFirst);
        }
        check_latin(n, &table)?;
        check_associative(n, &table)?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .ok_or(Error::NotAGroup {
                    reason: "element without right inverse",
                    witness: [i, 0, 0],
                })?;
            if table[j * n + i] != 0 {
                return Err(Error::NotAGroup {
                    reason: "left and right inverses differ",
                    witness: [i, j, 0],
                });
            }
            inverse[i] = j;
        }
        let classes = compute_classes(n, &table, &inverse);
        let mut group = FiniteGroup {
            order: n,
            table,
            inverse,
            classes,
            generators,
        };
        if group.generators.is_empty() {
            group.generators = group.greedy_generators();
        }
        Ok(group)
    }

    /// Closes `generators` under composition by breadth-first search.
    ///
    /// An empty generator list yields the trivial group.
    pub fn from_permutations(generators: &[Permutation], max_order: usize) -> Result<Self> {
        Ok(PermutationGroup::generate(generators, max_order)?.group)
    }

    /// Cyclic group `Z/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0"));
        }
        let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
        Self::from_flat_table(n, table, if n > 1 { vec![1] } else { Vec::new() })
    }

    /// Direct product `G1 × G2`; the pair `(i1, i2)` gets index `i1 * N2 + i2`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup, max_order: usize) -> Result<Self> {
        let (n1, n2) = (g1.order, g2.order);
        let n = n1 * n2;
        if n > max_order {
            return Err(Error::OrderLimitExceeded {
                limit: max_order,
                reached: n,
            });
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            for b in 0..n {
                let (b1, b2) = (b / n2, b % n2);
                table[a * n + b] = g1.mul(a1, b1) * n2 + g2.mul(a2, b2);
            }
        }
        let mut generators: Vec<usize> = g1.generators.iter().map(|&x| x * n2).collect();
        generators.extend(g2.generators.iter().copied());
        Self::from_flat_table(n, table, generators)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Row `a` of the multiplication table.
    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// A generating set: the permutation generators for permutation groups,
    /// otherwise a greedily chosen set. Never contains the identity.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Recomputes the conjugacy classes from the table.
    pub fn conjugacy_classes(&self) -> ClassPartition {
        compute_classes(self.order, &self.table, &self.inverse)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Breadth-first word tree over the given generators using right
    /// multiplication: `parent[c] = Some((a, k))` means `c = a * generators[k]`.
    /// Returns `None` for elements the generators do not reach.
    pub fn word_tree(&self, generators: &[usize]) -> Vec<Option<(usize, usize)>> {
        let n = self.order;
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (k, &s) in generators.iter().enumerate() {
                let c = self.mul(a, s);
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some((a, k));
                    queue.push_back(c);
                }
            }
        }
        parent
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        for g in 1..n {
            if reached[g] {
                continue;
            }
            gens.push(g);
            let tree = self.word_tree(&gens);
            for (x, r) in reached.iter_mut().enumerate().skip(1) {
                *r = tree[x].is_some();
            }
        }
        gens
    }
}

/// Result of closing a set of permutations: the group plus the permutation
/// realizing each element index.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: FiniteGroup,
    pub elements: Vec<Permutation>,
    /// Element index of each input generator, in input order.
    pub generator_indices: Vec<usize>,
}

impl PermutationGroup {
    pub fn generate(generators: &[Permutation], max_order: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            let group = FiniteGroup::from_flat_table(1, vec![0], Vec::new())?;
            return Ok(PermutationGroup {
                group,
                elements: vec![Permutation::identity(1)],
                generator_indices: Vec::new(),
            });
        };
        let degree = first.degree();
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        if max_order == 0 {
            return Err(Error::OrderLimitExceeded {
                limit: 0,
                reached: 1,
            });
        }
        let mut index: BTreeMap<Permutation, usize> = BTreeMap::new();
        let mut elements = vec![Permutation::identity(degree)];
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            for s in generators {
                let c = elements[head].compose(s);
                if !index.contains_key(&c) {
                    if elements.len() == max_order {
                        return Err(Error::OrderLimitExceeded {
                            limit: max_order,
                            reached: max_order + 1,
                        });
                    }
                    index.insert(c.clone(), elements.len());
                    elements.push(c);
                }
            }
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].compose(&elements[b])];
            }
        }
        let generator_indices: Vec<usize> = generators.iter().map(|p| index[p]).collect();
        let mut distinct: Vec<usize> = Vec::new();
        for &g in &generator_indices {
            if g != 0 && !distinct.contains(&g) {
                distinct.push(g);
            }
        }
        let group = FiniteGroup::from_flat_table(n, table, distinct)?;
        Ok(PermutationGroup {
            group,
            elements,
            generator_indices,
        })
    }
}

fn check_latin(n: usize, table: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let x = table[i * n + j];
            if seen[x] == i {
                return Err(Error::NotAGroup {
                    reason: "row is not a permutation",
                    witness: [i, j, x],
                });
            }
            seen[x] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let x = table[i * n + j];
            if seen[x] == j {
                return Err(Error::NotAGroup {
                    reason: "column is not a permutation",
                    witness: [i, j, x],
                });
            }
            seen[x] = j;
        }
    }
    Ok(())
}

fn check_associative(n: usize, table: &[usize]) -> Result<()> {
    let assoc = |i: usize, j: usize, k: usize| {
        table[table[i * n + j] * n + k] == table[i * n + table[j * n + k]]
    };
    let fail = |i, j, k| Error::NotAGroup {
        reason: "associativity fails",
        witness: [i, j, k],
    };
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !assoc(i, j, k) {
                        return Err(fail(i, j, k));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if !assoc(i, j, k) {
                return Err(fail(i, j, k));
            }
        }
    }
    Ok(())
}

fn compute_classes(n: usize, table: &[usize], inverse: &[usize]) -> ClassPartition {
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut members = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let c = representatives.len();
        representatives.push(g);
        let mut cls = Vec::new();
        for a in 0..n {
            let x = table[table[a * n + g] * n + inverse[a]];
            if class_of[x] == usize::MAX {
                class_of[x] = c;
                cls.push(x);
            }
        }
        cls.sort_unstable();
        members.push(cls);
    }
    let sizes = members.iter().map(Vec::len).collect();
    ClassPartition {
        class_of,
        representatives,
        sizes,
        members,
    }
}

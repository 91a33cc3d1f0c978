//! A few small groups that come up constantly in tests and examples.

use alloc::vec::Vec;

use crate::error::Result;
use crate::group::{FiniteGroup, Permutation, PermutationGroup};
use crate::tol::DEFAULT_MAX_ORDER;

/// The trivial group.
pub fn trivial() -> FiniteGroup {
    FiniteGroup::cyclic(1).expect("trivial group")
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::cyclic(n)
}

/// Symmetric group on `n >= 2` points, generated by the transposition
/// `(0 1)` followed by the long cycle `(0 1 .. n-1)`.
///
/// For `n = 3` the classes come out as identity, transpositions, 3-cycles.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    Ok(symmetric_permutations(n)?.group)
}

pub fn symmetric_permutations(n: usize) -> Result<PermutationGroup> {
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    PermutationGroup::generate(
        &[Permutation::new(swap)?, Permutation::new(cycle)?],
        DEFAULT_MAX_ORDER,
    )
}

/// Symmetry group of the regular `n`-gon, of order `2n`, generated by the
/// rotation and the reflection fixing vertex 0.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(
        &[Permutation::new(rot)?, Permutation::new(refl)?],
        DEFAULT_MAX_ORDER,
    )
}

/// The quaternion group `{±1, ±i, ±j, ±k}`; element `2u + s` is
/// `(-1)^s` times unit `u` of `(1, i, j, k)`.
pub fn quaternion() -> FiniteGroup {
    // (sign, unit) of unit products u*v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (sa, ua) = (a % 2, a / 2);
                    let (sb, ub) = (b % 2, b / 2);
                    let (s, u) = UNIT[ua][ub];
                    2 * u + (sa + sb + s) % 2
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(&table).expect("quaternion table")
}

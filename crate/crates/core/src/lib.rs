//! Numerical representation theory of finite groups.
//!
//! Groups are dense multiplication tables ([`group::FiniteGroup`]);
//! representations carry one complex matrix per element
//! ([`repr::Representation`]). On top of that the crate discovers a complete
//! set of irreducible representations from the regular representation,
//! computes characters, character tables and multiplicities, and
//! block-diagonalizes arbitrary representations with projection operators.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod characters;
pub mod cmatrix;
pub mod decompose;
pub mod error;
pub mod group;
pub mod l2;
mod math;
pub mod random;
pub mod repr;
pub mod tol;

pub use cmatrix::{ComplexMatrix, HermitianForm, C64};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Permutation};
pub use math::pairwise_sum;
pub use repr::{Intertwiner, Representation, Subspace};

pub use tol::Tolerances;

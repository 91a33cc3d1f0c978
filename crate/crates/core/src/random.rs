//! Seeded random matrices for the randomized algorithms and for tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::{ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Entries uniform on the square `[-1, 1) × [-1, 1)`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| entry(rng))
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    (&a + &a.adjoint()).scale_real(0.5)
}

/// `1 + X` with `X` random and `‖X‖_F = 9/10`, hence invertible with
/// condition number at most 19 and generally far from unitary.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let x = random_matrix(rng, n, n);
    let s = 0.9 / x.frobenius_norm().max(f64::MIN_POSITIVE);
    &ComplexMatrix::identity(n) + &x.scale_real(s)
}

/// Positive definite matrix `A* A + 1/10`.
pub fn random_positive<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    &(&a.adjoint() * &a) + &ComplexMatrix::identity(n).scale_real(0.1)
}

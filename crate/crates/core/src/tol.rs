//! Numerical tolerances shared by every check in the crate.

/// Default bound on group order for dense tables and regular representations.
pub const DEFAULT_MAX_ORDER: usize = 2048;

/// Default seed for randomized algorithms.
pub const DEFAULT_SEED: u64 = 20061995;

/// Reference value of [`Tolerances::eq`]; every other tolerance is scaled
/// relative to it by [`Tolerances::scaled`].
pub const BASE_EQ: f64 = 1e-8;

/// The set of thresholds used for equality, rank, clustering, integrality and
/// block residual decisions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative Frobenius equality threshold.
    pub eq: f64,
    /// Singular values at or below `rank * sigma_max` count as zero.
    pub rank: f64,
    /// Relative eigenvalue gap below which eigenvalues belong to one cluster.
    pub eig_cluster: f64,
    /// Maximum distance from an integer for multiplicities and character norms.
    pub int: f64,
    /// Entrywise residual allowed in adapted-basis blocks.
    pub block: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq: BASE_EQ,
            rank: 1e-8,
            eig_cluster: 1e-6,
            int: 1e-6,
            block: 1e-7,
        }
    }
}

impl Tolerances {
    /// Tolerances with `eq` set to the given value and all derived thresholds
    /// scaled by the same factor.
    pub fn scaled(eq: f64) -> Self {
        let k = eq / BASE_EQ;
        let d = Tolerances::default();
        Tolerances {
            eq,
            rank: d.rank * k,
            eig_cluster: d.eig_cluster * k,
            int: d.int * k,
            block: d.block * k,
        }
    }
}

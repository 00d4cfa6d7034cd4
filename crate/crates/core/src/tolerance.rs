/// Numerical thresholds used throughout the pipeline.
///
/// `rank` is relative: a singular value counts as zero when it is at most
/// `rank * largest_singular_value * n`. The others are documented per field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative rank threshold for nullspace and range computations.
    pub rank: f64,
    /// Absolute bound on Jacobi cyclic-sum residual entries.
    pub jacobi: f64,
    /// Skew-adjointness residual, relative to the metric and structure constant scale.
    pub skew: f64,
    /// Relative proportionality residual when reading off ideal coefficients.
    pub proportional: f64,
    /// Relative tolerance when comparing coordinates of two metrics.
    pub equal: f64,
    /// Relative eigenvalue gap below which eigenvalues are merged into one cluster.
    pub cluster_gap: f64,
    /// Residual allowed when verifying decomposition invariants (relative to structure scale).
    pub check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            jacobi: 1e-9,
            skew: 1e-9,
            proportional: 1e-8,
            equal: 1e-8,
            cluster_gap: 1e-6,
            check: 1e-8,
        }
    }
}

impl Tolerances {
    /// Defaults with the base tolerance (rank, jacobi, skew) replaced by `base`.
    pub fn with_base(base: f64) -> Self {
        Tolerances {
            rank: base,
            jacobi: base,
            skew: base,
            ..Default::default()
        }
    }
}

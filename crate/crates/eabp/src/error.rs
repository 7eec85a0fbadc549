use thiserror::Error;

/// Errors produced by the algebra kernels and the enumeration machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// The nested probability arrays do not have a consistent rectangular shape.
    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: String,
        got: String,
    },

    /// Both sexes must be present; n = 0 or nu = 0 is rejected at construction.
    #[error("degenerate type counts: n = {n}, nu = {nu} (both must be >= 1)")]
    EmptySexClass { n: usize, nu: usize },

    /// An element does not conform to the tensor it is used with.
    #[error("dimension mismatch: tensor is ({n}, {nu}), element is ({zx}, {zy})")]
    DimensionMismatch {
        n: usize,
        nu: usize,
        zx: usize,
        zy: usize,
    },

    /// Row sums or signs violate stochasticity beyond the tolerance.
    #[error("stochasticity violated: {0} row(s) out of tolerance, worst residual {1:.3e}")]
    NonStochastic(usize, f64),

    /// Guard for the brute-force search space.
    #[error("search space too large: n + nu = {dim} exceeds the limit {max}")]
    SearchSpaceTooLarge { dim: usize, max: usize },

    /// The eigenvalue-based root finder did not converge on a determinant polynomial.
    #[error("root finding did not converge: {0}")]
    RootFinding(String),

    /// An emitted solution failed its own membership predicate.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

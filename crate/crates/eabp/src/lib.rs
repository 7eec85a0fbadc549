//! Evolution algebra of a bisexual population.
//!
//! A two-sex population with `n` female and `nu` male types evolves by a
//! quadratic operator built from inheritance coefficients; the same
//! coefficients serve as structure constants of a commutative,
//! non-associative algebra on `R^(n+nu)`. This crate implements that
//! algebra and the analysis that comes with it:
//!
//! * [`algebra`] — the inheritance tensor, the bilinear product, plenary
//!   powers, the l1 norm and left-multiplication operators, and the
//!   homomorphism onto the two-dimensional sex differentiation algebra;
//! * [`properties`] — associator defects, power-associativity
//!   counterexamples, and the certificate that no nonzero character exists;
//! * [`derivations`] — the linear constraint system whose null space is the
//!   derivation space, with an independent Leibniz-rule oracle;
//! * [`dynamics`] — trajectories of the evolution operator, the sex-mass
//!   recurrence, limit-set estimates and fixed-point search;
//! * [`special`] — the preference special case generated by a stochastic
//!   matrix pair, with exact enumeration of idempotents and absolute
//!   nilpotents;
//! * [`oracle`] — grid+Newton brute-force search used to cross-check the
//!   exact enumerations, and the seeded sampling engine;
//! * [`cli`] — the JSON-speaking command-line surface behind the `eabp`
//!   binary.
//!
//! Everything is plain `f64`; identity checks take explicit tolerances.
//! All types are immutable values after construction and all operations are
//! pure functions, so concurrent use needs no synchronization. Sampling
//! helpers take explicit seeds and are deterministic.
//!
//! The `examples/` directory contains one runnable walk-through per major
//! capability; start with `tensor_playground`.

pub mod algebra;
pub mod cli;
pub mod derivations;
pub mod dynamics;
pub mod error;
pub(crate) mod linalg;
pub mod oracle;
pub mod properties;
pub mod special;

pub use algebra::{AlgebraElement, InheritanceTensor, SexDiffElement};
pub use error::{Error, Result};
pub use special::{SolutionSet, StochasticMatrixPair};

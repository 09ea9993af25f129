//! Exact face counts of hypersimplices and half-open hypersimplices.
//!
//! The hypersimplex `Δ(n,k)` is the slice of the unit cube `[0,1]^n` where the
//! coordinate sum lies in `[k-1, k]`; the half-open hypersimplex `Δ'(n,k)`
//! drops the lower boundary, so the sum lies in `(k-1, k]`. The `n` half-open
//! cells partition the unit cube with the origin removed.
//!
//! Face numbers are obtained three independent ways:
//!
//! * [`closed_form`]: summation formulas over binomial coefficients,
//! * [`series`]: coefficient extraction from rational generating functions,
//! * [`face_oracle`]: brute-force enumeration of the face lattice.
//!
//! [`verify`] cross-checks all of them, together with the cube-decomposition
//! column sums and their link to Chebyshev coefficients ([`chebyshev`]).

pub mod chebyshev;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod exact_math;
pub mod face_oracle;
pub mod series;
pub mod verify;

pub use closed_form::{FVector, HypersimplexSpec};
pub use error::{Error, Result};
pub use exact_math::{Integer, Rational};

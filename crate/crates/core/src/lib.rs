//! Interpolated multiple zeta values: exact `t`-stuffle algebra on words in
//! `x, y`, the interpolation map `S_t`, truncated numeric evaluation, and
//! checkers for the product identities built on them.

pub mod arith;
pub mod error;
pub mod interp;
pub mod stuffle;
pub mod theorems;
pub mod word;
pub mod zeta;

pub use arith::{binom, factorial, GaussianRational, Rational, TPoly};
pub use error::Error;
pub use theorems::{Case, Statement, SweepOptions, Verdict, VerifyReport, Witness};
pub use word::{delta, Element, Index, Letter, Word};
pub use zeta::EvalConfig;

//! Five-weight cyclic codes over `F_{p^t}` with parity-check polynomial
//! `h0 h1 h2`, and exact machinery for their weight distribution.
//!
//! The weight of a codeword `c(a,b,c)` is an affine function of the
//! exponential sum `T(a,b,c)`, so the weight distribution follows from the
//! value distribution of `T`. That distribution is computed three ways that
//! share nothing beyond the field tables:
//!
//! * [`spectrum::table1_closed_form`] evaluates the closed-form frequencies.
//! * [`spectrum::enumerate_distribution`] classifies every quadratic form
//!   `Q_{a,b,c}` by rank and discriminant ([`quadform`]).
//! * [`spectrum::moment_solve_distribution`] recovers the frequencies from
//!   the first four power sums of `T`, which [`counting`] obtains by counting
//!   solutions of small diagonal systems.
//!
//! [`charsum`] evaluates `T` directly as an element of `Z[zeta_p]` and is the
//! ground truth for the sign conventions of the classifier, while
//! [`code::codeword_weight_direct`] counts nonzero codeword symbols.

pub mod charsum;
pub mod code;
pub mod count_table;
pub mod counting;
pub mod error;
pub mod field;
pub mod numtheory;
pub mod params;
pub mod quadform;
pub mod report;
pub mod spectrum;

pub use error::{Error, ErrorClass, Result};
pub use field::{Elem, FieldCtx};
pub use params::{CodeContext, CodeParams, LambdaRule};

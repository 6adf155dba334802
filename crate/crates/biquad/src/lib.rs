//! Exact arithmetic in real biquadratic fields `Q(sqrt(p), sqrt(q))`,
//! enumeration of indecomposable totally positive integers, and the
//! escalation method for lower bounds on the number of variables of
//! classical universal totally positive quadratic forms.
//!
//! All computations are carried out over arbitrary-precision rationals;
//! no floating point is used anywhere, so every sign decision and every
//! table entry is exact.

pub mod element;
pub mod error;
pub mod field;
pub mod forms;
pub mod indecomp;
pub mod parse;
pub mod presets;
pub mod quadcf;
pub mod rat;
pub mod sign;
pub mod squares;

pub use element::BiquadElement;
pub use error::Error;
pub use field::{Case, Field, make_field};
pub use rat::Rational;
pub use sign::{Sign, SignCertificate, TotalCmp};

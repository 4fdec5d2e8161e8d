//! Exact order-of-magnitude reasoning.
//!
//! * [`extended_reals`]: rational functions in an infinitesimal `ε`, the
//!   concrete numbers everything else is checked against.
//! * [`oom`]: the sign/order algebra `(σ, n)` abstracting them.
//! * [`formulas`]: symbol-linear arithmetic formulas evaluated over any
//!   carrier, with sampling harnesses for soundness and completeness.
//! * [`kappa`]: kappa functions, order-of-magnitude probability and their
//!   probabilistic interpretations.
//! * [`decision`]: order-of-magnitude expected utility and Pearl's kappa
//!   decision rules.

pub mod decision;
pub mod extended_reals;
pub mod formulas;
pub mod kappa;
pub mod oom;

pub use extended_reals::{ExtendedReal, Polynomial, Rational};
pub use oom::{Comparison, OomValue, Order, Sign};

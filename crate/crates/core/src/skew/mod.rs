//! The Frobenius skew polynomial ring and its graded two-sided ideals.

mod chain;
mod skewpoly;

pub use chain::GradedIdealChain;
pub use skewpoly::SkewPoly;

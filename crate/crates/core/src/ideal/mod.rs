//! Ideals of polynomial rings and their quotients.

#[allow(clippy::module_inception)]
mod ideal;
mod ring;

pub use ideal::{FrobeniusClosure, Ideal};
pub use ring::{QuotientRing, Ring};

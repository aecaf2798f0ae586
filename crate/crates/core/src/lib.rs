pub mod error;
pub mod ideal;
pub mod linalg;
pub mod localcoh;
pub mod modules;
pub mod poly;
pub mod radical;
pub mod skew;

pub use error::{Error, Result};
pub use ideal::{Ideal, QuotientRing, Ring};

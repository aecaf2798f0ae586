//! Top local cohomology of a Cohen–Macaulay quotient in its Čech model,
//! tight closure of parameter ideals, and the ideals `q(b)`.

mod cech;
mod enescu;
mod tc;

pub use cech::{CechClass, CechModule, LimitEstimate, SopData};
pub use enescu::{enescu_zqr, EnescuReport, ZqrReport};
pub use tc::{tc_param_membership, Membership, TcMode, TcReport};

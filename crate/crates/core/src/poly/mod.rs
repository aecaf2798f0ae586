//! Polynomials over prime fields and Gröbner basis machinery.

mod groebner;
mod parse;
mod polynomial;
mod ring;

pub use groebner::{divide_exact, eliminate, frobenius_preimage, normal_form, reduced_groebner};

pub use parse::{parse_polynomial, parse_polynomial_list};
pub(crate) use polynomial::divides;
pub use polynomial::{Exponents, Polynomial, Term};
pub use ring::{MonomialOrder, PolyRing, DEFAULT_PAIR_LIMIT};

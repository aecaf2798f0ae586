use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{normal_form, parse_polynomial, parse_polynomial_list, reduced_groebner, PolyRing, Polynomial};

/// `S/I` for a polynomial ring `S` over `F_p` and a proper ideal `I`.
/// A plain polynomial ring is the case `I = 0`.
#[derive(Debug)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    defining: Vec<Polynomial>,
    dim: OnceLock<i64>,
    equidimensional: AtomicBool,
    regular_sequence: Mutex<Option<Vec<Polynomial>>>,
}

pub type Ring = Arc<QuotientRing>;

impl QuotientRing {
    /// The polynomial ring itself. Polynomial rings are equidimensional, so
    /// the flag is set.
    pub fn polynomial(ambient: &Arc<PolyRing>) -> Ring {
        Arc::new(QuotientRing {
            ambient: ambient.clone(),
            defining: Vec::new(),
            dim: OnceLock::new(),
            equidimensional: AtomicBool::new(true),
            regular_sequence: Mutex::new(None),
        })
    }

    pub fn new(ambient: &Arc<PolyRing>, relations: &[Polynomial]) -> Result<Ring> {
        let defining = reduced_groebner(ambient, relations)?;
        if defining.first().is_some_and(|g| g.is_constant()) {
            return Err(Error::InvalidArgument("defining ideal is the whole ring".into()));
        }
        Ok(Arc::new(QuotientRing {
            ambient: ambient.clone(),
            defining,
            dim: OnceLock::new(),
            equidimensional: AtomicBool::new(relations.iter().all(|r| r.is_zero())),
            regular_sequence: Mutex::new(None),
        }))
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn defining(&self) -> &[Polynomial] {
        &self.defining
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_empty()
    }

    /// Krull dimension of `S/I`.
    pub fn dimension(&self) -> i64 {
        *self
            .dim
            .get_or_init(|| dim_from_gb(self.ambient.nvars(), &self.defining))
    }

    /// Records that the caller asserts (or a check established) that every
    /// minimal prime has the same dimension.
    pub fn assume_equidimensional(&self) {
        self.equidimensional.store(true, Ordering::SeqCst);
    }

    pub fn is_equidimensional(&self) -> bool {
        self.equidimensional.load(Ordering::SeqCst)
    }

    pub(crate) fn record_regular_sequence(&self, seq: &[Polynomial]) {
        *self.regular_sequence.lock().unwrap() = Some(seq.to_vec());
    }

    /// The last sequence that passed `is_regular_sequence`, if any.
    pub fn verified_regular_sequence(&self) -> Option<Vec<Polynomial>> {
        self.regular_sequence.lock().unwrap().clone()
    }

    pub fn same(&self, other: &QuotientRing) -> bool {
        std::ptr::eq(self, other) || (self.ambient.same(&other.ambient) && self.defining == other.defining)
    }

    pub(crate) fn check(&self, f: &Polynomial) -> Result<()> {
        if f.ring().same(&self.ambient) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "polynomial of {} used in {}",
                f.ring(),
                self
            )))
        }
    }

    /// Canonical representative modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        if self.defining.is_empty() {
            return Ok(f.clone());
        }
        normal_form(f, &self.defining)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.reduce(&parse_polynomial(&self.ambient, text)?)
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Polynomial>> {
        parse_polynomial_list(&self.ambient, text)?
            .iter()
            .map(|f| self.reduce(f))
            .collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.ambient)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.ambient)
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for QuotientRing {}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        if !self.defining.is_empty() {
            let rels: Vec<String> = self.defining.iter().map(|g| g.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// Dimension of `S/J` from a Gröbner basis of `J`: the size of a largest set
/// of variables containing no leading monomial. The unit ideal gives -1.
pub(crate) fn dim_from_gb(nvars: usize, gb: &[Polynomial]) -> i64 {
    if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return -1;
    }
    let supports: Vec<u64> = gb
        .iter()
        .map(|g| {
            g.lm()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    assert!(nvars < 64, "too many variables for the dimension search");
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as i64;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    #[test]
    fn dimensions() {
        let s = PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(QuotientRing::polynomial(&s).dimension(), 2);
        let st = parse_polynomial(&s, "s*t").unwrap();
        let r = QuotientRing::new(&s, &[st]).unwrap();
        assert_eq!(r.dimension(), 1);
        assert!(!r.is_equidimensional());
        assert!(QuotientRing::new(&s, &[Polynomial::one(&s)]).is_err());
    }

    #[test]
    fn reduction_is_canonical() {
        let s = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let r = QuotientRing::new(&s, &[parse_polynomial(&s, "z^2 - x^2*y").unwrap()]).unwrap();
        let a = r.parse("z^3").unwrap();
        let b = r.parse("x^2*y*z").unwrap();
        assert_eq!(a, b);
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default number of S-pairs Buchberger may reduce before giving up.
pub const DEFAULT_PAIR_LIMIT: usize = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex
    /// on the rest. Any monomial involving the first block beats every
    /// monomial free of it.
    Elimination(usize),
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elimination({k})"),
        }
    }
}

/// A polynomial ring `F_p[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
    pair_limit: usize,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(p: u32, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidArgument(format!("characteristic {p} exceeds 31 bits")));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidArgument(format!("'{v}' is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable '{v}'")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "cannot eliminate {k} of {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing {
            p,
            vars,
            order,
            pair_limit: DEFAULT_PAIR_LIMIT,
        }))
    }

    /// Same ring with a different Buchberger pair budget.
    pub fn with_pair_limit(&self, pair_limit: usize) -> Arc<Self> {
        Arc::new(PolyRing {
            pair_limit,
            ..self.clone()
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn pair_limit(&self) -> usize {
        self.pair_limit
    }

    /// Rings agree when they have the same characteristic, variables and order.
    pub fn same(&self, other: &PolyRing) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.order == other.order && self.vars == other.vars)
    }

    /// Copy of this ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    /// Ring with `names` prepended as an eliminable block: the result uses
    /// `Elimination(names.len())` and the old variables keep their relative order.
    pub(crate) fn with_front_block(&self, count: usize, stem: &str) -> Arc<Self> {
        let mut vars: Vec<String> = (0..count).map(|i| format!("_{stem}{i}")).collect();
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            p: self.p,
            vars,
            order: MonomialOrder::Elimination(count),
            pair_limit: self.pair_limit,
        })
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination(k) => grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..])),
        }
    }

    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub(crate) fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}] ({})", self.p, self.vars.join(","), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_duplicates() {
        assert!(PolyRing::new(4, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(1, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(2, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(2, &["2x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(2, &["x"], MonomialOrder::Elimination(2)).is_err());
    }

    #[test]
    fn field_inverse() {
        let r = PolyRing::new(7, &["x"], MonomialOrder::Grevlex).unwrap();
        for a in 1..7 {
            assert_eq!(r.mul(a, r.inv(a)), 1);
        }
    }

    #[test]
    fn orders() {
        let r = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp_monomials(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let l = r.with_order(MonomialOrder::Lex);
        assert_eq!(l.cmp_monomials(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        let e = r.with_order(MonomialOrder::Elimination(1));
        assert_eq!(e.cmp_monomials(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }
}

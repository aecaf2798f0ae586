use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::Ring;
use crate::poly::Polynomial;

/// An element `Σ r_i x^i` of the Frobenius skew polynomial ring `R[x,f]`,
/// where `x r = r^p x`. Coefficients are kept reduced modulo the defining
/// ideal; degrees are strictly increasing.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    ring: Ring,
    terms: Vec<(u32, Polynomial)>,
}

impl SkewPoly {
    pub fn new(ring: &Ring, terms: impl IntoIterator<Item = (u32, Polynomial)>) -> Result<Self> {
        let mut acc: Vec<(u32, Polynomial)> = Vec::new();
        for (n, r) in terms {
            let r = ring.reduce(&r)?;
            match acc.iter_mut().find(|(m, _)| *m == n) {
                Some((_, c)) => *c = ring.reduce(&(&*c + &r))?,
                None => acc.push((n, r)),
            }
        }
        acc.retain(|(_, c)| !c.is_zero());
        acc.sort_by_key(|(n, _)| *n);
        Ok(SkewPoly {
            ring: ring.clone(),
            terms: acc,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        SkewPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, r: &Polynomial) -> Result<Self> {
        Self::new(ring, [(0, r.clone())])
    }

    /// `x^n`.
    pub fn x_power(ring: &Ring, n: u32) -> Self {
        SkewPoly {
            ring: ring.clone(),
            terms: vec![(n, ring.one())],
        }
    }

    pub fn terms(&self) -> &[(u32, Polynomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(n, _)| *n)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch("skew polynomials over different rings".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(&self.ring, self.terms.iter().chain(&other.terms).cloned())
    }

    /// `(r x^n)(s x^m) = r s^(p^n) x^(n+m)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Vec::new();
        for (n, r) in &self.terms {
            for (m, s) in &other.terms {
                let twisted = self.ring.reduce(&s.frobenius(*n)?)?;
                out.push((n + m, r * &twisted));
            }
        }
        Self::new(&self.ring, out)
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, r)| match n {
                0 => format!("({r})"),
                1 => format!("({r})X"),
                _ => format!("({r})X^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::{MonomialOrder, PolyRing};

    #[test]
    fn defining_relation() {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap());
        let x = SkewPoly::x_power(&r, 1);
        let c = SkewPoly::constant(&r, &r.parse("s+t").unwrap()).unwrap();
        let prod = x.mul(&c).unwrap();
        assert_eq!(prod, SkewPoly::new(&r, [(1, r.parse("s^2+t^2").unwrap())]).unwrap());
        let one = SkewPoly::constant(&r, &r.one()).unwrap();
        assert_eq!(prod.mul(&one).unwrap(), prod);
        assert_eq!(x.mul(&x).unwrap(), SkewPoly::x_power(&r, 2));
        let x2r = SkewPoly::x_power(&r, 2).mul(&c).unwrap();
        assert_eq!(x2r, SkewPoly::new(&r, [(2, r.parse("s^4+t^4").unwrap())]).unwrap());
    }
}

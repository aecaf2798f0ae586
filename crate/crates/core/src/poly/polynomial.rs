use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::ring::PolyRing;
use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub exps: Exponents,
}

/// Canonical polynomial: nonzero coefficients, monomials strictly decreasing
/// in the ring order. The empty term list is zero.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn quotient_exps(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn mul_exps(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn exps_degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.reduce_int(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![Term {
                coeff: c,
                exps: SmallVec::from_elem(0, ring.nvars()),
            }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, ring.nvars());
        exps[index] = 1;
        Self::monomial(ring, 1, exps)
    }

    pub fn monomial(ring: &Arc<PolyRing>, coeff: i64, exps: Exponents) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let c = ring.reduce_int(coeff);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![Term { coeff: c, exps }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated,
    /// unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (i64, Exponents)>) -> Self {
        let mut acc: HashMap<Exponents, u32> = HashMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent vector length");
            let c = ring.reduce_int(c);
            let slot = acc.entry(e).or_insert(0);
            *slot = ring.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Exponents, u32>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.exps, &a.exps));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].exps, &w[1].exps) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.coeff != 0 && t.coeff < ring.characteristic()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exps.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coeff == 1 && self.is_constant()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> &Exponents {
        &self.terms[0].exps
    }

    pub fn lc(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| exps_degree(&t.exps)).max()
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| exps_degree(&t.exps));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Constant term coefficient.
    pub fn constant_coeff(&self) -> u32 {
        self.terms
            .last()
            .filter(|t| t.exps.iter().all(|&e| e == 0))
            .map_or(0, |t| t.coeff)
    }

    pub fn variables_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for t in &self.terms {
            for (u, &e) in used.iter_mut().zip(&t.exps) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: self.ring.mul(t.coeff, c),
                exps: t.exps.clone(),
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(self.ring.inv(t.coeff)),
        }
    }

    /// `c * x^m * self`; monomial multiplication preserves term order.
    pub fn mul_term(&self, c: u32, m: &[u32]) -> Self {
        if c == 0 {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: self.ring.mul(t.coeff, c),
                exps: mul_exps(&t.exps, m),
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self - c * x^m * other`, merged in one pass.
    pub(crate) fn sub_mul_term(&self, c: u32, m: &[u32], other: &Polynomial) -> Self {
        let ring = &self.ring;
        let negc = ring.neg(c % ring.characteristic());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        let mut bexps: Exponents = SmallVec::new();
        while i < a.len() || j < b.len() {
            if j < b.len() {
                bexps.clear();
                bexps.extend(b[j].exps.iter().zip(m).map(|(x, y)| x + y));
            }
            let ord = if i >= a.len() {
                Ordering::Less
            } else if j >= b.len() {
                Ordering::Greater
            } else {
                ring.cmp_monomials(&a[i].exps, &bexps)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = ring.mul(b[j].coeff, negc);
                    if coeff != 0 {
                        out.push(Term {
                            coeff,
                            exps: bexps.clone(),
                        });
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = ring.add(a[i].coeff, ring.mul(b[j].coeff, negc));
                    if coeff != 0 {
                        out.push(Term {
                            coeff,
                            exps: bexps.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let max_exp = self
            .terms
            .iter()
            .flat_map(|t| t.exps.iter().copied())
            .max()
            .unwrap_or(0) as u64;
        if max_exp.checked_mul(e).is_none_or(|m| m > u32::MAX as u64) {
            return Err(Error::Overflow("a polynomial power".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`: in characteristic p with prime-field coefficients this
    /// just scales every exponent vector by `p^e`.
    pub fn frobenius(&self, e: u32) -> Result<Self> {
        let q = frobenius_exponent(self.ring.characteristic(), e)?;
        self.power_exponents(q)
    }

    /// Multiplies every exponent by `q` (the substitution `x_i -> x_i^q`).
    pub fn power_exponents(&self, q: u32) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = Exponents::with_capacity(t.exps.len());
            for &x in &t.exps {
                exps.push(
                    x.checked_mul(q)
                        .ok_or_else(|| Error::Overflow("a Frobenius power".into()))?,
                );
            }
            terms.push(Term { coeff: t.coeff, exps });
        }
        // scaling all exponents by a positive integer preserves every supported order
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Re-expresses the polynomial in another ring: source variable `i`
    /// becomes target variable `map[i]`.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        Self::from_terms(
            target,
            self.terms.iter().map(|t| {
                let mut exps: Exponents = SmallVec::from_elem(0, n);
                for (i, &e) in t.exps.iter().enumerate() {
                    exps[map[i]] += e;
                }
                (t.coeff as i64, exps)
            }),
        )
    }

    /// Inverse of `map_vars` on polynomials that only involve mapped
    /// variables; `None` if some other variable occurs.
    pub fn restrict_vars(&self, target: &Arc<PolyRing>, map: &[usize]) -> Option<Self> {
        assert_eq!(map.len(), target.nvars());
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps: Exponents = SmallVec::from_elem(0, target.nvars());
            let mut used = 0u64;
            for (j, &src) in map.iter().enumerate() {
                exps[j] = t.exps[src];
                used += t.exps[src] as u64;
            }
            if used != exps_degree(&t.exps) {
                return None;
            }
            out.push((t.coeff as i64, exps));
        }
        Some(Self::from_terms(target, out))
    }

    /// Evaluates coefficientwise in the same ring after substituting
    /// polynomials for variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut term = Polynomial::constant(&target, t.coeff as i64);
            for (img, &e) in images.iter().zip(&t.exps) {
                if e > 0 {
                    term = &term * &img.pow(e as u64)?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

pub(crate) fn frobenius_exponent(p: u32, e: u32) -> Result<u32> {
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .map(|q| q as u32)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

fn assert_same(a: &Polynomial, b: &Polynomial) {
    assert!(
        a.ring.same(&b.ring),
        "polynomials from different rings: {} vs {}",
        a.ring,
        b.ring
    );
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let zero: Exponents = SmallVec::from_elem(0, self.ring.nvars());
        let neg_one = self.ring.neg(1);
        self.sub_mul_term(neg_one, &zero, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let zero: Exponents = SmallVec::from_elem(0, self.ring.nvars());
        self.sub_mul_term(1, &zero, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.neg(1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(rhs.terms[0].coeff, &rhs.terms[0].exps);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(self.terms[0].coeff, &self.terms[0].exps);
        }
        let ring = &self.ring;
        let mut acc: HashMap<Exponents, u32> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let e = mul_exps(&a.exps, &b.exps);
                let c = ring.mul(a.coeff, b.coeff);
                let slot = acc.entry(e).or_insert(0);
                *slot = ring.add(*slot, c);
            }
        }
        Polynomial::from_map(ring, acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_unit_monomial = t.exps.iter().all(|&e| e == 0);
            if t.coeff != 1 || is_unit_monomial {
                factors.push(t.coeff.to_string());
            }
            for (name, &e) in self.ring.var_names().iter().zip(&t.exps) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(3, &["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn arithmetic_cancels_in_char_p() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = &x + &y;
        let cube = s.pow(3).unwrap();
        // (x+y)^3 = x^3 + y^3 in characteristic 3
        let expected = &x.pow(3).unwrap() + &y.pow(3).unwrap();
        assert_eq!(cube, expected);
        assert_eq!(s.frobenius(1).unwrap(), expected);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let r = ring();
        let p = Polynomial::from_terms(
            &r,
            vec![
                (1, SmallVec::from_slice(&[0, 0])),
                (5, SmallVec::from_slice(&[1, 2])),
                (3, SmallVec::from_slice(&[1, 0])),
            ],
        );
        assert_eq!(p.to_string(), "2*x*y^2+1");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn map_and_restrict() {
        let r = ring();
        let big = PolyRing::new(3, &["t", "x", "y"], MonomialOrder::Grevlex).unwrap();
        let p = &Polynomial::var(&r, 0) * &Polynomial::var(&r, 1);
        let q = p.map_vars(&big, &[1, 2]);
        assert_eq!(q.to_string(), "x*y");
        assert_eq!(q.restrict_vars(&r, &[1, 2]).unwrap(), p);
        let t = Polynomial::var(&big, 0);
        assert!(t.restrict_vars(&r, &[1, 2]).is_none());
    }
}

//! Radical ideals presented by their minimal primes.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};

/// A radical ideal `p_1 ∩ ... ∩ p_t` given by pairwise incomparable prime
/// components. The empty list is the whole ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalDecomposition {
    ring: Ring,
    components: Vec<Ideal>,
}

impl RadicalDecomposition {
    /// Primality of the components is the caller's assertion; each one is
    /// probed for radicality and the list must be an antichain.
    pub fn new(ring: &Ring, components: Vec<Ideal>) -> Result<Self> {
        for c in &components {
            if !c.ring().same(ring) {
                return Err(Error::RingMismatch(format!("component {c} is not an ideal of {ring}")));
            }
            if c.is_unit() {
                return Err(Error::InvalidArgument("the unit ideal is not a prime component".into()));
            }
            if !c.is_radical()? {
                return Err(Error::InvalidArgument(format!("component {c} is not radical")));
            }
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                if a.contains_ideal(b)? || b.contains_ideal(a)? {
                    return Err(Error::InvalidArgument(format!("components {a} and {b} are comparable")));
                }
            }
        }
        let mut components = components;
        components.sort_by_key(|c| c.sort_key());
        Ok(RadicalDecomposition {
            ring: ring.clone(),
            components,
        })
    }

    /// Parses `(s); (t)`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let mut comps = Vec::new();
        let mut offset = 0;
        for piece in text.split(';') {
            if !piece.trim().is_empty() {
                comps.push(Ideal::parse(ring, piece).map_err(|e| e.at_line(1, offset))?);
            }
            offset += piece.len() + 1;
        }
        Self::new(ring, comps)
    }

    pub fn whole(ring: &Ring) -> Self {
        RadicalDecomposition {
            ring: ring.clone(),
            components: Vec::new(),
        }
    }

    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch("decompositions over different rings".into()))
        }
    }

    /// Minimal members of the union of the two component lists.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut pool: Vec<Ideal> = Vec::new();
        for c in self.components.iter().chain(&other.components) {
            if !pool.contains(c) {
                pool.push(c.clone());
            }
        }
        let mut minimal = Vec::new();
        for (i, c) in pool.iter().enumerate() {
            let mut redundant = false;
            for (j, d) in pool.iter().enumerate() {
                if i != j && c.contains_ideal(d)? {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                minimal.push(c.clone());
            }
        }
        minimal.sort_by_key(|c| c.sort_key());
        Ok(RadicalDecomposition {
            ring: self.ring.clone(),
            components: minimal,
        })
    }

    /// `(self : a)`: the components of `self` not containing `a`.
    pub fn colon(&self, a: &Self) -> Result<Self> {
        self.check(a)?;
        let ea = a.expand()?;
        let mut kept = Vec::new();
        for q in &self.components {
            if !q.contains_ideal(&ea)? {
                kept.push(q.clone());
            }
        }
        Ok(RadicalDecomposition {
            ring: self.ring.clone(),
            components: kept,
        })
    }

    pub fn expand(&self) -> Result<Ideal> {
        Ideal::intersect_all(&self.ring, &self.components)
    }
}

impl fmt::Display for RadicalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

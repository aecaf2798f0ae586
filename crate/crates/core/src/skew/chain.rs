use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};

/// A graded two-sided ideal `⊕ b_n x^n` of `R[x,f]`, given by the ascending
/// chain `b_0 ⊆ b_1 ⊆ ...`. Entries past the end repeat the last one, and
/// `b_n = b_{stable_from}` for every `n ≥ stable_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdealChain {
    entries: Vec<Ideal>,
    stable_from: usize,
    /// Stability from `stable_from` on is proven rather than observed.
    pub certified: bool,
}

impl GradedIdealChain {
    /// Builds a chain from listed entries; trailing repeats are folded into
    /// the stable tail.
    pub fn new(entries: Vec<Ideal>, certified: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("a chain needs at least one entry".into()));
        }
        let ring = entries[0].ring().clone();
        if entries.iter().any(|e| !e.ring().same(&ring)) {
            return Err(Error::RingMismatch("chain entries from different rings".into()));
        }
        let mut stable_from = entries.len() - 1;
        while stable_from > 0 && entries[stable_from - 1] == entries[stable_from] {
            stable_from -= 1;
        }
        let mut entries = entries;
        entries.truncate(stable_from + 1);
        Ok(GradedIdealChain {
            entries,
            stable_from,
            certified,
        })
    }

    /// `b R[x,f] = ⊕ b x^n`, constant and certified.
    pub fn principal(b: &Ideal) -> Self {
        GradedIdealChain {
            entries: vec![b.clone()],
            stable_from: 0,
            certified: true,
        }
    }

    pub fn ring(&self) -> &Ring {
        self.entries[0].ring()
    }

    pub fn entries(&self) -> &[Ideal] {
        &self.entries
    }

    pub fn stable_from(&self) -> usize {
        self.stable_from
    }

    pub fn entry(&self, n: usize) -> &Ideal {
        &self.entries[n.min(self.stable_from)]
    }

    /// `lim b_n`.
    pub fn limit(&self) -> &Ideal {
        &self.entries[self.stable_from]
    }

    pub fn is_constant(&self) -> bool {
        self.stable_from == 0
    }

    /// Ascending entries are exactly the graded two-sided ideals.
    pub fn validate(&self) -> Result<bool> {
        for w in self.entries.windows(2) {
            if !w[1].contains_ideal(&w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Entrywise intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let len = self.entries.len().max(other.entries.len());
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            out.push(self.entry(n).intersect(other.entry(n))?);
        }
        Self::new(out, self.certified && other.certified)
    }

    /// Parses `[x^2]; [x]; stable`. The final `stable` marker asserts the
    /// tail, so the chain is certified; without it the chain is not.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut certified = false;
        let mut offset = 0;
        for piece in text.split(';') {
            let t = piece.trim();
            if t == "stable" {
                certified = true;
            } else if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let lead = piece.len() - piece.trim_start().len() + 1;
                entries.push(Ideal::parse(ring, inner).map_err(|e| e.at_line(1, offset + lead))?);
            } else {
                return Err(Error::parse(
                    offset + 1,
                    format!("expected '[ideal]' or 'stable', got '{t}'"),
                ));
            }
            offset += piece.len() + 1;
        }
        Self::new(entries, certified)
    }
}

impl fmt::Display for GradedIdealChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let s = e.to_string();
                format!("[{}]", &s[1..s.len() - 1])
            })
            .collect();
        write!(f, "{}", parts.join("; "))?;
        if self.certified {
            write!(f, "; stable")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::{MonomialOrder, PolyRing};

    fn ring() -> Ring {
        QuotientRing::polynomial(&PolyRing::new(2, &["x", "s", "t"], MonomialOrder::Grevlex).unwrap())
    }

    #[test]
    fn validation() {
        let r = ring();
        let b = Ideal::parse(&r, "s*t").unwrap();
        let c = GradedIdealChain::new(vec![b.clone(), b.clone(), b.clone()], true).unwrap();
        assert!(c.validate().unwrap());
        assert!(c.is_constant());
        let up = GradedIdealChain::parse(&r, "[x^2]; [x]; stable").unwrap();
        assert!(up.validate().unwrap());
        assert_eq!(up.stable_from(), 1);
        assert_eq!(up.limit(), &Ideal::parse(&r, "x").unwrap());
        let down = GradedIdealChain::parse(&r, "[x]; [x^2]").unwrap();
        assert!(!down.validate().unwrap());
        let z = GradedIdealChain::principal(&Ideal::zero(&r));
        assert!(z.validate().unwrap() && z.limit().is_zero());
    }

    #[test]
    fn principal_chains() {
        let r = ring();
        let u = GradedIdealChain::principal(&Ideal::unit(&r));
        assert!(u.certified && u.limit().is_unit());
        assert_eq!(u.to_string(), "[1]; stable");
    }

    #[test]
    fn intersections_stay_ascending() {
        let r = ring();
        let a = GradedIdealChain::parse(&r, "[x^2]; [x]; stable").unwrap();
        let b = GradedIdealChain::parse(&r, "[s*t]; [s]; [s]; stable").unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.validate().unwrap());
        assert_eq!(c.limit(), &a.limit().intersect(b.limit()).unwrap());
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(
            GradedIdealChain::parse(&r, "[x]; junk"),
            Err(Error::Parse { column: 5, .. })
        ));
    }
}

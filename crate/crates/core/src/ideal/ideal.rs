use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::ring::{dim_from_gb, QuotientRing, Ring};
use crate::error::{Error, Result};
use crate::poly::{divide_exact, frobenius_preimage, normal_form, reduced_groebner, Polynomial};

/// An ideal of a `QuotientRing`, stored through its lift to the ambient
/// polynomial ring: `gb` is the reduced Gröbner basis of `gens + I`.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: Arc<Vec<Polynomial>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.gb == other.gb
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gb.hash(state);
    }
}

/// The ascending chain `J_0 ⊆ ... ⊆ J_E` of a bounded Frobenius closure.
#[derive(Clone, Debug)]
pub struct FrobeniusClosure {
    pub chain: Vec<Ideal>,
    /// `J_{E-1} = J_E`; a heuristic, not a proof of stability.
    pub stabilized: bool,
}

impl FrobeniusClosure {
    pub fn closure(&self) -> &Ideal {
        self.chain.last().expect("closure chain is never empty")
    }

    /// Least `e` with `r ∈ J_e`.
    pub fn witness_exponent(&self, r: &Polynomial) -> Result<Option<usize>> {
        for (e, j) in self.chain.iter().enumerate() {
            if j.contains(r)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: &[Polynomial]) -> Result<Ideal> {
        let mut reduced = Vec::with_capacity(gens.len());
        for g in gens {
            let r = ring.reduce(g)?;
            if !r.is_zero() && !reduced.contains(&r) {
                reduced.push(r);
            }
        }
        let mut all = reduced.clone();
        all.extend(ring.defining().iter().cloned());
        let gb = reduced_groebner(ring.poly_ring(), &all)?;
        Ok(Ideal {
            ring: ring.clone(),
            gens: reduced,
            gb: Arc::new(gb),
        })
    }

    /// Wraps a reduced Gröbner basis (in the ambient order) of an ideal
    /// already containing the defining ideal.
    pub(crate) fn from_gb(ring: &Ring, gb: Vec<Polynomial>) -> Ideal {
        let gens = gb
            .iter()
            .filter(|g| !normal_form(g, ring.defining()).map(|r| r.is_zero()).unwrap_or(false))
            .cloned()
            .collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(gb),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Ideal> {
        let text = text.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .filter(|t| balanced(t))
            .unwrap_or(text);
        let offset = if inner.len() < text.len() { 1 } else { 0 };
        let gens = ring.parse_list(inner).map_err(|e| e.at_line(1, offset))?;
        Ideal::new(ring, &gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: Arc::new(ring.defining().to_vec()),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        let one = ring.one();
        Ideal {
            ring: ring.clone(),
            gens: vec![one.clone()],
            gb: Arc::new(vec![one]),
        }
    }

    pub fn principal(ring: &Ring, g: &Polynomial) -> Result<Ideal> {
        Ideal::new(ring, std::slice::from_ref(g))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Reduced Gröbner basis of the lifted ideal.
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    /// The generators this ideal was built from, reduced modulo the
    /// defining ideal.
    pub fn input_generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Canonical generators: the Gröbner basis elements not already in the
    /// defining ideal, by increasing degree and then in variable order.
    pub fn generators(&self) -> Vec<Polynomial> {
        let mut gens: Vec<Polynomial> = self
            .gb
            .iter()
            .filter(|g| {
                !normal_form(g, self.ring.defining())
                    .map(|r| r.is_zero())
                    .unwrap_or(false)
            })
            .cloned()
            .collect();
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lm().cmp(a.lm())));
        gens
    }

    pub fn is_unit(&self) -> bool {
        self.gb.first().is_some_and(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.gb.as_slice() == self.ring.defining()
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "ideals of {} and {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.ring.check(f)?;
        Ok(normal_form(f, &self.gb)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in other.gb.iter() {
            if !normal_form(g, &self.gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut all: Vec<Polynomial> = self.gb.to_vec();
        all.extend(other.gb.iter().cloned());
        let gb = reduced_groebner(self.ring.poly_ring(), &all)?;
        Ok(Ideal::from_gb(&self.ring, gb))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut prods = Vec::new();
        for a in self.generators() {
            for b in other.generators() {
                prods.push(&a * &b);
            }
        }
        Ideal::new(&self.ring, &prods)
    }

    /// `a ∩ b` by eliminating `t` from `t·a + (1-t)·b`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.contains_ideal(other)? {
            return Ok(other.clone());
        }
        if other.contains_ideal(self)? {
            return Ok(self.clone());
        }
        let gb = intersect_lifts(&self.ring, &self.gb, &other.gb)?;
        Ok(Ideal::from_gb(&self.ring, gb))
    }

    /// Intersection of a nonempty family; the empty family gives the unit ideal.
    pub fn intersect_all<'a>(ring: &Ring, ideals: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal> {
        let mut acc = Ideal::unit(ring);
        for i in ideals {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// `(self : g) = { r : r g ∈ self }`.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        let g = self.ring.reduce(g)?;
        if g.is_zero() {
            return Err(Error::InvalidArgument(
                "colon by the zero ideal (it would be the whole ring)".into(),
            ));
        }
        if self.contains(&g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let ambient = self.ring.poly_ring();
        let principal = vec![g.monic()];
        let meet = intersect_lifts(&self.ring, &self.gb, &principal)?;
        let mut quotients = Vec::with_capacity(meet.len());
        for h in &meet {
            let q = divide_exact(h, &g)?.ok_or_else(|| {
                Error::InvalidArgument("intersection with a principal ideal was not divisible".into())
            })?;
            quotients.push(q);
        }
        let gb = reduced_groebner(ambient, &quotients)?;
        Ok(Ideal::from_gb(&self.ring, gb))
    }

    /// `(self : other) = ∩_g (self : g)` over the generators of `other`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let gens = other.generators();
        if gens.is_empty() {
            return Err(Error::InvalidArgument(
                "colon by the zero ideal (it would be the whole ring)".into(),
            ));
        }
        let mut acc = Ideal::unit(&self.ring);
        for g in &gens {
            acc = acc.intersect(&self.colon_element(g)?)?;
        }
        Ok(acc)
    }

    /// `r ∈ √self`, by asking whether `self + (1 - t r)` is the unit ideal.
    pub fn radical_contains(&self, r: &Polynomial) -> Result<bool> {
        self.ring.check(r)?;
        if self.is_unit() || self.contains(r)? {
            return Ok(true);
        }
        let ambient = self.ring.poly_ring();
        let big = ambient.with_front_block(1, "t");
        let shift: Vec<usize> = (1..=ambient.nvars()).collect();
        let mut system: Vec<Polynomial> = self.gb.iter().map(|g| g.map_vars(&big, &shift)).collect();
        let t = Polynomial::var(&big, 0);
        let tr = &t * &r.map_vars(&big, &shift);
        system.push(&Polynomial::one(&big) - &tr);
        let gb = reduced_groebner(&big, &system)?;
        Ok(gb.first().is_some_and(|g| g.is_constant()))
    }

    /// Krull dimension of `R/self`; -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        dim_from_gb(self.ring.poly_ring().nvars(), &self.gb)
    }

    /// `ht(self) ≥ 1`, read as a drop in dimension. Needs the ring's
    /// equidimensional flag.
    pub fn has_positive_height(&self) -> Result<bool> {
        if !self.ring.is_equidimensional() {
            return Err(Error::Refused(format!(
                "height test needs an equidimensional ring; {} is not flagged",
                self.ring
            )));
        }
        Ok(self.is_unit() || self.dimension() < self.ring.dimension())
    }

    /// `self^[p^e]`, generated by the `p^e`-th powers of the generators.
    pub fn frobenius_power(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Ok(self.clone());
        }
        if self.is_unit() {
            return Ok(self.clone());
        }
        let powers: Vec<Polynomial> = self.gens.iter().map(|g| g.frobenius(e)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, &powers)
    }

    /// `{ r : r^(p^e) ∈ self }`.
    pub fn frobenius_preimage(&self, e: u32) -> Result<Ideal> {
        if self.is_unit() {
            if e == 0 {
                return Err(Error::InvalidArgument(
                    "Frobenius preimage needs exponent e >= 1".into(),
                ));
            }
            return Ok(self.clone());
        }
        let gb = frobenius_preimage(self.ring.poly_ring(), &self.gb, e)?;
        Ok(Ideal::from_gb(&self.ring, gb))
    }

    /// In characteristic p an ideal is radical exactly when it equals its
    /// first Frobenius preimage.
    pub fn is_radical(&self) -> Result<bool> {
        Ok(self.frobenius_preimage(1)? == *self)
    }

    /// Bounded Frobenius closure: `J_e = f^{-e}(self^[p^e])` for `e = 0..=bound`.
    pub fn frobenius_closure(&self, bound: u32) -> Result<FrobeniusClosure> {
        if bound == 0 {
            return Err(Error::InvalidArgument("Frobenius closure bound must be >= 1".into()));
        }
        let mut chain = vec![self.clone()];
        for e in 1..=bound {
            let j = self.frobenius_power(e)?.frobenius_preimage(e)?;
            let prev = chain.last().unwrap();
            if !j.contains_ideal(prev)? {
                return Err(Error::InvalidArgument(format!(
                    "Frobenius closure chain failed to ascend at e = {e}"
                )));
            }
            chain.push(j);
        }
        let n = chain.len();
        let stabilized = chain[n - 1] == chain[n - 2];
        Ok(FrobeniusClosure { chain, stabilized })
    }

    /// Canonical sort key: the printed form.
    pub fn sort_key(&self) -> String {
        self.to_string()
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Reduced basis of `A ∩ B` for ideals of the ambient ring given by bases.
fn intersect_lifts(ring: &QuotientRing, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ambient = ring.poly_ring();
    let big = ambient.with_front_block(1, "t");
    let shift: Vec<usize> = (1..=ambient.nvars()).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut system = Vec::with_capacity(a.len() + b.len());
    for g in a {
        system.push(&t * &g.map_vars(&big, &shift));
    }
    for g in b {
        system.push(&one_minus_t * &g.map_vars(&big, &shift));
    }
    let gb = reduced_groebner(&big, &system)?;
    let kept: Vec<Polynomial> = gb.iter().filter_map(|g| g.restrict_vars(ambient, &shift)).collect();
    reduced_groebner(ambient, &kept)
}

impl QuotientRing {
    /// `c ∈ R°`: `c` avoids every minimal prime, tested as a dimension drop.
    pub fn in_r_circ(self: &Arc<Self>, c: &Polynomial) -> Result<bool> {
        if !self.is_equidimensional() {
            return Err(Error::Refused(format!(
                "R° membership needs an equidimensional ring; {self} is not flagged"
            )));
        }
        let ideal = Ideal::principal(self, c)?;
        Ok(ideal.dimension() < self.dimension())
    }

    /// Checks that `seq` is a regular sequence of positive-degree elements
    /// generating a proper ideal. A passing sequence is recorded on the ring.
    pub fn is_regular_sequence(self: &Arc<Self>, seq: &[Polynomial]) -> Result<bool> {
        let mut prefix: Vec<Polynomial> = Vec::new();
        for a in seq {
            let a = self.reduce(a)?;
            if a.is_zero() || a.constant_coeff() != 0 {
                return Ok(false);
            }
            let prev = Ideal::new(self, &prefix)?;
            if prev.contains(&a)? {
                return Ok(false);
            }
            if prev.colon_element(&a)? != prev {
                return Ok(false);
            }
            prefix.push(a);
        }
        if Ideal::new(self, &prefix)?.is_unit() {
            return Ok(false);
        }
        self.record_regular_sequence(&prefix);
        Ok(true)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        let gens = self.generators();
        if gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

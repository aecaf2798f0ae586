use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};
use crate::modules::{orbit_annihilators, OrbitEnd, SkewModule};
use crate::poly::Polynomial;
use crate::skew::GradedIdealChain;

/// A system of parameters `a_1, ..., a_d` of `R` with `a = a_1 ⋯ a_d`.
#[derive(Clone, Debug)]
pub struct SopData {
    ring: Ring,
    params: Vec<Polynomial>,
    product: Polynomial,
    verified: bool,
}

impl SopData {
    /// Verified when `d = dim R`, the parameters form a regular sequence and
    /// `R/(a_1, ..., a_d)` is zero-dimensional. Verification also flags the
    /// ring as equidimensional, which Cohen–Macaulay rings are.
    pub fn new(ring: &Ring, params: &[Polynomial]) -> Result<Self> {
        let params: Vec<Polynomial> = params.iter().map(|a| ring.reduce(a)).collect::<Result<_>>()?;
        let mut product = ring.one();
        for a in &params {
            product = &product * a;
        }
        let product = ring.reduce(&product)?;
        let verified = params.len() as i64 == ring.dimension()
            && !params.is_empty()
            && Ideal::new(ring, &params)?.dimension() == 0
            && ring.is_regular_sequence(&params)?;
        if verified {
            ring.assume_equidimensional();
        }
        Ok(SopData {
            ring: ring.clone(),
            params,
            product,
            verified,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn params(&self) -> &[Polynomial] {
        &self.params
    }

    pub fn product(&self) -> &Polynomial {
        &self.product
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Refused(
                "the parameters did not pass the regular-sequence check, so the Čech zero test is not valid".into(),
            ))
        }
    }

    /// `(a_1^j, ..., a_d^j)`; the whole ring for `j = 0`.
    pub fn power_ideal(&self, j: u64) -> Result<Ideal> {
        if j == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let gens: Vec<Polynomial> = self.params.iter().map(|a| a.pow(j)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, &gens)
    }

    /// `(a_1, ..., a_d)`.
    pub fn ideal(&self) -> Result<Ideal> {
        self.power_ideal(1)
    }

    /// `[r / a^j]`, with zero stored as `[0 / a^0]`.
    pub fn class(&self, r: &Polynomial, j: u64) -> Result<CechClass> {
        let c = CechClass {
            r: self.ring.reduce(r)?,
            j,
        };
        if self.verified && self.cech_is_zero(&c)? {
            return Ok(CechClass::zero(&self.ring));
        }
        Ok(c)
    }

    pub fn cech_is_zero(&self, c: &CechClass) -> Result<bool> {
        self.require()?;
        self.power_ideal(c.j)?.contains(&c.r)
    }

    /// Compares at the common exponent `k = max(j1, j2)`.
    pub fn cech_equal(&self, c1: &CechClass, c2: &CechClass) -> Result<bool> {
        self.require()?;
        let k = c1.j.max(c2.j);
        let lift = |c: &CechClass| -> Result<Polynomial> { Ok(&c.r * &self.product.pow(k - c.j)?) };
        let diff = &lift(c1)? - &lift(c2)?;
        self.power_ideal(k)?.contains(&diff)
    }

    /// `x [r / a^j] = [r^p / a^{jp}]`.
    pub fn cech_x(&self, c: &CechClass) -> Result<CechClass> {
        if c.r.is_zero() {
            return Ok(CechClass::zero(&self.ring));
        }
        let p = self.ring.characteristic() as u64;
        let j =
            c.j.checked_mul(p)
                .ok_or_else(|| Error::Overflow("Čech exponent".into()))?;
        Ok(CechClass {
            r: self.ring.reduce(&c.r.frobenius(1)?)?,
            j,
        })
    }

    /// Least `e ≤ bound` with `x^e c = 0`, i.e. with `r` in the `e`-th step of
    /// the Frobenius closure of `(a_1^j, ..., a_d^j)`.
    pub fn cech_torsion_exponent(&self, c: &CechClass, bound: u32) -> Result<Option<usize>> {
        self.require()?;
        if self.cech_is_zero(c)? {
            return Ok(Some(0));
        }
        if bound == 0 {
            return Ok(None);
        }
        self.power_ideal(c.j)?.frobenius_closure(bound)?.witness_exponent(&c.r)
    }

    pub fn cech_is_torsion(&self, c: &CechClass, bound: u32) -> Result<bool> {
        Ok(self.cech_torsion_exponent(c, bound)?.is_some())
    }

    /// `grann R[x,f][r/a^j]` walked for at most `bound + 1` orbit steps.
    pub fn cech_grann(&self, c: &CechClass, bound: usize) -> Result<GradedIdealChain> {
        self.require()?;
        crate::modules::grann_element(&CechModule::new(self), c, bound)
    }

    /// The chain together with an estimate of its limit.
    pub fn cech_limit(&self, c: &CechClass, bound: usize) -> Result<LimitEstimate> {
        self.require()?;
        if bound == 0 {
            return Err(Error::InvalidArgument("chain bound must be >= 1".into()));
        }
        let module = CechModule::new(self);
        let orbit = orbit_annihilators(&module, c, bound)?;
        let chain = orbit.chain(&self.ring)?;
        if orbit.end != OrbitEnd::Truncated {
            return Ok(LimitEstimate {
                limit: chain.limit().clone(),
                chain,
                stabilized: true,
            });
        }
        let anns = &orbit.anns;
        let (prev, last) = (&anns[bound - 1], &anns[bound]);
        if prev == last {
            return Ok(LimitEstimate {
                limit: last.clone(),
                chain,
                stabilized: true,
            });
        }
        // keep what survives both colons in degrees the earlier one already uses
        let cap = prev.gb().iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let both = prev.intersect(last)?;
        let kept: Vec<Polynomial> = both
            .gb()
            .iter()
            .filter(|g| g.degree().is_some_and(|d| d <= cap))
            .cloned()
            .collect();
        Ok(LimitEstimate {
            limit: Ideal::new(&self.ring, &kept)?,
            chain,
            stabilized: false,
        })
    }
}

/// `[r / a^j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechClass {
    pub r: Polynomial,
    pub j: u64,
}

impl CechClass {
    pub fn zero(ring: &Ring) -> Self {
        CechClass { r: ring.zero(), j: 0 }
    }
}

impl fmt::Display for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / a^{}]", self.r, self.j)
    }
}

/// A chain of colon ideals with its limit, exact when `chain.certified`.
#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub chain: GradedIdealChain,
    pub limit: Ideal,
    /// The chain is certified or its last two colons agree.
    pub stabilized: bool,
}

/// `H^d_m(R)` as a left `R[x,f]`-module in the Čech model.
#[derive(Clone, Debug)]
pub struct CechModule<'a> {
    sop: &'a SopData,
}

impl<'a> CechModule<'a> {
    pub fn new(sop: &'a SopData) -> Self {
        CechModule { sop }
    }
}

impl SkewModule for CechModule<'_> {
    type Elem = CechClass;
    type Sub = ();

    fn ring(&self) -> &Ring {
        &self.sop.ring
    }

    fn zero(&self) -> CechClass {
        CechClass::zero(&self.sop.ring)
    }

    fn is_zero(&self, h: &CechClass) -> Result<bool> {
        self.sop.cech_is_zero(h)
    }

    fn same_elem(&self, a: &CechClass, b: &CechClass) -> Result<bool> {
        self.sop.cech_equal(a, b)
    }

    fn x_action(&self, h: &CechClass) -> Result<CechClass> {
        self.sop.cech_x(h)
    }

    /// `((a_1^j, ..., a_d^j) : r)`.
    fn ann(&self, h: &CechClass) -> Result<Ideal> {
        if self.is_zero(h)? {
            return Ok(Ideal::unit(&self.sop.ring));
        }
        self.sop.power_ideal(h.j)?.colon_element(&h.r)
    }

    fn show(&self, h: &CechClass) -> String {
        h.to_string()
    }

    fn is_x_torsion_free(&self, _bound: usize) -> Result<bool> {
        Err(crate::modules::refused("the x-torsion test", "local cohomology"))
    }

    fn samples(&self, _limit: usize) -> Result<(Vec<CechClass>, bool)> {
        Ok((vec![self.sop.class(&self.sop.ring.one(), 1)?], false))
    }

    fn delta(&self, _b: &Ideal) -> Result<()> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn ann_of_chain(&self, _chain: &GradedIdealChain) -> Result<()> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn grann_sub(&self, _n: &()) -> Result<GradedIdealChain> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn sub_contains(&self, _n: &(), _h: &CechClass) -> Result<bool> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn sub_leq(&self, _a: &(), _b: &()) -> Result<bool> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn sub_sum(&self, _a: &(), _b: &()) -> Result<()> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn sub_is_zero(&self, _n: &()) -> Result<bool> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn sub_samples(&self, _n: &(), _limit: usize) -> Result<Vec<CechClass>> {
        Err(crate::modules::refused("the submodule layer", "local cohomology"))
    }

    fn show_sub(&self, _n: &()) -> String {
        String::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    pub(crate) fn regular() -> SopData {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap());
        let params = r.parse_list("x, y").unwrap();
        SopData::new(&r, &params).unwrap()
    }

    pub(crate) fn nodal() -> SopData {
        let s = PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap();
        let r = QuotientRing::new(&s, &[parse_polynomial(&s, "s*t").unwrap()]).unwrap();
        let params = r.parse_list("s+t").unwrap();
        SopData::new(&r, &params).unwrap()
    }

    fn cusp() -> SopData {
        let s = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let r = QuotientRing::new(&s, &[parse_polynomial(&s, "z^2 - x^2*y").unwrap()]).unwrap();
        let params = r.parse_list("x, y").unwrap();
        SopData::new(&r, &params).unwrap()
    }

    fn cls(s: &SopData, r: &str, j: u64) -> CechClass {
        CechClass {
            r: s.ring().parse(r).unwrap(),
            j,
        }
    }

    #[test]
    fn verification() {
        assert!(regular().is_verified());
        let n = nodal();
        assert!(n.is_verified());
        assert!(n.ring().is_equidimensional());
        let r = regular();
        let bad = SopData::new(r.ring(), &r.ring().parse_list("x").unwrap()).unwrap();
        assert!(!bad.is_verified());
        assert!(matches!(bad.cech_is_zero(&cls(&bad, "1", 1)), Err(Error::Refused(_))));
    }

    #[test]
    fn zero_tests() {
        let s = regular();
        assert!(s.cech_is_zero(&cls(&s, "x", 1)).unwrap());
        assert!(!s.cech_is_zero(&cls(&s, "1", 1)).unwrap());
        assert!(s.cech_is_zero(&cls(&s, "x+y+1", 0)).unwrap());
        assert_eq!(
            s.class(&s.ring().parse("x").unwrap(), 1).unwrap(),
            CechClass::zero(s.ring())
        );
    }

    #[test]
    fn equality() {
        let s = regular();
        let c = cls(&s, "1", 1);
        assert!(s.cech_equal(&c, &c).unwrap());
        assert!(s.cech_equal(&cls(&s, "x^2*y", 2), &cls(&s, "x", 1)).unwrap());
        assert!(!s.cech_equal(&c, &cls(&s, "0", 1)).unwrap());
    }

    #[test]
    fn frobenius_action() {
        let s = regular();
        assert_eq!(s.cech_x(&cls(&s, "1", 1)).unwrap(), cls(&s, "1", 2));
        assert_eq!(s.cech_x(&cls(&s, "0", 3)).unwrap(), CechClass::zero(s.ring()));
    }

    #[test]
    fn torsion() {
        let s = regular();
        for r in ["1", "1+x", "1+x*y"] {
            assert!(!s.cech_is_torsion(&cls(&s, r, 1), 3).unwrap(), "{r}");
        }
        let c = cusp();
        assert!(c.is_verified());
        assert_eq!(c.cech_torsion_exponent(&cls(&c, "z", 1), 1).unwrap(), Some(1));
        assert!(c.cech_is_torsion(&cls(&c, "0", 1), 1).unwrap());
    }

    #[test]
    fn chains() {
        let s = regular();
        let est = s.cech_limit(&cls(&s, "1", 1), 4).unwrap();
        assert!(est.chain.validate().unwrap());
        assert!(!est.stabilized);
        assert!(est.limit.is_zero());
        let n = nodal();
        let c = n.cech_grann(&cls(&n, "s", 1), 4).unwrap();
        assert!(c.certified && c.is_constant());
        assert_eq!(c.limit(), &Ideal::parse(n.ring(), "s, t").unwrap());
        let z = n.cech_grann(&CechClass::zero(n.ring()), 4).unwrap();
        assert!(z.limit().is_unit());
    }

    #[test]
    fn nodal_colons_match_direct_computation() {
        // oracle: the colons ((s+t)^q : s^q) built by hand
        let n = nodal();
        let r = n.ring();
        for m in 0..4u32 {
            let q = 2u64.pow(m);
            let direct = Ideal::new(r, &[r.parse("s+t").unwrap().pow(q).unwrap()])
                .unwrap()
                .colon_element(&r.parse("s").unwrap().pow(q).unwrap())
                .unwrap();
            assert_eq!(direct, Ideal::parse(r, "s, t").unwrap(), "q = {q}");
        }
    }
}

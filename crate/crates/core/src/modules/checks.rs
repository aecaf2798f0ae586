use super::{delta_inverse, grann_element, special_ideal_lattice, LatticeOptions, LinearModule, SkewModule};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Subspace;
use crate::radical::RadicalDecomposition;
use crate::skew::GradedIdealChain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: &str) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ga4Report {
    pub a: Ideal,
    pub c: Ideal,
    pub l: String,
    pub n: String,
    pub checks: Vec<Check>,
}

impl Ga4Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Splits `N = Δ(b)` along a partition `U | V` of the prime components of
/// `b`: with `a = ∩_U p_i` and `c = ∩_V p_i`, checks `0 ⊂ Δ(a) ⊂ N`, that
/// `Δ(a)` has graded annihilator `a`, and that the quotient side ideal is `c`.
/// Failed hypotheses show up as failed checks.
pub fn split_ga4<M: SkewModule + ?Sized>(m: &M, b: &RadicalDecomposition, u: &[usize]) -> Result<Ga4Report> {
    let comps = b.components();
    let t = comps.len();
    if t <= 1 {
        return Err(Error::Refused(format!(
            "splitting needs at least two prime components, {b} has {t}"
        )));
    }
    if u.is_empty() || u.len() >= t || u.iter().any(|&i| i >= t) {
        return Err(Error::InvalidArgument(format!(
            "U must be a nonempty proper subset of 0..{t}"
        )));
    }
    let ring = b.ring();
    let (mut ua, mut vc) = (Vec::new(), Vec::new());
    for (i, p) in comps.iter().enumerate() {
        if u.contains(&i) {
            ua.push(p.clone());
        } else {
            vc.push(p.clone());
        }
    }
    let a_rd = RadicalDecomposition::new(ring, ua)?;
    let a = a_rd.expand()?;
    let c = RadicalDecomposition::new(ring, vc)?.expand()?;
    let whole = b.expand()?;
    let n = m.delta(&whole)?;
    let l = m.delta(&a)?;
    let mut checks = Vec::new();
    checks.push(Check::new(
        "N nonzero",
        !m.sub_is_zero(&n)?,
        "Δ(b) is a nonzero submodule",
    ));
    let strict = !m.sub_is_zero(&l)? && m.sub_leq(&l, &n)? && !m.sub_leq(&n, &l)?;
    checks.push(Check::new(
        "0 ⊂ L ⊂ N",
        strict,
        "L = Δ(a) sits strictly between 0 and N",
    ));
    checks.push(Check::new(
        "grann(L) = a",
        delta_inverse(m, &l)? == a,
        "the graded annihilator of L has limit a",
    ));
    let via_components = b.colon(&a_rd)?.expand()?;
    let via_colon = whole.colon(&a)?;
    checks.push(Check::new(
        "quotient ideal",
        via_components == c && via_colon == c,
        "(b : a) = c, from the components and from the ideal colon",
    ));
    Ok(Ga4Report {
        a,
        c,
        l: m.show_sub(&l),
        n: m.show_sub(&n),
        checks,
    })
}

#[derive(Clone, Debug)]
pub struct Ga15Report {
    pub hsl: usize,
    pub b: Ideal,
    pub checked: usize,
    pub counterexamples: Vec<String>,
    pub lattice_checks: Vec<Check>,
}

impl Ga15Report {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.lattice_checks.iter().all(|c| c.passed)
    }
}

/// For every element `h` of a finite module, compares "some `c ∈ R°` kills
/// `x^n h` for `n ≫ 0`" with "`x^{m0} h` is killed by `b^[p^{m0}] R[x,f]`",
/// where `m0` is the HSL number and `b` the smallest positive-height special
/// ideal of `H/Γ_x`.
pub fn ga15_equivalence_check(h: &LinearModule, opts: &LatticeOptions) -> Result<Ga15Report> {
    let m0 = h.hsl_number();
    let g = h.quotient(&h.gamma_x());
    let lattice = special_ideal_lattice(&g, None, opts)?;
    let b = lattice
        .smallest_positive_height
        .clone()
        .ok_or_else(|| Error::Refused("height tests need an equidimensional ring".into()))?;
    let target = h.delta(&b.frobenius_power(m0 as u32)?)?;
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for v in h.all_elements() {
        let limit = grann_element(h, &v, 0)?.limit().clone();
        let eventually = limit.has_positive_height()?;
        let mut shifted = v.clone();
        for _ in 0..m0 {
            shifted = h.apply_x(&shifted);
        }
        let annihilated = target.contains(&shifted);
        if eventually != annihilated {
            counterexamples.push(h.show(&v));
        }
        checked += 1;
    }
    Ok(Ga15Report {
        hsl: m0,
        b,
        checked,
        counterexamples,
        lattice_checks: lattice.checks,
    })
}

fn chain_leq(a: &GradedIdealChain, b: &GradedIdealChain) -> Result<bool> {
    let len = a.stable_from().max(b.stable_from()) + 1;
    for n in 0..len {
        if !b.entry(n).contains_ideal(a.entry(n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Galois-connection properties between graded two-sided ideals and
/// submodules, run exhaustively on a finite module: monotonicity of both
/// maps, `B ⊆ grann(ann B)`, `N ⊆ ann(grann N)` and idempotence of the
/// round trips. When the module is x-torsion-free, every special submodule
/// `N` must also leave `H/N` x-torsion-free.
pub fn galois_checks(h: &LinearModule) -> Result<Vec<Check>> {
    let mut subs: Vec<Subspace> = vec![Subspace::zero(h.characteristic(), h.dim()), h.whole()];
    for v in h.all_elements() {
        let s = h.generated(&[v]);
        if !subs.contains(&s) {
            subs.push(s);
        }
    }
    let granns: Vec<GradedIdealChain> = subs.iter().map(|n| h.grann_sub(n)).collect::<Result<_>>()?;
    let mut chains: Vec<GradedIdealChain> = granns.clone();
    for v in h.all_elements() {
        let c = GradedIdealChain::principal(&h.ann(&v)?);
        if !chains.contains(&c) {
            chains.push(c);
        }
    }
    let anns: Vec<Subspace> = chains.iter().map(|c| h.ann_of_chain(c)).collect::<Result<_>>()?;

    let mut ann_monotone = true;
    for (i, a) in chains.iter().enumerate() {
        for (j, b) in chains.iter().enumerate() {
            if chain_leq(a, b)? && !anns[j].is_subspace_of(&anns[i]) {
                ann_monotone = false;
            }
        }
    }
    let mut grann_monotone = true;
    for (i, a) in subs.iter().enumerate() {
        for (j, b) in subs.iter().enumerate() {
            if a.is_subspace_of(b) && !chain_leq(&granns[j], &granns[i])? {
                grann_monotone = false;
            }
        }
    }
    let mut chain_inside = true;
    let mut ann_idempotent = true;
    for (c, n) in chains.iter().zip(&anns) {
        let back = h.grann_sub(n)?;
        chain_inside &= chain_leq(c, &back)?;
        ann_idempotent &= h.ann_of_chain(&back)? == *n;
    }
    let mut sub_inside = true;
    let mut grann_idempotent = true;
    for (n, g) in subs.iter().zip(&granns) {
        let back = h.ann_of_chain(g)?;
        sub_inside &= n.is_subspace_of(&back);
        grann_idempotent &= h.grann_sub(&back)? == *g;
    }
    let mut checks = vec![
        Check::new("ann reverses order", ann_monotone, "B ⊆ B' gives ann(B') ⊆ ann(B)"),
        Check::new(
            "grann reverses order",
            grann_monotone,
            "N ⊆ N' gives grann(N') ⊆ grann(N)",
        ),
        Check::new("B ⊆ grann(ann B)", chain_inside, "on every tested chain"),
        Check::new("N ⊆ ann(grann N)", sub_inside, "on every cyclic submodule"),
        Check::new(
            "round trips",
            ann_idempotent && grann_idempotent,
            "ann(grann(ann B)) = ann B and grann(ann(grann N)) = grann N",
        ),
    ];
    if h.is_x_torsion_free(0)? {
        let mut quotients = true;
        for n in &anns {
            quotients &= h.quotient(n).is_x_torsion_free(0)?;
        }
        checks.push(Check::new(
            "quotients torsion-free",
            quotients,
            "H/N has no x-torsion for every special submodule N",
        ));
    }
    Ok(checks)
}

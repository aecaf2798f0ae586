use super::{delta_inverse, grann_element, Check, SkewModule};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

#[derive(Clone, Debug)]
pub struct LatticeOptions {
    /// Orbit bound for graded annihilators of elements.
    pub bound: usize,
    /// Largest module that is enumerated element by element.
    pub sample_limit: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            bound: 4,
            sample_limit: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEntry {
    pub ideal: Ideal,
    /// Every graded annihilator that produced this ideal had a proven tail.
    pub certified: bool,
    pub prime: bool,
    /// `Δ(ideal)`, printed by the backend; `None` when it cannot be formed.
    pub submodule: Option<String>,
}

/// The computed `G`-special ideals and what was checked about them.
#[derive(Clone, Debug)]
pub struct SpecialIdealLattice {
    pub entries: Vec<LatticeEntry>,
    /// Every element of the module was used, not just a generating sample.
    pub complete: bool,
    pub maximal_primes: Vec<Ideal>,
    /// `None` when heights cannot be tested on this ring.
    pub smallest_positive_height: Option<Ideal>,
    pub checks: Vec<Check>,
}

impl SpecialIdealLattice {
    pub fn ideals(&self) -> Vec<&Ideal> {
        self.entries.iter().map(|e| &e.ideal).collect()
    }

    pub fn primes(&self) -> Vec<&Ideal> {
        self.entries.iter().filter(|e| e.prime).map(|e| &e.ideal).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn insert_sorted(list: &mut Vec<(Ideal, bool)>, ideal: Ideal, certified: bool) {
    match list.iter_mut().find(|(i, _)| *i == ideal) {
        Some(slot) => slot.1 &= certified,
        None => list.push((ideal, certified)),
    }
}

/// Builds `I(G)` from the graded annihilators of `generators` (or of sampled
/// elements when none are given), closes it under intersection and checks
/// the structure theory on the result.
pub fn special_ideal_lattice<M: SkewModule + ?Sized>(
    m: &M,
    generators: Option<&[M::Elem]>,
    opts: &LatticeOptions,
) -> Result<SpecialIdealLattice> {
    if !m.is_x_torsion_free(opts.bound)? {
        return Err(Error::Refused(
            "the module has x-torsion; compute the lattice of H/Γ_x instead".into(),
        ));
    }
    let ring = m.ring().clone();
    let (elems, complete) = match generators {
        Some(g) => (g.to_vec(), false),
        None => m.samples(opts.sample_limit)?,
    };
    let mut checks = Vec::new();

    let mut found: Vec<(Ideal, bool)> = vec![(Ideal::unit(&ring), true)];
    let mut all_radical = true;
    for g in &elems {
        let chain = grann_element(m, g, opts.bound)?;
        let lim = chain.limit().clone();
        all_radical &= lim.is_radical()?;
        insert_sorted(&mut found, lim, chain.certified);
    }
    checks.push(Check::new(
        "radical limits",
        all_radical,
        "every graded annihilator limit equals its Frobenius preimage",
    ));

    // close under intersection
    loop {
        let mut added = false;
        let snapshot = found.clone();
        for (i, (a, ca)) in snapshot.iter().enumerate() {
            for (b, cb) in &snapshot[i + 1..] {
                let both = a.intersect(b)?;
                if !found.iter().any(|(x, _)| *x == both) {
                    found.push((both, *ca && *cb));
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    found.sort_by_key(|(i, _)| i.sort_key());

    // Δ and Δ^{-1}
    let mut subs = Vec::with_capacity(found.len());
    let mut delta_ok = true;
    let mut delta_available = true;
    for (b, _) in &found {
        match m.delta(b) {
            Ok(n) => {
                if delta_inverse(m, &n)? != *b {
                    delta_ok = false;
                }
                subs.push(Some(n));
            }
            Err(Error::Refused(_)) => {
                delta_available = false;
                subs.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    if delta_available {
        let mut reversing = true;
        for (i, (a, _)) in found.iter().enumerate() {
            for (j, (b, _)) in found.iter().enumerate() {
                let (na, nb) = (subs[i].as_ref().unwrap(), subs[j].as_ref().unwrap());
                if b.contains_ideal(a)? != m.sub_leq(nb, na)? {
                    reversing = false;
                }
            }
        }
        checks.push(Check::new(
            "delta bijection",
            delta_ok,
            "grann(Δ(b)) has limit b for every member b",
        ));
        checks.push(Check::new(
            "delta reverses order",
            reversing,
            "b ⊆ c exactly when Δ(c) ⊆ Δ(b)",
        ));
    }

    // meet-irreducible proper members are the primes
    let mut primes = vec![false; found.len()];
    for (i, (b, _)) in found.iter().enumerate() {
        if b.is_unit() {
            continue;
        }
        let mut above = Ideal::unit(&ring);
        for (c, _) in &found {
            if c != b && c.contains_ideal(b)? {
                above = above.intersect(c)?;
            }
        }
        primes[i] = above != *b;
    }
    let prime_list: Vec<&Ideal> = found
        .iter()
        .zip(&primes)
        .filter(|(_, &p)| p)
        .map(|((b, _), _)| b)
        .collect();

    let mut structure = true;
    for (b, _) in &found {
        let mut acc = Ideal::unit(&ring);
        for p in &prime_list {
            if p.contains_ideal(b)? {
                acc = acc.intersect(p)?;
            }
        }
        if acc != *b {
            structure = false;
        }
    }
    checks.push(Check::new(
        "prime intersections",
        structure,
        "each member is the intersection of the member primes containing it",
    ));

    if delta_available {
        let mut closure = true;
        for i in 0..found.len() {
            for j in i + 1..found.len() {
                let sum = m.sub_sum(subs[i].as_ref().unwrap(), subs[j].as_ref().unwrap())?;
                if delta_inverse(m, &sum)? != found[i].0.intersect(&found[j].0)? {
                    closure = false;
                }
            }
        }
        checks.push(Check::new(
            "intersection closure",
            closure,
            "grann(Δ(b) + Δ(c)) has limit b ∩ c",
        ));

        // longest strictly descending chain of submodules
        let k = subs.len();
        let mut below = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                let (a, b) = (subs[i].as_ref().unwrap(), subs[j].as_ref().unwrap());
                below[i][j] = i != j && m.sub_leq(b, a)? && !m.sub_leq(a, b)?;
            }
        }
        let mut longest = vec![1usize; k];
        for _ in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if below[i][j] {
                        longest[j] = longest[j].max(longest[i] + 1);
                    }
                }
            }
        }
        let depth = longest.iter().copied().max().unwrap_or(0);
        checks.push(Check::new(
            "descending chains",
            depth <= k,
            &format!("longest strict chain {depth}, members {k}"),
        ));
    }

    // maximal proper members
    let mut maximal = Vec::new();
    for (i, (b, _)) in found.iter().enumerate() {
        if b.is_unit() {
            continue;
        }
        let mut is_max = true;
        for (c, _) in &found {
            if !c.is_unit() && c != b && c.contains_ideal(b)? {
                is_max = false;
            }
        }
        if is_max {
            maximal.push((i, b.clone()));
        }
    }
    let mut maximal_ok = true;
    for (i, p) in &maximal {
        maximal_ok &= primes[*i] && p.is_radical()?;
        if let Some(n) = &subs[*i] {
            for g in m.sub_samples(n, opts.sample_limit)? {
                if m.is_zero(&g)? {
                    continue;
                }
                if grann_element(m, &g, opts.bound)?.limit() != p {
                    maximal_ok = false;
                }
            }
        }
    }
    checks.push(Check::new(
        "maximal primes",
        maximal_ok,
        "nonzero elements of Δ(p) have graded annihilator p for each maximal member p",
    ));

    let smallest = if ring.is_equidimensional() {
        let mut b = Ideal::unit(&ring);
        for p in &prime_list {
            if p.has_positive_height()? {
                b = b.intersect(p)?;
            }
        }
        let mut minimal = true;
        for (c, _) in &found {
            if c.has_positive_height()? && !c.contains_ideal(&b)? {
                minimal = false;
            }
        }
        let mut equivalent = true;
        for g in &elems {
            let chain = grann_element(m, g, opts.bound)?;
            let k = chain.limit();
            let first = chain.entry(0).contains_ideal(&b)?;
            let second = k.intersect(&b)?.has_positive_height()?;
            let third = k.has_positive_height()?;
            if first != second || second != third {
                equivalent = false;
            }
        }
        checks.push(Check::new(
            "smallest positive height",
            minimal && b.has_positive_height()?,
            &format!("{b} lies in every positive-height member"),
        ));
        checks.push(Check::new(
            "annihilation equivalences",
            equivalent,
            "b ⊆ grann(g), grann(g) ∩ b of positive height and grann(g) of positive height agree on every sample",
        ));
        Some(b)
    } else {
        None
    };

    let entries = found
        .into_iter()
        .zip(&primes)
        .zip(&subs)
        .map(|(((ideal, certified), &prime), sub)| LatticeEntry {
            ideal,
            certified,
            prime,
            submodule: sub.as_ref().map(|n| m.show_sub(n)),
        })
        .collect();
    Ok(SpecialIdealLattice {
        entries,
        complete,
        maximal_primes: maximal.into_iter().map(|(_, p)| p).collect(),
        smallest_positive_height: smallest,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{QuotientRing, Ring};
    use crate::modules::FiniteCyclics;
    use crate::poly::{MonomialOrder, PolyRing};

    fn ring(vars: &[&str]) -> Ring {
        QuotientRing::polynomial(&PolyRing::new(2, vars, MonomialOrder::Grevlex).unwrap())
    }

    #[test]
    fn nodal_lattice() {
        let r = ring(&["s", "t"]);
        let g = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "s*t").unwrap()]).unwrap();
        let gens: Vec<_> = ["s", "t", "s+t", "1"]
            .iter()
            .map(|x| g.element(&[r.parse(x).unwrap()]).unwrap())
            .collect();
        let l = special_ideal_lattice(&g, Some(&gens), &LatticeOptions::default()).unwrap();
        let want: Vec<Ideal> = ["s", "t", "s*t", "1"]
            .iter()
            .map(|x| Ideal::parse(&r, x).unwrap())
            .collect();
        assert_eq!(l.entries.len(), 4);
        for w in &want {
            assert!(l.ideals().contains(&w), "{w}");
        }
        assert!(l.all_passed(), "{:?}", l.checks);
        let mut maxes = l.maximal_primes.clone();
        maxes.sort_by_key(|i| i.sort_key());
        assert_eq!(maxes, vec![want[0].clone(), want[1].clone()]);
        assert_eq!(l.smallest_positive_height.as_ref(), Some(&want[2]));
        assert!(l.entries.iter().all(|e| e.certified));
    }

    #[test]
    fn line_lattice() {
        let r = ring(&["t"]);
        let g = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "t").unwrap()]).unwrap();
        let l = special_ideal_lattice(&g, None, &LatticeOptions::default()).unwrap();
        let t = Ideal::parse(&r, "t").unwrap();
        assert_eq!(l.ideals(), vec![&Ideal::unit(&r), &t]);
        assert_eq!(l.maximal_primes, vec![t.clone()]);
        assert_eq!(l.smallest_positive_height, Some(t));
        assert!(l.complete && l.all_passed());
    }

    #[test]
    fn zero_module() {
        let r = ring(&["t"]);
        let g = FiniteCyclics::frobenius(&r, vec![Ideal::unit(&r)]).unwrap();
        let l = special_ideal_lattice(&g, None, &LatticeOptions::default()).unwrap();
        assert_eq!(l.ideals(), vec![&Ideal::unit(&r)]);
        assert!(l.maximal_primes.is_empty());
        assert!(l.smallest_positive_height.unwrap().is_unit());
        assert_eq!(l.entries[0].submodule.as_deref(), Some("0"));
    }

    #[test]
    fn torsion_is_refused() {
        let r = ring(&["t"]);
        let g = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "t^2").unwrap()]).unwrap();
        assert!(matches!(
            special_ideal_lattice(&g, None, &LatticeOptions::default()),
            Err(Error::Refused(_))
        ));
    }
}

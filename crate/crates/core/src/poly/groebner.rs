//! Multivariate division and Buchberger's algorithm with the Gebauer–Möller
//! pair criteria and the sugar selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use super::polynomial::{coprime, divides, exps_degree, lcm, quotient_exps, Exponents, Polynomial, Term};
use super::ring::PolyRing;
use crate::error::{Error, Result};

fn support_mask(e: &[u32]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

pub(crate) struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(basis: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = basis.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| support_mask(p.lm())).collect();
        Reducer { polys, masks }
    }

    fn find(&self, m: &[u32]) -> Option<&'a Polynomial> {
        let mask = support_mask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &pm)| pm & !mask == 0 && divides(p.lm(), m))
            .map(|(p, _)| *p)
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring().clone();
        let mut done: Vec<Term> = Vec::new();
        let mut work = f.clone();
        while let Some(lead) = work.leading_term().cloned() {
            match self.find(&lead.exps) {
                Some(g) => {
                    let c = ring.mul(lead.coeff, ring.inv(g.lc()));
                    let m = quotient_exps(&lead.exps, g.lm());
                    work = work.sub_mul_term(c, &m, g);
                }
                None => {
                    // peel every leading term that is already irreducible
                    let terms = work.into_terms();
                    let mut rest = terms.into_iter();
                    done.push(rest.next().unwrap());
                    let mut remaining: Vec<Term> = Vec::new();
                    for t in rest.by_ref() {
                        if remaining.is_empty() && self.find(&t.exps).is_none() {
                            done.push(t);
                        } else {
                            remaining.push(t);
                        }
                    }
                    work = Polynomial::from_sorted(&ring, remaining);
                }
            }
        }
        Polynomial::from_sorted(&ring, done)
    }

    /// Reduces only until the leading term is irreducible.
    fn top_reduce(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring().clone();
        let mut work = f.clone();
        while let Some(lead) = work.leading_term() {
            match self.find(&lead.exps) {
                Some(g) => {
                    let c = ring.mul(lead.coeff, ring.inv(g.lc()));
                    let m = quotient_exps(&lead.exps, g.lm());
                    work = work.sub_mul_term(c, &m, g);
                }
                None => break,
            }
        }
        work
    }

    /// Division with quotients: `f = sum q_i g_i + r`.
    pub(crate) fn divide(&self, f: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let ring = f.ring().clone();
        let mut quotients: Vec<Vec<(i64, Exponents)>> = vec![Vec::new(); self.polys.len()];
        let mut done: Vec<Term> = Vec::new();
        let mut work = f.clone();
        while let Some(lead) = work.leading_term().cloned() {
            let hit = self.polys.iter().position(|g| divides(g.lm(), &lead.exps));
            match hit {
                Some(i) => {
                    let g = self.polys[i];
                    let c = ring.mul(lead.coeff, ring.inv(g.lc()));
                    let m = quotient_exps(&lead.exps, g.lm());
                    work = work.sub_mul_term(c, &m, g);
                    quotients[i].push((c as i64, m));
                }
                None => {
                    let mut terms = work.into_terms();
                    let t = terms.remove(0);
                    done.push(t);
                    work = Polynomial::from_sorted(&ring, terms);
                }
            }
        }
        let qs = quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(&ring, q))
            .collect();
        (qs, Polynomial::from_sorted(&ring, done))
    }
}

pub(crate) fn check_ring(ring: &PolyRing, polys: &[Polynomial]) -> Result<()> {
    for p in polys {
        if !p.ring().same(ring) {
            return Err(Error::RingMismatch(format!(
                "expected a polynomial of {ring}, got one of {}",
                p.ring()
            )));
        }
    }
    Ok(())
}

/// Remainder of `f` on division by `basis`. When `basis` is a Gröbner basis
/// the result is the unique normal form of `f` modulo the ideal.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    check_ring(f.ring(), basis)?;
    Ok(Reducer::new(basis).reduce(f))
}

/// Exact quotient `h / g`, or `None` when `g` does not divide `h`.
pub fn divide_exact(h: &Polynomial, g: &Polynomial) -> Result<Option<Polynomial>> {
    check_ring(h.ring(), std::slice::from_ref(g))?;
    if g.is_zero() {
        return Err(Error::InvalidArgument("division by zero polynomial".into()));
    }
    let (q, r) = Reducer::new([g]).divide(h);
    Ok(if r.is_zero() {
        Some(q.into_iter().next().unwrap())
    } else {
        None
    })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    sugar: u64,
}

struct Basis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Basis {
    fn active_polys(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p)
    }

    fn pair_sugar(&self, i: usize, j: usize, l: &[u32]) -> u64 {
        let dl = exps_degree(l);
        let si = self.sugar[i] + dl - exps_degree(self.polys[i].lm());
        let sj = self.sugar[j] + dl - exps_degree(self.polys[j].lm());
        si.max(sj)
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn insert(&mut self, h: Polynomial, sugar: u64) {
        let hi = self.polys.len();
        let hlm = h.lm().clone();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let mut candidates: Vec<(usize, Exponents, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let l = lcm(&hlm, self.polys[g].lm());
                let cp = coprime(&hlm, self.polys[g].lm());
                (g, l, cp)
            })
            .collect();

        // chain criterion among the new pairs: drop (h,g1) if some other
        // new pair's lcm properly divides lcm(h,g1)
        let mut keep: Vec<(usize, Exponents, bool)> = Vec::new();
        for idx in 0..candidates.len() {
            let (g1, ref l1, cp1) = candidates[idx];
            // equal lcms keep only the first representative
            let dominated = !cp1
                && candidates
                    .iter()
                    .enumerate()
                    .any(|(k, (_, l2, _))| k != idx && divides(l2, l1) && (l2 != l1 || k < idx));
            if !dominated {
                keep.push((g1, l1.clone(), cp1));
            }
        }
        candidates = keep;

        // old pairs: drop (a,b) when lm(h) | lcm(a,b) and both lcm(a,h), lcm(b,h)
        // differ from lcm(a,b)
        let polys = &self.polys;
        self.pairs.retain(|pr| {
            !(divides(&hlm, &pr.lcm) && lcm(polys[pr.i].lm(), &hlm) != pr.lcm && lcm(polys[pr.j].lm(), &hlm) != pr.lcm)
        });

        for (g, l, cp) in candidates {
            if cp {
                continue;
            }
            let sugar = self.pair_sugar(g, hi, &l);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                sugar,
            });
        }

        for g in 0..hi {
            if self.active[g] && divides(&hlm, self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.cmp_monomials(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, l: &[u32]) -> Polynomial {
    let mf = quotient_exps(l, f.lm());
    let mg = quotient_exps(l, g.lm());
    let a = f.mul_term(1, &mf);
    // f and g are monic
    a.sub_mul_term(1, &mg, g)
}

/// Reduced Gröbner basis of the ideal generated by `gens`: monic, inter-reduced,
/// sorted by increasing leading monomial. Independent of generator order and
/// duplication.
pub fn reduced_groebner(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    check_ring(ring, gens)?;
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    input.sort_by(|a, b| ring.cmp_monomials(a.lm(), b.lm()).then_with(|| a.len().cmp(&b.len())));
    input.dedup();

    let mut basis = Basis {
        ring: ring.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let r = Reducer::new(basis.active_polys()).top_reduce(&g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let sugar = g.degree().unwrap_or(0).max(r.degree().unwrap_or(0));
        basis.insert(r.monic(), sugar);
    }

    let limit = ring.pair_limit();
    let mut processed = 0usize;
    while let Some(pair) = basis.pop_pair() {
        processed += 1;
        if processed > limit {
            return Err(Error::Resource(format!(
                "Buchberger exceeded the pair limit of {limit} in {ring}"
            )));
        }
        let s = s_polynomial(&basis.polys[pair.i], &basis.polys[pair.j], &pair.lcm);
        let r = Reducer::new(basis.active_polys()).top_reduce(&s);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let sugar = pair.sugar.max(r.degree().unwrap_or(0));
        // tail-reduce before insertion keeps the basis small
        let r = Reducer::new(basis.active_polys()).reduce(&r).monic();
        basis.insert(r, sugar);
    }

    let mut minimal: Vec<Polynomial> = basis.active_polys().cloned().collect();
    minimal.sort_by(|a, b| ring.cmp_monomials(a.lm(), b.lm()));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in minimal {
        if !kept.iter().any(|k| divides(k.lm(), g.lm())) {
            kept.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p);
        let r = Reducer::new(others).reduce(&kept[i]).monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| ring.cmp_monomials(a.lm(), b.lm()));
    Ok(reduced)
}

/// Generators of the elimination ideal `(gens) ∩ F_p[x_{k+1}, ..., x_n]`, as
/// a reduced Gröbner basis in the original ring.
pub fn eliminate(ring: &Arc<PolyRing>, gens: &[Polynomial], k: usize) -> Result<Vec<Polynomial>> {
    check_ring(ring, gens)?;
    if k > ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "cannot eliminate {k} of {} variables",
            ring.nvars()
        )));
    }
    let elim = ring.with_order(super::MonomialOrder::Elimination(k));
    let ident: Vec<usize> = (0..ring.nvars()).collect();
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.map_vars(&elim, &ident)).collect();
    let gb = reduced_groebner(&elim, &moved)?;
    let kept: Vec<Polynomial> = gb
        .into_iter()
        .filter(|g| g.terms().iter().all(|t| t.exps[..k].iter().all(|&e| e == 0)))
        .map(|g| g.map_vars(ring, &ident))
        .collect();
    reduced_groebner(ring, &kept)
}

/// `{ r : r^(p^e) ∈ (basis) }`, taken one `p`-th power at a time: eliminating
/// against `y_i - x_i^(p^e)` directly blows up already for `p^e = 9`.
pub fn frobenius_preimage(ring: &Arc<PolyRing>, gens: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
    check_ring(ring, gens)?;
    if e == 0 {
        return Err(Error::InvalidArgument(
            "Frobenius preimage needs exponent e >= 1".into(),
        ));
    }
    let mut current = reduced_groebner(ring, gens)?;
    for _ in 0..e {
        let next = preimage_step(ring, &current)?;
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}

/// One step: adjoin `y_i`, add `y_i - x_i^p`, eliminate the `x_i` and
/// rename `y -> x`.
fn preimage_step(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let p = ring.characteristic();
    let n = ring.nvars();
    // x block first (eliminated), y block keeps the original variable names
    let big = ring.with_front_block(n, "x");
    let x_map: Vec<usize> = (0..n).collect();
    let y_map: Vec<usize> = (n..2 * n).collect();
    let mut system: Vec<Polynomial> = gens.iter().map(|g| g.map_vars(&big, &x_map)).collect();
    for i in 0..n {
        let y = Polynomial::var(&big, n + i);
        let xp = Polynomial::var(&big, i).power_exponents(p)?;
        system.push(&y - &xp);
    }
    let gb = reduced_groebner(&big, &system)?;
    let image: Vec<Polynomial> = gb.iter().filter_map(|g| g.restrict_vars(ring, &y_map)).collect();
    reduced_groebner(ring, &image)
}

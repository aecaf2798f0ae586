use std::collections::HashMap;

use super::{grann_element, orbit_annihilators, SkewModule};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{normal_form, Exponents, Polynomial};
use crate::skew::GradedIdealChain;

/// One cyclic summand `R/J` with its standard-monomial basis.
#[derive(Clone, Debug)]
struct Block {
    ideal: Ideal,
    basis: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    offset: usize,
}

/// A left `R[x,f]`-module that is finite-dimensional over `F_p`, stored as
/// `F_p^n` with one matrix per ring variable and one for `x`. Over the prime
/// field `c^p = c`, so the semilinear `x` is an honest linear map.
#[derive(Clone, Debug)]
pub struct LinearModule {
    ring: Ring,
    p: u32,
    n: usize,
    var_mats: Vec<Matrix>,
    x: Matrix,
    killer: Ideal,
    killer_basis: Vec<Exponents>,
    blocks: Option<Vec<Block>>,
}

/// Standard monomials of a zero-dimensional ideal, ascending in the ring order.
pub(crate) fn standard_monomials(ideal: &Ideal, limit: usize) -> Result<Vec<Exponents>> {
    if ideal.dimension() > 0 {
        return Err(Error::InvalidArgument(format!(
            "{ideal} has positive dimension, so R/J is infinite"
        )));
    }
    let ring = ideal.ring().poly_ring();
    let nv = ring.nvars();
    let lms: Vec<&Exponents> = ideal.gb().iter().map(|g| g.lm()).collect();
    let standard = |e: &Exponents| !lms.iter().any(|l| crate::poly::divides(l, e));
    let mut out: Vec<Exponents> = Vec::new();
    if ideal.is_unit() {
        return Ok(out);
    }
    let mut frontier: Vec<Exponents> = vec![Exponents::from_elem(0, nv)];
    let mut seen: std::collections::HashSet<Exponents> = frontier.iter().cloned().collect();
    while let Some(e) = frontier.pop() {
        out.push(e.clone());
        if out.len() > limit {
            return Err(Error::Resource(format!("R/J has more than {limit} standard monomials")));
        }
        for i in 0..nv {
            let mut f = e.clone();
            f[i] += 1;
            if standard(&f) && seen.insert(f.clone()) {
                frontier.push(f);
            }
        }
    }
    out.sort_by(|a, b| ring.cmp_monomials(a, b));
    Ok(out)
}

const MAX_DIM: usize = 4096;

impl LinearModule {
    /// `⊕ R/J_i` with `x(e_j) = Σ_i u_ij e_i`; every `J_i` must be
    /// zero-dimensional.
    pub(crate) fn from_cyclics(ring: &Ring, summands: &[Ideal], u: &[Vec<Polynomial>]) -> Result<Self> {
        let p = ring.characteristic();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for j in summands {
            let basis = standard_monomials(j, MAX_DIM)?;
            let index = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            let len = basis.len();
            blocks.push(Block {
                ideal: j.clone(),
                basis,
                index,
                offset,
            });
            offset += len;
        }
        let n = offset;
        let poly = ring.poly_ring();
        let nv = poly.nvars();
        let mut var_mats = Vec::with_capacity(nv);
        for k in 0..nv {
            let xk = Polynomial::var(poly, k);
            let mut cols = Vec::with_capacity(n);
            for b in &blocks {
                for m in &b.basis {
                    let f = &xk * &Polynomial::monomial(poly, 1, m.clone());
                    cols.push(embed(&blocks, b, &f, n)?);
                }
            }
            var_mats.push(Matrix::from_columns(n, &cols));
        }
        let mut xcols = Vec::with_capacity(n);
        for (jdx, bj) in blocks.iter().enumerate() {
            for m in &bj.basis {
                let mp = Polynomial::monomial(poly, 1, m.clone()).frobenius(1)?;
                let mut col = vec![0u32; n];
                for (idx, bi) in blocks.iter().enumerate() {
                    let img = &mp * &u[idx][jdx];
                    let part = embed(&blocks, bi, &img, n)?;
                    for (c, v) in col.iter_mut().zip(part) {
                        *c = (*c + v) % p;
                    }
                }
                xcols.push(col);
            }
        }
        let x = Matrix::from_columns(n, &xcols);
        let killer = Ideal::intersect_all(ring, summands)?;
        let killer_basis = standard_monomials(&killer, MAX_DIM)?;
        Ok(LinearModule {
            ring: ring.clone(),
            p,
            n,
            var_mats,
            x,
            killer,
            killer_basis,
            blocks: Some(blocks),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn x_matrix(&self) -> &Matrix {
        &self.x
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Coordinates of a vector of residues, one per summand.
    pub fn element(&self, parts: &[Polynomial]) -> Result<Vec<u32>> {
        let blocks = self.blocks.as_ref().ok_or_else(|| {
            Error::InvalidArgument("this module has no summand presentation; give coordinates".into())
        })?;
        if parts.len() != blocks.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                blocks.len(),
                parts.len()
            )));
        }
        let mut v = vec![0u32; self.n];
        for (b, f) in blocks.iter().zip(parts) {
            let part = embed(blocks, b, f, self.n)?;
            for (c, x) in v.iter_mut().zip(part) {
                *c = (*c + x) % self.p;
            }
        }
        Ok(v)
    }

    /// `r · v`.
    pub fn act(&self, r: &Polynomial, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u32; self.n];
        for t in r.terms() {
            let mut w = v.to_vec();
            for (k, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    w = self.var_mats[k].apply(&w, self.p);
                }
            }
            for (o, x) in out.iter_mut().zip(w) {
                *o = ((*o as u64 + t.coeff as u64 * x as u64) % p) as u32;
            }
        }
        out
    }

    fn matrix_of(&self, r: &Polynomial) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.n).map(|i| self.act(r, &unit_vec(self.n, i))).collect();
        Matrix::from_columns(self.n, &cols)
    }

    pub fn apply_x(&self, v: &[u32]) -> Vec<u32> {
        self.x.apply(v, self.p)
    }

    /// The R[x,f]-submodule generated by `gens`.
    pub fn generated(&self, gens: &[Vec<u32>]) -> Subspace {
        let mut s = Subspace::span(self.p, self.n, gens.iter().cloned());
        loop {
            let mut more: Vec<Vec<u32>> = s.basis().to_vec();
            for b in s.basis() {
                for a in &self.var_mats {
                    more.push(a.apply(b, self.p));
                }
                more.push(self.apply_x(b));
            }
            let next = Subspace::span(self.p, self.n, more);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.p, self.n)
    }

    /// `Γ_x = ⋃ ker x^k`, exact.
    pub fn gamma_x(&self) -> Subspace {
        let mut power = Matrix::identity(self.n);
        let mut kernel = Subspace::zero(self.p, self.n);
        loop {
            power = self.x.mul(&power, self.p);
            let next = power.kernel(self.p);
            if next == kernel {
                return kernel;
            }
            kernel = next;
        }
    }

    /// Least `e` with `x^e Γ_x = 0`.
    pub fn hsl_number(&self) -> usize {
        let mut image = self.gamma_x();
        let mut e = 0;
        while !image.is_zero() {
            image = image.image(&self.x);
            e += 1;
        }
        e
    }

    fn ann_subspace_of_ideal_gens(&self, gens: &[Polynomial]) -> Subspace {
        let mut k = self.whole();
        for g in gens {
            k = k.intersect(&self.matrix_of(g).kernel(self.p));
        }
        k
    }

    /// Largest x-stable subspace of `k`.
    fn x_core(&self, k: &Subspace) -> Subspace {
        let mut w = k.clone();
        loop {
            let next = w.intersect(&w.preimage(&self.x));
            if next == w {
                return w;
            }
            w = next;
        }
    }

    /// `(0 :_R V)` for a subspace `V`.
    fn ann_of_subspace(&self, v: &Subspace) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for b in v.basis() {
            acc = acc.intersect(&self.ann(b)?)?;
        }
        Ok(acc)
    }

    /// `M/N` for an R[x,f]-submodule `N`, with coordinates on the non-pivot
    /// positions of `N`.
    pub fn quotient(&self, sub: &Subspace) -> LinearModule {
        let keep: Vec<usize> = (0..self.n).filter(|c| !sub.pivots().contains(c)).collect();
        let m = keep.len();
        let project = |v: Vec<u32>| -> Vec<u32> {
            let r = sub.reduce(&v);
            keep.iter().map(|&c| r[c]).collect()
        };
        let induced = |a: &Matrix| -> Matrix {
            let cols: Vec<Vec<u32>> = keep
                .iter()
                .map(|&c| project(a.apply(&unit_vec(self.n, c), self.p)))
                .collect();
            Matrix::from_columns(m, &cols)
        };
        LinearModule {
            ring: self.ring.clone(),
            p: self.p,
            n: m,
            var_mats: self.var_mats.iter().map(induced).collect(),
            x: induced(&self.x),
            killer: self.killer.clone(),
            killer_basis: self.killer_basis.clone(),
            blocks: None,
        }
    }

    /// Image of `v` in `quotient(sub)`.
    pub fn project(&self, sub: &Subspace, v: &[u32]) -> Vec<u32> {
        let r = sub.reduce(v);
        (0..self.n)
            .filter(|c| !sub.pivots().contains(c))
            .map(|c| r[c])
            .collect()
    }

    pub fn all_elements(&self) -> Vec<Vec<u32>> {
        self.whole().elements()
    }
}

/// Converts coordinate vectors back to per-summand residues.
pub(crate) fn block_residues(m: &LinearModule, elems: &[Vec<u32>]) -> Option<Vec<Vec<Polynomial>>> {
    let blocks = m.blocks.as_ref()?;
    let poly = m.ring.poly_ring();
    Some(
        elems
            .iter()
            .map(|h| {
                blocks
                    .iter()
                    .map(|b| {
                        Polynomial::from_terms(
                            poly,
                            b.basis
                                .iter()
                                .enumerate()
                                .map(|(i, e)| (h[b.offset + i] as i64, e.clone())),
                        )
                    })
                    .collect()
            })
            .collect(),
    )
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

/// Coordinates of `f` in block `b`, padded to the full space.
fn embed(_blocks: &[Block], b: &Block, f: &Polynomial, n: usize) -> Result<Vec<u32>> {
    let r = normal_form(f, b.ideal.gb())?;
    let mut v = vec![0u32; n];
    for t in r.terms() {
        let i = b
            .index
            .get(&t.exps)
            .ok_or_else(|| Error::InvalidArgument("normal form left the standard monomials".into()))?;
        v[b.offset + i] = t.coeff;
    }
    Ok(v)
}

impl SkewModule for LinearModule {
    type Elem = Vec<u32>;
    type Sub = Subspace;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn zero(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    fn is_zero(&self, h: &Vec<u32>) -> Result<bool> {
        Ok(h.iter().all(|&c| c == 0))
    }

    fn same_elem(&self, a: &Vec<u32>, b: &Vec<u32>) -> Result<bool> {
        Ok(a == b)
    }

    fn x_action(&self, h: &Vec<u32>) -> Result<Vec<u32>> {
        Ok(self.apply_x(h))
    }

    fn ann(&self, h: &Vec<u32>) -> Result<Ideal> {
        if h.iter().all(|&c| c == 0) {
            return Ok(Ideal::unit(&self.ring));
        }
        let poly = self.ring.poly_ring();
        let cols: Vec<Vec<u32>> = self
            .killer_basis
            .iter()
            .map(|m| self.act(&Polynomial::monomial(poly, 1, m.clone()), h))
            .collect();
        let kernel = Matrix::from_columns(self.n, &cols).kernel(self.p);
        let mut gens: Vec<Polynomial> = self.killer.gb().to_vec();
        for k in kernel.basis() {
            gens.push(Polynomial::from_terms(
                poly,
                k.iter()
                    .zip(&self.killer_basis)
                    .filter(|(c, _)| **c != 0)
                    .map(|(c, m)| (*c as i64, m.clone())),
            ));
        }
        Ideal::new(&self.ring, &gens)
    }

    fn show(&self, h: &Vec<u32>) -> String {
        match &self.blocks {
            Some(blocks) => {
                let parts = block_residues(self, std::slice::from_ref(h)).unwrap_or_default();
                let parts: Vec<String> = parts.into_iter().flatten().map(|f| f.to_string()).collect();
                if blocks.len() == 1 {
                    parts.join("")
                } else {
                    format!("({})", parts.join(", "))
                }
            }
            None => format!("{h:?}"),
        }
    }

    /// Orbits in a finite module always close up, so the chain is exact.
    fn grann_exact(&self, h: &Vec<u32>) -> Result<Option<GradedIdealChain>> {
        let steps = (self.p as usize).saturating_pow(self.n as u32).min(1 << 20);
        let orbit = orbit_annihilators(self, h, steps)?;
        Ok(Some(orbit.chain(&self.ring)?))
    }

    fn is_x_torsion_free(&self, _bound: usize) -> Result<bool> {
        Ok(self.x.kernel(self.p).is_zero())
    }

    fn samples(&self, limit: usize) -> Result<(Vec<Vec<u32>>, bool)> {
        let size = (self.p as u128).checked_pow(self.n as u32);
        if size.is_some_and(|s| s <= limit as u128) {
            return Ok((self.all_elements(), true));
        }
        let mut out: Vec<Vec<u32>> = (0..self.n).map(|i| unit_vec(self.n, i)).collect();
        out.push(vec![1; self.n]);
        Ok((out, false))
    }

    fn delta(&self, b: &Ideal) -> Result<Subspace> {
        let k = self.ann_subspace_of_ideal_gens(&b.generators());
        Ok(self.x_core(&k))
    }

    fn ann_of_chain(&self, chain: &GradedIdealChain) -> Result<Subspace> {
        let s = chain.stable_from();
        let mut acc = self.whole();
        let mut power = Matrix::identity(self.n);
        for n in 0..s {
            let k = self.ann_subspace_of_ideal_gens(&chain.entry(n).generators());
            acc = acc.intersect(&k.preimage(&power));
            power = self.x.mul(&power, self.p);
        }
        let k = self.ann_subspace_of_ideal_gens(&chain.limit().generators());
        let core = self.x_core(&k);
        Ok(acc.intersect(&core.preimage(&power)))
    }

    fn grann_sub(&self, n: &Subspace) -> Result<GradedIdealChain> {
        let mut entries = Vec::new();
        let mut image = n.clone();
        loop {
            entries.push(self.ann_of_subspace(&image)?);
            let next = image.image(&self.x);
            if next == image {
                break;
            }
            image = next;
        }
        GradedIdealChain::new(entries, true)
    }

    fn sub_contains(&self, n: &Subspace, h: &Vec<u32>) -> Result<bool> {
        Ok(n.contains(h))
    }

    fn sub_leq(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        Ok(a.is_subspace_of(b))
    }

    fn sub_sum(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        Ok(a.sum(b))
    }

    fn sub_is_zero(&self, n: &Subspace) -> Result<bool> {
        Ok(n.is_zero())
    }

    fn sub_samples(&self, n: &Subspace, limit: usize) -> Result<Vec<Vec<u32>>> {
        if (self.p as u128)
            .checked_pow(n.dim() as u32)
            .is_some_and(|s| s <= limit as u128)
        {
            Ok(n.elements())
        } else {
            Ok(n.basis().to_vec())
        }
    }

    fn show_sub(&self, n: &Subspace) -> String {
        if n.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = n.basis().iter().map(|b| self.show(b)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

impl LinearModule {
    /// Graded annihilator of the submodule generated by `h`; a thin wrapper
    /// kept for symmetry with the other backends.
    pub fn grann_of(&self, h: &[u32]) -> Result<GradedIdealChain> {
        grann_element(self, &h.to_vec(), 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::{MonomialOrder, PolyRing};

    fn ring() -> Ring {
        QuotientRing::polynomial(&PolyRing::new(2, &["t"], MonomialOrder::Grevlex).unwrap())
    }

    fn frob(r: &Ring, js: &[&str]) -> LinearModule {
        let ideals: Vec<Ideal> = js.iter().map(|s| Ideal::parse(r, s).unwrap()).collect();
        let k = ideals.len();
        let u: Vec<Vec<Polynomial>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { r.one() } else { r.zero() }).collect())
            .collect();
        LinearModule::from_cyclics(r, &ideals, &u).unwrap()
    }

    #[test]
    fn frobenius_on_t_squared() {
        let r = ring();
        let m = frob(&r, &["t^2"]);
        assert_eq!(m.dim(), 2);
        let t = m.element(&[r.parse("t").unwrap()]).unwrap();
        assert!(m.apply_x(&t).iter().all(|&c| c == 0));
        let g = m.gamma_x();
        assert_eq!(g.dim(), 1);
        assert!(g.contains(&t));
        assert_eq!(m.hsl_number(), 1);
    }

    #[test]
    fn torsion_free_and_zero_map() {
        let r = ring();
        let m = frob(&r, &["t"]);
        assert!(m.is_x_torsion_free(0).unwrap());
        assert_eq!(m.hsl_number(), 0);
        let j = Ideal::parse(&r, "t^3").unwrap();
        let zero = LinearModule::from_cyclics(&r, &[j], &[vec![r.zero()]]).unwrap();
        assert_eq!(zero.hsl_number(), 1);
    }

    #[test]
    fn annihilators() {
        let r = ring();
        let m = frob(&r, &["t^3"]);
        let t = m.element(&[r.parse("t").unwrap()]).unwrap();
        assert_eq!(m.ann(&t).unwrap(), Ideal::parse(&r, "t^2").unwrap());
        assert!(m.ann(&m.zero()).unwrap().is_unit());
    }

    #[test]
    fn quotient_by_gamma_is_torsion_free() {
        let r = ring();
        let m = frob(&r, &["t^3"]);
        let g = m.quotient(&m.gamma_x());
        assert!(g.is_x_torsion_free(0).unwrap());
        assert_eq!(g.dim(), 1);
    }
}

use super::{refused, SkewModule};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};
use crate::modules::LinearModule;
use crate::poly::{normal_form, Polynomial};
use crate::skew::GradedIdealChain;

/// `⊕ R/J_i` with `x(e_j) = Σ_i u_ij e_i` and `x(Σ r_j e_j) = Σ r_j^p x(e_j)`.
#[derive(Clone, Debug)]
pub struct FiniteCyclics {
    ring: Ring,
    summands: Vec<Ideal>,
    u: Vec<Vec<Polynomial>>,
    diagonal: bool,
    radical: bool,
}

impl FiniteCyclics {
    pub fn new(ring: &Ring, summands: Vec<Ideal>, u: Vec<Vec<Polynomial>>) -> Result<Self> {
        let k = summands.len();
        if u.len() != k || u.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidArgument(format!("x matrix must be {k}x{k}")));
        }
        for j in &summands {
            if !j.ring().same(ring) {
                return Err(Error::RingMismatch(format!("summand {j} is not an ideal of {ring}")));
            }
        }
        let mut reduced = Vec::with_capacity(k);
        for (i, row) in u.iter().enumerate() {
            let mut r = Vec::with_capacity(k);
            for (j, uij) in row.iter().enumerate() {
                let uij = normal_form(&ring.reduce(uij)?, summands[i].gb())?;
                for g in summands[j].gb() {
                    let image = &uij * &g.frobenius(1)?;
                    if !summands[i].contains(&image)? {
                        return Err(Error::InvalidArgument(format!(
                            "x is not well defined: u[{i}][{j}] * ({g})^p is not in {}",
                            summands[i]
                        )));
                    }
                }
                r.push(uij);
            }
            reduced.push(r);
        }
        let diagonal = reduced.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, c)| {
                if i == j {
                    c.is_one() || summands[i].is_unit()
                } else {
                    c.is_zero()
                }
            })
        });
        let mut radical = true;
        for j in &summands {
            radical &= j.is_radical()?;
        }
        Ok(FiniteCyclics {
            ring: ring.clone(),
            summands,
            u: reduced,
            diagonal,
            radical,
        })
    }

    /// `x` acts as the Frobenius on every summand.
    pub fn frobenius(ring: &Ring, summands: Vec<Ideal>) -> Result<Self> {
        let k = summands.len();
        let u = (0..k)
            .map(|i| (0..k).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Self::new(ring, summands, u)
    }

    pub fn zero_map(ring: &Ring, summands: Vec<Ideal>) -> Result<Self> {
        let k = summands.len();
        Self::new(ring, summands, vec![vec![ring.zero(); k]; k])
    }

    pub fn summands(&self) -> &[Ideal] {
        &self.summands
    }

    pub fn is_frobenius(&self) -> bool {
        self.diagonal
    }

    /// The exact finite-dimensional model; needs every `R/J_i` finite.
    pub fn to_linear(&self) -> Result<LinearModule> {
        LinearModule::from_cyclics(&self.ring, &self.summands, &self.u)
    }

    /// Reduces each component modulo its summand ideal.
    pub fn element(&self, parts: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if parts.len() != self.summands.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                self.summands.len(),
                parts.len()
            )));
        }
        parts
            .iter()
            .zip(&self.summands)
            .map(|(f, j)| normal_form(&self.ring.reduce(f)?, j.gb()))
            .collect()
    }

    fn exact_sub_layer(&self) -> Result<()> {
        if self.diagonal && self.radical {
            Ok(())
        } else {
            Err(refused(
                "the submodule layer",
                "cyclic sums unless x is the Frobenius and every summand is radical; use the finite linear model",
            ))
        }
    }

    /// `⊕ K_i/J_i` from ideals `K_i ⊇ J_i`.
    fn sub_from(&self, ks: Vec<Ideal>) -> Result<Vec<Ideal>> {
        ks.into_iter().zip(&self.summands).map(|(k, j)| k.sum(j)).collect()
    }
}

impl SkewModule for FiniteCyclics {
    type Elem = Vec<Polynomial>;
    /// `⊕ K_i/J_i`, stored as the ideals `K_i`.
    type Sub = Vec<Ideal>;

    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn zero(&self) -> Vec<Polynomial> {
        vec![self.ring.zero(); self.summands.len()]
    }

    fn is_zero(&self, h: &Vec<Polynomial>) -> Result<bool> {
        for (f, j) in h.iter().zip(&self.summands) {
            if !j.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_elem(&self, a: &Vec<Polynomial>, b: &Vec<Polynomial>) -> Result<bool> {
        for ((f, g), j) in a.iter().zip(b).zip(&self.summands) {
            if !j.contains(&(f - g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn x_action(&self, h: &Vec<Polynomial>) -> Result<Vec<Polynomial>> {
        let powers: Vec<Polynomial> = h.iter().map(|r| r.frobenius(1)).collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(h.len());
        for (i, j) in self.summands.iter().enumerate() {
            let mut acc = self.ring.zero();
            for (col, rp) in powers.iter().enumerate() {
                if !self.u[i][col].is_zero() && !rp.is_zero() {
                    acc = &acc + &(&self.u[i][col] * rp);
                }
            }
            out.push(normal_form(&self.ring.reduce(&acc)?, j.gb())?);
        }
        Ok(out)
    }

    fn ann(&self, h: &Vec<Polynomial>) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for (f, j) in h.iter().zip(&self.summands) {
            if j.contains(f)? {
                continue;
            }
            acc = acc.intersect(&j.colon_element(f)?)?;
        }
        Ok(acc)
    }

    fn show(&self, h: &Vec<Polynomial>) -> String {
        if h.len() == 1 {
            return h[0].to_string();
        }
        let parts: Vec<String> = h.iter().map(|f| f.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// With `x` the Frobenius on radical summands, `(J : r^q) = (J : r)`, so
    /// every orbit element has the same annihilator.
    fn grann_exact(&self, h: &Vec<Polynomial>) -> Result<Option<GradedIdealChain>> {
        if self.diagonal && self.radical {
            Ok(Some(GradedIdealChain::principal(&self.ann(h)?)))
        } else {
            Ok(None)
        }
    }

    fn is_x_torsion_free(&self, bound: usize) -> Result<bool> {
        if self.diagonal {
            return Ok(self.radical);
        }
        match self.to_linear() {
            Ok(lin) => lin.is_x_torsion_free(bound),
            Err(Error::InvalidArgument(_)) => Err(refused(
                "the x-torsion test",
                "infinite cyclic sums with a non-Frobenius x",
            )),
            Err(e) => Err(e),
        }
    }

    fn samples(&self, limit: usize) -> Result<(Vec<Vec<Polynomial>>, bool)> {
        if let Ok(lin) = self.to_linear() {
            let (all, complete) = lin.samples(limit)?;
            if complete {
                let blocks = crate::modules::linear::block_residues(&lin, &all);
                if let Some(elems) = blocks {
                    return Ok((elems, true));
                }
            }
        }
        let k = self.summands.len();
        let poly = self.ring.poly_ring();
        let mut out = Vec::new();
        let mut candidates = vec![self.ring.one()];
        candidates.extend((0..poly.nvars()).map(|v| Polynomial::var(poly, v)));
        for i in 0..k {
            for c in &candidates {
                let mut e = self.zero();
                e[i] = c.clone();
                let e = self.element(&e)?;
                if !self.is_zero(&e)? {
                    out.push(e);
                }
            }
        }
        if k > 1 {
            out.push(self.element(&vec![self.ring.one(); k])?);
        }
        Ok((out, false))
    }

    fn delta(&self, b: &Ideal) -> Result<Vec<Ideal>> {
        self.exact_sub_layer()?;
        if b.is_zero() {
            return Ok(vec![Ideal::unit(&self.ring); self.summands.len()]);
        }
        self.summands.iter().map(|j| j.colon(b)).collect()
    }

    fn ann_of_chain(&self, chain: &GradedIdealChain) -> Result<Vec<Ideal>> {
        self.exact_sub_layer()?;
        // ann(Σ b_n x^n) = ∩ (J : b_n) = (J : lim b_n) for radical J
        self.delta(chain.limit())
    }

    fn grann_sub(&self, n: &Vec<Ideal>) -> Result<GradedIdealChain> {
        self.exact_sub_layer()?;
        let mut acc = Ideal::unit(&self.ring);
        for (k, j) in n.iter().zip(&self.summands) {
            if !k.is_zero() {
                acc = acc.intersect(&j.colon(k)?)?;
            }
        }
        Ok(GradedIdealChain::principal(&acc))
    }

    fn sub_contains(&self, n: &Vec<Ideal>, h: &Vec<Polynomial>) -> Result<bool> {
        for (k, f) in n.iter().zip(h) {
            if !k.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sub_leq(&self, a: &Vec<Ideal>, b: &Vec<Ideal>) -> Result<bool> {
        for (x, y) in a.iter().zip(b) {
            if !y.contains_ideal(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sub_sum(&self, a: &Vec<Ideal>, b: &Vec<Ideal>) -> Result<Vec<Ideal>> {
        let sums: Vec<Ideal> = a.iter().zip(b).map(|(x, y)| x.sum(y)).collect::<Result<_>>()?;
        self.sub_from(sums)
    }

    fn sub_is_zero(&self, n: &Vec<Ideal>) -> Result<bool> {
        Ok(n.iter().zip(&self.summands).all(|(k, j)| k == j))
    }

    fn sub_samples(&self, n: &Vec<Ideal>, _limit: usize) -> Result<Vec<Vec<Polynomial>>> {
        let mut out = Vec::new();
        for (i, k) in n.iter().enumerate() {
            for g in k.generators() {
                let mut e = self.zero();
                e[i] = g;
                let e = self.element(&e)?;
                if !self.is_zero(&e)? {
                    out.push(e);
                }
            }
        }
        Ok(out)
    }

    fn show_sub(&self, n: &Vec<Ideal>) -> String {
        let parts: Vec<String> = n
            .iter()
            .zip(&self.summands)
            .map(|(k, j)| if k == j { "0".to_string() } else { format!("{k}/{j}") })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::modules::grann_element;
    use crate::poly::{MonomialOrder, PolyRing};

    fn st() -> (Ring, FiniteCyclics) {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap());
        let g = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "s*t").unwrap()]).unwrap();
        (r, g)
    }

    #[test]
    fn grann_of_nodal_elements() {
        let (r, g) = st();
        let s = g.element(&[r.parse("s").unwrap()]).unwrap();
        let c = grann_element(&g, &s, 4).unwrap();
        assert!(c.certified && c.is_constant());
        assert_eq!(c.limit(), &Ideal::parse(&r, "t").unwrap());
        let both = g.element(&[r.parse("s+t").unwrap()]).unwrap();
        assert_eq!(
            grann_element(&g, &both, 4).unwrap().limit(),
            &Ideal::parse(&r, "s*t").unwrap()
        );
        assert!(grann_element(&g, &g.zero(), 4).unwrap().limit().is_unit());
    }

    #[test]
    fn grann_agrees_with_orbit_walk() {
        // oracle: the plain orbit intersection over the first few powers
        let (r, g) = st();
        for text in ["s", "t", "s+t", "1", "s^2+t"] {
            let h = g.element(&[r.parse(text).unwrap()]).unwrap();
            let walked = super::super::orbit_annihilators(&g, &h, 5).unwrap();
            let mut acc = Ideal::unit(&r);
            for a in &walked.anns {
                acc = acc.intersect(a).unwrap();
            }
            assert_eq!(&acc, grann_element(&g, &h, 5).unwrap().limit(), "{text}");
        }
    }

    #[test]
    fn ann_of_chain_examples() {
        let (r, g) = st();
        let n = g
            .ann_of_chain(&GradedIdealChain::principal(&Ideal::parse(&r, "t").unwrap()))
            .unwrap();
        let el = |s: &str| g.element(&[r.parse(s).unwrap()]).unwrap();
        assert!(g.sub_contains(&n, &el("s")).unwrap());
        assert!(!g.sub_contains(&n, &el("t")).unwrap());
        assert!(!g.sub_contains(&n, &el("s+t")).unwrap());
        let everything = g.ann_of_chain(&GradedIdealChain::principal(&Ideal::zero(&r))).unwrap();
        assert!(g.sub_contains(&everything, &el("s+t")).unwrap());
        let nothing = g.ann_of_chain(&GradedIdealChain::principal(&Ideal::unit(&r))).unwrap();
        assert!(g.sub_is_zero(&nothing).unwrap());
    }

    #[test]
    fn well_definedness_is_checked() {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["t"], MonomialOrder::Grevlex).unwrap());
        let j1 = Ideal::parse(&r, "t").unwrap();
        let j3 = Ideal::parse(&r, "t^3").unwrap();
        // e_0 in R/(t) mapped to e_1 in R/(t^3): needs (t^p) ⊆ (t^3), false
        let u = vec![vec![r.zero(), r.zero()], vec![r.one(), r.zero()]];
        assert!(FiniteCyclics::new(&r, vec![j1.clone(), j3.clone()], u).is_err());
        let u = vec![vec![r.zero(), r.one()], vec![r.zero(), r.zero()]];
        assert!(FiniteCyclics::new(&r, vec![j1, j3], u).is_ok());
    }

    #[test]
    fn torsion_detection() {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["t"], MonomialOrder::Grevlex).unwrap());
        let m = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "t^2").unwrap()]).unwrap();
        assert!(!m.is_x_torsion_free(4).unwrap());
        let t = m.element(&[r.parse("t").unwrap()]).unwrap();
        assert!(m.is_zero(&m.x_action(&t).unwrap()).unwrap());
        assert!(matches!(
            m.delta(&Ideal::parse(&r, "t").unwrap()),
            Err(Error::Refused(_))
        ));
    }
}

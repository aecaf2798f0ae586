//! Left modules over `R[x,f]`: graded annihilators, special annihilator
//! submodules and the special-ideal lattice.

mod checks;
mod finite;
mod lattice;
mod linear;
mod tower;

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, Ring};
use crate::skew::GradedIdealChain;

pub use checks::{ga15_equivalence_check, galois_checks, split_ga4, Check, Ga15Report, Ga4Report};
pub use finite::FiniteCyclics;
pub use lattice::{special_ideal_lattice, LatticeEntry, LatticeOptions, SpecialIdealLattice};
pub use linear::LinearModule;
pub use tower::{CyclicTower, TorsionVerdict, TowerKind};

/// The operations every backend provides. The submodule layer (`delta` and
/// below) may answer `Error::Refused` when the backend cannot represent
/// special annihilator submodules.
pub trait SkewModule {
    type Elem: Clone + Debug;
    type Sub: Clone + Debug;

    fn ring(&self) -> &Ring;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, h: &Self::Elem) -> Result<bool>;
    fn same_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    fn x_action(&self, h: &Self::Elem) -> Result<Self::Elem>;
    /// `(0 :_R h)`.
    fn ann(&self, h: &Self::Elem) -> Result<Ideal>;
    fn show(&self, h: &Self::Elem) -> String;

    /// A graded annihilator the backend knows in closed form.
    fn grann_exact(&self, _h: &Self::Elem) -> Result<Option<GradedIdealChain>> {
        Ok(None)
    }

    /// Whether a truncated orbit whose annihilators are all equal may be
    /// reported as a certified constant chain.
    fn trusts_constant_chains(&self) -> bool {
        false
    }

    fn is_x_torsion_free(&self, bound: usize) -> Result<bool>;
    /// Elements to run element-wise computations on, and whether they are
    /// all the elements of the module.
    fn samples(&self, limit: usize) -> Result<(Vec<Self::Elem>, bool)>;

    /// `Δ(b) = ann_M(b R[x,f])`.
    fn delta(&self, b: &Ideal) -> Result<Self::Sub>;
    /// `ann_M(B)` for a graded two-sided ideal `B`.
    fn ann_of_chain(&self, chain: &GradedIdealChain) -> Result<Self::Sub>;
    /// `grann(N)`.
    fn grann_sub(&self, n: &Self::Sub) -> Result<GradedIdealChain>;
    fn sub_contains(&self, n: &Self::Sub, h: &Self::Elem) -> Result<bool>;
    fn sub_leq(&self, a: &Self::Sub, b: &Self::Sub) -> Result<bool>;
    fn sub_sum(&self, a: &Self::Sub, b: &Self::Sub) -> Result<Self::Sub>;
    fn sub_is_zero(&self, n: &Self::Sub) -> Result<bool>;
    fn sub_samples(&self, n: &Self::Sub, limit: usize) -> Result<Vec<Self::Elem>>;
    fn show_sub(&self, n: &Self::Sub) -> String;
}

/// How an orbit `g, xg, x^2 g, ...` ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitEnd {
    /// `x^k g = x^start g` for the listed `k`: the orbit is periodic from `start`.
    Cycle { start: usize },
    /// `x^k g = 0` at the index after the listed annihilators.
    Zero,
    /// The bound was reached without repetition.
    Truncated,
}

/// Annihilators `a_m = ann(x^m g)` along an orbit.
#[derive(Clone, Debug)]
pub struct OrbitAnnihilators {
    pub anns: Vec<Ideal>,
    pub end: OrbitEnd,
}

/// Walks the orbit of `g` under `x` for at most `bound + 1` elements.
pub fn orbit_annihilators<M: SkewModule + ?Sized>(m: &M, g: &M::Elem, bound: usize) -> Result<OrbitAnnihilators> {
    let mut orbit: Vec<M::Elem> = Vec::new();
    let mut anns = Vec::new();
    let mut h = g.clone();
    for _ in 0..=bound {
        if m.is_zero(&h)? {
            return Ok(OrbitAnnihilators {
                anns,
                end: OrbitEnd::Zero,
            });
        }
        for (i, prev) in orbit.iter().enumerate() {
            if m.same_elem(prev, &h)? {
                return Ok(OrbitAnnihilators {
                    anns,
                    end: OrbitEnd::Cycle { start: i },
                });
            }
        }
        anns.push(m.ann(&h)?);
        orbit.push(h.clone());
        h = m.x_action(&h)?;
    }
    Ok(OrbitAnnihilators {
        anns,
        end: OrbitEnd::Truncated,
    })
}

impl OrbitAnnihilators {
    /// `b_n = ∩_{m ≥ n} a_m`, truncated to the listed `a_m` unless the
    /// orbit closed up.
    pub fn chain(&self, ring: &Ring) -> Result<GradedIdealChain> {
        let k = self.anns.len();
        let mut suffix: Vec<Ideal> = vec![Ideal::unit(ring); k + 1];
        for i in (0..k).rev() {
            suffix[i] = self.anns[i].intersect(&suffix[i + 1])?;
        }
        match self.end {
            OrbitEnd::Zero => GradedIdealChain::new(suffix, true),
            OrbitEnd::Cycle { start } => {
                // every member of the cycle recurs forever
                let periodic = suffix[start].clone();
                let mut entries: Vec<Ideal> = suffix[..start].to_vec();
                entries.push(periodic);
                GradedIdealChain::new(entries, true)
            }
            OrbitEnd::Truncated => {
                suffix.pop();
                GradedIdealChain::new(suffix, false)
            }
        }
    }
}

/// `grann(R[x,f] g)`: degree-`n` entry `∩_{m ≥ n} ann(x^m g)`.
pub fn grann_element<M: SkewModule + ?Sized>(m: &M, g: &M::Elem, bound: usize) -> Result<GradedIdealChain> {
    if let Some(c) = m.grann_exact(g)? {
        return Ok(c);
    }
    let orbit = orbit_annihilators(m, g, bound)?;
    let mut chain = orbit.chain(m.ring())?;
    // a constant truncated chain alone proves nothing: decreasing
    // annihilators give a constant chain too
    let steady = orbit.anns.windows(2).all(|w| w[0] == w[1]);
    if !chain.certified && steady && m.trusts_constant_chains() {
        chain.certified = true;
    }
    Ok(chain)
}

/// Entrywise intersection of the element annihilator chains.
pub fn grann_submodule<M: SkewModule + ?Sized>(m: &M, gens: &[M::Elem], bound: usize) -> Result<GradedIdealChain> {
    let mut acc = GradedIdealChain::principal(&Ideal::unit(m.ring()));
    for g in gens {
        acc = acc.intersect(&grann_element(m, g, bound)?)?;
    }
    Ok(acc)
}

/// `Δ^{-1}(N)`: the limit ideal of `grann(N)`.
pub fn delta_inverse<M: SkewModule + ?Sized>(m: &M, n: &M::Sub) -> Result<Ideal> {
    Ok(m.grann_sub(n)?.limit().clone())
}

pub(crate) fn refused(what: &str, backend: &str) -> Error {
    Error::Refused(format!("{what} is not available for {backend}"))
}

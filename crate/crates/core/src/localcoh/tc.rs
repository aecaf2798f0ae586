use std::fmt;

use super::cech::SopData;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::skew::GradedIdealChain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcMode {
    /// Check `c r^{p^n} ∈ (a_1^j, ..., a_d^j)^[p^n]` for `n = w0..=bound`.
    TestElement { c: Polynomial, w0: u32 },
    /// Decide from the limit of the graded annihilator chain of `[r/a^j]`.
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    UnknownAtBound,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Member => "true",
            Membership::NotMember => "false",
            Membership::UnknownAtBound => "unknown-at-bound",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TcReport {
    pub member: Membership,
    pub chain: Option<GradedIdealChain>,
    pub limit: Option<Ideal>,
    pub positive_height: Option<bool>,
    pub stabilized: bool,
    pub warnings: Vec<String>,
}

/// Whether `r ∈ ((a_1^j, ..., a_d^j)R)*`, probed up to `bound`.
pub fn tc_param_membership(sop: &SopData, r: &Polynomial, j: u64, mode: &TcMode, bound: usize) -> Result<TcReport> {
    sop.require()?;
    let ring = sop.ring();
    let r = ring.reduce(r)?;
    match mode {
        TcMode::TestElement { c, w0 } => {
            let c = ring.reduce(c)?;
            if c.is_zero() {
                return Err(Error::InvalidArgument("test element must be nonzero".into()));
            }
            let mut warnings = Vec::new();
            if !ring.in_r_circ(&c)? {
                warnings.push(format!("{c} lies in a minimal prime, so it is not a test element"));
            }
            let q = sop.power_ideal(j)?;
            let mut member = Membership::Member;
            for n in *w0 as usize..=bound {
                let lhs = &c * &r.frobenius(n as u32)?;
                if !q.frobenius_power(n as u32)?.contains(&lhs)? {
                    member = Membership::NotMember;
                    break;
                }
            }
            Ok(TcReport {
                member,
                chain: None,
                limit: None,
                positive_height: None,
                stabilized: false,
                warnings,
            })
        }
        TcMode::Chain => {
            let class = sop.class(&r, j)?;
            let est = sop.cech_limit(&class, bound)?;
            let positive = est.limit.has_positive_height()?;
            let member = match (est.stabilized, positive) {
                (true, true) => Membership::Member,
                (_, false) => Membership::NotMember,
                (false, true) => Membership::UnknownAtBound,
            };
            Ok(TcReport {
                member,
                chain: Some(est.chain),
                limit: Some(est.limit),
                positive_height: Some(positive),
                stabilized: est.stabilized,
                warnings: Vec::new(),
            })
        }
    }
}

use super::cech::SopData;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::skew::GradedIdealChain;

/// `q(b)` for one sample `b`: the limit of the graded annihilator chain of
/// `[b / a]`.
#[derive(Clone, Debug)]
pub struct EnescuReport {
    pub q: Ideal,
    pub b: Polynomial,
    pub chain: GradedIdealChain,
    pub qb: Ideal,
    pub stabilized: bool,
    pub positive_height: bool,
}

#[derive(Clone, Debug)]
pub struct ZqrReport {
    pub reports: Vec<EnescuReport>,
    /// Samples lying in `q`, for which `q(b)` is taken to be `R`.
    pub skipped: Vec<Polynomial>,
    /// Maximal members among the computed `q(b)`.
    pub maximal: Vec<Ideal>,
    /// `Some(true)` when a maximal member is generated by linear forms over
    /// the ambient ring, hence prime; `None` when no certificate was found.
    pub prime: Vec<Option<bool>>,
}

/// Linear generators (or none) certify primality of the lifted ideal.
fn linear_certificate(i: &Ideal) -> Option<bool> {
    if i.gb()
        .iter()
        .all(|g| g.degree().is_some_and(|d| d <= 1) && !g.is_constant())
    {
        Some(true)
    } else {
        None
    }
}

pub fn enescu_zqr(sop: &SopData, samples: &[Polynomial], bound: usize) -> Result<ZqrReport> {
    sop.require()?;
    if samples.is_empty() {
        return Err(Error::InvalidArgument("enescu needs at least one sample".into()));
    }
    let q = sop.ideal()?;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for b in samples {
        let b = sop.ring().reduce(b)?;
        if q.contains(&b)? {
            skipped.push(b);
            continue;
        }
        let est = sop.cech_limit(&sop.class(&b, 1)?, bound)?;
        let positive_height = est.limit.has_positive_height()?;
        reports.push(EnescuReport {
            q: q.clone(),
            b,
            chain: est.chain,
            qb: est.limit,
            stabilized: est.stabilized,
            positive_height,
        });
    }
    let mut maximal: Vec<Ideal> = Vec::new();
    for r in &reports {
        let dominated = reports
            .iter()
            .map(|o| Ok(o.qb != r.qb && o.qb.contains_ideal(&r.qb)?))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|d| d);
        if !dominated && !maximal.contains(&r.qb) {
            maximal.push(r.qb.clone());
        }
    }
    maximal.sort_by_key(|i| i.sort_key());
    let prime = maximal.iter().map(linear_certificate).collect();
    Ok(ZqrReport {
        reports,
        skipped,
        maximal,
        prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    #[test]
    fn regular_ring() {
        let r = QuotientRing::polynomial(&PolyRing::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap());
        let s = SopData::new(&r, &r.parse_list("x, y").unwrap()).unwrap();
        let rep = enescu_zqr(&s, &[r.one()], 4).unwrap();
        assert_eq!(rep.maximal, vec![Ideal::zero(&r)]);
        assert_eq!(rep.prime, vec![Some(true)]);
        assert!(enescu_zqr(&s, &[], 4).is_err());
    }

    #[test]
    fn nodal_ring() {
        let s = PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap();
        let r = QuotientRing::new(&s, &[parse_polynomial(&s, "s*t").unwrap()]).unwrap();
        let sop = SopData::new(&r, &r.parse_list("s+t").unwrap()).unwrap();
        let samples = r.parse_list("s, t, s+t").unwrap();
        let rep = enescu_zqr(&sop, &samples, 4).unwrap();
        assert_eq!(rep.skipped, vec![r.parse("s+t").unwrap()]);
        let st = Ideal::parse(&r, "s, t").unwrap();
        for e in &rep.reports {
            assert_eq!(e.qb, st);
            assert!(e.positive_height && e.stabilized);
        }
        assert_eq!(rep.maximal, vec![st]);
        assert_eq!(rep.prime, vec![Some(true)]);
    }
}

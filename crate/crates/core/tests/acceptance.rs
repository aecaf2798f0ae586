//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is always printed.

use std::sync::Arc;
use std::time::{Duration, Instant};

use frobskew::ideal::{Ideal, QuotientRing, Ring};
use frobskew::localcoh::{enescu_zqr, tc_param_membership, Membership, SopData, TcMode};
use frobskew::modules::{
    ga15_equivalence_check, galois_checks, grann_element, special_ideal_lattice, FiniteCyclics, LatticeOptions,
    LinearModule, SkewModule,
};
use frobskew::poly::{normal_form, parse_polynomial, reduced_groebner, MonomialOrder, PolyRing, Polynomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ring.nvars();
    let terms = rng.gen_range(1..=max_terms);
    let p = ring.characteristic() as i64;
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            (rng.gen_range(1..p), e.into_iter().collect())
        }),
    )
}

fn random_ring(rng: &mut ChaCha8Rng, primes: &[u32], max_vars: usize) -> Arc<PolyRing> {
    let p = *primes.choose(rng).unwrap();
    let n = rng.gen_range(1..=max_vars);
    let order = if rng.gen_bool(0.5) {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::Lex
    };
    PolyRing::new(p, &VARS[..n], order).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut members = 0;
    for case in 0..200 {
        let ring = random_ring(&mut rng, &[2, 3, 5], 3);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng, &ring, 4, 3)).collect();
        let gb = reduced_groebner(&ring, &gens).map_err(err)?;
        for _ in 0..3 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            ensure(
                reduced_groebner(&ring, &shuffled).map_err(err)? == gb,
                format!("case {case}: basis depends on generator order"),
            )?;
        }
        // a random combination of the generators is a member by construction
        let mut combo = Polynomial::zero(&ring);
        for g in &gens {
            combo = &combo + &(&random_poly(&mut rng, &ring, 2, 2) * g);
        }
        let q = QuotientRing::polynomial(&ring);
        let ideal = Ideal::new(&q, &gens).map_err(err)?;
        ensure(
            ideal.contains(&combo).map_err(err)?,
            format!("case {case}: combination not a member"),
        )?;
        for g in &gens {
            ensure(
                ideal.contains(g).map_err(err)?,
                format!("case {case}: generator not a member"),
            )?;
        }
        // f - NF(f) is always a member, and f is a member exactly when NF(f) = 0
        let f = random_poly(&mut rng, &ring, 4, 3);
        let nf = normal_form(&f, &gb).map_err(err)?;
        ensure(
            ideal.contains(&(&f - &nf)).map_err(err)?,
            format!("case {case}: f - NF(f) not a member"),
        )?;
        ensure(
            ideal.contains(&f).map_err(err)? == nf.is_zero(),
            format!("case {case}: membership disagrees with NF"),
        )?;
        members += 1;
    }
    Ok(format!("{members} ideals"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut positives = 0;
    for case in 0..500 {
        let ring = random_ring(&mut rng, &[2, 3], 2);
        let q = QuotientRing::polynomial(&ring);
        let e = rng.gen_range(1..=2u32);
        let r = random_poly(&mut rng, &ring, 2, 2);
        let mut gens: Vec<Polynomial> = (0..rng.gen_range(1..=2))
            .map(|_| random_poly(&mut rng, &ring, 3, 2))
            .collect();
        if rng.gen_bool(0.4) {
            // plant r^{p^e} so that positives occur
            gens.push(&r.frobenius(e).map_err(err)? * &random_poly(&mut rng, &ring, 1, 1));
        }
        let b = Ideal::new(&q, &gens).map_err(err)?;
        let pre = b.frobenius_preimage(e).map_err(err)?;
        let lhs = pre.contains(&r).map_err(err)?;
        let rhs = b.contains(&r.frobenius(e).map_err(err)?).map_err(err)?;
        ensure(
            lhs == rhs,
            format!("case {case}: preimage {lhs}, powering {rhs} for r = {r}, b = {b}, e = {e}"),
        )?;
        positives += lhs as usize;
    }
    Ok(format!("500 triples, {positives} members"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..100 {
        let p = *[2u32, 3].choose(&mut rng).unwrap();
        let ring = PolyRing::new(p, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let q = QuotientRing::polynomial(&ring);
        let k = rng.gen_range(1..=2);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut rng, &ring, 3, 2)).collect();
        let a = Ideal::new(&q, &gens).map_err(err)?;
        let closure = a.frobenius_closure(3).map_err(err)?;
        ensure(
            closure.stabilized,
            format!("case {case}: closure of {a} not stabilized"),
        )?;
        ensure(
            closure.closure() == &a,
            format!("case {case}: closure of {a} is {}", closure.closure()),
        )?;
    }
    Ok("100 ideals closed".into())
}

fn criterion_4() -> Outcome {
    let s = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    let r = QuotientRing::new(&s, &[parse_polynomial(&s, "z^2 - x^2*y").unwrap()]).map_err(err)?;
    let a = Ideal::parse(&r, "x, y").map_err(err)?;
    let z = r.parse("z").map_err(err)?;
    let closure = a.frobenius_closure(3).map_err(err)?;
    let witness = closure.witness_exponent(&z).map_err(err)?;
    ensure(witness == Some(1), format!("witness exponent {witness:?}"))?;
    // oracle: plain membership tests
    ensure(!a.contains(&z).map_err(err)?, "z is in (x,y)")?;
    let square = Ideal::parse(&r, "x^2, y^2").map_err(err)?;
    ensure(
        square.contains(&r.parse("z^2").map_err(err)?).map_err(err)?,
        "z^2 not in (x^2,y^2)",
    )?;
    Ok("z in (x,y)^F at e = 1, z not in (x,y)".into())
}

fn nodal_module() -> (Ring, FiniteCyclics) {
    let r = QuotientRing::polynomial(&PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap());
    let g = FiniteCyclics::frobenius(&r, vec![Ideal::parse(&r, "s*t").unwrap()]).unwrap();
    (r, g)
}

fn criterion_5() -> Outcome {
    let (r, g) = nodal_module();
    let gens: Vec<Vec<Polynomial>> = ["s", "t", "s+t", "1"]
        .iter()
        .map(|x| g.element(&[r.parse(x).unwrap()]))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let opts = LatticeOptions {
        bound: 8,
        ..LatticeOptions::default()
    };
    let l = special_ideal_lattice(&g, Some(&gens), &opts).map_err(err)?;
    let id = |s: &str| Ideal::parse(&r, s).unwrap();
    let mut want = vec![id("s"), id("t"), id("s*t"), id("1")];
    want.sort_by_key(|i| i.sort_key());
    let got: Vec<Ideal> = l.ideals().into_iter().cloned().collect();
    ensure(got == want, format!("lattice {got:?}"))?;
    for c in &l.checks {
        ensure(c.passed, format!("check '{}' failed", c.name))?;
    }
    let mut maxes = l.maximal_primes.clone();
    maxes.sort_by_key(|i| i.sort_key());
    ensure(maxes == vec![id("s"), id("t")], format!("maximal primes {maxes:?}"))?;
    ensure(
        l.smallest_positive_height == Some(id("s*t")),
        "smallest positive-height ideal",
    )?;
    // oracle: ((st) : s^k) = (t) and ((st) : (s+t)^k) = (st)
    let st = id("s*t");
    for k in 1..=8u64 {
        ensure(
            st.colon_element(&r.parse("s").unwrap().pow(k).unwrap()).map_err(err)? == id("t"),
            format!("((st):s^{k})"),
        )?;
        ensure(
            st.colon_element(&r.parse("s+t").unwrap().pow(k).unwrap())
                .map_err(err)?
                == st,
            format!("((st):(s+t)^{k})"),
        )?;
    }
    for (h, want) in gens.iter().zip([id("t"), id("s"), st.clone(), st.clone()]) {
        ensure(
            grann_element(&g, h, 8).map_err(err)?.limit() == &want,
            "grann limit of a generator",
        )?;
    }
    Ok(format!("{} checks, I(G) = {{(s), (t), (st), R}}", l.checks.len()))
}

/// Exhaustive oracle for Γ_x: elements whose orbit reaches zero.
fn torsion_by_orbits(m: &LinearModule) -> Vec<Vec<u32>> {
    let steps = m.all_elements().len();
    m.all_elements()
        .into_iter()
        .filter(|v| {
            let mut h = v.clone();
            for _ in 0..=steps {
                if h.iter().all(|&c| c == 0) {
                    return true;
                }
                h = m.apply_x(&h);
            }
            false
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let r = QuotientRing::polynomial(&PolyRing::new(2, &["t"], MonomialOrder::Grevlex).unwrap());
    let shapes: [&[&str]; 6] = [&["t"], &["t^2"], &["t^3"], &["t", "t"], &["t", "t^2"], &["t", "t", "t"]];
    let mut total_checks = 0;
    for shape in shapes {
        let ideals: Vec<Ideal> = shape.iter().map(|s| Ideal::parse(&r, s).unwrap()).collect();
        let h = FiniteCyclics::frobenius(&r, ideals)
            .map_err(err)?
            .to_linear()
            .map_err(err)?;
        ensure(h.all_elements().len() <= 8, "module too large")?;
        let oracle = torsion_by_orbits(&h);
        let gamma = h.gamma_x();
        ensure(
            gamma.elements().len() == oracle.len() && oracle.iter().all(|v| gamma.contains(v)),
            format!("{shape:?}: Γ_x disagrees with orbit oracle"),
        )?;
        // HSL oracle: least e with x^e killing every torsion element
        let mut e = 0;
        loop {
            let killed = oracle.iter().all(|v| {
                let mut w = v.clone();
                for _ in 0..e {
                    w = h.apply_x(&w);
                }
                w.iter().all(|&c| c == 0)
            });
            if killed {
                break;
            }
            e += 1;
        }
        ensure(
            h.hsl_number() == e,
            format!("{shape:?}: hsl {} vs oracle {e}", h.hsl_number()),
        )?;
        if *shape == ["t^2"] {
            ensure(e == 1, "R/(t^2) should have HSL number 1")?;
        }
        for c in galois_checks(&h).map_err(err)? {
            ensure(c.passed, format!("{shape:?}: {}", c.name))?;
            total_checks += 1;
        }
        // torsion-freeness of G/N for special N of G = H/Γ_x
        let g = h.quotient(&gamma);
        ensure(
            g.is_x_torsion_free(0).map_err(err)?,
            format!("{shape:?}: H/Γ_x has torsion"),
        )?;
        for c in galois_checks(&g).map_err(err)? {
            ensure(c.passed, format!("{shape:?} quotient: {}", c.name))?;
            total_checks += 1;
        }
        let report = ga15_equivalence_check(&h, &LatticeOptions::default()).map_err(err)?;
        ensure(
            report.passed(),
            format!("{shape:?}: equivalence counterexamples {:?}", report.counterexamples),
        )?;
        total_checks += report.checked;
    }
    Ok(format!("6 modules, {total_checks} checks, no counterexamples"))
}

fn nodal_sop() -> SopData {
    let s = PolyRing::new(2, &["s", "t"], MonomialOrder::Grevlex).unwrap();
    let r = QuotientRing::new(&s, &[parse_polynomial(&s, "s*t").unwrap()]).unwrap();
    SopData::new(&r, &r.parse_list("s+t").unwrap()).unwrap()
}

fn criterion_7() -> Outcome {
    let sop = nodal_sop();
    ensure(sop.is_verified(), "regular-sequence check failed")?;
    let r = sop.ring().clone();
    let s = r.parse("s").map_err(err)?;
    let rep = tc_param_membership(&sop, &s, 1, &TcMode::Chain, 4).map_err(err)?;
    let st = Ideal::parse(&r, "s, t").map_err(err)?;
    let chain = rep.chain.as_ref().unwrap();
    ensure(chain.is_constant() && chain.limit() == &st, format!("chain {chain}"))?;
    ensure(rep.positive_height == Some(true), "limit lacks positive height")?;
    ensure(rep.member == Membership::Member, format!("verdict {}", rep.member))?;
    // oracle: colons ((s+t)^q : s^q) and the integral identity s^2 = s(s+t)
    for m in 0..=4u32 {
        let q = 2u64.pow(m);
        let col = Ideal::new(&r, &[r.parse("s+t").unwrap().pow(q).unwrap()])
            .map_err(err)?
            .colon_element(&s.pow(q).unwrap())
            .map_err(err)?;
        ensure(col == st, format!("colon at q = {q}"))?;
    }
    ensure(
        r.parse("s^2").map_err(err)? == r.parse("s*(s+t)").map_err(err)?,
        "s^2 != s(s+t)",
    )?;
    let z = enescu_zqr(&sop, &r.parse_list("s, t").map_err(err)?, 4).map_err(err)?;
    ensure(
        z.maximal == vec![st.clone()],
        format!("maximal members {:?}", z.maximal),
    )?;
    ensure(z.prime == vec![Some(true)], "maximal member not certified prime")?;
    Ok("s in ((s+t))*, Z = {(s,t)}".into())
}

fn criterion_8() -> Outcome {
    let r = QuotientRing::polynomial(&PolyRing::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap());
    let sop = SopData::new(&r, &r.parse_list("x, y").unwrap()).map_err(err)?;
    let rep = tc_param_membership(&sop, &r.one(), 1, &TcMode::Chain, 4).map_err(err)?;
    ensure(rep.member == Membership::NotMember, format!("verdict {}", rep.member))?;
    let limit = rep.limit.unwrap();
    ensure(
        limit.is_zero() && rep.positive_height == Some(false),
        format!("limit {limit}"),
    )?;
    let z = enescu_zqr(&sop, &[r.one()], 4).map_err(err)?;
    ensure(
        z.maximal == vec![Ideal::zero(&r)],
        format!("maximal members {:?}", z.maximal),
    )?;
    Ok("1 not in (x,y)*, Z = {(0)}".into())
}

/// Recorded from the colon-chain computation itself.
const FERMAT_BASELINE: Membership = Membership::Member;

fn criterion_9() -> Outcome {
    let s = PolyRing::new(7, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    let r = QuotientRing::new(&s, &[parse_polynomial(&s, "x^3+y^3+z^3").unwrap()]).map_err(err)?;
    let sop = SopData::new(&r, &r.parse_list("x, y").unwrap()).map_err(err)?;
    ensure(sop.is_verified(), "x, y not a verified system of parameters")?;
    let z2 = r.parse("z^2").map_err(err)?;
    ensure(
        !Ideal::parse(&r, "x, y").unwrap().contains(&z2).map_err(err)?,
        "z^2 in (x,y)",
    )?;
    let mut verdicts = Vec::new();
    for n in 1..=2 {
        let rep = tc_param_membership(&sop, &z2, 1, &TcMode::Chain, n).map_err(err)?;
        let chain = rep.chain.as_ref().unwrap();
        ensure(chain.validate().map_err(err)?, "chain not ascending")?;
        let top = chain.entries().last().unwrap();
        ensure(
            top.has_positive_height().map_err(err)?,
            format!("top entry {top} has height 0"),
        )?;
        verdicts.push(rep.member);
    }
    ensure(
        verdicts.iter().all(|v| *v == FERMAT_BASELINE),
        format!("verdicts {verdicts:?} differ from baseline"),
    )?;
    Ok(format!("z^2 verdict {FERMAT_BASELINE} at bounds 1, 2"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "Gröbner determinism and membership",
            criterion_1,
            Duration::from_secs(60),
        ),
        ("Frobenius preimage oracle", criterion_2, Duration::from_secs(60)),
        ("regular-ring Frobenius closure", criterion_3, Duration::from_secs(120)),
        ("Frobenius closure instance", criterion_4, Duration::from_secs(5)),
        ("Galois and lattice suite", criterion_5, Duration::from_secs(30)),
        ("finite-backend exhaustive suite", criterion_6, Duration::from_secs(30)),
        (
            "Čech and tight closure, nodal curve",
            criterion_7,
            Duration::from_secs(30),
        ),
        ("regular-ring triviality", criterion_8, Duration::from_secs(10)),
        ("Fermat cubic stress check", criterion_9, Duration::from_secs(300)),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {}: {status} {name} ({elapsed:.2?}) {detail}", i + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

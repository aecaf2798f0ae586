use std::sync::Arc;

use frobskew::ideal::{Ideal, QuotientRing};
use frobskew::localcoh::{CechClass, SopData};
use frobskew::modules::{grann_element, FiniteCyclics, SkewModule};
use frobskew::poly::{normal_form, parse_polynomial, reduced_groebner, MonomialOrder, PolyRing, Polynomial};
use frobskew::radical::RadicalDecomposition;
use frobskew::skew::{GradedIdealChain, SkewPoly};
use proptest::prelude::*;

type Raw = Vec<(i64, Vec<u32>)>;

fn raw_poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Raw> {
    prop::collection::vec((-3i64..4, prop::collection::vec(0..=max_exp, nvars)), 0..=max_terms)
}

fn build(ring: &Arc<PolyRing>, raw: &Raw) -> Polynomial {
    Polynomial::from_terms(ring, raw.iter().map(|(c, e)| (*c, e.iter().copied().collect())))
}

fn poly_ring(p: u32, vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::new(p, vars, order).unwrap()
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::Grevlex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_basis_is_reduced_and_order_free(
        p in prop::sample::select(vec![2u32, 3, 5]),
        order in order_strategy(),
        gens in prop::collection::vec(raw_poly(3, 2, 3), 1..4),
        seed in any::<u64>(),
    ) {
        let ring = poly_ring(p, &["x", "y", "z"], order);
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(&ring, g)).collect();
        let gb = reduced_groebner(&ring, &polys).unwrap();
        for g in &gb {
            prop_assert_eq!(g.lc(), 1);
            let others: Vec<Polynomial> = gb.iter().filter(|h| *h != g).cloned().collect();
            prop_assert_eq!(&normal_form(g, &others).unwrap(), g);
        }
        for w in gb.windows(2) {
            prop_assert_eq!(ring.cmp_monomials(w[0].lm(), w[1].lm()), std::cmp::Ordering::Less);
        }
        for f in &polys {
            prop_assert!(normal_form(f, &gb).unwrap().is_zero());
        }
        let mut shuffled = polys.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed % 2 == 0 {
            shuffled.reverse();
        }
        prop_assert_eq!(reduced_groebner(&ring, &shuffled).unwrap(), gb);
    }

    #[test]
    fn preimage_matches_powering(
        p in prop::sample::select(vec![2u32, 3]),
        gens in prop::collection::vec(raw_poly(2, 3, 3), 1..3),
        r in raw_poly(2, 2, 3),
        e in 1u32..=2,
    ) {
        let ring = QuotientRing::polynomial(&poly_ring(p, &["x", "y"], MonomialOrder::Grevlex));
        let b = Ideal::new(&ring, &gens.iter().map(|g| build(ring.poly_ring(), g)).collect::<Vec<_>>()).unwrap();
        let r = build(ring.poly_ring(), &r);
        let pre = b.frobenius_preimage(e).unwrap();
        prop_assert_eq!(pre.contains(&r).unwrap(), b.contains(&r.frobenius(e).unwrap()).unwrap());
        prop_assert!(pre.contains_ideal(&b).unwrap());
    }

    #[test]
    fn ideal_operations_agree_with_membership(
        a in prop::collection::vec(raw_poly(2, 2, 3), 1..3),
        b in prop::collection::vec(raw_poly(2, 2, 3), 1..3),
        g in raw_poly(2, 2, 2),
    ) {
        let ring = QuotientRing::polynomial(&poly_ring(3, &["x", "y"], MonomialOrder::Grevlex));
        let mk = |v: &Vec<Raw>| Ideal::new(&ring, &v.iter().map(|x| build(ring.poly_ring(), x)).collect::<Vec<_>>()).unwrap();
        let (a, b) = (mk(&a), mk(&b));
        let both = a.intersect(&b).unwrap();
        prop_assert!(a.contains_ideal(&both).unwrap() && b.contains_ideal(&both).unwrap());
        prop_assert!(both.contains_ideal(&a.product(&b).unwrap()).unwrap());
        let g = build(ring.poly_ring(), &g);
        if !g.is_zero() {
            let col = a.colon_element(&g).unwrap();
            for h in col.gb() {
                prop_assert!(a.contains(&(h * &g)).unwrap());
            }
            prop_assert!(col.contains_ideal(&a).unwrap());
        }
        let printed = both.to_string();
        prop_assert_eq!(Ideal::parse(&ring, &printed).unwrap(), both);
    }

    #[test]
    fn radical_decompositions_match_ideal_arithmetic(
        left in prop::collection::btree_set(0usize..6, 1..4),
        right in prop::collection::btree_set(0usize..6, 1..4),
    ) {
        let ring = QuotientRing::polynomial(&poly_ring(2, &["x", "y", "z"], MonomialOrder::Grevlex));
        let primes = ["(x)", "(y)", "(z)", "(x,y)", "(y,z)", "(x,z)"];
        let mk = |s: &std::collections::BTreeSet<usize>| -> RadicalDecomposition {
            let all: Vec<RadicalDecomposition> = s
                .iter()
                .map(|&i| RadicalDecomposition::parse(&ring, primes[i]).unwrap())
                .collect();
            all.iter().skip(1).fold(all[0].clone(), |acc, d| acc.intersect(d).unwrap())
        };
        let (a, b) = (mk(&left), mk(&right));
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(meet.expand().unwrap(), a.expand().unwrap().intersect(&b.expand().unwrap()).unwrap());
        let col = b.colon(&a).unwrap();
        prop_assert_eq!(col.expand().unwrap(), b.expand().unwrap().colon(&a.expand().unwrap()).unwrap());
        prop_assert!(b.colon(&RadicalDecomposition::whole(&ring)).unwrap() == b);
        prop_assert!(b.colon(&b).unwrap().components().is_empty());
    }

    #[test]
    fn skew_multiplication_is_associative(
        u in prop::collection::vec((0u32..3, raw_poly(2, 1, 2)), 1..3),
        v in prop::collection::vec((0u32..3, raw_poly(2, 1, 2)), 1..3),
        w in prop::collection::vec((0u32..3, raw_poly(2, 1, 2)), 1..3),
    ) {
        let ring = QuotientRing::polynomial(&poly_ring(2, &["s", "t"], MonomialOrder::Grevlex));
        let mk = |terms: &Vec<(u32, Raw)>| {
            let mut acc = SkewPoly::zero(&ring);
            for (n, c) in terms {
                let term = SkewPoly::new(&ring, [(*n, build(ring.poly_ring(), c))]).unwrap();
                acc = acc.add(&term).unwrap();
            }
            acc
        };
        let (u, v, w) = (mk(&u), mk(&v), mk(&w));
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
    }

    #[test]
    fn skew_relation(n in 0u32..3, r in raw_poly(2, 2, 3)) {
        let ring = QuotientRing::polynomial(&poly_ring(3, &["s", "t"], MonomialOrder::Grevlex));
        let r = build(ring.poly_ring(), &r);
        let lhs = SkewPoly::x_power(&ring, n).mul(&SkewPoly::constant(&ring, &r).unwrap()).unwrap();
        let rhs = SkewPoly::new(&ring, [(n, r.frobenius(n).unwrap())]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_intersections_stay_ascending(
        a in prop::collection::vec(0usize..4, 1..4),
        b in prop::collection::vec(0usize..4, 1..4),
    ) {
        let ring = QuotientRing::polynomial(&poly_ring(2, &["x", "y"], MonomialOrder::Grevlex));
        // ascending ideals: (x^3 y^3) ⊆ (x^2 y^2) ⊆ (x y) ⊆ (x)
        let ladder: Vec<Ideal> = ["x^3*y^3", "x^2*y^2", "x*y", "x"].iter().map(|s| Ideal::parse(&ring, s).unwrap()).collect();
        let mk = |steps: &Vec<usize>| {
            let mut sorted = steps.clone();
            sorted.sort();
            GradedIdealChain::new(sorted.iter().map(|&i| ladder[i].clone()).collect(), true).unwrap()
        };
        let (ca, cb) = (mk(&a), mk(&b));
        prop_assert!(ca.validate().unwrap() && cb.validate().unwrap());
        let both = ca.intersect(&cb).unwrap();
        prop_assert!(both.validate().unwrap());
        prop_assert_eq!(both.limit(), &ca.limit().intersect(cb.limit()).unwrap());
    }

    #[test]
    fn cech_action_is_semilinear(r in raw_poly(2, 2, 3), c in raw_poly(2, 2, 3), j in 1u64..3) {
        let ring = QuotientRing::polynomial(&poly_ring(2, &["x", "y"], MonomialOrder::Grevlex));
        let sop = SopData::new(&ring, &ring.parse_list("x, y").unwrap()).unwrap();
        let (r, c) = (build(ring.poly_ring(), &r), build(ring.poly_ring(), &c));
        let class = CechClass { r: c.clone(), j };
        let scaled = CechClass { r: &r * &c, j };
        let lhs = sop.cech_x(&scaled).unwrap();
        let xc = sop.cech_x(&class).unwrap();
        let rhs = CechClass { r: &r.frobenius(1).unwrap() * &xc.r, j: xc.j };
        prop_assert!(sop.cech_equal(&lhs, &rhs).unwrap());
        if sop.cech_is_zero(&class).unwrap() {
            prop_assert!(sop.cech_is_zero(&xc).unwrap());
        }
    }

    #[test]
    fn grann_chains_ascend(r in raw_poly(2, 2, 3)) {
        let ring = QuotientRing::polynomial(&poly_ring(2, &["s", "t"], MonomialOrder::Grevlex));
        let g = FiniteCyclics::frobenius(&ring, vec![Ideal::parse(&ring, "s*t").unwrap()]).unwrap();
        let h = g.element(&[build(ring.poly_ring(), &r)]).unwrap();
        let chain = grann_element(&g, &h, 4).unwrap();
        prop_assert!(chain.validate().unwrap());
        prop_assert!(chain.limit().is_radical().unwrap());
    }
}

#[test]
fn frobenius_power_of_a_sum_is_the_sum_of_powers() {
    let s = poly_ring(3, &["x", "y"], MonomialOrder::Grevlex);
    let f = parse_polynomial(&s, "x + 2*y + 1").unwrap();
    let g = parse_polynomial(&s, "x^3 + 2*y^3 + 1").unwrap();
    assert_eq!(f.frobenius(1).unwrap(), g);
    assert_eq!(f.pow(3).unwrap(), g);
}

#[test]
fn linear_and_symbolic_backends_agree() {
    let ring = QuotientRing::polynomial(&poly_ring(2, &["t"], MonomialOrder::Grevlex));
    let sym = FiniteCyclics::frobenius(&ring, vec![Ideal::parse(&ring, "t^3").unwrap()]).unwrap();
    let lin = sym.to_linear().unwrap();
    for v in lin.all_elements() {
        let text = lin.show(&v);
        let h = sym.element(&[ring.parse(&text).unwrap()]).unwrap();
        assert_eq!(lin.ann(&v).unwrap(), sym.ann(&h).unwrap(), "{text}");
        assert_eq!(
            grann_element(&lin, &v, 8).unwrap().limit(),
            grann_element(&sym, &h, 8).unwrap().limit(),
            "{text}"
        );
    }
}

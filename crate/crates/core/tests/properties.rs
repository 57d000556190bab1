//! Invariants checked on randomized corpus instances.

use std::collections::BTreeMap;

use koszulator_core::complex::{ChainMap, Complex};
use koszulator_core::equivalence::{reduce_object, roundtrip_verify};
use koszulator_core::k0::euler_characteristic_fl;
use koszulator_core::kernel::ring::is_regular_on_ring;
use koszulator_core::koszul::koszul_cover;
use koszulator_core::module::fpmodule::FpModule;
use koszulator_core::module::resolution::{depth, projective_dimension, ring_depth, ProjDim};
use koszulator_core::serre::{find_regular_sequence, quotient_member, serre_member, SerreSpec};
use koszulator_core::{Field, Ideal, Matrix, QuotientRing};
use proptest::prelude::*;

fn rxy() -> QuotientRing {
    QuotientRing::parse(Field::Rationals, &["x", "y"], &["x*y"]).unwrap()
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

/// ax + by with a, b ≠ 0: a nonzerodivisor on ℚ[x,y]/(xy).
fn generic_linear() -> impl Strategy<Value = String> {
    (nonzero(), nonzero()).prop_map(|(a, b)| format!("({a})*x + ({b})*y"))
}

/// [R(−1) →(l) R] placed with its R in degree n.
fn two_term(r: &QuotientRing, l: &str, n: i64) -> Complex {
    let f = r.parse_element(l).unwrap();
    let e = r.degree(&f);
    Complex::free(r, n, vec![vec![0], vec![e]], vec![Matrix::from_rows(vec![vec![f]], 1).unwrap()]).unwrap()
}

fn sum_of_shifts(r: &QuotientRing, parts: &[(String, i64)]) -> Complex {
    let cs: Vec<Complex> = parts.iter().map(|(l, n)| two_term(r, l, *n)).collect();
    let refs: Vec<&Complex> = cs.iter().collect();
    Complex::direct_sum(&refs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    /// 0 → J/I → R/I → R/J → 0: the middle is in the subcategory iff both ends are.
    #[test]
    fn serre_closure_on_short_exact_sequences(l in generic_linear(), k in 1u32..=3, g in prop_oneof![Just("x"), Just("y"), Just("x + y"), Just("x^2")]) {
        let r = rxy();
        let i = Ideal::parse(&r, &[&format!("({l})^{k}")]).unwrap();
        let gp = r.parse_element(g).unwrap();
        let j = i.sum(&Ideal::new(&r, vec![gp.clone()]).unwrap()).unwrap();
        let ri = FpModule::cyclic(&i);
        let rj = FpModule::cyclic(&j);
        let sub = FpModule::subquotient(&ri, &Matrix::from_rows(vec![vec![gp]], 1).unwrap()).unwrap();
        for spec in [SerreSpec::FiniteLength, SerreSpec::SupportIn(Ideal::parse(&r, &["x", "y"]).unwrap()), SerreSpec::CodimAtLeast(1)] {
            let mid = serre_member(&ri, &spec).unwrap();
            let ends = serre_member(&sub, &spec).unwrap() && serre_member(&rj, &spec).unwrap();
            prop_assert_eq!(mid, ends, "{}", spec);
        }
        let (li, lj, ls) = (ri.length().unwrap().finite(), rj.length().unwrap().finite(), sub.length().unwrap().finite());
        if let (Some(a), Some(b), Some(c)) = (li, lj, ls) {
            prop_assert_eq!(a, b + c);
        }
    }

    #[test]
    fn regular_sequence_invariants(l in generic_linear(), k in 1u32..=2, seed in 0u64..1000) {
        let r = rxy();
        let j = Ideal::parse(&r, &[&format!("({l})^{k}"), "x^3", "y^3"]).unwrap();
        let s = find_regular_sequence(&j, &SerreSpec::FiniteLength, seed).unwrap();
        prop_assert_eq!(s.elements.len(), 1);
        let mut prev = Ideal::zero(&r);
        for f in &s.elements {
            prop_assert!(j.contains(f));
            prop_assert!(is_regular_on_ring(&r.quotient(&prev).unwrap(), f).unwrap());
            prev = prev.sum(&Ideal::new(&r, vec![f.clone()]).unwrap()).unwrap();
        }
        prop_assert!(quotient_member(&prev, &SerreSpec::FiniteLength).unwrap());
        let again = find_regular_sequence(&j, &SerreSpec::FiniteLength, seed).unwrap();
        prop_assert_eq!(&again.elements, &s.elements);
    }

    /// χ(cone f) = χ(Y) − χ(X) for f = (l, 1): [R →l R] → [R →l² R].
    #[test]
    fn cone_euler_additivity(l in generic_linear(), c in nonzero()) {
        let r = rxy();
        let x = two_term(&r, &l, 0);
        let y = two_term(&r, &format!("({l})^2"), 0);
        let lp = r.parse_element(&l).unwrap();
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::from_rows(vec![vec![lp]], 1).unwrap());
        comps.insert(1, Matrix::identity(&r, 1));
        let f = ChainMap::new(&x, &y, comps).unwrap().scale(&r.parse_element(&c.to_string()).unwrap());
        let (cone, _, _) = Complex::cone(&f).unwrap();
        let (cx, cy, cc) = (euler_characteristic_fl(&x).unwrap(), euler_characteristic_fl(&y).unwrap(), euler_characteristic_fl(&cone).unwrap());
        prop_assert_eq!((cx, cy), (2, 4));
        prop_assert_eq!(cc, cy - cx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    /// χ is the same at every node of a reduction certificate.
    #[test]
    fn euler_constant_along_certificates(parts in proptest::collection::vec((generic_linear(), 0i64..=2), 1..=2), seed in 0u64..100) {
        let r = rxy();
        let p = sum_of_shifts(&r, &parts);
        let (_, cert) = reduce_object(&p, &SerreSpec::FiniteLength, seed).unwrap();
        let chis: Vec<i64> = cert.nodes.iter().map(|n| euler_characteristic_fl(n).unwrap()).collect();
        let expected: i64 = parts.iter().map(|(_, n)| if n % 2 == 0 { 2 } else { -2 }).sum();
        prop_assert!(chis.iter().all(|&c| c == expected), "{:?}", chis);
    }
}

#[test]
fn auslander_buchsbaum_on_corpus() {
    let r = rxy();
    let dr = ring_depth(&r).unwrap();
    assert_eq!(dr, 1);
    for gens in [vec!["x - y"], vec!["x + 2*y"], vec!["(x - y)^2"], vec!["x^2 + y^2"], vec!["x^3 - y^3"]] {
        let m = FpModule::cyclic(&Ideal::parse(&r, &gens).unwrap());
        let ProjDim::Finite(pd) = projective_dimension(&m).unwrap() else { panic!("{gens:?} should have finite pd") };
        assert_eq!(pd + depth(&m).unwrap(), dr, "{gens:?}");
    }
    let free = FpModule::free(&r, vec![0, 1]);
    assert_eq!(projective_dimension(&free).unwrap(), ProjDim::Finite(0));
    assert_eq!(depth(&free).unwrap(), dr);

    let s = QuotientRing::parse(Field::Rationals, &["x", "y", "z"], &["x*y"]).unwrap();
    let m = FpModule::cyclic(&Ideal::parse(&s, &["x - z", "y - z"]).unwrap());
    let ProjDim::Finite(pd) = projective_dimension(&m).unwrap() else { panic!() };
    assert_eq!(pd + depth(&m).unwrap(), ring_depth(&s).unwrap());
}

#[test]
fn deterministic_for_fixed_seed() {
    let r = rxy();
    let p = sum_of_shifts(&r, &[("x - y".into(), 0), ("x - y".into(), 2)]);
    let a = roundtrip_verify(&p, &SerreSpec::FiniteLength, 11).unwrap();
    let b = roundtrip_verify(&p, &SerreSpec::FiniteLength, 11).unwrap();
    assert_eq!(format!("{:?}", a.certificate), format!("{:?}", b.certificate));
    assert_eq!(format!("{:?}", a.report), format!("{:?}", b.report));
    let c1 = koszul_cover(&p, &SerreSpec::FiniteLength, None, 5).unwrap();
    let c2 = koszul_cover(&p, &SerreSpec::FiniteLength, None, 5).unwrap();
    assert_eq!(c1.sequence.elements, c2.sequence.elements);
}

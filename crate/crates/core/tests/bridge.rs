use proptest::prelude::*;
use unireal::testing::{Gen, Values};
use unireal::{
    correspondence_check, to_classical, to_unified, AddMode, ClassicalFn, Error, IntervalSet, PiecewiseFn, XReal,
};

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 500, ..ProptestConfig::default() }
}

fn no_plus_inf(g: &mut Gen) -> PiecewiseFn {
    loop {
        let f = g.pwa();
        if !f.attains(&XReal::PlusInf) {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn classical_round_trip(seed in any::<u64>()) {
        let c = Gen::new(seed).classical();
        let back = to_classical(&to_unified(&c)).unwrap();
        prop_assert_eq!(back.as_pwa(), c.as_pwa());
    }

    #[test]
    fn unified_round_trip(seed in any::<u64>()) {
        let f = no_plus_inf(&mut Gen::new(seed));
        prop_assert_eq!(to_unified(&to_classical(&f).unwrap()), f);
    }

    #[test]
    fn to_classical_rejects_exactly_plus_inf(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        match to_classical(&f) {
            Ok(_) => prop_assert!(!f.attains(&XReal::PlusInf)),
            Err(e) => {
                prop_assert!(f.attains(&XReal::PlusInf));
                prop_assert_eq!(e, Error::PlusInfNotRepresentable);
            }
        }
    }

    #[test]
    fn correspondence_items(seed in any::<u64>()) {
        let c = Gen::new(seed).classical();
        let r = correspondence_check(&c);
        let u = to_unified(&c);
        prop_assert_eq!(u.dom(), c.dom());
        prop_assert!(r.dom_equal && r.epi_mismatches.is_empty() && r.convex_equal, "{:?}", c);
        let dm = c.dom();
        prop_assert_eq!(r.boundary.clone(), dm.difference(&dm.interior()));
        prop_assert!(r.discrepancies_localized(), "{:?}", r.continuity_discrepancies);
        prop_assert!(r.consistent(), "{:?}", r);
    }

    #[test]
    fn inf_addition_commutes_with_rewriting(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (f, h) = (g.classical(), g.classical());
        prop_assert_eq!(to_unified(&f.add(&h)), to_unified(&f).add(&to_unified(&h)));
    }

    #[test]
    fn sup_addition_differs_only_on_opposite_infinities(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = ClassicalFn::with_mode(g.pwa_with(Values::Extended, 3), AddMode::SupAdd).unwrap();
        let h = ClassicalFn::with_mode(g.pwa_with(Values::Extended, 3), AddMode::SupAdd).unwrap();
        let diagram = to_unified(&f).add(&to_unified(&h));
        let direct = to_unified(&f.add(&h));
        let mut pts = f.as_pwa().breakpoints().to_vec();
        pts.extend(h.as_pwa().breakpoints().iter().cloned());
        pts.extend((-8..=8).map(unireal::qi));
        for x in pts {
            let (a, b) = (f.eval(&x), h.eval(&x));
            let opposite = a.is_infinite() && b == a.neg();
            prop_assert_eq!(diagram.eval(&x) != direct.eval(&x), opposite, "x={}", x);
        }
    }
}

#[test]
fn psi_is_classical_indicator() {
    let c = IntervalSet::closed(unireal::qi(0), unireal::qi(1));
    let psi = ClassicalFn::psi(&c);
    assert_eq!(to_unified(&psi), PiecewiseFn::indicator(&c));
    let r = correspondence_check(&psi);
    assert_eq!(r.boundary, IntervalSet::from_points([unireal::qi(0), unireal::qi(1)]));
    assert!(r.consistent());
}

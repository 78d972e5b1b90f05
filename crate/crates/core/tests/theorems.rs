use num::Zero;
use proptest::prelude::*;
use unireal::oracle::cross_check;
use unireal::sampled::LAMBDAS;
use unireal::testing::Gen;
use unireal::{check_property, q, qi, triple_violation, PiecewiseFn, Property, Rational, Verdict, XReal};

fn holds(f: &PiecewiseFn, p: Property) -> bool {
    check_property(f, p).holds()
}

fn probes(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out: Vec<Rational> = (-8..=8).map(|j| q(j, 2)).collect();
    for b in f.breakpoints() {
        for d in [q(0, 1), q(1, 128), q(1, 2), qi(1)] {
            out.push(b + &d);
            out.push(b - &d);
        }
    }
    for i in 0..=f.breakpoints().len() {
        out.push(f.gap_sample(i));
    }
    out.sort();
    out.dedup();
    out
}

fn sampled_convex(f: &PiecewiseFn) -> bool {
    let pts = probes(f);
    pts.iter().all(|a| pts.iter().all(|b| LAMBDAS.iter().all(|&(n, d)| !triple_violation(f, a, b, &q(n, d)))))
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(500))]

    #[test]
    fn lsc_characterisations_agree_on_full_domain(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_full_dom();
        let v: Vec<bool> = [Property::LscFunction, Property::AllLevgtOpen, Property::AllSublevelsClosed, Property::EpiClosed]
            .iter()
            .map(|&p| holds(&f, p))
            .collect();
        prop_assert!(v.iter().all(|&b| b == v[0]), "{:?}: {:?}", f, v);
    }

    #[test]
    fn epi_closed_iff_sublevels_closed(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        prop_assert_eq!(holds(&f, Property::EpiClosed), holds(&f, Property::AllSublevelsClosed), "{:?}", f);
    }

    #[test]
    fn closed_sublevels_give_lsc_on_dom(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        if !f.is_trivial() && holds(&f, Property::AllSublevelsClosed) {
            prop_assert!(holds(&f, Property::LscOnDom), "{:?}", f);
        }
    }

    #[test]
    fn bounded_above_sublevels_closed_iff_closed_dom_and_lsc(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_bounded_above();
        prop_assume!(!f.is_trivial());
        let rhs = f.dom().is_closed() && holds(&f, Property::LscOnDom);
        prop_assert_eq!(holds(&f, Property::AllSublevelsClosed), rhs, "{:?}", f);
    }
}

#[test]
fn lsc_on_dom_does_not_force_closed_sublevels() {
    let mut g = Gen::new(11);
    let found = (0..500).map(|_| g.pwa()).any(|f| holds(&f, Property::LscOnDom) && !holds(&f, Property::AllSublevelsClosed));
    assert!(found);
}

proptest! {
    #![proptest_config(cfg(300))]

    #[test]
    fn exact_convexity_matches_sampled_inequality(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_proper_convex_dom();
        prop_assume!(f.is_proper() && f.dom().is_interval());
        prop_assert_eq!(holds(&f, Property::Convex), sampled_convex(&f), "{:?}", f);
    }

    #[test]
    fn improper_convex_structure(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_convex_improper();
        prop_assert!(holds(&f, Property::Convex));
        let dm = f.dom_minus();
        prop_assert!(dm.is_interval() || dm.is_empty());
        let pts = probes(&f);
        if f.attains(&XReal::MinusInf) {
            let int = dm.relative_interior();
            for x in pts.iter().filter(|x| int.contains(x)) {
                prop_assert_eq!(f.eval(x), XReal::MinusInf);
            }
            let lows: Vec<&Rational> = pts.iter().filter(|x| f.eval(x) == XReal::MinusInf).collect();
            for x0 in &lows {
                for x in pts.iter().filter(|x| dm.contains(x)) {
                    for (n, d) in LAMBDAS {
                        let l = q(n, d);
                        let y = &l * *x0 + (qi(1) - &l) * x;
                        prop_assert_eq!(f.eval(&y), XReal::MinusInf);
                    }
                }
            }
            let r = f.restrict(&dm);
            if holds(&r, Property::LscOnDom) {
                prop_assert!(f.value_class_set(XReal::is_finite).is_empty(), "{:?}", f);
            }
        }
        let zero = f.eval(&Rational::zero());
        for x in pts.iter().filter(|x| f.eval(x) == XReal::MinusInf && !f.eval(&-*x).is_nu()) {
            if zero != XReal::MinusInf && !zero.is_nu() {
                for l in [q(1, 4), q(1, 2), q(3, 4), qi(1)] {
                    prop_assert_eq!(f.eval(&(-&l * x)), XReal::PlusInf);
                }
            }
        }
    }

    #[test]
    fn sublinear_characterisations(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_cone_dom();
        let sub = check_property(&f, Property::Subadditive);
        let (cvx, ph) = (holds(&f, Property::Convex), holds(&f, Property::PosHomogeneous));
        let sl = holds(&f, Property::Sublinear);
        prop_assert_eq!(sl, cvx && ph);
        if sl {
            prop_assert!(sub.holds());
        }
        if ph && !sl {
            prop_assert!(sub.fails(), "{:?}", f);
        }
        if cvx && f.eval(&Rational::zero()).le(&XReal::zero()) && !sl {
            prop_assert!(sub.fails(), "{:?}", f);
        }
    }

    #[test]
    fn positive_homogeneity_by_scaling(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_cone_dom();
        let dom = f.dom();
        let law = probes(&f).iter().filter(|x| dom.contains(x)).all(|x| {
            [qi(0), q(1, 3), q(1, 2), qi(2), qi(3)].iter().all(|l| f.eval(&(l * x)) == f.eval(x).scale(l))
        });
        let lhs = holds(&f, Property::PosHomogeneous) && f.eval(&Rational::zero()) == XReal::zero();
        prop_assert_eq!(lhs, !dom.is_empty() && dom.is_cone() && law, "{:?}", f);
        let all_l = law && probes(&f).iter().filter(|x| dom.contains(x)).all(|x| f.eval(&-x) == f.eval(x).neg());
        let hom = holds(&f, Property::Homogeneous);
        if hom {
            prop_assert!(all_l);
        }
    }

    #[test]
    fn subadditive_values_at_zero(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = if g.chance(0.5) { g.pwa_cone_dom() } else { PiecewiseFn::indicator(&g.interval_set()) };
        if holds(&f, Property::Subadditive) {
            match f.eval(&Rational::zero()) {
                XReal::MinusInf => prop_assert!(f.value_class_set(XReal::is_finite).is_empty()),
                XReal::Finite(v) => prop_assert!(v >= Rational::zero()),
                _ => {}
            }
        }
    }

    #[test]
    fn linear_iff_homogeneous_and_additive(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = if g.chance(0.5) { g.pwa_cone_dom() } else { g.pwa_full_dom() };
        prop_assume!(f.dom().is_all());
        if holds(&f, Property::Linear) {
            prop_assert!(holds(&f, Property::PosHomogeneous) && holds(&f, Property::Odd));
            prop_assert!(!check_property(&f, Property::Additive).fails());
        } else {
            let hom = holds(&f, Property::PosHomogeneous) && holds(&f, Property::Odd);
            prop_assert!(!hom || check_property(&f, Property::Additive).fails(), "{:?}", f);
        }
    }

    #[test]
    fn continuous_affine_is_constant_or_proper(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa_affine_like();
        if holds(&f, Property::Affine) && holds(&f, Property::ContinuousOnDom) {
            prop_assert!(f.image(&f.dom()).singleton().is_some() || f.is_proper(), "{:?}", f);
        }
        if holds(&f, Property::Linear) && holds(&f, Property::ContinuousOnDom) {
            prop_assert!(f.is_finite_valued(), "{:?}", f);
        }
    }

    #[test]
    fn scaling_and_translation_stability(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = if g.chance(0.5) { g.pwa() } else { g.pwa_convex() };
        let l = XReal::Finite(q(g.int(1, 6), g.int(1, 3)));
        let c = XReal::Finite(g.rational());
        let s = g.rational();
        for p in [Property::LscOnDom, Property::Convex] {
            let v = holds(&f, p);
            prop_assert_eq!(v, holds(&f.scale(&l), p));
            prop_assert_eq!(v, holds(&f.shift_value(&c), p));
            prop_assert_eq!(v, holds(&f.translate(&s), p));
        }
        let a = holds(&f, Property::Affine);
        prop_assert_eq!(a, holds(&f.scale(&l.neg()), Property::Affine));
        if a {
            prop_assert!(holds(&f.scale(&XReal::zero()), Property::Affine));
        }
    }

    #[test]
    fn report_lattice_is_consistent(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        let r = unireal::classify_report(&f);
        prop_assert!(r.lattice_violations().is_empty(), "{:?}", r.lattice_violations());
    }
}

#[test]
fn premises_occur() {
    let mut g = Gen::new(5);
    let affine = (0..300).map(|_| g.pwa_affine_like()).filter(|f| holds(f, Property::Affine) && holds(f, Property::ContinuousOnDom)).count();
    assert!(affine > 30, "{affine}");
    let sl = (0..300).filter(|_| holds(&g.pwa_cone_dom(), Property::Sublinear)).count();
    assert!(sl > 10, "{sl}");
    let cvx = (0..300).filter(|_| holds(&g.pwa_proper_convex_dom(), Property::Convex)).count();
    assert!(cvx > 60 && cvx < 290, "{cvx}");
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn checker_agrees_with_grid_oracle(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = match g.int(0, 2) {
            0 => g.pwa(),
            1 => g.pwa_convex(),
            _ => g.pwa_cone_dom(),
        };
        let d = cross_check(&f);
        prop_assert!(d.is_empty(), "{:?}: {:?}", f, d);
    }

    #[test]
    fn witnesses_recheck(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        for p in Property::ALL {
            if let Verdict::Fails(w) = check_property(&f, p) {
                prop_assert!(w.recheck(p, &f), "{} {:?} {:?}", p, w, f);
            }
        }
    }
}

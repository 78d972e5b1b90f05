use num::Signed;
use proptest::prelude::*;
use unireal::testing::Gen;
use unireal::{
    barrier_cone, check_property, conjugate, lipschitz, monotone, q, qi, subdifferential, support_function, IntervalSet,
    PairVerdict, PiecewiseFn, Piece, Property, Rational, XReal,
};

fn grid() -> Vec<Rational> {
    (-40..=40).map(|j| q(j, 4)).collect()
}

fn abs() -> PiecewiseFn {
    PiecewiseFn::new(vec![qi(0)], vec![Piece::affine(qi(-1), qi(0)), Piece::affine(qi(1), qi(0))], vec![XReal::zero()])
        .unwrap()
}

#[test]
fn fenchel_young_on_ten_thousand_pairs() {
    let mut g = Gen::new(41);
    let mut pairs = 0usize;
    while pairs < 10_000 {
        let f = if g.chance(0.5) { g.pwa() } else { g.pwa_convex_proper() };
        let fs = conjugate(&f);
        let mut xs: Vec<Rational> = (0..10).map(|_| g.rational()).collect();
        xs.extend(f.breakpoints().iter().cloned());
        for x in &xs {
            let Some(fx) = f.eval(x).as_finite().cloned() else { continue };
            for _ in 0..20 {
                let s = g.rational();
                let Some(fss) = fs.eval(&s).as_finite().cloned() else { continue };
                assert!(&s * x <= &fx + &fss, "{f:?} x={x} s={s}");
                pairs += 1;
            }
        }
    }
}

#[test]
fn support_function_is_conjugate_of_indicator() {
    let mut g = Gen::new(42);
    for _ in 0..150 {
        let a = g.interval_set();
        let sigma = support_function(&a);
        let ci = conjugate(&PiecewiseFn::indicator(&a));
        for s in grid() {
            assert_eq!(sigma.eval(&s), ci.eval(&s), "{a} s={s}");
        }
        assert_eq!(sigma, ci, "{a}");
        assert_eq!(barrier_cone(&a), sigma.value_class_set(XReal::is_finite));
    }
}

#[test]
fn subdifferential_of_abs_at_zero() {
    let d = subdifferential(&abs(), &qi(0));
    assert_eq!(d, IntervalSet::closed(qi(-1), qi(1)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn conjugates_are_convex_and_lsc(seed in any::<u64>()) {
        let f = Gen::new(seed).pwa();
        prop_assume!(!f.is_trivial());
        let fs = conjugate(&f);
        for p in [Property::Convex, Property::LscOnDom, Property::EpiClosed] {
            prop_assert!(check_property(&fs, p).holds(), "{} of conjugate of {:?}", p, f);
        }
    }

    #[test]
    fn subdifferential_is_empty_off_the_reals(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.pwa();
        let mut xs: Vec<Rational> = f.breakpoints().to_vec();
        xs.push(g.rational());
        for x in xs.iter().filter(|x| !f.eval(x).is_finite()) {
            prop_assert!(subdifferential(&f, x).is_empty());
        }
    }

    #[test]
    fn subgradients_support_the_graph(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.pwa_convex_proper();
        let x0 = f.breakpoints().first().cloned().unwrap_or_else(|| g.rational());
        let Some(v0) = f.eval(&x0).as_finite().cloned() else { return Ok(()) };
        let d = subdifferential(&f, &x0);
        let slopes: Vec<Rational> = grid().into_iter().filter(|s| d.contains(s)).collect();
        for s in &slopes {
            for x in grid() {
                let rhs = XReal::Finite(&v0 + s * (&x - &x0));
                let v = f.eval(&x);
                prop_assert!(v.is_nu() || v.ge(&rhs), "{:?} x0={} s={} x={}", f, x0, s, x);
            }
        }
    }

    #[test]
    fn monotone_verdicts_are_sound(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.pwa();
        prop_assume!(!f.is_trivial());
        let x0 = f.dom().intersection(&IntervalSet::from_intervals([g.interval()]));
        let cones = [IntervalSet::nonneg(), IntervalSet::nonpos(), IntervalSet::all(), IntervalSet::point(qi(0))];
        for b in &cones {
            for strict in [false, true] {
                let v = monotone(&f, b, &x0, strict).unwrap();
                let pts: Vec<Rational> = grid().into_iter().filter(|x| x0.contains(x)).collect();
                match v {
                    PairVerdict::Holds(_) => {
                        for x1 in &pts {
                            for x2 in &pts {
                                let d = x2 - x1;
                                let (a, c) = (f.eval(x1), f.eval(x2));
                                if strict && b.contains(&d) && d != qi(0) {
                                    prop_assert!(a.lt(&c), "{:?} {} {} {}", f, b, x1, x2);
                                } else if !strict && b.contains(&d) {
                                    prop_assert!(a.le(&c), "{:?} {} {} {}", f, b, x1, x2);
                                }
                            }
                        }
                    }
                    PairVerdict::Fails(x1, x2) => {
                        let (a, c) = (f.eval(&x1), f.eval(&x2));
                        prop_assert!(x0.contains(&x1) && x0.contains(&x2));
                        if strict {
                            prop_assert!(!a.lt(&c) || x1 == x2);
                        } else {
                            prop_assert!(!a.le(&c));
                        }
                    }
                    PairVerdict::Unknown => prop_assert!(false, "exact cone gave unknown"),
                }
            }
        }
    }

    #[test]
    fn lipschitz_constant_is_tight(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = g.pwa_with(unireal::testing::Values::FiniteOrNu, 3);
        prop_assume!(!f.is_trivial());
        let x0 = f.dom();
        match lipschitz(&f, &x0, None).unwrap() {
            PairVerdict::Holds(Some(l)) => {
                let pts: Vec<Rational> = grid().into_iter().filter(|x| x0.contains(x)).collect();
                for x1 in &pts {
                    for x2 in &pts {
                        let (a, b) = (f.eval(x1).as_finite().cloned().unwrap(), f.eval(x2).as_finite().cloned().unwrap());
                        prop_assert!((a - b).abs() <= &l * (x1 - x2).abs());
                    }
                }
                if l > qi(0) {
                    let smaller = &l * q(99, 100);
                    prop_assert!(lipschitz(&f, &x0, Some(&smaller)).unwrap().fails());
                }
            }
            PairVerdict::Holds(None) => prop_assert!(false),
            PairVerdict::Fails(..) | PairVerdict::Unknown => {}
        }
    }
}

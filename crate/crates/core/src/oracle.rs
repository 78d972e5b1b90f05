//! Brute-force grid oracle for the exact property checkers.
//!
//! The oracle only evaluates `f` at rational points. One-sided limits are
//! extrapolated from two samples at distance `2^-30` and `2^-29`, which is
//! exact on an affine piece. A disagreement is either an oracle violation of
//! a property the checker reports as holding, or a checker witness that does
//! not re-verify.

use num::Zero;

use crate::arith::{q, qi, Rational, XReal};
use crate::pwa::{
    classify_report, pair_violation, triple_violation, PiecewiseFn, Property, PropertyReport,
    Verdict,
};

const LAMBDAS: [(i64, i64); 5] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub property: Property,
    pub detail: String,
}

fn eps() -> Rational {
    Rational::new(1.into(), num::BigInt::from(1u64 << 30))
}

/// Points probed by the oracle: a fixed lattice plus neighbourhoods of every breakpoint.
pub fn grid(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out: Vec<Rational> = (-12..=12).map(|j| q(j, 2)).collect();
    out.extend([qi(-50), qi(50)]);
    for b in f.breakpoints() {
        for d in [q(0, 1), q(1, 128), q(1, 3), qi(1)] {
            out.push(b + &d);
            out.push(b - &d);
        }
    }
    for i in 0..=f.breakpoints().len() {
        out.push(f.gap_sample(i));
    }
    let mirrored: Vec<Rational> = out.iter().map(|x| -x).collect();
    out.extend(mirrored);
    out.sort();
    out.dedup();
    out
}

/// A smaller grid for checks quantified over pairs.
fn coarse_grid(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out: Vec<Rational> = (-3..=3).map(qi).collect();
    for b in f.breakpoints() {
        for d in [q(0, 1), q(1, 128), qi(1)] {
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

fn near(x: &Rational, dir: i64, k: i64) -> Rational {
    x + eps() * qi(dir * k)
}

/// Extrapolated one-sided limit at `x` from the side `dir ∈ {-1, 1}`.
pub fn extrapolated_limit(f: &PiecewiseFn, x: &Rational, dir: i64) -> XReal {
    let (v1, v2) = (f.eval(&near(x, dir, 1)), f.eval(&near(x, dir, 2)));
    match (&v1, &v2) {
        (XReal::Finite(a), XReal::Finite(b)) => XReal::Finite(a * qi(2) - b),
        _ if v1 == v2 => v1,
        _ => XReal::Nu,
    }
}

fn limits(f: &PiecewiseFn, x: &Rational) -> [XReal; 2] {
    [extrapolated_limit(f, x, -1), extrapolated_limit(f, x, 1)]
}

fn lsc_violation(f: &PiecewiseFn, x: &Rational) -> bool {
    let v = f.eval(x);
    !v.is_nu() && v != XReal::MinusInf && limits(f, x).iter().any(|l| !l.is_nu() && l.lt(&v))
}

fn usc_violation(f: &PiecewiseFn, x: &Rational) -> bool {
    let v = f.eval(x);
    !v.is_nu() && v != XReal::PlusInf && limits(f, x).iter().any(|l| !l.is_nu() && l.gt(&v))
}

/// Levels worth testing: finite sampled values and limits, their midpoints, and offsets.
fn levels(f: &PiecewiseFn, pts: &[Rational]) -> Vec<Rational> {
    let mut vals = Vec::new();
    for x in pts {
        let [l, r] = limits(f, x);
        for v in [f.eval(x), l, r] {
            if let XReal::Finite(t) = v {
                vals.push(t);
            }
        }
    }
    vals.sort();
    vals.dedup();
    let mut out = vals.clone();
    for w in vals.windows(2) {
        out.push((&w[0] + &w[1]) / qi(2));
    }
    for v in &vals {
        out.push(v - qi(1));
        out.push(v + qi(1));
    }
    if out.is_empty() {
        out.push(Rational::zero());
    }
    out.sort();
    out.dedup();
    out
}

fn first<T>(
    items: impl IntoIterator<Item = T>,
    bad: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> Option<String> {
    items.into_iter().find(|t| bad(t)).map(|t| show(&t))
}

fn show_q(x: &Rational) -> String {
    crate::arith::render_rational(x)
}

/// A grid violation of `p`, if the oracle finds one.
pub fn oracle_violation(f: &PiecewiseFn, p: Property) -> Option<String> {
    let pts = grid(f);
    let trivial = pts.iter().all(|x| f.eval(x).is_nu());
    let empty = || trivial.then(|| "no grid point lies in the domain".to_string());
    let convex = |g: &PiecewiseFn| {
        let c = coarse_grid(g);
        for x1 in &c {
            for x2 in &c {
                for (n, d) in LAMBDAS {
                    if triple_violation(g, x1, x2, &q(n, d)) {
                        return Some(format!("triple ({}, {}, {n}/{d})", show_q(x1), show_q(x2)));
                    }
                }
            }
        }
        None
    };
    let pos_hom = || {
        let v0 = f.eval(&Rational::zero());
        if v0 != XReal::zero() && v0 != XReal::MinusInf {
            return Some(format!("f(0) = {v0}"));
        }
        for x in pts.iter().filter(|x| !x.is_zero()) {
            let v = f.eval(x);
            if v.is_nu() {
                continue;
            }
            for l in [q(1, 3), q(1, 2), qi(2), qi(3)] {
                if f.eval(&(&l * x)) != v.scale(&l) {
                    return Some(format!("scaling x={}, lambda={}", show_q(x), show_q(&l)));
                }
            }
        }
        None
    };
    let odd = || {
        first(
            &pts,
            |x| {
                let (a, b) = (f.eval(x), f.eval(&-*x));
                (!a.is_nu() || !b.is_nu()) && b != a.neg()
            },
            |x| format!("odd x={}", show_q(x)),
        )
    };
    let subadditive = |g: &PiecewiseFn| {
        let c = coarse_grid(g);
        for x1 in &c {
            for x2 in &c {
                if pair_violation(g, x1, x2) {
                    return Some(format!("pair ({}, {})", show_q(x1), show_q(x2)));
                }
            }
        }
        None
    };
    let lsc = || {
        first(
            &pts,
            |x| lsc_violation(f, x),
            |x| format!("lsc at {}", show_q(x)),
        )
    };
    let usc = || {
        first(
            &pts,
            |x| usc_violation(f, x),
            |x| format!("usc at {}", show_q(x)),
        )
    };
    match p {
        Property::LscOnDom => empty().or_else(lsc),
        Property::UscOnDom => empty().or_else(usc),
        Property::ContinuousOnDom => empty().or_else(lsc).or_else(usc),
        Property::LscFunction => empty()
            .or_else(|| {
                first(
                    &pts,
                    |x| f.eval(x).is_nu() && limits(f, x).iter().any(|l| !l.is_nu()),
                    |x| format!("{} in the closure of dom", show_q(x)),
                )
            })
            .or_else(lsc),
        Property::EpiClosed => {
            // (x, t) ∈ cl epi iff some one-sided limit is <= t.
            let ts = levels(f, &pts);
            for x in &pts {
                let v = f.eval(x);
                for t in &ts {
                    let tv = XReal::Finite(t.clone());
                    if !v.le(&tv) && limits(f, x).iter().any(|l| l.le(&tv)) {
                        return Some(format!("({}, {}) in cl epi", show_q(x), show_q(t)));
                    }
                }
            }
            None
        }
        Property::AllSublevelsClosed | Property::AllLevgtOpen => {
            let sub = p == Property::AllSublevelsClosed;
            let ts = levels(f, &pts);
            for x in &pts {
                let v = f.eval(x);
                for t in &ts {
                    let tv = XReal::Finite(t.clone());
                    let inside = |w: &XReal| if sub { w.le(&tv) } else { w.gt(&tv) };
                    let side_in = |dir| {
                        inside(&f.eval(&near(x, dir, 1))) && inside(&f.eval(&near(x, dir, 2)))
                    };
                    let bad = if sub {
                        !inside(&v) && (side_in(-1) || side_in(1))
                    } else {
                        inside(&v) && !(side_in(-1) && side_in(1))
                    };
                    if bad {
                        return Some(format!("t={} at x={}", show_q(t), show_q(x)));
                    }
                }
            }
            None
        }
        Property::Convex => convex(f),
        Property::Concave => convex(&f.negate()),
        Property::Affine => convex(f).or_else(|| convex(&f.negate())),
        Property::Linear => empty()
            .or_else(|| {
                first(
                    &pts,
                    |x| f.eval(x).is_nu(),
                    |x| format!("{} not in dom", show_q(x)),
                )
            })
            .or_else(|| {
                (f.eval(&Rational::zero()) != XReal::zero()).then(|| "f(0) != 0".to_string())
            })
            .or_else(|| convex(f))
            .or_else(|| convex(&f.negate())),
        Property::PosHomogeneous => empty().or_else(pos_hom),
        Property::Sublinear => empty().or_else(|| convex(f)).or_else(pos_hom),
        Property::Odd => odd(),
        Property::Homogeneous => empty().or_else(pos_hom).or_else(odd),
        Property::Subadditive => subadditive(f),
        Property::Superadditive => subadditive(&f.negate()),
        Property::Additive => subadditive(f).or_else(|| subadditive(&f.negate())),
    }
}

/// Compares every verdict of `report` against the oracle and re-verifies witnesses.
pub fn cross_check_report(f: &PiecewiseFn, report: &PropertyReport) -> Vec<Disagreement> {
    let mut out = Vec::new();
    for (&p, v) in &report.verdicts {
        let detail = match v {
            Verdict::Holds => {
                oracle_violation(f, p).map(|d| format!("checker holds, oracle found {d}"))
            }
            Verdict::Fails(w) => {
                (!w.recheck(p, f)).then(|| format!("witness {w} does not re-verify"))
            }
            Verdict::Unknown => None,
        };
        if let Some(detail) = detail {
            out.push(Disagreement {
                property: p,
                detail,
            });
        }
    }
    out
}

pub fn cross_check(f: &PiecewiseFn) -> Vec<Disagreement> {
    cross_check_report(f, &classify_report(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalSet;
    use crate::pwa::Piece;

    #[test]
    fn limits_are_exact_on_pieces() {
        let f = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::affine(qi(3), qi(1)), Piece::PlusInf],
            vec![XReal::Nu],
        )
        .unwrap();
        assert_eq!(extrapolated_limit(&f, &qi(0), -1), XReal::int(1));
        assert_eq!(extrapolated_limit(&f, &qi(0), 1), XReal::PlusInf);
    }

    #[test]
    fn oracle_finds_violations() {
        let x_pos = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::Nu, Piece::affine(qi(1), qi(0))],
            vec![XReal::Nu],
        )
        .unwrap();
        assert!(oracle_violation(&x_pos, Property::AllSublevelsClosed).is_some());
        assert!(oracle_violation(&x_pos, Property::EpiClosed).is_some());
        assert!(oracle_violation(&x_pos, Property::LscOnDom).is_none());
        assert!(oracle_violation(&x_pos, Property::Convex).is_none());
        let step = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::constant(qi(0)), Piece::constant(qi(1))],
            vec![XReal::int(1)],
        )
        .unwrap();
        assert!(oracle_violation(&step, Property::UscOnDom).is_none());
        assert!(oracle_violation(&step, Property::LscOnDom).is_some());
        assert!(oracle_violation(&step, Property::Convex).is_some());
    }

    #[test]
    fn fixtures_agree() {
        let fs = [
            PiecewiseFn::indicator(&IntervalSet::closed(qi(0), qi(1))),
            PiecewiseFn::new(
                vec![qi(0)],
                vec![Piece::MinusInf, Piece::PlusInf],
                vec![XReal::zero()],
            )
            .unwrap(),
            PiecewiseFn::identity(),
            PiecewiseFn::nu(),
            PiecewiseFn::new(
                vec![qi(-1), qi(1)],
                vec![Piece::Nu; 3],
                vec![XReal::MinusInf, XReal::PlusInf],
            )
            .unwrap(),
        ];
        for f in fs {
            assert_eq!(cross_check(&f), vec![], "{f:?}");
        }
    }
}

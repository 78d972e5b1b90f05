//! Falsification-grade checks for black-box functions of one variable.
//!
//! Nothing here ever answers `Holds`: a check either produces a witness that
//! can be re-evaluated, or reports `Unknown`.

use num::{BigInt, Signed};

use crate::arith::{q, qi, Rational, XReal};
use crate::pwa::{pair_violation_by, triple_violation_by, ConvexFault, Verdict, Witness};

/// Estimated behaviour of `f` when approaching a point from one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trend {
    /// The samples settle on this value (`nu` if they are all undefined).
    Settles(XReal),
    Unclear,
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::from(1) << k)
}

/// Probes `f(x + dir 2^-k)` for `k = 8, 12, ..., 48`.
pub fn side_trend(f: impl Fn(&Rational) -> XReal, x: &Rational, dir: i64) -> Trend {
    let vals: Vec<XReal> = (8..=48).step_by(4).map(|k| f(&(x + qi(dir) / pow2(k)))).collect();
    let tail = &vals[vals.len() - 4..];
    if tail.iter().all(|v| *v == tail[0]) && !tail[0].is_finite() {
        return Trend::Settles(tail[0].clone());
    }
    let fin: Option<Vec<&Rational>> = tail.iter().map(|v| v.as_finite()).collect();
    let Some(fin) = fin else { return Trend::Unclear };
    let last = fin[fin.len() - 1];
    let big = pow2(16);
    let rising = fin.windows(2).all(|w| w[0] < w[1]);
    let falling = fin.windows(2).all(|w| w[0] > w[1]);
    if last.abs() > big && (rising || falling) {
        return Trend::Settles(if rising { XReal::PlusInf } else { XReal::MinusInf });
    }
    let tol = (qi(1) + last.abs()) / pow2(20);
    if fin.windows(2).all(|w| (w[0] - w[1]).abs() <= tol) {
        return Trend::Settles(XReal::Finite(last.clone()));
    }
    Trend::Unclear
}

fn known_limits(f: &impl Fn(&Rational) -> XReal, x: &Rational) -> Vec<XReal> {
    [-1, 1]
        .into_iter()
        .filter_map(|d| match side_trend(f, x, d) {
            Trend::Settles(v) if !v.is_nu() => Some(v),
            _ => None,
        })
        .collect()
}

fn margin(v: &Rational) -> Rational {
    (qi(1) + v.abs()) * q(1, 64)
}

fn clearly_below(l: &XReal, v: &XReal) -> bool {
    match (l, v) {
        (XReal::Finite(a), XReal::Finite(b)) => a < &(b - margin(b)),
        _ => l.lt(v),
    }
}

fn semicontinuity(f: impl Fn(&Rational) -> XReal, x: &Rational, upper: bool) -> Verdict {
    let v = f(x);
    if v.is_nu() {
        return Verdict::Fails(Witness::Value { x: x.clone(), value: v });
    }
    let bad = known_limits(&f, x).iter().any(|l| if upper { clearly_below(&v, l) } else { clearly_below(l, &v) });
    if bad {
        Verdict::Fails(Witness::Point { x: x.clone() })
    } else {
        Verdict::Unknown
    }
}

pub fn sampled_lsc_at(f: impl Fn(&Rational) -> XReal, x: &Rational) -> Verdict {
    semicontinuity(f, x, false)
}

pub fn sampled_usc_at(f: impl Fn(&Rational) -> XReal, x: &Rational) -> Verdict {
    semicontinuity(f, x, true)
}

pub fn sampled_continuous_at(f: impl Fn(&Rational) -> XReal, x: &Rational) -> Verdict {
    match sampled_lsc_at(&f, x) {
        Verdict::Unknown => sampled_usc_at(&f, x),
        v => v,
    }
}

/// Semicontinuity at every probe inside the domain; probes outside are skipped.
pub fn sampled_on_dom(f: impl Fn(&Rational) -> XReal, probes: &[Rational], upper: bool) -> Verdict {
    for x in probes.iter().filter(|x| !f(x).is_nu()) {
        let v = semicontinuity(&f, x, upper);
        if v.fails() {
            return v;
        }
    }
    Verdict::Unknown
}

/// A probe outside the domain at which the function has a defined one-sided trend.
pub fn sampled_dom_closed(f: impl Fn(&Rational) -> XReal, probes: &[Rational]) -> Verdict {
    probes
        .iter()
        .find(|x| f(x).is_nu() && !known_limits(&f, x).is_empty())
        .map_or(Verdict::Unknown, |x| Verdict::Fails(Witness::NotInDom { x: x.clone() }))
}

pub const LAMBDAS: [(i64, i64); 5] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)];

pub fn sampled_convex(f: impl Fn(&Rational) -> XReal, probes: &[Rational]) -> Verdict {
    for x1 in probes {
        for x2 in probes {
            for (n, d) in LAMBDAS {
                let lambda = q(n, d);
                if triple_violation_by(&f, x1, x2, &lambda) {
                    let x = &lambda * x1 + (qi(1) - &lambda) * x2;
                    let fault = match (f(x1), f(x2), f(&x)) {
                        (_, _, XReal::Nu) => ConvexFault::DomGap,
                        (_, _, XReal::PlusInf) => ConvexFault::DomMinusGap,
                        (XReal::MinusInf, _, _) | (_, XReal::MinusInf, _) => ConvexFault::MinusInf,
                        _ => ConvexFault::Local,
                    };
                    return Verdict::Fails(Witness::Triple {
                        x1: x1.clone(),
                        x2: x2.clone(),
                        lambda,
                        fault,
                        negated: false,
                    });
                }
            }
        }
    }
    Verdict::Unknown
}

pub fn sampled_subadditive(f: impl Fn(&Rational) -> XReal, probes: &[Rational]) -> Verdict {
    for x1 in probes {
        for x2 in probes {
            if pair_violation_by(&f, x1, x2) {
                return Verdict::Fails(Witness::Pair { x1: x1.clone(), x2: x2.clone(), negated: false });
            }
        }
    }
    Verdict::Unknown
}

pub fn sampled_superadditive(f: impl Fn(&Rational) -> XReal, probes: &[Rational]) -> Verdict {
    match sampled_subadditive(|x: &Rational| f(x).neg(), probes) {
        Verdict::Fails(Witness::Pair { x1, x2, .. }) => Verdict::Fails(Witness::Pair { x1, x2, negated: true }),
        v => v,
    }
}

pub fn sampled_additive(f: impl Fn(&Rational) -> XReal, probes: &[Rational]) -> Verdict {
    match sampled_subadditive(&f, probes) {
        Verdict::Unknown => sampled_superadditive(&f, probes),
        v => v,
    }
}

/// Probes `0, ±j/4 (j ≤ 12), ±2^j (j ≤ 6)` plus the given extra points.
pub fn default_probes(extra: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = (-12..=12).map(|j| q(j, 4)).collect();
    for j in 0..=6 {
        out.push(pow2(j));
        out.push(-pow2(j));
    }
    out.extend(extra.iter().cloned());
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extfn::BlackBox;
    use num::Zero;

    fn inv_abs(at_zero: XReal) -> BlackBox {
        BlackBox::scalar("inv_abs", move |x| if x.is_zero() { at_zero.clone() } else { XReal::Finite(x.abs().recip()) })
    }

    #[test]
    fn trends() {
        let f = inv_abs(XReal::Nu);
        assert_eq!(side_trend(|x| f.eval1(x), &qi(0), 1), Trend::Settles(XReal::PlusInf));
        let Trend::Settles(XReal::Finite(l)) = side_trend(|x| f.eval1(x), &qi(2), -1) else { panic!() };
        assert!((l - q(1, 2)).abs() < q(1, 1 << 30));
        let wobble = |x: &Rational| XReal::int(((x - q(1, 3)).denom().bits() / 4 % 2) as i64);
        assert_eq!(side_trend(wobble, &q(1, 3), 1), Trend::Unclear);
    }

    #[test]
    fn inverse_abs_domains() {
        let nu0 = inv_abs(XReal::Nu);
        let probes = default_probes(&[]);
        assert_eq!(sampled_on_dom(|x| nu0.eval1(x), &probes, false), Verdict::Unknown);
        assert_eq!(sampled_on_dom(|x| nu0.eval1(x), &probes, true), Verdict::Unknown);
        assert_eq!(sampled_dom_closed(|x| nu0.eval1(x), &probes), Verdict::Fails(Witness::NotInDom { x: qi(0) }));
        let inf0 = inv_abs(XReal::PlusInf);
        assert_eq!(sampled_continuous_at(|x| inf0.eval1(x), &qi(0)), Verdict::Unknown);
        assert_eq!(sampled_dom_closed(|x| inf0.eval1(x), &probes), Verdict::Unknown);
        let h = |x: &Rational| x.abs().into_xreal().mul(&inf0.eval1(x));
        assert_eq!(sampled_lsc_at(h, &qi(0)), Verdict::Unknown);
        assert_eq!(sampled_usc_at(h, &qi(0)), Verdict::Fails(Witness::Point { x: qi(0) }));
    }

    trait IntoX {
        fn into_xreal(self) -> XReal;
    }
    impl IntoX for Rational {
        fn into_xreal(self) -> XReal {
            XReal::Finite(self)
        }
    }

    #[test]
    fn subadditivity_witness() {
        let sq = |x: &Rational| XReal::Finite(x * x);
        let v = sampled_subadditive(sq, &default_probes(&[]));
        let Verdict::Fails(Witness::Pair { x1, x2, .. }) = v else { panic!() };
        assert!(pair_violation_by(sq, &x1, &x2));
        assert_eq!(sampled_subadditive(|x: &Rational| XReal::Finite(x.abs()), &default_probes(&[])), Verdict::Unknown);
    }
}

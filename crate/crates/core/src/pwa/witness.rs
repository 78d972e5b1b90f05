use std::fmt;

use num::Zero;
use serde_json::{json, Value};

use super::{PiecewiseFn, Relation, Side};
use crate::arith::{qi, render_rational, Rational, XReal};
use crate::interval::IntervalSet;

/// Which family of level sets a level witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    /// `lev_{<=}(t)`, expected closed.
    Sublevel,
    /// `lev_{>}(t)`, expected open.
    StrictSuperlevel,
}

/// What a convexity triple exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexFault {
    /// The combination leaves the domain.
    DomGap,
    /// The combination hits `+inf` between two points below `+inf`.
    DomMinusGap,
    /// A `-inf` value forces `-inf` at the combination, which is larger.
    MinusInf,
    /// The convexity inequality fails near a breakpoint.
    Local,
}

/// Concrete evidence for a failed property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    EmptyDom,
    /// Semicontinuity fails at `x`.
    Point {
        x: Rational,
    },
    /// `x` lies in the closure of the domain (or in `R`) but not in the domain.
    NotInDom {
        x: Rational,
    },
    /// The value at `x` is not admissible.
    Value {
        x: Rational,
        value: XReal,
    },
    Level {
        kind: LevelKind,
        t: Rational,
        set: IntervalSet,
    },
    /// `(x, t)` lies in the closure of the epigraph but not in it.
    Epi {
        x: Rational,
        t: Rational,
    },
    /// `x = l x1 + (1 - l) x2` breaks convexity of `f`, or of `-f` when `negated`.
    Triple {
        x1: Rational,
        x2: Rational,
        lambda: Rational,
        fault: ConvexFault,
        negated: bool,
    },
    /// `f(l x) != l f(x)` for some `x` in the domain and `l > 0`.
    Scaling {
        x: Rational,
        lambda: Rational,
    },
    /// `f(-x) != -f(x)`.
    Odd {
        x: Rational,
    },
    /// `(x1, x2)` breaks subadditivity of `f`, or of `-f` when `negated`.
    Pair {
        x1: Rational,
        x2: Rational,
        negated: bool,
    },
}

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    Unknown,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Unknown => "unknown",
        }
    }

    /// Conjunction with short-circuit on the first failure.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Fails(_) => self,
            Verdict::Holds => other(),
            Verdict::Unknown => match other() {
                f @ Verdict::Fails(_) => f,
                _ => Verdict::Unknown,
            },
        }
    }

    pub fn from_witness(w: Option<Witness>) -> Verdict {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// Does `l x1 + (1 - l) x2` violate convexity of the domain or the epigraph?
pub fn triple_violation(f: &PiecewiseFn, x1: &Rational, x2: &Rational, lambda: &Rational) -> bool {
    triple_violation_by(|x| f.eval(x), x1, x2, lambda)
}

/// [`triple_violation`] for any evaluator.
pub fn triple_violation_by(
    f: impl Fn(&Rational) -> XReal,
    x1: &Rational,
    x2: &Rational,
    lambda: &Rational,
) -> bool {
    if !(lambda > &Rational::zero() && lambda < &qi(1)) {
        return false;
    }
    let (v1, v2) = (f(x1), f(x2));
    if v1.is_nu() || v2.is_nu() {
        return false;
    }
    let x = lambda * x1 + (qi(1) - lambda) * x2;
    let v = f(&x);
    if v.is_nu() {
        return true;
    }
    if v1 == XReal::PlusInf || v2 == XReal::PlusInf {
        return false;
    }
    if v1 == XReal::MinusInf || v2 == XReal::MinusInf {
        return v != XReal::MinusInf;
    }
    let bound = v1.scale(lambda).add(&v2.scale(&(qi(1) - lambda)));
    !v.le(&bound)
}

/// Does `(x1, x2)` violate `epi f + epi f ⊆ epi f` or `dom f + dom f ⊆ dom f`?
pub fn pair_violation(f: &PiecewiseFn, x1: &Rational, x2: &Rational) -> bool {
    pair_violation_by(|x| f.eval(x), x1, x2)
}

/// [`pair_violation`] for any evaluator.
pub fn pair_violation_by(f: impl Fn(&Rational) -> XReal, x1: &Rational, x2: &Rational) -> bool {
    let (v1, v2) = (f(x1), f(x2));
    if v1.is_nu() || v2.is_nu() {
        return false;
    }
    let v = f(&(x1 + x2));
    if v.is_nu() {
        return true;
    }
    if v1 == XReal::PlusInf || v2 == XReal::PlusInf {
        return false;
    }
    if v1 == XReal::MinusInf || v2 == XReal::MinusInf {
        return v != XReal::MinusInf;
    }
    !v.le(&v1.add(&v2))
}

pub(crate) fn lsc_fails_at(f: &PiecewiseFn, x: &Rational) -> bool {
    let v = f.eval(x);
    if v.is_nu() || v == XReal::MinusInf {
        return false;
    }
    [Side::Left, Side::Right].iter().any(|&s| {
        let l = f.one_sided_limit(x, s);
        !l.is_nu() && l.lt(&v)
    })
}

pub(crate) fn usc_fails_at(f: &PiecewiseFn, x: &Rational) -> bool {
    lsc_fails_at(&f.negate(), x)
}

impl Witness {
    /// Re-verifies the witness against `f` for the named property.
    pub fn recheck(&self, property: super::Property, f: &PiecewiseFn) -> bool {
        use super::Property as P;
        match self {
            Witness::EmptyDom => f.is_trivial(),
            Witness::Point { x } => match property {
                P::UscOnDom => usc_fails_at(f, x),
                P::ContinuousOnDom => lsc_fails_at(f, x) || usc_fails_at(f, x),
                _ => lsc_fails_at(f, x),
            },
            Witness::NotInDom { x } => {
                let dom = f.dom();
                !dom.contains(x) && (property == P::Linear || dom.closure().contains(x))
            }
            Witness::Value { x, value } => {
                let v = f.eval(x);
                v == *value
                    && match property {
                        P::Linear => v != XReal::zero(),
                        _ => v != XReal::zero() && v != XReal::MinusInf,
                    }
            }
            Witness::Level { kind, t, set } => match kind {
                LevelKind::Sublevel => f.level_set(Relation::Le, t) == *set && !set.is_closed(),
                LevelKind::StrictSuperlevel => {
                    f.level_set(Relation::Gt, t) == *set && !set.is_open()
                }
            },
            Witness::Epi { x, t } => {
                let tv = XReal::Finite(t.clone());
                !f.eval(x).le(&tv)
                    && [Side::Left, Side::Right]
                        .iter()
                        .any(|&s| f.one_sided_limit(x, s).le(&tv))
            }
            Witness::Triple {
                x1,
                x2,
                lambda,
                negated,
                ..
            } => {
                let g = if *negated { f.negate() } else { f.clone() };
                triple_violation(&g, x1, x2, lambda)
            }
            Witness::Scaling { x, lambda } => {
                let v = f.eval(x);
                !v.is_nu() && lambda > &Rational::zero() && f.eval(&(lambda * x)) != v.scale(lambda)
            }
            Witness::Odd { x } => {
                let (a, b) = (f.eval(x), f.eval(&-x));
                (!a.is_nu() || !b.is_nu()) && b != a.neg()
            }
            Witness::Pair { x1, x2, negated } => {
                let g = if *negated { f.negate() } else { f.clone() };
                pair_violation(&g, x1, x2)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let r = render_rational;
        match self {
            Witness::EmptyDom => json!({"kind": "empty-dom"}),
            Witness::Point { x } => json!({"kind": "point", "x": r(x)}),
            Witness::NotInDom { x } => json!({"kind": "not-in-dom", "x": r(x)}),
            Witness::Value { x, value } => {
                json!({"kind": "value", "x": r(x), "value": value.to_string()})
            }
            Witness::Level { kind, t, set } => json!({
                "kind": match kind { LevelKind::Sublevel => "sublevel", LevelKind::StrictSuperlevel => "strict-superlevel" },
                "t": r(t),
                "set": set.to_string(),
            }),
            Witness::Epi { x, t } => json!({"kind": "epi-closure", "x": r(x), "t": r(t)}),
            Witness::Triple {
                x1,
                x2,
                lambda,
                fault,
                negated,
            } => json!({
                "kind": "triple",
                "x1": r(x1),
                "x2": r(x2),
                "lambda": r(lambda),
                "fault": format!("{fault:?}").to_lowercase(),
                "negated": negated,
            }),
            Witness::Scaling { x, lambda } => {
                json!({"kind": "scaling", "x": r(x), "lambda": r(lambda)})
            }
            Witness::Odd { x } => json!({"kind": "odd", "x": r(x)}),
            Witness::Pair { x1, x2, negated } => {
                json!({"kind": "pair", "x1": r(x1), "x2": r(x2), "negated": negated})
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = render_rational;
        match self {
            Witness::EmptyDom => f.write_str("empty domain"),
            Witness::Point { x } => write!(f, "x={}", r(x)),
            Witness::NotInDom { x } => write!(f, "x={} not in dom", r(x)),
            Witness::Value { x, value } => write!(f, "f({})={}", r(x), value),
            Witness::Level { t, set, .. } => write!(f, "t={}: {}", r(t), set),
            Witness::Epi { x, t } => write!(f, "({}, {}) in cl epi", r(x), r(t)),
            Witness::Triple {
                x1,
                x2,
                lambda,
                negated,
                ..
            } => {
                write!(
                    f,
                    "x1={}, x2={}, lambda={}{}",
                    r(x1),
                    r(x2),
                    r(lambda),
                    if *negated { " (of -f)" } else { "" }
                )
            }
            Witness::Scaling { x, lambda } => write!(f, "x={}, lambda={}", r(x), r(lambda)),
            Witness::Odd { x } => write!(f, "x={}", r(x)),
            Witness::Pair { x1, x2, negated } => {
                write!(
                    f,
                    "x1={}, x2={}{}",
                    r(x1),
                    r(x2),
                    if *negated { " (of -f)" } else { "" }
                )
            }
        }
    }
}

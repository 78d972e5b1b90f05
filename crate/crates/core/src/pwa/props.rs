//! Decision procedures for the semicontinuity, level-set, convexity and
//! algebraic properties of piecewise-affine functions.

use std::fmt;
use std::str::FromStr;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::witness::{
    lsc_fails_at, pair_violation, triple_violation, usc_fails_at, ConvexFault, LevelKind, Verdict,
    Witness,
};
use super::{Piece, PiecewiseFn, Relation, Side};
use crate::arith::{q, qi, Rational, XReal};
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    LscOnDom,
    UscOnDom,
    ContinuousOnDom,
    LscFunction,
    EpiClosed,
    AllSublevelsClosed,
    AllLevgtOpen,
    Convex,
    Concave,
    Affine,
    Linear,
    PosHomogeneous,
    Subadditive,
    Superadditive,
    Additive,
    Sublinear,
    Odd,
    Homogeneous,
}

impl Property {
    pub const ALL: [Property; 18] = [
        Property::LscOnDom,
        Property::UscOnDom,
        Property::ContinuousOnDom,
        Property::LscFunction,
        Property::EpiClosed,
        Property::AllSublevelsClosed,
        Property::AllLevgtOpen,
        Property::Convex,
        Property::Concave,
        Property::Affine,
        Property::Linear,
        Property::PosHomogeneous,
        Property::Subadditive,
        Property::Superadditive,
        Property::Additive,
        Property::Sublinear,
        Property::Odd,
        Property::Homogeneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::LscOnDom => "lsc-on-dom",
            Property::UscOnDom => "usc-on-dom",
            Property::ContinuousOnDom => "continuous-on-dom",
            Property::LscFunction => "lsc-function",
            Property::EpiClosed => "epi-closed",
            Property::AllSublevelsClosed => "all-sublevels-closed",
            Property::AllLevgtOpen => "all-levgt-open",
            Property::Convex => "convex",
            Property::Concave => "concave",
            Property::Affine => "affine",
            Property::Linear => "linear",
            Property::PosHomogeneous => "pos-homogeneous",
            Property::Subadditive => "subadditive",
            Property::Superadditive => "superadditive",
            Property::Additive => "additive",
            Property::Sublinear => "sublinear",
            Property::Odd => "odd",
            Property::Homogeneous => "homogeneous",
        }
    }

    /// Exact properties never report `Unknown`.
    pub fn is_exact(self) -> bool {
        !matches!(
            self,
            Property::Subadditive | Property::Superadditive | Property::Additive
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

pub fn check_property(f: &PiecewiseFn, p: Property) -> Verdict {
    match p {
        Property::LscOnDom => semicontinuity(f, lsc_fails_at),
        Property::UscOnDom => semicontinuity(f, usc_fails_at),
        Property::ContinuousOnDom => {
            semicontinuity(f, |f, x| lsc_fails_at(f, x) || usc_fails_at(f, x))
        }
        Property::LscFunction => lsc_function(f),
        Property::EpiClosed => Verdict::from_witness(epi_closure_gap(f)),
        Property::AllSublevelsClosed => level_topology(f, LevelKind::Sublevel),
        Property::AllLevgtOpen => level_topology(f, LevelKind::StrictSuperlevel),
        Property::Convex => Verdict::from_witness(convexity_witness(f, false)),
        Property::Concave => Verdict::from_witness(convexity_witness(f, true)),
        Property::Affine => {
            check_property(f, Property::Convex).and(|| check_property(f, Property::Concave))
        }
        Property::Linear => linear(f),
        Property::PosHomogeneous => pos_homogeneous(f),
        Property::Subadditive => subadditive(f, false),
        Property::Superadditive => subadditive(f, true),
        Property::Additive => subadditive(f, false).and(|| subadditive(f, true)),
        Property::Sublinear => nonempty(f)
            .and(|| check_property(f, Property::Convex))
            .and(|| pos_homogeneous(f)),
        Property::Odd => Verdict::from_witness(odd_witness(f)),
        Property::Homogeneous => pos_homogeneous(f).and(|| Verdict::from_witness(odd_witness(f))),
    }
}

fn nonempty(f: &PiecewiseFn) -> Verdict {
    if f.is_trivial() {
        Verdict::Fails(Witness::EmptyDom)
    } else {
        Verdict::Holds
    }
}

fn semicontinuity(f: &PiecewiseFn, fails_at: impl Fn(&PiecewiseFn, &Rational) -> bool) -> Verdict {
    // Inside a gap every piece is continuous, so only breakpoints matter.
    nonempty(f).and(|| {
        Verdict::from_witness(
            f.breakpoints()
                .iter()
                .find(|b| fails_at(f, b))
                .map(|b| Witness::Point { x: b.clone() }),
        )
    })
}

fn lsc_function(f: &PiecewiseFn) -> Verdict {
    nonempty(f)
        .and(|| {
            let dom = f.dom();
            let missing = dom.closure().difference(&dom);
            Verdict::from_witness(
                missing
                    .intervals()
                    .first()
                    .map(|iv| Witness::NotInDom { x: iv.sample() }),
            )
        })
        .and(|| semicontinuity(f, lsc_fails_at))
}

/// Values of `t` at which the topology of level sets can change.
pub(crate) fn critical_values(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out = Vec::new();
    for (k, b) in f.breakpoints().iter().enumerate() {
        let vals = [
            f.point_values()[k].clone(),
            f.one_sided_limit(b, Side::Left),
            f.one_sided_limit(b, Side::Right),
        ];
        out.extend(vals.iter().filter_map(|v| v.as_finite().cloned()));
    }
    for p in f.pieces() {
        if let Piece::Affine { slope, intercept } = p {
            if slope.is_zero() {
                out.push(intercept.clone());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One test level below, at, between and above every critical value.
pub(crate) fn test_levels(f: &PiecewiseFn) -> Vec<Rational> {
    let cs = critical_values(f);
    let Some(first) = cs.first() else {
        return vec![Rational::zero()];
    };
    let mut out = vec![first - qi(1)];
    for (i, c) in cs.iter().enumerate() {
        out.push(c.clone());
        match cs.get(i + 1) {
            Some(next) => out.push((c + next) / qi(2)),
            None => out.push(c + qi(1)),
        }
    }
    out
}

fn level_topology(f: &PiecewiseFn, kind: LevelKind) -> Verdict {
    for t in test_levels(f) {
        let (set, good) = match kind {
            LevelKind::Sublevel => {
                let s = f.level_set(Relation::Le, &t);
                let ok = s.is_closed();
                (s, ok)
            }
            LevelKind::StrictSuperlevel => {
                let s = f.level_set(Relation::Gt, &t);
                let ok = s.is_open();
                (s, ok)
            }
        };
        if !good {
            return Verdict::Fails(Witness::Level { kind, t, set });
        }
    }
    Verdict::Holds
}

/// A point of `cl(epi f) \ epi f`, found from the one-sided behaviour at
/// breakpoints.
fn epi_closure_gap(f: &PiecewiseFn) -> Option<Witness> {
    for (k, b) in f.breakpoints().iter().enumerate() {
        let sides = [&f.pieces()[k], &f.pieces()[k + 1]];
        let mut m: Option<XReal> = None;
        for p in sides {
            let l = match p {
                Piece::Affine { .. } | Piece::MinusInf => p.eval(b),
                _ => continue,
            };
            m = Some(match m {
                Some(cur) => cur.min_ext(&l),
                None => l,
            });
        }
        let Some(m) = m else { continue };
        let v = &f.point_values()[k];
        if v.le(&m) {
            continue;
        }
        let t = match (&m, v) {
            (XReal::Finite(t), _) => t.clone(),
            (_, XReal::Finite(c)) => c - qi(1),
            _ => Rational::zero(),
        };
        return Some(Witness::Epi { x: b.clone(), t });
    }
    None
}

fn first_point(s: &IntervalSet) -> Option<Rational> {
    s.intervals().first().map(Interval::sample)
}

/// Points `x1 < x < x2` with `x1, x2 ∈ s` and `x ∉ s`, for a disconnected `s`.
fn straddle(s: &IntervalSet) -> Option<(Rational, Rational, Rational)> {
    let parts = s.intervals();
    if parts.len() < 2 {
        return None;
    }
    let (a, c) = (&parts[0], &parts[1]);
    let (lo, hi) = (a.hi().value()?, c.lo().value()?);
    let hole = IntervalSet::closed(lo.clone(), hi.clone()).difference(s);
    let x = first_point(&hole)?;
    Some((a.sample(), x, c.sample()))
}

fn lambda_for(x1: &Rational, x: &Rational, x2: &Rational) -> Rational {
    (x2 - x) / (x2 - x1)
}

fn triple(
    x1: Rational,
    x2: Rational,
    lambda: Rational,
    fault: ConvexFault,
    negated: bool,
) -> Witness {
    Witness::Triple {
        x1,
        x2,
        lambda,
        fault,
        negated,
    }
}

/// Structural convexity decision for `f` (or `-f` when `negated`), returning
/// a violating triple.
fn convexity_witness(f0: &PiecewiseFn, negated: bool) -> Option<Witness> {
    let f = if negated { f0.negate() } else { f0.clone() };
    let dom = f.dom();
    if let Some((x1, x, x2)) = straddle(&dom) {
        return Some(triple(
            x1.clone(),
            x2.clone(),
            lambda_for(&x1, &x, &x2),
            ConvexFault::DomGap,
            negated,
        ));
    }
    let dm = f.dom_minus();
    if let Some((x1, x, x2)) = straddle(&dm) {
        return Some(triple(
            x1.clone(),
            x2.clone(),
            lambda_for(&x1, &x, &x2),
            ConvexFault::DomMinusGap,
            negated,
        ));
    }
    if dm.is_empty() {
        return None;
    }
    let minus = f.value_class_set(|v| *v == XReal::MinusInf);
    if !minus.is_empty() {
        let interior = dm.interior();
        let finite_inside = interior.intersection(&f.value_class_set(XReal::is_finite));
        let x = first_point(&finite_inside)?;
        let y = first_point(&minus).expect("nonempty");
        // Step past x away from y, staying in dom_-.
        let mut delta = qi(1);
        loop {
            let z = &x + &delta * (&x - &y);
            if interior.contains(&z) {
                let lambda = &delta / (qi(1) + &delta);
                return Some(triple(y, z, lambda, ConvexFault::MinusInf, negated));
            }
            delta /= qi(2);
        }
    }
    let interior = dm.interior();
    for (k, b) in f.breakpoints().iter().enumerate() {
        if !dm.contains(b) {
            continue;
        }
        let v = &f.point_values()[k];
        let (l, r) = (
            f.one_sided_limit(b, Side::Left),
            f.one_sided_limit(b, Side::Right),
        );
        let bad = if interior.contains(b) {
            let (sl, sr) = (f.pieces()[k].slope(), f.pieces()[k + 1].slope());
            l != *v || r != *v || sl > sr
        } else {
            let inside = [(&l, f.pieces()[k].is_nu()), (&r, f.pieces()[k + 1].is_nu())];
            inside
                .iter()
                .any(|(lim, nu)| !nu && lim.is_finite() && v.lt(lim))
        };
        if bad {
            return Some(local_triple(&f, k, negated));
        }
    }
    None
}

/// A violating triple near breakpoint `k`, found by shrinking offsets.
fn local_triple(f: &PiecewiseFn, k: usize, negated: bool) -> Witness {
    let b = &f.breakpoints()[k];
    let reach = |j: Option<&Rational>| j.map(|n| (n - b).abs());
    let lo = reach(k.checked_sub(1).and_then(|j| f.breakpoints().get(j)));
    let hi = reach(f.breakpoints().get(k + 1));
    let mut delta = qi(1);
    for _ in 0..200 {
        let fits =
            lo.as_ref().map_or(true, |d| &delta < d) && hi.as_ref().map_or(true, |d| &delta < d);
        if fits {
            let (m, p) = (b - &delta, b + &delta);
            let cands = [
                (m.clone(), p.clone(), q(1, 2)),
                (m.clone(), p.clone(), q(1, 4)),
                (m.clone(), p.clone(), q(3, 4)),
                (b.clone(), p.clone(), q(1, 2)),
                (m.clone(), b.clone(), q(1, 2)),
            ];
            for (x1, x2, l) in cands {
                if triple_violation(f, &x1, &x2, &l) {
                    return triple(x1, x2, l, ConvexFault::Local, negated);
                }
            }
        }
        delta /= qi(2);
    }
    unreachable!("a local convexity fault always has a nearby violating triple")
}

fn linear(f: &PiecewiseFn) -> Verdict {
    if f.is_trivial() {
        return Verdict::Fails(Witness::EmptyDom);
    }
    let dom = f.dom();
    if let Some(x) = first_point(&dom.complement()) {
        return Verdict::Fails(Witness::NotInDom { x });
    }
    let v0 = f.eval(&Rational::zero());
    if v0 != XReal::zero() {
        return Verdict::Fails(Witness::Value {
            x: Rational::zero(),
            value: v0,
        });
    }
    check_property(f, Property::Affine)
}

/// Breakpoints and two interior points per gap.
pub(crate) fn dense_probes(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out = f.breakpoints().to_vec();
    let bs = f.breakpoints();
    for i in 0..=bs.len() {
        let (lo, hi) = (i.checked_sub(1).map(|j| &bs[j]), bs.get(i));
        match (lo, hi) {
            (Some(a), Some(b)) => {
                let d = (b - a) / qi(3);
                out.push(a + &d);
                out.push(a + &d * qi(2));
            }
            (Some(a), None) => out.extend([a + qi(1), a + qi(2)]),
            (None, Some(b)) => out.extend([b - qi(2), b - qi(1)]),
            (None, None) => out.extend([qi(-2), qi(-1), qi(1), qi(2)]),
        }
    }
    out.sort();
    out.dedup();
    out
}

fn pos_homogeneous(f: &PiecewiseFn) -> Verdict {
    nonempty(f).and(|| {
        let v0 = f.eval(&Rational::zero());
        if v0 != XReal::zero() && v0 != XReal::MinusInf {
            return Verdict::Fails(Witness::Value {
                x: Rational::zero(),
                value: v0,
            });
        }
        // On each open ray the law f(l x) = l f(x) pins the function down from
        // a single value, and two probes per gap determine an affine piece.
        let mut probes = dense_probes(f);
        probes.extend(dense_probes(f).iter().map(|p| -p));
        probes.retain(|p| !p.is_zero());
        probes.sort();
        probes.dedup();
        for x in &probes {
            if f.eval(x).is_nu() {
                continue;
            }
            for y in &probes {
                if x.is_positive() != y.is_positive() || x == y {
                    continue;
                }
                let lambda = y / x;
                let w = Witness::Scaling {
                    x: x.clone(),
                    lambda,
                };
                if w.recheck(Property::PosHomogeneous, f) {
                    return Verdict::Fails(w);
                }
            }
        }
        Verdict::Holds
    })
}

fn odd_witness(f: &PiecewiseFn) -> Option<Witness> {
    let g = f.negate().reflect();
    if g == *f {
        return None;
    }
    let mut all: Vec<Rational> = [f.breakpoints(), g.breakpoints()].concat();
    all.sort();
    all.dedup();
    let mut cands = all.clone();
    for i in 0..=all.len() {
        let (lo, hi) = (i.checked_sub(1).map(|j| &all[j]), all.get(i));
        match (lo, hi) {
            (Some(a), Some(b)) => {
                let d = (b - a) / qi(3);
                cands.push(a + &d);
                cands.push(a + &d * qi(2));
            }
            (Some(a), None) => cands.extend([a + qi(1), a + qi(2)]),
            (None, Some(b)) => cands.extend([b - qi(2), b - qi(1)]),
            (None, None) => cands.extend([qi(-1), qi(1)]),
        }
    }
    cands.push(Rational::zero());
    cands.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| b.cmp(a)));
    cands.dedup();
    cands
        .into_iter()
        .map(|x| Witness::Odd { x })
        .find(|w| w.recheck(Property::Odd, f))
}

/// Sample points for the additivity family.
fn additive_samples(f: &PiecewiseFn) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for b in f.breakpoints() {
        out.push(b.clone());
        out.push(b * qi(2));
        out.push(b / qi(2));
    }
    out.extend(dense_probes(f));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..24 {
        out.push(q(rng.gen_range(-40..=40), rng.gen_range(1..=8)));
    }
    out.sort();
    out.dedup();
    out
}

/// `x1, x2 ∈ dom` with `x1 + x2 ∉ dom`.
fn dom_sum_pair(dom: &IntervalSet) -> Option<(Rational, Rational)> {
    let bad = dom.minkowski_sum(dom).difference(dom);
    let z = first_point(&bad)?;
    for c1 in dom.intervals() {
        for c2 in dom.intervals() {
            let reflected = IntervalSet::from_intervals([c2.clone()])
                .negate()
                .translate(&z);
            let t = IntervalSet::from_intervals([c1.clone()]).intersection(&reflected);
            if let Some(x1) = first_point(&t) {
                let x2 = &z - &x1;
                return Some((x1, x2));
            }
        }
    }
    None
}

/// Constant on a nonempty domain with a value `c` satisfying `c <= c + c`.
fn constant_certificate(f: &PiecewiseFn) -> bool {
    let mut vals = f.point_values().iter().cloned().collect::<Vec<_>>();
    for p in f.pieces() {
        match p {
            Piece::Nu => {}
            Piece::Affine { slope, .. } if !slope.is_zero() => return false,
            other => vals.push(other.eval(&Rational::zero())),
        }
    }
    vals.retain(|v| !v.is_nu());
    let Some(c) = vals.first() else { return false };
    vals.iter().all(|v| v == c) && c.le(&c.add(c))
}

fn subadditive(f0: &PiecewiseFn, negated: bool) -> Verdict {
    let f = if negated { f0.negate() } else { f0.clone() };
    let dom = f.dom();
    if dom.is_empty() {
        return Verdict::Holds;
    }
    if let Some((x1, x2)) = dom_sum_pair(&dom) {
        return Verdict::Fails(Witness::Pair { x1, x2, negated });
    }
    let pts = additive_samples(&f);
    let mut pairs: Vec<(Rational, Rational)> = Vec::new();
    for a in &pts {
        for b in &pts {
            pairs.push((a.clone(), b.clone()));
        }
        for b in f.breakpoints() {
            pairs.push((a.clone(), b - a));
        }
    }
    for (x1, x2) in pairs {
        if pair_violation(&f, &x1, &x2) {
            return Verdict::Fails(Witness::Pair { x1, x2, negated });
        }
    }
    let certified = constant_certificate(&f) || check_property(&f, Property::Sublinear).holds();
    if certified {
        Verdict::Holds
    } else {
        Verdict::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::interval::Bound;

    fn pw(breaks: &[Rational], pieces: Vec<Piece>, points: &[XReal]) -> PiecewiseFn {
        PiecewiseFn::new(breaks.to_vec(), pieces, points.to_vec()).unwrap()
    }

    fn abs() -> PiecewiseFn {
        pw(
            &[qi(0)],
            vec![Piece::affine(qi(-1), qi(0)), Piece::affine(qi(1), qi(0))],
            &[XReal::zero()],
        )
    }

    fn x_on_positive() -> PiecewiseFn {
        pw(
            &[qi(0)],
            vec![Piece::Nu, Piece::affine(qi(1), qi(0))],
            &[XReal::Nu],
        )
    }

    fn improper_linear() -> PiecewiseFn {
        pw(
            &[qi(0)],
            vec![Piece::MinusInf, Piece::PlusInf],
            &[XReal::zero()],
        )
    }

    fn affine_split() -> PiecewiseFn {
        pw(
            &[qi(0)],
            vec![Piece::MinusInf, Piece::PlusInf],
            &[XReal::MinusInf],
        )
    }

    fn check(f: &PiecewiseFn, p: Property) -> Verdict {
        let v = check_property(f, p);
        if let Some(w) = v.witness() {
            assert!(w.recheck(p, f), "{p}: witness {w} does not recheck");
        }
        v
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!(matches!(
            "nonsense".parse::<Property>(),
            Err(Error::UnknownProperty(_))
        ));
    }

    #[test]
    fn x_on_positive_half_line() {
        let f = x_on_positive();
        assert!(check(&f, Property::LscOnDom).holds());
        assert!(check(&f, Property::ContinuousOnDom).holds());
        match check(&f, Property::AllSublevelsClosed) {
            Verdict::Fails(Witness::Level { t, set, .. }) => {
                assert_eq!(t, qi(1));
                assert_eq!(
                    set,
                    IntervalSet::from_bounds(Bound::Open(qi(0)), Bound::Closed(qi(1)))
                );
            }
            v => panic!("unexpected {v:?}"),
        }
        assert!(check(&f, Property::EpiClosed).fails());
        assert!(check(&f, Property::LscFunction).fails());
    }

    #[test]
    fn absolute_value() {
        let f = abs();
        assert!(check(&f, Property::Convex).holds());
        assert!(check(&f, Property::Sublinear).holds());
        assert!(check(&f, Property::Subadditive).holds());
        assert_eq!(
            check(&f, Property::Odd),
            Verdict::Fails(Witness::Odd { x: qi(1) })
        );
        assert!(check(&f, Property::Concave).fails());
        assert!(check(&f, Property::Linear).fails());
    }

    #[test]
    fn improper_linear_functional() {
        let f = improper_linear();
        assert!(check(&f, Property::Linear).holds());
        assert!(check(&f, Property::Homogeneous).holds());
        assert!(check(&f, Property::EpiClosed).fails());
        assert!(check(&f, Property::Odd).holds());
    }

    #[test]
    fn affine_not_a_translate() {
        let f = affine_split();
        assert!(check(&f, Property::Affine).holds());
        assert!(check(&f, Property::LscFunction).holds());
        assert!(check(&f, Property::Linear).fails());
    }

    #[test]
    fn two_point_function() {
        let f = pw(
            &[qi(-1), qi(1)],
            vec![Piece::Nu, Piece::Nu, Piece::Nu],
            &[XReal::MinusInf, XReal::PlusInf],
        );
        assert!(check(&f, Property::ContinuousOnDom).holds());
        match check(&f, Property::Convex) {
            Verdict::Fails(Witness::Triple {
                fault: ConvexFault::DomGap,
                ..
            }) => {}
            v => panic!("unexpected {v:?}"),
        }
        assert!(check(&f, Property::EpiClosed).holds());
    }

    #[test]
    fn affine_lsc_not_continuous() {
        let f = pw(
            &[qi(0), qi(1)],
            vec![Piece::Nu, Piece::PlusInf, Piece::Nu],
            &[XReal::int(1), XReal::PlusInf],
        );
        assert!(check(&f, Property::Affine).holds());
        assert!(check(&f, Property::LscOnDom).holds());
        assert!(check(&f, Property::ContinuousOnDom).fails());
    }

    #[test]
    fn trivial_function() {
        let f = PiecewiseFn::nu();
        for p in [
            Property::PosHomogeneous,
            Property::Sublinear,
            Property::LscOnDom,
            Property::Linear,
        ] {
            assert_eq!(check(&f, p), Verdict::Fails(Witness::EmptyDom), "{p}");
        }
        assert!(check(&f, Property::Convex).holds());
    }

    #[test]
    fn indicator_of_unit_interval() {
        let f = PiecewiseFn::indicator(&IntervalSet::closed(qi(0), qi(1)));
        assert!(check(&f, Property::Convex).holds());
        assert!(check(&f, Property::ContinuousOnDom).holds());
        assert!(check(&f, Property::LscFunction).holds());
        assert!(check(&f, Property::Linear).fails());
        assert!(check(&f, Property::PosHomogeneous).fails());
        assert!(check(&f, Property::Subadditive).fails());
    }

    #[test]
    fn local_convexity_faults() {
        let kink = abs().negate();
        assert!(matches!(
            check(&kink, Property::Convex),
            Verdict::Fails(Witness::Triple {
                fault: ConvexFault::Local,
                ..
            })
        ));
        let jump = pw(
            &[qi(0)],
            vec![Piece::constant(qi(0)), Piece::constant(qi(1))],
            &[XReal::zero()],
        );
        assert!(check(&jump, Property::Convex).fails());
        let endpoint = pw(
            &[qi(0)],
            vec![Piece::Nu, Piece::constant(qi(0))],
            &[XReal::int(-1)],
        );
        assert!(check(&endpoint, Property::Convex).fails());
        let endpoint_high = pw(
            &[qi(0)],
            vec![Piece::Nu, Piece::constant(qi(0))],
            &[XReal::int(5)],
        );
        assert!(check(&endpoint_high, Property::Convex).holds());
        let minus_inside = pw(
            &[qi(0)],
            vec![Piece::Nu, Piece::constant(qi(0))],
            &[XReal::MinusInf],
        );
        assert!(matches!(
            check(&minus_inside, Property::Convex),
            Verdict::Fails(Witness::Triple {
                fault: ConvexFault::MinusInf,
                ..
            })
        ));
        let plus_gap = pw(
            &[qi(0)],
            vec![Piece::constant(qi(0)), Piece::constant(qi(0))],
            &[XReal::PlusInf],
        );
        assert!(matches!(
            check(&plus_gap, Property::Convex),
            Verdict::Fails(Witness::Triple {
                fault: ConvexFault::DomMinusGap,
                ..
            })
        ));
    }

    #[test]
    fn scaling_witnesses() {
        let f = PiecewiseFn::affine(qi(2), qi(1));
        assert!(check(&f, Property::PosHomogeneous).fails());
        let g = PiecewiseFn::affine(q(3, 2), qi(0));
        assert!(check(&g, Property::PosHomogeneous).holds());
        assert!(check(&g, Property::Linear).holds());
        assert!(
            check(&g, Property::Additive).holds()
                || check(&g, Property::Additive) == Verdict::Unknown
        );
    }

    #[test]
    fn critical_levels_cover_limits() {
        let f = x_on_positive();
        assert_eq!(test_levels(&f), vec![qi(-1), qi(0), qi(1)]);
        assert_eq!(test_levels(&PiecewiseFn::identity()), vec![qi(0)]);
    }
}

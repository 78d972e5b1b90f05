//! Conjugates, subdifferentials, support functions, barrier cones, and
//! B-monotonicity and Lipschitz checks for piecewise-affine functions.

use num::{Signed, Zero};

use crate::arith::{qi, Rational, XReal};
use crate::bounds::{inf_set, sup_set, XRealSet};
use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalSet};
use crate::pwa::{Piece, PiecewiseFn};

/// A set of slopes, the dual of the line.
pub type SlopeSet = IntervalSet;

fn closed_or_unbounded(v: &XReal) -> Bound {
    match v {
        XReal::Finite(r) => Bound::Closed(r.clone()),
        _ => Bound::Unbounded,
    }
}

/// `s ↦ sup{s x - (m x + c) | x ∈ gap}`.
fn piece_term(gap: &Interval, m: &Rational, c: &Rational) -> PiecewiseFn {
    let at = |x: &Rational| Piece::affine(x.clone(), -(m * x + c));
    let left = gap.lo().value().map_or(Piece::PlusInf, at);
    let right = gap.hi().value().map_or(Piece::PlusInf, at);
    PiecewiseFn::new(vec![m.clone()], vec![left, right], vec![XReal::Finite(-c)])
        .expect("one breakpoint")
}

/// `f*(s) = sup{s x - f(x) | x ∈ dom f}`.
pub fn conjugate(f: &PiecewiseFn) -> PiecewiseFn {
    if f.is_trivial() {
        return PiecewiseFn::nu();
    }
    if f.attains(&XReal::MinusInf) {
        return PiecewiseFn::constant(&XReal::PlusInf);
    }
    let mut terms = Vec::new();
    for (b, v) in f.breakpoints().iter().zip(f.point_values()) {
        if let XReal::Finite(v) = v {
            terms.push(PiecewiseFn::affine(b.clone(), -v));
        }
    }
    for (i, piece) in f.pieces().iter().enumerate() {
        if let Piece::Affine { slope, intercept } = piece {
            terms.push(piece_term(&f.gap(i), slope, intercept));
        }
    }
    // Only +inf values remain: every term s x - (+inf) is -inf.
    terms
        .into_iter()
        .reduce(|acc, t| acc.pointwise_max(&t))
        .unwrap_or_else(|| PiecewiseFn::constant(&XReal::MinusInf))
}

/// `∂f(x0) = {s | s (x - x0) <= f(x) - f(x0) for all x ∈ dom f}`, empty when `f(x0) ∉ R`.
pub fn subdifferential(f: &PiecewiseFn, x0: &Rational) -> SlopeSet {
    let f0 = match f.eval(x0) {
        XReal::Finite(v) => v,
        _ => return IntervalSet::empty(),
    };
    if f.attains(&XReal::MinusInf) {
        return IntervalSet::empty();
    }
    // Points right of x0 bound s from above by secants, points left of x0 from below.
    let secant = |x: &Rational, v: &Rational| (v - &f0) / (x - x0);
    let mut upper = XReal::PlusInf;
    let mut lower = XReal::MinusInf;
    let mut tighten = |right: bool, s: XReal| {
        if right {
            upper = upper.min_ext(&s);
        } else {
            lower = lower.max_ext(&s);
        }
    };
    for (b, v) in f.breakpoints().iter().zip(f.point_values()) {
        if let (XReal::Finite(v), false) = (v, b == x0) {
            tighten(b > x0, XReal::Finite(secant(b, v)));
        }
    }
    for (i, piece) in f.pieces().iter().enumerate() {
        let Piece::Affine { slope, intercept } = piece else {
            continue;
        };
        let gap = IntervalSet::from_intervals([f.gap(i)]);
        let sides = [
            (
                IntervalSet::from_bounds(Bound::Open(x0.clone()), Bound::Unbounded),
                qi(1),
            ),
            (
                IntervalSet::from_bounds(Bound::Unbounded, Bound::Open(x0.clone())),
                qi(-1),
            ),
        ];
        for (side, dir) in sides {
            for part in gap.intersection(&side).intervals() {
                // The secant is monotone on each part, so its extremes sit at the ends.
                for end in [part.lo(), part.hi()] {
                    let s = match end.value() {
                        None => XReal::Finite(slope.clone()),
                        Some(e) if e == x0 => {
                            let gap_at = slope * x0 + intercept - &f0;
                            if gap_at.is_zero() {
                                XReal::Finite(slope.clone())
                            } else if gap_at.is_positive() {
                                if dir.is_positive() {
                                    XReal::PlusInf
                                } else {
                                    XReal::MinusInf
                                }
                            } else {
                                return IntervalSet::empty();
                            }
                        }
                        Some(e) => XReal::Finite(secant(e, &(slope * e + intercept))),
                    };
                    tighten(dir.is_positive(), s);
                }
            }
        }
    }
    match (&lower, &upper) {
        (XReal::Finite(l), XReal::Finite(u)) if l > u => IntervalSet::empty(),
        _ => IntervalSet::from_bounds(closed_or_unbounded(&lower), closed_or_unbounded(&upper)),
    }
}

/// `σ_A(s) = sup{s a | a ∈ A}`.
pub fn support_function(a: &IntervalSet) -> PiecewiseFn {
    if a.is_empty() {
        return PiecewiseFn::nu();
    }
    let side = |v: XReal| match v {
        XReal::Finite(r) => Piece::affine(r, Rational::zero()),
        _ => Piece::PlusInf,
    };
    PiecewiseFn::new(
        vec![Rational::zero()],
        vec![side(a.inf()), side(a.sup())],
        vec![XReal::zero()],
    )
    .expect("one breakpoint")
}

/// `{s | σ_A(s) ∈ R}`.
pub fn barrier_cone(a: &IntervalSet) -> IntervalSet {
    support_function(a).value_class_set(XReal::is_finite)
}

/// Outcome of a check quantified over pairs of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    /// For Lipschitz checks, carries the smallest admissible constant.
    Holds(Option<Rational>),
    /// A violating pair; `x1 == x2` marks a point where the value is not real.
    Fails(Rational, Rational),
    Unknown,
}

impl PairVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PairVerdict::Holds(_))
    }

    pub fn fails(&self) -> bool {
        matches!(self, PairVerdict::Fails(..))
    }

    pub fn label(&self) -> &'static str {
        match self {
            PairVerdict::Holds(_) => "holds",
            PairVerdict::Fails(..) => "fails",
            PairVerdict::Unknown => "unknown",
        }
    }
}

/// A maximal piece of `X0` on which `f` is given by one formula.
struct Atom {
    part: Interval,
    image: XRealSet,
    piece: Option<Piece>,
}

fn atoms(f: &PiecewiseFn, x0: &IntervalSet) -> Vec<Atom> {
    let mut out = Vec::new();
    for b in f.breakpoints() {
        if x0.contains(b) {
            out.push(Atom {
                part: Interval::point(b.clone()),
                image: f.image(&IntervalSet::point(b.clone())),
                piece: None,
            });
        }
    }
    for (i, piece) in f.pieces().iter().enumerate() {
        for part in x0
            .intersection(&IntervalSet::from_intervals([f.gap(i)]))
            .intervals()
        {
            let image = f.image(&IntervalSet::from_intervals([part.clone()]));
            let piece = (!part.is_point()).then(|| piece.clone());
            out.push(Atom {
                part: part.clone(),
                image,
                piece,
            });
        }
    }
    out.sort_by(|a, b| a.part.sample().cmp(&b.part.sample()));
    out
}

fn check_region(f: &PiecewiseFn, x0: &IntervalSet) -> Result<()> {
    if x0.is_subset(&f.dom()) {
        Ok(())
    } else {
        Err(Error::RegionOutsideDom)
    }
}

/// Points of `X0` approaching every atom end at scale `2^-k`.
fn refined_points(x0: &IntervalSet, f: &PiecewiseFn, k: u32) -> Vec<Rational> {
    let eps = Rational::new(1.into(), num::BigInt::from(2).pow(k));
    let far = Rational::from_integer(num::BigInt::from(2).pow(k));
    let mut out = Vec::new();
    for a in atoms(f, x0) {
        if a.part.is_point() {
            out.push(a.part.sample());
            continue;
        }
        let (lo, hi) = (a.part.lo().value().cloned(), a.part.hi().value().cloned());
        let width = match (&lo, &hi) {
            (Some(l), Some(h)) => (h - l) / qi(2),
            _ => qi(1),
        };
        let step = &eps * &width;
        match (&lo, &hi) {
            (Some(l), _) => out.push(l + &step),
            (None, Some(h)) => out.push(h - &far),
            (None, None) => out.push(-&far),
        }
        match (&lo, &hi) {
            (_, Some(h)) => out.push(h - &step),
            (Some(l), None) => out.push(l + &far),
            (None, None) => out.push(far.clone()),
        }
    }
    out.retain(|x| x0.contains(x));
    out
}

/// First pair passing `bad`, trying coarse candidates then shrinking scales.
fn search_pair(
    f: &PiecewiseFn,
    x0: &IntervalSet,
    bad: impl Fn(&Rational, &XReal, &Rational, &XReal) -> bool,
) -> Option<(Rational, Rational)> {
    let mut coarse: Vec<Rational> = f
        .breakpoints()
        .iter()
        .filter(|b| x0.contains(b))
        .cloned()
        .collect();
    coarse.extend(x0.intersection(&f.dom()).samples());
    coarse.extend(
        (0..=f.breakpoints().len())
            .map(|i| f.gap_sample(i))
            .filter(|x| x0.contains(x)),
    );
    let mut seen: Vec<(Rational, XReal)> = Vec::new();
    coarse.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    let add =
        |pts: Vec<Rational>, seen: &mut Vec<(Rational, XReal)>| -> Option<(Rational, Rational)> {
            for p in pts {
                if seen.iter().any(|(q, _)| q == &p) {
                    continue;
                }
                let v = f.eval(&p);
                for (q, w) in seen.iter() {
                    let (lo, hi) = if q < &p {
                        ((q, w), (&p, &v))
                    } else {
                        ((&p, &v), (q, w))
                    };
                    if bad(lo.0, lo.1, hi.0, hi.1) {
                        return Some((lo.0.clone(), hi.0.clone()));
                    }
                    if bad(hi.0, hi.1, lo.0, lo.1) {
                        return Some((hi.0.clone(), lo.0.clone()));
                    }
                }
                seen.push((p, v));
            }
            None
        };
    if let Some(w) = add(coarse, &mut seen) {
        return Some(w);
    }
    (1..=64).find_map(|k| add(refined_points(x0, f, k), &mut seen))
}

/// `x2 - x1 ∈ B` implies `f(x1) <= f(x2)` (strictly: `B \ {0}` and `<`), for `x1, x2 ∈ X0`.
pub fn monotone(
    f: &PiecewiseFn,
    b: &IntervalSet,
    x0: &IntervalSet,
    strict: bool,
) -> Result<PairVerdict> {
    check_region(f, x0)?;
    let zero = Rational::zero();
    let cone = b.union(&IntervalSet::point(zero.clone()));
    let b_eff = if strict {
        b.difference(&IntervalSet::point(zero))
    } else {
        cone.clone()
    };
    let in_b = |x1: &Rational, x2: &Rational| b_eff.contains(&(x2 - x1));
    let bad = |x1: &Rational, v1: &XReal, x2: &Rational, v2: &XReal| {
        in_b(x1, x2) && !(if strict { v1.lt(v2) } else { v1.le(v2) })
    };
    let found = |w: Option<(Rational, Rational)>| match w {
        Some((x1, x2)) => PairVerdict::Fails(x1, x2),
        None => PairVerdict::Unknown,
    };
    if cone == IntervalSet::point(Rational::zero()) {
        return Ok(PairVerdict::Holds(None));
    }
    if cone.is_all() {
        let image = f.image(x0);
        let ok = if strict {
            x0.is_empty() || matches!(x0.intervals(), [iv] if iv.is_point())
        } else {
            image.singleton().is_some() || image.is_empty()
        };
        return Ok(if ok {
            PairVerdict::Holds(None)
        } else {
            found(search_pair(f, x0, bad))
        });
    }
    if cone == IntervalSet::nonpos() {
        let reflected = monotone(&f.reflect(), &b.negate(), &x0.negate(), strict)?;
        return Ok(match reflected {
            PairVerdict::Fails(x1, x2) => PairVerdict::Fails(-x1, -x2),
            other => other,
        });
    }
    if cone != IntervalSet::nonneg() {
        return Ok(found(search_pair(f, x0, bad)));
    }
    let atoms = atoms(f, x0);
    let within = atoms.iter().all(|a| match &a.piece {
        None => true,
        Some(Piece::Affine { slope, .. }) => {
            if strict {
                slope.is_positive()
            } else {
                !slope.is_negative()
            }
        }
        Some(_) => !strict,
    });
    let across = atoms.iter().enumerate().all(|(i, a)| {
        atoms[i + 1..].iter().all(|c| {
            let (s, t) = (sup_set(&a.image), inf_set(&c.image));
            if strict {
                s.lt(&t) || (s == t && !(a.image.contains(&s) && c.image.contains(&t)))
            } else {
                s.le(&t)
            }
        })
    });
    Ok(if within && across {
        PairVerdict::Holds(None)
    } else {
        found(search_pair(f, x0, bad))
    })
}

/// Smallest `L` with `|f(x1) - f(x2)| <= L |x1 - x2|` on `X0`; `+inf` if none exists.
fn lipschitz_constant(f: &PiecewiseFn, x0: &IntervalSet) -> XReal {
    let atoms = atoms(f, x0);
    let mut best = XReal::zero();
    let mut corners: Vec<(Rational, Rational)> = Vec::new();
    for a in &atoms {
        match &a.piece {
            Some(Piece::Affine { slope, intercept }) => {
                best = best.max_ext(&XReal::Finite(slope.abs()));
                for end in [a.part.lo(), a.part.hi()] {
                    if let Some(e) = end.value() {
                        corners.push((e.clone(), slope * e + intercept));
                    }
                }
            }
            _ => {
                let x = a.part.sample();
                if let XReal::Finite(v) = f.eval(&x) {
                    corners.push((x, v));
                }
            }
        }
    }
    for (i, (x1, v1)) in corners.iter().enumerate() {
        for (x2, v2) in &corners[i + 1..] {
            if x1 == x2 {
                if v1 != v2 {
                    return XReal::PlusInf;
                }
            } else {
                best = best.max_ext(&XReal::Finite(((v1 - v2) / (x1 - x2)).abs()));
            }
        }
    }
    best
}

/// Lipschitz continuity on `X0`; with `l` given, checks that constant.
pub fn lipschitz(f: &PiecewiseFn, x0: &IntervalSet, l: Option<&Rational>) -> Result<PairVerdict> {
    check_region(f, x0)?;
    let image = f.image(x0);
    if image.plus_inf || image.minus_inf {
        let bad = atoms(f, x0)
            .into_iter()
            .map(|a| a.part.sample())
            .find(|x| !f.eval(x).is_finite())
            .expect("an infinite value is attained on some atom");
        return Ok(PairVerdict::Fails(bad.clone(), bad));
    }
    let best = lipschitz_constant(f, x0);
    let within = |bound: XReal| {
        move |x1: &Rational, v1: &XReal, x2: &Rational, v2: &XReal| {
            let rise = v1.sub(v2).abs_val();
            let run = XReal::Finite((x1 - x2).abs());
            x1 != x2 && !rise.le(&bound.mul(&run))
        }
    };
    match (l, &best) {
        (None, XReal::Finite(b)) => Ok(PairVerdict::Holds(Some(b.clone()))),
        (Some(l), XReal::Finite(b)) if b <= l => Ok(PairVerdict::Holds(Some(b.clone()))),
        (l, _) => {
            let bound = l.map_or(XReal::Finite(qi(0)), |l| XReal::Finite(l.clone()));
            if l.is_none() {
                // No constant works; report a pair beating the slope bound of the pieces.
                let slopes = f
                    .pieces()
                    .iter()
                    .map(|p| p.slope().map_or(qi(0), |s| s.abs()))
                    .fold(qi(0), |a, b| a.max(b));
                let w = search_pair(f, x0, within(XReal::Finite(slopes + qi(1))));
                return Ok(w.map_or(PairVerdict::Unknown, |(a, b)| PairVerdict::Fails(a, b)));
            }
            let w = search_pair(f, x0, within(bound));
            Ok(w.map_or(PairVerdict::Unknown, |(a, b)| PairVerdict::Fails(a, b)))
        }
    }
}

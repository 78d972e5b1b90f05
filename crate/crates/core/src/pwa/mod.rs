//! Exact piecewise-affine functions `R -> R ∪ {-inf, +inf, nu}`.

mod props;
mod report;
mod witness;

pub(crate) use props::dense_probes;
pub use props::{check_property, Property};
pub use report::{classify_report, Classification, PropertyReport};
pub(crate) use witness::{lsc_fails_at, usc_fails_at};
pub use witness::{
    pair_violation, pair_violation_by, triple_violation, triple_violation_by, ConvexFault,
    LevelKind, Verdict, Witness,
};

use std::fmt;

use num::{Signed, Zero};

use crate::arith::{qi, render_rational, Rational, XReal};
use crate::bounds::XRealSet;
use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalSet};

/// The behaviour of a function on one open gap between breakpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Affine {
        slope: Rational,
        intercept: Rational,
    },
    PlusInf,
    MinusInf,
    Nu,
}

impl Piece {
    pub fn affine(slope: Rational, intercept: Rational) -> Piece {
        Piece::Affine { slope, intercept }
    }

    pub fn constant(c: Rational) -> Piece {
        Piece::Affine {
            slope: Rational::zero(),
            intercept: c,
        }
    }

    /// A piece taking the value `v` everywhere.
    pub fn from_value(v: &XReal) -> Piece {
        match v {
            XReal::Finite(c) => Piece::constant(c.clone()),
            XReal::PlusInf => Piece::PlusInf,
            XReal::MinusInf => Piece::MinusInf,
            XReal::Nu => Piece::Nu,
        }
    }

    pub fn eval(&self, x: &Rational) -> XReal {
        match self {
            Piece::Affine { slope, intercept } => XReal::Finite(slope * x + intercept),
            Piece::PlusInf => XReal::PlusInf,
            Piece::MinusInf => XReal::MinusInf,
            Piece::Nu => XReal::Nu,
        }
    }

    pub fn neg(&self) -> Piece {
        match self {
            Piece::Affine { slope, intercept } => Piece::affine(-slope, -intercept),
            Piece::PlusInf => Piece::MinusInf,
            Piece::MinusInf => Piece::PlusInf,
            Piece::Nu => Piece::Nu,
        }
    }

    pub fn is_nu(&self) -> bool {
        matches!(self, Piece::Nu)
    }

    pub fn slope(&self) -> Option<&Rational> {
        match self {
            Piece::Affine { slope, .. } => Some(slope),
            _ => None,
        }
    }

    /// Limit of the piece as `x -> +inf` (`toward_plus`) or `x -> -inf`.
    pub fn limit_at_infinity(&self, toward_plus: bool) -> XReal {
        match self {
            Piece::Affine { slope, intercept } => {
                if slope.is_zero() {
                    XReal::Finite(intercept.clone())
                } else if slope.is_positive() == toward_plus {
                    XReal::PlusInf
                } else {
                    XReal::MinusInf
                }
            }
            other => other.eval(&Rational::zero()),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Affine { slope, intercept } if slope.is_zero() => {
                f.write_str(&render_rational(intercept))
            }
            Piece::Affine { slope, intercept } => {
                let sign = if intercept.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}*x {} {}",
                    render_rational(slope),
                    sign,
                    render_rational(&intercept.abs())
                )
            }
            Piece::PlusInf => f.write_str("+inf"),
            Piece::MinusInf => f.write_str("-inf"),
            Piece::Nu => f.write_str("nu"),
        }
    }
}

/// Which side of a point a limit is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Both,
    Left,
    Right,
}

/// A piecewise-affine function in canonical form.
///
/// With breakpoints `b_1 < ... < b_m`, `pieces[i]` is the behaviour on the
/// open gap between `b_i` and `b_{i+1}` (with `b_0 = -inf`, `b_{m+1} = +inf`)
/// and `points[i]` is the value at `b_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseFn {
    breaks: Vec<Rational>,
    pieces: Vec<Piece>,
    points: Vec<XReal>,
}

impl PiecewiseFn {
    pub fn new(breaks: Vec<Rational>, pieces: Vec<Piece>, points: Vec<XReal>) -> Result<Self> {
        if pieces.len() != breaks.len() + 1 || points.len() != breaks.len() {
            return Err(Error::InvalidFunction(
                "need m breakpoints, m+1 pieces and m point values".into(),
            ));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFunction(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        let mut f = PiecewiseFn {
            breaks,
            pieces,
            points,
        };
        f.canonicalize();
        Ok(f)
    }

    pub fn from_piece(piece: Piece) -> Self {
        PiecewiseFn {
            breaks: vec![],
            pieces: vec![piece],
            points: vec![],
        }
    }

    pub fn constant(v: &XReal) -> Self {
        Self::from_piece(Piece::from_value(v))
    }

    /// The trivial function, `nu` everywhere.
    pub fn nu() -> Self {
        Self::from_piece(Piece::Nu)
    }

    pub fn affine(slope: Rational, intercept: Rational) -> Self {
        Self::from_piece(Piece::affine(slope, intercept))
    }

    /// `x ↦ x`.
    pub fn identity() -> Self {
        Self::affine(qi(1), Rational::zero())
    }

    /// `0` on `A`, `nu` elsewhere.
    pub fn indicator(a: &IntervalSet) -> Self {
        Self::from_evaluator(a.endpoints(), |x| {
            if a.contains(x) {
                XReal::zero()
            } else {
                XReal::Nu
            }
        })
        .expect("indicator is piecewise constant on its endpoints")
    }

    /// Builds the function from a pointwise evaluator that is piecewise affine
    /// with all breakpoints among `breaks`.
    pub fn from_evaluator(
        mut breaks: Vec<Rational>,
        eval: impl Fn(&Rational) -> XReal,
    ) -> Result<Self> {
        breaks.sort();
        breaks.dedup();
        let mut pieces = Vec::with_capacity(breaks.len() + 1);
        for i in 0..=breaks.len() {
            let (lo, hi) = (i.checked_sub(1).map(|j| &breaks[j]), breaks.get(i));
            let (x1, x2) = match (lo, hi) {
                (Some(a), Some(b)) => {
                    let d = (b - a) / qi(3);
                    (a + &d, a + &d * qi(2))
                }
                (Some(a), None) => (a + qi(1), a + qi(2)),
                (None, Some(b)) => (b - qi(2), b - qi(1)),
                (None, None) => (Rational::zero(), qi(1)),
            };
            pieces.push(piece_through(&x1, &eval(&x1), &x2, &eval(&x2))?);
        }
        let points = breaks.iter().map(&eval).collect();
        Self::new(breaks, pieces, points)
    }

    fn canonicalize(&mut self) {
        let mut i = 0;
        while i < self.breaks.len() {
            let removable = self.pieces[i] == self.pieces[i + 1]
                && self.points[i] == self.pieces[i].eval(&self.breaks[i]);
            if removable {
                self.breaks.remove(i);
                self.points.remove(i);
                self.pieces.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn point_values(&self) -> &[XReal] {
        &self.points
    }

    /// The open gap carrying `pieces[i]`.
    pub fn gap(&self, i: usize) -> Interval {
        let lo = i
            .checked_sub(1)
            .map_or(Bound::Unbounded, |j| Bound::Open(self.breaks[j].clone()));
        let hi = self
            .breaks
            .get(i)
            .map_or(Bound::Unbounded, |b| Bound::Open(b.clone()));
        Interval::new(lo, hi).expect("gaps are nonempty")
    }

    /// A point inside gap `i`.
    pub fn gap_sample(&self, i: usize) -> Rational {
        self.gap(i).sample()
    }

    /// `Ok(k)` if `x` is breakpoint `k`, `Err(i)` if `x` lies in gap `i`.
    pub fn locate(&self, x: &Rational) -> std::result::Result<usize, usize> {
        self.breaks.binary_search(x)
    }

    pub fn eval(&self, x: &Rational) -> XReal {
        match self.locate(x) {
            Ok(k) => self.points[k].clone(),
            Err(i) => self.pieces[i].eval(x),
        }
    }

    /// Punctured one-sided limit at `x0`; `nu` when the function is `nu` on
    /// that side of `x0`.
    pub fn one_sided_limit(&self, x0: &Rational, side: Side) -> XReal {
        let piece = match (self.locate(x0), side) {
            (Ok(k), Side::Left) => &self.pieces[k],
            (Ok(k), _) => &self.pieces[k + 1],
            (Err(i), _) => &self.pieces[i],
        };
        piece.eval(x0)
    }

    /// Limit at `x0` relative to the domain: the common value of all
    /// contributions (point value on `Both`, one-sided limits from sides
    /// meeting the domain), `nu` if there are none or they disagree.
    pub fn limit_at(&self, x0: &Rational, side: Side) -> XReal {
        let mut contributions = Vec::new();
        if side != Side::Right {
            contributions.push(self.one_sided_limit(x0, Side::Left));
        }
        if side != Side::Left {
            contributions.push(self.one_sided_limit(x0, Side::Right));
        }
        if side == Side::Both {
            contributions.push(self.eval(x0));
        }
        agree(contributions.into_iter().filter(|v| !v.is_nu()))
    }

    /// Limit as `x -> +inf` or `x -> -inf`.
    pub fn limit_at_infinity(&self, toward_plus: bool) -> XReal {
        let piece = if toward_plus {
            self.pieces.last()
        } else {
            self.pieces.first()
        };
        piece.unwrap().limit_at_infinity(toward_plus)
    }

    /// `{x | f(x) R t}` as an exact interval set.
    pub fn level_set(&self, rel: Relation, t: &Rational) -> IntervalSet {
        let tv = XReal::Finite(t.clone());
        let mut parts = Vec::new();
        for (k, b) in self.breaks.iter().enumerate() {
            if rel.holds(&self.points[k], &tv) {
                parts.push(Interval::point(b.clone()));
            }
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            let gap = self.gap(i);
            match piece {
                Piece::Affine { slope, intercept } => {
                    let set = affine_relation_set(slope, intercept, rel, t);
                    parts.extend(
                        set.intersection(&IntervalSet::from_intervals([gap]))
                            .intervals()
                            .iter()
                            .cloned(),
                    );
                }
                p => {
                    if rel.holds(&p.eval(&Rational::zero()), &tv) {
                        parts.push(gap);
                    }
                }
            }
        }
        IntervalSet::from_intervals(parts)
    }

    /// `dom f = {x | f(x) ≠ nu}`.
    pub fn dom(&self) -> IntervalSet {
        self.value_class_set(|v| !v.is_nu())
    }

    /// `{x ∈ dom f | f(x) ≠ +inf}`.
    pub fn dom_minus(&self) -> IntervalSet {
        self.value_class_set(|v| !v.is_nu() && *v != XReal::PlusInf)
    }

    /// Points where the value satisfies a predicate that only depends on
    /// whether the value is finite, `+inf`, `-inf` or `nu`.
    pub fn value_class_set(&self, pred: impl Fn(&XReal) -> bool) -> IntervalSet {
        let mut parts = Vec::new();
        for (k, b) in self.breaks.iter().enumerate() {
            if pred(&self.points[k]) {
                parts.push(Interval::point(b.clone()));
            }
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            if pred(&piece.eval(&Rational::zero())) {
                parts.push(self.gap(i));
            }
        }
        IntervalSet::from_intervals(parts)
    }

    pub fn is_trivial(&self) -> bool {
        self.dom().is_empty()
    }

    /// Some value equals `v` (for `v` one of `+inf`, `-inf`, `nu`).
    pub fn attains(&self, v: &XReal) -> bool {
        self.points.contains(v) || (!v.is_finite() && self.pieces.contains(&Piece::from_value(v)))
    }

    /// Nontrivial and real-valued on its domain.
    pub fn is_proper(&self) -> bool {
        !self.is_trivial() && self.is_finite_on_dom()
    }

    /// Real-valued on its domain.
    pub fn is_finite_on_dom(&self) -> bool {
        !self.attains(&XReal::PlusInf) && !self.attains(&XReal::MinusInf)
    }

    /// Real-valued everywhere.
    pub fn is_finite_valued(&self) -> bool {
        self.is_finite_on_dom() && !self.attains(&XReal::Nu)
    }

    /// The set `{f(x) | x ∈ region}`.
    pub fn image(&self, region: &IntervalSet) -> XRealSet {
        let mut out = XRealSet::empty();
        for (k, b) in self.breaks.iter().enumerate() {
            if region.contains(b) {
                out.insert(&self.points[k]);
            }
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            let part = region.intersection(&IntervalSet::from_intervals([self.gap(i)]));
            if part.is_empty() {
                continue;
            }
            match piece {
                Piece::Affine { slope, intercept } => {
                    let shifted = part.scale(slope).translate(intercept);
                    out.reals = out.reals.union(&shifted);
                }
                p => out.insert(&p.eval(&Rational::zero())),
            }
        }
        out
    }

    /// `x ↦ -f(x)`.
    pub fn negate(&self) -> Self {
        PiecewiseFn {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(Piece::neg).collect(),
            points: self.points.iter().map(XReal::neg).collect(),
        }
    }

    /// Breakpoints together with the zero crossings of affine pieces.
    fn breaks_with_zeros(&self) -> Vec<Rational> {
        let mut out = self.breaks.clone();
        for (i, p) in self.pieces.iter().enumerate() {
            if let Piece::Affine { slope, intercept } = p {
                if !slope.is_zero() {
                    let z = -intercept / slope;
                    if self.gap(i).contains(&z) {
                        out.push(z);
                    }
                }
            }
        }
        out
    }

    /// `x ↦ l · f(x)` for any extended factor.
    pub fn scale(&self, l: &XReal) -> Self {
        Self::from_evaluator(self.breaks_with_zeros(), |x| l.mul(&self.eval(x)))
            .expect("scaling keeps the function piecewise affine")
    }

    /// `x ↦ f(x) + g(x)` under the `nu`-addition.
    pub fn add(&self, g: &PiecewiseFn) -> Self {
        let breaks = [self.breaks.clone(), g.breaks.clone()].concat();
        Self::from_evaluator(breaks, |x| self.eval(x).add(&g.eval(x)))
            .expect("sums stay piecewise affine")
    }

    /// `x ↦ f(x) + c`.
    pub fn shift_value(&self, c: &XReal) -> Self {
        Self::from_evaluator(self.breaks.clone(), |x| self.eval(x).add(c))
            .expect("shifts stay piecewise affine")
    }

    /// `f + ι_A`.
    pub fn restrict(&self, a: &IntervalSet) -> Self {
        self.add(&Self::indicator(a))
    }

    /// `x ↦ f(x - c)`.
    pub fn translate(&self, c: &Rational) -> Self {
        let breaks = self.breaks.iter().map(|b| b + c).collect();
        Self::from_evaluator(breaks, |x| self.eval(&(x - c))).expect("translation is exact")
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        let breaks = self.breaks.iter().map(|b| -b).collect();
        Self::from_evaluator(breaks, |x| self.eval(&-x)).expect("reflection is exact")
    }

    /// `x ↦ f(l x)` for `l ≠ 0`.
    pub fn compose_scale(&self, l: &Rational) -> Self {
        assert!(!l.is_zero(), "compose_scale needs a nonzero factor");
        let breaks = self.breaks.iter().map(|b| b / l).collect();
        Self::from_evaluator(breaks, |x| self.eval(&(x * l))).expect("dilation is exact")
    }

    /// Pointwise unified supremum of `{f(x), g(x)}`: `nu` values are ignored.
    pub fn pointwise_max(&self, g: &PiecewiseFn) -> Self {
        let mut breaks = [self.breaks.clone(), g.breaks.clone()].concat();
        breaks.extend(crossings(self, g));
        Self::from_evaluator(breaks, |x| {
            crate::bounds::sup_set(&XRealSet::from_values([&self.eval(x), &g.eval(x)]))
        })
        .expect("maxima stay piecewise affine")
    }

    /// Candidate points where the value pattern can change: breakpoints plus
    /// one sample per gap.
    pub fn probe_points(&self) -> Vec<Rational> {
        let mut out = self.breaks.clone();
        out.extend((0..self.pieces.len()).map(|i| self.gap_sample(i)));
        out.sort();
        out
    }
}

/// Interior crossings of affine pieces of two functions on their common gaps.
fn crossings(f: &PiecewiseFn, g: &PiecewiseFn) -> Vec<Rational> {
    let mut all = [f.breaks.clone(), g.breaks.clone()].concat();
    all.sort();
    all.dedup();
    let grid = PiecewiseFn {
        pieces: vec![Piece::Nu; all.len() + 1],
        points: vec![XReal::Nu; all.len()],
        breaks: all,
    };
    let mut out = Vec::new();
    for i in 0..grid.pieces.len() {
        let s = grid.gap_sample(i);
        let (pf, pg) = (piece_at(f, &s), piece_at(g, &s));
        if let (
            Piece::Affine {
                slope: m1,
                intercept: c1,
            },
            Piece::Affine {
                slope: m2,
                intercept: c2,
            },
        ) = (pf, pg)
        {
            if m1 != m2 {
                let x = (c2 - c1) / (m1 - m2);
                if grid.gap(i).contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn piece_at<'a>(f: &'a PiecewiseFn, x: &Rational) -> &'a Piece {
    match f.locate(x) {
        Ok(k) => &f.pieces[k + 1],
        Err(i) => &f.pieces[i],
    }
}

fn piece_through(x1: &Rational, v1: &XReal, x2: &Rational, v2: &XReal) -> Result<Piece> {
    match (v1, v2) {
        (XReal::Finite(y1), XReal::Finite(y2)) => {
            let slope = (y2 - y1) / (x2 - x1);
            let intercept = y1 - &slope * x1;
            Ok(Piece::affine(slope, intercept))
        }
        (a, b) if a == b => Ok(Piece::from_value(a)),
        _ => Err(Error::InvalidFunction(
            "evaluator is not piecewise affine on the given breakpoints".into(),
        )),
    }
}

fn agree(mut values: impl Iterator<Item = XReal>) -> XReal {
    let Some(first) = values.next() else {
        return XReal::Nu;
    };
    if values.all(|v| v == first) {
        first
    } else {
        XReal::Nu
    }
}

/// `{x | m x + c R t}` over the whole line.
fn affine_relation_set(m: &Rational, c: &Rational, rel: Relation, t: &Rational) -> IntervalSet {
    if m.is_zero() {
        let holds = rel.holds(&XReal::Finite(c.clone()), &XReal::Finite(t.clone()));
        return if holds {
            IntervalSet::all()
        } else {
            IntervalSet::empty()
        };
    }
    let z = (t - c) / m;
    let up = m.is_positive();
    use Relation::*;
    let (lo, hi) = match (rel, up) {
        (Eq, _) => return IntervalSet::point(z),
        (Le, true) | (Ge, false) => (Bound::Unbounded, Bound::Closed(z)),
        (Lt, true) | (Gt, false) => (Bound::Unbounded, Bound::Open(z)),
        (Ge, true) | (Le, false) => (Bound::Closed(z), Bound::Unbounded),
        (Gt, true) | (Lt, false) => (Bound::Open(z), Bound::Unbounded),
    };
    IntervalSet::from_bounds(lo, hi)
}

/// Order relations used for level sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Relation {
    pub fn holds(self, a: &XReal, b: &XReal) -> bool {
        match self {
            Relation::Lt => a.lt(b),
            Relation::Le => a.le(b),
            Relation::Gt => a.gt(b),
            Relation::Ge => a.ge(b),
            Relation::Eq => !a.is_nu() && a == b,
        }
    }
}

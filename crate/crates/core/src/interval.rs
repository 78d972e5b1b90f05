//! Finite unions of intervals with rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num::{Signed, Zero};

use crate::arith::{qi, render_rational, Rational, XReal};

/// One end of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(Rational),
    Open(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(v) | Bound::Open(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    fn flipped(&self) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(v) => Bound::Open(v.clone()),
            Bound::Open(v) => Bound::Closed(v.clone()),
        }
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(v) => Bound::Closed(f(v)),
            Bound::Open(v) => Bound::Open(f(v)),
        }
    }
}

fn cmp_lower(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(y).then_with(|| match (a.is_closed(), b.is_closed()) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                _ => Ordering::Equal,
            })
        }
    }
}

fn cmp_upper(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        _ => {
            let (x, y) = (a.value().unwrap(), b.value().unwrap());
            x.cmp(y).then_with(|| match (a.is_closed(), b.is_closed()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            })
        }
    }
}

/// A nonempty interval of the real line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl Interval {
    /// `None` when the bounds describe the empty set.
    pub fn new(lo: Bound, hi: Bound) -> Option<Interval> {
        let nonempty = match (lo.value(), hi.value()) {
            (Some(a), Some(b)) => a < b || (a == b && lo.is_closed() && hi.is_closed()),
            _ => true,
        };
        nonempty.then_some(Interval { lo, hi })
    }

    pub fn point(a: Rational) -> Interval {
        Interval {
            lo: Bound::Closed(a.clone()),
            hi: Bound::Closed(a),
        }
    }

    pub fn all() -> Interval {
        Interval {
            lo: Bound::Unbounded,
            hi: Bound::Unbounded,
        }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Bound::Closed(a), Bound::Closed(b)) if a == b)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(a) => x >= a,
            Bound::Open(a) => x > a,
        };
        let below = match &self.hi {
            Bound::Unbounded => true,
            Bound::Closed(b) => x <= b,
            Bound::Open(b) => x < b,
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if cmp_lower(&self.lo, &other.lo) == Ordering::Less {
            &other.lo
        } else {
            &self.lo
        };
        let hi = if cmp_upper(&self.hi, &other.hi) == Ordering::Greater {
            &other.hi
        } else {
            &self.hi
        };
        Interval::new(lo.clone(), hi.clone())
    }

    /// A representative point: the midpoint of a bounded interval, one unit
    /// inside a half-line, `0` for the whole line.
    pub fn sample(&self) -> Rational {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => (a + b) / qi(2),
            (Some(a), None) => a + qi(1),
            (None, Some(b)) => b - qi(1),
            (None, None) => Rational::zero(),
        }
    }

    /// The infimum of the interval as an extended real.
    pub fn inf(&self) -> XReal {
        self.lo
            .value()
            .map_or(XReal::MinusInf, |v| XReal::Finite(v.clone()))
    }

    pub fn sup(&self) -> XReal {
        self.hi
            .value()
            .map_or(XReal::PlusInf, |v| XReal::Finite(v.clone()))
    }

    fn connects(&self, next: &Interval) -> bool {
        // `self` starts no later than `next`.
        match (&self.hi, &next.lo) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => true,
            (h, l) => {
                let (hv, lv) = (h.value().unwrap(), l.value().unwrap());
                lv < hv || (lv == hv && (h.is_closed() || l.is_closed()))
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", render_rational(self.lo.value().unwrap()));
        }
        let (open, lo) = match &self.lo {
            Bound::Unbounded => ('(', "-inf".to_string()),
            Bound::Closed(v) => ('[', render_rational(v)),
            Bound::Open(v) => ('(', render_rational(v)),
        };
        let (close, hi) = match &self.hi {
            Bound::Unbounded => (')', "+inf".to_string()),
            Bound::Closed(v) => (']', render_rational(v)),
            Bound::Open(v) => (')', render_rational(v)),
        };
        write!(f, "{open}{lo}, {hi}{close}")
    }
}

/// A finite union of disjoint, sorted, non-touching intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn all() -> Self {
        IntervalSet {
            parts: vec![Interval::all()],
        }
    }

    pub fn point(a: Rational) -> Self {
        IntervalSet {
            parts: vec![Interval::point(a)],
        }
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Self::from_bounds(Bound::Closed(a), Bound::Closed(b))
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Self::from_bounds(Bound::Open(a), Bound::Open(b))
    }

    pub fn from_bounds(lo: Bound, hi: Bound) -> Self {
        Self::from_intervals(Interval::new(lo, hi))
    }

    /// `[0, +inf)`.
    pub fn nonneg() -> Self {
        Self::from_bounds(Bound::Closed(Rational::zero()), Bound::Unbounded)
    }

    /// `(-inf, 0]`.
    pub fn nonpos() -> Self {
        Self::from_bounds(Bound::Unbounded, Bound::Closed(Rational::zero()))
    }

    /// Canonicalises an arbitrary collection of intervals.
    pub fn from_intervals(items: impl IntoIterator<Item = Interval>) -> Self {
        let mut items: Vec<Interval> = items.into_iter().collect();
        items.sort_by(|a, b| cmp_lower(&a.lo, &b.lo));
        let mut parts: Vec<Interval> = Vec::with_capacity(items.len());
        for it in items {
            match parts.last_mut() {
                Some(last) if last.connects(&it) => {
                    if cmp_upper(&it.hi, &last.hi) == Ordering::Greater {
                        last.hi = it.hi;
                    }
                }
                _ => parts.push(it),
            }
        }
        IntervalSet { parts }
    }

    pub fn from_points(points: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Connected (an interval or empty).
    pub fn is_interval(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn is_all(&self) -> bool {
        self.parts.len() == 1 && self.parts[0] == Interval::all()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_intervals(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Self::from_intervals(out)
    }

    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut start = Bound::Unbounded;
        let mut at_start = true;
        for p in &self.parts {
            let end = p.lo.flipped();
            if at_start && p.lo == Bound::Unbounded {
                // nothing to the left
            } else if let Some(iv) = Interval::new(start.clone(), end) {
                out.push(iv);
            }
            at_start = false;
            start = p.hi.flipped();
            if p.hi == Bound::Unbounded {
                return Self::from_intervals(out);
            }
        }
        if let Some(iv) = Interval::new(start, Bound::Unbounded) {
            out.push(iv);
        }
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn closure(&self) -> IntervalSet {
        let close = |b: &Bound| match b {
            Bound::Open(v) => Bound::Closed(v.clone()),
            other => other.clone(),
        };
        Self::from_intervals(self.parts.iter().map(|p| Interval {
            lo: close(&p.lo),
            hi: close(&p.hi),
        }))
    }

    pub fn interior(&self) -> IntervalSet {
        let open = |b: &Bound| match b {
            Bound::Closed(v) => Bound::Open(v.clone()),
            other => other.clone(),
        };
        Self::from_intervals(
            self.parts
                .iter()
                .filter_map(|p| Interval::new(open(&p.lo), open(&p.hi))),
        )
    }

    /// Interior relative to the affine hull: a single point is its own
    /// relative interior, anything longer uses the ordinary interior.
    pub fn relative_interior(&self) -> IntervalSet {
        if self.parts.len() == 1 && self.parts[0].is_point() {
            self.clone()
        } else {
            self.interior()
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    /// Points of the set which are not interior points.
    pub fn boundary_in_set(&self) -> IntervalSet {
        self.difference(&self.interior())
    }

    /// Boundary points of the set (in the closure, not in the interior).
    pub fn boundary(&self) -> IntervalSet {
        self.closure().difference(&self.interior())
    }

    /// `{-x | x in self}`.
    pub fn negate(&self) -> IntervalSet {
        Self::from_intervals(self.parts.iter().map(|p| Interval {
            lo: p.hi.map(|v| -v),
            hi: p.lo.map(|v| -v),
        }))
    }

    /// `{x + c | x in self}`.
    pub fn translate(&self, c: &Rational) -> IntervalSet {
        Self::from_intervals(self.parts.iter().map(|p| Interval {
            lo: p.lo.map(|v| v + c),
            hi: p.hi.map(|v| v + c),
        }))
    }

    /// `{l x | x in self}` for any rational `l`.
    pub fn scale(&self, l: &Rational) -> IntervalSet {
        if l.is_zero() {
            return if self.is_empty() {
                Self::empty()
            } else {
                Self::point(Rational::zero())
            };
        }
        let pos = Self::from_intervals(self.parts.iter().map(|p| Interval {
            lo: p.lo.map(|v| v * l.abs()),
            hi: p.hi.map(|v| v * l.abs()),
        }));
        if l.is_negative() {
            pos.negate()
        } else {
            pos
        }
    }

    /// Minkowski sum `{a + b | a in self, b in other}`.
    pub fn minkowski_sum(&self, other: &IntervalSet) -> IntervalSet {
        let add = |a: &Bound, b: &Bound| match (a, b) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => Bound::Unbounded,
            (x, y) => {
                let v = x.value().unwrap() + y.value().unwrap();
                if x.is_closed() && y.is_closed() {
                    Bound::Closed(v)
                } else {
                    Bound::Open(v)
                }
            }
        };
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                out.push(Interval {
                    lo: add(&a.lo, &b.lo),
                    hi: add(&a.hi, &b.hi),
                });
            }
        }
        Self::from_intervals(out)
    }

    /// Cone of the real line: one of `{0}`, `[0, +inf)`, `(-inf, 0]`, `R`.
    pub fn is_cone(&self) -> bool {
        *self == Self::point(Rational::zero())
            || *self == Self::nonneg()
            || *self == Self::nonpos()
            || self.is_all()
    }

    pub fn inf(&self) -> XReal {
        self.parts.first().map_or(XReal::Nu, Interval::inf)
    }

    pub fn sup(&self) -> XReal {
        self.parts.last().map_or(XReal::Nu, Interval::sup)
    }

    /// All finite endpoint values, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .parts
            .iter()
            .flat_map(|p| [p.lo.value().cloned(), p.hi.value().cloned()])
            .flatten()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// One representative point per component.
    pub fn samples(&self) -> Vec<Rational> {
        self.parts.iter().map(Interval::sample).collect()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for IntervalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

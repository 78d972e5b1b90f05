//! Seeded random instances for property tests, benchmarks and the acceptance run.

use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{q, qi, Rational, XReal};
use crate::bounds::{ExtSeq, Tail};
use crate::bridge::ClassicalFn;
use crate::dsl::{Document, Payload};
use crate::extfn::Polyhedron;
use crate::interval::{Bound, Interval, IntervalSet};
use crate::pwa::{Piece, PiecewiseFn};

/// Which values a generated piece or point may take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Values {
    /// Anything in `R ∪ {-inf, +inf, nu}`.
    Any,
    /// No `nu`.
    Extended,
    /// Finite or `nu`.
    FiniteOrNu,
    Finite,
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A rational `n/d` with `|n| <= 8` and `d ∈ {1, 2, 3, 4}`.
    pub fn rational(&mut self) -> Rational {
        let d = *[1, 1, 2, 2, 3, 4].choose(&mut self.rng).unwrap();
        q(self.int(-8, 8), d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn value(&mut self, vals: Values) -> XReal {
        let infs = vals == Values::Any || vals == Values::Extended;
        let nu = vals == Values::Any || vals == Values::FiniteOrNu;
        match self.int(0, 9) {
            0 if infs => XReal::PlusInf,
            1 if infs => XReal::MinusInf,
            2 | 3 if nu => XReal::Nu,
            _ => XReal::Finite(self.rational()),
        }
    }

    pub fn piece(&mut self, vals: Values) -> Piece {
        match self.value(vals) {
            XReal::Finite(c) => {
                if self.chance(0.6) {
                    Piece::affine(self.rational(), c)
                } else {
                    Piece::constant(c)
                }
            }
            v => Piece::from_value(&v),
        }
    }

    /// Up to `max` distinct sorted rationals.
    pub fn breakpoints(&mut self, max: usize) -> Vec<Rational> {
        let n = self.rng.gen_range(0..=max);
        let mut b: Vec<Rational> = (0..n).map(|_| self.rational()).collect();
        b.sort();
        b.dedup();
        b
    }

    pub fn pwa_with(&mut self, vals: Values, max_breaks: usize) -> PiecewiseFn {
        let breaks = self.breakpoints(max_breaks);
        let pieces = (0..=breaks.len()).map(|_| self.piece(vals)).collect();
        let points = (0..breaks.len()).map(|_| self.value(vals)).collect();
        PiecewiseFn::new(breaks, pieces, points).expect("sorted distinct breakpoints")
    }

    /// An unrestricted function with up to four breakpoints.
    pub fn pwa(&mut self) -> PiecewiseFn {
        self.pwa_with(Values::Any, 4)
    }

    /// A function with `dom = R`.
    pub fn pwa_full_dom(&mut self) -> PiecewiseFn {
        self.pwa_with(Values::Extended, 4)
    }

    /// A nontrivial function that is finite on its domain.
    pub fn pwa_proper(&mut self) -> PiecewiseFn {
        loop {
            let f = self.pwa_with(Values::FiniteOrNu, 4);
            if !f.is_trivial() {
                return f;
            }
        }
    }

    /// A nonempty interval with rational or infinite ends.
    pub fn interval(&mut self) -> Interval {
        loop {
            let (a, b) = (self.rational(), self.rational());
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            let lo = match self.int(0, 3) {
                0 => Bound::Unbounded,
                1 => Bound::Open(a),
                _ => Bound::Closed(a),
            };
            let hi = match self.int(0, 3) {
                0 => Bound::Unbounded,
                1 => Bound::Open(b),
                _ => Bound::Closed(b),
            };
            if let Some(iv) = Interval::new(lo, hi) {
                return iv;
            }
        }
    }

    /// A union of up to three intervals and points, possibly empty.
    pub fn interval_set(&mut self) -> IntervalSet {
        let n = self.int(0, 3);
        let parts: Vec<Interval> = (0..n)
            .map(|_| if self.chance(0.2) { Interval::point(self.rational()) } else { self.interval() })
            .collect();
        IntervalSet::from_intervals(parts)
    }

    fn max_of_affines(&mut self) -> PiecewiseFn {
        let mut f = PiecewiseFn::affine(self.rational(), self.rational());
        for _ in 0..self.int(0, 2) {
            f = f.pointwise_max(&PiecewiseFn::affine(self.rational(), self.rational()));
        }
        f
    }

    /// A proper convex function: a max of affines on an interval, possibly raised at closed ends.
    pub fn pwa_convex_proper(&mut self) -> PiecewiseFn {
        let d = self.interval();
        let base = self.max_of_affines();
        let raise: Vec<(Rational, Rational)> = [d.lo().clone(), d.hi().clone()]
            .into_iter()
            .filter_map(|b| match b {
                Bound::Closed(e) if self.chance(0.3) => Some((e, Rational::from_integer(self.int(1, 3).into()))),
                _ => None,
            })
            .collect();
        let dom = IntervalSet::from_intervals([d.clone()]);
        let mut breaks = base.breakpoints().to_vec();
        breaks.extend(dom.endpoints());
        PiecewiseFn::from_evaluator(breaks, |x| {
            if !d.contains(x) {
                return XReal::Nu;
            }
            let v = base.eval(x);
            match raise.iter().find(|(e, _)| e == x) {
                Some((_, r)) => v.add(&XReal::Finite(r.clone())),
                None => v,
            }
        })
        .expect("piecewise affine")
    }

    /// A convex function, sometimes improper: `-inf` inside an interval `dom_-`, `+inf` on the rest of `dom`.
    pub fn pwa_convex(&mut self) -> PiecewiseFn {
        match self.int(0, 3) {
            0 | 1 => {
                let f = self.pwa_convex_proper();
                if self.chance(0.3) {
                    self.plus_inf_outside(f)
                } else {
                    f
                }
            }
            _ => self.pwa_convex_improper(),
        }
    }

    /// Extends a convex function by `+inf` on a larger interval.
    fn plus_inf_outside(&mut self, f: PiecewiseFn) -> PiecewiseFn {
        let dm = f.dom();
        let hull = match (dm.intervals().first(), dm.intervals().last()) {
            (Some(a), Some(b)) => Interval::new(a.lo().clone(), b.hi().clone()).unwrap(),
            _ => return f,
        };
        let outer = self.widen(&hull);
        let mut breaks = f.breakpoints().to_vec();
        breaks.extend(IntervalSet::from_intervals([outer.clone()]).endpoints());
        PiecewiseFn::from_evaluator(breaks, |x| match f.eval(x) {
            XReal::Nu if outer.contains(x) => XReal::PlusInf,
            v => v,
        })
        .expect("piecewise affine")
    }

    fn widen(&mut self, iv: &Interval) -> Interval {
        let lo = match iv.lo() {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Open(a) | Bound::Closed(a) => match self.int(0, 3) {
                0 => Bound::Unbounded,
                1 => Bound::Open(a - qi(self.int(1, 2))),
                2 => Bound::Closed(a - qi(self.int(0, 2))),
                _ => iv.lo().clone(),
            },
        };
        let hi = match iv.hi() {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Open(b) | Bound::Closed(b) => match self.int(0, 3) {
                0 => Bound::Unbounded,
                1 => Bound::Open(b + qi(self.int(1, 2))),
                2 => Bound::Closed(b + qi(self.int(0, 2))),
                _ => iv.hi().clone(),
            },
        };
        let lo = match (&lo, iv.lo()) {
            (Bound::Closed(a), Bound::Open(b)) if a == b => iv.lo().clone(),
            _ => lo,
        };
        let hi = match (&hi, iv.hi()) {
            (Bound::Closed(a), Bound::Open(b)) if a == b => iv.hi().clone(),
            _ => hi,
        };
        Interval::new(lo, hi).unwrap_or_else(|| iv.clone())
    }

    /// A convex function attaining `-inf`.
    pub fn pwa_convex_improper(&mut self) -> PiecewiseFn {
        let dm = if self.chance(0.15) { Interval::point(self.rational()) } else { self.interval() };
        let d = self.widen(&dm);
        let ends: Vec<(Rational, XReal)> = [dm.lo().clone(), dm.hi().clone()]
            .into_iter()
            .filter_map(|b| match b {
                Bound::Closed(e) => {
                    let v = if self.chance(0.5) { XReal::MinusInf } else { XReal::Finite(self.rational()) };
                    Some((e, v))
                }
                _ => None,
            })
            .collect();
        // A point dom_- carries one value, so both "ends" must agree.
        let ends = if dm.is_point() { ends[..1].to_vec() } else { ends };
        let mut breaks = IntervalSet::from_intervals([dm.clone()]).endpoints();
        breaks.extend(IntervalSet::from_intervals([d.clone()]).endpoints());
        PiecewiseFn::from_evaluator(breaks, |x| {
            if let Some((_, v)) = ends.iter().find(|(e, _)| e == x) {
                v.clone()
            } else if dm.contains(x) {
                XReal::MinusInf
            } else if d.contains(x) {
                XReal::PlusInf
            } else {
                XReal::Nu
            }
        })
        .expect("piecewise constant")
    }

    /// A proper function on an interval: half convex by construction, half arbitrary finite pieces.
    pub fn pwa_proper_convex_dom(&mut self) -> PiecewiseFn {
        if self.chance(0.5) {
            return self.pwa_convex_proper();
        }
        let d = IntervalSet::from_intervals([self.interval()]);
        let g = self.pwa_with(Values::Finite, 3);
        g.restrict(&d)
    }

    /// No `+inf` values and no unbounded affine pieces, so the function is bounded above.
    pub fn pwa_bounded_above(&mut self) -> PiecewiseFn {
        let vals = [Values::Any, Values::FiniteOrNu][self.int(0, 1) as usize];
        let mut breaks = self.breakpoints(4);
        if breaks.is_empty() {
            breaks.push(self.rational());
        }
        let m = breaks.len();
        let pieces = (0..=m)
            .map(|i| {
                match self.piece(vals) {
                    Piece::PlusInf => Piece::constant(self.rational()),
                    Piece::Affine { intercept, .. } if i == 0 || i == m => Piece::constant(intercept),
                    p => p,
                }
            })
            .collect();
        let points = (0..m)
            .map(|_| match self.value(vals) {
                XReal::PlusInf => XReal::zero(),
                v => v,
            })
            .collect();
        PiecewiseFn::new(breaks, pieces, points).expect("sorted distinct breakpoints")
    }

    /// A function whose only possible breakpoint is `0`, with pieces of the form `m x`, constants
    /// in `{-inf, +inf, nu}`, and sometimes a nonzero intercept.
    pub fn pwa_cone_dom(&mut self) -> PiecewiseFn {
        let side = |g: &mut Gen| match g.int(0, 6) {
            0 => Piece::PlusInf,
            1 => Piece::MinusInf,
            2 => Piece::Nu,
            3 => Piece::affine(g.rational(), g.rational()),
            _ => Piece::affine(g.rational(), Rational::zero()),
        };
        let (l, r) = (side(self), side(self));
        let p0 = [XReal::zero(), XReal::zero(), XReal::MinusInf, XReal::Nu, XReal::PlusInf, XReal::int(1)]
            .choose(&mut self.rng)
            .unwrap()
            .clone();
        PiecewiseFn::new(vec![Rational::zero()], vec![l, r], vec![p0]).unwrap()
    }

    /// Often affine: a line, a constant or a `-inf`/`+inf` split, restricted to an interval.
    pub fn pwa_affine_like(&mut self) -> PiecewiseFn {
        let d = IntervalSet::from_intervals([self.interval()]);
        let core = match self.int(0, 3) {
            0 => PiecewiseFn::affine(self.rational(), self.rational()),
            1 => PiecewiseFn::constant(&self.value(Values::Extended)),
            _ => {
                let (l, r) = if self.chance(0.5) {
                    (Piece::MinusInf, Piece::PlusInf)
                } else {
                    (Piece::PlusInf, Piece::MinusInf)
                };
                let split = vec![self.rational()];
                PiecewiseFn::new(split, vec![l, r], vec![self.value(Values::Extended)]).unwrap()
            }
        };
        core.restrict(&d)
    }

    /// A total classical function, possibly with `+inf` and `-inf`.
    pub fn classical(&mut self) -> ClassicalFn {
        ClassicalFn::new(self.pwa_with(Values::Extended, 4)).expect("total")
    }

    pub fn polyhedron(&mut self, dim: usize) -> Polyhedron {
        let n = self.int(0, 3);
        let rows = (0..n).map(|_| ((0..dim).map(|_| qi(self.int(-3, 3))).collect(), self.rational())).collect();
        Polyhedron::new(dim, rows).expect("valid dimension")
    }

    pub fn sequence(&mut self) -> ExtSeq {
        let prefix = (0..self.int(0, 3)).map(|_| self.value(Values::Extended)).collect();
        let tail = match self.int(0, 2) {
            0 => Tail::Constant(self.value(Values::Extended)),
            1 => Tail::Periodic((0..self.int(1, 3)).map(|_| self.value(Values::Extended)).collect()),
            _ => Tail::Arithmetic(self.rational(), self.rational()),
        };
        ExtSeq::new(prefix, tail).expect("no nu terms")
    }

    pub fn name(&mut self) -> String {
        let stems = ["f", "g", "phi", "a_set", "poly", "s2", "seq_x"];
        format!("{}{}", stems.choose(&mut self.rng).unwrap(), self.int(0, 99))
    }

    pub fn document(&mut self) -> Document {
        let name = self.name();
        let payload = match self.int(0, 3) {
            0 => Payload::Function(self.pwa()),
            1 => Payload::Set(self.interval_set()),
            2 => {
                let dim = self.int(1, 4) as usize;
                Payload::Polyhedron(self.polyhedron(dim))
            }
            _ => Payload::Sequence(self.sequence()),
        };
        Document::new(&name, payload)
    }
}

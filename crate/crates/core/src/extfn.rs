//! Extended functions over `R` or `R^n`: indicators, Minkowski functionals,
//! the translated-set scalarization on polyhedra, pointwise algebra, epigraph
//! and level membership, and exact optimisation.

use std::fmt;
use std::sync::Arc;

use num::{Signed, Zero};

use crate::arith::{Rational, XReal};
use crate::bounds::{inf_set, sup_set};
use crate::error::{Error, Result};
use crate::interval::{Bound, IntervalSet};
use crate::pwa::{PiecewiseFn, Relation};

/// A closed polyhedron `{x | a_i · x <= b_i for all i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<(Vec<Rational>, Rational)>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<(Vec<Rational>, Rational)>) -> Result<Self> {
        if !(1..=4).contains(&dim) {
            return Err(Error::InvalidFunction(format!(
                "dimension {dim} is outside 1..=4"
            )));
        }
        if let Some((a, _)) = constraints.iter().find(|(a, _)| a.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: a.len(),
            });
        }
        Ok(Polyhedron { dim, constraints })
    }

    /// The whole space.
    pub fn space(dim: usize) -> Result<Self> {
        Self::new(dim, vec![])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[(Vec<Rational>, Rational)] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|(a, b)| &dot(a, x) <= b)
    }

    /// The same set as an interval set, for `dim == 1`.
    pub fn to_interval_set(&self) -> Option<IntervalSet> {
        if self.dim != 1 {
            return None;
        }
        let mut set = IntervalSet::all();
        for (a, b) in &self.constraints {
            let a = &a[0];
            let half = if a.is_zero() {
                if b.is_negative() {
                    IntervalSet::empty()
                } else {
                    IntervalSet::all()
                }
            } else if a.is_positive() {
                IntervalSet::from_bounds(Bound::Unbounded, Bound::Closed(b / a))
            } else {
                IntervalSet::from_bounds(Bound::Closed(b / a), Bound::Unbounded)
            };
            set = set.intersection(&half);
        }
        Some(set)
    }
}

pub(crate) fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// `x ↦ inf{t ∈ R | x ∈ t k + A}` for a polyhedron `A` and direction `k ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalarization {
    set: Polyhedron,
    k: Vec<Rational>,
}

/// Feasibility and the lower bound on `t` collected from the constraints at one point.
enum TBounds {
    Empty,
    Lower(Option<Rational>),
}

impl Scalarization {
    pub fn new(set: Polyhedron, k: Vec<Rational>) -> Result<Self> {
        if k.len() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                got: k.len(),
            });
        }
        if k.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Scalarization { set, k })
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn set(&self) -> &Polyhedron {
        &self.set
    }

    pub fn direction(&self) -> &[Rational] {
        &self.k
    }

    fn t_bounds(&self, x: &[Rational]) -> TBounds {
        // x - t k ∈ A  ⟺  t (a·k) >= a·x - b for every constraint.
        let (mut lower, mut upper): (Option<Rational>, Option<Rational>) = (None, None);
        for (a, b) in self.set.constraints() {
            let alpha = dot(a, &self.k);
            let beta = dot(a, x) - b;
            if alpha.is_zero() {
                if beta.is_positive() {
                    return TBounds::Empty;
                }
            } else if alpha.is_positive() {
                let v = beta / alpha;
                lower = Some(lower.map_or(v.clone(), |l| l.max(v)));
            } else {
                let v = beta / alpha;
                upper = Some(upper.map_or(v.clone(), |u| u.min(v)));
            }
        }
        match (&lower, &upper) {
            (Some(l), Some(u)) if l > u => TBounds::Empty,
            _ => TBounds::Lower(lower),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Result<XReal> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match self.t_bounds(x) {
            TBounds::Empty => XReal::Nu,
            TBounds::Lower(Some(l)) => XReal::Finite(l),
            TBounds::Lower(None) => XReal::MinusInf,
        })
    }

    /// `s ↦ φ(x0 + s d)` as an exact piecewise-affine function.
    pub fn restrict_to_line(&self, x0: &[Rational], d: &[Rational]) -> Result<PiecewiseFn> {
        if x0.len() != self.dim() || d.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x0.len().min(d.len()),
            });
        }
        // Each constraint contributes the line s ↦ (a·x0 - b + s a·d) / (a·k)
        // or, when a·k = 0, a feasibility switch where a·x0 - b + s a·d = 0.
        let mut lines = Vec::new();
        let mut breaks = Vec::new();
        for (a, b) in self.set.constraints() {
            let alpha = dot(a, &self.k);
            let (c0, c1) = (dot(a, x0) - b, dot(a, d));
            if alpha.is_zero() {
                if !c1.is_zero() {
                    breaks.push(-c0 / c1);
                }
            } else {
                lines.push((c1 / &alpha, c0 / &alpha));
            }
        }
        for (i, (m1, c1)) in lines.iter().enumerate() {
            for (m2, c2) in &lines[i + 1..] {
                if m1 != m2 {
                    breaks.push((c2 - c1) / (m1 - m2));
                }
            }
        }
        PiecewiseFn::from_evaluator(breaks, |s| {
            let x: Vec<Rational> = x0.iter().zip(d).map(|(p, q)| p + s * q).collect();
            self.eval(&x).expect("dimension checked")
        })
    }

    /// The exact one-dimensional function, for `dim == 1`.
    pub fn to_pwa(&self) -> Option<PiecewiseFn> {
        (self.dim() == 1).then(|| {
            self.restrict_to_line(&[Rational::zero()], &[Rational::from_integer(1.into())])
                .expect("one-dimensional restriction")
        })
    }
}

/// A function known only through pointwise evaluation.
#[derive(Clone)]
pub struct BlackBox {
    pub name: String,
    pub dim: usize,
    eval: Arc<dyn Fn(&[Rational]) -> XReal + Send + Sync>,
}

impl BlackBox {
    pub fn new(
        name: &str,
        dim: usize,
        eval: impl Fn(&[Rational]) -> XReal + Send + Sync + 'static,
    ) -> Self {
        BlackBox {
            name: name.to_string(),
            dim,
            eval: Arc::new(eval),
        }
    }

    /// A function of one real variable.
    pub fn scalar(name: &str, eval: impl Fn(&Rational) -> XReal + Send + Sync + 'static) -> Self {
        Self::new(name, 1, move |x| eval(&x[0]))
    }

    pub fn eval(&self, x: &[Rational]) -> XReal {
        (self.eval)(x)
    }

    pub fn eval1(&self, x: &Rational) -> XReal {
        (self.eval)(std::slice::from_ref(x))
    }
}

impl fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlackBox({}, dim {})", self.name, self.dim)
    }
}

/// A pointwise operation on extended functions.
#[derive(Clone, Debug)]
pub enum Combination {
    Negate,
    Scale(XReal),
    Add(ExtFn),
    ShiftValue(XReal),
}

/// An extended function `X -> R ∪ {-inf, +inf, nu}`.
#[derive(Clone, Debug)]
pub enum ExtFn {
    Pwa(PiecewiseFn),
    Scalarization(Scalarization),
    PolyIndicator(Polyhedron),
    BlackBox(BlackBox),
    Combined(Box<ExtFn>, Box<Combination>),
}

impl ExtFn {
    pub fn dim(&self) -> usize {
        match self {
            ExtFn::Pwa(_) => 1,
            ExtFn::Scalarization(s) => s.dim(),
            ExtFn::PolyIndicator(p) => p.dim(),
            ExtFn::BlackBox(b) => b.dim,
            ExtFn::Combined(f, _) => f.dim(),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Result<XReal> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match self {
            ExtFn::Pwa(f) => f.eval(&x[0]),
            ExtFn::Scalarization(s) => s.eval(x)?,
            ExtFn::PolyIndicator(p) => {
                if p.contains(x) {
                    XReal::zero()
                } else {
                    XReal::Nu
                }
            }
            ExtFn::BlackBox(b) => b.eval(x),
            ExtFn::Combined(f, op) => {
                let v = f.eval(x)?;
                match op.as_ref() {
                    Combination::Negate => v.neg(),
                    Combination::Scale(l) => l.mul(&v),
                    Combination::Add(g) => v.add(&g.eval(x)?),
                    Combination::ShiftValue(c) => v.add(c),
                }
            }
        })
    }

    /// Exact one-dimensional representation, when one exists.
    pub fn as_pwa(&self) -> Option<PiecewiseFn> {
        match self {
            ExtFn::Pwa(f) => Some(f.clone()),
            ExtFn::Scalarization(s) => s.to_pwa(),
            ExtFn::PolyIndicator(p) => p.to_interval_set().map(|a| PiecewiseFn::indicator(&a)),
            ExtFn::BlackBox(_) => None,
            ExtFn::Combined(f, op) => {
                let f = f.as_pwa()?;
                Some(match op.as_ref() {
                    Combination::Negate => f.negate(),
                    Combination::Scale(l) => f.scale(l),
                    Combination::Add(g) => f.add(&g.as_pwa()?),
                    Combination::ShiftValue(c) => f.shift_value(c),
                })
            }
        }
    }

    pub fn in_dom(&self, x: &[Rational]) -> Result<bool> {
        Ok(!self.eval(x)?.is_nu())
    }
}

/// `ι_A` for an interval set: `0` on `A`, `nu` off `A`.
pub fn indicator(a: &IntervalSet) -> ExtFn {
    ExtFn::Pwa(PiecewiseFn::indicator(a))
}

pub fn indicator_polyhedron(p: &Polyhedron) -> ExtFn {
    ExtFn::PolyIndicator(p.clone())
}

/// Pointwise combination; exact functions stay exact.
pub fn combine(kind: Combination, f: &ExtFn) -> ExtFn {
    if let Some(pf) = f.as_pwa() {
        let exact = match &kind {
            Combination::Negate => Some(pf.negate()),
            Combination::Scale(l) => Some(pf.scale(l)),
            Combination::ShiftValue(c) => Some(pf.shift_value(c)),
            Combination::Add(g) => g.as_pwa().map(|g| pf.add(&g)),
        };
        if let Some(h) = exact {
            return ExtFn::Pwa(h);
        }
    }
    ExtFn::Combined(Box::new(f.clone()), Box::new(kind))
}

/// Epigraph or hypograph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graph {
    Epi,
    Hypo,
}

/// `(x, t) ∈ epi f` iff `f(x) <= t`; hypograph iff `f(x) >= t`.
pub fn epi_hypo_contains(f: &ExtFn, x: &[Rational], t: &Rational, which: Graph) -> Result<bool> {
    let v = f.eval(x)?;
    let t = XReal::Finite(t.clone());
    Ok(match which {
        Graph::Epi => v.le(&t),
        Graph::Hypo => v.ge(&t),
    })
}

/// `x ∈ lev_{f,R}(t)`.
pub fn level_membership(f: &ExtFn, rel: Relation, t: &Rational, x: &[Rational]) -> Result<bool> {
    Ok(rel.holds(&f.eval(x)?, &XReal::Finite(t.clone())))
}

/// The Minkowski functional `p_A(x) = inf{l > 0 | x ∈ l A}`.
pub fn minkowski(a: &IntervalSet) -> Result<PiecewiseFn> {
    let zero = Rational::zero();
    if !a.contains(&zero) {
        return Err(Error::MinkowskiRequiresZero);
    }
    // For x > 0 the feasible l are x / m with m ∈ A ∩ (0, inf); the infimum
    // is x / sup m (0 for an unbounded side, nu when the side is empty).
    let ray = |side: IntervalSet, extreme: XReal| -> crate::pwa::Piece {
        if a.intersection(&side).is_empty() {
            crate::pwa::Piece::Nu
        } else {
            match extreme {
                XReal::Finite(m) => {
                    crate::pwa::Piece::affine(Rational::from_integer(1.into()) / m, zero.clone())
                }
                _ => crate::pwa::Piece::constant(zero.clone()),
            }
        }
    };
    let pos = IntervalSet::from_bounds(Bound::Open(zero.clone()), Bound::Unbounded);
    let neg = IntervalSet::from_bounds(Bound::Unbounded, Bound::Open(zero.clone()));
    let right = ray(pos.clone(), a.intersection(&pos).sup());
    let left = ray(neg.clone(), a.intersection(&neg).inf());
    PiecewiseFn::new(vec![zero], vec![left, right], vec![XReal::zero()])
}

/// Which bound to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Inf,
    Sup,
}

/// Exact `inf` or `sup` of `f` over a region of the line.
pub fn opt_over(f: &ExtFn, region: &IntervalSet, which: Extremum) -> Result<XReal> {
    let pf = f.as_pwa().ok_or(Error::NotExactlyOptimizable)?;
    let image = pf.image(region);
    Ok(match which {
        Extremum::Inf => inf_set(&image),
        Extremum::Sup => sup_set(&image),
    })
}

//! Conversion between classical functions (values in `R̄`, `+inf` marking
//! infeasibility) and unified functions (`nu` marking infeasibility).

use serde_json::{json, Value};

use crate::arith::{render_rational, AddMode, Rational, XReal};
use crate::bounds::{inf_set, sup_set, XRealSet};
use crate::error::{Error, Result};
use crate::extfn::Extremum;
use crate::interval::IntervalSet;
use crate::pwa::{check_property, Piece, PiecewiseFn, Property};
use crate::pwa::{lsc_fails_at, usc_fails_at};

/// A piecewise-affine function `R -> R̄` with no `nu` anywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalFn {
    f: PiecewiseFn,
    mode: AddMode,
}

impl ClassicalFn {
    pub fn new(f: PiecewiseFn) -> Result<Self> {
        Self::with_mode(f, AddMode::InfAdd)
    }

    pub fn with_mode(f: PiecewiseFn, mode: AddMode) -> Result<Self> {
        if !f.dom().is_all() {
            return Err(Error::InvalidFunction(
                "a classical function takes values in R̄ everywhere".into(),
            ));
        }
        if mode == AddMode::NuAdd {
            return Err(Error::InvalidFunction(
                "a classical function uses inf- or sup-addition".into(),
            ));
        }
        Ok(ClassicalFn { f, mode })
    }

    /// `Ψ_C`: `0` on `C`, `+inf` off `C`.
    pub fn psi(c: &IntervalSet) -> Self {
        ClassicalFn {
            f: fill_nu(&PiecewiseFn::indicator(c), &XReal::PlusInf),
            mode: AddMode::InfAdd,
        }
    }

    pub fn as_pwa(&self) -> &PiecewiseFn {
        &self.f
    }

    pub fn mode(&self) -> AddMode {
        self.mode
    }

    pub fn eval(&self, x: &Rational) -> XReal {
        self.f.eval(x)
    }

    /// Classical effective domain `{x | f(x) < +inf}`.
    pub fn dom(&self) -> IntervalSet {
        self.f.dom_minus()
    }

    /// Some real value is attained and `-inf` is not.
    pub fn is_proper(&self) -> bool {
        !self.f.attains(&XReal::MinusInf) && !self.f.value_class_set(XReal::is_finite).is_empty()
    }

    pub fn is_finite_valued(&self) -> bool {
        self.f.value_class_set(XReal::is_finite).is_all()
    }

    pub fn epi_contains(&self, x: &Rational, t: &Rational) -> bool {
        self.eval(x).le_q(t)
    }

    pub fn lsc_at(&self, x: &Rational) -> bool {
        !lsc_fails_at(&self.f, x)
    }

    pub fn usc_at(&self, x: &Rational) -> bool {
        !usc_fails_at(&self.f, x)
    }

    pub fn continuous_at(&self, x: &Rational) -> bool {
        self.lsc_at(x) && self.usc_at(x)
    }

    /// Convexity of the epigraph.
    pub fn is_convex(&self) -> bool {
        check_property(&self.f, Property::Convex).holds()
    }

    /// Pointwise sum under this function's addition convention.
    pub fn add(&self, other: &ClassicalFn) -> ClassicalFn {
        let mut breaks = self.f.breakpoints().to_vec();
        breaks.extend_from_slice(other.f.breakpoints());
        let mode = self.mode;
        let f = PiecewiseFn::from_evaluator(breaks, |x| {
            self.eval(x)
                .add_with_mode(&other.eval(x), mode)
                .expect("classical values")
        })
        .expect("sum of piecewise-affine functions");
        ClassicalFn { f, mode }
    }

    /// Classical infimum or supremum over `x0`.
    pub fn bound_over(&self, x0: &IntervalSet, which: Extremum) -> XReal {
        classical_bounds(&self.f.image(x0), which).expect("classical image has no nu")
    }
}

fn map_values(f: &PiecewiseFn, from: &XReal, to: &XReal) -> PiecewiseFn {
    let swap = |v: &XReal| if v == from { to.clone() } else { v.clone() };
    let pieces = f
        .pieces()
        .iter()
        .map(|p| {
            if p == &Piece::from_value(from) {
                Piece::from_value(to)
            } else {
                p.clone()
            }
        })
        .collect();
    let points = f.point_values().iter().map(swap).collect();
    PiecewiseFn::new(f.breakpoints().to_vec(), pieces, points).expect("same layout")
}

fn fill_nu(f: &PiecewiseFn, with: &XReal) -> PiecewiseFn {
    map_values(f, &XReal::Nu, with)
}

/// Rewrites `+inf` to `nu`.
pub fn to_unified(f: &ClassicalFn) -> PiecewiseFn {
    map_values(&f.f, &XReal::PlusInf, &XReal::Nu)
}

/// Rewrites `nu` to `+inf`; defined only when `f` never attains `+inf`.
pub fn to_classical(f: &PiecewiseFn) -> Result<ClassicalFn> {
    if f.attains(&XReal::PlusInf) {
        return Err(Error::PlusInfNotRepresentable);
    }
    ClassicalFn::new(fill_nu(f, &XReal::PlusInf))
}

/// `inf ∅ = +inf`, `sup ∅ = -inf`; otherwise the usual bounds.
pub fn classical_bounds(a: &XRealSet, which: Extremum) -> Result<XReal> {
    if a.nu {
        return Err(Error::NuInClassicalSet);
    }
    Ok(match (a.is_empty(), which) {
        (true, Extremum::Inf) => XReal::PlusInf,
        (true, Extremum::Sup) => XReal::MinusInf,
        (false, Extremum::Inf) => inf_set(a),
        (false, Extremum::Sup) => sup_set(a),
    })
}

/// Unified infimum or supremum of `f` over `x0`.
pub fn unified_bound_over(f: &PiecewiseFn, x0: &IntervalSet, which: Extremum) -> XReal {
    let image = f.image(x0);
    match which {
        Extremum::Inf => inf_set(&image),
        Extremum::Sup => sup_set(&image),
    }
}

/// Classical and unified bounds over one region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub region: IntervalSet,
    pub classical: (XReal, XReal),
    pub unified: (XReal, XReal),
}

impl BoundsRow {
    fn new(f: &ClassicalFn, fu: &PiecewiseFn, region: IntervalSet) -> Self {
        BoundsRow {
            classical: (
                f.bound_over(&region, Extremum::Inf),
                f.bound_over(&region, Extremum::Sup),
            ),
            unified: (
                unified_bound_over(fu, &region, Extremum::Inf),
                unified_bound_over(fu, &region, Extremum::Sup),
            ),
            region,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "region": self.region.to_string(),
            "classical": {"inf": self.classical.0.to_string(), "sup": self.classical.1.to_string()},
            "unified": {"inf": self.unified.0.to_string(), "sup": self.unified.1.to_string()},
        })
    }
}

/// Itemised comparison of a classical function and its unified rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub unified: PiecewiseFn,
    /// `dom f_ua` equals the classical domain.
    pub dom_equal: bool,
    pub proper_equal: bool,
    pub finite_valued_equal: bool,
    pub epi_grid_size: usize,
    pub epi_mismatches: Vec<(Rational, Rational)>,
    /// Points of the classical domain where lsc verdicts differ.
    pub lsc_mismatches: Vec<Rational>,
    pub convex_equal: bool,
    /// Bounds on the classical domain, on the empty set, and on all of `R`.
    pub bounds_on_dom: BoundsRow,
    pub bounds_on_empty: BoundsRow,
    pub bounds_on_all: BoundsRow,
    /// `dom_- \ int(dom_-)`.
    pub boundary: IntervalSet,
    /// Points of the classical domain where classical and unified continuity differ.
    pub continuity_discrepancies: Vec<Rational>,
    /// Points where "classical continuous iff interior and unified continuous" fails.
    pub k_violations: Vec<Rational>,
    /// Boundary points where the classical function is usc.
    pub boundary_usc: Vec<Rational>,
}

impl CorrespondenceReport {
    pub fn discrepancies_localized(&self) -> bool {
        self.continuity_discrepancies
            .iter()
            .all(|x| self.boundary.contains(x))
    }

    /// Every similarity item holds and every difference item behaves as expected.
    pub fn consistent(&self) -> bool {
        let on_dom = &self.bounds_on_dom;
        let empty = &self.bounds_on_empty;
        self.dom_equal
            && self.proper_equal
            && self.finite_valued_equal
            && self.epi_mismatches.is_empty()
            && self.lsc_mismatches.is_empty()
            && self.convex_equal
            && (on_dom.region.is_empty() || on_dom.classical == on_dom.unified)
            && empty.classical == (XReal::PlusInf, XReal::MinusInf)
            && empty.unified == (XReal::Nu, XReal::Nu)
            && self.k_violations.is_empty()
            && self.boundary_usc.is_empty()
            && self.discrepancies_localized()
    }

    pub fn to_json(&self) -> Value {
        let pts = |v: &[Rational]| v.iter().map(render_rational).collect::<Vec<_>>();
        json!({
            "similar": {
                "dom": self.dom_equal,
                "proper": self.proper_equal,
                "finite_valued": self.finite_valued_equal,
                "epigraph": {
                    "grid_points": self.epi_grid_size,
                    "mismatches": self.epi_mismatches.iter()
                        .map(|(x, t)| json!([render_rational(x), render_rational(t)]))
                        .collect::<Vec<_>>(),
                },
                "lsc_mismatches": pts(&self.lsc_mismatches),
                "convex": self.convex_equal,
            },
            "different": {
                "bounds": [self.bounds_on_dom.to_json(), self.bounds_on_empty.to_json(), self.bounds_on_all.to_json()],
                "continuity": {
                    "boundary": self.boundary.to_string(),
                    "discrepancies": pts(&self.continuity_discrepancies),
                    "localized": self.discrepancies_localized(),
                    "equivalence_violations": pts(&self.k_violations),
                    "classical_usc_on_boundary": pts(&self.boundary_usc),
                },
            },
            "consistent": self.consistent(),
        })
    }
}

/// Points at which the two sides may differ: breakpoints, domain endpoints,
/// and two samples per gap.
fn candidate_points(f: &PiecewiseFn) -> Vec<Rational> {
    let mut pts = crate::pwa::dense_probes(f);
    pts.extend(f.dom_minus().endpoints());
    pts.sort();
    pts.dedup();
    pts
}

pub fn correspondence_check(f: &ClassicalFn) -> CorrespondenceReport {
    let fu = to_unified(f);
    let cdom = f.dom();
    let pts = candidate_points(&f.f);

    let mut ts: Vec<Rational> = (-8..=8)
        .map(|k| Rational::new(k.into(), 2.into()))
        .collect();
    for p in &pts {
        for v in [fu.eval(p), f.eval(p)] {
            if let XReal::Finite(r) = v {
                ts.push(r);
            }
        }
    }
    ts.sort();
    ts.dedup();
    let mut epi_mismatches = Vec::new();
    for x in &pts {
        for t in &ts {
            let unified = fu.eval(x).le_q(t);
            if unified != f.epi_contains(x, t) {
                epi_mismatches.push((x.clone(), t.clone()));
            }
        }
    }

    let in_cdom: Vec<&Rational> = pts.iter().filter(|x| cdom.contains(x)).collect();
    let lsc_mismatches = in_cdom
        .iter()
        .filter(|x| f.lsc_at(x) == lsc_fails_at(&fu, x))
        .map(|x| (*x).clone())
        .collect();

    let ua_dom_int = fu.dom().interior();
    let boundary = cdom.boundary_in_set();
    let unified_continuous = |x: &Rational| !lsc_fails_at(&fu, x) && !usc_fails_at(&fu, x);
    let continuity_discrepancies = in_cdom
        .iter()
        .filter(|x| f.continuous_at(x) != unified_continuous(x))
        .map(|x| (*x).clone())
        .collect();
    let k_violations = in_cdom
        .iter()
        .filter(|x| f.continuous_at(x) != (ua_dom_int.contains(x) && unified_continuous(x)))
        .map(|x| (*x).clone())
        .collect();
    let boundary_usc = boundary
        .endpoints()
        .into_iter()
        .filter(|x| boundary.contains(x) && f.usc_at(x))
        .collect();

    CorrespondenceReport {
        dom_equal: fu.dom() == cdom,
        proper_equal: fu.is_proper() == f.is_proper(),
        finite_valued_equal: fu.is_finite_valued() == f.is_finite_valued(),
        epi_grid_size: pts.len() * ts.len(),
        epi_mismatches,
        lsc_mismatches,
        convex_equal: check_property(&fu, Property::Convex).holds() == f.is_convex(),
        bounds_on_dom: BoundsRow::new(f, &fu, cdom.clone()),
        bounds_on_empty: BoundsRow::new(f, &fu, IntervalSet::empty()),
        bounds_on_all: BoundsRow::new(f, &fu, IntervalSet::all()),
        boundary,
        continuity_discrepancies,
        k_violations,
        boundary_usc,
        unified: fu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn drawback() -> ClassicalFn {
        let f = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::PlusInf, Piece::affine(qi(1), qi(0))],
            vec![XReal::PlusInf],
        )
        .unwrap();
        ClassicalFn::new(f).unwrap()
    }

    #[test]
    fn psi_and_iota() {
        let c = IntervalSet::closed(qi(0), qi(1));
        let psi = ClassicalFn::psi(&c);
        assert_eq!(psi.eval(&qi(2)), XReal::PlusInf);
        assert_eq!(psi.eval(&q(1, 2)), XReal::zero());
        assert_eq!(to_unified(&psi), PiecewiseFn::indicator(&c));
        assert_eq!(to_classical(&PiecewiseFn::indicator(&c)).unwrap(), psi);
    }

    #[test]
    fn rewrites() {
        let id = ClassicalFn::new(PiecewiseFn::identity()).unwrap();
        assert_eq!(to_unified(&id), PiecewiseFn::identity());
        let top = ClassicalFn::new(PiecewiseFn::constant(&XReal::PlusInf)).unwrap();
        assert!(to_unified(&top).is_trivial());
        let improper = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::MinusInf, Piece::PlusInf],
            vec![XReal::zero()],
        )
        .unwrap();
        assert_eq!(to_classical(&improper), Err(Error::PlusInfNotRepresentable));
        assert!(ClassicalFn::new(PiecewiseFn::nu()).is_err());
    }

    #[test]
    fn empty_set_conventions() {
        assert_eq!(
            classical_bounds(&XRealSet::empty(), Extremum::Inf).unwrap(),
            XReal::PlusInf
        );
        assert_eq!(
            classical_bounds(&XRealSet::empty(), Extremum::Sup).unwrap(),
            XReal::MinusInf
        );
        let s = XRealSet::from_values(&[XReal::int(1), XReal::int(2)]);
        assert_eq!(classical_bounds(&s, Extremum::Inf).unwrap(), XReal::int(1));
        let nu = XRealSet::from_values(&[XReal::Nu]);
        assert_eq!(
            classical_bounds(&nu, Extremum::Inf),
            Err(Error::NuInClassicalSet)
        );
    }

    #[test]
    fn psi_correspondence() {
        let r = correspondence_check(&ClassicalFn::psi(&IntervalSet::closed(qi(0), qi(1))));
        assert!(r.consistent(), "{}", r.to_json());
        assert_eq!(r.continuity_discrepancies, vec![qi(0), qi(1)]);
        assert_eq!(r.boundary, IntervalSet::from_points([qi(0), qi(1)]));
        assert!(check_property(&r.unified, Property::ContinuousOnDom).holds());
        assert!(!ClassicalFn::psi(&IntervalSet::closed(qi(0), qi(1))).usc_at(&qi(0)));
    }

    #[test]
    fn affine_has_no_discrepancy() {
        let f = ClassicalFn::new(PiecewiseFn::affine(qi(2), qi(3))).unwrap();
        let r = correspondence_check(&f);
        assert!(r.consistent());
        assert!(r.continuity_discrepancies.is_empty());
        assert!(r.boundary.is_empty());
    }

    #[test]
    fn drawback_lsc() {
        let f = drawback();
        assert!(!f.lsc_at(&qi(0)));
        assert!(check_property(f.as_pwa(), Property::LscFunction).fails());
        let fu = to_unified(&f);
        assert!(check_property(&fu, Property::LscOnDom).holds());
        let r = correspondence_check(&f);
        assert!(r.consistent(), "{}", r.to_json());
        assert_eq!(r.bounds_on_all.classical.1, XReal::PlusInf);
        assert_eq!(r.bounds_on_all.unified.1, XReal::PlusInf);
        assert_eq!(r.bounds_on_all.unified.0, XReal::zero());
    }

    #[test]
    fn inf_addition_resolves_pairs() {
        let up = ClassicalFn::psi(&IntervalSet::nonneg());
        let down = ClassicalFn::new(PiecewiseFn::constant(&XReal::MinusInf)).unwrap();
        let sum = up.add(&down);
        assert_eq!(sum.eval(&qi(-1)), XReal::PlusInf);
        assert_eq!(sum.eval(&qi(1)), XReal::MinusInf);
        let unified = to_unified(&up).add(&to_unified(&down));
        assert_eq!(to_unified(&sum), unified);
    }
}

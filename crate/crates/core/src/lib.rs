//! Exact extended real-valued functions with an explicit undefined value `nu`.
//!
//! The crate covers the value calculus on `R ∪ {-inf, +inf, nu}`, bounds and
//! limits, piecewise-affine functions with exact property checkers,
//! variational objects (conjugates, subdifferentials, support functions) and
//! a bridge to the classical `+inf`-as-infeasible conventions.

pub mod arith;
pub mod bounds;
pub mod bridge;
pub mod dsl;
pub mod error;
pub mod extfn;
pub mod interval;
pub mod oracle;
pub mod pwa;
pub mod sampled;
pub mod testing;
pub mod variational;

pub use arith::{q, qi, AddMode, Comparison, Rational, XReal};
pub use bounds::{
    inf_set, min_max_set, seq_limit, seq_limsup_liminf, sup_set, ExtSeq, Tail, XRealSet,
};
pub use bridge::{
    classical_bounds, correspondence_check, to_classical, to_unified, unified_bound_over,
    ClassicalFn, CorrespondenceReport,
};
pub use dsl::{
    parse_document, parse_function, parse_polyhedron, parse_sequence, parse_set, render_document,
    render_function, render_polyhedron, render_sequence, render_set, Document, DocumentKind,
    Payload,
};
pub use error::{Error, Result, Span};
pub use extfn::{
    combine, epi_hypo_contains, indicator, indicator_polyhedron, level_membership, minkowski,
    opt_over, BlackBox, Combination, ExtFn, Extremum, Graph, Polyhedron, Scalarization,
};
pub use interval::{Bound, Interval, IntervalSet};
pub use pwa::{
    check_property, classify_report, pair_violation, pair_violation_by, triple_violation,
    triple_violation_by, Classification, Piece, PiecewiseFn, Property, PropertyReport, Relation,
    Side, Verdict, Witness,
};
pub use variational::{
    barrier_cone, conjugate, lipschitz, monotone, subdifferential, support_function, PairVerdict,
    SlopeSet,
};

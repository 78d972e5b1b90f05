//! Bounds of subsets of the extended reals with `nu`, and exact limits of
//! symbolic sequences.

use std::fmt;

use num::{Signed, Zero};

use crate::arith::{Rational, XReal};
use crate::error::{Error, Result};
use crate::interval::IntervalSet;

/// A subset of `R ∪ {-inf, +inf, nu}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XRealSet {
    pub reals: IntervalSet,
    pub plus_inf: bool,
    pub minus_inf: bool,
    pub nu: bool,
}

impl XRealSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_reals(reals: IntervalSet) -> Self {
        XRealSet {
            reals,
            ..Self::default()
        }
    }

    pub fn from_values<'a>(values: impl IntoIterator<Item = &'a XReal>) -> Self {
        let mut s = Self::empty();
        for v in values {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: &XReal) {
        match v {
            XReal::Finite(r) => self.reals = self.reals.union(&IntervalSet::point(r.clone())),
            XReal::PlusInf => self.plus_inf = true,
            XReal::MinusInf => self.minus_inf = true,
            XReal::Nu => self.nu = true,
        }
    }

    pub fn union(&self, other: &XRealSet) -> XRealSet {
        XRealSet {
            reals: self.reals.union(&other.reals),
            plus_inf: self.plus_inf || other.plus_inf,
            minus_inf: self.minus_inf || other.minus_inf,
            nu: self.nu || other.nu,
        }
    }

    pub fn contains(&self, v: &XReal) -> bool {
        match v {
            XReal::Finite(r) => self.reals.contains(r),
            XReal::PlusInf => self.plus_inf,
            XReal::MinusInf => self.minus_inf,
            XReal::Nu => self.nu,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.nu && self.is_trivial()
    }

    /// `A ⊆ {nu}`.
    pub fn is_trivial(&self) -> bool {
        self.reals.is_empty() && !self.plus_inf && !self.minus_inf
    }

    /// Exactly one element.
    pub fn singleton(&self) -> Option<XReal> {
        let flags = [self.plus_inf, self.minus_inf, self.nu]
            .iter()
            .filter(|&&b| b)
            .count();
        match (flags, self.reals.intervals()) {
            (0, [iv]) if iv.is_point() => Some(iv.inf()),
            (1, []) => Some(if self.plus_inf {
                XReal::PlusInf
            } else if self.minus_inf {
                XReal::MinusInf
            } else {
                XReal::Nu
            }),
            _ => None,
        }
    }
}

impl fmt::Display for XRealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        if self.minus_inf {
            items.push("-inf".to_string());
        }
        if !self.reals.is_empty() {
            items.push(self.reals.to_string());
        }
        if self.plus_inf {
            items.push("+inf".to_string());
        }
        if self.nu {
            items.push("nu".to_string());
        }
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Greatest lower bound; `nu` for a trivial set.
pub fn inf_set(a: &XRealSet) -> XReal {
    if a.is_trivial() {
        XReal::Nu
    } else if a.minus_inf {
        XReal::MinusInf
    } else if !a.reals.is_empty() {
        a.reals.inf()
    } else {
        XReal::PlusInf
    }
}

/// Least upper bound; `nu` for a trivial set.
pub fn sup_set(a: &XRealSet) -> XReal {
    if a.is_trivial() {
        XReal::Nu
    } else if a.plus_inf {
        XReal::PlusInf
    } else if !a.reals.is_empty() {
        a.reals.sup()
    } else {
        XReal::MinusInf
    }
}

/// Minimum and maximum, present only when the bound is a real element of `A`.
pub fn min_max_set(a: &XRealSet) -> (Option<XReal>, Option<XReal>) {
    let attained = |b: XReal| match &b {
        XReal::Finite(r) if a.reals.contains(r) => Some(b),
        _ => None,
    };
    (attained(inf_set(a)), attained(sup_set(a)))
}

/// Eventual behaviour of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    Constant(XReal),
    Periodic(Vec<XReal>),
    /// `a + b n`.
    Arithmetic(Rational, Rational),
}

/// A sequence into the extended reals: a finite prefix followed by a tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSeq {
    prefix: Vec<XReal>,
    tail: Tail,
}

impl ExtSeq {
    pub fn new(prefix: Vec<XReal>, tail: Tail) -> Result<Self> {
        let tail_values: &[XReal] = match &tail {
            Tail::Constant(c) => std::slice::from_ref(c),
            Tail::Periodic(vs) if vs.is_empty() => {
                return Err(Error::InvalidSequence(
                    "periodic tail needs at least one value".into(),
                ))
            }
            Tail::Periodic(vs) => vs,
            Tail::Arithmetic(..) => &[],
        };
        if prefix.iter().chain(tail_values).any(XReal::is_nu) {
            return Err(Error::InvalidSequence(
                "sequence terms must not be nu".into(),
            ));
        }
        Ok(ExtSeq { prefix, tail })
    }

    pub fn prefix(&self) -> &[XReal] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Term `a_n`, counting from `n = 0`.
    pub fn term(&self, n: usize) -> XReal {
        if n < self.prefix.len() {
            return self.prefix[n].clone();
        }
        match &self.tail {
            Tail::Constant(c) => c.clone(),
            Tail::Periodic(vs) => vs[(n - self.prefix.len()) % vs.len()].clone(),
            Tail::Arithmetic(a, b) => XReal::Finite(a + b * Rational::from_integer(n.into())),
        }
    }

    /// Cluster points in the extended reals.
    pub fn cluster_points(&self) -> XRealSet {
        match &self.tail {
            Tail::Constant(c) => XRealSet::from_values([c]),
            Tail::Periodic(vs) => XRealSet::from_values(vs),
            Tail::Arithmetic(a, b) => {
                if b.is_zero() {
                    XRealSet::from_values([&XReal::Finite(a.clone())])
                } else if b.is_positive() {
                    XRealSet::from_values([&XReal::PlusInf])
                } else {
                    XRealSet::from_values([&XReal::MinusInf])
                }
            }
        }
    }
}

/// The limit, or `nu` when the sequence has more than one cluster point.
pub fn seq_limit(s: &ExtSeq) -> XReal {
    // The extended line is compact, so a unique cluster point is the limit.
    s.cluster_points().singleton().unwrap_or(XReal::Nu)
}

/// `(limsup, liminf, cluster points)`.
pub fn seq_limsup_liminf(s: &ExtSeq) -> (XReal, XReal, XRealSet) {
    let c = s.cluster_points();
    (sup_set(&c), inf_set(&c), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};
    use crate::interval::Bound;

    fn set(vals: &[XReal]) -> XRealSet {
        XRealSet::from_values(vals)
    }

    /// Lower bounds by the definition: `b` is a lower bound iff no element is `< b`.
    fn brute_inf(vals: &[XReal]) -> XReal {
        let mut cands: Vec<XReal> = (-40..=40).map(|n| XReal::Finite(q(n, 4))).collect();
        cands.push(XReal::MinusInf);
        cands.push(XReal::PlusInf);
        let lower: Vec<&XReal> = cands
            .iter()
            .filter(|b| !vals.iter().any(|a| a.lt(b)))
            .collect();
        let mut best = lower[0].clone();
        for b in lower {
            if b.gt(&best) {
                best = b.clone();
            }
        }
        best
    }

    fn brute_sup(vals: &[XReal]) -> XReal {
        let neg: Vec<XReal> = vals.iter().map(XReal::neg).collect();
        brute_inf(&neg).neg()
    }

    #[test]
    fn empty_and_trivial_sets() {
        assert_eq!(inf_set(&XRealSet::empty()), XReal::Nu);
        assert_eq!(sup_set(&XRealSet::empty()), XReal::Nu);
        assert_eq!(inf_set(&set(&[XReal::Nu])), XReal::Nu);
        assert_eq!(min_max_set(&set(&[XReal::Nu])), (None, None));
    }

    #[test]
    fn plus_inf_alone_is_its_own_lower_bound() {
        assert_eq!(inf_set(&set(&[XReal::PlusInf])), XReal::PlusInf);
        assert_eq!(inf_set(&set(&[XReal::PlusInf, XReal::Nu])), XReal::PlusInf);
    }

    #[test]
    fn mixed_set_against_definition() {
        let vals = [XReal::int(3), XReal::MinusInf, XReal::Nu];
        assert_eq!(inf_set(&set(&vals)), XReal::MinusInf);
        assert_eq!(sup_set(&set(&vals)), XReal::int(3));
        assert_eq!(brute_inf(&vals), XReal::MinusInf);
        assert_eq!(brute_sup(&vals), XReal::int(3));
    }

    #[test]
    fn min_and_max() {
        assert_eq!(
            min_max_set(&set(&[XReal::MinusInf, XReal::int(3)])),
            (None, Some(XReal::int(3)))
        );
        assert_eq!(
            min_max_set(&set(&[XReal::int(0)])),
            (Some(XReal::int(0)), Some(XReal::int(0)))
        );
        let open = XRealSet::from_reals(IntervalSet::from_bounds(
            Bound::Open(qi(0)),
            Bound::Closed(qi(1)),
        ));
        assert_eq!(min_max_set(&open), (None, Some(XReal::int(1))));
    }

    #[test]
    fn sequence_limits() {
        let alt = ExtSeq::new(vec![], Tail::Periodic(vec![XReal::int(1), XReal::int(-1)])).unwrap();
        assert_eq!(seq_limit(&alt), XReal::Nu);
        let (sup, inf, c) = seq_limsup_liminf(&alt);
        assert_eq!((sup, inf), (XReal::int(1), XReal::int(-1)));
        assert_eq!(c, set(&[XReal::int(1), XReal::int(-1)]));

        let n = ExtSeq::new(vec![], Tail::Arithmetic(qi(0), qi(1))).unwrap();
        assert_eq!(seq_limit(&n), XReal::PlusInf);
        assert_eq!(n.term(7), XReal::int(7));

        let c5 = ExtSeq::new(
            vec![XReal::int(9), XReal::int(9)],
            Tail::Constant(XReal::int(5)),
        )
        .unwrap();
        assert_eq!(seq_limit(&c5), XReal::int(5));
        assert_eq!(c5.term(1), XReal::int(9));

        let infs = ExtSeq::new(
            vec![],
            Tail::Periodic(vec![XReal::MinusInf, XReal::PlusInf]),
        )
        .unwrap();
        let (sup, inf, _) = seq_limsup_liminf(&infs);
        assert_eq!((sup, inf), (XReal::PlusInf, XReal::MinusInf));

        let a = ExtSeq::new(vec![], Tail::Arithmetic(qi(2), qi(3))).unwrap();
        let (sup, inf, c) = seq_limsup_liminf(&a);
        assert_eq!((sup, inf), (XReal::PlusInf, XReal::PlusInf));
        assert_eq!(c, set(&[XReal::PlusInf]));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(ExtSeq::new(vec![XReal::Nu], Tail::Constant(XReal::int(1))).is_err());
        assert!(ExtSeq::new(vec![], Tail::Periodic(vec![])).is_err());
        assert!(ExtSeq::new(vec![], Tail::Constant(XReal::Nu)).is_err());
    }
}

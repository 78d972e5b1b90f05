//! The value type [`XReal`]: exact rationals, the two infinities and the
//! undefined value `nu`, with the complete arithmetic and order calculus.
//!
//! `nu` absorbs every operation it takes part in and is not comparable with
//! any member of the extended reals. The sum `(+inf) + (-inf)` is `nu` under
//! the default [`AddMode::NuAdd`]; the two classical conventions are
//! available through [`XReal::add_with_mode`].

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact arbitrary-precision rational. Always kept reduced with a positive
/// denominator by `num`.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// An element of the extended reals with `nu` adjoined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XReal {
    Finite(Rational),
    PlusInf,
    MinusInf,
    Nu,
}

/// How `(+inf) + (-inf)` is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AddMode {
    /// The unified calculus: the sum is `nu`.
    #[default]
    NuAdd,
    /// Classical minimisation convention: the sum is `+inf`.
    InfAdd,
    /// Classical maximisation convention: the sum is `-inf`.
    SupAdd,
}

/// Outcome of [`XReal::compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl XReal {
    pub fn zero() -> Self {
        XReal::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        XReal::Finite(qi(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        XReal::Finite(q(n, d))
    }

    pub fn is_nu(&self) -> bool {
        matches!(self, XReal::Nu)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    /// Member of the extended reals (anything but `nu`).
    pub fn is_extended(&self) -> bool {
        !self.is_nu()
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, XReal::PlusInf | XReal::MinusInf)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            XReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sum in the unified calculus.
    pub fn add(&self, other: &XReal) -> XReal {
        use XReal::*;
        match (self, other) {
            (Nu, _) | (_, Nu) => Nu,
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => Nu,
            (PlusInf, _) | (_, PlusInf) => PlusInf,
            (MinusInf, _) | (_, MinusInf) => MinusInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Sum under an explicit convention. The classical modes only accept
    /// members of the extended reals.
    pub fn add_with_mode(&self, other: &XReal, mode: AddMode) -> Result<XReal, Error> {
        use XReal::*;
        match mode {
            AddMode::NuAdd => Ok(self.add(other)),
            AddMode::InfAdd | AddMode::SupAdd => {
                if self.is_nu() || other.is_nu() {
                    return Err(Error::NuInClassicalMode);
                }
                Ok(match (self, other) {
                    (PlusInf, MinusInf) | (MinusInf, PlusInf) => {
                        if mode == AddMode::InfAdd {
                            PlusInf
                        } else {
                            MinusInf
                        }
                    }
                    _ => self.add(other),
                })
            }
        }
    }

    pub fn neg(&self) -> XReal {
        use XReal::*;
        match self {
            Finite(a) => Finite(-a),
            PlusInf => MinusInf,
            MinusInf => PlusInf,
            Nu => Nu,
        }
    }

    pub fn sub(&self, other: &XReal) -> XReal {
        self.add(&other.neg())
    }

    /// Product. `0 * (+-inf) = 0`, but `0 * nu = nu`.
    pub fn mul(&self, other: &XReal) -> XReal {
        use XReal::*;
        match (self, other) {
            (Nu, _) | (_, Nu) => Nu,
            (Finite(a), Finite(b)) => Finite(a * b),
            (Finite(a), inf) | (inf, Finite(a)) => {
                if a.is_zero() {
                    XReal::zero()
                } else if a.is_positive() {
                    inf.clone()
                } else {
                    inf.neg()
                }
            }
            (PlusInf, PlusInf) | (MinusInf, MinusInf) => PlusInf,
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => MinusInf,
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, r: &Rational) -> XReal {
        self.mul(&XReal::Finite(r.clone()))
    }

    pub fn abs_val(&self) -> XReal {
        use XReal::*;
        match self {
            Finite(a) => Finite(a.abs()),
            PlusInf | MinusInf => PlusInf,
            Nu => Nu,
        }
    }

    /// Total order on the extended reals; `nu` is incomparable with all of
    /// them and equal to itself.
    pub fn compare(&self, other: &XReal) -> Comparison {
        use XReal::*;
        match (self, other) {
            (Nu, Nu) => Comparison::Equal,
            (Nu, _) | (_, Nu) => Comparison::Incomparable,
            _ => match self.rank().cmp(&other.rank()) {
                std::cmp::Ordering::Less => Comparison::Less,
                std::cmp::Ordering::Greater => Comparison::Greater,
                std::cmp::Ordering::Equal => match (self, other) {
                    (Finite(a), Finite(b)) => match a.cmp(b) {
                        std::cmp::Ordering::Less => Comparison::Less,
                        std::cmp::Ordering::Equal => Comparison::Equal,
                        std::cmp::Ordering::Greater => Comparison::Greater,
                    },
                    _ => Comparison::Equal,
                },
            },
        }
    }

    fn rank(&self) -> u8 {
        match self {
            XReal::MinusInf => 0,
            XReal::Finite(_) => 1,
            XReal::PlusInf => 2,
            XReal::Nu => unreachable!("nu has no rank"),
        }
    }

    /// `self <= other`. False whenever `nu` is involved, including `nu <= nu`.
    pub fn le(&self, other: &XReal) -> bool {
        !self.is_nu() && matches!(self.compare(other), Comparison::Less | Comparison::Equal)
    }

    pub fn lt(&self, other: &XReal) -> bool {
        self.compare(other) == Comparison::Less
    }

    pub fn ge(&self, other: &XReal) -> bool {
        other.le(self)
    }

    pub fn gt(&self, other: &XReal) -> bool {
        other.lt(self)
    }

    /// `self <= t` for a finite threshold.
    pub fn le_q(&self, t: &Rational) -> bool {
        self.le(&XReal::Finite(t.clone()))
    }

    pub fn ge_q(&self, t: &Rational) -> bool {
        self.ge(&XReal::Finite(t.clone()))
    }

    /// Larger of two members of the extended reals (panics on `nu`).
    pub fn max_ext(&self, other: &XReal) -> XReal {
        assert!(!self.is_nu() && !other.is_nu(), "max_ext on nu");
        if self.ge(other) {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min_ext(&self, other: &XReal) -> XReal {
        assert!(!self.is_nu() && !other.is_nu(), "min_ext on nu");
        if self.le(other) {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl From<Rational> for XReal {
    fn from(r: Rational) -> Self {
        XReal::Finite(r)
    }
}

impl From<i64> for XReal {
    fn from(n: i64) -> Self {
        XReal::int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr for XReal {
            type Output = XReal;
            fn $method(self, rhs: XReal) -> XReal {
                XReal::$method(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a XReal> for &'a XReal {
            type Output = XReal;
            fn $method(self, rhs: &'a XReal) -> XReal {
                XReal::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Neg for XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal::neg(&self)
    }
}

impl<'a> std::ops::Neg for &'a XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal::neg(self)
    }
}

/// Canonical text of a rational: `p` for integers, `p/q` otherwise.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal literal, with an optional
/// sign. Decimals are converted exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return None;
    }
    let value = if let Some((n, d)) = body.split_once('/') {
        if !is_digits(n) || !is_digits(d) {
            return None;
        }
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Rational::new(n.parse().ok()?, d)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !is_digits(int) || !is_digits(frac) {
            return None;
        }
        let digits: BigInt = format!("{int}{frac}").parse().ok()?;
        let scale = num::pow(BigInt::from(10), frac.len());
        Rational::new(digits, scale)
    } else {
        if !is_digits(body) {
            return None;
        }
        Rational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -value } else { value })
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::Finite(r) => f.write_str(&render_rational(r)),
            XReal::PlusInf => f.write_str("+inf"),
            XReal::MinusInf => f.write_str("-inf"),
            XReal::Nu => f.write_str("nu"),
        }
    }
}

impl FromStr for XReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "nu" => Ok(XReal::Nu),
            "+inf" | "inf" => Ok(XReal::PlusInf),
            "-inf" => Ok(XReal::MinusInf),
            other => parse_rational(other)
                .map(XReal::Finite)
                .ok_or_else(|| Error::InvalidValue(other.to_string())),
        }
    }
}

impl Serialize for XReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact conversion of a finite `f64` into a rational.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `1` as a rational, for call sites that read better with a name.
pub fn one() -> Rational {
    Rational::one()
}

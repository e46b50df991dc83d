//! Real parameters that remember whether they were supplied exactly.
//!
//! Regularity boundaries such as `|λ| = 2/(2L-1)` are sets of measure zero,
//! so a rational input like `-2/3` must be compared exactly while a decimal
//! input is compared with a fixed tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Absolute tolerance used for comparisons of floating-point inputs.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Real {
    Exact(Rational64),
    Float(f64),
}

impl Real {
    pub fn exact(numer: i64, denom: i64) -> Self {
        Real::Exact(Rational64::new(numer, denom))
    }

    pub fn value(self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::Float(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn abs(self) -> Self {
        match self {
            Real::Exact(r) => Real::Exact(r.abs()),
            Real::Float(v) => Real::Float(v.abs()),
        }
    }

    /// Sign with zero detection: exact for rationals, within
    /// [`FLOAT_TOLERANCE`] for floats.
    pub fn signum(self) -> i8 {
        match self {
            Real::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Real::Float(v) => {
                if v.abs() <= FLOAT_TOLERANCE {
                    0
                } else if v > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_zero(self) -> bool {
        self.signum() == 0
    }

    /// The integer this value equals, if any.
    pub fn as_integer(self) -> Option<i64> {
        match self {
            Real::Exact(r) => r.is_integer().then(|| r.to_integer()),
            Real::Float(v) => {
                let k = v.round();
                ((v - k).abs() <= FLOAT_TOLERANCE && k.abs() < 9.0e15).then_some(k as i64)
            }
        }
    }

    /// Three-way comparison honouring exactness; floats within tolerance
    /// compare equal.
    pub fn compare(self, other: Real) -> Ordering {
        match (self - other).signum() {
            0 => Ordering::Equal,
            1 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    fn combine(
        self,
        other: Real,
        exact: impl Fn(&Rational64, &Rational64) -> Option<Rational64>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Real {
        match (self, other) {
            (Real::Exact(x), Real::Exact(y)) => match exact(&x, &y) {
                Some(r) => Real::Exact(r),
                None => Real::Float(float(self.value(), other.value())),
            },
            _ => Real::Float(float(self.value(), other.value())),
        }
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real::Float(v)
    }
}

impl From<i64> for Real {
    fn from(v: i64) -> Self {
        Real::Exact(Rational64::from_integer(v))
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        self.combine(rhs, |x, y| x.checked_add(y), |x, y| x + y)
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self.combine(rhs, |x, y| x.checked_sub(y), |x, y| x - y)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        self.combine(rhs, |x, y| x.checked_mul(y), |x, y| x * y)
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self.combine(
            rhs,
            |x, y| if y.is_zero() { None } else { x.checked_div(y) },
            |x, y| x / y,
        )
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(-r),
            Real::Float(v) => Real::Float(-v),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Real::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Real::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Accepts `p/q` and plain integers as exact values, anything else that
/// parses as `f64` as a float.
impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| err("bad numerator"))?;
            let q: i64 = q.trim().parse().map_err(|_| err("bad denominator"))?;
            if q == 0 {
                return Err(err("zero denominator"));
            }
            return Ok(Real::exact(p, q));
        }
        if let Ok(k) = s.parse::<i64>() {
            return Ok(Real::from(k));
        }
        let v: f64 = s.parse().map_err(|_| err("not a number"))?;
        if !v.is_finite() {
            return Err(err("not finite"));
        }
        Ok(Real::Float(v))
    }
}

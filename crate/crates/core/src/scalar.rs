//! Numeric scalars used by the LP, independent-set and charge computations.
//!
//! Everything that does arithmetic on weights or charges is generic over
//! [`Scalar`]. Exact instantiations ([`BigRational`], [`Rational64`]) compare
//! with plain equality; floating point instantiations use a small absolute
//! tolerance so that the same algorithms can be run approximately.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed, ToPrimitive, Zero};

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync {
    /// `true` when arithmetic never rounds.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn to_f64(&self) -> f64;

    /// Tolerance-aware sign test; exact types use the true sign.
    fn is_positive_tol(&self) -> bool;

    fn is_negative_tol(&self) -> bool;

    fn is_zero_tol(&self) -> bool {
        !self.is_positive_tol() && !self.is_negative_tol()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero_tol()
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_positive_tol(&self) -> bool {
                *self > $eps
            }

            fn is_negative_tol(&self) -> bool {
                *self < -$eps
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_positive_tol(&self) -> bool {
        self.is_positive()
    }

    fn is_negative_tol(&self) -> bool {
        self.is_negative()
    }

    fn is_zero_tol(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_positive_tol(&self) -> bool {
        self.is_positive()
    }

    fn is_negative_tol(&self) -> bool {
        self.is_negative()
    }

    fn is_zero_tol(&self) -> bool {
        self.is_zero()
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

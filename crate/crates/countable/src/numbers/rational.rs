use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RationalError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("empty rational text")]
    Empty,
    #[error("invalid integer in rational: {0}")]
    BadInteger(#[from] num_bigint::ParseBigIntError),
}

/// An exact rational in canonical form: lowest terms, denominator >= 1,
/// zero represented as 0/1. Canonical form is established by every
/// constructor, so equality and hashing are plain structural comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigUint,
}

impl Rational {
    /// Builds `num/den` and reduces it to canonical form. A negative
    /// denominator moves its sign into the numerator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, RationalError> {
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Rational::zero());
        }
        let (den_sign, den_mag) = den.into_parts();
        let num = if den_sign == Sign::Minus { -num } else { num };
        let g = num.magnitude().gcd(&den_mag);
        Ok(Rational {
            num: num / BigInt::from(g.clone()),
            den: den_mag / g,
        })
    }

    pub fn zero() -> Self {
        Rational {
            num: BigInt::zero(),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    fn den_int(&self) -> BigInt {
        BigInt::from(self.den.clone())
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational {
            num: value,
            den: BigUint::one(),
        }
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from(BigInt::from(value))
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        let num = &self.num * rhs.den_int() + &rhs.num * self.den_int();
        let den = self.den_int() * rhs.den_int();
        Rational::new(num, den).expect("denominator product of nonzero denominators")
    }
}

impl Sub for Rational {
    type Output = Rational;

    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        let num = self.num * rhs.num;
        let den = BigInt::from(self.den * rhs.den);
        Rational::new(num, den).expect("denominator product of nonzero denominators")
    }
}

impl Div for Rational {
    type Output = Rational;

    /// Panics when `rhs` is zero.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by a zero rational");
        let num = self.num * rhs.den_int();
        let den = BigInt::from(self.den) * rhs.num;
        Rational::new(num, den).expect("nonzero divisor")
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (&self.num * other.den_int()).cmp(&(&other.num * self.den_int()))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RationalError::Empty);
        }
        match s.split_once('/') {
            None => Ok(Rational::from(BigInt::from_str(s)?)),
            Some((num, den)) => Rational::new(BigInt::from_str(num)?, BigInt::from_str(den)?),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(de::Error::custom)
    }
}

//! Named, invertible pairings between countable sets.
//!
//! A [`Bijection`] packages a forward and an inverse map together with
//! explicit domain and codomain descriptions; application is membership
//! checked, so a map can never be driven off the set it was defined on.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("{value} is not in {set}, as {name} requires")]
    OutOfDomain {
        name: String,
        value: BigInt,
        set: Domain,
    },
    #[error("cannot compose: {first} maps into {codomain}, but {second} starts from {domain}")]
    DomainMismatch {
        first: String,
        codomain: Domain,
        second: String,
        domain: Domain,
    },
    #[error("unknown bijection {0:?}; known names are double, pred, to-odd, zigzag, shift:<k>")]
    UnknownName(String),
    #[error("bad shift amount {0:?}; expected a nonnegative integer")]
    BadShift(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown set {0:?}; known sets are nat, nat0, even, odd, int")]
pub struct UnknownSetTag(String);

/// One of the named countable sets. Each tag carries a membership test and
/// a canonical enumeration (1-based) that hits every member exactly once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetTag {
    /// The naturals 1, 2, 3, ...
    Nat,
    /// The naturals with zero: 0, 1, 2, ...
    Nat0,
    /// The positive even numbers 2, 4, 6, ...
    Even,
    /// The positive odd numbers 1, 3, 5, ...
    Odd,
    /// All integers, enumerated 0, 1, -1, 2, -2, ...
    Int,
}

impl SetTag {
    pub const ALL: [SetTag; 5] = [
        SetTag::Nat,
        SetTag::Nat0,
        SetTag::Even,
        SetTag::Odd,
        SetTag::Int,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SetTag::Nat => "nat",
            SetTag::Nat0 => "nat0",
            SetTag::Even => "even",
            SetTag::Odd => "odd",
            SetTag::Int => "int",
        }
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        match self {
            SetTag::Nat => value.is_positive(),
            SetTag::Nat0 => !value.is_negative(),
            SetTag::Even => value.is_positive() && value.is_even(),
            SetTag::Odd => value.is_positive() && value.is_odd(),
            SetTag::Int => true,
        }
    }

    /// The n-th member of the canonical enumeration, n >= 1.
    pub fn nth(&self, n: &BigUint) -> BigInt {
        assert!(!n.is_zero(), "enumeration positions start at 1");
        let n = BigInt::from(n.clone());
        match self {
            SetTag::Nat => n,
            SetTag::Nat0 => n - 1,
            SetTag::Even => n * 2,
            SetTag::Odd => n * 2 - 1,
            SetTag::Int => {
                if n.is_even() {
                    n / 2
                } else {
                    let magnitude: BigInt = (n - 1) / 2;
                    -magnitude
                }
            }
        }
    }

    /// Position of `value` in the canonical enumeration, or None when the
    /// value is not a member.
    pub fn index_of(&self, value: &BigInt) -> Option<BigUint> {
        if !self.contains(value) {
            return None;
        }
        let index = match self {
            SetTag::Nat => value.clone(),
            SetTag::Nat0 => value + 1,
            SetTag::Even => value / 2,
            SetTag::Odd => (value + 1) / 2,
            SetTag::Int => {
                if value.is_zero() {
                    BigInt::one()
                } else if value.is_positive() {
                    value * 2
                } else {
                    -value * 2 + 1
                }
            }
        };
        Some(index.into_parts().1)
    }

    /// First `count` members of the canonical enumeration.
    pub fn enumerate(&self, count: u64) -> Vec<BigInt> {
        (1..=count).map(|n| self.nth(&BigUint::from(n))).collect()
    }
}

impl fmt::Display for SetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetTag {
    type Err = UnknownSetTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetTag::ALL
            .into_iter()
            .find(|tag| tag.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownSetTag(s.to_string()))
    }
}

impl Serialize for SetTag {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SetTag {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// Domain or codomain of a bijection: either a named set or a tail of the
/// naturals {start, start+1, ...}. Tails at 0 and 1 normalize to the named
/// sets they equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Tag(SetTag),
    NatFrom(BigUint),
}

impl Domain {
    pub fn nat_from(start: BigUint) -> Domain {
        if start.is_zero() {
            Domain::Tag(SetTag::Nat0)
        } else if start.is_one() {
            Domain::Tag(SetTag::Nat)
        } else {
            Domain::NatFrom(start)
        }
    }

    pub fn contains(&self, value: &BigInt) -> bool {
        match self {
            Domain::Tag(tag) => tag.contains(value),
            Domain::NatFrom(start) => !value.is_negative() && *value.magnitude() >= *start,
        }
    }

    /// The n-th member in ascending order for tails, or the tag's canonical
    /// enumeration, n >= 1.
    pub fn nth(&self, n: &BigUint) -> BigInt {
        match self {
            Domain::Tag(tag) => tag.nth(n),
            Domain::NatFrom(start) => {
                assert!(!n.is_zero(), "enumeration positions start at 1");
                BigInt::from(start + n - 1u32)
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Tag(tag) => tag.fmt(f),
            Domain::NatFrom(start) => write!(f, "nat>={start}"),
        }
    }
}

type Map = Arc<dyn Fn(&BigInt) -> BigInt + Send + Sync>;

/// An invertible pairing between two countable sets. Both directions are
/// total on their stated sets, and [`Bijection::apply`] / [`Bijection::unapply`]
/// reject values outside them.
#[derive(Clone)]
pub struct Bijection {
    name: String,
    domain: Domain,
    codomain: Domain,
    forward: Map,
    inverse: Map,
}

impl Bijection {
    fn make(
        name: impl Into<String>,
        domain: Domain,
        codomain: Domain,
        forward: impl Fn(&BigInt) -> BigInt + Send + Sync + 'static,
        inverse: impl Fn(&BigInt) -> BigInt + Send + Sync + 'static,
    ) -> Self {
        Bijection {
            name: name.into(),
            domain,
            codomain,
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    /// n <-> 2n between the naturals and the positive evens.
    pub fn doubling() -> Bijection {
        Bijection::make(
            "double",
            Domain::Tag(SetTag::Nat),
            Domain::Tag(SetTag::Even),
            |n| n * 2,
            |m| m / 2,
        )
    }

    /// n <-> n-1 between the naturals and the naturals with zero.
    pub fn predecessor() -> Bijection {
        Bijection::make(
            "pred",
            Domain::Tag(SetTag::Nat),
            Domain::Tag(SetTag::Nat0),
            |n| n - 1,
            |m| m + 1,
        )
    }

    /// n <-> 2n-1 between the naturals and the positive odds.
    pub fn to_odd() -> Bijection {
        Bijection::make(
            "to-odd",
            Domain::Tag(SetTag::Nat),
            Domain::Tag(SetTag::Odd),
            |n| n * 2 - 1,
            |m| (m + 1) / 2,
        )
    }

    /// The fold of the naturals onto all integers: even n goes to n/2, odd
    /// n goes to -(n-1)/2, so 1, 2, 3, 4, 5, ... pairs with 0, 1, -1, 2, -2, ...
    pub fn zigzag() -> Bijection {
        Bijection::make(
            "zigzag",
            Domain::Tag(SetTag::Nat),
            Domain::Tag(SetTag::Int),
            |n| {
                if n.is_even() {
                    n / 2
                } else {
                    let magnitude: BigInt = (n - 1) / 2;
                    -magnitude
                }
            },
            |z| {
                if z.is_zero() {
                    BigInt::one()
                } else if z.is_positive() {
                    z * 2
                } else {
                    -z * 2 + 1
                }
            },
        )
    }

    /// n <-> n-k between {k+1, k+2, ...} and the naturals.
    pub fn shift(k: BigUint) -> Bijection {
        let name = format!("shift:{k}");
        let domain = Domain::nat_from(&k + 1u32);
        let down = BigInt::from(k.clone());
        let up = BigInt::from(k);
        Bijection::make(
            name,
            domain,
            Domain::Tag(SetTag::Nat),
            move |n| n - &down,
            move |m| m + &up,
        )
    }

    /// The fixed named pairings. The shift family is parameterized and not
    /// included; build one with [`Bijection::shift`].
    pub fn builtins() -> Vec<Bijection> {
        vec![
            Bijection::doubling(),
            Bijection::predecessor(),
            Bijection::to_odd(),
            Bijection::zigzag(),
        ]
    }

    /// Looks up a CLI name: `double`, `pred`, `to-odd`, `zigzag`, or
    /// `shift:<k>`.
    pub fn by_name(name: &str) -> Result<Bijection, BijectionError> {
        match name {
            "double" => Ok(Bijection::doubling()),
            "pred" => Ok(Bijection::predecessor()),
            "to-odd" => Ok(Bijection::to_odd()),
            "zigzag" => Ok(Bijection::zigzag()),
            other => match other.strip_prefix("shift:") {
                Some(amount) => amount
                    .parse::<BigUint>()
                    .map(Bijection::shift)
                    .map_err(|_| BijectionError::BadShift(amount.to_string())),
                None => Err(BijectionError::UnknownName(other.to_string())),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn codomain(&self) -> &Domain {
        &self.codomain
    }

    /// Forward application, rejecting values outside the domain.
    pub fn apply(&self, value: &BigInt) -> Result<BigInt, BijectionError> {
        if !self.domain.contains(value) {
            return Err(BijectionError::OutOfDomain {
                name: self.name.clone(),
                value: value.clone(),
                set: self.domain.clone(),
            });
        }
        let out = (self.forward)(value);
        debug_assert!(
            self.codomain.contains(&out),
            "{} left its codomain",
            self.name
        );
        Ok(out)
    }

    /// Inverse application, rejecting values outside the codomain.
    pub fn unapply(&self, value: &BigInt) -> Result<BigInt, BijectionError> {
        if !self.codomain.contains(value) {
            return Err(BijectionError::OutOfDomain {
                name: self.name.clone(),
                value: value.clone(),
                set: self.codomain.clone(),
            });
        }
        let out = (self.inverse)(value);
        debug_assert!(
            self.domain.contains(&out),
            "{} inverse left its domain",
            self.name
        );
        Ok(out)
    }

    /// `self` first, then `then`. The codomain of `self` must equal the
    /// domain of `then` exactly; there is no implicit widening between
    /// overlapping sets.
    pub fn compose(&self, then: &Bijection) -> Result<Bijection, BijectionError> {
        if self.codomain != then.domain {
            return Err(BijectionError::DomainMismatch {
                first: self.name.clone(),
                codomain: self.codomain.clone(),
                second: then.name.clone(),
                domain: then.domain.clone(),
            });
        }
        let f = Arc::clone(&self.forward);
        let g = Arc::clone(&then.forward);
        let f_inv = Arc::clone(&self.inverse);
        let g_inv = Arc::clone(&then.inverse);
        Ok(Bijection {
            name: format!("{} . {}", then.name, self.name),
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            forward: Arc::new(move |x| g(&f(x))),
            inverse: Arc::new(move |y| f_inv(&g_inv(y))),
        })
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bijection({}: {} -> {})",
            self.name, self.domain, self.codomain
        )
    }
}

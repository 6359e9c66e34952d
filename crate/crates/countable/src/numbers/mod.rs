//! Exact number types: canonical rationals and lazy decimal expansions.
//!
//! Everything is built on arbitrary-precision integers. [`Rational`] keeps
//! itself in lowest terms with a positive denominator; [`DecimalStream`]
//! produces fractional digits on demand and memoizes them, so prefixes of
//! any length are exact and repeatable.

mod decimal;
mod rational;

pub use decimal::{DecimalParseError, DecimalPrefix, DecimalStream};
pub use rational::{Rational, RationalError};

//! Exact arithmetic for countability arguments.
//!
//! Everything here computes with unbounded integers; there is no floating
//! point anywhere. The crate covers five related areas:
//!
//! * [`numbers`]: canonical rationals and lazy decimal expansions
//!   (long division, digit-by-digit square roots, user-supplied digit
//!   streams).
//! * [`bijections`]: executable pairings between countable sets, with
//!   membership-checked application and composition.
//! * [`rationals`]: the diagonal enumeration of the positive rationals and
//!   its extension to all of them, including the inverse direction.
//! * [`diagonal`]: witness construction against claimed enumerations of
//!   decimal expansions, plus verification of the witness.
//! * [`hotel`]: a fully-occupied infinite hotel that keeps admitting guests,
//!   with an audit that checks nobody ever shares a room.
//! * [`dsl`]: a tiny expression language for pairing rules, a bounded
//!   bijection checker for them, and an exhaustive comparator for small
//!   finite sets.

pub mod bijections;
pub mod diagonal;
pub mod dsl;
pub mod hotel;
pub mod numbers;
pub mod rationals;

mod serde_util;

pub use numbers::{DecimalStream, Rational};

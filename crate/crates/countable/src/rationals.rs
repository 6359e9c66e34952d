//! The diagonal enumeration of the rationals.
//!
//! The positive rationals are walked as a grid of fractions p/q, traversed
//! diagonal by diagonal in alternating directions; cells whose fraction is
//! not in lowest terms are skipped, so every value is emitted exactly once.
//! The enumeration extends to all of Q by interleaving signs behind a
//! leading zero.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::numbers::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("{0} is not positive, so it has no position in the positive enumeration")]
    NotPositive(Rational),
    #[error(
        "{0} lies too deep in the grid to search; numerator and denominator must fit in 64 bits"
    )]
    BeyondSearchRange(Rational),
}

/// One cell of the fraction grid: the fraction num/den, both >= 1. The cell
/// sits on diagonal num + den - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub num: u64,
    pub den: u64,
}

impl GridCell {
    pub fn diagonal(&self) -> u64 {
        self.num + self.den - 1
    }
}

/// Every grid cell in traversal order, duplicates included. Diagonal 1 is
/// the single cell (1,1); even diagonals run from (1,d) down to (d,1); odd
/// diagonals run back up from (d,1) to (1,d).
pub fn grid_cells() -> impl Iterator<Item = GridCell> {
    let mut diagonal: u64 = 1;
    let mut step: u64 = 0;
    std::iter::from_fn(move || {
        let cell = if diagonal.is_multiple_of(2) {
            GridCell {
                num: 1 + step,
                den: diagonal - step,
            }
        } else {
            GridCell {
                num: diagonal - step,
                den: 1 + step,
            }
        };
        if step + 1 == diagonal {
            diagonal += 1;
            step = 0;
        } else {
            step += 1;
        }
        Some(cell)
    })
}

/// The first `count` cells in traversal order.
pub fn traverse_grid(count: u64) -> Vec<GridCell> {
    grid_cells().take(count as usize).collect()
}

/// The positive rationals in enumeration order: the grid walk with every
/// cell skipped whose fraction is not in lowest terms.
pub fn positive_rationals() -> impl Iterator<Item = Rational> {
    grid_cells()
        .filter(|cell| cell.num.gcd(&cell.den) == 1)
        .map(|cell| {
            Rational::new(BigInt::from(cell.num), BigInt::from(cell.den))
                .expect("grid denominators start at 1")
        })
}

/// The n-th positive rational, n >= 1.
pub fn positive_rational_at(n: u64) -> Rational {
    assert!(n >= 1, "enumeration positions start at 1");
    positive_rationals()
        .nth(n as usize - 1)
        .expect("the enumeration is infinite")
}

/// Position of a positive rational in the enumeration: the grid is walked
/// to the cell (p, q) on diagonal p+q-1, counting emissions on the way.
/// There is no closed form; inputs whose walk would not terminate in any
/// reasonable time are rejected as out of range.
pub fn index_of_positive(r: &Rational) -> Result<u128, EnumerationError> {
    if !r.is_positive() {
        return Err(EnumerationError::NotPositive(r.clone()));
    }
    let p = r
        .numerator()
        .magnitude()
        .to_u64()
        .ok_or_else(|| EnumerationError::BeyondSearchRange(r.clone()))?;
    let q = r
        .denominator()
        .to_u64()
        .ok_or_else(|| EnumerationError::BeyondSearchRange(r.clone()))?;
    let target = u128::from(p) + u128::from(q) - 1;
    if target > u128::from(u64::MAX) {
        return Err(EnumerationError::BeyondSearchRange(r.clone()));
    }
    let mut emitted: u128 = 0;
    for diagonal in 1..=target as u64 {
        for step in 0..diagonal {
            let (num, den) = if diagonal % 2 == 0 {
                (1 + step, diagonal - step)
            } else {
                (diagonal - step, 1 + step)
            };
            if num.gcd(&den) == 1 {
                emitted += 1;
                if num == p && den == q {
                    return Ok(emitted);
                }
            }
        }
    }
    unreachable!("a canonical fraction appears on its own diagonal");
}

/// All rationals: zero first, then the positive enumeration interleaved
/// with its negation, so the order runs 0, 1/1, -1/1, 1/2, -1/2, 2/1, ...
pub fn rationals() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain(positive_rationals().flat_map(|r| [r.clone(), -r]))
}

/// The n-th rational of the signed enumeration, n >= 1.
pub fn rational_at(n: u64) -> Rational {
    assert!(n >= 1, "enumeration positions start at 1");
    if n == 1 {
        Rational::zero()
    } else if n.is_multiple_of(2) {
        positive_rational_at(n / 2)
    } else {
        -positive_rational_at((n - 1) / 2)
    }
}

/// Position of any rational in the signed enumeration.
pub fn index_of(r: &Rational) -> Result<BigUint, EnumerationError> {
    if r.is_zero() {
        return Ok(BigUint::from(1u32));
    }
    let positive_index = index_of_positive(&r.abs())?;
    let doubled = BigUint::from(positive_index) * 2u32;
    Ok(if r.is_positive() {
        doubled
    } else {
        doubled + 1u32
    })
}

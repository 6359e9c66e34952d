//! The second diagonal argument, run as a computation.
//!
//! Given any enumeration of decimal expansions, the witness stream takes
//! entry k's k-th fractional digit and replaces it under a fixed-point-free
//! digit rule. The result differs from every entry in at least one printed
//! position, which is exactly what [`verify_witness`] re-checks.
//!
//! The inequality certified here is digit-string inequality. Two distinct
//! digit strings can still denote the same real (0.4999… = 0.5000…), so the
//! increment rule alone does not rule out a value collision with a
//! non-canonical entry. [`DigitRule::safe`] closes that gap: its outputs lie
//! in {4,5}, and no decimal with all fractional digits in {4,5} has a second
//! representation.
//!
//! [`verify_witness`]: Enumeration::verify_witness

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::DecimalStream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("{0} is not a decimal digit")]
    NotADigit(u8),
    #[error("rule maps {0} to itself; a diagonal rule must move every digit")]
    FixedPoint(u8),
}

/// A digit map with no fixed point, applied along the diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitRule {
    map: [u8; 10],
}

impl DigitRule {
    pub fn new(map: [u8; 10]) -> Result<Self, RuleError> {
        for (d, &out) in map.iter().enumerate() {
            if out > 9 {
                return Err(RuleError::NotADigit(out));
            }
            if out == d as u8 {
                return Err(RuleError::FixedPoint(out));
            }
        }
        Ok(DigitRule { map })
    }

    /// Adds one to each digit, turning 9 into 0.
    pub fn increment() -> Self {
        DigitRule {
            map: [1, 2, 3, 4, 5, 6, 7, 8, 9, 0],
        }
    }

    /// Sends every digit to 5, except 5 itself to 4. Witnesses built from
    /// this rule have no alternate decimal representation, so digit-string
    /// inequality implies value inequality against canonical entries.
    pub fn safe() -> Self {
        DigitRule {
            map: [5, 5, 5, 5, 5, 4, 5, 5, 5, 5],
        }
    }

    pub fn apply(&self, digit: u8) -> u8 {
        assert!(digit <= 9, "digit out of range");
        self.map[digit as usize]
    }
}

struct LazyEntries {
    known: Vec<DecimalStream>,
    source: Box<dyn Iterator<Item = DecimalStream> + Send>,
    exhausted: bool,
}

impl LazyEntries {
    /// Pulls until entry `k` (1-based) is known or the source ends.
    fn ensure(&mut self, k: u64) {
        while !self.exhausted && (self.known.len() as u64) < k {
            match self.source.next() {
                Some(entry) => self.known.push(entry),
                None => self.exhausted = true,
            }
        }
    }
}

#[derive(Clone)]
enum Entries {
    Finite(Arc<Vec<DecimalStream>>),
    Lazy(Arc<Mutex<LazyEntries>>),
}

/// An indexed sequence of decimal expansions, positions starting at 1.
/// Lazy enumerations memoize entries as they are first requested, so a
/// clone shares both the source and everything already pulled from it.
#[derive(Clone)]
pub struct Enumeration {
    entries: Entries,
}

impl Enumeration {
    pub fn from_entries(entries: Vec<DecimalStream>) -> Self {
        Enumeration {
            entries: Entries::Finite(Arc::new(entries)),
        }
    }

    pub fn from_lazy<I>(source: I) -> Self
    where
        I: Iterator<Item = DecimalStream> + Send + 'static,
    {
        Enumeration {
            entries: Entries::Lazy(Arc::new(Mutex::new(LazyEntries {
                known: Vec::new(),
                source: Box::new(source),
                exhausted: false,
            }))),
        }
    }

    /// The entry at position `k` >= 1, if the enumeration reaches that far.
    pub fn entry(&self, k: u64) -> Option<DecimalStream> {
        assert!(k >= 1, "entry positions start at 1");
        match &self.entries {
            Entries::Finite(v) => v.get(k as usize - 1).cloned(),
            Entries::Lazy(cell) => {
                let mut inner = cell.lock().expect("entry source poisoned");
                inner.ensure(k);
                inner.known.get(k as usize - 1).cloned()
            }
        }
    }

    /// Number of entries, when known. A lazy enumeration's length is only
    /// known once its source has been exhausted.
    pub fn len(&self) -> Option<u64> {
        match &self.entries {
            Entries::Finite(v) => Some(v.len() as u64),
            Entries::Lazy(cell) => {
                let inner = cell.lock().expect("entry source poisoned");
                inner.exhausted.then(|| inner.known.len() as u64)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The diagonal witness: integer part 0; fractional digit k is
    /// `rule(digit k of entry k)`, or 0 past the end of a finite
    /// enumeration. Digits are produced on demand, pulling entry k only
    /// when digit k is first needed.
    pub fn witness(&self, rule: &DigitRule) -> DecimalStream {
        if let Entries::Finite(v) = &self.entries {
            assert!(!v.is_empty(), "witness of an empty enumeration");
        }
        let entries = self.clone();
        let rule = *rule;
        DecimalStream::from_digit_iter(
            BigInt::ZERO,
            (1u64..).map(move |k| entries.entry(k).map_or(0, |e| rule.apply(e.digit(k)))),
        )
    }

    /// Re-derives the diagonal inequality: for each k ≤ `upto` with an
    /// entry, compares fractional digit k of the witness against fractional
    /// digit k of entry k. Construction puts the difference exactly there,
    /// so only that position is examined.
    pub fn verify_witness(&self, witness: &DecimalStream, upto: u64) -> WitnessReport {
        assert!(upto >= 1, "verification needs at least one position");
        let mut entries = Vec::new();
        for k in 1..=upto {
            let Some(entry) = self.entry(k) else { break };
            let witness_digit = witness.digit(k);
            let entry_digit = entry.digit(k);
            entries.push(EntryCheck {
                index: k,
                witness_digit,
                entry_digit,
                differs: witness_digit != entry_digit,
            });
        }
        let checked = entries.len() as u64;
        WitnessReport {
            all_differ: entries.iter().all(|c| c.differs),
            truncated: checked < upto,
            checked,
            entries,
        }
    }
}

impl fmt::Debug for Enumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.entries {
            Entries::Finite(v) => f
                .debug_struct("Enumeration")
                .field("len", &v.len())
                .finish(),
            Entries::Lazy(_) => f.debug_struct("Enumeration").field("len", &"lazy").finish(),
        }
    }
}

/// One diagonal comparison: digit k of the witness against digit k of
/// entry k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub index: u64,
    pub witness_digit: u8,
    pub entry_digit: u8,
    pub differs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Positions actually compared; less than requested when the
    /// enumeration ran out first.
    pub checked: u64,
    pub entries: Vec<EntryCheck>,
    pub all_differ: bool,
    pub truncated: bool,
}

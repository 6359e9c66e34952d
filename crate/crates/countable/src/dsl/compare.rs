//! Exhaustive size comparison of small explicit sets.
//!
//! For finite sets the pairing definition can be settled by brute force:
//! list every maximal pairing (injection of the smaller set into the
//! larger) and look at what is left over. The count grows factorially,
//! hence the hard size cap.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest side this comparator accepts. 9 keeps the worst case at
/// 9! = 362880 pairings.
pub const MAX_ATOMS: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompareError {
    #[error("side {side} has {size} elements; at most {MAX_ATOMS} are supported, the pairing count grows factorially")]
    TooLarge { side: Side, size: usize },
    #[error("side {side} lists '{atom}' twice; set elements must be distinct")]
    Duplicate { side: Side, atom: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeVerdict {
    Equal,
    ALess,
    AGreater,
}

impl fmt::Display for SizeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeVerdict::Equal => "|A| = |B|",
            SizeVerdict::ALess => "|A| < |B|",
            SizeVerdict::AGreater => "|A| > |B|",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub a: Vec<String>,
    pub b: Vec<String>,
    /// Number of maximal pairings, found by enumerating them.
    pub pairings: u64,
    /// Elements left unpaired by each maximal pairing; the same for all
    /// of them.
    pub leftover_per_pairing: u64,
    /// The side holding the leftovers, when there are any. Every maximal
    /// pairing strands the same side.
    pub leftover_side: Option<Side>,
    pub perfect_pairing_exists: bool,
    /// The first maximal pairing in enumeration order, as (A, B) pairs.
    pub sample_pairing: Vec<(String, String)>,
    pub verdict: SizeVerdict,
}

fn require_distinct(side: Side, atoms: &[String]) -> Result<(), CompareError> {
    if atoms.len() > MAX_ATOMS {
        return Err(CompareError::TooLarge {
            side,
            size: atoms.len(),
        });
    }
    let mut seen = HashSet::new();
    for atom in atoms {
        if !seen.insert(atom) {
            return Err(CompareError::Duplicate {
                side,
                atom: atom.clone(),
            });
        }
    }
    Ok(())
}

/// Every injection of positions 0..small into positions 0..large, in
/// lexicographic order of the chosen targets. Calls `found` with each
/// complete assignment.
fn each_injection(small: usize, large: usize, found: &mut impl FnMut(&[usize])) {
    fn recurse(
        small: usize,
        large: usize,
        used: &mut Vec<bool>,
        assign: &mut Vec<usize>,
        found: &mut impl FnMut(&[usize]),
    ) {
        if assign.len() == small {
            found(assign);
            return;
        }
        for target in 0..large {
            if !used[target] {
                used[target] = true;
                assign.push(target);
                recurse(small, large, used, assign, found);
                assign.pop();
                used[target] = false;
            }
        }
    }
    recurse(
        small,
        large,
        &mut vec![false; large],
        &mut Vec::new(),
        found,
    );
}

/// Compares two explicit finite sets by enumerating all maximal pairings
/// between them. Atoms are opaque; only identity matters. The same atom
/// may appear on both sides.
pub fn compare_finite(a: &[String], b: &[String]) -> Result<CompareReport, CompareError> {
    require_distinct(Side::A, a)?;
    require_distinct(Side::B, b)?;

    let a_is_small = a.len() <= b.len();
    let (small, large) = if a_is_small { (a, b) } else { (b, a) };

    let mut pairings = 0u64;
    let mut sample: Option<Vec<usize>> = None;
    each_injection(small.len(), large.len(), &mut |assign| {
        pairings += 1;
        if sample.is_none() {
            sample = Some(assign.to_vec());
        }
    });

    let sample_pairing = sample
        .expect("at least the empty pairing exists")
        .into_iter()
        .enumerate()
        .map(|(i, target)| {
            if a_is_small {
                (small[i].clone(), large[target].clone())
            } else {
                (large[target].clone(), small[i].clone())
            }
        })
        .collect();

    let leftover_per_pairing = (large.len() - small.len()) as u64;
    let verdict = if a.len() == b.len() {
        SizeVerdict::Equal
    } else if a_is_small {
        SizeVerdict::ALess
    } else {
        SizeVerdict::AGreater
    };
    Ok(CompareReport {
        a: a.to_vec(),
        b: b.to_vec(),
        pairings,
        leftover_per_pairing,
        leftover_side: match verdict {
            SizeVerdict::Equal => None,
            SizeVerdict::ALess => Some(Side::B),
            SizeVerdict::AGreater => Some(Side::A),
        },
        perfect_pairing_exists: leftover_per_pairing == 0,
        sample_pairing,
        verdict,
    })
}

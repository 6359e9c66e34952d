//! Finite-scale pairing checks.
//!
//! Whether a rule really pairs the naturals with a codomain "without
//! remainder" is not decidable from finitely many evaluations. What is
//! decidable is the behavior on a prefix, and that is what gets checked:
//! membership and injectivity on n = 1..=bound, and coverage of every
//! codomain member whose enumeration index is at most bound/2. The slack
//! factor 2 is part of the contract: a genuine bijection may interleave
//! (the zigzag hits -4 only at n=9), and factor 2 is what its prefix
//! images actually achieve.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::{EvalError, RuleExpr};
use crate::bijections::SetTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BijectionOnPrefix,
    NotInjective,
    NotSurjectiveOnPrefix,
    OutOfCodomain,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BijectionOnPrefix => "bijection-on-prefix",
            Verdict::NotInjective => "not-injective",
            Verdict::NotSurjectiveOnPrefix => "not-surjective-on-prefix",
            Verdict::OutOfCodomain => "out-of-codomain",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Counterexample {
    OutsideCodomain {
        input: u64,
        #[serde(with = "crate::serde_util::bigint_string")]
        output: BigInt,
    },
    EvaluationFailed {
        input: u64,
        error: EvalError,
    },
    Collision {
        first: u64,
        second: u64,
        #[serde(with = "crate::serde_util::bigint_string")]
        output: BigInt,
    },
    MissedTarget {
        #[serde(with = "crate::serde_util::bigint_string")]
        value: BigInt,
        index: u64,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::OutsideCodomain { input, output } => {
                write!(f, "n={input} maps to {output}, outside the codomain")
            }
            Counterexample::EvaluationFailed { input, error } => {
                write!(f, "n={input} fails to evaluate: {error}")
            }
            Counterexample::Collision {
                first,
                second,
                output,
            } => {
                write!(f, "n={first} and n={second} both map to {output}")
            }
            Counterexample::MissedTarget { value, index } => {
                write!(f, "codomain member {value} (position {index}) is never hit")
            }
        }
    }
}

/// At most this many counterexamples are kept; `total_violations` still
/// counts them all.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// The checked rule, printed in canonical form.
    pub rule: String,
    pub codomain: SetTag,
    pub bound: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub total_violations: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::BijectionOnPrefix
    }
}

/// Evaluates the rule on n = 1..=bound and grades the outcome. Checks run
/// in order: codomain membership (evaluation errors count as violations
/// here), injectivity, then prefix coverage; the verdict is the first
/// failing check. Counterexamples are deterministic: membership failures
/// in input order, collisions as the lexicographically smallest pairs,
/// missed targets in enumeration order.
pub fn check_pairing(rule: &RuleExpr, codomain: SetTag, bound: u64) -> CheckReport {
    assert!(bound >= 1, "the check needs at least one input");
    let report = |verdict, counterexamples: Vec<Counterexample>, total| CheckReport {
        rule: rule.to_string(),
        codomain,
        bound,
        verdict,
        counterexamples,
        total_violations: total,
    };

    let mut outputs: Vec<(u64, BigInt)> = Vec::new();
    let mut membership: Vec<Counterexample> = Vec::new();
    let mut membership_total = 0u64;
    for input in 1..=bound {
        match rule.eval(&BigInt::from(input)) {
            Ok(output) if codomain.contains(&output) => outputs.push((input, output)),
            Ok(output) => {
                membership_total += 1;
                if membership.len() < MAX_COUNTEREXAMPLES {
                    membership.push(Counterexample::OutsideCodomain { input, output });
                }
            }
            Err(error) => {
                membership_total += 1;
                if membership.len() < MAX_COUNTEREXAMPLES {
                    membership.push(Counterexample::EvaluationFailed { input, error });
                }
            }
        }
    }
    if membership_total > 0 {
        return report(Verdict::OutOfCodomain, membership, membership_total);
    }

    let mut first_hit: HashMap<&BigInt, u64> = HashMap::new();
    let mut collisions: Vec<(u64, u64, &BigInt)> = Vec::new();
    for (input, output) in &outputs {
        match first_hit.entry(output) {
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(*input);
            }
            std::collections::hash_map::Entry::Occupied(slot) => {
                collisions.push((*slot.get(), *input, output));
            }
        }
    }
    if !collisions.is_empty() {
        // The scan finds each collision when its second member shows up,
        // which is not lexicographic order of the pairs.
        collisions.sort_by_key(|&(first, second, _)| (first, second));
        let total = collisions.len() as u64;
        let kept = collisions
            .into_iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|(first, second, output)| Counterexample::Collision {
                first,
                second,
                output: output.clone(),
            })
            .collect();
        return report(Verdict::NotInjective, kept, total);
    }

    let hit: std::collections::HashSet<&BigInt> = outputs.iter().map(|(_, o)| o).collect();
    let mut missed: Vec<Counterexample> = Vec::new();
    let mut missed_total = 0u64;
    for index in 1..=bound / 2 {
        let value = codomain.nth(&BigUint::from(index));
        if !hit.contains(&value) {
            missed_total += 1;
            if missed.len() < MAX_COUNTEREXAMPLES {
                missed.push(Counterexample::MissedTarget { value, index });
            }
        }
    }
    if missed_total > 0 {
        return report(Verdict::NotSurjectiveOnPrefix, missed, missed_total);
    }

    report(Verdict::BijectionOnPrefix, Vec::new(), 0)
}

//! The crate's exit gate: every published claim, checked end to end at its
//! stated scale, one test per claim. Each test prints a PASS/FAIL line
//! (visible with --nocapture) and fails loudly with the first violated
//! check. Expected values are computed by independent routes: brute-force
//! set construction, the falling-factorial count, integer squaring, and
//! cross-module oracles.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use countable::bijections::{Bijection, SetTag};
use countable::diagonal::{DigitRule, Enumeration};
use countable::dsl::{
    check_pairing, compare_finite, parse_rule, Counterexample, Side, SizeVerdict, Verdict,
};
use countable::hotel::{HotelState, Occupant};
use countable::rationals::{index_of_positive, positive_rational_at, positive_rationals};
use countable::{DecimalStream, Rational};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn run(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("PASS {name}"),
        Err(msg) => {
            println!("FAIL {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn criterion_1_zigzag_goldens() {
    run("zigzag goldens", || {
        let zigzag = Bijection::zigzag();
        ensure!(zigzag.apply(&int(9)) == Ok(int(-4)), "9 must map to -4");
        ensure!(zigzag.apply(&int(4)) == Ok(int(2)), "4 must map to 2");
        let want: Vec<BigInt> = [0, 1, -1, 2, -2, 3, -3, 4, -4]
            .iter()
            .map(|&v| int(v))
            .collect();
        let got = SetTag::Int.enumerate(9);
        ensure!(got == want, "first 9 integers were {got:?}");
        Ok(())
    });
}

#[test]
fn criterion_2_rational_enumeration() {
    run("rational enumeration", || {
        let partners = [
            "1/1", "1/2", "2/1", "3/1", "1/3", "1/4", "2/3", "3/2", "4/1",
        ];
        for (i, text) in partners.iter().enumerate() {
            let want: Rational = text.parse().unwrap();
            let got = positive_rational_at(i as u64 + 1);
            ensure!(
                got == want,
                "partner of {} is {got}, expected {want}",
                i + 1
            );
        }

        for (i, r) in positive_rationals().take(10_000).enumerate() {
            let n = i as u128 + 1;
            let back = index_of_positive(&r).map_err(|e| e.to_string())?;
            ensure!(back == n, "{r} sits at position {back}, expected {n}");
        }

        // Brute-force completeness oracle: every canonical p/q with
        // p + q <= 60 must be emitted while the walk is still on those
        // diagonals, i.e. within the first 60*61/2 cells.
        let mut expected = HashSet::new();
        for p in 1u64..=59 {
            for q in 1..=(60 - p) {
                if p.gcd(&q) == 1 {
                    expected.insert(Rational::new(BigInt::from(p), BigInt::from(q)).unwrap());
                }
            }
        }
        let emitted: HashSet<Rational> = positive_rationals().take(1830).collect();
        for r in &expected {
            ensure!(emitted.contains(r), "{r} never appeared");
        }
        Ok(())
    });
}

#[test]
fn criterion_3_diagonal_witness_golden() {
    run("diagonal witness golden", || {
        let entries: Vec<DecimalStream> = ["0.3333", "0.5432", "0.6775", "0.1010"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let enumeration = Enumeration::from_entries(entries);
        let witness = enumeration.witness(&DigitRule::increment());
        let prefix = witness.prefix_string(4);
        ensure!(prefix == "0.4581", "witness prefix was {prefix}");

        let report = enumeration.verify_witness(&witness, 4);
        ensure!(
            report.checked == 4,
            "only {} positions checked",
            report.checked
        );
        for k in 1..=4u64 {
            let check = &report.entries[k as usize - 1];
            ensure!(
                check.index == k && check.differs,
                "no difference reported at position {k}"
            );
        }
        ensure!(report.all_differ, "aggregate verdict must be all-differ");
        Ok(())
    });
}

#[test]
fn criterion_4_randomized_witness_property() {
    run("randomized witness property", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0cab1e);
        for case in 0..500 {
            let count = rng.random_range(1..=50usize);
            let entries: Vec<DecimalStream> = (0..count)
                .map(|_| {
                    let len = rng.random_range(50..=80usize);
                    let digits: Vec<u8> = (0..len).map(|_| rng.random_range(0..=9)).collect();
                    DecimalStream::from_digits(BigInt::ZERO, digits)
                })
                .collect();
            let enumeration = Enumeration::from_entries(entries);

            let witness = enumeration.witness(&DigitRule::increment());
            for k in 1..=count as u64 {
                let entry = enumeration.entry(k).unwrap();
                ensure!(
                    witness.digit(k) != entry.digit(k),
                    "case {case}: witness agrees with entry {k} at digit {k}"
                );
            }

            let safe = enumeration.witness(&DigitRule::safe());
            for k in 1..=count as u64 {
                let entry = enumeration.entry(k).unwrap();
                let digit = safe.digit(k);
                ensure!(
                    digit == 4 || digit == 5,
                    "case {case}: safe witness digit {k} is {digit}"
                );
                ensure!(
                    digit != entry.digit(k),
                    "case {case}: safe witness agrees with entry {k} at digit {k}"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_bijection_round_trips() {
    run("bijection round trips", || {
        let mut maps = Bijection::builtins();
        maps.push(Bijection::shift(BigUint::ZERO));
        maps.push(Bijection::shift(BigUint::from(19u32)));
        maps.push(Bijection::shift(BigUint::from(1_000_000u32)));
        for map in &maps {
            for n in 1u64..=100_000 {
                let n = BigUint::from(n);
                let x = map.domain().nth(&n);
                let there = map.apply(&x).map_err(|e| e.to_string())?;
                let back = map.unapply(&there).map_err(|e| e.to_string())?;
                ensure!(back == x, "{}: {x} -> {there} -> {back}", map.name());

                let y = map.codomain().nth(&n);
                let inv = map.unapply(&y).map_err(|e| e.to_string())?;
                let fwd = map.apply(&inv).map_err(|e| e.to_string())?;
                ensure!(fwd == y, "{}: {y} <- {inv} <- {fwd}", map.name());
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_finite_comparator() {
    run("finite comparator", || {
        let a: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let b: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let report = compare_finite(&a, &b).map_err(|e| e.to_string())?;
        // Independent count: injections of 3 into 4 = 4!/(4-3)!.
        let falling_factorial: u64 = (2..=4).product();
        ensure!(falling_factorial == 24, "oracle arithmetic is off");
        ensure!(
            report.pairings == 24,
            "enumerated {} pairings",
            report.pairings
        );
        ensure!(
            report.leftover_per_pairing == 1,
            "each pairing leaves {} elements",
            report.leftover_per_pairing
        );
        ensure!(
            report.leftover_side == Some(Side::B),
            "leftovers must sit on the 4-element side"
        );
        ensure!(!report.perfect_pairing_exists, "no pairing can be perfect");
        ensure!(
            report.verdict == SizeVerdict::ALess,
            "verdict was {}",
            report.verdict
        );
        Ok(())
    });
}

#[test]
fn criterion_7_hotel() {
    run("hotel", || {
        let hotel = HotelState::new_full().check_in_countably_many();
        for r in 1u64..=10_000 {
            let got = match hotel.guest_in(&BigUint::from(r)) {
                Occupant::Guest(g) => g,
                Occupant::Vacant => return Err(format!("room {r} is vacant")),
            };
            let (cohort, index) = if r.is_multiple_of(2) {
                (0, r / 2)
            } else {
                (1, r.div_ceil(2))
            };
            ensure!(
                got.cohort == cohort && got.index == BigUint::from(index),
                "room {r} holds {got}, expected {cohort}:{index}"
            );
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0x07e1);
        for case in 0..1000 {
            let mut state = HotelState::new_full();
            for _ in 0..rng.random_range(0..=20usize) {
                state = if rng.random_bool(0.5) {
                    state.check_in_countably_many()
                } else {
                    state
                        .check_in_finite(BigUint::from(rng.random_range(1..=100u64)))
                        .expect("nonzero cohort")
                };
            }
            let sample = if case == 0 { 10_000 } else { 200 };
            let report = state.audit(sample);
            ensure!(
                report.passed(),
                "case {case}: audit failed over plan {:?}: {report:?}",
                state.plan()
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_8_square_root_digits() {
    run("square root digits", || {
        let sqrt2 = DecimalStream::sqrt(&BigUint::from(2u32)).prefix_string(5);
        ensure!(sqrt2 == "1.41421", "sqrt(2) prefix was {sqrt2}");

        // Squaring oracle: the k-digit truncation t (scaled to an integer)
        // must satisfy t^2 <= n*10^(2k) < (t+1)^2.
        for n in 1u64..=10_000 {
            let stream = DecimalStream::sqrt(&BigUint::from(n));
            let mut t = stream.integer_magnitude().clone();
            let mut scaled = BigUint::from(n);
            for k in 1..=20u64 {
                t = t * 10u32 + u32::from(stream.digit(k));
                scaled *= 100u32;
                ensure!(
                    &t * &t <= scaled,
                    "sqrt({n}) truncation at {k} digits is too big"
                );
                let next = &t + 1u32;
                ensure!(
                    &next * &next > scaled,
                    "sqrt({n}) truncation at {k} digits is too small"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_9_dsl() {
    run("pairing rule checks", || {
        let zigzag_rule =
            parse_rule("if even then n/2 else -(n-1)/2").map_err(|e| e.to_string())?;
        let zigzag = Bijection::zigzag();
        for n in 1u64..=10_000 {
            let from_rule = zigzag_rule
                .eval(&BigInt::from(n))
                .map_err(|e| e.to_string())?;
            let from_map = zigzag.apply(&BigInt::from(n)).map_err(|e| e.to_string())?;
            ensure!(from_rule == from_map, "rule and bijection disagree at {n}");
        }

        let doubling = check_pairing(&parse_rule("2*n").unwrap(), SetTag::Even, 1000);
        ensure!(
            doubling.passed(),
            "2*n onto the evens reported {}",
            doubling.verdict
        );

        let successor = check_pairing(&parse_rule("n+1").unwrap(), SetTag::Nat, 1000);
        ensure!(
            successor.verdict == Verdict::NotSurjectiveOnPrefix,
            "n+1 reported {}",
            successor.verdict
        );
        ensure!(
            successor.counterexamples.first()
                == Some(&Counterexample::MissedTarget {
                    value: BigInt::from(1),
                    index: 1,
                }),
            "n+1 must name missed target 1"
        );
        Ok(())
    });
}

//! Command-line wiring for the countable library.
//!
//! One subcommand per module area. All numeric output is exact: integers and
//! rationals print in full, decimal streams print the requested prefix. The
//! global `--json` flag switches every subcommand from its line-oriented text
//! format to the schemas in [`output`].
//!
//! Exit codes: 0 on success, 1 for usage errors (clap rejects the command
//! line), 2 for data errors (bad file contents, values outside a domain,
//! rule syntax errors).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use countable::bijections::{Bijection, BijectionError, SetTag};
use countable::diagonal::{DigitRule, Enumeration};
use countable::dsl::{check_pairing, compare_finite, parse_rule, CompareError, ParseError};
use countable::hotel::{GuestId, GuestIdParseError, HotelState, Occupant};
use countable::numbers::{DecimalParseError, DecimalStream, Rational, RationalError};
use countable::rationals::{
    index_of, index_of_positive, positive_rational_at, positive_rationals, rational_at, rationals,
    EnumerationError,
};

pub mod output;

#[derive(Debug, Parser)]
#[command(
    name = "countable",
    version,
    about = "Exact arithmetic over countable sets"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first members of a canonical enumeration.
    ///
    /// Sets: nat, nat0, even, odd, int. Each is listed in its canonical
    /// order; int interleaves as 0 1 -1 2 -2 ...
    Enumerate {
        set: SetTag,
        /// How many members to print.
        count: u64,
    },

    /// Apply a named bijection to one value.
    ///
    /// Names: double, pred, to-odd, zigzag, shift:<k>. With --inverse the
    /// map runs backwards from its codomain.
    Map {
        name: String,
        #[arg(allow_hyphen_values = true)]
        value: BigInt,
        /// Invert the map instead of applying it.
        #[arg(long)]
        inverse: bool,
    },

    /// Walk the grid enumeration of the rationals.
    Rationals {
        #[command(subcommand)]
        command: RationalsCommand,
    },

    /// Build a decimal that differs from every line of a file.
    ///
    /// The file holds one decimal per line. Digit k of the answer is made
    /// to differ from digit k of line k, so the answer's digit string
    /// appears nowhere in the file.
    Diagonalize {
        file: PathBuf,
        /// How each diagonal digit is changed.
        #[arg(long, value_enum, default_value_t = RuleChoice::Paper)]
        rule: RuleChoice,
        /// Fractional digits to print (default: one per entry).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        digits: Option<u64>,
        /// Re-check the answer against every entry and report per position.
        #[arg(long)]
        verify: bool,
    },

    /// Run a hotel script and trace each event.
    Hotel {
        #[command(subcommand)]
        command: HotelCommand,
    },

    /// Grade a pairing rule n -> f(n) against a codomain on a finite prefix.
    Check {
        /// Rule text, e.g. "2*n" or "if even then n/2 else 0-(n-1)/2".
        #[arg(long)]
        rule: String,
        /// Target set: nat, nat0, even, odd, int.
        #[arg(long)]
        codomain: SetTag,
        /// Inputs 1..=bound are evaluated.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },

    /// Compare two finite sets by enumerating every maximal pairing.
    Compare {
        /// Comma-separated atoms, e.g. "1,2,3". Empty for the empty set.
        #[arg(long)]
        a: String,
        /// Comma-separated atoms for the other side.
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RationalsCommand {
    /// Print the first entries of the enumeration.
    ///
    /// Positions start at 1. With --signed the enumeration starts 0/1 and
    /// alternates signs: 0/1 1/1 -1/1 1/2 -1/2 ...
    List {
        count: u64,
        /// Enumerate all rationals, not just the positive ones.
        #[arg(long)]
        signed: bool,
    },
    /// Find the position of a fraction written in lowest terms.
    Index {
        /// A canonical fraction such as 3/2. The signed zero entry is 0/1.
        #[arg(allow_hyphen_values = true)]
        value: String,
        /// Look it up in the signed enumeration.
        #[arg(long)]
        signed: bool,
    },
    /// Print the entry at one position.
    At {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Read the signed enumeration, whose position 1 is 0/1.
        #[arg(long)]
        signed: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum HotelCommand {
    /// Execute a script of arrivals and queries, one per line.
    ///
    /// Lines: "arrive <k>" books a finite cohort (shifting every guest up
    /// by k), "arrive inf" books a countable cohort (doubling every room),
    /// "where <cohort>:<guest>" finds a guest's room, "who <room>" names a
    /// room's occupant, "audit <sample>" sweeps rooms 1..=sample.
    Run { script: PathBuf },
}

/// Diagonal digit rules. `paper` replaces digit d by d+1 mod 10; `safe`
/// maps 5 to 4 and everything else to 5, which also keeps the answer away
/// from any second spelling of the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleChoice {
    Paper,
    Safe,
}

impl RuleChoice {
    fn name(self) -> &'static str {
        match self {
            RuleChoice::Paper => "paper",
            RuleChoice::Safe => "safe",
        }
    }

    fn rule(self) -> DigitRule {
        match self {
            RuleChoice::Paper => DigitRule::increment(),
            RuleChoice::Safe => DigitRule::safe(),
        }
    }
}

/// Anything a handler can fail with. main maps every variant to exit code 2;
/// usage problems never reach here because clap rejects them first.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Rule(#[from] ParseError),
    #[error(transparent)]
    Compare(#[from] CompareError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    BadLine { line: usize, message: String },
    #[error("{entry:?} is not an enumeration entry; in lowest terms it is {canonical}")]
    NotCanonical { entry: String, canonical: Rational },
    #[error("the file holds no entries; a witness needs at least one")]
    EmptyFile,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.json;
    match cli.command {
        Command::Enumerate { set, count } => cmd_enumerate(set, count, json),
        Command::Map {
            name,
            value,
            inverse,
        } => cmd_map(&name, &value, inverse, json),
        Command::Rationals { command } => cmd_rationals(command, json),
        Command::Diagonalize {
            file,
            rule,
            digits,
            verify,
        } => cmd_diagonalize(&file, rule, digits, verify, json),
        Command::Hotel {
            command: HotelCommand::Run { script },
        } => cmd_hotel(&script, json),
        Command::Check {
            rule,
            codomain,
            bound,
        } => cmd_check(&rule, codomain, bound, json),
        Command::Compare { a, b } => cmd_compare(&a, &b, json),
    }
}

fn emit<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output types serialize")
    );
}

fn joined<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn plural(n: u64, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn cmd_enumerate(set: SetTag, count: u64, json: bool) -> Result<(), CliError> {
    let values = set.enumerate(count);
    if json {
        emit(&output::EnumerateOut {
            set: set.name().to_string(),
            count,
            values: values.iter().map(BigInt::to_string).collect(),
        });
    } else {
        println!("{}", joined(&values));
    }
    Ok(())
}

fn cmd_map(name: &str, value: &BigInt, inverse: bool, json: bool) -> Result<(), CliError> {
    let map = Bijection::by_name(name)?;
    let result = if inverse {
        map.unapply(value)?
    } else {
        map.apply(value)?
    };
    if json {
        emit(&output::MapOut {
            name: map.name().to_string(),
            inverse,
            input: value.to_string(),
            output: result.to_string(),
        });
    } else {
        println!("{result}");
    }
    Ok(())
}

fn cmd_rationals(command: RationalsCommand, json: bool) -> Result<(), CliError> {
    match command {
        RationalsCommand::List { count, signed } => {
            let values: Vec<Rational> = if signed {
                rationals().take(count as usize).collect()
            } else {
                positive_rationals().take(count as usize).collect()
            };
            if json {
                emit(&output::RationalsListOut {
                    count,
                    signed,
                    values: values.iter().map(Rational::to_string).collect(),
                });
            } else {
                println!("{}", joined(&values));
            }
        }
        RationalsCommand::At { n, signed } => {
            let value = if signed {
                rational_at(n)
            } else {
                positive_rational_at(n)
            };
            if json {
                emit(&output::RationalsAtOut {
                    n,
                    signed,
                    value: value.to_string(),
                });
            } else {
                println!("{value}");
            }
        }
        RationalsCommand::Index { value, signed } => {
            let r = parse_canonical(&value)?;
            let index = if signed {
                index_of(&r)?.to_string()
            } else {
                index_of_positive(&r)?.to_string()
            };
            if json {
                emit(&output::RationalsIndexOut {
                    value: r.to_string(),
                    signed,
                    index,
                });
            } else {
                println!("{index}");
            }
        }
    }
    Ok(())
}

/// The enumeration skips reducible fractions, so only lowest-terms text
/// names an entry. "2/4" is rejected rather than silently read as 1/2.
fn parse_canonical(text: &str) -> Result<Rational, CliError> {
    let trimmed = text.trim();
    let r: Rational = trimmed.parse()?;
    if r.to_string() != trimmed {
        return Err(CliError::NotCanonical {
            entry: trimmed.to_string(),
            canonical: r,
        });
    }
    Ok(r)
}

fn cmd_diagonalize(
    file: &Path,
    rule: RuleChoice,
    digits: Option<u64>,
    verify: bool,
    json: bool,
) -> Result<(), CliError> {
    let text = read_file(file)?;
    let mut entries = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let stream: DecimalStream =
            line.parse()
                .map_err(|e: DecimalParseError| CliError::BadLine {
                    line: number + 1,
                    message: e.to_string(),
                })?;
        entries.push(stream);
    }
    if entries.is_empty() {
        return Err(CliError::EmptyFile);
    }
    let count = entries.len() as u64;
    let digits = digits.unwrap_or(count);
    let enumeration = Enumeration::from_entries(entries);
    let witness = enumeration.witness(&rule.rule());
    let report = verify.then(|| enumeration.verify_witness(&witness, digits));

    if json {
        emit(&output::DiagonalizeOut {
            rule: rule.name().to_string(),
            entries: count,
            digits,
            witness: witness.to_prefix(digits),
            verify: report,
        });
        return Ok(());
    }
    println!("{}", witness.prefix_string(digits));
    if let Some(report) = report {
        for check in &report.entries {
            println!(
                "position {}: entry digit {}, witness digit {}, {}",
                check.index,
                check.entry_digit,
                check.witness_digit,
                if check.differs { "differs" } else { "MATCHES" },
            );
        }
        if report.truncated {
            println!(
                "only {} of {} positions had entries",
                report.checked, digits
            );
        }
        println!(
            "verdict: {}",
            if report.all_differ {
                "the witness differs from every checked entry"
            } else {
                "the witness MATCHES an entry on its diagonal"
            },
        );
    }
    Ok(())
}

fn cmd_hotel(script: &Path, json: bool) -> Result<(), CliError> {
    let text = read_file(script)?;
    let mut state = HotelState::new_full();
    let mut events = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CliError::BadLine {
            line: number + 1,
            message,
        };
        let mut words = line.split_whitespace();
        let verb = words.next().expect("nonempty line has a first word");
        let arg = words.next();
        if words.next().is_some() {
            return Err(bad(format!("too many words in {line:?}")));
        }
        let event = match (verb, arg) {
            ("arrive", Some("inf")) => {
                state = state.check_in_countably_many();
                let cohort = state.cohorts() - 1;
                if !json {
                    println!("cohort {cohort}: countably many guests arrive, rooms double");
                }
                output::HotelEvent::Arrive {
                    cohort,
                    arrivals: "inf".to_string(),
                }
            }
            ("arrive", Some(count)) => {
                let k: BigUint = count
                    .parse()
                    .map_err(|_| bad(format!("{count:?} is not a guest count or inf")))?;
                state = state
                    .check_in_finite(k.clone())
                    .map_err(|e| bad(e.to_string()))?;
                let cohort = state.cohorts() - 1;
                if !json {
                    let verb = if k == BigUint::from(1u32) {
                        "guest arrives"
                    } else {
                        "guests arrive"
                    };
                    println!("cohort {cohort}: {k} {verb}, rooms shift up by {k}");
                }
                output::HotelEvent::Arrive {
                    cohort,
                    arrivals: k.to_string(),
                }
            }
            ("where", Some(id)) => {
                let guest: GuestId = id
                    .parse()
                    .map_err(|e: GuestIdParseError| bad(e.to_string()))?;
                let room = state.room_of(&guest).map_err(|e| bad(e.to_string()))?;
                if !json {
                    println!("guest {guest} is in room {room}");
                }
                output::HotelEvent::Where {
                    guest,
                    room: room.to_string(),
                }
            }
            ("who", Some(room)) => {
                let room: BigUint = room
                    .parse()
                    .map_err(|_| bad(format!("{room:?} is not a room number")))?;
                if room == BigUint::ZERO {
                    return Err(bad("room numbers start at 1".to_string()));
                }
                let occupant = match state.guest_in(&room) {
                    Occupant::Guest(guest) => {
                        if !json {
                            println!("room {room} holds guest {guest}");
                        }
                        Some(guest)
                    }
                    Occupant::Vacant => {
                        if !json {
                            println!("room {room} is vacant");
                        }
                        None
                    }
                };
                output::HotelEvent::Who {
                    room: room.to_string(),
                    guest: occupant,
                }
            }
            ("audit", Some(sample)) => {
                let sample: u64 = sample
                    .parse()
                    .map_err(|_| bad(format!("{sample:?} is not a sample size")))?;
                if sample == 0 {
                    return Err(bad("an audit needs at least one room".to_string()));
                }
                let report = state.audit(sample);
                if !json {
                    let cohorts = report
                        .cohort_rooms
                        .iter()
                        .map(|(cohort, rooms)| format!("cohort {cohort} holds {rooms}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    println!(
                        "audit of rooms 1..={}: {} occupied, {}, {}; {}",
                        report.sample,
                        report.rooms_occupied,
                        if report.injective {
                            "injective"
                        } else {
                            "COLLISION"
                        },
                        if report.round_trip {
                            "round trips"
                        } else {
                            "ROUND TRIP FAILED"
                        },
                        cohorts,
                    );
                }
                output::HotelEvent::Audit { report }
            }
            ("arrive" | "where" | "who" | "audit", None) => {
                return Err(bad(format!("{verb} needs an argument")));
            }
            _ => return Err(bad(format!("unknown script command {line:?}"))),
        };
        events.push(event);
    }
    if json {
        emit(&output::HotelOut { events });
    }
    Ok(())
}

fn cmd_check(rule_text: &str, codomain: SetTag, bound: u64, json: bool) -> Result<(), CliError> {
    let rule = parse_rule(rule_text)?;
    let report = check_pairing(&rule, codomain, bound);
    if json {
        emit(&report);
        return Ok(());
    }
    println!("rule: {}", report.rule);
    println!("codomain: {}, bound: {}", report.codomain, report.bound);
    println!("verdict: {}", report.verdict);
    for counterexample in &report.counterexamples {
        println!("  {counterexample}");
    }
    let shown = report.counterexamples.len() as u64;
    if report.total_violations > shown {
        println!("  ... and {} more", report.total_violations - shown);
    }
    Ok(())
}

fn cmd_compare(a_text: &str, b_text: &str, json: bool) -> Result<(), CliError> {
    let a = atoms(a_text);
    let b = atoms(b_text);
    let report = compare_finite(&a, &b)?;
    if json {
        emit(&report);
        return Ok(());
    }
    println!("A = {{{}}}", report.a.join(", "));
    println!("B = {{{}}}", report.b.join(", "));
    let leftovers = match report.leftover_side {
        Some(side) => format!(
            "each leaving {} of side {} unpaired",
            plural(report.leftover_per_pairing, "element"),
            side,
        ),
        None => "each pairing every element".to_string(),
    };
    println!(
        "{}, {}",
        plural(report.pairings, "maximal pairing"),
        leftovers
    );
    if report.sample_pairing.is_empty() {
        println!("sample: (the empty pairing)");
    } else {
        let pairs = report
            .sample_pairing
            .iter()
            .map(|(x, y)| format!("{x}<->{y}"))
            .collect::<Vec<_>>()
            .join(", ");
        println!("sample: {pairs}");
    }
    println!("verdict: {}", report.verdict);
    Ok(())
}

fn atoms(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|atom| !atom.is_empty())
        .map(String::from)
        .collect()
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

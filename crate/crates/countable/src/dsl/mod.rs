//! A small language for pairing rules.
//!
//! Rules are integer expressions in one variable n, with an even/odd
//! conditional on n itself. That is enough to write every pairing rule a
//! finite description could ask of this crate ("pair n with 2n", the
//! zigzag, and the like) while keeping evaluation total up to the two
//! division errors.
//!
//! [`check_pairing`] evaluates a rule against a named codomain at finite
//! scale; [`compare_finite`] settles size questions for small explicit
//! sets by exhausting every maximal pairing.

mod check;
mod compare;
mod parse;

pub use check::{check_pairing, CheckReport, Counterexample, Verdict};
pub use compare::{compare_finite, CompareError, CompareReport, Side, SizeVerdict, MAX_ATOMS};
pub use parse::{parse_rule, ParseError, ParseErrorKind};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{num} is not divisible by {den}")]
    InexactDivision {
        #[serde(with = "crate::serde_util::bigint_string")]
        num: BigInt,
        #[serde(with = "crate::serde_util::bigint_string")]
        den: BigInt,
    },
}

/// A rule expression. The only variable is n; division is exact or an
/// error; the conditional branches on the parity of n itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleExpr {
    Literal(BigInt),
    Var,
    Neg(Box<RuleExpr>),
    Add(Box<RuleExpr>, Box<RuleExpr>),
    Sub(Box<RuleExpr>, Box<RuleExpr>),
    Mul(Box<RuleExpr>, Box<RuleExpr>),
    Div(Box<RuleExpr>, Box<RuleExpr>),
    IfEven(Box<RuleExpr>, Box<RuleExpr>),
}

impl RuleExpr {
    pub fn eval(&self, n: &BigInt) -> Result<BigInt, EvalError> {
        match self {
            RuleExpr::Literal(v) => Ok(v.clone()),
            RuleExpr::Var => Ok(n.clone()),
            RuleExpr::Neg(e) => Ok(-e.eval(n)?),
            RuleExpr::Add(a, b) => Ok(a.eval(n)? + b.eval(n)?),
            RuleExpr::Sub(a, b) => Ok(a.eval(n)? - b.eval(n)?),
            RuleExpr::Mul(a, b) => Ok(a.eval(n)? * b.eval(n)?),
            RuleExpr::Div(a, b) => {
                let num = a.eval(n)?;
                let den = b.eval(n)?;
                if den.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                let (quot, rem) = num.div_rem(&den);
                if !rem.is_zero() {
                    return Err(EvalError::InexactDivision { num, den });
                }
                Ok(quot)
            }
            RuleExpr::IfEven(even, odd) => {
                if n.is_even() {
                    even.eval(n)
                } else {
                    odd.eval(n)
                }
            }
        }
    }

    /// Binding strength for printing. A node is parenthesized whenever its
    /// context demands more than it binds.
    fn precedence(&self) -> u8 {
        match self {
            RuleExpr::IfEven(..) => 0,
            RuleExpr::Add(..) | RuleExpr::Sub(..) => 1,
            RuleExpr::Mul(..) | RuleExpr::Div(..) => 2,
            RuleExpr::Neg(_) => 3,
            RuleExpr::Literal(v) if v.is_negative() => 3,
            RuleExpr::Literal(_) | RuleExpr::Var => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, required: u8) -> fmt::Result {
        let parens = self.precedence() < required;
        if parens {
            f.write_str("(")?;
        }
        match self {
            RuleExpr::Literal(v) => write!(f, "{v}")?,
            RuleExpr::Var => f.write_str("n")?,
            RuleExpr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_prec(f, 3)?;
            }
            RuleExpr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str("+")?;
                b.fmt_prec(f, 2)?;
            }
            RuleExpr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                f.write_str("-")?;
                b.fmt_prec(f, 2)?;
            }
            RuleExpr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str("*")?;
                b.fmt_prec(f, 3)?;
            }
            RuleExpr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str("/")?;
                b.fmt_prec(f, 3)?;
            }
            RuleExpr::IfEven(even, odd) => {
                f.write_str("if even then ")?;
                even.fmt_prec(f, 0)?;
                f.write_str(" else ")?;
                odd.fmt_prec(f, 0)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints the rule in the grammar's own syntax. Parsing the output yields
/// a structurally identical tree, except that a negative literal (not
/// producible by the parser) reparses as a negation.
impl fmt::Display for RuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

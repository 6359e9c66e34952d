//! Rule grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := integer | 'n' | '-' factor | '(' expr ')'
//!         | 'if' 'even' 'then' expr 'else' expr
//! ```
//!
//! Operators are left associative with the usual precedence. Error
//! positions are byte offsets into the rule text.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::RuleExpr;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedCharacter(char),
    /// An identifier that is not `n` or a keyword. The grammar has exactly
    /// one variable.
    UnknownWord(String),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedCharacter(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnknownWord(w) => {
                write!(f, "unknown word '{w}'; the only variable is n")
            }
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found '{found}'")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, but the rule ended")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    If,
    Even,
    Then,
    Else,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(v) => v.to_string(),
            Tok::Var => "n".into(),
            Tok::If => "if".into(),
            Tok::Even => "even".into(),
            Tok::Then => "then".into(),
            Tok::Else => "else".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            let value = digits.parse().expect("digit runs parse as integers");
            tokens.push((Tok::Int(value), start));
        } else if c.is_alphabetic() {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_alphanumeric() && d != '_' {
                    break;
                }
                word.push(d);
                chars.next();
            }
            let tok = match word.as_str() {
                "n" => Tok::Var,
                "if" => Tok::If,
                "even" => Tok::Even,
                "then" => Tok::Then,
                "else" => Tok::Else,
                _ => {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownWord(word),
                    })
                }
            };
            tokens.push((tok, start));
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnexpectedCharacter(c),
                    })
                }
            };
            chars.next();
            tokens.push((tok, start));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn advance(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.cursor).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.cursor += 1;
        }
        tok
    }

    fn position(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        let position = self.position();
        match self.advance() {
            Some(found) if found == tok => Ok(()),
            Some(found) => Err(ParseError {
                position,
                kind: ParseErrorKind::UnexpectedToken {
                    found: found.text(),
                    expected,
                },
            }),
            None => Err(ParseError {
                position,
                kind: ParseErrorKind::UnexpectedEnd { expected },
            }),
        }
    }

    fn expr(&mut self) -> Result<RuleExpr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                e = RuleExpr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                e = RuleExpr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<RuleExpr, ParseError> {
        let mut e = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                e = RuleExpr::Mul(Box::new(e), Box::new(self.factor()?));
            } else if self.eat(&Tok::Slash) {
                e = RuleExpr::Div(Box::new(e), Box::new(self.factor()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn factor(&mut self) -> Result<RuleExpr, ParseError> {
        let position = self.position();
        match self.advance() {
            Some(Tok::Int(v)) => Ok(RuleExpr::Literal(v)),
            Some(Tok::Var) => Ok(RuleExpr::Var),
            Some(Tok::Minus) => Ok(RuleExpr::Neg(Box::new(self.factor()?))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "a closing parenthesis")?;
                Ok(e)
            }
            Some(Tok::If) => {
                self.expect(Tok::Even, "the word 'even'")?;
                self.expect(Tok::Then, "the word 'then'")?;
                let even = self.expr()?;
                self.expect(Tok::Else, "the word 'else'")?;
                let odd = self.expr()?;
                Ok(RuleExpr::IfEven(Box::new(even), Box::new(odd)))
            }
            Some(found) => Err(ParseError {
                position,
                kind: ParseErrorKind::UnexpectedToken {
                    found: found.text(),
                    expected: "a value",
                },
            }),
            None => Err(ParseError {
                position,
                kind: ParseErrorKind::UnexpectedEnd {
                    expected: "a value",
                },
            }),
        }
    }
}

pub fn parse_rule(text: &str) -> Result<RuleExpr, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        cursor: 0,
        end: text.len(),
    };
    let rule = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError {
            position: parser.position(),
            kind: ParseErrorKind::UnexpectedToken {
                found: tok.text(),
                expected: "end of rule",
            },
        });
    }
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Box<RuleExpr> {
        Box::new(RuleExpr::Literal(BigInt::from(v)))
    }

    fn var() -> Box<RuleExpr> {
        Box::new(RuleExpr::Var)
    }

    #[test]
    fn doubling_rule_parses() {
        assert_eq!(parse_rule("2*n").unwrap(), RuleExpr::Mul(lit(2), var()));
    }

    #[test]
    fn zigzag_rule_parses_to_the_expected_shape() {
        let want = RuleExpr::IfEven(
            Box::new(RuleExpr::Div(var(), lit(2))),
            Box::new(RuleExpr::Div(
                Box::new(RuleExpr::Neg(Box::new(RuleExpr::Sub(var(), lit(1))))),
                lit(2),
            )),
        );
        assert_eq!(parse_rule("if even then n/2 else -(n-1)/2").unwrap(), want);
        assert_eq!(
            parse_rule("if  even then\tn/2 else -(n - 1)/2").unwrap(),
            want
        );
    }

    #[test]
    fn operators_are_left_associative_with_usual_precedence() {
        assert_eq!(
            parse_rule("1-2-3").unwrap(),
            RuleExpr::Sub(Box::new(RuleExpr::Sub(lit(1), lit(2))), lit(3))
        );
        assert_eq!(
            parse_rule("1+2*3").unwrap(),
            RuleExpr::Add(lit(1), Box::new(RuleExpr::Mul(lit(2), lit(3))))
        );
        assert_eq!(
            parse_rule("(1+2)*3").unwrap(),
            RuleExpr::Mul(Box::new(RuleExpr::Add(lit(1), lit(2))), lit(3))
        );
        assert_eq!(
            parse_rule("8/4/2").unwrap(),
            RuleExpr::Div(Box::new(RuleExpr::Div(lit(8), lit(4))), lit(2))
        );
    }

    #[test]
    fn unary_minus_binds_tighter_than_multiplication() {
        assert_eq!(
            parse_rule("-n*2").unwrap(),
            RuleExpr::Mul(Box::new(RuleExpr::Neg(var())), lit(2))
        );
        assert_eq!(
            parse_rule("--n").unwrap(),
            RuleExpr::Neg(Box::new(RuleExpr::Neg(var())))
        );
        assert_eq!(
            parse_rule("n--1").unwrap(),
            RuleExpr::Sub(var(), Box::new(RuleExpr::Neg(lit(1))))
        );
        assert_eq!(
            parse_rule("n+-1").unwrap(),
            RuleExpr::Add(var(), Box::new(RuleExpr::Neg(lit(1))))
        );
    }

    #[test]
    fn power_operator_is_rejected_where_it_appears() {
        let err = parse_rule("2**n").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedToken {
                found: "*".into(),
                expected: "a value",
            }
        );
    }

    #[test]
    fn unknown_variables_are_rejected_at_their_position() {
        let err = parse_rule("m+1").unwrap_err();
        assert_eq!(err.position, 0);
        assert_eq!(err.kind, ParseErrorKind::UnknownWord("m".into()));
        let err = parse_rule("2*nn").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(err.kind, ParseErrorKind::UnknownWord("nn".into()));
        let err = parse_rule("if even then x else n").unwrap_err();
        assert_eq!(err.position, 13);
    }

    #[test]
    fn stray_characters_are_rejected_at_their_position() {
        let err = parse_rule("n % 2").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(err.kind, ParseErrorKind::UnexpectedCharacter('%'));
    }

    #[test]
    fn truncated_rules_report_the_end() {
        let err = parse_rule("n+").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedEnd {
                expected: "a value"
            }
        );
        let err = parse_rule("(n+1").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedEnd {
                expected: "a closing parenthesis"
            }
        );
        let err = parse_rule("if even then n").unwrap_err();
        assert_eq!(err.position, 14);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedEnd {
                expected: "the word 'else'"
            }
        );
    }

    #[test]
    fn trailing_tokens_are_rejected() {
        let err = parse_rule("n+1 2").unwrap_err();
        assert_eq!(err.position, 4);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedToken {
                found: "2".into(),
                expected: "end of rule",
            }
        );
        assert!(parse_rule("n)").is_err());
    }

    #[test]
    fn empty_rules_are_rejected() {
        let err = parse_rule("").unwrap_err();
        assert_eq!(err.position, 0);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedEnd {
                expected: "a value"
            }
        );
        assert!(parse_rule("   ").is_err());
    }

    #[test]
    fn keywords_cannot_stand_as_values() {
        let err = parse_rule("even+1").unwrap_err();
        assert_eq!(err.position, 0);
        assert_eq!(
            err.kind,
            ParseErrorKind::UnexpectedToken {
                found: "even".into(),
                expected: "a value",
            }
        );
    }

    #[test]
    fn large_literals_keep_all_digits() {
        let huge = "12345678901234567890123456789";
        assert_eq!(
            parse_rule(huge).unwrap(),
            RuleExpr::Literal(huge.parse().unwrap())
        );
    }

    #[test]
    fn error_messages_name_position_and_cause() {
        assert_eq!(
            parse_rule("2**n").unwrap_err().to_string(),
            "syntax error at position 2: expected a value, found '*'"
        );
        assert_eq!(
            parse_rule("m").unwrap_err().to_string(),
            "syntax error at position 0: unknown word 'm'; the only variable is n"
        );
    }
}

//! Recursive-descent parser for algebra elements.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" uint)?
//! atom   := rational | "L" "(" index ")" | "I" "(" index ")"
//!         | "CL" | "CI" | "CLI" | "h" | "e"
//!         | "[" expr "," expr "]" | "(" expr ")"
//! index  := ["-"] uint ("/" uint)?
//! ```
//!
//! The printer's spellings are accepted too: `·` for `*`, `−` for `-`, and
//! `C_L`, `C_I`, `C_LI` for the central symbols, so printed output parses back
//! to the same element.

use hv_twist_core::{AlgebraError, Algebra, Element, Generator, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("column {pos}: exponent must be a positive integer, found {found}")]
    Exponent { pos: usize, found: String },
    #[error("column {pos}: {source}")]
    Algebra {
        pos: usize,
        #[source]
        source: AlgebraError,
    },
}

impl ParseError {
    /// One-based column of the offending token.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Exponent { pos, .. }
            | ParseError::Algebra { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((pos, Tok::Num(digits.parse().expect("ascii digits"))));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "an expression".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

/// Parses `input` into a normal-form element of `alg`; `h` and `e` expand to
/// `α⁻¹·L(0)` and `I(α)`.
pub fn parse(input: &str, alg: &Algebra, alpha: &Scalar) -> Result<Element, ParseError> {
    let mut p = Parser {
        toks: tokenize(input)?,
        at: 0,
        alg,
        alpha,
    };
    let x = p.expr()?;
    p.expect(Tok::End, "an operator or end of input")?;
    Ok(x)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    alg: &'a Algebra,
    alpha: &'a Scalar,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, t: Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let negate = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc += &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            acc = self.alg.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        let bad = |found: String| ParseError::Exponent { pos, found };
        match self.bump() {
            Tok::Num(n) => {
                if *self.peek() == Tok::Slash {
                    return Err(bad(format!("{n}/…")));
                }
                match u32::try_from(&n) {
                    Ok(k) if k >= 1 => Ok(self.alg.pow(&base, k)),
                    _ => Err(bad(n.to_string())),
                }
            }
            Tok::Minus => Err(bad("a negative number".into())),
            other => Err(bad(other.describe())),
        }
    }

    fn uint(&mut self, expected: &str) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(expected)),
        }
    }

    /// `uint ("/" uint)?`, with the numerator already consumed.
    fn fraction(&mut self, numer: BigInt, pos: usize) -> Result<Scalar, ParseError> {
        let denom = if self.eat(&Tok::Slash) {
            self.uint("a denominator")?
        } else {
            BigInt::one()
        };
        if denom.is_zero() {
            return Err(ParseError::Algebra {
                pos,
                source: AlgebraError::ZeroDenominator(format!("{numer}/0")),
            });
        }
        Ok(Scalar::new(numer, denom))
    }

    fn index(&mut self) -> Result<Scalar, ParseError> {
        let pos = self.pos();
        let negative = self.eat(&Tok::Minus);
        let n = self.uint("a rational index")?;
        let x = self.fraction(n, pos)?;
        Ok(if negative { -x } else { x })
    }

    fn generator(&mut self, g: Generator, pos: usize) -> Result<Element, ParseError> {
        self.alg.gen(g).map_err(|source| ParseError::Algebra { pos, source })
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Element::scalar(self.fraction(n, pos)?))
            }
            Tok::LParen => {
                self.bump();
                let x = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(x)
            }
            Tok::LBracket => {
                self.bump();
                let x = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(self.alg.commutator(&x, &y))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "L" | "I" => {
                        self.expect(Tok::LParen, "`(`")?;
                        let x = self.index()?;
                        self.expect(Tok::RParen, "`)`")?;
                        let g = if name == "L" { Generator::L(x) } else { Generator::I(x) };
                        self.generator(g, pos)
                    }
                    "CL" | "C_L" => self.generator(Generator::CL, pos),
                    "CI" | "C_I" => self.generator(Generator::CI, pos),
                    "CLI" | "C_LI" => self.generator(Generator::CLI, pos),
                    "h" => Ok(self
                        .generator(Generator::l(0), pos)?
                        .scale(&(Scalar::one() / self.alpha))),
                    "e" => self.generator(Generator::I(self.alpha.clone()), pos),
                    _ => Err(ParseError::Syntax {
                        pos,
                        expected: "a generator (L, I, CL, CI, CLI, h, e)".into(),
                        found: format!("`{name}`"),
                    }),
                }
            }
            _ => Err(self.error("a number, generator, `(` or `[`")),
        }
    }
}

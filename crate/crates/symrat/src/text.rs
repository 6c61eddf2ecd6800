//! Text form: printing as `numerator / denominator` with both sides fully
//! parenthesized, and a recursive-descent parser for the same grammar.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-'* power
//! power  := atom ('^' integer)?
//! atom   := integer | 'I' | variable | '(' expr ')'
//! ```
//!
//! Integers are unbounded; variables are the canonical symbol spellings
//! (`r`, `x`, `s`, `qa`, `M`, `a`, `Q`, `nu1`, `nu2`, `omega`, `m`, and the
//! jet symbols); `I` is the imaginary unit. Exponents after `^` may be
//! negative.

use crate::error::SymError;
use crate::expr::SymExpr;
use crate::var::Var;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// Print `(num) / (den)`; a trivial denominator prints as `(1)`.
pub fn write_expr(f: &mut fmt::Formatter<'_>, e: &SymExpr) -> fmt::Result {
    write!(f, "({})", e.numerator())?;
    f.write_str(" / ")?;
    let den = e.denominator_factors();
    if den.is_empty() {
        return f.write_str("(1)");
    }
    // The whole product is parenthesized so `/` binds over all factors.
    f.write_str("(")?;
    let mut first = true;
    for (p, k) in den {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if *k == 1 {
            write!(f, "({p})")?;
        } else {
            write!(f, "({p})^{k}")?;
        }
    }
    f.write_str(")")
}

/// Parse the text form back into an expression.
pub fn parse(input: &str) -> Result<SymExpr, SymError> {
    let tokens = lex(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(SymError::Parse(format!(
            "unexpected trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>, SymError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = s
                    .parse()
                    .map_err(|_| SymError::Parse(format!("bad integer `{s}`")))?;
                out.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => {
                return Err(SymError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<SymExpr, SymError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SymExpr, SymError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SymExpr, SymError> {
        let mut neg = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            neg = !neg;
        }
        let e = self.power()?;
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> Result<SymExpr, SymError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let mut neg = false;
            while matches!(self.peek(), Some(Tok::Minus)) {
                self.pos += 1;
                neg = !neg;
            }
            match self.next() {
                Some(Tok::Int(n)) => {
                    let k: i32 = n.to_string().parse().map_err(|_| {
                        SymError::Parse("exponent out of range".to_string())
                    })?;
                    Ok(base.pow(if neg { -k } else { k }))
                }
                other => Err(SymError::Parse(format!(
                    "expected integer exponent, found {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SymExpr, SymError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(SymExpr::constant(crate::GaussQ::from_real(
                BigRational::from_integer(n),
            ))),
            Some(Tok::Ident(name)) => {
                if name == "I" {
                    return Ok(SymExpr::i());
                }
                match Var::from_name(&name) {
                    Some(v) => Ok(SymExpr::var(v)),
                    None => Err(SymError::Parse(format!("unknown symbol `{name}`"))),
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(SymError::Parse(format!(
                        "expected `)`, found {other:?}"
                    ))),
                }
            }
            other => Err(SymError::Parse(format!(
                "expected a value, found {other:?}"
            ))),
        }
    }
}

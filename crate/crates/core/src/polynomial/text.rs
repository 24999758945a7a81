//! Polynomial text syntax.
//!
//! ```text
//! poly  := ["+" | "-"] term { ("+" | "-") term }
//! term  := coeff [ "*" word ] | word
//! coeff := int | int "/" int
//! word  := name { name } | "1"
//! ```
//!
//! A `*` glued to the end of a name is part of it (`x*` is a mirror letter);
//! a free-standing `*` separates coefficient and word.

use std::fmt;

use super::{Field, Polynomial, Scalar};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Plus,
    Minus,
    Star,
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

/// Tokens with their 1-based starting columns.
fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((Token::Plus, col));
            i += 1;
        } else if c == '-' {
            out.push((Token::Minus, col));
            i += 1;
        } else if c == '*' {
            out.push((Token::Star, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let den_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == den_start {
                    return Err(parse_err(i + 1, "expected a denominator after `/`"));
                }
            }
            out.push((Token::Number(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            out.push((Token::Name(chars[start..i].iter().collect()), col));
        } else {
            return Err(parse_err(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
    alphabet: &'a Alphabet,
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_col)
    }

    fn number(&self, text: &str, col: usize) -> Result<Scalar> {
        self.field.parse_scalar(text).map_err(|e| match e {
            Error::NotInvertible(..) => {
                parse_err(col, format!("`{text}` is undefined in {}", self.field))
            }
            _ => parse_err(col, format!("invalid number `{text}`")),
        })
    }

    /// Consumes a maximal run of names (or a lone `1`).
    fn word(&mut self) -> Result<Word> {
        if let Some(Token::Number(n)) = self.peek() {
            if n == "1" {
                self.pos += 1;
                return Ok(Word::empty());
            }
        }
        let mut ids = Vec::new();
        while let Some(Token::Name(name)) = self.peek() {
            let col = self.col();
            let id = self
                .alphabet
                .id(name)
                .map_err(|_| parse_err(col, format!("unknown letter `{name}`")))?;
            ids.push(id);
            self.pos += 1;
        }
        if ids.is_empty() {
            return Err(parse_err(self.col(), "expected a word"));
        }
        Ok(Word::from_ids(ids))
    }

    fn term(&mut self) -> Result<(Scalar, Word)> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                let col = self.col();
                self.pos += 1;
                let c = self.number(&n, col)?;
                match self.peek() {
                    Some(Token::Star) => {
                        self.pos += 1;
                        Ok((c, self.word()?))
                    }
                    Some(Token::Name(_)) => Ok((c, self.word()?)),
                    _ => Ok((c, Word::empty())),
                }
            }
            Some(Token::Name(_)) => Ok((self.field.one(), self.word()?)),
            _ => Err(parse_err(self.col(), "expected a term")),
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut p = Polynomial::zero(self.field);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                None if first => return Err(parse_err(self.col(), "empty polynomial")),
                None => break,
                _ if first => false,
                _ => return Err(parse_err(self.col(), "expected `+` or `-`")),
            };
            let (c, w) = self.term()?;
            p.add_term(w, if negate { -c } else { c });
            first = false;
        }
        Ok(p)
    }
}

impl Alphabet {
    /// Parses a polynomial such as `y - x x` or `1/2 * x x* + 3`.
    pub fn parse_polynomial(&self, text: &str, field: Field) -> Result<Polynomial> {
        let tokens = tokenize(text)?;
        if tokens.len() == 1 && tokens[0].0 == Token::Number("0".into()) {
            return Ok(Polynomial::zero(field));
        }
        let mut parser = Parser {
            tokens,
            pos: 0,
            end_col: text.chars().count() + 1,
            alphabet: self,
            field,
        };
        parser.polynomial()
    }
}

impl Polynomial {
    /// Canonical text: descending `≺_r`, unit coefficients omitted.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolynomialDisplay<'a> {
        PolynomialDisplay {
            poly: self,
            alphabet,
        }
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", w.display(self.alphabet))?;
            } else {
                write!(f, "{magnitude} * {}", w.display(self.alphabet))?;
            }
        }
        Ok(())
    }
}

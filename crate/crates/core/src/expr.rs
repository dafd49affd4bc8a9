//! Expression grammar for classes in a presented ring.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := factor ("*" factor)*
//! factor := "0" | "1" | ident ("^" uint)?
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Parsing produces a syntax tree; turning it
//! into an [`Element`](crate::ring::Element) is done against a ring, which
//! resolves identifiers to generator indices.

use thiserror::Error;

/// Syntax error with a 1-based column inside the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Zero,
    One,
    Power {
        name: String,
        exponent: u32,
        /// 1-based column of the identifier.
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        let mut p = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
        };
        let expr = p.expr()?;
        p.skip_ws();
        if let Some(&(_, c)) = p.chars.get(p.pos) {
            return Err(p.error(format!("unexpected `{c}`")));
        }
        Ok(expr)
    }

    /// Every identifier appearing in the expression with its column.
    pub fn identifiers(&self) -> impl Iterator<Item = (&str, usize)> {
        self.terms.iter().flat_map(|t| {
            t.factors.iter().filter_map(|f| match f {
                Factor::Power { name, column, .. } => Some((name.as_str(), *column)),
                _ => None,
            })
        })
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Term, ExprError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Term { factors })
    }

    fn factor(&mut self) -> Result<Factor, ExprError> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Factor::Zero)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Factor::One)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let column = self.column();
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let mut exponent = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    exponent = self.uint()?;
                }
                Ok(Factor::Power {
                    name,
                    exponent,
                    column,
                })
            }
            Some(c) => Err(self.error(format!("expected `0`, `1` or identifier, found `{c}`"))),
            None => Err(self.error("expected `0`, `1` or identifier, found end of input")),
        }
    }

    fn uint(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected exponent after `^`"));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        digits.parse().map_err(|_| ExprError {
            column: start + 1,
            message: format!("exponent `{digits}` out of range"),
        })
    }
}

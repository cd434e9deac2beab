//! Products of generator factors such as `y(1.57)*z(0.5)*x(0.3)`.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! product := factor ('*' factor)*
//! factor  := ('x' | 'y' | 'z') '(' real ')'
//! ```
//!
//! The expression is the matrix product read left to right, so the rightmost
//! factor acts first.

use std::fmt;

use squeeze_core::symplectic::{self, SymplecticMatrix, SymplecticProduct};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Character offset into the original string.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    X(f64),
    Y(f64),
    Z(f64),
}

impl Factor {
    pub fn matrix(&self) -> SymplecticMatrix {
        match *self {
            Factor::X(theta) => symplectic::generator_x(theta),
            Factor::Y(nu) => symplectic::generator_y(nu),
            Factor::Z(rho) => symplectic::generator_z(rho),
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src
                .chars()
                .enumerate()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| *i)
            .unwrap_or_else(|| self.src.chars().count())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            let sign_after_exp = matches!(c, '+' | '-')
                && self.pos > start
                && matches!(self.chars[self.pos - 1].1, 'e' | 'E');
            if c.is_ascii_digit()
                || matches!(c, '.' | 'e' | 'E')
                || sign_after_exp
                || (self.pos == start && matches!(c, '+' | '-'))
            {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text: String = self.chars[start..self.pos]
            .iter()
            .map(|(_, c)| *c)
            .collect();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.error(if text.is_empty() {
                    "expected a number".to_string()
                } else {
                    format!("invalid number '{text}'")
                })
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let kind = match self.peek() {
            Some(c @ ('x' | 'y' | 'z')) => c,
            Some(c) => return self.error(format!("expected generator x, y or z, found '{c}'")),
            None => return self.error("expected generator x, y or z, found end of input"),
        };
        self.pos += 1;
        self.expect('(')?;
        let value = self.number()?;
        self.expect(')')?;
        Ok(match kind {
            'x' => Factor::X(value),
            'y' => Factor::Y(value),
            _ => Factor::Z(value),
        })
    }

    fn product(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek().is_some() {
            self.expect('*')?;
            factors.push(self.factor()?);
        }
        Ok(factors)
    }
}

/// Factors in the order written.
pub fn parse(src: &str) -> Result<Vec<Factor>, ParseError> {
    Parser::new(src).product()
}

/// Product of the parsed factors, rightmost acting first.
pub fn evaluate(factors: &[Factor]) -> SymplecticProduct {
    let mut product = SymplecticProduct::identity();
    for f in factors.iter().rev() {
        product
            .then(&f.matrix())
            .expect("generators have unit determinant");
    }
    product
}

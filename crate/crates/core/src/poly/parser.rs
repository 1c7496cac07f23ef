//! Recursive-descent parser for the polynomial input grammar.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' uint)?
//! var      := 'x' | 'y' | 'z'
//! ```
//!
//! Whitespace is insignificant. Implicit multiplication is rejected:
//! `2x` is a syntax error at the offset of `x`.

use super::{Poly, Rational};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte offset {offset}")]
    Syntax { offset: usize },
    #[error("unknown variable '{found}' at byte offset {offset}")]
    UnknownVariable { offset: usize, found: char },
    #[error("negative exponent at byte offset {offset}")]
    NegativeExponent { offset: usize },
}

/// Parse UTF-8 text into an exact polynomial of the given arity (2 or 3).
pub fn parse_poly(text: &str, arity: usize) -> Result<Poly, ParseError> {
    assert!(arity == 2 || arity == 3, "parser supports arity 2 or 3");
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        arity,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(ParseError::Syntax { offset: parser.pos });
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if self.bytes.get(self.pos) == Some(&b'-') {
                return Err(ParseError::NegativeExponent { offset: self.pos });
            }
            let e = self.uint()?;
            let e: usize = e.try_into().map_err(|_| ParseError::Syntax { offset: self.pos })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Syntax { offset: self.pos });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => {
                let offset = self.pos;
                let index = match c {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    _ => {
                        return Err(ParseError::UnknownVariable {
                            offset,
                            found: c as char,
                        })
                    }
                };
                if index >= self.arity {
                    return Err(ParseError::UnknownVariable {
                        offset,
                        found: c as char,
                    });
                }
                self.pos += 1;
                Ok(Poly::var(index, self.arity))
            }
            _ => Err(ParseError::Syntax { offset: self.pos }),
        }
    }

    fn rational(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        let negative = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut num = self.uint()?;
        if negative {
            num = -num;
        }
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den_offset = self.pos;
            let den = self.uint()?;
            if den == BigInt::from(0) {
                return Err(ParseError::Syntax { offset: den_offset });
            }
            return Ok(Poly::constant(Rational::new(num, den), self.arity));
        }
        Ok(Poly::constant(Rational::from_integer(num), self.arity))
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax { offset: start });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int, Monomial};
    use super::*;

    #[test]
    fn term_reading() {
        let f = parse_poly("x^2*y - 3/2", 2).unwrap();
        assert_eq!(f.coefficient(&Monomial(vec![2, 1])), rat_int(1));
        assert_eq!(f.coefficient(&Monomial(vec![0, 0])), rat(-3, 2));
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn binomial_expansion() {
        assert_eq!(
            parse_poly("(x+y)^2", 2).unwrap(),
            parse_poly("x^2 + 2*x*y + y^2", 2).unwrap()
        );
    }

    #[test]
    fn syntax_error_offset() {
        assert_eq!(
            parse_poly("x^2 + * y", 2),
            Err(ParseError::Syntax { offset: 6 })
        );
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert_eq!(parse_poly("2x", 2), Err(ParseError::Syntax { offset: 1 }));
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(
            parse_poly("x + w", 2),
            Err(ParseError::UnknownVariable { offset: 4, found: 'w' })
        );
        // z is only a variable at arity 3.
        assert_eq!(
            parse_poly("z", 2),
            Err(ParseError::UnknownVariable { offset: 0, found: 'z' })
        );
        assert!(parse_poly("z", 3).is_ok());
    }

    #[test]
    fn negative_exponent() {
        assert_eq!(
            parse_poly("x^-2", 2),
            Err(ParseError::NegativeExponent { offset: 2 })
        );
    }

    #[test]
    fn signs_and_rationals() {
        assert_eq!(parse_poly("3 * -2", 2).unwrap(), Poly::constant(rat_int(-6), 2));
        assert_eq!(parse_poly("-3/2", 2).unwrap(), Poly::constant(rat(-3, 2), 2));
        assert!(parse_poly("3/0", 2).is_err());
    }
}

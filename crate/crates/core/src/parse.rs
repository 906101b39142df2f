//! Text parser for [`MultiPoly`] expressions.
//!
//! Accepts the canonical output of `Display` plus ordinary infix input:
//! integers, parameter names, `+ - * ^`, parentheses, and division by a
//! non-zero constant (`3/2*e1`, `(e1 - e2)/4`).

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ArithError;
use crate::poly::{MultiPoly, ParamId, Rational};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ArithError {
        ArithError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc * rhs;
            } else {
                let d = rhs
                    .constant_value()
                    .ok_or_else(|| self.err("divisor must be a constant"))?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ArithError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let exp: u32 = digits
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MultiPoly, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                ParamId::from_name(&name).map(MultiPoly::param).ok_or(
                    ArithError::UnknownParameter {
                        position: start,
                        name,
                    },
                )
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for MultiPoly {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<MultiPoly, ArithError> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.peek().is_some() {
            return Err(parser.err("trailing input"));
        }
        Ok(p)
    }
}

/// Parse a rational literal such as `-3/2`, `7` or `0`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let p: MultiPoly = s.parse()?;
    p.constant_value().ok_or(ArithError::Parse {
        position: 0,
        message: "expected a rational constant".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn parses_infix_expressions() {
        let p: MultiPoly = "(e1-e2)*(2*e1+e2)".parse().unwrap();
        assert_eq!(p.to_canonical(), "-e1*e2 + 2*e1^2 - e2^2");
        let q: MultiPoly = "-3/2*alpha^2 + 1".parse().unwrap();
        assert_eq!(q.to_canonical(), "1 - 3/2*alpha^2");
        let r: MultiPoly = "(e^2)^2/4".parse().unwrap();
        assert_eq!(r, MultiPoly::monomial(rat(1, 4), ParamId::E, 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            "x + 1".parse::<MultiPoly>(),
            Err(ArithError::UnknownParameter { .. })
        ));
        assert!("e1 / e2".parse::<MultiPoly>().is_err());
        assert!("e1 / 0".parse::<MultiPoly>().is_err());
        assert!("(e1".parse::<MultiPoly>().is_err());
        assert!("e1 e2".parse::<MultiPoly>().is_err());
        assert!("e1^".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("s").is_err());
    }
}

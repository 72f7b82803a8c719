//! Text syntax for graded elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*
//! power  := atom ['^' ['-'] digits]
//! atom   := digits | 't' | 'u' | '(' expr ')' | '-' power
//! ```
//!
//! Whitespace is ignored. Division and negative powers are only allowed for
//! single homogeneous terms such as `u`, `t^2` or `(t+1)*u^3`. The output of
//! `GradedElement`'s `Display` parses back to the same element.

use crate::dpdring::GradedElement;
use crate::error::{Error, Result};
use crate::exactmath::Rat;

pub fn parse_element(text: &str) -> Result<GradedElement> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial in `t` (an element with only a polynomial degree-0 part).
pub fn parse_poly(text: &str) -> Result<crate::exactmath::Poly> {
    let e = parse_element(text)?;
    let f = e.component(0);
    if e.degrees().iter().any(|&n| n != 0) || !f.is_polynomial() {
        return Err(Error::parse(0, "expected a polynomial in t"));
    }
    Ok(f.num().clone())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GradedElement> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedElement> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.power()?;
                    let inv = invert(&rhs).ok_or_else(|| {
                        Error::parse(at, "can only divide by a nonzero homogeneous term")
                    })?;
                    acc = &acc * &inv;
                }
                Some(c) if c == b'(' || c == b't' || c == b'u' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<GradedElement> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let neg = self.eat(b'-');
        let n = self.digits()?;
        let n: u32 = n
            .parse()
            .map_err(|_| Error::parse(at, "exponent out of range"))?;
        if !neg {
            return Ok(base.pow(n));
        }
        let inv = invert(&base)
            .ok_or_else(|| Error::parse(at, "negative power of a non-monomial element"))?;
        Ok(inv.pow(n))
    }

    fn atom(&mut self) -> Result<GradedElement> {
        let at = self.pos;
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(GradedElement::t())
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(GradedElement::u_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits()?;
                let r: Rat = s.parse().map_err(|_| Error::parse(at, "bad number"))?;
                Ok(GradedElement::constant(r))
            }
            Some(c) => Err(Error::parse(self.pos, format!("unexpected {:?}", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

fn invert(x: &GradedElement) -> Option<GradedElement> {
    x.recip()
}

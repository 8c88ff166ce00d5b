//! Constant expressions for matrix entries, e.g. `"1/sqrt(2)"` or `"-pi/4"`.
//!
//! Grammar: numbers, `pi`, `sqrt(..)`, parentheses, binary `+ - * / ^`
//! (`^` binds tightest and associates to the right) and unary signs.

use crate::error::{Error, Result};

pub fn eval(src: &str) -> Result<f64> {
    let mut p = Parser { s: src.as_bytes(), i: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if !v.is_finite() {
        return Err(Error::Parse(format!("expression {src:?} is not finite")));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<f64> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v += self.term()?;
            } else if self.eat(b'-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<f64> {
        let base = self.atom()?;
        if self.eat(b'^') {
            Ok(base.powf(self.unary()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.s.get(self.i).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.i += 1;
                }
                match &self.s[start..self.i] {
                    b"pi" => Ok(std::f64::consts::PI),
                    b"sqrt" => {
                        if !self.eat(b'(') {
                            return Err(self.err("expected '(' after sqrt"));
                        }
                        let v = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        if v < 0.0 {
                            return Err(self.err("sqrt of a negative number"));
                        }
                        Ok(v.sqrt())
                    }
                    _ => {
                        self.i = start;
                        Err(self.err("unknown identifier"))
                    }
                }
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.i;
        let digits = |p: &mut Self| {
            while p.s.get(p.i).is_some_and(|c| c.is_ascii_digit()) {
                p.i += 1;
            }
        };
        digits(self);
        if self.s.get(self.i) == Some(&b'.') {
            self.i += 1;
            digits(self);
        }
        if matches!(self.s.get(self.i), Some(b'e' | b'E')) {
            let save = self.i;
            self.i += 1;
            if matches!(self.s.get(self.i), Some(b'+' | b'-')) {
                self.i += 1;
            }
            if self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
                digits(self);
            } else {
                self.i = save;
            }
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("malformed number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(eval("1/2").unwrap(), 0.5);
        assert_eq!(eval("1/sqrt(2)").unwrap(), 1.0 / 2f64.sqrt());
        assert_eq!(eval("-2^2").unwrap(), -4.0);
        assert_eq!(eval("2^3^2").unwrap(), 512.0);
        assert_eq!(eval(" (1 + 2) * 3 ").unwrap(), 9.0);
        assert_eq!(eval("1.5e-3").unwrap(), 1.5e-3);
        assert_eq!(eval("pi/4").unwrap(), std::f64::consts::FRAC_PI_4);
        assert_eq!(eval("sqrt(3)/2 - -1").unwrap(), 3f64.sqrt() / 2.0 + 1.0);
    }

    #[test]
    fn rejects() {
        for bad in ["", "1/", "sqrt 2", "foo", "(1", "1 2", "1/0", "sqrt(-1)", "e"] {
            assert!(matches!(eval(bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}

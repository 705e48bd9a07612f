//! Canonical string form and the matching parser.
//!
//! Monomials print as `q^i*t^j*a1^k`, odd powers of v as `q^(n/2)`, and a value as
//! `numerator` or `numerator/denominator` with multi-term parts parenthesized.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::FieldError;
use crate::monomial::Monomial;
use crate::poly::{Exps, Poly};
use crate::ratfunc::RatFunc;
use crate::{NVARS, VAR_T, VAR_V};

fn fmt_exps(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate().take(NVARS) {
        if k == 0 {
            continue;
        }
        let s = match i {
            VAR_V if k % 2 == 0 && k == 2 => "q".to_string(),
            VAR_V if k % 2 == 0 => format!("q^{}", k / 2),
            VAR_V => format!("q^({k}/2)"),
            VAR_T if k == 1 => "t".to_string(),
            VAR_T => format!("t^{k}"),
            _ if k == 1 => format!("a{}", i - 1),
            _ => format!("a{}^{k}", i - 1),
        };
        parts.push(s);
    }
    parts.join("*")
}

fn fmt_term(e: &Exps, c: &BigInt) -> String {
    let m = fmt_exps(e);
    if m.is_empty() {
        c.to_string()
    } else if c.is_one() {
        m
    } else if *c == -BigInt::one() {
        format!("-{m}")
    } else {
        format!("{c}*{m}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().iter().enumerate() {
            if i == 0 {
                write!(f, "{}", fmt_term(e, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(e, &-c))?;
            } else {
                write!(f, " + {}", fmt_term(e, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.fraction();
        let ns = if n.len() > 1 { format!("({n})") } else { n.to_string() };
        if d.is_one() {
            return write!(f, "{n}");
        }
        let simple = d.len() == 1 && d.terms()[0].1.is_one() && fmt_exps(&d.terms()[0].0).matches('*').count() == 0;
        if simple {
            write!(f, "{ns}/{d}")
        } else {
            write!(f, "{ns}/({d})")
        }
    }
}

impl FromStr for RatFunc {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        parse(s)
    }
}

/// Parses an arithmetic expression in q, t, v, a1..a8 with integer constants.
pub fn parse(s: &str) -> Result<RatFunc, FieldError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FieldError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc * self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
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

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let (base, is_q) = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let (num, den) = self.exponent()?;
        match den {
            1 => {
                if base.is_zero() && num < 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(base.pow(num))
            }
            2 if is_q => Ok(RatFunc::monomial(Monomial::var(VAR_V, num))),
            _ => Err(self.err("fractional exponents are only allowed on q, with denominator 2")),
        }
    }

    fn exponent(&mut self) -> Result<(i32, i32), FieldError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let n = self.signed_int()?;
            let d = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.signed_int()?
            } else {
                1
            };
            self.expect(b')')?;
            if d <= 0 {
                return Err(self.err("exponent denominator must be positive"));
            }
            if n % d == 0 {
                Ok((n / d, 1))
            } else if d == 2 {
                Ok((n, 2))
            } else {
                Err(self.err("unsupported exponent denominator"))
            }
        } else {
            Ok((self.signed_int()?, 1))
        }
    }

    fn signed_int(&mut self) -> Result<i32, FieldError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let v: i32 = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<(RatFunc, bool), FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok((v, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok((RatFunc::from_bigint(n), false))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok((RatFunc::q(), true))
            }
            Some(b't') => {
                self.pos += 1;
                Ok((RatFunc::t(), false))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok((RatFunc::v(), false))
            }
            Some(b'a') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let i: usize = std::str::from_utf8(&self.s[start..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| self.err("expected parameter index after 'a'"))?;
                if !(1..=crate::MAX_PARAMS).contains(&i) {
                    return Err(self.err("parameter index out of range"));
                }
                Ok((RatFunc::a(i), false))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

//! Tiny expression grammar for bracket generating functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*     (juxtaposition multiplies)
//! factor := atom ('^' uint)?
//! atom   := '(' expr ')' | uint | 'L' | 'Mt' | 't'
//! ```
//!
//! `L` and `Mt` are ring scalars, `t` is the series variable. Division by
//! a series inverts it formally (the constant term must be a unit), so
//! geometric factors like `t/(1-t)` or `t^2/(1-t^2)` expand to the
//! requested truncation order. All arithmetic is exact.

use dtmotive::motive::MotiveClass;
use dtmotive::ratio::MotiveRatio;
use dtmotive::series::Series;
use dtmotive::{Error, Result};

#[derive(Debug, Clone)]
enum Value {
    Scalar(MotiveRatio),
    Ser(Series),
}

impl Value {
    fn into_series(self, order: usize) -> Series {
        match self {
            Value::Ser(s) => s,
            Value::Scalar(c) => {
                let mut s = Series::zero(0, order);
                s.set_coeff(0, c);
                s
            }
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    order: usize,
}

/// Parse an expression into a twist-0 series truncated at `order`.
pub fn parse_series(text: &str, order: usize) -> Result<Series> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, order };
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v.into_series(order))
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::ParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(b'(') | Some(b'L') | Some(b'M') | Some(b't'))
            || self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn expr(&mut self) -> Result<Value> {
        self.skip_ws();
        let negated = self.peek() == Some(b'-');
        if negated {
            self.pos += 1;
            self.skip_ws();
        }
        let mut acc = self.term()?;
        if negated {
            acc = self.add(Value::Scalar(MotiveRatio::zero()), acc, true)?;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(op @ (b'+' | b'-')) => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs, op == b'-')?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.factor()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.factor()?;
                    acc = self.div(acc, rhs)?;
                }
                _ if self.starts_atom() => {
                    let rhs = self.factor()?;
                    acc = self.mul(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.uint()?;
            return self.pow(base, k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'L') => {
                self.pos += 1;
                Ok(Value::Scalar(MotiveRatio::from_class(MotiveClass::l_pow(1))))
            }
            Some(b'M') => {
                if self.text[self.pos..].starts_with(b"Mt") {
                    self.pos += 2;
                    Ok(Value::Scalar(MotiveRatio::from_class(MotiveClass::mtilde())))
                } else {
                    Err(self.err("unknown symbol; expected Mt"))
                }
            }
            Some(b't') => {
                self.pos += 1;
                let mut s = Series::zero(0, self.order);
                if self.order >= 1 {
                    s.set_coeff(1, MotiveRatio::one());
                }
                Ok(Value::Ser(s))
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.uint()?;
                Ok(Value::Scalar(MotiveRatio::int(k as i64)))
            }
            _ => Err(self.err("expected a number, L, Mt, t, or '('")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.text[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| Error::ParseError {
                position: start,
                message: "number too large".into(),
            })
    }

    fn add(&self, a: Value, b: Value, sub: bool) -> Result<Value> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => {
                let r = if sub { x.sub(&y)? } else { x.add(&y)? };
                Ok(Value::Scalar(r))
            }
            (a, b) => {
                let x = a.into_series(self.order);
                let y = b.into_series(self.order);
                let r = if sub { x.sub(&y)? } else { x.add(&y)? };
                Ok(Value::Ser(r))
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.mul(&y)?)),
            (Value::Scalar(x), Value::Ser(s)) | (Value::Ser(s), Value::Scalar(x)) => {
                Ok(Value::Ser(s.scale(&x)?))
            }
            (Value::Ser(x), Value::Ser(y)) => Ok(Value::Ser(x.mul(&y)?)),
        }
    }

    fn div(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.div(&y)?)),
            (a, Value::Ser(y)) => {
                let inv = y.inverse()?;
                let x = a.into_series(self.order);
                Ok(Value::Ser(x.mul(&inv)?))
            }
            (Value::Ser(s), Value::Scalar(y)) => {
                let inv = MotiveRatio::one().div(&y)?;
                Ok(Value::Ser(s.scale(&inv)?))
            }
        }
    }

    fn pow(&self, base: Value, k: u64) -> Result<Value> {
        let mut acc = Value::Scalar(MotiveRatio::one());
        for _ in 0..k {
            acc = self.mul(acc, base.clone())?;
        }
        Ok(acc)
    }
}

//! Superpotentials: formal rational combinations of cyclic words
//! (necklaces) in non-commuting letters.
//!
//! Words are stored in their lexicographically minimal rotation, so two
//! potentials that differ only by cyclic rotation of words compare equal.
//! The two built-in potentials are `XYZ + XZY` (quantum affine 3-space at
//! a primitive square root of unity) and `XYZ - XZY - 1/3 XXX` (the
//! homogenized Weyl algebra).

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A formal sum of cyclic words with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superpotential {
    /// canonical (minimal-rotation) word -> coefficient, zeros dropped
    terms: BTreeMap<Vec<u8>, BigRational>,
    /// number of letters (1 + highest letter index used, at least 1)
    m: u32,
}

/// Coefficients of the normal form
/// `alpha X^3 + beta Y^3 + gamma Z^3 + delta XYZ + epsilon XZY`
/// of a cubic potential in three letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicParams {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
    pub delta: BigRational,
    pub epsilon: BigRational,
}

/// Lexicographically minimal rotation of a word.
pub fn canonical_rotation(word: &[u8]) -> Vec<u8> {
    let mut best = word.to_vec();
    for k in 1..word.len() {
        let mut rot = Vec::with_capacity(word.len());
        rot.extend_from_slice(&word[k..]);
        rot.extend_from_slice(&word[..k]);
        if rot < best {
            best = rot;
        }
    }
    best
}

impl Superpotential {
    /// Build from raw (word, coefficient) pairs; rotations are merged and
    /// zero coefficients dropped.
    pub fn from_terms(raw: impl IntoIterator<Item = (Vec<u8>, BigRational)>) -> Self {
        let mut terms: BTreeMap<Vec<u8>, BigRational> = BTreeMap::new();
        let mut m = 1u32;
        for (word, coeff) in raw {
            if word.is_empty() || coeff.is_zero() {
                continue;
            }
            for &l in &word {
                m = m.max(l as u32 + 1);
            }
            let canon = canonical_rotation(&word);
            let entry = terms.entry(canon).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Superpotential { terms, m }
    }

    /// `XYZ + XZY`
    pub fn quantum() -> Self {
        let one = BigRational::one;
        Self::from_terms([(alloc::vec![0, 1, 2], one()), (alloc::vec![0, 2, 1], one())])
    }

    /// `XYZ - XZY - 1/3 XXX`
    pub fn weyl() -> Self {
        let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
        Self::from_terms([
            (alloc::vec![0, 1, 2], BigRational::one()),
            (alloc::vec![0, 2, 1], -BigRational::one()),
            (alloc::vec![0, 0, 0], third),
        ])
    }

    /// Normal form `alpha X^3 + beta Y^3 + gamma Z^3 + delta XYZ + epsilon XZY`
    /// with the given coefficients.
    pub fn cubic_normal_form(p: &CubicParams) -> Self {
        Self::from_terms([
            (alloc::vec![0, 0, 0], p.alpha.clone()),
            (alloc::vec![1, 1, 1], p.beta.clone()),
            (alloc::vec![2, 2, 2], p.gamma.clone()),
            (alloc::vec![0, 1, 2], p.delta.clone()),
            (alloc::vec![0, 2, 1], p.epsilon.clone()),
        ])
    }

    /// Number of letters.
    pub fn letters(&self) -> u32 {
        self.m
    }

    /// Iterate (canonical word, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common word length, if the potential is homogeneous (and nonzero).
    pub fn degree(&self) -> Option<usize> {
        let mut words = self.terms.keys();
        let d = words.next()?.len();
        if words.all(|w| w.len() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Coefficient of a word (up to rotation).
    pub fn coeff(&self, word: &[u8]) -> BigRational {
        self.terms
            .get(&canonical_rotation(word))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Express a cubic three-letter potential in the normal form
    /// `alpha X^3 + beta Y^3 + gamma Z^3 + delta XYZ + epsilon XZY`,
    /// if only those five necklaces occur.
    pub fn cubic_params(&self) -> Option<CubicParams> {
        if self.m > 3 || self.degree() != Some(3) {
            return None;
        }
        let allowed: [&[u8]; 5] = [&[0, 0, 0], &[1, 1, 1], &[2, 2, 2], &[0, 1, 2], &[0, 2, 1]];
        for word in self.terms.keys() {
            if !allowed.iter().any(|a| *a == word.as_slice()) {
                return None;
            }
        }
        Some(CubicParams {
            alpha: self.coeff(&[0, 0, 0]),
            beta: self.coeff(&[1, 1, 1]),
            gamma: self.coeff(&[2, 2, 2]),
            delta: self.coeff(&[0, 1, 2]),
            epsilon: self.coeff(&[0, 2, 1]),
        })
    }

    /// Parse from text. Grammar: signed terms `[coef] [*] WORD` where
    /// `coef` is an integer or fraction `a/b`, and `WORD` juxtaposes the
    /// letters `X`, `Y`, `Z` (or `X1`..`Xm`), e.g. `XYZ - XZY - 1/3 XXX`.
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }
}

impl core::fmt::Display for Superpotential {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in &self.terms {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            for &l in word {
                if self.m <= 3 {
                    write!(f, "{}", ['X', 'Y', 'Z'][l as usize])?;
                } else {
                    write!(f, "X{}", l + 1)?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: &str) -> Error {
        Error::ParseError { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let digits = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        digits.parse::<BigInt>().map_err(|_| self.error("bad integer"))
    }

    fn word(&mut self) -> Result<Vec<u8>> {
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(b'X') => {
                    self.pos += 1;
                    if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                        let idx = self.integer()?;
                        let idx: u32 = idx
                            .to_string()
                            .parse()
                            .map_err(|_| self.error("letter index out of range"))?;
                        if idx == 0 || idx > 26 {
                            return Err(self.error("letter index out of range"));
                        }
                        letters.push((idx - 1) as u8);
                    } else {
                        letters.push(0);
                    }
                }
                Some(b'Y') => {
                    self.pos += 1;
                    letters.push(1);
                }
                Some(b'Z') => {
                    self.pos += 1;
                    letters.push(2);
                }
                _ => break,
            }
        }
        if letters.is_empty() {
            return Err(self.error("expected a word in letters X, Y, Z (or X1..Xm)"));
        }
        Ok(letters)
    }

    fn parse(mut self) -> Result<Superpotential> {
        let mut raw: Vec<(Vec<u8>, BigRational)> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty potential"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(self.error("expected '+' or '-' between terms")),
            };
            first = false;
            self.skip_ws();
            let mut coeff = BigRational::from_integer(BigInt::from(sign));
            if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                }
                coeff *= BigRational::new(num, den);
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                }
            }
            let word = self.word()?;
            raw.push((word, coeff));
        }
        Ok(Superpotential::from_terms(raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_quantum() {
        let w = Superpotential::parse("XYZ + XZY").unwrap();
        assert_eq!(w, Superpotential::quantum());
        assert_eq!(w.degree(), Some(3));
        assert_eq!(w.letters(), 3);
    }

    #[test]
    fn parse_weyl() {
        let w = Superpotential::parse("XYZ - XZY - 1/3 XXX").unwrap();
        assert_eq!(w, Superpotential::weyl());
        let p = w.cubic_params().unwrap();
        assert_eq!(p.alpha, BigRational::new(BigInt::from(-1), BigInt::from(3)));
        assert!(p.beta.is_zero());
        assert!(p.gamma.is_zero());
        assert!(p.delta.is_one());
        assert_eq!(p.epsilon, -BigRational::one());
    }

    #[test]
    fn cyclic_canonicalization() {
        let w = Superpotential::parse("YZX").unwrap();
        assert_eq!(w, Superpotential::parse("XYZ").unwrap());
        // merging across rotations
        let sum = Superpotential::parse("XYZ + YZX - 2 ZXY").unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn indexed_letters() {
        let w = Superpotential::parse("X1X2X3").unwrap();
        assert_eq!(w, Superpotential::parse("XYZ").unwrap());
    }

    #[test]
    fn parse_errors_carry_position() {
        match Superpotential::parse("XYZ + ") {
            Err(Error::ParseError { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Superpotential::parse("XYZ ? XZY").is_err());
        assert!(Superpotential::parse("1/0 XYZ").is_err());
    }

    #[test]
    fn display_round_trip() {
        let w = Superpotential::weyl();
        let shown = w.to_string();
        let back = Superpotential::parse(&shown).unwrap();
        assert_eq!(w, back);
    }
}

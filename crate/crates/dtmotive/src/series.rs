//! Truncated power series over motive ratios, with an optional twist.
//!
//! A [`Series`] stores coefficients `a_0 .. a_N` of a series in `t`
//! truncated at order `N`, together with a twist weight `w`. The product is
//! the *twisted* convolution
//!
//! ```text
//!     (a * b)_k = sum_{i+j=k} a_i * b_j * L^(w*i*j),
//! ```
//!
//! so `w = 0` is the ordinary Cauchy product and `w = m - 1` (that is,
//! `w = 2` for cubic potentials) is the product under which the
//! Brauer-Severi and fiber generating series satisfy their functional
//! equation. All arithmetic is exact; both operands must carry the same
//! twist and truncation order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::motive::MotiveClass;
use crate::ratio::MotiveRatio;

/// Truncated series `sum_k a_k t^k`, `k <= order`, with twist `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    twist: i64,
    coeffs: Vec<MotiveRatio>,
}

impl Series {
    /// The zero series of the given truncation order.
    pub fn zero(twist: i64, order: usize) -> Self {
        Series { twist, coeffs: vec![MotiveRatio::zero(); order + 1] }
    }

    /// The constant series 1.
    pub fn one(twist: i64, order: usize) -> Self {
        let mut s = Series::zero(twist, order);
        s.coeffs[0] = MotiveRatio::one();
        s
    }

    /// Build from explicit coefficients `a_0 ..= a_N`.
    pub fn from_coeffs(twist: i64, coeffs: Vec<MotiveRatio>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least its constant term");
        Series { twist, coeffs }
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Truncation order `N` (the largest stored power of `t`).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MotiveRatio {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MotiveRatio] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: MotiveRatio) {
        self.coeffs[k] = v;
    }

    fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.twist != other.twist {
            return Err(Error::TwistMismatch { left: self.twist, right: other.twist });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { twist: self.twist, coeffs })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series { twist: self.twist, coeffs })
    }

    /// Twisted product `(a*b)_k = sum a_i b_j L^(w i j)`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let n = self.order();
        let mut out = Series::zero(self.twist, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let mut term = self.coeffs[i].mul(&other.coeffs[j])?;
                if self.twist != 0 {
                    let e2 = 2 * self.twist * (i as i64) * (j as i64);
                    term = term.mul_class(&MotiveClass::l_pow_half(e2))?;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&term)?;
            }
        }
        Ok(out)
    }

    /// Scale every coefficient by a ratio.
    pub fn scale(&self, c: &MotiveRatio) -> Result<Series> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(Series { twist: self.twist, coeffs })
    }

    /// Substitute `t -> c * t` for a class `c`: `a_k -> a_k * c^k`.
    pub fn subs_t_scale(&self, c: &MotiveClass) -> Result<Series> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = MotiveClass::one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(c)?;
            }
            coeffs.push(a.mul_class(&power)?);
        }
        Ok(Series { twist: self.twist, coeffs })
    }

    /// Multiplicative inverse of a series with unit constant term, at
    /// twist zero only (twisted inversion is never needed here).
    pub fn inverse(&self) -> Result<Series> {
        if self.twist != 0 {
            return Err(Error::TwistMismatch { left: self.twist, right: 0 });
        }
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order();
        let mut inv = Series::zero(0, n);
        inv.coeffs[0] = MotiveRatio::one().div(a0)?;
        for k in 1..=n {
            let mut acc = MotiveRatio::zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&inv.coeffs[k - i])?)?;
            }
            inv.coeffs[k] = acc.neg().div(a0)?;
        }
        Ok(inv)
    }

    /// The scaled geometric tail `a * t^p / (1 - t^p) = a (t^p + t^(2p) + ...)`
    /// at twist zero; the usual building block of Exp brackets.
    pub fn geometric_fraction(a: &MotiveRatio, period: usize, order: usize) -> Series {
        let mut s = Series::zero(0, order);
        if period > 0 {
            let mut k = period;
            while k <= order {
                s.coeffs[k] = a.clone();
                k += period;
            }
        }
        s
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*t^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

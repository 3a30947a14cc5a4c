//! Formal quotients of motive classes.
//!
//! A [`MotiveRatio`] is a pair `num/den` with `den` a nonzero *untagged*
//! class. Equality never needs a polynomial gcd: it is decided by
//! cross-multiplication,
//!
//! ```text
//!     a/b == c/d   iff   a*d == c*b,
//! ```
//!
//! which is exact and cheap on the small denominators that occur here
//! (`L - 1`, `L^2 - 1`, `[GL_n]`, and their Adams images). Arithmetic only
//! normalizes cosmetically (common integer content and a common monomial
//! `L^(e2/2)` are removed); [`MotiveRatio::reduced`] additionally divides
//! out the full polynomial gcd on demand, so printed ratios look like the
//! hand computations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::motive::{EquivTag, MotiveClass};

/// A formal quotient of motive classes with untagged denominator.
#[derive(Debug, Clone)]
pub struct MotiveRatio {
    num: MotiveClass,
    den: MotiveClass,
}

impl MotiveRatio {
    /// Build `num/den`. The denominator must be nonzero and free of
    /// equivariant tags (else cross-multiplication equality would be a
    /// partial operation).
    pub fn new(num: MotiveClass, den: MotiveClass) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.has_equivariant_part() {
            return Err(Error::NonUnitDenominator);
        }
        let mut r = MotiveRatio { num, den };
        r.reduce_content();
        Ok(r)
    }

    pub fn from_class(num: MotiveClass) -> Self {
        MotiveRatio { num, den: MotiveClass::one() }
    }

    pub fn zero() -> Self {
        MotiveRatio::from_class(MotiveClass::zero())
    }

    pub fn one() -> Self {
        MotiveRatio::from_class(MotiveClass::one())
    }

    pub fn int(c: i64) -> Self {
        MotiveRatio::from_class(MotiveClass::int(c))
    }

    pub fn num(&self) -> &MotiveClass {
        &self.num
    }

    pub fn den(&self) -> &MotiveClass {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Remove common integer content and a common power of `L` from
    /// numerator and denominator. Value-preserving; purely cosmetic.
    fn reduce_content(&mut self) {
        if self.num.is_zero() {
            self.den = MotiveClass::one();
            return;
        }
        let g = self.num.content().gcd(&self.den.content());
        if g > BigInt::one() {
            self.num = self.num.div_exact_int(&g).expect("content divides");
            self.den = self.den.div_exact_int(&g).expect("content divides");
        }
        let shift = self.num.min_e2().unwrap_or(0).min(self.den.min_e2().unwrap_or(0));
        if shift != 0 {
            self.num = self.num.shift(-shift);
            self.den = self.den.shift(-shift);
        }
        // keep the leading denominator coefficient positive for stable display
        if let Some(top) = self.den.max_e2() {
            if self.den.coeff(top, EquivTag::Unit).map(|c| c.is_negative()).unwrap_or(false) {
                self.num = -self.num.clone();
                self.den = -self.den.clone();
            }
        }
    }

    pub fn add(&self, other: &MotiveRatio) -> Result<MotiveRatio> {
        let num = self.num.mul(&other.den)? + other.num.mul(&self.den)?;
        MotiveRatio::new(num, self.den.mul(&other.den)?)
    }

    pub fn sub(&self, other: &MotiveRatio) -> Result<MotiveRatio> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MotiveRatio {
        MotiveRatio { num: -self.num.clone(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &MotiveRatio) -> Result<MotiveRatio> {
        MotiveRatio::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    /// Divide by another ratio; its numerator must be untagged (it becomes
    /// a denominator) and nonzero.
    pub fn div(&self, other: &MotiveRatio) -> Result<MotiveRatio> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        MotiveRatio::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    /// Divide by a (nonzero) integer by enlarging the denominator. Always
    /// exact as a ratio; use [`MotiveRatio::div_exact_int`] to insist the
    /// numerator absorbs the division.
    pub fn div_int(&self, k: i64) -> Result<MotiveRatio> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        MotiveRatio::new(self.num.clone(), self.den.scale(&BigInt::from(k)))
    }

    /// Divide the numerator by `k`, failing unless every numerator
    /// coefficient is divisible.
    pub fn div_exact_int(&self, k: &BigInt) -> Result<MotiveRatio> {
        Ok(MotiveRatio { num: self.num.div_exact_int(k)?, den: self.den.clone() })
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> MotiveRatio {
        let mut r = MotiveRatio { num: self.num.scale(c), den: self.den.clone() };
        r.reduce_content();
        r
    }

    /// Multiply by a bare class.
    pub fn mul_class(&self, c: &MotiveClass) -> Result<MotiveRatio> {
        MotiveRatio::new(self.num.mul(c)?, self.den.clone())
    }

    /// Cross-multiplication equality: `a/b == c/d iff a*d == c*b`.
    pub fn eq(&self, other: &MotiveRatio) -> bool {
        // denominators are untagged, so these products cannot fail
        let lhs = self.num.mul(&other.den).expect("untagged denominator");
        let rhs = other.num.mul(&self.den).expect("untagged denominator");
        lhs == rhs
    }

    /// Adams operation applied to numerator and denominator. The
    /// denominator is untagged, so `psi_k` is defined on it for every `k`;
    /// the numerator may restrict `k` as in [`MotiveClass::adams`].
    pub fn adams(&self, k: u32) -> Result<MotiveRatio> {
        MotiveRatio::new(self.num.adams(k)?, self.den.adams(k)?)
    }

    /// If the ratio is actually a polynomial class (denominator divides
    /// the numerator exactly), return it.
    pub fn to_class(&self) -> Result<MotiveClass> {
        self.num.div_exact(&self.den)
    }

    /// Fully reduced form: numerator and denominator are divided by their
    /// greatest common untagged divisor, computed in `Z[s]` with
    /// `s = L^(1/2)` (a tagged numerator reduces component by component,
    /// so the gcd is taken across all components). Value-preserving.
    pub fn reduced(&self) -> MotiveRatio {
        if self.num.is_zero() {
            return MotiveRatio::zero();
        }
        // clear negative exponents so the dense coefficient vectors below
        // start at s^0; the final renormalization undoes the shift
        let shift = self.num.min_e2().unwrap_or(0).min(self.den.min_e2().unwrap_or(0)).min(0);
        let num = self.num.shift(-shift);
        let den = self.den.shift(-shift);
        let (a, b, c) = num.tag_components();
        let mut g = dense_coeffs(&den);
        for component in [&a, &b, &c] {
            if !component.is_zero() {
                g = poly_gcd(g, dense_coeffs(component));
            }
        }
        if g.len() <= 1 {
            // constant gcd: integer content is already minimal
            return self.clone();
        }
        let g_class = class_from_dense(&g);
        let num = num.div_exact(&g_class).expect("gcd divides every component");
        let den = den.div_exact(&g_class).expect("gcd divides the denominator");
        MotiveRatio::new(num, den).expect("reduced denominator is untagged and nonzero")
    }

    /// Exact point-count shadow as a rational number; the denominator must
    /// not vanish at `q`. Negative powers of `L` are allowed (they clear
    /// against the shadow of `L^k`).
    pub fn eval_rational(&self, q: &BigInt, mu3_count: i64) -> Result<BigRational> {
        let shift = self.num.min_e2().unwrap_or(0).min(self.den.min_e2().unwrap_or(0)).min(0);
        // clear negative exponents by multiplying both sides with L^(-shift)
        let mut num = self.num.shift(-shift);
        let mut den = self.den.shift(-shift);
        // exponents may still be odd; demand evenness via eval's own check,
        // doubling when needed: if any odd exponent remains, multiply both
        // by L^(1/2) once (making all exponents whole requires the parity
        // of num and den exponents to agree; otherwise eval will refuse).
        let odd = |m: &MotiveClass| m.iter().any(|(e2, _, _)| e2 % 2 != 0);
        if odd(&num) || odd(&den) {
            num = num.shift(1);
            den = den.shift(1);
        }
        let n = num.eval(q, mu3_count)?;
        let d = den.eval(q, mu3_count)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    }
}

/// Dense coefficient vector of an untagged class, ascending in powers of
/// `s = L^(1/2)` from `s^0`; the class must have no negative exponents.
fn dense_coeffs(m: &MotiveClass) -> Vec<BigInt> {
    let top = m.max_e2().expect("nonzero class");
    let mut v = vec![BigInt::zero(); top as usize + 1];
    for (e2, _, c) in m.iter() {
        v[e2 as usize] = c.clone();
    }
    v
}

fn class_from_dense(v: &[BigInt]) -> MotiveClass {
    let mut out = MotiveClass::zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = out + MotiveClass::monomial(i as i64, EquivTag::Unit, c.clone());
        }
    }
    out
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Primitive part: coefficients divided by their gcd, leading coefficient
/// made positive; the zero polynomial maps to the empty vector.
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g > BigInt::one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().expect("nonempty").is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder of `a` by nonzero `b`: repeatedly scales by the leading
/// coefficient of `b` and subtracts a shifted multiple of `b`, so the degree
/// strictly drops without leaving the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let top = r.last().expect("nonempty").clone();
        for c in r.iter_mut() {
            *c = &*c * lead;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] -= &top * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive polynomial gcd in `Z[s]` by the primitive Euclidean algorithm.
fn poly_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

impl PartialEq for MotiveRatio {
    fn eq(&self, other: &Self) -> bool {
        MotiveRatio::eq(self, other)
    }
}

impl fmt::Display for MotiveRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `sigma_2(a) = (a^2 + psi_2(a)) / 2`, the second symmetric power.
///
/// The halving is asserted exact on the numerator over the common
/// denominator; failure ([`Error::NonIntegralSigma`]) would signal a
/// lambda-ring inconsistency. Examples:
///
/// ```text
///     sigma_2(Mt) = (Mt^2 + 2L - Mt^2)/2 = L
///     sigma_2(L*Mt/(L-1)) = (L^2*Mt^2 + L^3*(L-1)) / ((L-1)(L^2-1))
/// ```
pub fn sigma2(a: &MotiveRatio) -> Result<MotiveRatio> {
    let square = a.mul(a)?;
    let psi2 = a.adams(2)?;
    let sum = square.add(&psi2)?;
    sum.div_exact_int(&BigInt::from(2)).map_err(|e| match e {
        Error::NonExactDivision => Error::NonIntegralSigma,
        other => other,
    })
}

/// The sign/half-power normalization used to line up raw Delta-series
/// coefficients with the refined-invariant convention:
///
/// ```text
///     x  ->  -x / (L^(1/2) - L^(-1/2)).
/// ```
pub fn conjecture_normalization(x: &MotiveRatio) -> Result<MotiveRatio> {
    let den = MotiveClass::l_pow_half(1) - MotiveClass::l_pow_half(-1);
    x.neg().div(&MotiveRatio::from_class(den))
}

/// Render a human-readable name for a ratio, used in reports.
pub fn display_ratio(r: &MotiveRatio) -> String {
    alloc::format!("{r}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motive::gl_motive;

    fn l() -> MotiveClass {
        MotiveClass::l_pow(1)
    }

    fn lm1() -> MotiveClass {
        l() - MotiveClass::one()
    }

    #[test]
    fn cross_multiplication_equality() {
        // (L^2-1)/(L-1) == (L+1)/1
        let a = MotiveRatio::new(MotiveClass::l_pow(2) - MotiveClass::one(), lm1()).unwrap();
        let b = MotiveRatio::from_class(l() + MotiveClass::one());
        assert!(a.eq(&b));
        let c = MotiveRatio::from_class(l());
        assert!(!a.eq(&c));
    }

    #[test]
    fn sigma2_of_mtilde_is_lefschetz() {
        let mt = MotiveRatio::from_class(MotiveClass::mtilde());
        assert!(sigma2(&mt).unwrap().eq(&MotiveRatio::from_class(l())));
    }

    #[test]
    fn sigma2_quantum_t1_coefficient() {
        // sigma_2((2L-1)/(L-1)) = (3L^3 - L^2 - 2L + 1)/((L-1)^2 (L+1))
        let a = MotiveRatio::new(MotiveClass::from_l_poly(&[(1, 2), (0, -1)]), lm1()).unwrap();
        let den = lm1()
            .pow(2)
            .unwrap()
            .mul(&(l() + MotiveClass::one()))
            .unwrap();
        let expect =
            MotiveRatio::new(MotiveClass::from_l_poly(&[(3, 3), (2, -1), (1, -2), (0, 1)]), den)
                .unwrap();
        assert!(sigma2(&a).unwrap().eq(&expect));
    }

    #[test]
    fn sigma2_weyl_t1_coefficient() {
        // sigma_2(L*Mt/(L-1)) = (L^2 Mt^2 + L^3 (L-1)) / ((L-1)(L^2-1))
        let a = MotiveRatio::new(MotiveClass::mtilde().shift(2), lm1()).unwrap();
        let num = MotiveClass::mtilde2().shift(4)
            + MotiveClass::from_l_poly(&[(4, 1), (3, -1)]);
        let den = lm1().mul(&(MotiveClass::l_pow(2) - MotiveClass::one())).unwrap();
        let expect = MotiveRatio::new(num, den).unwrap();
        assert!(sigma2(&a).unwrap().eq(&expect));
    }

    #[test]
    fn sigma2_rejects_half_integral_input() {
        // sigma_2(L/2) = 3L^2/8 is not integral
        let half_l = MotiveRatio::new(l(), MotiveClass::int(2)).unwrap();
        assert_eq!(sigma2(&half_l), Err(Error::NonIntegralSigma));
    }

    #[test]
    fn eval_rational_with_negative_powers() {
        // L^5 / [GL_2] at q=2: [GL_2] = (q^2-1)(q^2-q) = 6, so 32/6 = 16/3
        let r = MotiveRatio::new(MotiveClass::l_pow(5), gl_motive(2)).unwrap();
        let v = r.eval_rational(&BigInt::from(2), 1).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(16), BigInt::from(3)));
    }

    #[test]
    fn normalization_flips_sign_and_divides_half_powers() {
        // -L / (L^(1/2) - L^(-1/2)) with x = -L: check by cross-multiplying
        let x = MotiveRatio::from_class(-l());
        let y = conjecture_normalization(&x).unwrap();
        // y * (L^(1/2) - L^(-1/2)) should equal L
        let den = MotiveClass::l_pow_half(1) - MotiveClass::l_pow_half(-1);
        let back = y.mul_class(&den).unwrap();
        assert!(back.eq(&MotiveRatio::from_class(l())));
    }

    #[test]
    fn equivariant_denominator_rejected() {
        assert_eq!(
            MotiveRatio::new(MotiveClass::one(), MotiveClass::mtilde()),
            Err(Error::NonUnitDenominator)
        );
    }

    #[test]
    fn reduction_cancels_the_common_polynomial_factor() {
        // the unreduced t^2 coefficient of the doubled-product expansion
        let r = MotiveRatio::new(
            MotiveClass::from_l_poly(&[(6, 1), (5, 1), (4, -7), (3, 5), (2, 3), (1, -4), (0, 1)]),
            MotiveClass::from_l_poly(&[(5, 1), (4, -3), (3, 2), (2, 2), (1, -3), (0, 1)]),
        )
        .unwrap()
        .reduced();
        assert_eq!(r.num(), &MotiveClass::from_l_poly(&[(4, 1), (3, 3), (2, -2), (1, -2), (0, 1)]));
        assert_eq!(r.den(), &MotiveClass::from_l_poly(&[(3, 1), (2, -1), (1, -1), (0, 1)]));
    }

    #[test]
    fn reduction_handles_tagged_numerators() {
        // Mt (L^2 - 1) / (L - 1) reduces to Mt (L + 1)
        let num = MotiveClass::mtilde()
            .mul(&MotiveClass::from_l_poly(&[(2, 1), (0, -1)]))
            .unwrap();
        let r = MotiveRatio::new(num, lm1()).unwrap().reduced();
        assert!(r.den().is_one());
        let want = MotiveClass::mtilde().mul(&MotiveClass::from_l_poly(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(r.num(), &want);
    }

    #[test]
    fn reduction_works_on_half_powers() {
        // (L^(3/2) - L^(1/2)) / (L - 1) = L^(1/2)
        let num = MotiveClass::l_pow_half(3) - MotiveClass::l_pow_half(1);
        let r = MotiveRatio::new(num, lm1()).unwrap().reduced();
        assert!(r.den().is_one());
        assert_eq!(r.num(), &MotiveClass::l_pow_half(1));
    }

    #[test]
    fn reduction_leaves_coprime_ratios_alone() {
        let r = MotiveRatio::new(MotiveClass::from_l_poly(&[(1, 2), (0, -1)]), lm1()).unwrap();
        let s = r.reduced();
        assert_eq!(s.num(), r.num());
        assert_eq!(s.den(), r.den());
        assert!(MotiveRatio::zero().reduced().is_zero());
    }
}

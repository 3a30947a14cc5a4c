//! Exact classes in a shadow of the Grothendieck ring of varieties.
//!
//! A [`MotiveClass`] is a finite Z-linear combination of basis monomials
//!
//! ```text
//!     L^(e/2) * g,     g in { 1, Mt, Mt^2 },
//! ```
//!
//! where `L` is the Lefschetz class (point-count shadow `q`) and
//! `Mt = 1 - [mu_3]` records the naive equivariant content coming from cube
//! roots of unity. Half-integral powers of `L` are allowed; the exponent is
//! stored doubled (`e2 = 2e`), so `L^(1/2)` has `e2 = 1`.
//!
//! The generator table for multiplication is
//!
//! ```text
//!     1 * g      = g
//!     Mt * Mt    = Mt^2
//!     Mt * Mt^2  = (error: kept formal, never reduced)
//!     Mt^2 * Mt^2 = (error)
//! ```
//!
//! `Mt^2` is *not* rewritten into the other generators: the relation that
//! would reduce it is not available in the naive equivariant shadow, and
//! silently inventing one would corrupt every downstream Delta-motive. Code
//! that needs a cube of `Mt` is wrong, and gets
//! [`Error::UnreducedEquivariantPower`].
//!
//! Point-count shadow: `eval` sends `L -> q` and `Mt -> 1 - c3(q)` where
//! `c3(q) = #{x in F_q : x^3 = 1}`, i.e. 3 when `q = 1 (mod 3)` and 1
//! otherwise.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Equivariant generator attached to a basis monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquivTag {
    /// The untagged part of the ring.
    Unit,
    /// `Mt = 1 - [mu_3]`.
    Mtilde,
    /// The formal square `Mt^2`; never reduced further.
    Mtilde2,
}

impl EquivTag {
    /// Multiplication table of the generators; `None` marks the products
    /// that fall outside the formal span.
    fn mul(self, other: EquivTag) -> Option<EquivTag> {
        use EquivTag::*;
        match (self, other) {
            (Unit, t) | (t, Unit) => Some(t),
            (Mtilde, Mtilde) => Some(Mtilde2),
            _ => None,
        }
    }

    /// Serialization name, shared by the JSON schema and `Display`.
    pub fn name(self) -> &'static str {
        match self {
            EquivTag::Unit => "1",
            EquivTag::Mtilde => "Mt",
            EquivTag::Mtilde2 => "Mt2",
        }
    }
}

/// A Z-linear combination of `L^(e2/2) * tag` monomials.
///
/// Invariants: no explicit zero coefficients are stored, and the map is
/// keyed by `(e2, tag)` so iteration order (hence printing and hashing of
/// the rendered form) is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotiveClass {
    terms: BTreeMap<(i64, EquivTag), BigInt>,
}

impl MotiveClass {
    /// The zero class.
    pub fn zero() -> Self {
        MotiveClass { terms: BTreeMap::new() }
    }

    /// The class of a point.
    pub fn one() -> Self {
        MotiveClass::int(1)
    }

    /// Constant class `c`.
    pub fn int(c: i64) -> Self {
        MotiveClass::from_bigint(BigInt::from(c))
    }

    /// Constant class from an arbitrary-precision integer.
    pub fn from_bigint(c: BigInt) -> Self {
        let mut m = MotiveClass::zero();
        m.add_term(0, EquivTag::Unit, c);
        m
    }

    /// `L^e` for a whole exponent `e` (possibly negative).
    pub fn l_pow(e: i64) -> Self {
        MotiveClass::monomial(2 * e, EquivTag::Unit, BigInt::one())
    }

    /// `L^(e2/2)` with the exponent given doubled, so `l_pow_half(1)` is
    /// the square root of the Lefschetz class.
    pub fn l_pow_half(e2: i64) -> Self {
        MotiveClass::monomial(e2, EquivTag::Unit, BigInt::one())
    }

    /// The equivariant generator `Mt = 1 - [mu_3]`.
    pub fn mtilde() -> Self {
        MotiveClass::monomial(0, EquivTag::Mtilde, BigInt::one())
    }

    /// The formal square `Mt^2`.
    pub fn mtilde2() -> Self {
        MotiveClass::monomial(0, EquivTag::Mtilde2, BigInt::one())
    }

    /// The class `[mu_3] = 1 - Mt` of the group scheme of cube roots of 1.
    pub fn mu3() -> Self {
        MotiveClass::one() - MotiveClass::mtilde()
    }

    /// Single monomial `c * L^(e2/2) * tag`.
    pub fn monomial(e2: i64, tag: EquivTag, c: BigInt) -> Self {
        let mut m = MotiveClass::zero();
        m.add_term(e2, tag, c);
        m
    }

    /// Build a pure-`L` polynomial from `(exponent, coefficient)` pairs
    /// with whole exponents: a convenience for catalog constants.
    pub fn from_l_poly(terms: &[(i64, i64)]) -> Self {
        let mut m = MotiveClass::zero();
        for &(e, c) in terms {
            m.add_term(2 * e, EquivTag::Unit, BigInt::from(c));
        }
        m
    }

    fn add_term(&mut self, e2: i64, tag: EquivTag, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((e2, tag)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(e2, tag));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .coeff(0, EquivTag::Unit)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Coefficient of `L^(e2/2) * tag`, if present.
    pub fn coeff(&self, e2: i64, tag: EquivTag) -> Option<&BigInt> {
        self.terms.get(&(e2, tag))
    }

    /// Iterate terms in canonical `(e2, tag)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, EquivTag, &BigInt)> {
        self.terms.iter().map(|(&(e2, tag), c)| (e2, tag, c))
    }

    /// True if any term carries `Mt` or `Mt^2`.
    pub fn has_equivariant_part(&self) -> bool {
        self.terms.keys().any(|&(_, t)| t != EquivTag::Unit)
    }

    /// Split into the coefficients of `1`, `Mt`, `Mt^2` (each a pure-`L`
    /// class). Writing `self = a + b*Mt + c*Mt^2`, returns `(a, b, c)`.
    pub fn tag_components(&self) -> (MotiveClass, MotiveClass, MotiveClass) {
        let mut a = MotiveClass::zero();
        let mut b = MotiveClass::zero();
        let mut c = MotiveClass::zero();
        for (e2, tag, coef) in self.iter() {
            let dst = match tag {
                EquivTag::Unit => &mut a,
                EquivTag::Mtilde => &mut b,
                EquivTag::Mtilde2 => &mut c,
            };
            dst.add_term(e2, EquivTag::Unit, coef.clone());
        }
        (a, b, c)
    }

    /// Rewrite in the `[mu_3]` basis: `self = A + B*[mu_3] + C*[mu_3]^2`
    /// with `[mu_3] = 1 - Mt`. Returns `(A, B, C)` as pure-`L` classes.
    ///
    /// Substituting `Mt = 1 - [mu_3]` in `a + b*Mt + c*Mt^2` gives
    /// `A = a + b + c`, `B = -b - 2c`, `C = c`.
    pub fn mu3_components(&self) -> (MotiveClass, MotiveClass, MotiveClass) {
        let (a, b, c) = self.tag_components();
        let big_a = a + b.clone() + c.clone();
        let big_b = -(b + c.clone() + c.clone());
        (big_a, big_b, c)
    }

    /// Checked product. Fails with [`Error::UnreducedEquivariantPower`]
    /// whenever a generator product leaves the span of `{1, Mt, Mt^2}`.
    pub fn mul(&self, other: &MotiveClass) -> Result<MotiveClass> {
        let mut out = MotiveClass::zero();
        for (e1, t1, c1) in self.iter() {
            for (e2, t2, c2) in other.iter() {
                let tag = t1.mul(t2).ok_or(Error::UnreducedEquivariantPower)?;
                out.add_term(e1 + e2, tag, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Checked integer power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Result<MotiveClass> {
        let mut out = MotiveClass::one();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiply by `L^(e2/2)`: always safe, shifts every exponent.
    pub fn shift(&self, e2: i64) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (e, t, c) in self.iter() {
            out.add_term(e + e2, t, c.clone());
        }
        out
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (e, t, coef) in self.iter() {
            out.add_term(e, t, coef * c);
        }
        out
    }

    /// Adams operation `psi_k`. On the untagged part this is the ring map
    /// `L^(e/2) -> L^(k*e/2)`. On the equivariant generators only
    ///
    /// ```text
    ///     psi_1 = id,      psi_2(Mt) = 2L - Mt^2
    /// ```
    ///
    /// are available; `psi_k(Mt)` for `k >= 3` (and `psi_2(Mt^2)`, whose
    /// value `(2L - Mt^2)^2` already needs `Mt^4`) are refused with
    /// [`Error::UnsupportedAdams`].
    pub fn adams(&self, k: u32) -> Result<MotiveClass> {
        if k == 0 {
            return Err(Error::UnsupportedAdams { k });
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let mut out = MotiveClass::zero();
        for (e2, tag, c) in self.iter() {
            let shifted_e2 = e2 * k as i64;
            match tag {
                EquivTag::Unit => out.add_term(shifted_e2, EquivTag::Unit, c.clone()),
                EquivTag::Mtilde if k == 2 => {
                    // c * L^(e) * Mt  ->  c * L^(2e) * (2L - Mt^2)
                    out.add_term(shifted_e2 + 2, EquivTag::Unit, c * BigInt::from(2));
                    out.add_term(shifted_e2, EquivTag::Mtilde2, -c.clone());
                }
                _ => return Err(Error::UnsupportedAdams { k }),
            }
        }
        Ok(out)
    }

    /// Point-count shadow. Substitutes `L -> q` and `Mt -> 1 - mu3_count`.
    /// Requires every exponent to be a non-negative whole power of `L`.
    pub fn eval(&self, q: &BigInt, mu3_count: i64) -> Result<BigInt> {
        let mt = BigInt::from(1 - mu3_count);
        let mt2 = &mt * &mt;
        let mut total = BigInt::zero();
        for (e2, tag, c) in self.iter() {
            if e2 < 0 || e2 % 2 != 0 {
                return Err(Error::FractionalExponent { e2 });
            }
            let mut term = c * q.pow((e2 / 2) as u32);
            term *= match tag {
                EquivTag::Unit => BigInt::one(),
                EquivTag::Mtilde => mt.clone(),
                EquivTag::Mtilde2 => mt2.clone(),
            };
            total += term;
        }
        Ok(total)
    }

    /// Greatest common divisor of all coefficients (zero for the zero
    /// class); always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, _, c) in self.iter() {
            g = g.gcd(c);
        }
        g
    }

    /// Divide every coefficient by `k`, failing unless all are divisible.
    pub fn div_exact_int(&self, k: &BigInt) -> Result<MotiveClass> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = MotiveClass::zero();
        for (e2, t, c) in self.iter() {
            let (quo, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return Err(Error::NonExactDivision);
            }
            out.add_term(e2, t, quo);
        }
        Ok(out)
    }

    /// Exact division by an untagged class, performed tag-component by
    /// tag-component via Laurent long division over Z. Fails with
    /// [`Error::NonExactDivision`] if a remainder is left, and with
    /// [`Error::NonUnitDenominator`] if the divisor carries `Mt` tags.
    pub fn div_exact(&self, divisor: &MotiveClass) -> Result<MotiveClass> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.has_equivariant_part() {
            return Err(Error::NonUnitDenominator);
        }
        let (a, b, c) = self.tag_components();
        let qa = laurent_div_exact(&a, divisor)?;
        let qb = laurent_div_exact(&b, divisor)?;
        let qc = laurent_div_exact(&c, divisor)?;
        let mut out = MotiveClass::zero();
        for (e2, _, coef) in qa.iter() {
            out.add_term(e2, EquivTag::Unit, coef.clone());
        }
        for (e2, _, coef) in qb.iter() {
            out.add_term(e2, EquivTag::Mtilde, coef.clone());
        }
        for (e2, _, coef) in qc.iter() {
            out.add_term(e2, EquivTag::Mtilde2, coef.clone());
        }
        Ok(out)
    }

    /// Largest doubled exponent present, per tag ignored.
    pub fn max_e2(&self) -> Option<i64> {
        self.terms.keys().map(|&(e, _)| e).max()
    }

    /// Smallest doubled exponent present.
    pub fn min_e2(&self) -> Option<i64> {
        self.terms.keys().map(|&(e, _)| e).min()
    }

    /// Number of stored monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Long division of pure-`L` Laurent polynomials over Z, requiring
/// exactness. Works on any exponent lattice (doubled exponents), dividing
/// from the top monomial down.
fn laurent_div_exact(num: &MotiveClass, den: &MotiveClass) -> Result<MotiveClass> {
    debug_assert!(!den.has_equivariant_part() && !num.has_equivariant_part());
    let (dtop, dcoef) = match den.max_e2() {
        Some(e) => (e, den.coeff(e, EquivTag::Unit).unwrap().clone()),
        None => return Err(Error::DivisionByZero),
    };
    let nmin = match num.min_e2() {
        Some(e) => e,
        None => return Ok(MotiveClass::zero()),
    };
    // an exact quotient cannot reach below this exponent; hitting it means
    // the division has a remainder (and would otherwise recurse forever)
    let qmin = nmin - den.min_e2().expect("nonzero denominator");
    let mut rem = num.clone();
    let mut quo = MotiveClass::zero();
    while let Some(rtop) = rem.max_e2() {
        if rtop - dtop < qmin {
            return Err(Error::NonExactDivision);
        }
        let rcoef = rem.coeff(rtop, EquivTag::Unit).unwrap().clone();
        let (q, r) = rcoef.div_rem(&dcoef);
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        let mono = MotiveClass::monomial(rtop - dtop, EquivTag::Unit, q);
        quo = quo + mono.clone();
        rem = rem - mono.mul(den).expect("untagged product cannot fail");
    }
    Ok(quo)
}

impl core::ops::Add for MotiveClass {
    type Output = MotiveClass;
    fn add(self, rhs: MotiveClass) -> MotiveClass {
        let mut out = self;
        for (e2, t, c) in rhs.iter() {
            out.add_term(e2, t, c.clone());
        }
        out
    }
}

impl core::ops::Sub for MotiveClass {
    type Output = MotiveClass;
    fn sub(self, rhs: MotiveClass) -> MotiveClass {
        let mut out = self;
        for (e2, t, c) in rhs.iter() {
            out.add_term(e2, t, -c.clone());
        }
        out
    }
}

impl core::ops::Neg for MotiveClass {
    type Output = MotiveClass;
    fn neg(self) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for (e2, t, c) in self.iter() {
            out.add_term(e2, t, -c.clone());
        }
        out
    }
}

/// The class of the general linear group,
///
/// ```text
///     [GL_n] = prod_{k=0}^{n-1} (L^n - L^k),
/// ```
///
/// e.g. `[GL_1] = L - 1` and `[GL_2] = (L^2 - 1)(L^2 - L)`.
pub fn gl_motive(n: u32) -> MotiveClass {
    let mut out = MotiveClass::one();
    for k in 0..n {
        let factor = MotiveClass::l_pow(n as i64) - MotiveClass::l_pow(k as i64);
        out = out.mul(&factor).expect("untagged product cannot fail");
    }
    out
}

/// `#{x in F_q : x^3 = 1}` for prime `q`: 3 iff `q = 1 (mod 3)`, else 1
/// (including `q = 3`, where `x^3 - 1 = (x - 1)^3`).
pub fn mu3_count(q: u64) -> i64 {
    if q % 3 == 1 {
        3
    } else {
        1
    }
}

impl fmt::Display for MotiveClass {
    /// Renders in descending powers with the untagged part first, e.g.
    /// `L^9 + L^8 - 4*L^5 + Mt*L^6 - Mt^2*L^2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut rendered: Vec<String> = Vec::new();
        let tag_order = [EquivTag::Unit, EquivTag::Mtilde, EquivTag::Mtilde2];
        for tag in tag_order {
            let mut terms: Vec<(i64, &BigInt)> = self
                .iter()
                .filter(|&(_, t, _)| t == tag)
                .map(|(e2, _, c)| (e2, c))
                .collect();
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            for (e2, c) in terms {
                rendered.push(render_term(e2, tag, c));
            }
        }
        let mut out = String::new();
        for (i, term) in rendered.iter().enumerate() {
            if i == 0 {
                out.push_str(term);
            } else if let Some(stripped) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(term);
            }
        }
        write!(f, "{out}")
    }
}

fn render_term(e2: i64, tag: EquivTag, c: &BigInt) -> String {
    let mut parts: Vec<String> = Vec::new();
    let abs = c.abs();
    let tag_str = match tag {
        EquivTag::Unit => None,
        EquivTag::Mtilde => Some("Mt".to_string()),
        EquivTag::Mtilde2 => Some("Mt^2".to_string()),
    };
    let pow_str = match e2 {
        0 => None,
        2 => Some("L".to_string()),
        e if e % 2 == 0 => Some(alloc::format!("L^{}", e / 2)),
        e => Some(alloc::format!("L^({e}/2)")),
    };
    if !abs.is_one() || (tag_str.is_none() && pow_str.is_none()) {
        parts.push(abs.to_string());
    }
    if let Some(t) = tag_str {
        parts.push(t);
    }
    if let Some(p) = pow_str {
        parts.push(p);
    }
    let body = parts.join("*");
    if c.is_negative() {
        alloc::format!("-{body}")
    } else {
        body
    }
}

//! Plethystic exponential and logarithm on truncated series.
//!
//! For a series `f = sum_{n>=1} f_n t^n` with zero constant term,
//!
//! ```text
//!     Exp(f) = exp( sum_{k>=1} psi_k(f)(t -> t^k) / k ),
//! ```
//!
//! where `psi_k` acts on coefficients through the Adams operations. The
//! inverse uses Moebius inversion:
//!
//! ```text
//!     Log(g) = sum_{k>=1} mu(k)/k * psi_k(log g)(t -> t^k).
//! ```
//!
//! All intermediate divisions by `k` and `j!` are carried exactly (the
//! integers ride along in ratio denominators); after assembly every
//! coefficient must be integral over its polynomial denominator, i.e. the
//! denominator must have unit integer content. A residue there means the
//! inputs were not lambda-ring integral (for instance `Exp((L/2) t)`), and
//! is reported as [`Error::NonIntegralExp`].
//!
//! Equivariant inputs: `psi_2(Mt) = 2L - Mt^2` exists but `psi_3(Mt)` does
//! not, so any series whose coefficients carry `Mt`/`Mt^2` is hard-capped
//! at truncation order 2 rather than silently extrapolating.
//!
//! [`exp_product_form`] is an independent cross-check: it expands each
//! coefficient as an integral Laurent series in descending powers of `L`
//! (truncated below `lmin`) and multiplies the corresponding factors
//! `(1 - L^j t^n)^(-c)`. Agreement with [`pleth_exp`] after identical
//! truncation exercises both routes end to end.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::motive::{EquivTag, MotiveClass};
use crate::ratio::MotiveRatio;
use crate::series::Series;

/// Largest truncation order allowed when coefficients carry `Mt`/`Mt^2`.
pub const EQUIVARIANT_ORDER_CAP: usize = 2;

fn equivariant_cap_check(f: &Series) -> Result<()> {
    if f.order() > EQUIVARIANT_ORDER_CAP
        && f.coeffs().iter().any(|c| c.num().has_equivariant_part())
    {
        // the first Adams operation that would be needed and is missing
        return Err(Error::UnsupportedAdams { k: 3 });
    }
    Ok(())
}

/// After exact assembly, insist every coefficient is integral over its
/// polynomial denominator: the automatic content reduction has already
/// cancelled shared integer factors, so any integer content left in the
/// denominator is a genuine obstruction.
fn integrality_check(s: Series) -> Result<Series> {
    for c in s.coeffs() {
        if !c.is_zero() && !c.den().content().is_one() {
            return Err(Error::NonIntegralExp);
        }
    }
    Ok(s)
}

/// Plethystic exponential of a twist-zero series with zero constant term.
pub fn pleth_exp(f: &Series) -> Result<Series> {
    if f.twist() != 0 {
        return Err(Error::TwistMismatch { left: f.twist(), right: 0 });
    }
    if !f.coeff(0).is_zero() {
        return Err(Error::BadConstantTerm);
    }
    equivariant_cap_check(f)?;
    let n = f.order();

    // g = sum_{k>=1} psi_k(f)(t -> t^k)/k, carried with exact integer tails
    let mut g = Series::zero(0, n);
    for k in 1..=n {
        // psi_k of each needed coefficient; f_j contributes at t^(k*j)
        for j in 1..=n / k {
            let fj = f.coeff(j);
            if fj.is_zero() {
                continue;
            }
            let term = fj.adams(k as u32)?.div_int(k as i64)?;
            g.set_coeff(k * j, g.coeff(k * j).add(&term)?);
        }
    }

    // exp(g) = sum_j g^j / j!
    let mut acc = Series::one(0, n);
    let mut gpow_over_fact = Series::one(0, n);
    for j in 1..=n {
        gpow_over_fact = gpow_over_fact.mul(&g)?;
        gpow_over_fact = Series::from_coeffs(
            0,
            gpow_over_fact
                .coeffs()
                .iter()
                .map(|c| c.div_int(j as i64))
                .collect::<Result<Vec<_>>>()?,
        );
        acc = acc.add(&gpow_over_fact)?;
    }
    integrality_check(acc)
}

/// Moebius function on small arguments.
fn moebius(mut k: u64) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if k > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Plethystic logarithm of a twist-zero series with constant term 1;
/// inverse of [`pleth_exp`] through the shared truncation order.
pub fn pleth_log(g: &Series) -> Result<Series> {
    if g.twist() != 0 {
        return Err(Error::TwistMismatch { left: g.twist(), right: 0 });
    }
    if !g.coeff(0).eq(&MotiveRatio::one()) {
        return Err(Error::BadConstantTerm);
    }
    equivariant_cap_check(g)?;
    let n = g.order();

    // log g = sum_{j>=1} (-1)^(j+1) (g-1)^j / j
    let mut h = g.clone();
    h.set_coeff(0, MotiveRatio::zero());
    let mut log = Series::zero(0, n);
    let mut hpow = Series::one(0, n);
    for j in 1..=n {
        hpow = hpow.mul(&h)?;
        let signed = if j % 2 == 1 { 1i64 } else { -1i64 };
        let term = Series::from_coeffs(
            0,
            hpow.coeffs()
                .iter()
                .map(|c| c.scale(&BigInt::from(signed)).div_int(j as i64))
                .collect::<Result<Vec<_>>>()?,
        );
        log = log.add(&term)?;
    }

    // Moebius inversion: out_n = sum_{k | n} mu(k)/k * psi_k(log_{n/k})
    let mut out = Series::zero(0, n);
    for k in 1..=n {
        let mu = moebius(k as u64);
        if mu == 0 {
            continue;
        }
        for j in 1..=n / k {
            let c = log.coeff(j);
            if c.is_zero() {
                continue;
            }
            let term = c.adams(k as u32)?.scale(&BigInt::from(mu)).div_int(k as i64)?;
            out.set_coeff(k * j, out.coeff(k * j).add(&term)?);
        }
    }
    integrality_check(out)
}

/// Expand a tag-free ratio as an integral Laurent polynomial in descending
/// powers of `L`, truncated below `L^lmin`. Geometric denominators like
/// `1/(L-1) = L^-1 + L^-2 + ...` become finite after the truncation; a
/// denominator whose leading coefficient does not divide exactly (e.g.
/// `1/(2L-1)`) is refused.
pub fn laurent_expand(r: &MotiveRatio, lmin: i64) -> Result<MotiveClass> {
    if r.num().has_equivariant_part() {
        return Err(Error::UnsupportedCoefficient(
            "equivariant tags have no L-adic expansion".to_string(),
        ));
    }
    let den = r.den();
    let dtop = den.max_e2().ok_or(Error::DivisionByZero)?;
    let dlead = den.coeff(dtop, EquivTag::Unit).unwrap().clone();
    let mut rem = r.num().clone();
    let mut out = MotiveClass::zero();
    while let Some(rtop) = rem.max_e2() {
        let e2 = rtop - dtop;
        if e2 < 2 * lmin {
            break;
        }
        let rlead = rem.coeff(rtop, EquivTag::Unit).unwrap().clone();
        let (q, rr) = rlead.div_rem(&dlead);
        if !rr.is_zero() {
            return Err(Error::UnsupportedCoefficient(alloc::format!(
                "leading denominator coefficient {dlead} does not divide {rlead}"
            )));
        }
        let mono = MotiveClass::monomial(e2, EquivTag::Unit, q);
        out = out + mono.clone();
        rem = rem - mono.mul(den).expect("untagged");
    }
    Ok(truncate_below(&out, lmin))
}

/// Drop all monomials with `L`-exponent below `lmin`.
pub fn truncate_below(m: &MotiveClass, lmin: i64) -> MotiveClass {
    let mut out = MotiveClass::zero();
    for (e2, tag, c) in m.iter() {
        if e2 >= 2 * lmin {
            out = out + MotiveClass::monomial(e2, tag, c.clone());
        }
    }
    out
}

/// Binomial coefficient `C(n, k)` over big integers.
fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Independent product-form plethystic exponential:
///
/// ```text
///     Exp(sum_n a_n t^n) = prod_n prod_e (1 - L^e t^n)^(-c_{n,e})
/// ```
///
/// with `a_n = sum_e c_{n,e} L^e` the truncated `L`-adic expansion of each
/// coefficient (exponents below `lmin` discarded throughout). Coefficients
/// of the result are Laurent polynomials with the same truncation, exactly
/// comparable to [`pleth_exp`] output passed through [`laurent_expand`].
pub fn exp_product_form(f: &Series, lmin: i64) -> Result<Series> {
    if f.twist() != 0 {
        return Err(Error::TwistMismatch { left: f.twist(), right: 0 });
    }
    if !f.coeff(0).is_zero() {
        return Err(Error::BadConstantTerm);
    }
    let n = f.order();
    // Working precision: terms as deep as lmin - n*emax can still climb
    // back above lmin after multiplication by positive powers from other
    // factors (emax bounds the top L-degree any one factor contributes per
    // t-degree), so truncate at the guarded depth and cut to lmin at the
    // end.
    let mut emax: i64 = 0;
    for deg in 1..=n {
        let a = f.coeff(deg);
        if a.is_zero() {
            continue;
        }
        let diff = a.num().max_e2().unwrap_or(0) - a.den().max_e2().unwrap_or(0);
        // ceil(diff / 2): e2 bookkeeping is doubled
        emax = emax.max((diff + 1).div_euclid(2));
    }
    let work_lmin = lmin - n as i64 * emax;
    // accumulator coefficients as truncated Laurent polynomials
    let mut acc: Vec<MotiveClass> = alloc::vec![MotiveClass::zero(); n + 1];
    acc[0] = MotiveClass::one();

    for deg in 1..=n {
        let a = f.coeff(deg);
        if a.is_zero() {
            continue;
        }
        let expansion = laurent_expand(a, work_lmin)?;
        for (e2, _, c) in expansion.iter() {
            // factor (1 - L^(e2/2) t^deg)^(-c), expanded through t^n
            let reps = n / deg;
            let mut factor: Vec<MotiveClass> = alloc::vec![MotiveClass::zero(); reps + 1];
            if c.is_positive() {
                let cc: u64 = c.to_string().parse().map_err(|_| {
                    Error::UnsupportedCoefficient("expansion coefficient too large".to_string())
                })?;
                for (i, slot) in factor.iter_mut().enumerate() {
                    let b = binomial(cc + i as u64 - u64::from(i > 0), i as u64);
                    // C(c+i-1, i); for i=0 this is 1
                    *slot = MotiveClass::monomial(e2 * i as i64, EquivTag::Unit, b);
                }
            } else {
                let cc: u64 = (-c).to_string().parse().map_err(|_| {
                    Error::UnsupportedCoefficient("expansion coefficient too large".to_string())
                })?;
                for (i, slot) in factor.iter_mut().enumerate() {
                    if (i as u64) > cc {
                        break;
                    }
                    let mut b = binomial(cc, i as u64);
                    if i % 2 == 1 {
                        b = -b;
                    }
                    *slot = MotiveClass::monomial(e2 * i as i64, EquivTag::Unit, b);
                }
            }
            // multiply acc by the factor (t-degrees deg * i), truncating in L
            let mut next: Vec<MotiveClass> = alloc::vec![MotiveClass::zero(); n + 1];
            for (k, a_k) in acc.iter().enumerate() {
                if a_k.is_zero() {
                    continue;
                }
                for (i, f_i) in factor.iter().enumerate() {
                    let t_deg = k + i * deg;
                    if t_deg > n || f_i.is_zero() {
                        continue;
                    }
                    let prod = a_k.mul(f_i).expect("untagged");
                    next[t_deg] = truncate_below(&(next[t_deg].clone() + prod), work_lmin);
                }
            }
            acc = next;
        }
    }
    Ok(Series::from_coeffs(
        0,
        acc.into_iter()
            .map(|c| MotiveRatio::from_class(truncate_below(&c, lmin)))
            .collect(),
    ))
}

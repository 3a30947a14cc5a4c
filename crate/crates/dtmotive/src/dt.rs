//! The inductive pipeline tying fiber classes, Brauer-Severi-type classes
//! and their generating series together.
//!
//! For rank n and level lambda the space of pairs (point of the rank-n
//! trace fiber, vector) stratifies by the rank k of the subrepresentation
//! the vector generates:
//!
//! ```text
//! X_k = [GL_n] L^{(m-1)k(n-k)} ( sum_mu [BS_k(mu)][M_{n-k}(lambda-mu)] ) / [GL_{n-k}]
//! ```
//!
//! with boundary strata X_0 = M_n(lambda) (the vector is zero) and
//! X_n = [GL_n] BS_n(lambda) (the vector generates everything). Summing
//! over k and dividing by L^n - 1 recovers M_n(lambda) from lower ranks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::motive::{gl_motive, MotiveClass};
use crate::potential::CubicParams;
use crate::ratio::MotiveRatio;
use crate::series::Series;
use crate::strata::prop_s3_exponents;

/// Which family a table entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    /// trace fiber class M_n(lambda)
    Fiber,
    /// Brauer-Severi-type class BS_n(lambda)
    Bs,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Fiber => "fiber",
            TableKind::Bs => "bs",
        }
    }
}

/// Known classes per (rank, level, kind) for one potential.
#[derive(Debug, Clone)]
pub struct MotiveTable {
    /// number of letters of the potential (enters the twist exponents)
    m: u32,
    entries: BTreeMap<(u32, u8, TableKind), MotiveClass>,
}

impl MotiveTable {
    pub fn new(m: u32) -> Self {
        MotiveTable { m, entries: BTreeMap::new() }
    }

    pub fn letters(&self) -> u32 {
        self.m
    }

    pub fn insert(&mut self, n: u32, lambda: u8, kind: TableKind, class: MotiveClass) {
        self.entries.insert((n, lambda, kind), class);
    }

    pub fn get(&self, n: u32, lambda: u8, kind: TableKind) -> Result<&MotiveClass> {
        self.entries.get(&(n, lambda, kind)).ok_or(Error::MissingEntry {
            n,
            lambda,
            kind: kind.name().into(),
        })
    }

    pub fn fiber(&self, n: u32, lambda: u8) -> Result<&MotiveClass> {
        self.get(n, lambda, TableKind::Fiber)
    }

    pub fn bs(&self, n: u32, lambda: u8) -> Result<&MotiveClass> {
        self.get(n, lambda, TableKind::Bs)
    }

    /// Difference class (level 0 minus level 1) of the given kind.
    pub fn delta(&self, n: u32, kind: TableKind) -> Result<MotiveClass> {
        Ok(self.get(n, 0, kind)?.clone() - self.get(n, 1, kind)?.clone())
    }

    pub fn kinds(&self) -> impl Iterator<Item = (&(u32, u8, TableKind), &MotiveClass)> {
        self.entries.iter()
    }
}

fn sum_over_levels(
    table: &MotiveTable,
    k: u32,
    n: u32,
    lambda: u8,
) -> Result<MotiveClass> {
    let bs1 = table.bs(k, 1)?;
    let bs0 = table.bs(k, 0)?;
    let m1 = table.fiber(n - k, 1)?;
    let m0 = table.fiber(n - k, 0)?;
    let l = MotiveClass::l_pow(1);
    if lambda == 0 {
        // mu = 0 pairs the two zero levels; nonzero mu pair unit levels
        let units = (l - MotiveClass::int(1)).mul(&bs1.mul(m1)?)?;
        Ok(units + bs0.mul(m0)?)
    } else {
        // mu = 0 and mu = lambda give the mixed products; the remaining
        // q - 2 values of mu pair two unit levels
        let mixed = bs0.mul(m1)? + bs1.mul(m0)?;
        let units = (l - MotiveClass::int(2)).mul(&bs1.mul(m1)?)?;
        Ok(mixed + units)
    }
}

/// Class of the rank-k stratum of (fiber point, vector) pairs in rank n.
pub fn stratum_motive(
    table: &MotiveTable,
    k: u32,
    n: u32,
    lambda: u8,
) -> Result<MotiveClass> {
    if k > n || n == 0 {
        return Err(Error::Mismatch(format!("stratum index k={k} out of range for n={n}")));
    }
    if k == 0 {
        return Ok(table.fiber(n, lambda)?.clone());
    }
    if k == n {
        return gl_motive(n).mul(table.bs(n, lambda)?);
    }
    let twist = 2 * (table.letters() as i64 - 1) * k as i64 * (n - k) as i64;
    let inner = sum_over_levels(table, k, n, lambda)?;
    let numerator = gl_motive(n).mul(&inner)?.shift(twist);
    numerator.div_exact(&gl_motive(n - k))
}

/// Recover the rank-n fiber class from lower-rank table entries and the
/// rank-n Brauer-Severi-type classes.
pub fn induct_fiber(table: &MotiveTable, n: u32, lambda: u8) -> Result<MotiveClass> {
    if n == 0 {
        return Err(Error::Mismatch("rank must be positive".into()));
    }
    let mut total = MotiveClass::zero();
    for k in 1..n {
        total = total + stratum_motive(table, k, n, lambda)?;
    }
    total = total + stratum_motive(table, n, n, lambda)?;
    let divisor = MotiveClass::from_l_poly(&[(n as i64, 1), (0, -1)]);
    total.div_exact(&divisor)
}

/// Difference form of the induction:
/// `Delta M_n / GL_n = (Delta BS_n + sum_k L^{(m-1)k(n-k)} Delta BS_k *
/// Delta M_{n-k} / GL_{n-k}) / (L^n - 1)`.
pub fn induct_delta(table: &MotiveTable, n: u32) -> Result<MotiveRatio> {
    if n == 0 {
        return Err(Error::Mismatch("rank must be positive".into()));
    }
    let mut acc = MotiveRatio::from_class(table.delta(n, TableKind::Bs)?);
    for k in 1..n {
        let twist = 2 * (table.letters() as i64 - 1) * k as i64 * (n - k) as i64;
        let dbs = table.delta(k, TableKind::Bs)?;
        let dm = table.delta(n - k, TableKind::Fiber)?;
        let term = MotiveRatio::new(dbs.mul(&dm)?.shift(twist), gl_motive(n - k))?;
        acc = acc.add(&term)?;
    }
    let divisor = MotiveRatio::from_class(MotiveClass::from_l_poly(&[(n as i64, 1), (0, -1)]));
    acc.div(&divisor)
}

/// Normalized difference series: coefficient of t^n is
/// `L^{-(m-1)n^2/2} Delta M_n / GL_n`, with constant term 1.
pub fn u_series(table: &MotiveTable, order: usize) -> Result<Series> {
    let mut s = Series::zero(0, order);
    s.set_coeff(0, MotiveRatio::one());
    for n in 1..=order as u32 {
        let dm = table.delta(n, TableKind::Fiber)?;
        let e2 = -((table.letters() as i64 - 1) * (n as i64) * (n as i64));
        let coeff = MotiveRatio::new(dm.shift(e2), gl_motive(n))?;
        s.set_coeff(n as usize, coeff);
    }
    Ok(s)
}

/// The level-sum identity: summing the rank-n fiber over all levels
/// sweeps out the whole space of m rank-n matrix tuples,
/// `M_n(0) + (L - 1) M_n(1) = L^{m n^2}`.
///
/// The identity is checked after the split specialization `Mt -> 0`.
/// With the formal tags kept, the nonzero levels are twisted forms of
/// each other and their sum is not `(L - 1)` times the unit-level class:
/// over fields with q = 1 mod 3 the three cube cosets can carry three
/// distinct counts when an `Mt^2` part is present.
pub fn level_sum_identity(table: &MotiveTable, n: u32) -> Result<()> {
    let m0 = table.fiber(n, 0)?.tag_components().0;
    let m1 = table.fiber(n, 1)?.tag_components().0;
    let lhs = m0 + (MotiveClass::l_pow(1) - MotiveClass::int(1)).mul(&m1)?;
    let rhs = MotiveClass::l_pow((table.letters() * n * n) as i64);
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "level sum at rank {n}: got {lhs}, expected {rhs}"
        )))
    }
}

/// Dimensional reduction in rank two: the difference class is a pure
/// Lefschetz twist of the rank-two pair scheme of the reduced potential,
/// `Delta M_2 = L^{2(m-1)} [pairs]`.
pub fn delta_matches_pair_scheme(table: &MotiveTable, pairs: &MotiveClass) -> Result<()> {
    let dm = table.delta(2, TableKind::Fiber)?;
    let twisted = pairs.shift(4 * (table.letters() as i64 - 1));
    if dm == twisted {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "rank-two difference class {dm} is not L^{} times {pairs}",
            2 * (table.letters() - 1)
        )))
    }
}

/// Build the level generating series of one kind as a twist-2 series with
/// vanishing constant term; fiber coefficients are divided by [GL_n].
fn level_series(table: &MotiveTable, lambda: u8, kind: TableKind, order: usize) -> Result<Series> {
    let mut s = Series::zero(2, order);
    for n in 1..=order as u32 {
        let class = table.get(n, lambda, kind)?.clone();
        let coeff = match kind {
            TableKind::Bs => MotiveRatio::from_class(class),
            TableKind::Fiber => MotiveRatio::new(class, gl_motive(n))?,
        };
        s.set_coeff(n as usize, coeff);
    }
    Ok(s)
}

/// The functional equation of the level series, checked to the given
/// order: with B_l(t) = sum BS_n(l) t^n and R_l(t) = sum M_n(l)/[GL_n] t^n
/// (twist-2 products throughout),
///
/// ```text
/// 1 + R_1(L t) = 1 + B_1 + R_1 + B_0 R_1 + B_1 R_0 + (L - 2) B_1 R_1
/// ```
pub fn functional_equation_check(table: &MotiveTable, order: usize) -> Result<()> {
    let b0 = level_series(table, 0, TableKind::Bs, order)?;
    let b1 = level_series(table, 1, TableKind::Bs, order)?;
    let r0 = level_series(table, 0, TableKind::Fiber, order)?;
    let r1 = level_series(table, 1, TableKind::Fiber, order)?;
    let one = Series::one(2, order);

    let lhs = one.add(&r1.subs_t_scale(&MotiveClass::l_pow(1))?)?;

    let l_minus_2 =
        MotiveRatio::from_class(MotiveClass::l_pow(1) - MotiveClass::int(2));
    let mut rhs = one.add(&b1)?.add(&r1)?;
    rhs = rhs.add(&b0.mul(&r1)?)?;
    rhs = rhs.add(&b1.mul(&r0)?)?;
    rhs = rhs.add(&b1.mul(&r1)?.scale(&l_minus_2)?)?;

    for k in 0..=order {
        if !lhs.coeff(k).eq(rhs.coeff(k)) {
            return Err(Error::Mismatch(format!(
                "functional equation fails at order {k}: {} vs {}",
                crate::ratio::display_ratio(lhs.coeff(k)),
                crate::ratio::display_ratio(rhs.coeff(k))
            )));
        }
    }
    Ok(())
}

/// Assembled class of the third cell from its rank-one reduction:
/// `L^7 - L^a + L^3 [hypersurface]` with a = 4 (gamma nonzero) or
/// 5 (gamma zero).
pub fn prop_s3_class(params: &CubicParams, hypersurface: &MotiveClass) -> MotiveClass {
    let (top, missing, bundle) = prop_s3_exponents(params);
    MotiveClass::l_pow(top as i64) - MotiveClass::l_pow(missing as i64)
        + hypersurface.shift(2 * bundle as i64)
}

/// Expected point count of the third cell over F_q at a given level,
/// given the point count of the rank-one hypersurface at that level.
pub fn prop_s3_predicted_count(params: &CubicParams, q: u64, hypersurface_count: u64) -> u64 {
    let (top, missing, bundle) = prop_s3_exponents(params);
    q.pow(top) - q.pow(missing) + q.pow(bundle) * hypersurface_count
}

/// Interpolation helper: evaluate an equivariant-free class at integer q.
pub fn eval_plain(class: &MotiveClass, q: u64) -> Result<BigInt> {
    class.eval(&BigInt::from(q), crate::motive::mu3_count(q))
}

/// Collect the ranks present in a table for one kind.
pub fn available_ranks(table: &MotiveTable, kind: TableKind) -> Vec<u32> {
    let mut out: Vec<u32> = table
        .kinds()
        .filter(|((_, _, k), _)| *k == kind)
        .map(|((n, _, _), _)| *n)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

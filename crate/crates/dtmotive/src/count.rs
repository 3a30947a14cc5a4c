//! Exact point counting over prime fields.
//!
//! Hypersurface counts split the variables into an "outer" set that is
//! enumerated and a "linear" set that is eliminated in closed form: once
//! the outer variables are pinned, the equation restricts to an affine map
//! on the linear variables, whose fiber sizes are q^(l-1) (some nonzero
//! linear coefficient) or q^l / 0 (all linear coefficients vanish).
//! Enumeration is sharded on the first outer variable so shards can run on
//! any scheduler; aggregation is a commutative sum, hence deterministic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::motive::MotiveClass;
use crate::potential::Superpotential;
use crate::strata::StratumSpec;
use crate::trace::{trace_expand, TracePolynomial};

/// Deterministic Miller-Rabin for u64 (enough bases for the full range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u128(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u128(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, base, m);
        }
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn modinv(a: u64, q: u64) -> u64 {
    powmod_u128(a, q - 2, q)
}

/// Check that q is an odd-or-even prime small enough for u64 arithmetic.
pub fn check_prime(q: u64) -> Result<()> {
    if q < 2 || !is_prime(q) {
        return Err(Error::BadPrime { q, reason: "not a prime".into() });
    }
    if q >= 1 << 31 {
        return Err(Error::BadPrime { q, reason: "prime too large for u64 counting".into() });
    }
    Ok(())
}

/// Reduce an exact rational coefficient into F_q.
pub fn reduce_coeff(c: &BigRational, q: u64) -> Result<u64> {
    let qi = BigInt::from(q);
    let num = c.numer().mod_floor(&qi);
    let den = c.denom().mod_floor(&qi);
    if den.is_zero() {
        return Err(Error::BadPrime {
            q,
            reason: "a coefficient denominator is divisible by q".into(),
        });
    }
    let num = num.to_u64().expect("reduced below q");
    let den = den.to_u64().expect("reduced below q");
    Ok(mulmod_u128(num, modinv(den, q), q))
}

/// A polynomial compiled to F_q over a slice-indexed point.
#[derive(Debug, Clone)]
struct CompiledPoly {
    monos: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    fn compile(tp: &TracePolynomial, slots: &BTreeMap<usize, usize>, q: u64) -> Result<Self> {
        let mut monos = Vec::new();
        for (e, c) in tp.terms() {
            let coeff = reduce_coeff(c, q)?;
            if coeff == 0 {
                continue;
            }
            let mut factors = Vec::new();
            for (vi, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    let slot = *slots.get(&vi).expect("compiled variable has a slot");
                    factors.push((slot, exp));
                }
            }
            monos.push((coeff, factors));
        }
        Ok(CompiledPoly { monos })
    }

    #[inline]
    fn eval(&self, point: &[u64], q: u64) -> u64 {
        let mut acc = 0u64;
        for (coeff, factors) in &self.monos {
            let mut term = *coeff;
            for &(slot, exp) in factors {
                let v = point[slot];
                if v == 0 {
                    term = 0;
                    break;
                }
                for _ in 0..exp {
                    term = term * v % q;
                }
            }
            acc = (acc + term) % q;
        }
        acc
    }
}

/// Greedy choice of a large set of variables that can be eliminated
/// linearly: candidates never appear with exponent two or more, and no two
/// chosen variables share a monomial. Candidates are scanned by ascending
/// number of conflicting candidates, ties broken by variable order.
pub fn auto_linear_vars(tp: &TracePolynomial) -> Vec<String> {
    let nv = tp.vars().len();
    let mut candidate = vec![true; nv];
    for (e, _) in tp.terms() {
        for (vi, &exp) in e.iter().enumerate() {
            if exp >= 2 {
                candidate[vi] = false;
            }
        }
    }
    let mut conflicts: Vec<Vec<bool>> = vec![vec![false; nv]; nv];
    for (e, _) in tp.terms() {
        let present: Vec<usize> =
            e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect();
        for &a in &present {
            for &b in &present {
                if a != b {
                    conflicts[a][b] = true;
                }
            }
        }
    }
    let degree = |v: usize| -> usize {
        (0..nv).filter(|&u| candidate[u] && conflicts[v][u]).count()
    };
    let mut order: Vec<usize> = (0..nv).filter(|&v| candidate[v]).collect();
    order.sort_by_key(|&v| (degree(v), v));
    let mut picked: Vec<usize> = Vec::new();
    for v in order {
        if picked.iter().all(|&u| !conflicts[v][u]) {
            picked.push(v);
        }
    }
    picked.sort();
    picked.into_iter().map(|v| tp.vars()[v].clone()).collect()
}

/// A counting job: one equation over F_q with a designated set of linearly
/// eliminated variables.
#[derive(Debug, Clone)]
pub struct CountTask {
    pub name: String,
    pub equation: TracePolynomial,
    pub q: u64,
    pub linear_vars: Vec<String>,
}

impl CountTask {
    /// Build from a stratum with automatically chosen linear variables.
    pub fn from_spec(spec: &StratumSpec, q: u64) -> Result<CountTask> {
        check_prime(q)?;
        let linear_vars = auto_linear_vars(&spec.equation);
        let task = CountTask {
            name: spec.name.clone(),
            equation: spec.equation.clone(),
            q,
            linear_vars,
        };
        task.prepare()?;
        Ok(task)
    }

    /// Build with an explicit linear set (may be empty for naive counting).
    pub fn with_linear(
        name: &str,
        equation: TracePolynomial,
        q: u64,
        linear_vars: Vec<String>,
    ) -> Result<CountTask> {
        check_prime(q)?;
        let task = CountTask { name: name.to_string(), equation, q, linear_vars };
        task.prepare()?;
        Ok(task)
    }

    /// Number of independent shards (the range of the first outer variable).
    pub fn shard_count(&self) -> usize {
        if self.equation.vars().len() == self.linear_vars.len() {
            1
        } else {
            self.q as usize
        }
    }

    fn prepare(&self) -> Result<Prepared> {
        let vars = self.equation.vars();
        let mut linear_idx: Vec<usize> = Vec::new();
        for lv in &self.linear_vars {
            let idx = self
                .equation
                .var_index(lv)
                .ok_or_else(|| Error::NotLinear { var: lv.clone() })?;
            if linear_idx.contains(&idx) {
                return Err(Error::NotLinear { var: lv.clone() });
            }
            linear_idx.push(idx);
        }
        let outer_idx: Vec<usize> =
            (0..vars.len()).filter(|i| !linear_idx.contains(i)).collect();
        let slots: BTreeMap<usize, usize> =
            outer_idx.iter().enumerate().map(|(slot, &vi)| (vi, slot)).collect();

        // split the equation: monomials without linear vars -> base,
        // monomials with exactly one linear occurrence -> that variable
        let mut base = TracePolynomial::zero(vars.to_vec());
        let mut parts: Vec<TracePolynomial> =
            linear_idx.iter().map(|_| TracePolynomial::zero(vars.to_vec())).collect();
        for (e, c) in self.equation.terms() {
            let mut hit: Option<usize> = None;
            let mut occurrences = 0u32;
            for (k, &vi) in linear_idx.iter().enumerate() {
                occurrences += e[vi];
                if e[vi] > 0 {
                    if e[vi] > 1 {
                        return Err(Error::NotLinear { var: vars[vi].clone() });
                    }
                    if hit.is_some() {
                        return Err(Error::NotLinear { var: vars[vi].clone() });
                    }
                    hit = Some(k);
                }
            }
            debug_assert!(occurrences <= 1);
            match hit {
                None => base.add_term(e.clone(), c.clone()),
                Some(k) => {
                    let mut e2 = e.clone();
                    e2[linear_idx[k]] = 0;
                    parts[k].add_term(e2, c.clone());
                }
            }
        }

        let c0 = CompiledPoly::compile(&base, &slots, self.q)?;
        let cparts = parts
            .iter()
            .map(|p| CompiledPoly::compile(p, &slots, self.q))
            .collect::<Result<Vec<_>>>()?;
        // search-space sanity: counts must fit u64
        let bits = (64 - u64::leading_zeros(self.q.max(2) - 1)) as usize;
        if bits * vars.len() > 62 {
            return Err(Error::BadPrime {
                q: self.q,
                reason: "search space exceeds u64 counting range".into(),
            });
        }
        Ok(Prepared {
            q: self.q,
            outer_count: outer_idx.len(),

            c0,
            parts: cparts,
        })
    }
}

#[derive(Debug)]
struct Prepared {
    q: u64,
    outer_count: usize,

    c0: CompiledPoly,
    parts: Vec<CompiledPoly>,
}

/// Partial tallies from one shard: outer assignments where some linear
/// coefficient survives (`uniform`), and, where all vanish, a histogram of
/// the constant term (`pinned[value]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardOutcome {
    pub uniform: u64,
    pub pinned: Vec<u64>,
}

/// Count one shard (the first outer variable pinned to `shard`).
pub fn count_shard(task: &CountTask, shard: usize) -> Result<ShardOutcome> {
    let prep = task.prepare()?;
    let q = prep.q;
    if shard >= task.shard_count() {
        return Err(Error::BadPrime { q, reason: format!("shard {shard} out of range") });
    }
    let mut outcome = ShardOutcome { uniform: 0, pinned: vec![0; q as usize] };
    let k = prep.outer_count;
    let mut point = vec![0u64; k];
    if k > 0 {
        point[0] = shard as u64;
    }
    loop {
        let survives = prep.parts.iter().any(|p| p.eval(&point, q) != 0);
        if survives {
            outcome.uniform += 1;
        } else {
            let v = prep.c0.eval(&point, q);
            outcome.pinned[v as usize] += 1;
        }
        // odometer over point[1..]
        let mut t = 1;
        loop {
            if t >= k {
                break;
            }
            point[t] += 1;
            if point[t] < q {
                break;
            }
            point[t] = 0;
            t += 1;
        }
        if t >= k {
            break;
        }
    }
    Ok(outcome)
}

/// Scheduler abstraction: run every shard of a task and return the
/// outcomes in shard order.
pub trait CountRunner {
    fn run(&self, task: &CountTask) -> Result<Vec<ShardOutcome>>;
}

/// Runs shards one after another on the current thread.
#[derive(Debug, Default, Clone, Copy)]
pub struct SequentialRunner;

impl CountRunner for SequentialRunner {
    fn run(&self, task: &CountTask) -> Result<Vec<ShardOutcome>> {
        (0..task.shard_count()).map(|s| count_shard(task, s)).collect()
    }
}

/// Combine shard tallies into per-value counts (index = right-hand side).
pub fn combine_shards(task: &CountTask, outcomes: &[ShardOutcome]) -> Result<Vec<u64>> {
    let q = task.q;
    if outcomes.len() != task.shard_count() {
        return Err(Error::Mismatch(format!(
            "{}: expected {} shard outcomes, got {}",
            task.name,
            task.shard_count(),
            outcomes.len()
        )));
    }
    let mut uniform = 0u64;
    let mut pinned = vec![0u64; q as usize];
    for o in outcomes {
        uniform += o.uniform;
        for (acc, x) in pinned.iter_mut().zip(&o.pinned) {
            *acc += x;
        }
    }
    let l = task.linear_vars.len() as u32;
    let ql = q.pow(l);
    let mut counts = vec![0u64; q as usize];
    for (lam, slot) in counts.iter_mut().enumerate() {
        let mut c = pinned[lam] * ql;
        if l > 0 {
            c += uniform * q.pow(l - 1);
        }
        *slot = c;
    }
    Ok(counts)
}

/// Count points of `equation = value` for every value at once.
pub fn count_by_value(task: &CountTask, runner: &dyn CountRunner) -> Result<Vec<u64>> {
    let outcomes = runner.run(task)?;
    combine_shards(task, &outcomes)
}

/// Count points of `equation = value` for a single value.
pub fn count_value(task: &CountTask, runner: &dyn CountRunner, value: u64) -> Result<u64> {
    if value >= task.q {
        return Err(Error::BadPrime { q: task.q, reason: "level out of range".into() });
    }
    Ok(count_by_value(task, runner)?[value as usize])
}

/// Residue class of a level value under scaling by cubes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LambdaClass {
    Zero,
    /// all nonzero levels (q = 3 or q = 2 mod 3: cubing is a bijection)
    Unit,
    /// coset index 0, 1, 2 of the nonzero cubes (q = 1 mod 3)
    CubicClass(u8),
}

impl LambdaClass {
    pub fn name(&self) -> String {
        match self {
            LambdaClass::Zero => "zero".into(),
            LambdaClass::Unit => "unit".into(),
            LambdaClass::CubicClass(i) => format!("cubic-class-{i}"),
        }
    }
}

/// Partition of F_q into scaling classes: {0}, then either all units
/// (cubing bijective) or the three cosets of the cubes.
pub fn lambda_classes(q: u64) -> Result<Vec<(LambdaClass, Vec<u64>)>> {
    check_prime(q)?;
    let mut out = vec![(LambdaClass::Zero, vec![0u64])];
    if q % 3 != 1 {
        out.push((LambdaClass::Unit, (1..q).collect()));
        return Ok(out);
    }
    let mut is_cube = vec![false; q as usize];
    for x in 1..q {
        is_cube[powmod_u128(x, 3, q) as usize] = true;
    }
    let cubes: Vec<u64> = (1..q).filter(|&x| is_cube[x as usize]).collect();
    let g = (1..q).find(|&x| !is_cube[x as usize]).expect("non-cube exists when q = 1 mod 3");
    let coset = |a: u64| -> Vec<u64> {
        let mut v: Vec<u64> = cubes.iter().map(|&c| mulmod_u128(a, c, q)).collect();
        v.sort_unstable();
        v
    };
    out.push((LambdaClass::CubicClass(0), cubes.clone()));
    out.push((LambdaClass::CubicClass(1), coset(g)));
    out.push((LambdaClass::CubicClass(2), coset(mulmod_u128(g, g, q))));
    Ok(out)
}

/// Collapse per-value counts to per-class counts, checking that members of
/// each class agree (they must, for a weight-homogeneous equation).
pub fn class_counts(
    name: &str,
    per_value: &[u64],
    q: u64,
) -> Result<Vec<(LambdaClass, u64)>> {
    if per_value.len() != q as usize {
        return Err(Error::Mismatch(format!("{name}: per-value table has wrong length")));
    }
    let mut out = Vec::new();
    for (class, members) in lambda_classes(q)? {
        let c0 = per_value[members[0] as usize];
        for &m in &members {
            if per_value[m as usize] != c0 {
                return Err(Error::Mismatch(format!(
                    "{name}: counts differ inside class {} at q={q}: value {} gives {}, value {} gives {}",
                    class.name(),
                    members[0],
                    c0,
                    m,
                    per_value[m as usize]
                )));
            }
        }
        out.push((class, c0));
    }
    Ok(out)
}

/// Points of the scheme of pairs (X, Y) of 2x2 matrices with XY + YX = 0,
/// counted by ranks of the linear anticommutator map Y -> XY + YX.
pub fn count_anticommutator_pairs(q: u64) -> Result<u64> {
    check_prime(q)?;
    let mut total = 0u64;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let s = (a + d) % q;
                    // matrix of Y |-> XY + YX on (e, f, g, h)
                    let rows: [[u64; 4]; 4] = [
                        [2 * a % q, c, b, 0],
                        [b, s, 0, b],
                        [c, 0, s, c],
                        [0, c, b, 2 * d % q],
                    ];
                    let rank = rank4(rows, q);
                    total += q.pow(4 - rank);
                }
            }
        }
    }
    Ok(total)
}

fn rank4(mut m: [[u64; 4]; 4], q: u64) -> u32 {
    let mut rank = 0u32;
    let mut row = 0usize;
    for col in 0..4 {
        let Some(pivot) = (row..4).find(|&r| m[r][col] % q != 0) else {
            continue;
        };
        m.swap(row, pivot);
        let inv = modinv(m[row][col] % q, q);
        for j in col..4 {
            m[row][j] = m[row][j] % q * inv % q;
        }
        for r in 0..4 {
            if r != row && m[r][col] % q != 0 {
                let f = m[r][col] % q;
                for j in col..4 {
                    m[r][j] = (m[r][j] + (q - f) * m[row][j]) % q;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == 4 {
            break;
        }
    }
    rank
}

/// Pair-stratum tallies of a rank-two trace fiber at one level:
/// `base` counts points of the fiber itself, `eigen` counts pairs
/// (point, v) with v a nonzero common eigenvector of the three matrices,
/// and `generating` counts the remaining pairs (point, v != 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStrata {
    pub base: u64,
    pub eigen: u64,
    pub generating: u64,
}

/// Count the pair strata of the rank-two trace fiber for every level
/// value by full enumeration (practical for q = 2, 3).
pub fn count_pair_strata(w: &Superpotential, q: u64) -> Result<Vec<PairStrata>> {
    check_prime(q)?;
    if w.letters() > 3 || w.degree() != Some(3) {
        return Err(Error::AssumptionViolated(
            "pair strata are implemented for cubic potentials in three letters".into(),
        ));
    }
    if q > 7 {
        return Err(Error::BadPrime {
            q,
            reason: "full pair-stratum enumeration is limited to small q".into(),
        });
    }
    let tp = trace_expand(w, 2);
    let slots: BTreeMap<usize, usize> = (0..12).map(|i| (i, i)).collect();
    let poly = CompiledPoly::compile(&tp, &slots, q)?;
    let vectors: Vec<(u64, u64)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let mut res = vec![
        PairStrata { base: 0, eigen: 0, generating: 0 };
        q as usize
    ];
    let mut point = vec![0u64; 12];
    loop {
        let lam = poly.eval(&point, q) as usize;
        res[lam].base += 1;
        for &(v0, v1) in &vectors {
            let mut common = true;
            for mat in [&point[0..4], &point[4..8], &point[8..12]] {
                // cross product (Mv)_0 v1 - (Mv)_1 v0 detects Mv parallel v
                let top = (mat[0] * v0 + mat[1] * v1) % q;
                let bot = (mat[2] * v0 + mat[3] * v1) % q;
                if (top * v1 + (q - bot) * v0) % q != 0 {
                    common = false;
                    break;
                }
            }
            if common {
                res[lam].eigen += 1;
            } else {
                res[lam].generating += 1;
            }
        }
        let mut t = 0;
        loop {
            if t == 12 {
                break;
            }
            point[t] += 1;
            if point[t] < q {
                break;
            }
            point[t] = 0;
            t += 1;
        }
        if t == 12 {
            break;
        }
    }
    Ok(res)
}

/// Interpolate counts (q_i, N_i) by the unique polynomial of degree
/// len - 1 and return it as a class with integer coefficients.
pub fn fit_count_polynomial(samples: &[(u64, u64)]) -> Result<MotiveClass> {
    if samples.is_empty() {
        return Err(Error::NonIntegralFit("no samples".into()));
    }
    for (i, (qi, _)) in samples.iter().enumerate() {
        for (qj, _) in samples.iter().skip(i + 1) {
            if qi == qj {
                return Err(Error::NonIntegralFit(format!("duplicate sample point q={qi}")));
            }
        }
    }
    let n = samples.len();
    // Lagrange interpolation, accumulated in the power basis
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, (qi, ni)) in samples.iter().enumerate() {
        // numerator polynomial prod_{j != i} (x - q_j), times n_i / prod (q_i - q_j)
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        let xi = BigRational::from_integer(BigInt::from(*qi));
        for (j, (qj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(*qj));
            // multiply basis by (x - xj)
            for k in (0..=deg).rev() {
                let b = basis[k].clone();
                basis[k + 1] += b.clone();
                basis[k] = -b * xj.clone();
            }
            deg += 1;
            denom *= xi.clone() - xj;
        }
        let scale = BigRational::from_integer(BigInt::from(*ni)) / denom;
        for (k, b) in basis.into_iter().enumerate() {
            coeffs[k] += b * scale.clone();
        }
    }
    let mut out = MotiveClass::zero();
    for (k, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.denom().is_one() {
            return Err(Error::NonIntegralFit(format!(
                "coefficient of degree {k} is non-integral: {c}"
            )));
        }
        out = out + MotiveClass::monomial(2 * k as i64, crate::motive::EquivTag::Unit, c.numer().clone());
    }
    Ok(out)
}

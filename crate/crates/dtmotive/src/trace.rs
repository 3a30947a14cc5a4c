//! Commutative polynomials arising as traces of matrix words.
//!
//! `trace_expand` substitutes generic n-by-n matrices for the letters of a
//! cyclic word and expands the trace into a polynomial in the matrix
//! entries. For three letters in rank two the twelve entries are named
//!
//! ```text
//! X = [[n, p], [q, r]],  Y = [[s, t], [u, v]],  Z = [[w, x], [y, z]]
//! ```
//!
//! so diagonal entries are {n, r, s, v, w, z}, strictly upper entries are
//! {p, t, x} and strictly lower entries are {q, u, y}.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::string::ToString;

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::potential::Superpotential;

/// Role of a matrix entry relative to the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Diag,
    Upper,
    Lower,
}

/// A commutative polynomial with exact rational coefficients over a fixed
/// ordered variable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePolynomial {
    vars: Vec<String>,
    /// exponent vector (parallel to `vars`) -> coefficient, zeros dropped
    terms: BTreeMap<Vec<u32>, BigRational>,
}

/// Substitution target for one variable.
#[derive(Debug, Clone)]
pub enum Subst {
    /// replace by a constant
    Const(BigRational),
    /// replace by `scale * variable` in the new variable set
    Scaled(BigRational, String),
}

impl Subst {
    pub fn zero() -> Self {
        Subst::Const(BigRational::zero())
    }

    pub fn int(v: i64) -> Self {
        Subst::Const(BigRational::from_integer(v.into()))
    }

    pub fn var(name: &str) -> Self {
        Subst::Scaled(BigRational::one(), name.to_string())
    }
}

impl TracePolynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        TracePolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate (exponent vector, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector length mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += coeff;
        // drop the key again if it cancelled
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &TracePolynomial) -> TracePolynomial {
        assert_eq!(self.vars, other.vars, "variable sets differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TracePolynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &TracePolynomial) -> TracePolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> TracePolynomial {
        if k.is_zero() {
            return TracePolynomial::zero(self.vars.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k.clone();
        }
        out
    }

    /// Multiply by a single variable of the same variable set.
    pub fn mul_var(&self, name: &str) -> Result<TracePolynomial> {
        let idx = self
            .var_index(name)
            .ok_or_else(|| Error::DecompositionFailure(format!("unknown variable {name}")))?;
        let mut out = TracePolynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[idx] += 1;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Total degree of each monomial, if all agree (zero polynomial gives 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Weighted degree of each monomial under `weights` (by variable name),
    /// if all agree. Missing names default to weight 0.
    pub fn weighted_degree(&self, weights: &BTreeMap<String, u32>) -> Option<u32> {
        let per_var: Vec<u32> =
            self.vars.iter().map(|v| weights.get(v).copied().unwrap_or(0)).collect();
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().zip(&per_var).map(|(x, w)| x * w).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Apply a substitution. Variables not mentioned in `map` carry over to
    /// the variable of the same name in `new_vars`.
    pub fn substitute(
        &self,
        new_vars: Vec<String>,
        map: &BTreeMap<String, Subst>,
    ) -> Result<TracePolynomial> {
        // target index (or None = constant) and scalar factor per old var
        let mut plan: Vec<(Option<usize>, BigRational)> = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match map.get(v) {
                Some(Subst::Const(c)) => plan.push((None, c.clone())),
                Some(Subst::Scaled(k, name)) => {
                    let idx = new_vars.iter().position(|nv| nv == name).ok_or_else(|| {
                        Error::DecompositionFailure(format!(
                            "substitution target {name} not among the new variables"
                        ))
                    })?;
                    plan.push((Some(idx), k.clone()));
                }
                None => {
                    let idx = new_vars.iter().position(|nv| nv == v).ok_or_else(|| {
                        Error::DecompositionFailure(format!(
                            "variable {v} missing from the new variable set"
                        ))
                    })?;
                    plan.push((Some(idx), BigRational::one()));
                }
            }
        }
        let mut out = TracePolynomial::zero(new_vars);
        'term: for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = alloc::vec![0u32; out.vars.len()];
            for (old_idx, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let (target, k) = &plan[old_idx];
                if k.is_zero() {
                    continue 'term;
                }
                let mut kp = BigRational::one();
                for _ in 0..exp {
                    kp *= k.clone();
                }
                coeff *= kp;
                if let Some(idx) = target {
                    exps[*idx] += exp;
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Deterministic (monomial, coefficient) string pairs, e.g. `("rvz", "2")`.
    pub fn term_strings(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut mono = String::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                mono.push_str(&self.vars[i]);
                if exp > 1 {
                    mono.push('^');
                    mono.push_str(&exp.to_string());
                }
            }
            if mono.is_empty() {
                mono.push('1');
            }
            out.push((mono, c.to_string()));
        }
        out.sort();
        out
    }
}

impl core::fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.term_strings() {
            let c: BigRational = coeff.parse().expect("round trip");
            let neg = c.is_negative();
            let abs = c.abs();
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
            if abs.is_one() && mono != "1" {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}

/// Names for the entries of m generic n-by-n matrices, in matrix-major,
/// row-major order.
pub fn entry_var_names(m: u32, n: u32) -> Vec<String> {
    if n == 1 && m <= 3 {
        return ["x", "y", "z"][..m as usize].iter().map(|s| s.to_string()).collect();
    }
    if n == 2 && m == 3 {
        return "npqrstuvwxyz".chars().map(|c| c.to_string()).collect();
    }
    let mut out = Vec::with_capacity((m * n * n) as usize);
    for k in 0..m {
        for i in 0..n {
            for j in 0..n {
                out.push(format!("x{}_{}{}", k + 1, i + 1, j + 1));
            }
        }
    }
    out
}

/// Role of each entry variable from `entry_var_names(m, n)`.
pub fn entry_roles(m: u32, n: u32) -> Vec<VarRole> {
    let mut out = Vec::with_capacity((m * n * n) as usize);
    for _ in 0..m {
        for i in 0..n {
            for j in 0..n {
                out.push(match i.cmp(&j) {
                    core::cmp::Ordering::Equal => VarRole::Diag,
                    core::cmp::Ordering::Less => VarRole::Upper,
                    core::cmp::Ordering::Greater => VarRole::Lower,
                });
            }
        }
    }
    out
}

/// Weights making cubic trace polynomials homogeneous of weight 3:
/// diagonal entries weigh 1, strictly upper entries 2, strictly lower 0.
pub fn entry_weights(m: u32, n: u32) -> BTreeMap<String, u32> {
    let names = entry_var_names(m, n);
    let roles = entry_roles(m, n);
    names
        .into_iter()
        .zip(roles)
        .map(|(name, role)| {
            let w = match role {
                VarRole::Diag => 1,
                VarRole::Upper => 2,
                VarRole::Lower => 0,
            };
            (name, w)
        })
        .collect()
}

/// Expand the trace of a potential on generic n-by-n matrices.
///
/// The trace of a word w_1..w_d is the sum over closed index paths
/// (i_1, ..., i_d) of the product of entries (w_t)_{i_t, i_{t+1}}.
pub fn trace_expand(w: &Superpotential, n: u32) -> TracePolynomial {
    let m = w.letters();
    let vars = entry_var_names(m, n);
    let nv = vars.len();
    let var_of = |letter: u8, i: u32, j: u32| -> usize {
        (letter as u32 * n * n + i * n + j) as usize
    };
    let mut out = TracePolynomial::zero(vars);
    for (word, coeff) in w.terms() {
        let d = word.len();
        let mut path = alloc::vec![0u32; d];
        loop {
            let mut exps = alloc::vec![0u32; nv];
            for t in 0..d {
                let i = path[t];
                let j = path[(t + 1) % d];
                exps[var_of(word[t], i, j)] += 1;
            }
            out.add_term(exps, coeff.clone());
            // odometer
            let mut t = 0;
            loop {
                if t == d {
                    break;
                }
                path[t] += 1;
                if path[t] < n {
                    break;
                }
                path[t] = 0;
                t += 1;
            }
            if t == d {
                break;
            }
        }
    }
    out
}

/// A trace polynomial split along its strictly-lower entries:
/// `poly = base + sum_v linear_part[v] * v` where no strictly-lower
/// variable occurs in `base` or in any `linear_part`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// part free of lower and upper entries (diagonal only)
    pub base: TracePolynomial,
    /// lower variable name -> its cofactor polynomial
    pub linear_parts: Vec<(String, TracePolynomial)>,
    /// (lower, upper) -> cofactor of `lower*upper`, linear in diagonals
    pub pairings: Vec<(String, String, TracePolynomial)>,
}

/// Decompose a cubic trace polynomial along strictly-lower entries.
///
/// Requires every monomial to contain at most one strictly-lower entry
/// (which closed paths of length three guarantee), the lower-free part to
/// be purely diagonal, and each mixed monomial to pair exactly one lower
/// with one upper entry.
pub fn block_decompose(tp: &TracePolynomial, roles: &[VarRole]) -> Result<BlockDecomposition> {
    if roles.len() != tp.vars().len() {
        return Err(Error::DecompositionFailure("role table length mismatch".into()));
    }
    let lower_idx: Vec<usize> = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == VarRole::Lower)
        .map(|(i, _)| i)
        .collect();
    let upper_idx: Vec<usize> = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == VarRole::Upper)
        .map(|(i, _)| i)
        .collect();

    let mut base = TracePolynomial::zero(tp.vars().to_vec());
    let mut linear: BTreeMap<usize, TracePolynomial> = BTreeMap::new();
    for (e, c) in tp.terms() {
        let lowers: Vec<usize> = lower_idx.iter().copied().filter(|&i| e[i] > 0).collect();
        let lower_deg: u32 = lower_idx.iter().map(|&i| e[i]).sum();
        if lower_deg > 1 {
            return Err(Error::DecompositionFailure(format!(
                "monomial with repeated strictly-lower entries: degree {lower_deg}"
            )));
        }
        if lower_deg == 0 {
            if upper_idx.iter().any(|&i| e[i] > 0) {
                return Err(Error::DecompositionFailure(
                    "lower-free part contains a strictly-upper entry".into(),
                ));
            }
            base.add_term(e.clone(), c.clone());
        } else {
            let v = lowers[0];
            let mut e2 = e.clone();
            e2[v] -= 1;
            let upper_deg: u32 = upper_idx.iter().map(|&i| e2[i]).sum();
            if upper_deg != 1 {
                return Err(Error::DecompositionFailure(format!(
                    "mixed monomial pairs one lower with {upper_deg} upper entries"
                )));
            }
            linear
                .entry(v)
                .or_insert_with(|| TracePolynomial::zero(tp.vars().to_vec()))
                .add_term(e2, c.clone());
        }
    }

    let mut linear_parts = Vec::new();
    let mut pairings = Vec::new();
    for (&v, q) in &linear {
        let vname = tp.vars()[v].clone();
        for (e, c) in q.terms() {
            let u = upper_idx.iter().copied().find(|&i| e[i] > 0).expect("one upper entry");
            let mut e2 = e.clone();
            e2[u] -= 1;
            let diag_deg: u32 = e2.iter().sum();
            if diag_deg != 1 || upper_idx.iter().any(|&i| e2[i] > 0) || lower_idx.contains(&u) {
                return Err(Error::DecompositionFailure(
                    "pairing cofactor is not linear in the diagonal entries".into(),
                ));
            }
            let uname = tp.vars()[u].clone();
            let mut l = TracePolynomial::zero(tp.vars().to_vec());
            l.add_term(e2, c.clone());
            if let Some(entry) = pairings
                .iter_mut()
                .find(|(lv, uv, _): &&mut (String, String, TracePolynomial)| {
                    *lv == vname && *uv == uname
                })
            {
                entry.2 = entry.2.add(&l);
            } else {
                pairings.push((vname.clone(), uname, l));
            }
        }
        linear_parts.push((vname, q.clone()));
    }

    // exact reconstruction: base + sum_v q_v * v must equal the input
    let mut rebuilt = base.clone();
    for (vname, q) in &linear_parts {
        rebuilt = rebuilt.add(&q.mul_var(vname)?);
    }
    if rebuilt != *tp {
        return Err(Error::DecompositionFailure("reconstruction mismatch".into()));
    }

    Ok(BlockDecomposition { base, linear_parts, pairings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank_one_traces() {
        let q = trace_expand(&Superpotential::quantum(), 1);
        // 2xyz
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.to_string(), "2 xyz");
        let w = trace_expand(&Superpotential::weyl(), 1);
        // the two bracket words cancel, leaving -x^3/3
        assert_eq!(w.to_string(), "-1/3 x^3");
    }

    #[test]
    fn rank_two_quantum_trace() {
        let tp = trace_expand(&Superpotential::quantum(), 2);
        assert_eq!(tp.num_terms(), 14);
        let expected = "2 nsw + nty + nux + psy + puw + puz + pvy + qsx + qtw + qtz \
                        + qvx + rty + rux + 2 rvz";
        assert_eq!(tp.to_string(), expected);
    }

    #[test]
    fn rank_two_weyl_trace() {
        let tp = trace_expand(&Superpotential::weyl(), 2);
        let mut expect = TracePolynomial::zero(entry_var_names(3, 2));
        let idx = |name: &str| "npqrstuvwxyz".find(name).unwrap();
        let mut add = |mono: &str, num: i64, den: i64| {
            let mut e = vec![0u32; 12];
            for ch in mono.chars() {
                e[idx(&ch.to_string())] += 1;
            }
            expect.add_term(e, rat(num, den));
        };
        add("nnn", -1, 3);
        add("rrr", -1, 3);
        add("npq", -1, 1);
        add("pqr", -1, 1);
        add("nty", 1, 1);
        add("nux", -1, 1);
        add("psy", -1, 1);
        add("puw", 1, 1);
        add("puz", -1, 1);
        add("pvy", 1, 1);
        add("qsx", 1, 1);
        add("qtw", -1, 1);
        add("qtz", 1, 1);
        add("qvx", -1, 1);
        add("rty", -1, 1);
        add("rux", 1, 1);
        assert_eq!(tp, expect);
    }

    #[test]
    fn traces_are_weight_homogeneous() {
        let weights = entry_weights(3, 2);
        for w in [Superpotential::quantum(), Superpotential::weyl()] {
            let tp = trace_expand(&w, 2);
            assert_eq!(tp.weighted_degree(&weights), Some(3));
        }
    }

    #[test]
    fn block_decomposition_of_normal_form() {
        // alpha X^3 + beta Y^3 + gamma Z^3 + delta XYZ + epsilon XZY
        let p = crate::potential::CubicParams {
            alpha: rat(2, 1),
            beta: rat(3, 1),
            gamma: rat(5, 1),
            delta: rat(7, 1),
            epsilon: rat(11, 1),
        };
        let w = Superpotential::cubic_normal_form(&p);
        let tp = trace_expand(&w, 2);
        let dec = block_decompose(&tp, &entry_roles(3, 2)).unwrap();
        // base = alpha(n^3+r^3) + beta(s^3+v^3) + gamma(w^3+z^3)
        //        + delta(nsw+rvz) + epsilon(nws+rzv)
        assert_eq!(dec.base.num_terms(), 8);
        // pairing table against the block structure of the normal form:
        // q row: (q,p) -> 3 alpha (n+r); (q,t) -> eps w + delta z; (q,x) -> delta s + eps v
        let find = |l: &str, u: &str| -> String {
            dec.pairings
                .iter()
                .find(|(lv, uv, _)| lv == l && uv == u)
                .map(|(_, _, f)| f.to_string())
                .unwrap_or_else(|| "0".into())
        };
        assert_eq!(find("q", "p"), "6 n + 6 r");
        assert_eq!(find("q", "t"), "11 w + 7 z");
        assert_eq!(find("q", "x"), "7 s + 11 v");
        assert_eq!(find("u", "p"), "7 w + 11 z");
        assert_eq!(find("u", "t"), "9 s + 9 v");
        assert_eq!(find("u", "x"), "11 n + 7 r");
        assert_eq!(find("y", "p"), "11 s + 7 v");
        assert_eq!(find("y", "t"), "7 n + 11 r");
        assert_eq!(find("y", "x"), "15 w + 15 z");
    }

    #[test]
    fn substitute_cell_representative() {
        // quantum trace at X = [[0,p],[1,r]] reproduces the ten-variable cell
        let tp = trace_expand(&Superpotential::quantum(), 2);
        let mut map = BTreeMap::new();
        map.insert("n".to_string(), Subst::int(0));
        map.insert("q".to_string(), Subst::int(1));
        let new_vars: Vec<String> =
            "prstuvwxyz".chars().map(|c| c.to_string()).collect();
        let cell = tp.substitute(new_vars, &map).unwrap();
        assert_eq!(
            cell.to_string(),
            "psy + puw + puz + pvy + rty + rux + 2 rvz + sx + tw + tz + vx"
        );
    }

    #[test]
    fn scaled_substitution() {
        // x^3 under x -> -2 t gives -8 t^3
        let w = Superpotential::parse("XXX").unwrap();
        let tp = trace_expand(&w, 1);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), Subst::Scaled(rat(-2, 1), "t".to_string()));
        let out = tp.substitute(alloc::vec!["t".to_string()], &map).unwrap();
        assert_eq!(out.to_string(), "-8 t^3");
    }

    #[test]
    fn decomposition_rejects_bad_shapes() {
        // q^3 has a thrice-repeated lower entry
        let vars = entry_var_names(3, 2);
        let mut tp = TracePolynomial::zero(vars);
        let mut e = vec![0u32; 12];
        e[2] = 3; // q
        tp.add_term(e, rat(1, 1));
        assert!(block_decompose(&tp, &entry_roles(3, 2)).is_err());
    }
}

//! Locally closed strata of trace fibers, presented as explicit
//! hypersurfaces in affine cells.
//!
//! For a cubic potential in three letters and rank two, Brauer-Severi-type
//! fibers decompose into three cells indexed by which column of the first
//! matrices is pinned to a standard vector. The cell representatives are
//!
//! ```text
//! cell 1: X = [[0, p], [1, r]]                       (10 free entries)
//! cell 2: q = 0, Y = [[0, t], [1, v]]                ( 9 free entries)
//! cell 3: q = u = 0, Z = [[0, x], [1, z]]            ( 8 free entries)
//! ```
//!
//! Every cell equation is homogeneous of weight 3 for the grading that
//! gives diagonal entries weight 1, strictly upper entries weight 2 and
//! strictly lower entries weight 0, so point counts over a finite field
//! only depend on the cubic-residue class of the right-hand side.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;


use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::potential::{CubicParams, Superpotential};
use crate::trace::{
    entry_var_names, entry_weights, trace_expand, Subst, TracePolynomial,
};

/// A hypersurface `equation = rhs` in an affine cell, together with the
/// scaling weights of its coordinates.
#[derive(Debug, Clone)]
pub struct StratumSpec {
    pub name: String,
    /// dimension of the ambient affine cell (= number of free variables)
    pub dim: u32,
    /// pinned matrix entries and their values
    pub fixed: BTreeMap<String, i64>,
    /// scaling weight of each free variable
    pub weights: BTreeMap<String, u32>,
    /// left-hand side polynomial over the free variables
    pub equation: TracePolynomial,
    /// right-hand side: 0 for the zero level, 1 for the unit level
    pub rhs_class: u8,
    /// true when the associated motive was derived through quadratic-form
    /// diagonalization, which is unavailable in characteristic 2; point
    /// counts at q = 2 may then legitimately differ from the motive
    pub char2_sensitive: bool,
}

impl StratumSpec {
    /// Wrap a bare equation (no pinned entries, all weights 1).
    pub fn from_equation(name: &str, equation: TracePolynomial, rhs_class: u8) -> Self {
        let weights = equation.vars().iter().map(|v| (v.clone(), 1)).collect();
        StratumSpec {
            name: name.to_string(),
            dim: equation.vars().len() as u32,
            fixed: BTreeMap::new(),
            weights,
            equation,
            rhs_class,
            char2_sensitive: false,
        }
    }

    /// Weight of the right-hand side under the coordinate scaling, checked
    /// to be constant across monomials.
    pub fn scaling_weight(&self) -> Option<u32> {
        self.equation.weighted_degree(&self.weights)
    }
}

fn require_cubic_three_letters(w: &Superpotential) -> Result<()> {
    if w.letters() > 3 || w.degree() != Some(3) {
        return Err(Error::AssumptionViolated(
            "stratification requires a cubic potential in three letters".into(),
        ));
    }
    Ok(())
}

/// The full trace fiber `tr W(X_1..X_m) = rhs` on m generic n-by-n
/// matrices.
pub fn fiber_spec(w: &Superpotential, n: u32, rhs_class: u8) -> Result<StratumSpec> {
    if w.degree() != Some(3) {
        return Err(Error::AssumptionViolated("only cubic potentials are supported".into()));
    }
    let m = w.letters();
    let equation = trace_expand(w, n);
    let weights = entry_weights(m, n);
    let spec = StratumSpec {
        name: format!("fiber-n{n}-level{rhs_class}"),
        dim: (m * n * n) as u32,
        fixed: BTreeMap::new(),
        weights,
        equation,
        rhs_class,
        char2_sensitive: n >= 2,
    };
    debug_assert_eq!(spec.scaling_weight(), Some(3));
    Ok(spec)
}

/// The three cell equations of the rank-two Brauer-Severi-type fiber at
/// the given level.
pub fn cell_specs(w: &Superpotential, rhs_class: u8) -> Result<[StratumSpec; 3]> {
    require_cubic_three_letters(w)?;
    let tp = trace_expand(w, 2);
    let all: Vec<String> = entry_var_names(3, 2);
    let weights_all = entry_weights(3, 2);

    let build = |idx: usize, fixed: &[(&str, i64)]| -> Result<StratumSpec> {
        let mut map = BTreeMap::new();
        let mut fixed_out = BTreeMap::new();
        for (name, value) in fixed {
            map.insert(name.to_string(), Subst::int(*value));
            fixed_out.insert(name.to_string(), *value);
        }
        let free: Vec<String> =
            all.iter().filter(|v| !fixed_out.contains_key(*v)).cloned().collect();
        let equation = tp.substitute(free.clone(), &map)?;
        let weights: BTreeMap<String, u32> =
            free.iter().map(|v| (v.clone(), weights_all[v])).collect();
        let spec = StratumSpec {
            name: format!("cell{idx}-level{rhs_class}"),
            dim: free.len() as u32,
            fixed: fixed_out,
            weights,
            equation,
            rhs_class,
            char2_sensitive: true,
        };
        if spec.scaling_weight() != Some(3) {
            return Err(Error::AssumptionViolated(format!(
                "cell {idx} equation is not weight-3 homogeneous"
            )));
        }
        Ok(spec)
    };

    Ok([
        build(1, &[("n", 0), ("q", 1)])?,
        build(2, &[("q", 0), ("s", 0), ("u", 1)])?,
        build(3, &[("q", 0), ("u", 0), ("w", 0), ("y", 1)])?,
    ])
}

/// Rank-one reduction of the third cell for a normal-form potential
/// `alpha X^3 + beta Y^3 + gamma Z^3 + XYZ + epsilon XZY` (delta = 1,
/// epsilon nonzero).
///
/// Writing `V(a, b, c)` for the potential evaluated on commuting scalars,
/// the third cell at a fixed level is an affine bundle over the plane
/// (resp. 3-space when gamma = 0) hypersurface
///
/// ```text
/// V(n, s, 0) + V(-n/epsilon, -epsilon s, 0)      gamma != 0
/// V(n, s, 0) + V(-n/epsilon, -epsilon s, z)      gamma == 0
/// ```
///
/// and its class is `L^7 - L^4 + L^3 [hypersurface]` (resp.
/// `L^7 - L^5 + L^3 [hypersurface]`).
pub fn prop_s3_bracket(params: &CubicParams, rhs_class: u8) -> Result<StratumSpec> {
    if !params.delta.is_one() {
        return Err(Error::AssumptionViolated(
            "rank-one reduction is stated for delta = 1".into(),
        ));
    }
    if params.epsilon.is_zero() {
        return Err(Error::AssumptionViolated(
            "rank-one reduction needs a nonzero epsilon".into(),
        ));
    }
    let gamma_zero = params.gamma.is_zero();
    let w = Superpotential::cubic_normal_form(params);
    let rank_one = trace_expand(&w, 1); // variables x, y, z

    let vars: Vec<String> = if gamma_zero {
        ["n", "s", "z"].iter().map(|s| s.to_string()).collect()
    } else {
        ["n", "s"].iter().map(|s| s.to_string()).collect()
    };

    let mut first = BTreeMap::new();
    first.insert("x".to_string(), Subst::var("n"));
    first.insert("y".to_string(), Subst::var("s"));
    first.insert("z".to_string(), Subst::zero());
    let half1 = rank_one.substitute(vars.clone(), &first)?;

    let minus_inv_eps = -params.epsilon.recip();
    let minus_eps = -params.epsilon.clone();
    let mut second = BTreeMap::new();
    second.insert("x".to_string(), Subst::Scaled(minus_inv_eps, "n".to_string()));
    second.insert("y".to_string(), Subst::Scaled(minus_eps, "s".to_string()));
    if gamma_zero {
        second.insert("z".to_string(), Subst::var("z"));
    } else {
        second.insert("z".to_string(), Subst::zero());
    }
    let half2 = rank_one.substitute(vars.clone(), &second)?;

    let equation = half1.add(&half2);
    let weights: BTreeMap<String, u32> = vars.iter().map(|v| (v.clone(), 1)).collect();
    let spec = StratumSpec {
        name: format!("cell3-rank-one-level{rhs_class}"),
        dim: vars.len() as u32,
        fixed: BTreeMap::new(),
        weights,
        equation,
        rhs_class,
        char2_sensitive: false,
    };
    debug_assert_eq!(spec.scaling_weight(), Some(3));
    Ok(spec)
}

/// 2 * e2-exponents of the affine-bundle correction in the rank-one
/// reduction: the stratum class is
/// `L^7 - L^missing + L^3 [hypersurface]` with `missing` = 4 when
/// gamma != 0 and 5 when gamma = 0. Returned as (7, missing, 3).
pub fn prop_s3_exponents(params: &CubicParams) -> (u32, u32, u32) {
    if params.gamma.is_zero() {
        (7, 5, 3)
    } else {
        (7, 4, 3)
    }
}

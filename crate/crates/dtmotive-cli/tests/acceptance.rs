//! Acceptance suite: the eight headline guarantees of the project, each
//! printed as one pass/fail line with its runtime.
//!
//! Run with: cargo test -p dtmotive-cli --test acceptance -- --nocapture

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use dtmotive::catalog::{self, quantum_cell_classes_unit, quantum_pair_scheme, weyl_cell_classes};
use dtmotive::count::{class_counts, count_by_value, CountTask, SequentialRunner};
use dtmotive::dt::{functional_equation_check, induct_fiber, u_series, TableKind};
use dtmotive::mu3_count;
use dtmotive::pleth::{exp_product_form, laurent_expand, pleth_exp, pleth_log};
use dtmotive::ratio::display_ratio;
use dtmotive::strata::cell_specs;
use dtmotive::verify::{
    conjectured_bracket, verify_cells, verify_dimensional_reduction, verify_pair_strata,
    verify_u_series, CheckReport, CheckStatus,
};
use dtmotive::{MotiveClass, MotiveRatio, Series, Superpotential};

type Outcome = Result<String, String>;

fn es<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lp(terms: &[(i64, i64)]) -> MotiveClass {
    MotiveClass::from_l_poly(terms)
}

/// Every report must be an outright pass.
fn all_pass(reports: &[CheckReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.status != CheckStatus::Pass) {
        Some(r) => Err(format!(
            "{} [{}]: {} vs {} ({})",
            r.name,
            r.status.label(),
            r.lhs,
            r.rhs,
            r.location
        )),
        None => Ok(()),
    }
}

/// No report may fail outright; returns the number of warnings.
fn no_failures(reports: &[CheckReport]) -> Result<usize, String> {
    if let Some(r) = reports.iter().find(|r| r.status == CheckStatus::Fail) {
        return Err(format!("{}: {} vs {} ({})", r.name, r.lhs, r.rhs, r.location));
    }
    Ok(reports.iter().filter(|r| r.status == CheckStatus::Warn).count())
}

/// 1. The three framed strata of the anticommutator potential have their
///    stated closed forms, confirmed by brute-force counts over F_2, F_5, F_7.
fn quantum_strata_against_counts() -> Outcome {
    let expected = [
        lp(&[(9, 1), (6, -1), (5, -2), (4, 3), (3, -1)]),
        lp(&[(8, 1), (5, -2), (4, 1)]),
        lp(&[(7, 1), (4, -2), (3, 1)]),
    ];
    let classes = quantum_cell_classes_unit();
    for (i, (got, want)) in classes.iter().zip(expected.iter()).enumerate() {
        if got != want {
            return Err(format!("stratum {} closed form: got {got}, want {want}", i + 1));
        }
    }
    let odd = verify_cells("quantum", &[5, 7], &SequentialRunner).map_err(es)?;
    all_pass(&odd)?;
    let even = verify_cells("quantum", &[2], &SequentialRunner).map_err(es)?;
    let warns = no_failures(&even)?;
    Ok(format!(
        "3 closed forms exact; {} count checks at q=5,7 all match; \
         {} q=2 checks recorded as warnings (characteristic-2-sensitive equations)",
        odd.len(),
        warns
    ))
}

/// 2. Rank-2 induction reproduces the unit-level fiber class, and the
///    level difference is L^4 times the pair-scheme polynomial.
fn quantum_induction() -> Outcome {
    let table = catalog::quantum_table();
    let inducted = induct_fiber(&table, 2, 1).map_err(es)?;
    let want = lp(&[(11, 1), (8, -1), (7, -3), (6, 2), (5, 2), (4, -1)]);
    if inducted != want {
        return Err(format!("inducted fiber: got {inducted}, want {want}"));
    }
    let delta = table.delta(2, TableKind::Fiber).map_err(es)?;
    let want_delta = quantum_pair_scheme().shift(8);
    if delta != want_delta {
        return Err(format!("level difference: got {delta}, want {want_delta}"));
    }
    Ok("rank-2 induction and level difference match their closed forms exactly".into())
}

/// 3. Dimensional reduction: the two levels partition the 12-dimensional
///    matrix space in the ring, and the pair-scheme polynomial is recovered
///    independently by interpolating anticommutator counts at six primes.
fn dimensional_reduction() -> Outcome {
    let table = catalog::quantum_table();
    let m0 = table.fiber(2, 0).map_err(es)?.clone();
    let m1 = table.fiber(2, 1).map_err(es)?;
    let lhs = m0 + lp(&[(1, 1), (0, -1)]).mul(m1).map_err(es)?;
    if lhs != lp(&[(12, 1)]) {
        return Err(format!("level sum: got {lhs}, want L^12"));
    }
    let reports = verify_dimensional_reduction(&[5, 7, 11, 13, 17, 19]).map_err(es)?;
    all_pass(&reports)?;
    Ok(format!(
        "level sum is exactly L^12; pair scheme recovered by interpolation \
         at 6 primes ({} checks)",
        reports.len()
    ))
}

/// 4. The t^2 coefficient of the plethystic exponential of the conjectured
///    bracket matches its closed form by cross-multiplication.
fn quantum_exp_coefficient() -> Outcome {
    let bracket = conjectured_bracket("quantum", 2).map_err(es)?;
    let g = pleth_exp(&bracket).map_err(es)?;
    let den = lp(&[(2, 1), (0, -1)]).mul(&lp(&[(1, 1), (0, -1)])).map_err(es)?;
    let closed =
        MotiveRatio::new(lp(&[(4, 1), (3, 3), (2, -2), (1, -2), (0, 1)]), den).map_err(es)?;
    if !g.coeff(2).eq(&closed) {
        return Err(format!(
            "t^2 coefficient: got {}, want {}",
            display_ratio(g.coeff(2)),
            display_ratio(&closed)
        ));
    }
    Ok("t^2 coefficient of the expanded bracket matches its closed form".into())
}

/// 5. The six equivariant strata classes of the commutator potential have
///    their stated closed forms, confirmed by the cubic-residue-class
///    protocol over F_5, F_7, F_13.
fn weyl_strata_against_counts() -> Outcome {
    let mt = MotiveClass::mtilde();
    let unit_expected = [
        lp(&[(9, 1), (6, -1)]),
        lp(&[(8, 1)]) - mt.shift(12),
        lp(&[(7, 1)]) - mt.shift(10),
    ];
    let zero_expected = [lp(&[(9, 1), (7, 1), (6, -1)]), lp(&[(8, 1)]), lp(&[(7, 1)])];
    for (level, expected) in [(1u8, &unit_expected), (0u8, &zero_expected)] {
        let classes = weyl_cell_classes(level);
        for (i, (got, want)) in classes.iter().zip(expected.iter()).enumerate() {
            if got != want {
                return Err(format!(
                    "level-{level} stratum {} closed form: got {got}, want {want}",
                    i + 1
                ));
            }
        }
    }
    let reports = verify_cells("weyl", &[5, 7, 13], &SequentialRunner).map_err(es)?;
    all_pass(&reports)?;
    Ok(format!(
        "6 closed forms exact; {} residue-class count checks at q=5,7,13 all match",
        reports.len()
    ))
}

/// 6. The t^2 coefficient of the commutator-case series equals its closed
///    form and the plethystic exponential of the conjectured bracket,
///    including the sigma_2 rule for the torsor tag.
fn weyl_final_coefficient() -> Outcome {
    let table = catalog::weyl_table();
    let u = u_series(&table, 2).map_err(es)?;
    let num = lp(&[(4, 1), (3, -1)])
        + MotiveClass::mtilde().mul(&lp(&[(3, 1), (1, -1)])).map_err(es)?
        + MotiveClass::mtilde2().shift(4);
    let den = lp(&[(2, 1), (0, -1)]).mul(&lp(&[(1, 1), (0, -1)])).map_err(es)?;
    let closed = MotiveRatio::new(num, den).map_err(es)?;
    if !u.coeff(2).eq(&closed) {
        return Err(format!(
            "u_2: got {}, want {}",
            display_ratio(u.coeff(2)),
            display_ratio(&closed)
        ));
    }
    let reports = verify_u_series("weyl").map_err(es)?;
    all_pass(&reports)?;
    Ok("u_2 matches its closed form and the expanded conjectured bracket".into())
}

/// 7. The functional equation holds to t^2 for both cases, and the
///    rank-stratified pair counts over F_2, F_3 shadow the stratification.
fn functional_equation_and_pair_shadow() -> Outcome {
    for case in ["quantum", "weyl"] {
        let table = match case {
            "quantum" => catalog::quantum_table(),
            _ => catalog::weyl_table(),
        };
        functional_equation_check(&table, 2).map_err(|e| format!("{case}: {e}"))?;
    }
    let odd = verify_pair_strata("quantum", &[3], &SequentialRunner).map_err(es)?;
    all_pass(&odd)?;
    let even = verify_pair_strata("quantum", &[2], &SequentialRunner).map_err(es)?;
    let warns = no_failures(&even)?;
    Ok(format!(
        "functional equation exact to t^2 in both cases; pair strata match at q=3 \
         ({} checks); {} q=2 checks recorded as warnings",
        odd.len(),
        warns
    ))
}

/// 8. Property grid: ring axioms, evaluation homomorphism at four primes,
///    Exp/Log round trip to order 5, oracle partition and scaling
///    invariance, and product-form vs Adams-form agreement.
fn property_grid() -> Outcome {
    let basis = [
        lp(&[(0, 1)]),
        lp(&[(1, 1)]),
        lp(&[(3, 1), (0, -2)]),
        lp(&[(-1, 2), (2, -1)]),
        MotiveClass::mtilde().shift(4) - lp(&[(1, 3)]),
        MotiveClass::mtilde2() - MotiveClass::mtilde(),
    ];
    let mut checked = 0usize;

    // ring axioms: commutativity, associativity, distributivity
    for a in &basis {
        for b in &basis {
            if a.clone() + b.clone() != b.clone() + a.clone() {
                return Err(format!("addition is not commutative on {a}, {b}"));
            }
            match (a.mul(b), b.mul(a)) {
                (Ok(x), Ok(y)) if x == y => checked += 1,
                (Err(_), Err(_)) => {}
                _ => return Err(format!("multiplication is not commutative on {a}, {b}")),
            }
            for c in &basis {
                if (a.clone() + b.clone()) + c.clone() != a.clone() + (b.clone() + c.clone()) {
                    return Err(format!("addition is not associative on {a}, {b}, {c}"));
                }
                if let (Ok(ab), Ok(ac)) = (a.mul(b), a.mul(c)) {
                    let direct = a.mul(&(b.clone() + c.clone())).map_err(es)?;
                    if direct != ab.clone() + ac {
                        return Err(format!("distributivity fails on {a}, {b}, {c}"));
                    }
                    checked += 1;
                }
                if let Ok(ab) = a.mul(b) {
                    if let (Ok(abc), Ok(bc)) = (ab.mul(c), b.mul(c)) {
                        if let Ok(a_bc) = a.mul(&bc) {
                            if abc != a_bc {
                                return Err(format!(
                                    "multiplication is not associative on {a}, {b}, {c}"
                                ));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }

    // evaluation is a ring homomorphism at four primes (negative powers of
    // L carry no point count, so such classes are outside eval's domain)
    for q in [2u64, 5, 7, 13] {
        let count = mu3_count(q);
        let qb = BigInt::from(q);
        for a in &basis {
            for b in &basis {
                let (ea, eb) = match (a.eval(&qb, count), b.eval(&qb, count)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => continue,
                };
                let sum = (a.clone() + b.clone()).eval(&qb, count).map_err(es)?;
                if sum != &ea + &eb {
                    return Err(format!("eval is not additive on {a}, {b} at q={q}"));
                }
                checked += 1;
                if let Ok(p) = a.mul(b) {
                    if p.eval(&qb, count).map_err(es)? != ea * eb {
                        return Err(format!("eval is not multiplicative on {a}, {b} at q={q}"));
                    }
                    checked += 1;
                }
            }
        }
    }

    // Exp then Log is the identity to order 5 on tag-free input
    let mut f = Series::zero(0, 5);
    f.set_coeff(
        1,
        MotiveRatio::new(lp(&[(1, 2), (0, -1)]), lp(&[(1, 1), (0, -1)])).map_err(es)?,
    );
    f.set_coeff(2, MotiveRatio::from_class(lp(&[(2, 1), (0, -1)])));
    f.set_coeff(3, MotiveRatio::int(-2));
    f.set_coeff(4, MotiveRatio::from_class(lp(&[(3, 1), (1, -1)])));
    f.set_coeff(5, MotiveRatio::int(5));
    let back = pleth_log(&pleth_exp(&f).map_err(es)?).map_err(es)?;
    for k in 0..=5 {
        if !back.coeff(k).eq(f.coeff(k)) {
            return Err(format!("Exp/Log round trip drifts at t^{k}"));
        }
        checked += 1;
    }

    // oracle partition and scaling invariance on the smallest stratum
    for w in [Superpotential::quantum(), Superpotential::weyl()] {
        let spec = cell_specs(&w, 1).map_err(es)?[2].clone();
        let task = CountTask::from_spec(&spec, 7).map_err(es)?;
        let counts = count_by_value(&task, &SequentialRunner).map_err(es)?;
        let total: u64 = counts.iter().sum();
        if BigInt::from(total) != BigInt::from(7u64).pow(spec.dim) {
            return Err(format!("{}: counts do not partition affine space", spec.name));
        }
        class_counts(&spec.name, &counts, 7).map_err(es)?;
        checked += 2;
    }

    // product-form Exp agrees with the Adams-form Exp on Laurent input
    let mut h = Series::zero(0, 4);
    h.set_coeff(1, MotiveRatio::new(lp(&[(1, 1)]), lp(&[(1, 1), (0, -1)])).map_err(es)?);
    h.set_coeff(2, MotiveRatio::from_class(lp(&[(1, 1), (0, -1)])));
    let lmin = -4;
    let via_product = exp_product_form(&h, lmin).map_err(es)?;
    let via_adams = pleth_exp(&h).map_err(es)?;
    for k in 0..=4 {
        let truncated = laurent_expand(via_adams.coeff(k), lmin).map_err(es)?;
        if via_product.coeff(k).num() != &truncated {
            return Err(format!("product form differs from Adams form at t^{k}"));
        }
        checked += 1;
    }

    Ok(format!(
        "ring axioms, eval homomorphism, Exp/Log round trip, oracle partition \
         and scaling, product-form agreement: {checked} grid checks"
    ))
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            label: "anticommutator strata closed forms vs finite-field counts",
            budget: Duration::from_secs(180),
            run: quantum_strata_against_counts,
        },
        Criterion {
            label: "anticommutator rank-2 induction",
            budget: Duration::from_secs(1),
            run: quantum_induction,
        },
        Criterion {
            label: "dimensional reduction and pair-scheme interpolation",
            budget: Duration::from_secs(300),
            run: dimensional_reduction,
        },
        Criterion {
            label: "plethystic exponential t^2 coefficient (anticommutator)",
            budget: Duration::from_secs(1),
            run: quantum_exp_coefficient,
        },
        Criterion {
            label: "commutator strata closed forms vs residue-class counts",
            budget: Duration::from_secs(720),
            run: weyl_strata_against_counts,
        },
        Criterion {
            label: "commutator final coefficient vs conjectured bracket",
            budget: Duration::from_secs(60),
            run: weyl_final_coefficient,
        },
        Criterion {
            label: "functional equation and pair-strata shadow",
            budget: Duration::from_secs(120),
            run: functional_equation_and_pair_shadow,
        },
        Criterion {
            label: "property grid",
            budget: Duration::from_secs(60),
            run: property_grid,
        },
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let idx = i + 1;
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) if elapsed <= c.budget => {
                println!("criterion {idx} ({}): pass — {detail} [{elapsed:.2?}]", c.label);
            }
            Ok(detail) => {
                println!(
                    "criterion {idx} ({}): FAIL — checks passed but runtime {elapsed:.2?} \
                     exceeds the {:?} budget; {detail}",
                    c.label, c.budget
                );
                failed.push(idx);
            }
            Err(why) => {
                println!("criterion {idx} ({}): FAIL — {why}", c.label);
                failed.push(idx);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

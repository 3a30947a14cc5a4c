//! End-to-end consistency: the full verification suites must come back
//! free of failures, and deliberately perturbed inputs must be caught.

use dtmotive::catalog;
use dtmotive::count::SequentialRunner;
use dtmotive::dt::{functional_equation_check, induct_fiber, TableKind};
use dtmotive::motive::MotiveClass;
use dtmotive::strata::cell_specs;
use dtmotive::verify::{
    has_failure, suite, verify_stratum_class, CheckStatus,
};
use dtmotive::Superpotential;

#[test]
fn quantum_suite_is_clean() {
    let reports = suite("quantum", &[2, 5, 7], &SequentialRunner).unwrap();
    assert!(!reports.is_empty());
    assert!(
        !has_failure(&reports),
        "failures: {:?}",
        reports
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .map(|r| format!("{} at {}: {} vs {}", r.name, r.location, r.lhs, r.rhs))
            .collect::<Vec<_>>()
    );
    // characteristic 2 shows up as warnings, honestly reported
    assert!(reports.iter().any(|r| r.status == CheckStatus::Warn));
    // everything away from q = 2 must pass outright
    for r in reports.iter().filter(|r| !r.location.contains("q=2")) {
        assert_eq!(r.status, CheckStatus::Pass, "{} at {}", r.name, r.location);
    }
}

#[test]
fn weyl_suite_is_clean() {
    let reports = suite("weyl", &[5, 7, 13], &SequentialRunner).unwrap();
    assert!(!has_failure(&reports));
    // the only warnings are the formal-square skips at q = 1 mod 3
    for r in reports.iter().filter(|r| r.status == CheckStatus::Warn) {
        assert!(
            r.lhs.contains("torsor-square"),
            "unexpected warning {} at {}",
            r.name,
            r.location
        );
    }
}

#[test]
fn perturbed_class_is_caught_by_counting() {
    let w = Superpotential::quantum();
    let spec = &cell_specs(&w, 1).unwrap()[2];
    let good = catalog::quantum_cell_classes_unit()[2].clone();
    let bad = good.clone() + MotiveClass::l_pow(3);
    let reports = verify_stratum_class("perturbed", &bad, spec, 5, &SequentialRunner).unwrap();
    assert!(has_failure(&reports));
    let reports = verify_stratum_class("good", &good, spec, 5, &SequentialRunner).unwrap();
    assert!(!has_failure(&reports));
}

#[test]
fn perturbed_table_breaks_the_functional_equation() {
    // the order-2 functional equation sees the unit-level framed class...
    let mut table = catalog::quantum_table();
    let bumped = table.bs(2, 1).unwrap().clone() + MotiveClass::l_pow(2);
    table.insert(2, 1, TableKind::Bs, bumped);
    assert!(functional_equation_check(&table, 2).is_err());
}

#[test]
fn perturbed_table_breaks_the_fiber_induction() {
    // ...while the zero-level framed class (invisible to the functional
    // equation at this order: it multiplies a series with no constant
    // term) is caught by the rank-2 induction instead
    let mut table = catalog::quantum_table();
    assert!(functional_equation_check(&table, 2).is_ok());
    let bumped = table.bs(2, 0).unwrap().clone() + MotiveClass::l_pow(2);
    table.insert(2, 0, TableKind::Bs, bumped);
    assert!(functional_equation_check(&table, 2).is_ok());
    let inducted = induct_fiber(&table, 2, 0).unwrap();
    assert_ne!(&inducted, table.fiber(2, 0).unwrap());
}

#[test]
fn unknown_case_is_a_usage_error() {
    assert!(suite("klein", &[5], &SequentialRunner).is_err());
    assert!(catalog::catalog_entries("klein").is_err());
}

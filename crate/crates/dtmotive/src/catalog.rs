//! Closed-form classes for the two built-in potentials, assembled into
//! ready-to-use tables.
//!
//! Every class below is cross-checked elsewhere in the test suite: against
//! the inductive pipeline, against plethystic expansions, and against
//! independent point counts over several prime fields.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::dt::{MotiveTable, TableKind};
use crate::error::{Error, Result};
use crate::motive::{EquivTag, MotiveClass};

/// sum of c * tag * L^e from (coefficient, exponent) pairs
fn tagged(tag: EquivTag, coeffs: &[(i64, i64)]) -> MotiveClass {
    let mut out = MotiveClass::zero();
    for &(c, e) in coeffs {
        out = out + MotiveClass::monomial(2 * e, tag, BigInt::from(c));
    }
    out
}

fn lp(coeffs: &[(i64, i64)]) -> MotiveClass {
    tagged(EquivTag::Unit, coeffs)
}

fn mt(coeffs: &[(i64, i64)]) -> MotiveClass {
    tagged(EquivTag::Mtilde, coeffs)
}

fn mt2(coeffs: &[(i64, i64)]) -> MotiveClass {
    tagged(EquivTag::Mtilde2, coeffs)
}

/// Rank-1 and rank-2 classes of `XYZ + XZY`.
pub fn quantum_table() -> MotiveTable {
    let mut t = MotiveTable::new(3);
    // in rank one the fiber and its Brauer-Severi-type class coincide
    let f1_unit = lp(&[(1, 2), (-2, 1), (1, 0)]); // (L-1)^2
    let f1_zero = lp(&[(3, 2), (-3, 1), (1, 0)]);
    t.insert(1, 1, TableKind::Fiber, f1_unit.clone());
    t.insert(1, 0, TableKind::Fiber, f1_zero.clone());
    t.insert(1, 1, TableKind::Bs, f1_unit);
    t.insert(1, 0, TableKind::Bs, f1_zero);

    t.insert(2, 1, TableKind::Fiber, lp(&[(1, 11), (-1, 8), (-3, 7), (2, 6), (2, 5), (-1, 4)]));
    t.insert(2, 0, TableKind::Fiber, lp(&[(1, 11), (1, 9), (2, 8), (-5, 7), (3, 5), (-1, 4)]));
    t.insert(2, 1, TableKind::Bs, lp(&[(1, 9), (1, 8), (1, 7), (-1, 6), (-4, 5), (2, 4)]));
    t.insert(2, 0, TableKind::Bs, lp(&[(1, 9), (1, 8), (2, 7), (3, 6), (-6, 5), (2, 4)]));
    t
}

/// Rank-1 and rank-2 classes of `XYZ - XZY - 1/3 XXX`. Classes carry the
/// order-3 equivariant parts Mt = 1 - [mu_3] and Mt2 = Mt * Mt.
pub fn weyl_table() -> MotiveTable {
    let mut t = MotiveTable::new(3);
    let f1_unit = lp(&[(1, 2)]) + mt(&[(-1, 2)]); // L^2 [mu_3]
    let f1_zero = lp(&[(1, 2)]);
    t.insert(1, 1, TableKind::Fiber, f1_unit.clone());
    t.insert(1, 0, TableKind::Fiber, f1_zero.clone());
    t.insert(1, 1, TableKind::Bs, f1_unit);
    t.insert(1, 0, TableKind::Bs, f1_zero);

    t.insert(
        2,
        1,
        TableKind::Fiber,
        lp(&[(1, 11), (-1, 8), (1, 7)]) + mt(&[(-3, 8), (2, 7), (1, 6)]) + mt2(&[(1, 8), (-2, 7)]),
    );
    t.insert(
        2,
        0,
        TableKind::Fiber,
        lp(&[(1, 11), (1, 9), (-2, 8), (1, 7)]) + mt(&[(-2, 8), (2, 7)]) + mt2(&[(1, 8), (-1, 7)]),
    );
    t.insert(
        2,
        1,
        TableKind::Bs,
        lp(&[(1, 9), (1, 8), (1, 7), (-1, 6)]) + mt(&[(-1, 6), (-1, 5)]),
    );
    t.insert(2, 0, TableKind::Bs, lp(&[(1, 9), (1, 8), (2, 7), (-1, 6)]));
    t
}

/// Classes of the three rank-two cells of `XYZ + XZY` at unit level
/// (cell 1, cell 2, cell 3).
pub fn quantum_cell_classes_unit() -> [MotiveClass; 3] {
    [
        lp(&[(1, 9), (-1, 6), (-2, 5), (3, 4), (-1, 3)]),
        lp(&[(1, 8), (-2, 5), (1, 4)]),
        lp(&[(1, 7), (-2, 4), (1, 3)]),
    ]
}

/// Classes of the three rank-two cells of `XYZ - XZY - 1/3 XXX`.
pub fn weyl_cell_classes(lambda: u8) -> [MotiveClass; 3] {
    if lambda == 0 {
        [lp(&[(1, 9), (1, 7), (-1, 6)]), lp(&[(1, 8)]), lp(&[(1, 7)])]
    } else {
        [
            lp(&[(1, 9), (-1, 6)]),
            lp(&[(1, 8)]) + mt(&[(-1, 6)]),
            lp(&[(1, 7)]) + mt(&[(-1, 5)]),
        ]
    }
}

/// Class of the scheme of pairs (X, Y) of 2x2 matrices with XY + YX = 0:
/// `L^5 + 3L^4 - 2L^3 - 2L^2 + L`. Dimensional reduction twists this into
/// the rank-two difference class of `XYZ + XZY`.
pub fn quantum_pair_scheme() -> MotiveClass {
    lp(&[(1, 5), (3, 4), (-2, 3), (-2, 2), (1, 1)])
}

/// Class of the Grassmannian of planes in 4-space,
/// `(L^2 + 1)(L^2 + L + 1)`; the pair scheme fibers over a cone on its
/// Pluecker embedding.
pub fn grassmannian_2_4() -> MotiveClass {
    lp(&[(1, 4), (1, 3), (2, 2), (1, 1), (1, 0)])
}

/// One display row of the built-in catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub label: &'static str,
    pub class: MotiveClass,
}

/// All closed-form classes for one of the built-in cases
/// ("quantum" or "weyl").
pub fn catalog_entries(case: &str) -> Result<Vec<CatalogEntry>> {
    let entry = |key, label, class| CatalogEntry { key, label, class };
    match case {
        "quantum" => {
            let t = quantum_table();
            let [s1, s2, s3] = quantum_cell_classes_unit();
            Ok(vec![
                entry("fiber-1-unit", "rank-1 trace fiber, unit level", t.fiber(1, 1)?.clone()),
                entry("fiber-1-zero", "rank-1 trace fiber, zero level", t.fiber(1, 0)?.clone()),
                entry("fiber-2-unit", "rank-2 trace fiber, unit level", t.fiber(2, 1)?.clone()),
                entry("fiber-2-zero", "rank-2 trace fiber, zero level", t.fiber(2, 0)?.clone()),
                entry("bs-2-unit", "rank-2 framed fiber, unit level", t.bs(2, 1)?.clone()),
                entry("bs-2-zero", "rank-2 framed fiber, zero level", t.bs(2, 0)?.clone()),
                entry("cell-1-unit", "first cell of the rank-2 framed fiber, unit level", s1),
                entry("cell-2-unit", "second cell of the rank-2 framed fiber, unit level", s2),
                entry("cell-3-unit", "third cell of the rank-2 framed fiber, unit level", s3),
                entry("delta-2", "rank-2 difference class", t.delta(2, TableKind::Fiber)?),
                entry("pair-scheme", "2x2 anticommuting matrix pairs", quantum_pair_scheme()),
                entry("grassmannian-2-4", "planes in 4-space", grassmannian_2_4()),
            ])
        }
        "weyl" => {
            let t = weyl_table();
            let [s1, s2, s3] = weyl_cell_classes(1);
            let [z1, z2, z3] = weyl_cell_classes(0);
            Ok(vec![
                entry("fiber-1-unit", "rank-1 trace fiber, unit level", t.fiber(1, 1)?.clone()),
                entry("fiber-1-zero", "rank-1 trace fiber, zero level", t.fiber(1, 0)?.clone()),
                entry("fiber-2-unit", "rank-2 trace fiber, unit level", t.fiber(2, 1)?.clone()),
                entry("fiber-2-zero", "rank-2 trace fiber, zero level", t.fiber(2, 0)?.clone()),
                entry("bs-2-unit", "rank-2 framed fiber, unit level", t.bs(2, 1)?.clone()),
                entry("bs-2-zero", "rank-2 framed fiber, zero level", t.bs(2, 0)?.clone()),
                entry("cell-1-unit", "first cell of the rank-2 framed fiber, unit level", s1),
                entry("cell-2-unit", "second cell of the rank-2 framed fiber, unit level", s2),
                entry("cell-3-unit", "third cell of the rank-2 framed fiber, unit level", s3),
                entry("cell-1-zero", "first cell of the rank-2 framed fiber, zero level", z1),
                entry("cell-2-zero", "second cell of the rank-2 framed fiber, zero level", z2),
                entry("cell-3-zero", "third cell of the rank-2 framed fiber, zero level", z3),
                entry("delta-2", "rank-2 difference class", t.delta(2, TableKind::Fiber)?),
            ])
        }
        other => Err(Error::ParseError {
            position: 0,
            message: alloc::format!("unknown case {other:?}; expected quantum or weyl"),
        }),
    }
}

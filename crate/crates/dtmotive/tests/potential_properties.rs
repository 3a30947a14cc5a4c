//! Properties of the noncommutative-potential layer: cyclic invariance,
//! weight homogeneity of derived equations, and scaling symmetry of
//! counts for random cubic potentials.

use num_rational::BigRational;
use proptest::prelude::*;

use dtmotive::count::{class_counts, count_by_value, CountTask, SequentialRunner};
use dtmotive::potential::CubicParams;
use dtmotive::strata::cell_specs;
use dtmotive::trace::trace_expand;
use dtmotive::Superpotential;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn params() -> impl Strategy<Value = CubicParams> {
    (-3i64..4, -3i64..4, -3i64..4, -3i64..4, 1i64..4).prop_map(|(a, b, c, d, e)| CubicParams {
        alpha: rat(a),
        beta: rat(b),
        gamma: rat(c),
        delta: rat(d),
        epsilon: rat(e),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn traces_are_cyclically_invariant(word in prop::collection::vec(0u8..3, 1..5), r in 0usize..4) {
        // a cyclic word is the same potential whatever letter it starts
        // on, and expands to the same trace polynomial
        let mut rotated = word.clone();
        rotated.rotate_left(r % word.len());
        let w1 = Superpotential::from_terms([(word, rat(1))]);
        let w2 = Superpotential::from_terms([(rotated, rat(1))]);
        prop_assert_eq!(format!("{w1}"), format!("{w2}"));
        let t1 = trace_expand(&w1, 2);
        let t2 = trace_expand(&w2, 2);
        prop_assert_eq!(t1.term_strings(), t2.term_strings());
    }

    #[test]
    fn derived_equations_are_weight_homogeneous(p in params()) {
        let w = Superpotential::cubic_normal_form(&p);
        for spec in cell_specs(&w, 1).unwrap().iter() {
            prop_assert_eq!(spec.scaling_weight(), Some(3), "{}", spec.name);
        }
    }

    #[test]
    fn counts_only_depend_on_the_cube_coset(p in params()) {
        // the small cell is cheap to count exhaustively at q = 7; its
        // counts must be constant on each cubic-residue class of the level
        let w = Superpotential::cubic_normal_form(&p);
        let spec = &cell_specs(&w, 1).unwrap()[2];
        let task = CountTask::from_spec(spec, 7).unwrap();
        let counts = count_by_value(&task, &SequentialRunner).unwrap();
        prop_assert!(class_counts(&spec.name, &counts, 7).is_ok());
        prop_assert_eq!(counts.iter().sum::<u64>(), 7u64.pow(spec.dim));
    }

    #[test]
    fn normal_form_round_trips_through_parse(p in params()) {
        let w = Superpotential::cubic_normal_form(&p);
        let text = format!("{w}");
        if w.is_zero() {
            return Ok(());
        }
        let back = Superpotential::parse(&text).unwrap();
        let again = format!("{back}");
        prop_assert_eq!(text, again);
    }
}

#[test]
fn quantum_and_weyl_are_cubic_normal_forms() {
    for w in [Superpotential::quantum(), Superpotential::weyl()] {
        let p = w.cubic_params().expect("built-in potentials are in normal form");
        let back = Superpotential::cubic_normal_form(&p);
        assert_eq!(format!("{w}"), format!("{back}"));
    }
}

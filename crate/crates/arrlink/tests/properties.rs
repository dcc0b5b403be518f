//! Property tests over random line arrangements and random pencil
//! configurations.

mod common;

use arrlink::arrangement::{Arrangement, FamilySpec};
use arrlink::invariants::{degree_after_adding, residual_degree, tjurina, tjurina_bounds};
use arrlink::poly::LinearForm;
use arrlink::resolution::{
    disconnected_jacobian, disconnected_pencils_residual, disconnected_pencils_top, milnor_duality_check,
};
use proptest::prelude::*;

fn lines() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..9).prop_filter_map("not an arrangement", |rows| {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Arrangement::from_i64(2, &refs).ok()
    })
}

fn pencils() -> impl Strategy<Value = (Vec<usize>, usize)> {
    (prop::collection::vec(3usize..7, 1..4), 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn lattice_matches_direct_rank_computation(a in lines()) {
        let lib: Vec<Vec<usize>> = a.lattice().member_sets().into_iter().collect();
        prop_assert_eq!(lib, common::independent_flats(&a));
        let d = a.d();
        prop_assert_eq!(tjurina(a.lattice()) + residual_degree(a.lattice()), d * (d - 1));
    }

    #[test]
    fn tjurina_respects_the_bounds(a in lines()) {
        let r = tjurina_bounds(a.lattice()).unwrap();
        prop_assert!(r.tau >= r.lower);
        prop_assert!(r.upper_b.map_or(true, |b| r.tau <= b));
        prop_assert!(r.upper_c.map_or(true, |c| r.tau <= c));
    }

    #[test]
    fn adding_a_line_raises_the_residual_degree_by_its_traces(a in lines(), h in prop::collection::vec(-4i64..=4, 3)) {
        let h = LinearForm::from_i64(&h);
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        let bigger = a.with_hyperplane(h.clone());
        prop_assume!(bigger.is_ok());
        let bigger = bigger.unwrap();
        prop_assert_eq!(degree_after_adding(&a, &h).unwrap(), residual_degree(bigger.lattice()));
    }

    #[test]
    fn text_format_round_trips(a in lines()) {
        let b = Arrangement::parse(&a.to_text()).unwrap();
        prop_assert_eq!(b.to_text(), a.to_text());
        prop_assert_eq!(b.lattice().member_sets(), a.lattice().member_sets());
    }

    #[test]
    fn disconnected_pencil_tables_are_consistent((ts, s) in pencils(), seed in 0u64..50) {
        let spec = FamilySpec::Disconnected { multiplicities: ts, s };
        let a = spec.build(seed).unwrap();
        let l = a.lattice();
        let d = l.d();
        prop_assume!(!l.multiplicities().contains(&d));
        let r = disconnected_pencils_residual(l).unwrap();
        let top = disconnected_pencils_top(l).unwrap();
        // Both schemes are zero-dimensional, so their Hilbert functions settle
        // at the degree by 2d.
        let hr = r.hilbert_function(3, 2 * d);
        let ht = top.hilbert_function(3, 2 * d);
        prop_assert_eq!(hr[2 * d], residual_degree(l) as i64);
        prop_assert_eq!(ht[2 * d], tjurina(l) as i64);
        prop_assert_eq!(r.regularity(), d as i64 - 1);
        let j = disconnected_jacobian(l).unwrap();
        if let Some(m) = &j.milnor {
            prop_assert!(milnor_duality_check(m, d));
        }
    }
}

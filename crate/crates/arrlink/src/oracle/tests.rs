use super::*;
use crate::arrangement::FamilySpec;
use crate::residual::choose_general_form;

fn family(spec: &str) -> Arrangement {
    spec.parse::<FamilySpec>().unwrap().build(5).unwrap()
}

fn p(s: &str) -> Poly {
    Poly::parse(s, 3).unwrap()
}

#[test]
fn pencil_jacobian_is_a_complete_intersection() {
    let oracle = Oracle::new();
    for d in 3..=5 {
        let j = oracle.jacobian_ideal(&family(&format!("pencil:{d}"))).unwrap();
        assert_eq!(j.dim(d - 1).unwrap(), 2);
        assert_eq!(j.dim(d - 2).unwrap(), 0);
    }
}

#[test]
fn generic_three_lines() {
    let oracle = Oracle::new();
    let a = family("generic:3");
    let j = oracle.jacobian_ideal(&a).unwrap();
    assert_eq!(j.dim(2).unwrap(), 3);
    assert_eq!(j.hilbert_function(5).unwrap(), vec![1, 3, 3, 3, 3, 3]);
    assert_eq!(j.minimal_generator_counts(5).unwrap(), BTreeMap::from([(2, 3)]));
    let top = oracle.top_part(&a).unwrap();
    for k in 0..=4 {
        assert_eq!(top.dim(k).unwrap(), j.dim(k).unwrap(), "degree {k}");
    }
    assert_eq!(top.minimal_generator_counts(5).unwrap(), BTreeMap::from([(2, 3)]));
}

#[test]
fn generic_four_lines_are_not_saturated() {
    let oracle = Oracle::new();
    let a = family("generic:4");
    assert_eq!(oracle.top_part(&a).unwrap().dim(3).unwrap(), 4);
    assert_eq!(oracle.jacobian_ideal(&a).unwrap().dim(3).unwrap(), 3);
}

#[test]
fn unit_ideal_has_zero_hilbert_function() {
    let oracle = Oracle::new();
    let unit = oracle.generated("unit", vec![p("1")]).unwrap();
    assert_eq!(unit.hilbert_function(4).unwrap(), vec![0; 5]);
    assert_eq!(unit.minimal_generator_counts(4).unwrap(), BTreeMap::from([(0, 1)]));
}

#[test]
fn colon_of_the_triangle() {
    let oracle = Oracle::new();
    let a = family("simplex:2");
    let l = choose_general_form(&a, 0);
    let jac = oracle.jacobian_ideal(&a).unwrap();
    let ci = oracle.ci_ideal(&a, &l).unwrap();
    assert_eq!(oracle.colon_dim(&ci, &jac, 2).unwrap(), 3);
    assert_eq!(oracle.colon_degreewise(&ci, &jac, 2).unwrap().len(), 3);
    // A colon of an ideal by itself is everything.
    for k in 0..=3 {
        assert_eq!(oracle.colon_dim(&jac, &jac, k).unwrap(), n_j(k));
    }
}

#[test]
fn colon_of_a_pencil_is_its_residual() {
    let oracle = Oracle::new();
    let a = family("pencil:3");
    let l = choose_general_form(&a, 1);
    let jac = oracle.jacobian_ideal(&a).unwrap();
    let ci = oracle.ci_ideal(&a, &l).unwrap();
    let r = oracle.residual_ideal(&a, &l).unwrap();
    assert!(oracle.compare_colon(&ci, &jac, &r, 6).unwrap().equal());
    // A wrong target is detected: the auxiliary ideal is smaller in degree 2.
    let aux = oracle.auxiliary_ideal(&a, &l).unwrap();
    let cmp = oracle.compare_colon(&ci, &jac, &aux, 6).unwrap();
    assert_eq!(cmp.mismatches.first(), Some(&2));
}

#[test]
fn complete_intersection_of_two_conics() {
    let oracle = Oracle::new();
    let ci = oracle
        .complete_intersection(&p("x0^2 - x1*x2"), &p("x1^2 + x0*x2 - x2^2"))
        .unwrap();
    let res = oracle.betti_cm_codim2(&ci, 5).unwrap();
    assert_eq!(res.modules(), &[vec![2, 2], vec![4]]);
    assert!(oracle.complete_intersection(&p("x0*x1"), &p("x0*x2")).is_err());
    let jac = oracle.jacobian_ideal(&family("generic:4")).unwrap();
    assert!(matches!(oracle.betti_cm_codim2(&jac, 8), Err(Error::NotCohenMacaulay(_))));
}

#[test]
fn saturation_of_generic_lines() {
    let oracle = Oracle::new();
    for d in 4..=5 {
        let top = oracle.top_part(&family(&format!("generic:{d}"))).unwrap();
        let res = oracle.betti_cm_codim2(&top, 2 * d).unwrap();
        let di = d as i64;
        assert_eq!(res.modules(), &[vec![di - 1; d], vec![di; d - 1]]);
    }
}

#[test]
fn minimal_generators_of_residuals() {
    let oracle = Oracle::new();
    for spec in ["generic:4", "near-pencil:5", "simplex:2"] {
        let a = family(spec);
        let l = choose_general_form(&a, 2);
        let r = oracle.residual_ideal(&a, &l).unwrap();
        let fl = directional_derivative(&a.defining_polynomial(), l.form());
        assert!(r.contains(&fl).unwrap());
        assert!(r.is_minimal_generator(&fl).unwrap(), "{spec}");
        // A multiple of a lower degree element is never minimal.
        let low = r.basis(a.d() - 2).unwrap();
        if let Some(g) = low.first() {
            let q = g * &p("x0 + 3*x1");
            assert!(r.contains(&q).unwrap());
            assert!(!r.is_minimal_generator(&q).unwrap());
        }
    }
}

#[test]
fn refuses_out_of_scope_input() {
    let oracle = Oracle::new().with_cap(5);
    assert!(matches!(oracle.jacobian_ideal(&family("generic:6")), Err(Error::OracleCap(_))));
    assert!(matches!(oracle.jacobian_ideal(&family("generic:4,3")), Err(Error::InvalidArgument(_))));
    assert!(Oracle::new().with_field(Field::Prime(4)).is_err());
}

#[test]
fn prime_mode_gives_the_same_numbers() {
    let a = family("near-pencil:5");
    let l = choose_general_form(&a, 0);
    let q = Oracle::new().residual_ideal(&a, &l).unwrap();
    let zp = Oracle::new()
        .with_field(Field::Prime(1_000_000_007))
        .unwrap()
        .residual_ideal(&a, &l)
        .unwrap();
    assert_eq!(q.hilbert_function(8).unwrap(), zp.hilbert_function(8).unwrap());
    assert_eq!(q.minimal_generator_counts(8).unwrap(), zp.minimal_generator_counts(8).unwrap());
}

fn assert_verified(spec: &str, skips: usize) {
    let a = family(spec);
    let l = choose_general_form(&a, 0);
    let report = Oracle::new().verify_all(&a, &l, 2 * a.d()).unwrap();
    assert!(report.all_passed(), "{spec}:\n{}", report.to_text());
    assert!(report.checks.iter().filter(|c| c.passed.is_none()).count() <= skips, "{}", report.to_text());
}

#[test]
fn verify_triangle() {
    assert_verified("simplex:2", 0);
}

#[test]
fn verify_braid_arrangement() {
    // No rule predicts the tables of the braid arrangement.
    assert_verified("fermat:2", 2);
}

#[test]
fn verify_three_pencils_case_three() {
    assert_verified("three-pencils:iii,2,2,2", 0);
}

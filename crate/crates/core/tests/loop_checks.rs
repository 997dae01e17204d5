use qpalg_core::catalog::CatalogSpec;
use qpalg_core::loop_algebra::{grading_and_twist, jacobi_window_check, nth_products, reduced_form_comparison};
use qpalg_core::Scalar;

#[test]
fn ck6_loop_algebra_is_lie() {
    let a = CatalogSpec::ck6().build().unwrap();
    let r = jacobi_window_check(&a, 2);
    assert!(r.passed() && r.holds_for_all_modes && r.window_certifies);
    assert_eq!(r.triples, 32 * 32 * 32);
}

#[test]
fn s_half_loop_algebra_is_lie() {
    let a = CatalogSpec::s(2, Scalar::frac(1, 2)).unwrap().build().unwrap();
    assert!(jacobi_window_check(&a, 3).passed());
}

#[test]
fn mutated_k2_fails_with_a_witness() {
    let a = CatalogSpec::k(2).build().unwrap();
    let bad = a.with_bracket_constant(1, 2, 0, Scalar::int(2)).unwrap();
    let r = jacobi_window_check(&bad, 2);
    let w = r.witness.expect("witness");
    assert!(w.modes.is_some() && !w.residual.is_empty());
}

#[test]
fn every_catalog_algebra_has_a_consistent_conformal_structure() {
    for spec in qpalg_core::catalog::standard_sweep() {
        let a = spec.build().unwrap();
        assert!(nth_products(&a).first_product_symmetry().passed(), "{spec}");
        assert!(reduced_form_comparison(&a).equal, "{spec}");
        let g = grading_and_twist(&a, 2).unwrap();
        assert!(g.passed(), "{spec}: {:?}", g.checks);
    }
}

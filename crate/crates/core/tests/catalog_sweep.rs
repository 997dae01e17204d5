use qpalg_core::catalog::{alpha_sample, build_ck6, build_k, build_s, standard_sweep, CatalogSpec};
use qpalg_core::qp::{compatibility_check, derived_identities, poisson_leibniz, verify_axioms};
use qpalg_core::Scalar;

#[test]
fn every_catalog_algebra_is_quasi_poisson() {
    for spec in standard_sweep() {
        let a = spec.build().unwrap();
        assert!(verify_axioms(&a).passed(), "{spec}");
        assert!(derived_identities(&a).passed(), "{spec}");
        assert!(compatibility_check(&a).passed(), "{spec}");
        let r = a.reduce();
        assert!(verify_axioms(&r).passed(), "reduced {spec}");
        assert_eq!(r.reduce(), r, "{spec}");
    }
}

#[test]
fn reduced_s_forgets_alpha() {
    for n in [2, 3] {
        let base = build_s(n, &Scalar::zero()).unwrap().reduce();
        for alpha in alpha_sample() {
            let r = build_s(n, &alpha).unwrap().reduce();
            assert_eq!(r.bracket_table(), base.bracket_table(), "N={n} α={alpha}");
            assert_eq!(r.mul_table(), base.mul_table());
        }
        // Before reduction the brackets do depend on α.
        let one = build_s(n, &Scalar::one()).unwrap();
        assert_ne!(one.bracket_table(), build_s(n, &Scalar::zero()).unwrap().bracket_table());
    }
}

#[test]
fn ck6_is_not_poisson_but_k6_is() {
    let v = poisson_leibniz(&build_ck6().unwrap()).violation.expect("witness");
    assert_eq!(v.tuple.len(), 3);
    assert!(!v.residual.is_empty());
    assert!(poisson_leibniz(&build_k(4).unwrap()).passed());
    assert_eq!(CatalogSpec::ck6().build().unwrap().meta()["polarization"], "+i");
}

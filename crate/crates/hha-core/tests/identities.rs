//! Property-based identity suite on random exact hyperhermitian metrics over catalog algebras.

mod common;

use common::{algebra, random_metric, sphere_pairs, SMALL_ALGEBRAS};
use hha::classify::q_real_basis;
use hha::exterior::{factorial, real_vector_to_frame};
use hha::hermitian::{alpha_by_division, beta_by_division, canonical_forms, curvature, j_map};
use hha::linalg;
use hha::{ComplexScalar, Form, HypercomplexAlgebra, HypercomplexStructure, HyperhermitianMetric, Scalar};
use proptest::prelude::*;

fn combo(basis: &[Form], n: usize, coeffs: &[i64]) -> Form {
    basis.iter().zip(coeffs).fold(Form::zero(n), |acc, (b, &c)| acc.add(&b.scale_real(&Scalar::from_int(c))))
}

fn inv_factorial(k: usize) -> Scalar {
    factorial(k).inv().unwrap()
}

fn volume_identity(m: &HyperhermitianMetric) {
    let n = m.n();
    let omega_i = m.omega_i();
    let lhs = m.volume().clone();
    let rhs = omega_i.power(2 * n).unwrap().scale_real(&inv_factorial(2 * n));
    assert_eq!(lhs, rhs, "Omega^n ^ conj(Omega)^n / (n!)^2 differs from omega_I^(2n) / (2n)!");
}

fn pfaffian_identity(m: &HyperhermitianMetric) {
    let pf = m.skew_matrix().unwrap().pfaffian().unwrap();
    let det = linalg::det(&m.hermitian_matrix());
    assert!(det.is_real());
    assert_eq!(pf.norm_sqr(), det.re, "|pf|^2 differs from det(g)");
}

fn canonical_and_scalar_identities(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) {
    let cf = canonical_forms(h, m).unwrap();
    assert_eq!(cf.alpha, alpha_by_division(h, m).unwrap());
    assert_eq!(cf.beta, beta_by_division(h, m).unwrap());
    let curv = curvature(h, m, &cf).unwrap();
    let two = Scalar::from_int(2);
    assert_eq!(curv.s_chern, &two * &m.trace_omega(&curv.del_j_alpha).unwrap());
    assert_eq!(ComplexScalar::real(curv.s_chern.clone()), m.trace_omega_i(&curv.ric_chern));
    assert_eq!(ComplexScalar::real(curv.s_bismut.clone()), m.trace_omega_i(&curv.ric_bismut));
}

fn product_identity(m: &HyperhermitianMetric, a: &[i64], b: &[i64]) {
    let n = m.n();
    if n < 2 {
        return;
    }
    let basis = q_real_basis(n);
    let psi = combo(&basis, n, a);
    let zeta = combo(&basis, n, b);
    let lhs = psi.wedge(&zeta).unwrap().wedge(m.omega_power(n - 2)).unwrap().scale_real(&inv_factorial(n - 2));
    let j_zeta_bar = j_map(n).apply(&zeta.conj());
    let c = &(&m.trace_omega_raw(&psi).unwrap() * &m.trace_omega_raw(&zeta).unwrap()) - &m.inner(&psi, &j_zeta_bar);
    let rhs = m.omega_power(n).scale(&c).scale_real(&inv_factorial(n));
    assert_eq!(lhs, rhs, "product identity fails for psi = {psi}, zeta = {zeta}");
}

fn strong_hkt_scalar_identity(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) {
    let n = m.n();
    if n < 2 {
        return;
    }
    let cf = canonical_forms(h, m).unwrap();
    let curv = curvature(h, m, &cf).unwrap();
    let del_omega_bar = h.del(m.omega_bar());
    let ddj = h.del(&h.del_j(m.omega_bar()));
    let oo = m.omega().wedge(m.omega_bar()).unwrap();
    let total = &(&ComplexScalar::real(&curv.s_chern * &Scalar::frac(1, 2)) + &m.inner(&ddj, &oo))
        - &ComplexScalar::real(m.norm_sqr(&del_omega_bar));
    assert!(total.is_zero(), "1/2 s^Ch + g(del del_J conj Omega, Omega ^ conj Omega) - |del conj Omega|^2 = {total}");
}

fn pointwise_identity(h: &HypercomplexAlgebra, m: &HyperhermitianMetric, x: &[i64]) {
    let n = m.n();
    if n < 2 || x.iter().all(|&v| v == 0) {
        return;
    }
    let x: Vec<Scalar> = x.iter().take(4 * n).map(|&v| Scalar::from_int(v)).collect();
    let jx = linalg::mat_vec(HypercomplexStructure::standard(n).j(), &x);
    let holomorphic_part = |v: &[Scalar]| -> Vec<ComplexScalar> {
        let mut f = real_vector_to_frame(n, v);
        for c in f.iter_mut().skip(2 * n) {
            *c = ComplexScalar::zero();
        }
        f
    };
    let z = holomorphic_part(&x);
    let jzb = holomorphic_part(&jx);
    let cf = canonical_forms(h, m).unwrap();
    let curv = curvature(h, m, &cf).unwrap();
    let lhs = curv.del_j_alpha.contract(&z).contract(&jzb).coeff(0);
    let dob = h.del(m.omega_bar());
    let ddj = h.del(&h.del_j(m.omega_bar()));
    let top = ddj.contract(&z).contract(&jzb).wedge(m.omega_bar_power(n - 1)).unwrap();
    let ratio = top.ratio_to(m.omega_bar_power(n)).expect("top-degree forms are proportional");
    let rhs =
        &ComplexScalar::real(&m.norm_sqr(&dob.contract(&z)) + &m.norm_sqr(&dob.contract(&jzb))) - &ratio.scale(&Scalar::from_int(n as i64));
    assert_eq!(lhs, rhs, "pointwise strong HKT identity fails at X = {x:?}");
}

fn pair_independence(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) {
    let cf = canonical_forms(h, m).unwrap();
    let curv = curvature(h, m, &cf).unwrap();
    let gram = m.input_gram(h).unwrap();
    for (p, q) in sphere_pairs().iter().skip(1).take(5) {
        let h2 = h.rotate(p, q).unwrap();
        let m2 = HyperhermitianMetric::from_input_gram(&h2, &gram).unwrap();
        let cf2 = canonical_forms(&h2, &m2).unwrap();
        let c2 = curvature(&h2, &m2, &cf2).unwrap();
        assert_eq!(c2.s_chern, curv.s_chern, "s^Ch depends on the pair");
        assert_eq!(c2.s_bismut, curv.s_bismut, "s^Bis depends on the pair");
    }
}

fn conformal_scaling(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) {
    let c = Scalar::frac(3, 2);
    let cf = canonical_forms(h, m).unwrap();
    let curv = curvature(h, m, &cf).unwrap();
    let ms = m.scaled(&c).unwrap();
    let cfs = canonical_forms(h, &ms).unwrap();
    let curvs = curvature(h, &ms, &cfs).unwrap();
    assert_eq!(cfs.alpha, cf.alpha);
    assert_eq!(cfs.beta, cf.beta);
    let inv = c.inv().unwrap();
    assert_eq!(curvs.s_chern, &curv.s_chern * &inv);
    assert_eq!(curvs.s_bismut, &curv.s_bismut * &inv);
}

fn metric_strategy() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (
        0..SMALL_ALGEBRAS.len(),
        prop::collection::vec(-2i64..=2, 36),
        prop::collection::vec(-3i64..=3, 15),
        prop::collection::vec(-3i64..=3, 15),
        prop::collection::vec(-2i64..=2, 12),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn identity_suite_on_random_metrics((idx, q, a, b, x) in metric_strategy()) {
        let h = algebra(SMALL_ALGEBRAS[idx]);
        let m = random_metric(h.n(), &q);
        volume_identity(&m);
        pfaffian_identity(&m);
        canonical_and_scalar_identities(&h, &m);
        product_identity(&m, &a, &b);
        strong_hkt_scalar_identity(&h, &m);
        pointwise_identity(&h, &m, &x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn scalar_curvatures_are_pair_independent((idx, q, _a, _b, _x) in metric_strategy()) {
        let h = algebra(SMALL_ALGEBRAS[idx]);
        let m = random_metric(h.n(), &q);
        pair_independence(&h, &m);
    }

    #[test]
    fn constant_rescaling((idx, q, _a, _b, _x) in metric_strategy()) {
        let h = algebra(SMALL_ALGEBRAS[idx]);
        let m = random_metric(h.n(), &q);
        conformal_scaling(&h, &m);
    }
}

#[test]
fn identities_on_catalog_metrics() {
    for name in hha::catalog::names() {
        let e = hha::catalog::get_example(&name).unwrap();
        volume_identity(&e.metric);
        pfaffian_identity(&e.metric);
        if e.h.n() <= 3 {
            strong_hkt_scalar_identity(&e.h, &e.metric);
            canonical_and_scalar_identities(&e.h, &e.metric);
        }
    }
}

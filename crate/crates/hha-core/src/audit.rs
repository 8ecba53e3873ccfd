//! Cross-checks between independent computations of the same quantity or property.
//!
//! [`equivalence_audit`] compares each special-metric condition with its equivalent
//! characterizations. [`identity_audit`] evaluates the pointwise and scalar identities that
//! relate the metric, its canonical forms and its curvatures. Both return every check
//! instead of stopping at the first failure.

use crate::classify::q_real_basis;
use crate::constructions::right_multiplication;
use crate::error::Result;
use crate::exterior::{factorial, real_vector_to_frame, Form};
use crate::hermitian::{alpha_by_division, beta_by_division, canonical_forms, curvature, j_map, phi, HyperhermitianMetric};
use crate::hypercomplex::{HypercomplexAlgebra, HypercomplexStructure, SpherePoint};
use crate::linalg::{self, Mat};
use crate::scalar::{ComplexScalar, Scalar};

/// One audited statement.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> AuditCheck {
    AuditCheck { name: name.into(), passed, detail: detail.into() }
}

/// Checks that every characterization in `forms` gives the same verdict.
fn agree(name: &str, forms: &[(&str, bool)]) -> AuditCheck {
    let passed = forms.windows(2).all(|w| w[0].1 == w[1].1);
    let detail = forms.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("; ");
    check(name, passed, detail)
}

/// Orthogonal pairs of exact unit points of the sphere, starting with `(I, J)` and ending
/// with the swapped pair `(J, I)`.
pub fn sample_pairs() -> Vec<(SpherePoint, SpherePoint)> {
    let f = Scalar::frac;
    let p = |a, b, c| SpherePoint { a, b, c };
    vec![
        (SpherePoint::axis(0), SpherePoint::axis(1)),
        (p(f(3, 5), f(4, 5), f(0, 1)), p(f(-4, 5), f(3, 5), f(0, 1))),
        (p(f(0, 1), f(3, 5), f(4, 5)), p(f(0, 1), f(-4, 5), f(3, 5))),
        (p(f(2, 3), f(1, 3), f(2, 3)), p(f(1, 3), f(2, 3), f(-2, 3))),
        (p(f(-2, 7), f(3, 7), f(6, 7)), p(f(6, 7), f(-2, 7), f(3, 7))),
        (SpherePoint::axis(1), SpherePoint::axis(0)),
    ]
}

/// The hyperhermitian metric with Gram matrix `Id + M^T M`, where `M` is the `n x n`
/// quaternionic matrix with entries `q[4(rn + c)..4(rn + c) + 4]` acting by right
/// multiplication. Every such matrix commutes with the standard `I` and `J`.
pub fn metric_from_quaternions(n: usize, q: &[Scalar]) -> Result<HyperhermitianMetric> {
    if q.len() < 4 * n * n {
        return Err(crate::HhaError::Metric(format!("need {} quaternion coefficients, got {}", 4 * n * n, q.len())));
    }
    let mut m: Mat<Scalar> = linalg::zeros(4 * n, 4 * n);
    for r in 0..n {
        for c in 0..n {
            let k = 4 * (r * n + c);
            let block = right_multiplication(&[q[k].clone(), q[k + 1].clone(), q[k + 2].clone(), q[k + 3].clone()]);
            for i in 0..4 {
                for j in 0..4 {
                    m[4 * r + i][4 * c + j] = block[i][j].clone();
                }
            }
        }
    }
    let mut g = linalg::matmul(&linalg::transpose(&m), &m);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = &row[i] + &Scalar::one();
    }
    HyperhermitianMetric::from_gram(n, g)
}

/// Compares each special-metric condition with its equivalent characterizations.
pub fn equivalence_audit(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<Vec<AuditCheck>> {
    let n = m.n();
    let two = Scalar::from_int(2);
    let cf = canonical_forms(h, m)?;
    let curv = curvature(h, m, &cf)?;
    let omega_i = m.omega_i();
    let omega_i_top = omega_i.power(2 * n - 1)?;
    let x = m.omega_power(n - 1).wedge(m.omega_bar_power(n))?;
    let ab = cf.alpha.add(&cf.beta);
    let mut out = Vec::new();

    out.push(agree(
        "gauduchon",
        &[
            ("del delbar omega_I^(2n-1) = 0", h.del(&h.delbar(&omega_i_top)).is_zero()),
            ("s^Ch - s^Bis - 2|alpha + beta|^2 = 0", (&(&curv.s_chern - &curv.s_bismut) - &(&two * &m.norm_sqr(&ab))).is_zero()),
            ("del del_J (Omega^(n-1) ^ conj(Omega)^n) = 0", h.del(&h.del_j(&x)).is_zero()),
        ],
    ));
    out.push(agree(
        "balanced",
        &[
            ("d omega_I^(2n-1) = 0", h.d(&omega_i_top).is_zero()),
            ("alpha + beta = 0", ab.is_zero()),
            ("del (Omega^(n-1) ^ conj(Omega)^n) = 0", h.del(&x).is_zero()),
        ],
    ));
    out.push(agree(
        "q_gauduchon",
        &[
            ("del del_J Omega^(n-1) = 0", h.del(&h.del_j(m.omega_power(n - 1))).is_zero()),
            ("s^Bis + 2|beta|^2 = 0", (&curv.s_bismut + &(&two * &m.norm_sqr(&cf.beta))).is_zero()),
        ],
    ));
    if n >= 2 {
        out.push(agree("q_balanced", &[("del Omega^(n-1) = 0", h.del(m.omega_power(n - 1)).is_zero()), ("beta = 0", cf.beta.is_zero())]));
    }
    let (j_point, k_point) = (SpherePoint::axis(1), SpherePoint::axis(2));
    out.push(agree(
        "hyperkahler",
        &[
            (
                "d omega_I = d omega_J = d omega_K = 0",
                [omega_i.clone(), m.omega_l(&j_point), m.omega_l(&k_point)].iter().all(|w| h.d(w).is_zero()),
            ),
            ("d Omega = 0", h.d(m.omega()).is_zero()),
        ],
    ));

    // Einstein: del_J alpha = lambda Omega against the (1,1) statement and the scalar curvature.
    let anti = curv.ric_chern.sub(&h.j_action(&curv.ric_chern)).scale_real(&Scalar::frac(1, 2));
    out.push(check("phi_of_ricci", phi(&anti)? == curv.del_j_alpha, "Phi((Ric^Ch - J Ric^Ch)/2) = del_J alpha"));
    let lambda = curv.del_j_alpha.ratio_to(m.omega()).filter(ComplexScalar::is_real).map(|c| c.re);
    let lambda_11 = anti.ratio_to(&omega_i).filter(ComplexScalar::is_real).map(|c| c.re);
    let lambda_ok = match (&lambda, &lambda_11) {
        (Some(l), Some(l2)) => l == l2 && curv.s_chern == &Scalar::from_int(2 * n as i64) * l,
        (None, None) => true,
        _ => false,
    };
    out.push(check(
        "einstein",
        lambda_ok,
        format!(
            "del_J alpha = lambda Omega with lambda {}; (Ric^Ch - J Ric^Ch)/2 = lambda omega_I with lambda {}; s^Ch = {}",
            lambda.as_ref().map_or("none".into(), |l| l.to_string()),
            lambda_11.as_ref().map_or("none".into(), |l| l.to_string()),
            curv.s_chern
        ),
    ));
    Ok(out)
}

/// Random inputs for the identities that quantify over forms and vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityInputs {
    /// Coefficients of two q-real (2,0)-forms on [`q_real_basis`]; extra entries are ignored.
    pub psi: Vec<Scalar>,
    pub zeta: Vec<Scalar>,
    /// A real tangent vector in the adapted basis (length `4n`); zero skips the pointwise identity.
    pub x: Vec<Scalar>,
    /// Positive constant for the rescaling check.
    pub scale: Option<Scalar>,
}

fn combo(basis: &[Form], n: usize, coeffs: &[Scalar]) -> Form {
    basis.iter().zip(coeffs).fold(Form::zero(n), |acc, (b, c)| acc.add(&b.scale_real(c)))
}

/// Evaluates the metric and curvature identities; pair independence uses [`sample_pairs`].
pub fn identity_audit(h: &HypercomplexAlgebra, m: &HyperhermitianMetric, inputs: &IdentityInputs) -> Result<Vec<AuditCheck>> {
    let n = m.n();
    let inv_fact = |k: usize| factorial(k).inv().expect("factorials are nonzero");
    let mut out = Vec::new();

    let vol = m.volume().clone();
    let vol_i = m.omega_i().power(2 * n)?.scale_real(&inv_fact(2 * n));
    out.push(check("volume", vol == vol_i, "Omega^n ^ conj(Omega)^n / (n!)^2 = omega_I^(2n) / (2n)!"));

    let pf = m.skew_matrix()?.pfaffian()?;
    let det = linalg::det(&m.hermitian_matrix());
    out.push(check("pfaffian", det.is_real() && pf.norm_sqr() == det.re, format!("|pf|^2 = {}, det = {det}", pf.norm_sqr())));

    let cf = canonical_forms(h, m)?;
    let curv = curvature(h, m, &cf)?;
    out.push(check(
        "alpha_beta_dual_route",
        cf.alpha == alpha_by_division(h, m)? && cf.beta == beta_by_division(h, m)?,
        "trace formulas agree with division by conj(Omega)^n and Omega^(n-1)",
    ));
    let two = Scalar::from_int(2);
    let tr = m.trace_omega(&curv.del_j_alpha)?;
    out.push(check(
        "chern_scalar",
        curv.s_chern == &two * &tr && ComplexScalar::real(curv.s_chern.clone()) == m.trace_omega_i(&curv.ric_chern),
        format!("s^Ch = {}, 2 tr_Omega(del_J alpha) = {}, tr Ric^Ch = {}", curv.s_chern, &two * &tr, m.trace_omega_i(&curv.ric_chern)),
    ));
    out.push(check(
        "bismut_scalar",
        ComplexScalar::real(curv.s_bismut.clone()) == m.trace_omega_i(&curv.ric_bismut),
        format!("s^Bis = {}, tr Ric^Bis = {}", curv.s_bismut, m.trace_omega_i(&curv.ric_bismut)),
    ));

    if n >= 2 {
        let basis = q_real_basis(n);
        let psi = combo(&basis, n, &inputs.psi);
        let zeta = combo(&basis, n, &inputs.zeta);
        let lhs = psi.wedge(&zeta)?.wedge(m.omega_power(n - 2))?.scale_real(&inv_fact(n - 2));
        let j_zeta_bar = j_map(n).apply(&zeta.conj());
        let c = &(&m.trace_omega_raw(&psi)? * &m.trace_omega_raw(&zeta)?) - &m.inner(&psi, &j_zeta_bar);
        let rhs = m.omega_power(n).scale(&c).scale_real(&inv_fact(n));
        out.push(check("product", lhs == rhs, format!("psi = {psi}, zeta = {zeta}")));

        let dob = h.del(m.omega_bar());
        let ddj = h.del(&h.del_j(m.omega_bar()));
        let oo = m.omega().wedge(m.omega_bar())?;
        let total =
            &(&ComplexScalar::real(&curv.s_chern * &Scalar::frac(1, 2)) + &m.inner(&ddj, &oo)) - &ComplexScalar::real(m.norm_sqr(&dob));
        out.push(check(
            "strong_hkt_scalar",
            total.is_zero(),
            format!("1/2 s^Ch + g(del del_J conj(Omega), Omega ^ conj(Omega)) - |del conj(Omega)|^2 = {total}"),
        ));

        if inputs.x.len() >= 4 * n && inputs.x.iter().take(4 * n).any(|v| !v.is_zero()) {
            let x: Vec<Scalar> = inputs.x[..4 * n].to_vec();
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
            let lhs = curv.del_j_alpha.contract(&z).contract(&jzb).coeff(0);
            let top = ddj.contract(&z).contract(&jzb).wedge(m.omega_bar_power(n - 1))?;
            let ratio = top.ratio_to(m.omega_bar_power(n)).unwrap_or_else(ComplexScalar::zero);
            let rhs = &ComplexScalar::real(&m.norm_sqr(&dob.contract(&z)) + &m.norm_sqr(&dob.contract(&jzb)))
                - &ratio.scale(&Scalar::from_int(n as i64));
            out.push(check("strong_hkt_pointwise", lhs == rhs, format!("lhs {lhs}, rhs {rhs}")));
        }
    }

    let gram = m.input_gram(h)?;
    let mut pair_ok = true;
    let mut detail = String::new();
    for (p, q) in sample_pairs().iter().skip(1).take(5) {
        let h2 = h.rotate(p, q)?;
        let m2 = HyperhermitianMetric::from_input_gram(&h2, &gram)?;
        let cf2 = canonical_forms(&h2, &m2)?;
        let c2 = curvature(&h2, &m2, &cf2)?;
        if c2.s_chern != curv.s_chern || c2.s_bismut != curv.s_bismut {
            pair_ok = false;
            detail = format!("pair ({}, {}): s^Ch = {}, s^Bis = {}", fmt_point(p), fmt_point(q), c2.s_chern, c2.s_bismut);
        }
    }
    out.push(check("pair_independence", pair_ok, if pair_ok { "s^Ch and s^Bis agree at 5 pairs".into() } else { detail }));

    if let Some(c) = &inputs.scale {
        let ms = m.scaled(c)?;
        let cfs = canonical_forms(h, &ms)?;
        let curvs = curvature(h, &ms, &cfs)?;
        let inv = c.inv().expect("scale is positive");
        out.push(check(
            "constant_rescaling",
            cfs.alpha == cf.alpha
                && cfs.beta == cf.beta
                && curvs.s_chern == &curv.s_chern * &inv
                && curvs.s_bismut == &curv.s_bismut * &inv,
            format!("Omega -> {c} Omega keeps alpha, beta and divides s^Ch, s^Bis by {c}"),
        ));
    }
    Ok(out)
}

fn fmt_point(p: &SpherePoint) -> String {
    format!("{},{},{}", p.a, p.b, p.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_example, names};

    #[test]
    fn catalog_passes_the_equivalence_audit() {
        for name in names() {
            let e = get_example(&name).unwrap();
            for c in equivalence_audit(&e.h, &e.metric).unwrap() {
                assert!(c.passed, "{name}: {} ({})", c.name, c.detail);
            }
        }
    }

    #[test]
    fn sample_pairs_are_orthonormal() {
        for (p, q) in sample_pairs() {
            assert!(SpherePoint::new(p.a.clone(), p.b.clone(), p.c.clone()).is_ok());
            assert!(SpherePoint::new(q.a.clone(), q.b.clone(), q.c.clone()).is_ok());
            assert!(p.dot(&q).is_zero());
        }
    }

    #[test]
    fn identity_audit_on_qsg12() {
        let e = get_example("qsg12").unwrap();
        let q: Vec<Scalar> = (0..36).map(|k| Scalar::from_int((k % 5) as i64 - 2)).collect();
        let m = metric_from_quaternions(3, &q).unwrap();
        let inputs = IdentityInputs {
            psi: (0..15).map(|k| Scalar::from_int((k % 3) as i64 - 1)).collect(),
            zeta: (0..15).map(|k| Scalar::from_int((k % 4) as i64 - 1)).collect(),
            x: (0..12).map(|k| Scalar::from_int((k % 3) as i64)).collect(),
            scale: Some(Scalar::frac(5, 3)),
        };
        let checks = identity_audit(&e.h, &m, &inputs).unwrap();
        assert_eq!(checks.len(), 10);
        for c in checks {
            assert!(c.passed, "{} ({})", c.name, c.detail);
        }
    }
}

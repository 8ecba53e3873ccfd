//! Special-metric predicates, the Einstein factor, invariant-level SL(n,H)
//! and Bott–Chern checks, conformal-class obstructions, exactness solving,
//! nonexistence certificates and grid search over metrics.
//!
//! Every predicate is decided by its defining equation and, where an equivalent
//! scalar characterization exists, cross-checked against it. A disagreement is
//! reported as [`HhaError::Consistency`] rather than resolved by precedence.

use std::fmt;
use std::str::FromStr;

use crate::error::{HhaError, Result};
use crate::exterior::{bidegree_basis, coframe_matrix, endomorphism_map, factorial, holomorphic_mask, Form, Mask};
use crate::hermitian::{canonical_forms, curvature, is_q_real, phi, q_positivity, CanonicalForms, CurvatureData, HyperhermitianMetric};
use crate::hypercomplex::{HypercomplexAlgebra, HypercomplexStructure, SpherePoint};
use crate::linalg::{self, Mat};
use crate::par;
use crate::scalar::{ComplexScalar, Scalar};

/// Scope statement attached to every report.
pub const INVARIANT_SCOPE: &str = "verdicts concern left-invariant metrics; on compact quotients the \
symmetrization argument transfers nonexistence of invariant metrics to all metrics of the same class";

/// Caveat attached to the SL(n,H) and Bott–Chern checks.
pub const SL_CAVEAT: &str = "invariant functions are constant, so a del-exact invariant (1,0)-form vanishes: \
alpha = 0 is the invariant-level SL(n,H) condition and del_J alpha = 0 the invariant-level vanishing of the \
first quaternionic Bott–Chern class";

/// Outcome of one predicate.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    /// Form whose vanishing is the defining condition.
    pub residual: Form,
    /// Residual of the equivalent scalar characterization, when one exists.
    pub scalar_residual: Option<Scalar>,
}

impl Verdict {
    fn from_form(residual: Form) -> Verdict {
        Verdict { holds: residual.is_zero(), residual, scalar_residual: None }
    }

    fn with_scalar(residual: Form, scalar: Scalar, name: &str) -> Result<Verdict> {
        let holds = residual.is_zero();
        if holds != scalar.is_zero() {
            return Err(HhaError::Consistency(format!(
                "{name}: defining form {} but scalar characterization gives {scalar}",
                if holds { "vanishes" } else { "does not vanish" }
            )));
        }
        Ok(Verdict { holds, residual, scalar_residual: Some(scalar) })
    }
}

/// SKT verdict for one complex structure of the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SktVerdict {
    pub label: String,
    pub point: SpherePoint,
    pub verdict: Verdict,
}

/// Result of the Einstein test `del_J alpha = lambda Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinResult {
    pub lambda: Option<Scalar>,
    /// `del_J alpha - lambda Omega`, or `del_J alpha` itself when not proportional.
    pub residual: Form,
}

/// Invariant-level SL(n,H), Obata-holonomy and Bott–Chern checks.
#[derive(Clone, Debug, PartialEq)]
pub struct SlCheck {
    pub alpha_zero: bool,
    pub d_eta_zero: bool,
    pub del_j_alpha_zero: bool,
    pub caveat: &'static str,
}

/// Invariant constants deciding existence of special metrics in a conformal class.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalObstruction {
    /// `s^Ch - 2|alpha|^2` of the Gauduchon representative.
    pub c1: Scalar,
    /// Gauduchon–Bismut degree with unit volume, `s^Bis`.
    pub gamma_unit: Scalar,
    /// Gauduchon–Bismut degree with the metric's volume relative to `e^1 ^ .. ^ e^{4n}`.
    pub gamma_metric: Scalar,
    /// Riemannian volume relative to `e^1 ^ .. ^ e^{4n}` of the adapted basis.
    pub volume: Scalar,
    pub q_gauduchon_in_class: bool,
    pub q_balanced_in_class: bool,
}

/// Full classification of one metric.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    pub scope: &'static str,
    /// `n = 1`: the quaternionic balanced and Gauduchon conditions are vacuous.
    pub degenerate_n1: bool,
    pub abelian_structure: bool,
    pub unimodular: bool,
    pub hyperkahler: Verdict,
    pub hkt: Verdict,
    pub strong_hkt: Verdict,
    pub skt: Vec<SktVerdict>,
    pub q_balanced: Verdict,
    pub q_strongly_gauduchon: Verdict,
    /// A form `w` with `del_J w = del Omega^{n-1}` when one exists.
    pub qsg_witness: Option<Form>,
    pub q_gauduchon: Verdict,
    pub balanced: Verdict,
    pub gauduchon: Verdict,
    pub canonical: CanonicalForms,
    pub curvature: CurvatureData,
    pub alpha_norm_sqr: Scalar,
    pub beta_norm_sqr: Scalar,
    pub einstein: EinsteinResult,
    pub sl: SlCheck,
    /// Present when the metric is Gauduchon.
    pub obstruction: Option<ConformalObstruction>,
}

impl ClassificationReport {
    /// Named boolean flags in a fixed order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        let mut v = vec![
            ("hyperkahler", self.hyperkahler.holds),
            ("hkt", self.hkt.holds),
            ("strong_hkt", self.strong_hkt.holds),
            ("q_balanced", self.q_balanced.holds),
            ("q_strongly_gauduchon", self.q_strongly_gauduchon.holds),
            ("q_gauduchon", self.q_gauduchon.holds),
            ("balanced", self.balanced.holds),
            ("gauduchon", self.gauduchon.holds),
        ];
        for s in &self.skt {
            v.push((
                match s.label.as_str() {
                    "I" => "skt_i",
                    "J" => "skt_j",
                    _ => "skt_k",
                },
                s.verdict.holds,
            ));
        }
        v
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags().into_iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

/// Operators accepted by [`solve_exactness`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Del,
    DelJ,
    DelDelJ,
}

impl Operator {
    fn apply(self, h: &HypercomplexAlgebra, f: &Form) -> Form {
        match self {
            Operator::Del => h.del(f),
            Operator::DelJ => h.del_j(f),
            Operator::DelDelJ => h.del(&h.del_j(f)),
        }
    }

    fn shift(self) -> usize {
        match self {
            Operator::Del | Operator::DelJ => 1,
            Operator::DelDelJ => 2,
        }
    }
}

/// Result of an exactness problem.
#[derive(Clone, Debug, PartialEq)]
pub enum Exactness {
    /// A preimage of the target.
    Exact(Form),
    /// The target lies outside the image; the ranks certify it.
    NotExact { image_rank: usize, augmented_rank: usize },
}

impl Exactness {
    pub fn witness(&self) -> Option<&Form> {
        match self {
            Exactness::Exact(w) => Some(w),
            Exactness::NotExact { .. } => None,
        }
    }
}

/// Decides whether `target = op(w)` for some invariant `w` of bidegree `source`.
pub fn solve_exactness(h: &HypercomplexAlgebra, op: Operator, target: &Form, source: (usize, usize)) -> Result<Exactness> {
    let n = h.n();
    let (p, q) = source;
    if !target.is_zero() && target.bidegree() != Some((p + op.shift(), q)) {
        return Err(HhaError::Bidegree { expected: format!("({},{})", p + op.shift(), q), got: format!("{:?}", target.bidegrees()) });
    }
    if target.is_zero() {
        return Ok(Exactness::Exact(Form::zero(n)));
    }
    let basis = bidegree_basis(n, p, q);
    let images = par::map(&basis, |&m| op.apply(h, &Form::monomial(n, m, ComplexScalar::one())));
    let mut rows: Vec<Mask> = images.iter().flat_map(|f| f.terms().keys().copied()).collect();
    rows.extend(target.terms().keys().copied());
    rows.sort_unstable();
    rows.dedup();
    let a: Mat<ComplexScalar> = rows.iter().map(|&r| images.iter().map(|f| f.coeff(r)).collect()).collect();
    let b: Vec<ComplexScalar> = rows.iter().map(|&r| target.coeff(r)).collect();
    match linalg::solve(&a, &b) {
        Some(y) => {
            let w = Form::from_terms(n, basis.into_iter().zip(y));
            if op.apply(h, &w) != *target {
                return Err(HhaError::Consistency("exactness witness does not reproduce the target".into()));
            }
            Ok(Exactness::Exact(w))
        }
        None => {
            let image_rank = linalg::rank(&a);
            let aug: Mat<ComplexScalar> =
                a.iter().zip(&b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
            Ok(Exactness::NotExact { image_rank, augmented_rank: linalg::rank(&aug) })
        }
    }
}

fn omega_l_forms(m: &HyperhermitianMetric) -> [(String, SpherePoint, Form); 3] {
    let i = ComplexScalar::i();
    let omega_j = m.omega().add(m.omega_bar());
    let omega_k = m.omega().sub(m.omega_bar()).scale(&-&i);
    [
        ("I".into(), SpherePoint::axis(0), m.omega_i()),
        ("J".into(), SpherePoint::axis(1), omega_j),
        ("K".into(), SpherePoint::axis(2), omega_k),
    ]
}

fn neg_mat(a: &Mat<Scalar>) -> Mat<Scalar> {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// `d(L^{-1} d omega_L)`, the closedness defect of the Bismut torsion of `L`.
fn skt_residual(h: &HypercomplexAlgebra, m: &HyperhermitianMetric, p: &SpherePoint, omega_l: &Form) -> Form {
    let l = HypercomplexStructure::standard(m.n()).endomorphism(p);
    let linv = endomorphism_map(m.n(), &neg_mat(&l));
    h.d(&linv.apply(&h.d(omega_l)))
}

/// The Einstein factor with its cross-checks.
pub fn einstein_factor(h: &HypercomplexAlgebra, m: &HyperhermitianMetric, curv: &CurvatureData) -> Result<EinsteinResult> {
    let n = m.n();
    let ric = &curv.ric_chern;
    let anti = ric.sub(&h.j_action(ric)).scale_real(&Scalar::frac(1, 2));
    if phi(&anti)? != curv.del_j_alpha {
        return Err(HhaError::Consistency("Phi of the J-anti-invariant part of Ric^Ch differs from del_J alpha".into()));
    }
    let r = match curv.del_j_alpha.ratio_to(m.omega()) {
        Some(r) => r,
        None => return Ok(EinsteinResult { lambda: None, residual: curv.del_j_alpha.clone() }),
    };
    if !r.is_real() {
        return Ok(EinsteinResult { lambda: None, residual: curv.del_j_alpha.clone() });
    }
    let lambda = r.re;
    if curv.s_chern != &Scalar::from_int(2 * n as i64) * &lambda {
        return Err(HhaError::Consistency(format!("s^Ch = {} but 2 n lambda = {}", curv.s_chern, lambda)));
    }
    if anti != m.omega_i().scale_real(&lambda) {
        return Err(HhaError::Consistency("(Ric^Ch - J Ric^Ch)/2 differs from lambda omega_I".into()));
    }
    Ok(EinsteinResult { lambda: Some(lambda), residual: Form::zero(n) })
}

fn ratio_or_none(f: &Form, g: &Form) -> Option<Scalar> {
    f.ratio_to(g).filter(ComplexScalar::is_real).map(|c| c.re)
}

/// Volume of the metric relative to `e^1 ^ .. ^ e^{4n}` in the adapted basis.
pub fn riemannian_volume(m: &HyperhermitianMetric) -> Scalar {
    let n = m.n();
    let full = if 4 * n == 64 { u64::MAX } else { (1u64 << (4 * n)) - 1 };
    let c = m.volume().coeff(full);
    let det = linalg::det(&coframe_matrix(n));
    let v = &c * &det;
    debug_assert!(v.is_real());
    v.re
}

/// Existence of q-Gauduchon and q-balanced metrics in the conformal class of a Gauduchon metric.
pub fn conformal_class_obstruction(
    h: &HypercomplexAlgebra,
    m: &HyperhermitianMetric,
    cf: &CanonicalForms,
    curv: &CurvatureData,
) -> Result<ConformalObstruction> {
    let gauduchon = gauduchon_residual(h, m)?;
    if !gauduchon.is_zero() {
        return Err(HhaError::Precondition(format!("metric is not Gauduchon: residual {gauduchon}")));
    }
    let c1 = &curv.s_chern - &(&Scalar::from_int(2) * &m.norm_sqr(&cf.alpha));
    let gamma_unit = curv.s_bismut.clone();
    let volume = riemannian_volume(m);
    let gamma_metric = &gamma_unit * &volume;
    Ok(ConformalObstruction {
        q_gauduchon_in_class: c1.is_zero() && !gamma_unit.is_positive(),
        q_balanced_in_class: c1.is_zero() && gamma_unit.is_zero(),
        c1,
        gamma_unit,
        gamma_metric,
        volume,
    })
}

fn gauduchon_residual(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<Form> {
    let n = m.n();
    let x = m.omega_power(n - 1).wedge(m.omega_bar_power(n))?;
    Ok(h.del(&h.del_j(&x)))
}

/// Classifies a metric on a hypercomplex algebra (both in the adapted frame).
pub fn classify_metric(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<ClassificationReport> {
    let n = h.n();
    if m.n() != n {
        return Err(HhaError::Precondition(format!("metric has n = {} but the algebra has n = {n}", m.n())));
    }
    let two = Scalar::from_int(2);
    let cf = canonical_forms(h, m)?;
    let curv = curvature(h, m, &cf)?;
    if !curv.s_obata.is_zero() {
        return Err(HhaError::Consistency(format!("Obata scalar curvature is {}", curv.s_obata)));
    }

    let omegas = omega_l_forms(m);
    let dk: Vec<Form> = omegas.iter().map(|(_, _, w)| h.d(w)).collect();
    // The residual collects d omega_I + d omega_J + d omega_K; the verdict requires each to vanish.
    let hyperkahler = Verdict {
        holds: dk.iter().all(Form::is_zero),
        residual: dk.iter().fold(Form::zero(n), |acc, f| acc.add(f)),
        scalar_residual: None,
    };

    let hkt = Verdict::from_form(h.del(m.omega()));
    let ddj_bar = h.del(&h.del_j(m.omega_bar()));
    let strong_hkt = Verdict { holds: hkt.holds && ddj_bar.is_zero(), residual: ddj_bar.clone(), scalar_residual: None };

    let mut skt = Vec::new();
    for (label, p, w) in &omegas {
        let residual = skt_residual(h, m, p, w);
        if label == "I" {
            let ddbar = h.del(&h.delbar(w));
            if residual.is_zero() != ddbar.is_zero() {
                return Err(HhaError::Consistency("SKT for I: d(I^{-1} d omega_I) and del delbar omega_I disagree".into()));
            }
        }
        skt.push(SktVerdict { label: label.clone(), point: p.clone(), verdict: Verdict::from_form(residual) });
    }

    let alpha_norm_sqr = m.norm_sqr(&cf.alpha);
    let beta_norm_sqr = m.norm_sqr(&cf.beta);
    let ab = cf.alpha.add(&cf.beta);

    let omega_nm1 = m.omega_power(n - 1);
    let q_balanced = Verdict::from_form(h.del(omega_nm1));
    let exact = solve_exactness(h, Operator::DelJ, &q_balanced.residual, (2 * n - 2, 0))?;
    let qsg_witness = exact.witness().cloned();
    let q_strongly_gauduchon = Verdict { holds: qsg_witness.is_some(), residual: q_balanced.residual.clone(), scalar_residual: None };
    let q_gauduchon =
        Verdict::with_scalar(h.del(&h.del_j(omega_nm1)), &curv.s_bismut + &(&two * &beta_norm_sqr), "quaternionic Gauduchon")?;

    let x = omega_nm1.wedge(m.omega_bar_power(n))?;
    let balanced = Verdict::from_form(h.del(&x));
    if balanced.holds != ab.is_zero() {
        return Err(HhaError::Consistency(format!(
            "balanced: del(Omega^(n-1) ^ conj(Omega)^n) {} but alpha + beta = {ab}",
            if balanced.holds { "vanishes" } else { "does not vanish" }
        )));
    }
    let gauduchon =
        Verdict::with_scalar(gauduchon_residual(h, m)?, &(&curv.s_chern - &curv.s_bismut) - &(&two * &m.norm_sqr(&ab)), "Gauduchon")?;

    let einstein = einstein_factor(h, m, &curv)?;
    let sl = SlCheck {
        alpha_zero: cf.alpha.is_zero(),
        d_eta_zero: curv.ric_obata.is_zero(),
        del_j_alpha_zero: curv.del_j_alpha.is_zero(),
        caveat: SL_CAVEAT,
    };
    let obstruction = if gauduchon.holds { Some(conformal_class_obstruction(h, m, &cf, &curv)?) } else { None };

    let report = ClassificationReport {
        n,
        scope: INVARIANT_SCOPE,
        degenerate_n1: n == 1,
        abelian_structure: h.is_abelian(),
        unimodular: h.algebra().is_unimodular(),
        hyperkahler,
        hkt,
        strong_hkt,
        skt,
        q_balanced,
        q_strongly_gauduchon,
        qsg_witness,
        q_gauduchon,
        balanced,
        gauduchon,
        canonical: cf,
        curvature: curv,
        alpha_norm_sqr,
        beta_norm_sqr,
        einstein,
        sl,
        obstruction,
    };
    check_implications(&report)?;
    Ok(report)
}

fn check_implications(r: &ClassificationReport) -> Result<()> {
    let chain = [
        ("hyperkahler", r.hyperkahler.holds),
        ("hkt", r.hkt.holds),
        ("q_balanced", r.q_balanced.holds),
        ("q_strongly_gauduchon", r.q_strongly_gauduchon.holds),
        ("q_gauduchon", r.q_gauduchon.holds),
    ];
    for w in chain.windows(2) {
        if w[0].1 && !w[1].1 {
            return Err(HhaError::Consistency(format!("{} holds but {} fails", w[0].0, w[1].0)));
        }
    }
    if r.strong_hkt.holds && !r.hkt.holds {
        return Err(HhaError::Consistency("strong HKT without HKT".into()));
    }
    Ok(())
}

/// Accepted or rejected nonexistence certificate for quaternionic balanced metrics.
#[derive(Clone, Debug, PartialEq)]
pub enum QbalCertificate {
    Accepted { witness: Form, sigma: Form, transcript: Vec<String> },
    Rejected { witness: Form, sigma: Form, reason: String },
}

impl QbalCertificate {
    pub fn is_accepted(&self) -> bool {
        matches!(self, QbalCertificate::Accepted { .. })
    }

    pub fn sigma(&self) -> &Form {
        match self {
            QbalCertificate::Accepted { sigma, .. } | QbalCertificate::Rejected { sigma, .. } => sigma,
        }
    }
}

/// Verifies that `sigma = del psi` is nonzero, q-real and q-semipositive, which rules out
/// invariant quaternionic balanced metrics on a unimodular algebra with `alpha = 0`.
pub fn qbal_nonexistence_certificate(h: &HypercomplexAlgebra, psi: &Form) -> Result<QbalCertificate> {
    let n = h.n();
    if !psi.is_zero() && psi.bidegree() != Some((1, 0)) {
        return Err(HhaError::Bidegree { expected: "(1,0)".into(), got: format!("{:?}", psi.bidegrees()) });
    }
    let sigma = h.del(psi);
    let reject = |reason: String| Ok(QbalCertificate::Rejected { witness: psi.clone(), sigma: sigma.clone(), reason });
    if n < 2 {
        return reject("n = 1: the quaternionic balanced condition is vacuous".into());
    }
    if sigma.is_zero() {
        return reject("sigma = del psi vanishes".into());
    }
    if !is_q_real(&sigma) {
        return reject(format!("sigma = {sigma} is not q-real"));
    }
    let pos = q_positivity(&sigma)?;
    if !pos.is_semipositive() {
        return reject(format!("sigma = {sigma} is not q-semipositive ({pos:?})"));
    }
    if !h.algebra().is_unimodular() {
        return reject("the algebra is not unimodular, so invariant top-degree forms need not be closed".into());
    }
    let alpha = crate::hermitian::alpha_by_division(h, &HyperhermitianMetric::standard(n))?;
    if !alpha.is_zero() {
        return reject(format!("alpha = {alpha} is nonzero, so del conj(Omega)^n does not vanish"));
    }
    let transcript = vec![
        format!("sigma = del psi = {sigma}"),
        "sigma is nonzero, q-real and q-semipositive (Phi^{-1}(sigma) is positive semidefinite)".into(),
        "for every q-positive Omega: sigma ^ Omega^(n-1) ^ conj(Omega)^n = (tr_Omega sigma / n) Omega^n ^ conj(Omega)^n with tr_Omega sigma > 0".into(),
        "the algebra is unimodular, so d of every invariant (4n-1)-form vanishes".into(),
        "alpha = 0, so del conj(Omega)^n = 0 for every metric".into(),
        "if del Omega^(n-1) = 0 then sigma ^ Omega^(n-1) ^ conj(Omega)^n = d(psi ^ Omega^(n-1) ^ conj(Omega)^n) = 0, a contradiction".into(),
        "conclusion: no invariant quaternionic balanced metric exists".into(),
    ];
    Ok(QbalCertificate::Accepted { witness: psi.clone(), sigma, transcript })
}

/// A q-real q-semipositive (2,0)-form `sigma` with `sigma ^ a = l(del a)` on (2n-2,0)-forms for a
/// functional `l` vanishing on a prescribed subspace: then `l(del Omega^{n-1}) > 0` for every metric.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyObstruction {
    pub sigma: Form,
    pub transcript: Vec<String>,
}

/// Real basis of the q-real (2,0)-forms.
pub fn q_real_basis(n: usize) -> Vec<Form> {
    let jm = crate::hermitian::j_map(n);
    let masks = bidegree_basis(n, 2, 0);
    let mut cands = Vec::new();
    for &m in &masks {
        let f = Form::monomial(n, m, ComplexScalar::one());
        let g = f.scale(&ComplexScalar::i());
        cands.push(f.add(&jm.apply(&f.conj())));
        cands.push(g.add(&jm.apply(&g.conj())));
    }
    let coords = |f: &Form| -> Vec<Scalar> {
        masks
            .iter()
            .flat_map(|&m| {
                let c = f.coeff(m);
                [c.re, c.im]
            })
            .collect()
    };
    let mut out: Vec<Form> = Vec::new();
    let mut rows: Mat<Scalar> = Vec::new();
    for c in cands {
        let mut trial = rows.clone();
        trial.push(coords(&c));
        if linalg::rank(&trial) > rows.len() {
            rows = trial;
            out.push(c);
        }
    }
    out
}

/// Searches for a [`FamilyObstruction`] against `del Omega^{n-1}` lying in the span of `allowed`.
fn family_obstruction(h: &HypercomplexAlgebra, allowed: &[Form], what: &str) -> Result<Option<FamilyObstruction>> {
    let n = h.n();
    if n < 2 {
        return Ok(None);
    }
    let src = bidegree_basis(n, 2 * n - 2, 0);
    let tgt = bidegree_basis(n, 2 * n - 1, 0);
    let dels: Vec<Form> = par::map(&src, |&m| h.del(&Form::monomial(n, m, ComplexScalar::one())));
    // Kernel of (x, y) -> del x - sum y_k allowed_k gives the x with del x in the allowed span.
    let cols = src.len() + allowed.len();
    let a: Mat<ComplexScalar> =
        tgt.iter().map(|&t| dels.iter().map(|f| f.coeff(t)).chain(allowed.iter().map(|w| -w.coeff(t))).collect()).collect();
    let kern: Vec<Form> =
        linalg::kernel(&a, cols).into_iter().map(|v| Form::from_terms(n, src.iter().copied().zip(v.into_iter().take(src.len())))).collect();
    // sigma = sum t_k q_k (t real) must satisfy sigma ^ x = 0 for every such x.
    let top = holomorphic_mask(n);
    let basis = q_real_basis(n);
    let mut eqs: Mat<Scalar> = Vec::new();
    for x in &kern {
        let vals: Vec<ComplexScalar> = basis.iter().map(|q| q.wedge(x).map(|w| w.coeff(top))).collect::<Result<_>>()?;
        eqs.push(vals.iter().map(|c| c.re.clone()).collect());
        eqs.push(vals.iter().map(|c| c.im.clone()).collect());
    }
    let sols: Vec<Vec<Scalar>> = if eqs.is_empty() {
        (0..basis.len()).map(|k| (0..basis.len()).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        linalg::kernel(&eqs, basis.len())
    };
    for t in sols {
        let sigma = basis.iter().zip(&t).fold(Form::zero(n), |acc, (q, c)| acc.add(&q.scale_real(c)));
        for cand in [sigma.clone(), sigma.neg()] {
            if !cand.is_zero() && q_positivity(&cand)?.is_semipositive() {
                let transcript = vec![
                    format!("sigma = {cand} is nonzero, q-real and q-semipositive"),
                    format!("sigma ^ x vanishes on every (2n-2,0)-form x with del x in the span of {what}"),
                    "so sigma ^ a = l(del a) for a functional l vanishing on that span".into(),
                    "for every q-positive Omega, l(del Omega^(n-1)) = sigma ^ Omega^(n-1) = (tr_Omega sigma / n) Omega^n != 0".into(),
                    format!("hence del Omega^(n-1) never lies in the span of {what}"),
                ];
                return Ok(Some(FamilyObstruction { sigma: cand, transcript }));
            }
        }
    }
    Ok(None)
}

/// Proves that no invariant metric is quaternionic strongly Gauduchon, when possible.
pub fn qsg_family_obstruction(h: &HypercomplexAlgebra) -> Result<Option<FamilyObstruction>> {
    let n = h.n();
    if n < 2 {
        return Ok(None);
    }
    let images: Vec<Form> = bidegree_basis(n, 2 * n - 2, 0)
        .into_iter()
        .map(|m| h.del_j(&Form::monomial(n, m, ComplexScalar::one())))
        .filter(|f| !f.is_zero())
        .collect();
    family_obstruction(h, &images, "im del_J")
}

/// Proves that no invariant metric is quaternionic balanced, when possible.
pub fn qbal_family_obstruction(h: &HypercomplexAlgebra) -> Result<Option<FamilyObstruction>> {
    family_obstruction(h, &[], "{0}")
}

/// Modulo `im del_J`, `del Omega^{n-1}` is `(sum_k p_k c_k) v` for every metric, where `p_k > 0`
/// is the coefficient of the complement of the `k`-th diagonal pair in `Omega^{n-1}` and the `c_k`
/// lie in an open half-plane, so the class never vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct LineObstruction {
    /// Representative of the line, reduced modulo `im del_J`.
    pub direction: Form,
    /// `(k, c_k)` for the 1-based diagonal pairs with nonzero contribution.
    pub coefficients: Vec<(usize, ComplexScalar)>,
    pub transcript: Vec<String>,
}

/// Either kind of proof that no invariant metric is quaternionic strongly Gauduchon.
#[derive(Clone, Debug, PartialEq)]
pub enum QsgObstruction {
    Positive(FamilyObstruction),
    Line(LineObstruction),
}

impl QsgObstruction {
    pub fn transcript(&self) -> &[String] {
        match self {
            QsgObstruction::Positive(f) => &f.transcript,
            QsgObstruction::Line(l) => &l.transcript,
        }
    }
}

/// Reduces vectors modulo a span given by rows in reduced row echelon form.
struct Reducer {
    rows: Mat<ComplexScalar>,
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(mut rows: Mat<ComplexScalar>) -> Reducer {
        let pivots = linalg::rref(&mut rows);
        rows.truncate(pivots.len());
        Reducer { rows, pivots }
    }

    fn reduce(&self, v: &[ComplexScalar]) -> Vec<ComplexScalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }
}

/// Whether `sum p_k c_k != 0` for all positive `p_k`, certified by a direction `u` with
/// `Re(conj(u) c_k) >= 0` for all `k` and `> 0` for some `k`.
fn half_plane_direction(cs: &[ComplexScalar]) -> Option<ComplexScalar> {
    let candidates = cs.iter().filter(|c| !c.is_zero()).flat_map(|c| [c.clone(), c.mul_i(), -&c.mul_i()]);
    for u in candidates {
        let re: Vec<Scalar> = cs.iter().map(|c| (&u.conj() * c).re).collect();
        if re.iter().all(|r| !r.is_negative()) && re.iter().any(Scalar::is_positive) {
            return Some(u);
        }
    }
    None
}

/// Proves that no invariant metric is quaternionic strongly Gauduchon by showing that
/// `del Omega^{n-1}` modulo `im del_J` is a nonvanishing multiple of a fixed class.
pub fn qsg_line_obstruction(h: &HypercomplexAlgebra) -> Result<Option<LineObstruction>> {
    let n = h.n();
    if n < 2 {
        return Ok(None);
    }
    let src = bidegree_basis(n, 2 * n - 2, 0);
    let tgt = bidegree_basis(n, 2 * n - 1, 0);
    let coords = |f: &Form| -> Vec<ComplexScalar> { tgt.iter().map(|&t| f.coeff(t)).collect() };
    let images: Mat<ComplexScalar> = src
        .iter()
        .map(|&m| coords(&h.del_j(&Form::monomial(n, m, ComplexScalar::one()))))
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let red = Reducer::new(images);
    let hol = holomorphic_mask(n);
    let mut diag: Vec<(usize, Vec<ComplexScalar>)> = Vec::new();
    for &m in &src {
        let x = red.reduce(&coords(&h.del(&Form::monomial(n, m, ComplexScalar::one()))));
        let missing = hol & !m;
        let i = missing.trailing_zeros() as usize;
        let is_diag = i.is_multiple_of(2) && missing == 0b11 << i;
        if is_diag {
            diag.push((i / 2 + 1, x));
        } else if x.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
    }
    let Some((_, v)) = diag.iter().find(|(_, x)| x.iter().any(|c| !c.is_zero())) else {
        return Ok(None);
    };
    let v = v.clone();
    let p = v.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut coefficients = Vec::new();
    let mut cs = Vec::new();
    for (k, x) in &diag {
        let c = &x[p] / &v[p];
        if x.iter().zip(&v).any(|(a, b)| *a != &c * b) {
            return Ok(None);
        }
        if !c.is_zero() {
            coefficients.push((*k, c.clone()));
        }
        cs.push(c);
    }
    let Some(u) = half_plane_direction(&cs) else {
        return Ok(None);
    };
    let direction = Form::from_terms(n, tgt.iter().copied().zip(v));
    let listed: Vec<String> = coefficients.iter().map(|(k, c)| format!("c_{k} = {c}")).collect();
    let transcript = vec![
        format!("modulo im del_J, del of each (2n-2,0)-monomial is zero or a multiple of v = {direction}"),
        "off-diagonal complements contribute zero, so only the coefficients p_k > 0 of Omega^(n-1) on the complements of diagonal pairs enter".into(),
        format!("del Omega^(n-1) = (sum_k p_k c_k) v mod im del_J with {}", listed.join(", ")),
        format!("Re(conj(u) c_k) >= 0 for u = {u} with strict inequality for some k, so the sum never vanishes"),
        "hence del Omega^(n-1) is never del_J-exact".into(),
    ];
    Ok(Some(LineObstruction { direction, coefficients, transcript }))
}

/// Tries the positive-form obstruction, then the line obstruction.
pub fn qsg_obstruction(h: &HypercomplexAlgebra) -> Result<Option<QsgObstruction>> {
    if let Some(f) = qsg_family_obstruction(h)? {
        return Ok(Some(QsgObstruction::Positive(f)));
    }
    Ok(qsg_line_obstruction(h)?.map(QsgObstruction::Line))
}

/// Predicates accepted by [`search_metrics`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Hyperkahler,
    Hkt,
    StrongHkt,
    QBalanced,
    QStronglyGauduchon,
    QGauduchon,
    Balanced,
    Gauduchon,
    Einstein,
    SktI,
}

impl Predicate {
    pub const ALL: [Predicate; 10] = [
        Predicate::Hyperkahler,
        Predicate::Hkt,
        Predicate::StrongHkt,
        Predicate::QBalanced,
        Predicate::QStronglyGauduchon,
        Predicate::QGauduchon,
        Predicate::Balanced,
        Predicate::Gauduchon,
        Predicate::Einstein,
        Predicate::SktI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Hyperkahler => "hyperkahler",
            Predicate::Hkt => "hkt",
            Predicate::StrongHkt => "strong_hkt",
            Predicate::QBalanced => "q_balanced",
            Predicate::QStronglyGauduchon => "q_strongly_gauduchon",
            Predicate::QGauduchon => "q_gauduchon",
            Predicate::Balanced => "balanced",
            Predicate::Gauduchon => "gauduchon",
            Predicate::Einstein => "einstein",
            Predicate::SktI => "skt_i",
        }
    }

    /// Decides the predicate from its defining equation only.
    pub fn evaluate(self, h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<bool> {
        let n = h.n();
        Ok(match self {
            Predicate::Hyperkahler => omega_l_forms(m).iter().all(|(_, _, w)| h.d(w).is_zero()),
            Predicate::Hkt => h.del(m.omega()).is_zero(),
            Predicate::StrongHkt => h.del(m.omega()).is_zero() && h.del(&h.del_j(m.omega_bar())).is_zero(),
            Predicate::QBalanced => h.del(m.omega_power(n - 1)).is_zero(),
            Predicate::QStronglyGauduchon => {
                let t = h.del(m.omega_power(n - 1));
                solve_exactness(h, Operator::DelJ, &t, (2 * n - 2, 0))?.witness().is_some()
            }
            Predicate::QGauduchon => h.del(&h.del_j(m.omega_power(n - 1))).is_zero(),
            Predicate::Balanced => h.del(&m.omega_power(n - 1).wedge(m.omega_bar_power(n))?).is_zero(),
            Predicate::Gauduchon => gauduchon_residual(h, m)?.is_zero(),
            Predicate::Einstein => {
                let cf = canonical_forms(h, m)?;
                ratio_or_none(&h.del_j(&cf.alpha), m.omega()).is_some()
            }
            Predicate::SktI => {
                let w = m.omega_i();
                h.del(&h.delbar(&w)).is_zero()
            }
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = HhaError;

    fn from_str(s: &str) -> Result<Predicate> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Predicate::ALL.into_iter().find(|p| p.name() == key).ok_or_else(|| HhaError::Parse(format!("unknown predicate '{s}'")))
    }
}

/// Metric families explored by [`search_metrics`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `sum a_i zeta^{2i-1} ^ zeta^{2i}` with grid entries.
    Diagonal,
    /// Diagonal grid plus one off-diagonal q-real perturbation with grid coefficient.
    Full,
}

/// A certificate that a coefficient of `del Omega^{n-1}` (or of a functional applied to it) is a
/// nonzero positive combination of monomials in the diagonal entries, hence never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicDiagonalCheck {
    /// Coefficients indexed by the blocks whose entries multiply, in block order.
    pub monomials: Vec<(Vec<usize>, ComplexScalar)>,
    pub never_zero: bool,
}

/// Outcome of a grid search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub predicate: Predicate,
    pub family: Family,
    pub height: u32,
    pub tested: usize,
    pub skipped_not_positive: usize,
    pub witness: Option<Form>,
    pub symbolic: Option<SymbolicDiagonalCheck>,
}

/// Positive rationals `p/q` with `1 <= p, q <= height`, sorted and deduplicated.
pub fn height_values(height: u32) -> Vec<Scalar> {
    let mut v: Vec<(i64, i64)> = Vec::new();
    for p in 1..=height as i64 {
        for q in 1..=height as i64 {
            if num_gcd(p, q) == 1 {
                v.push((p, q));
            }
        }
    }
    v.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    v.into_iter().map(|(p, q)| Scalar::frac(p, q)).collect()
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn cartesian(values: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..values).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Diagonal-family symbolic check for the q-balanced and q-strongly-Gauduchon predicates.
pub fn symbolic_diagonal_check(h: &HypercomplexAlgebra, predicate: Predicate) -> Result<Option<SymbolicDiagonalCheck>> {
    let n = h.n();
    if n < 2 || !matches!(predicate, Predicate::QBalanced | Predicate::QStronglyGauduchon) {
        return Ok(None);
    }
    let tgt = bidegree_basis(n, 2 * n - 1, 0);
    // Functionals: coordinates for q-balanced, the annihilator of im del_J otherwise.
    let functionals: Vec<Vec<ComplexScalar>> = match predicate {
        Predicate::QBalanced => (0..tgt.len())
            .map(|k| (0..tgt.len()).map(|j| if j == k { ComplexScalar::one() } else { ComplexScalar::zero() }).collect())
            .collect(),
        _ => {
            let imgs: Mat<ComplexScalar> = bidegree_basis(n, 2 * n - 2, 0)
                .into_iter()
                .map(|m| {
                    let f = h.del_j(&Form::monomial(n, m, ComplexScalar::one()));
                    tgt.iter().map(|&t| f.coeff(t)).collect()
                })
                .collect();
            if imgs.is_empty() {
                Vec::new()
            } else {
                linalg::kernel(&imgs, tgt.len())
            }
        }
    };
    let nf = factorial(n - 1);
    let subsets: Vec<Vec<usize>> = (0..n).map(|skip| (0..n).filter(|&b| b != skip).collect()).collect();
    let forms: Vec<Form> = subsets
        .iter()
        .map(|s| {
            let mut f = Form::one(n);
            for &b in s {
                f = f.wedge(&Form::zetas(n, &[2 * b + 1, 2 * b + 2]))?;
            }
            Ok(h.del(&f).scale_real(&nf))
        })
        .collect::<Result<_>>()?;
    for l in &functionals {
        let vals: Vec<ComplexScalar> =
            forms.iter().map(|f| tgt.iter().zip(l).fold(ComplexScalar::zero(), |acc, (&t, c)| &acc + &(&f.coeff(t) * c))).collect();
        let nonzero: Vec<&ComplexScalar> = vals.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            continue;
        }
        // Normalize the phase by the first nonzero value.
        let phase = nonzero[0].clone();
        let normalized: Vec<ComplexScalar> = vals.iter().map(|c| c / &phase).collect();
        if normalized.iter().all(|c| c.is_real() && !c.re.is_negative()) {
            return Ok(Some(SymbolicDiagonalCheck { monomials: subsets.iter().cloned().zip(vals).collect(), never_zero: true }));
        }
    }
    Ok(Some(SymbolicDiagonalCheck { monomials: Vec::new(), never_zero: false }))
}

/// Enumerates metrics over a bounded rational grid and returns the first that satisfies `predicate`.
pub fn search_metrics(h: &HypercomplexAlgebra, family: Family, predicate: Predicate, height: u32) -> Result<SearchOutcome> {
    let n = h.n();
    let values = height_values(height.max(1));
    let diag: Vec<Vec<Scalar>> =
        cartesian(values.len(), n).into_iter().map(|ix| ix.into_iter().map(|i| values[i].clone()).collect()).collect();
    let mut candidates: Vec<Form> = Vec::new();
    for d in &diag {
        let base = (0..n).fold(Form::zero(n), |acc, i| acc.add(&Form::zetas(n, &[2 * i + 1, 2 * i + 2]).scale_real(&d[i])));
        candidates.push(base.clone());
        if family == Family::Full {
            for q in q_real_basis(n) {
                if is_block_diagonal(&q) {
                    continue;
                }
                for v in &values {
                    candidates.push(base.add(&q.scale_real(v)));
                    candidates.push(base.sub(&q.scale_real(v)));
                }
            }
        }
    }
    let results: Vec<Result<Option<bool>>> = par::map(&candidates, |omega| match HyperhermitianMetric::from_omega(omega.clone()) {
        Ok(m) => predicate.evaluate(h, &m).map(Some),
        Err(HhaError::Metric(_)) => Ok(None),
        Err(e) => Err(e),
    });
    let mut tested = 0;
    let mut skipped = 0;
    let mut witness = None;
    for (omega, r) in candidates.iter().zip(results) {
        match r? {
            None => skipped += 1,
            Some(ok) => {
                tested += 1;
                if ok && witness.is_none() {
                    witness = Some(omega.clone());
                }
            }
        }
    }
    Ok(SearchOutcome {
        predicate,
        family,
        height,
        tested,
        skipped_not_positive: skipped,
        witness,
        symbolic: symbolic_diagonal_check(h, predicate)?,
    })
}

fn is_block_diagonal(f: &Form) -> bool {
    f.terms().keys().all(|&m| {
        let a = m.trailing_zeros() as usize;
        m.count_ones() == 2 && a.is_multiple_of(2) && m == (0b11u64 << a)
    })
}

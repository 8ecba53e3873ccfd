//! Hyperhermitian metrics and the tensors they determine: the correspondence
//! between (1,1)- and (2,0)-forms, q-positivity, inner products, Hodge star,
//! Lefschetz adjoints, the canonical forms alpha and beta, Ricci forms and
//! scalar curvatures.
//!
//! All computations take place in the standard frame of an adapted basis, so
//! `J` acts on generators by the standard block rule. A metric is stored both as
//! its (2,0)-form `Omega = (omega_J + i omega_K)/2` and as the real Gram matrix
//! `G[m][l] = g(e_m, e_l)`. With these conventions `Omega_std = sum zeta^{2i-1} ^ zeta^{2i}`
//! has Gram matrix `2 Id` and every `zeta^j` has unit length.

use crate::error::{HhaError, Result};
use crate::exterior::{
    antiholomorphic_mask, bidegree_basis, coframe_inverse, coframe_matrix, endomorphism_map, factorial, holomorphic_mask, Form,
    GeneratorMap, SkewMatrix,
};
use crate::hypercomplex::{HypercomplexAlgebra, HypercomplexStructure, SpherePoint};
use crate::linalg::{self, Definiteness, Mat};
use crate::scalar::{ComplexScalar, Scalar};

fn cmat(a: &Mat<Scalar>) -> Mat<ComplexScalar> {
    linalg::complexify(a)
}

fn ctranspose(a: &Mat<ComplexScalar>) -> Mat<ComplexScalar> {
    linalg::transpose(a)
}

fn conj_mat(a: &Mat<ComplexScalar>) -> Mat<ComplexScalar> {
    a.iter().map(|r| r.iter().map(ComplexScalar::conj).collect()).collect()
}

/// Matrix `W[m][l] = gamma(e_m, e_l)` of a 2-form on the real basis vectors.
pub fn real_matrix(f: &Form) -> Mat<ComplexScalar> {
    let c = coframe_matrix(f.n());
    linalg::matmul(&linalg::matmul(&ctranspose(&c), &f.two_form_matrix()), &c)
}

/// The 2-form whose values on real basis vectors are the skew part of `w`.
pub fn form_from_real_matrix(n: usize, w: &Mat<ComplexScalar>) -> Form {
    let ci = coframe_inverse(n);
    Form::from_bilinear(n, &linalg::matmul(&linalg::matmul(&ctranspose(&ci), w), &ci))
}

fn is_real_symmetric(g: &Mat<Scalar>) -> bool {
    (0..g.len()).all(|i| (0..g.len()).all(|j| g[i][j] == g[j][i]))
}

fn check_bidegree(f: &Form, p: usize, q: usize) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    match f.bidegree() {
        Some(b) if b == (p, q) => Ok(()),
        _ => Err(HhaError::Bidegree {
            expected: format!("({p},{q})"),
            got: f.bidegrees().iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join("+"),
        }),
    }
}

/// Standard `J` pullback on forms in quaternionic dimension `n`.
pub fn j_map(n: usize) -> GeneratorMap {
    endomorphism_map(n, HypercomplexStructure::standard(n).j())
}

/// Whether a form of bidegree `(2p, 2q)` satisfies `J(conj f) = f` for the standard `J`.
pub fn is_q_real(f: &Form) -> bool {
    j_map(f.n()).apply(&f.conj()) == *f
}

/// Result of a q-positivity test.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    Semipositive,
    Zero,
    Negative,
    Seminegative,
    Indefinite,
}

impl Positivity {
    fn from_definiteness(d: Definiteness) -> Positivity {
        match d {
            Definiteness::PositiveDefinite => Positivity::Positive,
            Definiteness::PositiveSemidefinite => Positivity::Semipositive,
            Definiteness::Zero => Positivity::Zero,
            Definiteness::NegativeDefinite => Positivity::Negative,
            Definiteness::NegativeSemidefinite => Positivity::Seminegative,
            Definiteness::Indefinite => Positivity::Indefinite,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Positivity::Positive
    }

    /// Positive, semipositive or zero.
    pub fn is_semipositive(self) -> bool {
        matches!(self, Positivity::Positive | Positivity::Semipositive | Positivity::Zero)
    }
}

/// Real symmetric matrix `S[m][l] = Re xi(e_m, J e_l)` of a (2,0)-form.
fn j_pairing_matrix(xi: &Form) -> Mat<Scalar> {
    let n = xi.n();
    let w = real_matrix(xi);
    let j = cmat(HypercomplexStructure::standard(n).j());
    let wj = linalg::matmul(&w, &j);
    wj.iter().map(|r| r.iter().map(|c| c.re.clone()).collect()).collect()
}

/// Decides q-positivity of a q-real (2,0)-form through `X -> xi(X, JX)`.
pub fn q_positivity(xi: &Form) -> Result<Positivity> {
    check_bidegree(xi, 2, 0)?;
    if !is_q_real(xi) {
        return Err(HhaError::NotQReal);
    }
    let s = j_pairing_matrix(xi);
    if !is_real_symmetric(&s) {
        return Err(HhaError::Consistency("xi(X, JY) has a non-symmetric real part on a q-real form".into()));
    }
    Ok(Positivity::from_definiteness(linalg::hermitian_definiteness(&cmat(&s))?))
}

/// Skew matrix `B[i][j]` read from `zeta^i ^ zeta^j ^ a = B[i][j] zeta^1 ^ .. ^ zeta^{2n}`.
fn complement_matrix(a: &Form) -> Mat<ComplexScalar> {
    let n = a.n();
    let top = holomorphic_mask(n);
    let mut b: Mat<ComplexScalar> = linalg::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        for j in 0..2 * n {
            if i != j {
                let w = Form::generator(n, i).wedge(&Form::generator(n, j)).and_then(|x| x.wedge(a));
                if let Ok(w) = w {
                    b[i][j] = w.coeff(top);
                }
            }
        }
    }
    b
}

/// Decides whether a q-real (2n-2,0)-form is the (n-1)-th power of a q-positive (2,0)-form.
/// Returns the (2,0)-form when it is, normalized up to a positive constant.
pub fn q_positive_root(a: &Form) -> Result<Option<Form>> {
    let n = a.n();
    if n < 2 {
        return Err(HhaError::Precondition("(2n-2,0)-forms are constants when n = 1".into()));
    }
    check_bidegree(a, 2 * n - 2, 0)?;
    if !is_q_real(a) {
        return Err(HhaError::NotQReal);
    }
    if n == 2 {
        return Ok(q_positivity(a)?.is_positive().then(|| a.clone()));
    }
    // For Omega with skew matrix A, the pairing matrix of Omega^{n-1} is a positive
    // multiple of pf(A) A^{-1} up to a universal sign, so Omega is recovered from its inverse.
    let b = complement_matrix(a);
    let Some(binv) = linalg::inverse(&b) else {
        return Ok(None);
    };
    for sign in [1i64, -1] {
        let cand =
            SkewMatrix::from_full(&binv.iter().map(|r| r.iter().map(|c| c.scale(&Scalar::from_int(sign))).collect()).collect()).to_form();
        if !is_q_real(&cand) || !q_positivity(&cand)?.is_positive() {
            continue;
        }
        let power = cand.power(n - 1)?;
        if let Some(r) = a.ratio_to(&power) {
            if r.is_real() && r.re.is_positive() {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

/// An invariant hyperhermitian metric in the standard frame.
#[derive(Clone, Debug)]
pub struct HyperhermitianMetric {
    n: usize,
    omega: Form,
    gram: Mat<Scalar>,
    gram_inv: Mat<Scalar>,
    orth: GeneratorMap,
    weights: Vec<Scalar>,
    omega_pow: Vec<Form>,
    omega_bar_pow: Vec<Form>,
    volume: Form,
}

impl PartialEq for HyperhermitianMetric {
    fn eq(&self, o: &Self) -> bool {
        self.omega == o.omega
    }
}

impl HyperhermitianMetric {
    /// Metric from its (2,0)-form; checks bidegree, q-reality and q-positivity.
    pub fn from_omega(omega: Form) -> Result<HyperhermitianMetric> {
        let n = omega.n();
        check_bidegree(&omega, 2, 0)?;
        match q_positivity(&omega)? {
            Positivity::Positive => {}
            other => return Err(HhaError::Metric(format!("Omega is not q-positive ({other:?})"))),
        }
        // Omega(X, JY) = (g(X, Y) - i omega_I(X, Y)) / 2.
        let s = j_pairing_matrix(&omega);
        let gram: Mat<Scalar> = s.iter().map(|r| r.iter().map(|x| x * &Scalar::from_int(2)).collect()).collect();
        HyperhermitianMetric::finish(n, omega, gram)
    }

    /// Metric from a real Gram matrix in the adapted basis; checks symmetry, positivity
    /// and invariance under the standard `I` and `J`.
    pub fn from_gram(n: usize, gram: Mat<Scalar>) -> Result<HyperhermitianMetric> {
        let d = 4 * n;
        if gram.len() != d || gram.iter().any(|r| r.len() != d) {
            return Err(HhaError::Metric(format!("Gram matrix must be {d}x{d}")));
        }
        if !is_real_symmetric(&gram) {
            return Err(HhaError::Metric("Gram matrix is not symmetric".into()));
        }
        if linalg::hermitian_definiteness(&cmat(&gram))? != Definiteness::PositiveDefinite {
            return Err(HhaError::Metric("Gram matrix is not positive definite".into()));
        }
        let h = HypercomplexStructure::standard(n);
        for (name, l) in [("I", h.i()), ("J", h.j())] {
            let pulled = linalg::matmul(&linalg::matmul(&linalg::transpose(l), &gram), l);
            if pulled != gram {
                return Err(HhaError::Metric(format!("Gram matrix is not {name}-invariant")));
            }
        }
        let wj = linalg::matmul(&linalg::transpose(h.j()), &gram);
        let wk = linalg::matmul(&linalg::transpose(h.k()), &gram);
        let half = ComplexScalar::frac(1, 2);
        let w: Mat<ComplexScalar> = (0..d)
            .map(|m| {
                (0..d)
                    .map(|l| &(&ComplexScalar::real(wj[m][l].clone()) + &ComplexScalar::new(Scalar::zero(), wk[m][l].clone())) * &half)
                    .collect()
            })
            .collect();
        let omega = form_from_real_matrix(n, &w);
        if omega.bidegree().is_some_and(|b| b != (2, 0)) || omega.bidegrees().len() > 1 {
            return Err(HhaError::Consistency("(omega_J + i omega_K)/2 is not of type (2,0)".into()));
        }
        HyperhermitianMetric::finish(n, omega, gram)
    }

    /// `sum_i a_i zeta^{2i-1} ^ zeta^{2i}` with positive entries.
    pub fn diagonal(n: usize, a: &[Scalar]) -> Result<HyperhermitianMetric> {
        if a.len() != n {
            return Err(HhaError::Metric(format!("expected {n} diagonal entries, got {}", a.len())));
        }
        if let Some(x) = a.iter().find(|x| !x.is_positive()) {
            return Err(HhaError::Metric(format!("diagonal entry {x} is not positive")));
        }
        let mut omega = Form::zero(n);
        for (i, x) in a.iter().enumerate() {
            omega = omega.add(&Form::zetas(n, &[2 * i + 1, 2 * i + 2]).scale_real(x));
        }
        HyperhermitianMetric::from_omega(omega)
    }

    /// `Omega_std`.
    pub fn standard(n: usize) -> HyperhermitianMetric {
        HyperhermitianMetric::diagonal(n, &vec![Scalar::one(); n]).expect("standard metric is valid")
    }

    /// The metric with unit Gram matrix, `Omega_std / 2`.
    pub fn orthonormal(n: usize) -> HyperhermitianMetric {
        HyperhermitianMetric::diagonal(n, &vec![Scalar::frac(1, 2); n]).expect("orthonormal metric is valid")
    }

    /// Metric for a structure given in an arbitrary basis: the Gram matrix is
    /// taken in the input basis of `h` and moved to its adapted basis.
    pub fn from_input_gram(h: &HypercomplexAlgebra, gram: &Mat<Scalar>) -> Result<HyperhermitianMetric> {
        let p = h.basis();
        let g = linalg::matmul(&linalg::matmul(&linalg::transpose(p), gram), p);
        HyperhermitianMetric::from_gram(h.n(), g)
    }

    /// Gram matrix in the input basis of `h`.
    pub fn input_gram(&self, h: &HypercomplexAlgebra) -> Result<Mat<Scalar>> {
        let pinv = linalg::inverse(h.basis()).ok_or_else(|| HhaError::Consistency("adapted basis is singular".into()))?;
        Ok(linalg::matmul(&linalg::matmul(&linalg::transpose(&pinv), &self.gram), &pinv))
    }

    fn finish(n: usize, omega: Form, gram: Mat<Scalar>) -> Result<HyperhermitianMetric> {
        let gram_inv = linalg::inverse(&gram).ok_or_else(|| HhaError::Metric("Gram matrix is singular".into()))?;
        // Hermitian product on generators: <g_a, g_b> = sum C[a][m] G^{-1}[m][l] conj(C[b][l]).
        let c = coframe_matrix(n);
        let hcov = linalg::matmul(&linalg::matmul(&c, &cmat(&gram_inv)), &ctranspose(&conj_mat(&c)));
        let (l, weights) =
            linalg::ldl_hermitian(&hcov).ok_or_else(|| HhaError::Metric("induced product on forms is not positive definite".into()))?;
        let orth = GeneratorMap::new(n, l);
        let mut omega_pow = vec![Form::one(n)];
        for k in 1..=n {
            let next = omega_pow[k - 1].wedge(&omega)?;
            omega_pow.push(next);
        }
        let omega_bar_pow: Vec<Form> = omega_pow.iter().map(Form::conj).collect();
        let nf = factorial(n);
        let volume = omega_pow[n].wedge(&omega_bar_pow[n])?.scale_real(&(&nf * &nf).inv().expect("nonzero"));
        Ok(HyperhermitianMetric { n, omega, gram, gram_inv, orth, weights, omega_pow, omega_bar_pow, volume })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn omega_bar(&self) -> &Form {
        &self.omega_bar_pow[1]
    }

    /// `Omega^k` for `0 <= k <= n`.
    pub fn omega_power(&self, k: usize) -> &Form {
        &self.omega_pow[k]
    }

    /// `conj(Omega)^k` for `0 <= k <= n`.
    pub fn omega_bar_power(&self, k: usize) -> &Form {
        &self.omega_bar_pow[k]
    }

    /// Real Gram matrix in the adapted basis.
    pub fn gram(&self) -> &Mat<Scalar> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Mat<Scalar> {
        &self.gram_inv
    }

    /// `Omega^n ^ conj(Omega)^n / (n!)^2`.
    pub fn volume(&self) -> &Form {
        &self.volume
    }

    pub fn skew_matrix(&self) -> Result<SkewMatrix> {
        SkewMatrix::from_form(&self.omega)
    }

    /// The metric `c Omega` for a positive constant `c`.
    pub fn scaled(&self, c: &Scalar) -> Result<HyperhermitianMetric> {
        if !c.is_positive() {
            return Err(HhaError::Metric(format!("scale factor {c} is not positive")));
        }
        HyperhermitianMetric::from_omega(self.omega.scale_real(c))
    }

    /// Hermitian matrix `g_{r sbar} = g(Z_r, conj Z_s)` on the (1,0)-frame.
    pub fn hermitian_matrix(&self) -> Mat<ComplexScalar> {
        let n = self.n;
        let ci = coframe_inverse(n);
        let gc = linalg::matmul(&linalg::matmul(&ctranspose(&ci), &cmat(&self.gram)), &ci);
        (0..2 * n).map(|r| (0..2 * n).map(|s| gc[r][2 * n + s].clone()).collect()).collect()
    }

    /// `omega_L(X, Y) = g(LX, Y)` for `L = aI + bJ + cK`.
    pub fn omega_l(&self, p: &SpherePoint) -> Form {
        let l = HypercomplexStructure::standard(self.n).endomorphism(p);
        let w = linalg::matmul(&linalg::transpose(&l), &self.gram);
        form_from_real_matrix(self.n, &cmat(&w))
    }

    pub fn omega_i(&self) -> Form {
        self.omega_l(&SpherePoint::axis(0))
    }

    /// `omega_L = w Omega + conj(w) conj(Omega)` with `w = a - ib` for `L = aJ + bK`.
    pub fn omega_equatorial(&self, a: &Scalar, b: &Scalar) -> Result<Form> {
        SpherePoint::new(Scalar::zero(), a.clone(), b.clone())?;
        let w = ComplexScalar::new(a.clone(), -b);
        Ok(self.omega.scale(&w).add(&self.omega_bar().scale(&w.conj())))
    }

    fn weight(&self, mask: u64) -> Scalar {
        let mut w = Scalar::one();
        let mut r = mask;
        while r != 0 {
            let a = r.trailing_zeros() as usize;
            r &= r - 1;
            w = &w * &self.weights[a];
        }
        w
    }

    /// Hermitian product `<a, b>`, linear in `a` and antilinear in `b`.
    pub fn inner(&self, a: &Form, b: &Form) -> ComplexScalar {
        let a2 = self.orth.apply(a);
        let b2 = self.orth.apply(b);
        let mut s = ComplexScalar::zero();
        for (m, c) in a2.terms() {
            let d = b2.coeff(*m);
            if !d.is_zero() {
                s = &s + &(c * &d.conj()).scale(&self.weight(*m));
            }
        }
        s
    }

    /// `<a, b>` for two forms of the same pure bidegree.
    pub fn pairing(&self, a: &Form, b: &Form) -> Result<ComplexScalar> {
        if !a.is_zero() && !b.is_zero() && (a.bidegree().is_none() || a.bidegree() != b.bidegree()) {
            return Err(HhaError::Bidegree { expected: format!("{:?}", a.bidegree()), got: format!("{:?}", b.bidegree()) });
        }
        Ok(self.inner(a, b))
    }

    /// `|a|^2`.
    pub fn norm_sqr(&self, a: &Form) -> Scalar {
        self.inner(a, a).re
    }

    /// Hodge star defined by `psi ^ *zeta = <psi, zeta> vol`.
    pub fn hodge_star(&self, zeta: &Form) -> Form {
        let n = self.n;
        let full = if 4 * n == 64 { u64::MAX } else { (1u64 << (4 * n)) - 1 };
        let cvol = self.volume.coeff(full);
        let z2 = self.orth.apply(zeta);
        let mut out = Form::zero(n);
        for (p, q) in zeta.bidegrees() {
            for a in bidegree_basis(n, p, q) {
                let ga = self.orth.apply(&Form::monomial(n, a, ComplexScalar::one()));
                let mut ip = ComplexScalar::zero();
                for (m, c) in ga.terms() {
                    let d = z2.coeff(*m);
                    if !d.is_zero() {
                        ip = &ip + &(c * &d.conj()).scale(&self.weight(*m));
                    }
                }
                if ip.is_zero() {
                    continue;
                }
                let comp = full & !a;
                // g_A ^ g_{A^c} = sign * g_full.
                let sign_neg = Form::monomial(n, a, ComplexScalar::one())
                    .wedge(&Form::monomial(n, comp, ComplexScalar::one()))
                    .map(|w| w.coeff(full).re.is_negative())
                    .unwrap_or(false);
                let mut c = &ip * &cvol;
                if sign_neg {
                    c = -c;
                }
                out.add_term(comp, &c);
            }
        }
        out
    }

    /// Adjoint of `Omega ^ .` (or of `conj(Omega) ^ .` when `conjugate`) on a form of pure bidegree.
    pub fn lefschetz_adjoint(&self, phi: &Form, conjugate: bool) -> Result<Form> {
        let n = self.n;
        if phi.is_zero() {
            return Ok(Form::zero(n));
        }
        let (p, q) = phi.bidegree().ok_or_else(|| HhaError::Bidegree { expected: "pure bidegree".into(), got: "mixed".into() })?;
        let target = if conjugate { (p, q.checked_sub(2)) } else { (p.checked_sub(2).unwrap_or(usize::MAX), Some(q)) };
        let (tp, tq) = match target {
            (tp, Some(tq)) if tp != usize::MAX => (tp, tq),
            _ => return Ok(Form::zero(n)),
        };
        let l = if conjugate { self.omega_bar() } else { &self.omega };
        let basis = bidegree_basis(n, tp, tq);
        let xs: Vec<Form> = basis.iter().map(|&m| Form::monomial(n, m, ComplexScalar::one())).collect();
        let mut gram: Mat<ComplexScalar> = linalg::zeros(xs.len(), xs.len());
        let mut rhs = Vec::with_capacity(xs.len());
        for (a, xa) in xs.iter().enumerate() {
            for (b, xb) in xs.iter().enumerate() {
                gram[a][b] = self.inner(xb, xa);
            }
            rhs.push(self.inner(phi, &l.wedge(xa)?));
        }
        let y = linalg::solve(&gram, &rhs).ok_or_else(|| HhaError::Consistency("Gram matrix of forms is singular".into()))?;
        Ok(Form::from_terms(n, basis.into_iter().zip(y)))
    }

    /// `tr_Omega xi = n xi ^ Omega^{n-1} / Omega^n` for any (2,0)-form (complex in general).
    pub fn trace_omega_raw(&self, xi: &Form) -> Result<ComplexScalar> {
        let n = self.n;
        let top = holomorphic_mask(n);
        let num = xi.component(2, 0).wedge(&self.omega_pow[n - 1])?.coeff(top);
        let den = self.omega_pow[n].coeff(top);
        Ok((&num * &den.inv().expect("Omega^n is nonzero")).scale(&Scalar::from_int(n as i64)))
    }

    /// `tr_Omega` of a q-real (2,0)-form.
    pub fn trace_omega(&self, xi: &Form) -> Result<Scalar> {
        check_bidegree(xi, 2, 0)?;
        if !is_q_real(xi) {
            return Err(HhaError::NotQReal);
        }
        let t = self.trace_omega_raw(xi)?;
        if !t.is_real() {
            return Err(HhaError::Consistency(format!("trace of a q-real form is not real: {t}")));
        }
        Ok(t.re)
    }

    /// `tr_{conj Omega}` of a (0,2)-form.
    pub fn trace_omega_bar_raw(&self, xi: &Form) -> Result<ComplexScalar> {
        let n = self.n;
        let top = antiholomorphic_mask(n);
        let num = xi.component(0, 2).wedge(&self.omega_bar_pow[n - 1])?.coeff(top);
        let den = self.omega_bar_pow[n].coeff(top);
        Ok((&num * &den.inv().expect("nonzero")).scale(&Scalar::from_int(n as i64)))
    }

    /// `tr_{omega_L} gamma = 1/2 sum G^{-1}_{ab} gamma(e_a, L e_b)` for `L = aI + bJ + cK`.
    pub fn trace_omega_l(&self, gamma: &Form, p: &SpherePoint) -> ComplexScalar {
        let l = HypercomplexStructure::standard(self.n).endomorphism(p);
        let w = linalg::matmul(&real_matrix(gamma), &cmat(&l));
        let mut s = ComplexScalar::zero();
        for (a, row) in self.gram_inv.iter().enumerate() {
            for (b, g) in row.iter().enumerate() {
                if !g.is_zero() && !w[a][b].is_zero() {
                    s = &s + &w[a][b].scale(g);
                }
            }
        }
        s.scale(&Scalar::frac(1, 2))
    }

    /// `tr_{omega_I}`.
    pub fn trace_omega_i(&self, gamma: &Form) -> ComplexScalar {
        self.trace_omega_l(gamma, &SpherePoint::axis(0))
    }

    /// Trace of a real 2-form against `g^{-1}` as a bilinear form (zero on skew forms).
    pub fn metric_trace(&self, gamma: &Form) -> ComplexScalar {
        let w = real_matrix(gamma);
        let mut s = ComplexScalar::zero();
        for (a, row) in self.gram_inv.iter().enumerate() {
            for (b, g) in row.iter().enumerate() {
                if !g.is_zero() {
                    s = &s + &w[a][b].scale(g);
                }
            }
        }
        s
    }
}

/// Generator-level matrix of `J` in the standard frame.
fn j_generator_matrix(n: usize) -> Mat<ComplexScalar> {
    j_map(n).matrix().clone()
}

fn k_generator_matrix(n: usize) -> Mat<ComplexScalar> {
    endomorphism_map(n, HypercomplexStructure::standard(n).k()).matrix().clone()
}

/// `Phi(gamma)(X, Y) = (i gamma(JX, Y) - gamma(KX, Y)) / 2`, skew-symmetrized; on (1,1)-forms
/// this equals `Phi((gamma - J gamma)/2)`.
pub fn phi(gamma: &Form) -> Result<Form> {
    check_bidegree(gamma, 1, 1)?;
    let n = gamma.n();
    let g = gamma.two_form_matrix();
    let mj = ctranspose(&j_generator_matrix(n));
    let mk = ctranspose(&k_generator_matrix(n));
    let a = linalg::matmul(&mj, &g);
    let b = linalg::matmul(&mk, &g);
    let half = ComplexScalar::frac(1, 2);
    let m: Mat<ComplexScalar> = (0..4 * n).map(|r| (0..4 * n).map(|c| &(&a[r][c].mul_i() - &b[r][c]) * &half).collect()).collect();
    Ok(Form::from_bilinear(n, &m))
}

/// Inverse of [`phi`] on (2,0)-forms: `(xi + J xi)(KX, Y)`, a J-anti-invariant (1,1)-form.
pub fn phi_inverse(xi: &Form) -> Result<Form> {
    check_bidegree(xi, 2, 0)?;
    let n = xi.n();
    let s = xi.add(&j_map(n).apply(xi));
    let mk = ctranspose(&k_generator_matrix(n));
    Ok(Form::from_bilinear(n, &linalg::matmul(&mk, &s.two_form_matrix())))
}

/// The forms `alpha`, `beta` and their combinations.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForms {
    pub alpha: Form,
    pub beta: Form,
    /// `eta = alpha + conj(alpha)`, the Obata connection form on the canonical bundle.
    pub eta: Form,
    /// Lee form `alpha + conj(alpha) + beta + conj(beta)`.
    pub theta: Form,
}

/// `alpha` from `del conj(Omega)^n = alpha ^ conj(Omega)^n`.
pub fn alpha_by_division(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<Form> {
    let n = m.n();
    let target = h.del(m.omega_bar_power(n));
    let anti = antiholomorphic_mask(n);
    let den = m.omega_bar_power(n).coeff(anti).inv().expect("conj(Omega)^n is nonzero");
    let alpha = Form::from_terms(n, (0..2 * n).map(|b| (1u64 << b, &target.coeff((1u64 << b) | anti) * &den)));
    if alpha.wedge(m.omega_bar_power(n))? != target {
        return Err(HhaError::Consistency("del conj(Omega)^n is not divisible by conj(Omega)^n".into()));
    }
    Ok(alpha)
}

/// `beta` from `del Omega^{n-1} = beta ^ Omega^{n-1}`.
pub fn beta_by_division(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<Form> {
    let n = m.n();
    if n == 1 {
        return Ok(Form::zero(n));
    }
    let target = h.del(m.omega_power(n - 1));
    let rows = bidegree_basis(n, 2 * n - 1, 0);
    let cols: Vec<Form> = (0..2 * n).map(|b| Form::generator(n, b).wedge(m.omega_power(n - 1))).collect::<Result<_>>()?;
    let a: Mat<ComplexScalar> = rows.iter().map(|&r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    let rhs: Vec<ComplexScalar> = rows.iter().map(|&r| target.coeff(r)).collect();
    let y = linalg::solve(&a, &rhs).ok_or_else(|| HhaError::Consistency("Lefschetz map on (1,0)-forms is singular".into()))?;
    let beta = Form::from_terms(n, y.into_iter().enumerate().map(|(b, c)| (1u64 << b, c)));
    if beta.wedge(m.omega_power(n - 1))? != target {
        return Err(HhaError::Consistency("del Omega^{n-1} is not divisible by Omega^{n-1}".into()));
    }
    Ok(beta)
}

/// `alpha` and `beta` by division, cross-checked against `alpha = Lambdabar(del conj Omega)`
/// and `beta = Lambda(del Omega)`.
pub fn canonical_forms(h: &HypercomplexAlgebra, m: &HyperhermitianMetric) -> Result<CanonicalForms> {
    let alpha = alpha_by_division(h, m)?;
    let beta = beta_by_division(h, m)?;
    let alpha_l = m.lefschetz_adjoint(&h.del(m.omega_bar()), true)?;
    if alpha_l != alpha {
        return Err(HhaError::Consistency(format!("alpha by division ({alpha}) differs from Lambdabar route ({alpha_l})")));
    }
    let beta_l = m.lefschetz_adjoint(&h.del(m.omega()), false)?;
    if beta_l != beta {
        return Err(HhaError::Consistency(format!("beta by division ({beta}) differs from Lambda route ({beta_l})")));
    }
    let eta = alpha.add(&alpha.conj());
    let theta = eta.add(&beta).add(&beta.conj());
    Ok(CanonicalForms { alpha, beta, eta, theta })
}

/// Ricci forms, scalar curvatures and the twisted derivatives of alpha and beta.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData {
    pub ric_chern: Form,
    pub ric_bismut: Form,
    pub ric_obata: Form,
    pub s_chern: Scalar,
    pub s_bismut: Scalar,
    pub s_obata: Scalar,
    pub del_j_alpha: Form,
    pub del_j_beta: Form,
}

fn real_scalar(c: ComplexScalar, what: &str) -> Result<Scalar> {
    if !c.is_real() {
        return Err(HhaError::Consistency(format!("{what} is not real: {c}")));
    }
    Ok(c.re)
}

/// Computes curvature data, cross-checking both scalar curvatures against the
/// `omega_I`-traces of the corresponding Ricci forms.
pub fn curvature(h: &HypercomplexAlgebra, m: &HyperhermitianMetric, cf: &CanonicalForms) -> Result<CurvatureData> {
    let i = ComplexScalar::i();
    let ric_chern = h.d(&cf.alpha.sub(&cf.alpha.conj()).scale(&i));
    let ric_bismut = h.d(&cf.beta.sub(&cf.beta.conj()).scale(&i)).neg();
    let ric_obata = h.d(&cf.eta);
    let del_j_alpha = h.del_j(&cf.alpha);
    let del_j_beta = h.del_j(&cf.beta);
    let two = Scalar::from_int(2);
    let s_chern = &two * &real_scalar(m.trace_omega_raw(&del_j_alpha)?, "tr_Omega(del_J alpha)")?;
    let s_bismut = -&(&two * &real_scalar(m.trace_omega_raw(&del_j_beta)?, "tr_Omega(del_J beta)")?);
    let s_chern_trace = real_scalar(m.trace_omega_i(&ric_chern), "tr_omega_I Ric^Ch")?;
    if s_chern_trace != s_chern {
        return Err(HhaError::Consistency(format!("s^Ch = 2 tr_Omega(del_J alpha) = {s_chern} but tr_omega_I Ric^Ch = {s_chern_trace}")));
    }
    let s_bismut_trace = real_scalar(m.trace_omega_i(&ric_bismut), "tr_omega_I Ric^Bis")?;
    if s_bismut_trace != s_bismut {
        return Err(HhaError::Consistency(format!(
            "s^Bis = -2 tr_Omega(del_J beta) = {s_bismut} but tr_omega_I Ric^Bis = {s_bismut_trace}"
        )));
    }
    let s_obata = real_scalar(m.metric_trace(&ric_obata), "Obata scalar curvature")?;
    Ok(CurvatureData { ric_chern, ric_bismut, ric_obata, s_chern, s_bismut, s_obata, del_j_alpha, del_j_beta })
}

//! Generative procedures for hyperhermitian Lie algebras: direct sums, the
//! Arroyo–Nicolini gluing, the Barberis–Fino semidirect extension by a
//! quaternionic representation, and Joyce's construction on compact groups
//! with its HKT-Einstein metric.
//!
//! Inputs are taken in the adapted frame of each [`HypercomplexAlgebra`], where
//! the structure is standard, so every output carries the standard structure.

use crate::classify::{classify_metric, einstein_factor, ClassificationReport};
use crate::error::{HhaError, Result};
use crate::exterior::{Form, Mask};
use crate::hermitian::{canonical_forms, curvature, HyperhermitianMetric};
use crate::hypercomplex::{HypercomplexAlgebra, HypercomplexStructure};
use crate::liealg::{span_basis, LieAlgebra};
use crate::linalg::{self, Mat};
use crate::scalar::Scalar;

/// A hypercomplex algebra together with a metric on it.
#[derive(Clone, Debug)]
pub struct Built {
    pub h: HypercomplexAlgebra,
    pub metric: HyperhermitianMetric,
}

impl Built {
    pub fn classify(&self) -> Result<ClassificationReport> {
        classify_metric(&self.h, &self.metric)
    }
}

/// Re-indexes a form on `n_small` quaternionic dimensions into `n_total`, shifting it by
/// `offset` quaternionic blocks. This is the pullback along the projection onto that summand.
pub fn embed_form(f: &Form, n_total: usize, offset: usize) -> Form {
    let n = f.n();
    assert!(offset + n <= n_total, "summand does not fit");
    let map = |m: Mask| -> Mask {
        let mut out = 0u64;
        let mut r = m;
        while r != 0 {
            let a = r.trailing_zeros() as usize;
            r &= r - 1;
            let b = if a < 2 * n { a + 2 * offset } else { 2 * n_total + (a - 2 * n) + 2 * offset };
            out |= 1u64 << b;
        }
        out
    };
    // Generator order is preserved within each half, so signs do not change.
    Form::from_terms(n_total, f.terms().iter().map(|(&m, c)| (map(m), c.clone())))
}

fn shifted_entries(alg: &LieAlgebra, off: usize) -> Vec<(usize, usize, usize, Scalar)> {
    alg.bracket_entries().into_iter().map(|(i, j, k, c)| (i + off, j + off, k + off, c)).collect()
}

/// Orthogonal direct sum with `Omega = Omega_1 + Omega_2`.
pub fn direct_sum(a: &Built, b: &Built) -> Result<Built> {
    let (n1, n2) = (a.h.n(), b.h.n());
    let alg = a.h.adapted_algebra().direct_sum(b.h.adapted_algebra())?;
    let h = HypercomplexAlgebra::standard(alg)?;
    let n = n1 + n2;
    let omega = embed_form(a.metric.omega(), n, 0).add(&embed_form(b.metric.omega(), n, n1));
    Ok(Built { h, metric: HyperhermitianMetric::from_omega(omega)? })
}

fn in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> bool {
    let mut rows: Mat<Scalar> = basis.to_vec();
    let before = linalg::rank(&rows);
    rows.push(v.to_vec());
    linalg::rank(&rows) == before
}

fn check_central_non_derived(alg: &LieAlgebra, e: &[Scalar], which: usize) -> Result<()> {
    if e.len() != alg.dim() {
        return Err(HhaError::Precondition(format!("e_{which} has {} entries, expected {}", e.len(), alg.dim())));
    }
    let inv = alg.invariants();
    if !in_span(e, &inv.center) {
        return Err(HhaError::Precondition(format!("e_{which} is not central")));
    }
    if in_span(e, &inv.derived) {
        return Err(HhaError::Precondition(format!("e_{which} lies in the derived algebra")));
    }
    Ok(())
}

/// Glues two hypercomplex algebras along central elements `e_1`, `e_2` (coordinates in the
/// adapted bases) by adding `X, Y, Z, W` with `[X, Y] = -[Z, W] = e_1 + e_2`; the new block is
/// placed last and carries the standard structure `IX = Y, IZ = W, JX = Z, JY = -W`.
/// The metric is `Omega_1 + Omega_2 + zeta^{2n-1} ^ zeta^{2n}`.
pub fn arroyo_nicolini(a: &Built, e1: &[Scalar], b: &Built, e2: &[Scalar]) -> Result<Built> {
    let (g1, g2) = (a.h.adapted_algebra(), b.h.adapted_algebra());
    check_central_non_derived(g1, e1, 1)?;
    check_central_non_derived(g2, e2, 2)?;
    let (d1, d2) = (g1.dim(), g2.dim());
    let dim = d1 + d2 + 4;
    let mut entries = shifted_entries(g1, 0);
    entries.extend(shifted_entries(g2, d1));
    let (x, y, z, w) = (d1 + d2, d1 + d2 + 1, d1 + d2 + 2, d1 + d2 + 3);
    for (k, c) in e1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        entries.push((x, y, k, c.clone()));
        entries.push((z, w, k, -c));
    }
    for (k, c) in e2.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        entries.push((x, y, d1 + k, c.clone()));
        entries.push((z, w, d1 + k, -c));
    }
    let alg = LieAlgebra::from_brackets(dim, &entries)?;
    let h = HypercomplexAlgebra::standard(alg)?;
    let n = h.n();
    let omega = embed_form(a.metric.omega(), n, 0).add(&embed_form(b.metric.omega(), n, a.h.n())).add(&Form::zetas(n, &[2 * n - 1, 2 * n]));
    Ok(Built { h, metric: HyperhermitianMetric::from_omega(omega)? })
}

/// A representation `rho: g -> gl(k, H)` by `4k x 4k` real matrices acting on column vectors of
/// `H^k = R^{4k}` with the standard quaternionic blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionicRep {
    pub k: usize,
    /// `matrices[a]` is `rho(e_a)` for the adapted basis vector `e_a`.
    pub matrices: Vec<Mat<Scalar>>,
}

/// Matrix of right multiplication by `q = (a, b, c, d) = a + bi + cj + dk` on `H = span(1, i, j, k)`.
pub fn right_multiplication(q: &[Scalar; 4]) -> Mat<Scalar> {
    let [a, b, c, d] = q;
    let cols = [
        [a.clone(), b.clone(), c.clone(), d.clone()],
        [-b, a.clone(), -d, c.clone()],
        [-c, d.clone(), a.clone(), -b],
        [-d, -c, b.clone(), a.clone()],
    ];
    (0..4).map(|r| (0..4).map(|col| cols[col][r].clone()).collect()).collect()
}

impl QuaternionicRep {
    /// The zero representation of an algebra of dimension `dim` on `H^k`.
    pub fn zero(dim: usize, k: usize) -> QuaternionicRep {
        QuaternionicRep { k, matrices: vec![linalg::zeros(4 * k, 4 * k); dim] }
    }

    /// `rho(e_a)` acts on every factor of `H^k` by right multiplication with `quats[a]`.
    pub fn diagonal_right(k: usize, quats: &[[Scalar; 4]]) -> QuaternionicRep {
        let matrices = quats
            .iter()
            .map(|q| {
                let r = right_multiplication(q);
                let mut m: Mat<Scalar> = linalg::zeros(4 * k, 4 * k);
                for b in 0..k {
                    for i in 0..4 {
                        for j in 0..4 {
                            m[4 * b + i][4 * b + j] = r[i][j].clone();
                        }
                    }
                }
                m
            })
            .collect();
        QuaternionicRep { k, matrices }
    }

    /// Whether every `rho(X)` is skew-symmetric, i.e. `rho` takes values in `sp(k)`.
    pub fn is_sp(&self) -> bool {
        self.matrices.iter().all(|m| (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == -&m[j][i])))
    }

    /// Checks H-linearity (commuting with the standard `I`, `J`) and the homomorphism property.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<()> {
        let d = alg.dim();
        if self.matrices.len() != d || self.matrices.iter().any(|m| m.len() != 4 * self.k) {
            return Err(HhaError::Representation(format!("expected {d} matrices of size {}", 4 * self.k)));
        }
        let std = HypercomplexStructure::standard(self.k);
        for (a, m) in self.matrices.iter().enumerate() {
            for (name, l) in [("I", std.i()), ("J", std.j())] {
                if linalg::matmul(m, l) != linalg::matmul(l, m) {
                    return Err(HhaError::Representation(format!("rho(e{}) does not commute with {name}", a + 1)));
                }
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                let ab = linalg::matmul(&self.matrices[a], &self.matrices[b]);
                let ba = linalg::matmul(&self.matrices[b], &self.matrices[a]);
                let comm: Mat<Scalar> = ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
                let mut img: Mat<Scalar> = linalg::zeros(4 * self.k, 4 * self.k);
                for (c, coef) in alg.bracket_basis(a, b) {
                    for (i, row) in self.matrices[*c].iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            img[i][j] = &img[i][j] + &(x * coef);
                        }
                    }
                }
                if comm != img {
                    return Err(HhaError::Representation(format!(
                        "rho([e{}, e{}]) differs from [rho(e{}), rho(e{})]",
                        a + 1,
                        b + 1,
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which pulled-back quantities coincide with those of the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackCheck {
    pub alpha: bool,
    pub beta: bool,
    pub ric_chern: bool,
    pub ric_bismut: bool,
}

impl PullbackCheck {
    pub fn all(&self) -> bool {
        self.alpha && self.beta && self.ric_chern && self.ric_bismut
    }
}

/// Output of [`barberis_fino`].
#[derive(Clone, Debug)]
pub struct BarberisFino {
    pub built: Built,
    pub sp: bool,
    /// Present when `rho` is `sp(k)`-valued.
    pub pullback: Option<PullbackCheck>,
}

/// `g semidirect_rho H^k` with `[(X,U),(Y,V)] = ([X,Y], rho_X V - rho_Y U)` and
/// `Omega~ = Omega + Omega_std(H^k)`.
pub fn barberis_fino(base: &Built, rho: &QuaternionicRep) -> Result<BarberisFino> {
    let g = base.h.adapted_algebra();
    rho.validate(g)?;
    let d = g.dim();
    let k = rho.k;
    let mut entries = shifted_entries(g, 0);
    for (a, m) in rho.matrices.iter().enumerate() {
        for s in 0..4 * k {
            for t in 0..4 * k {
                if !m[t][s].is_zero() {
                    entries.push((a, d + s, d + t, m[t][s].clone()));
                }
            }
        }
    }
    let alg = LieAlgebra::from_brackets(d + 4 * k, &entries)?;
    let h = HypercomplexAlgebra::standard(alg)?;
    let n = h.n();
    let n0 = base.h.n();
    let extra = (0..k).fold(Form::zero(k), |acc, i| acc.add(&Form::zetas(k, &[2 * i + 1, 2 * i + 2])));
    let omega = embed_form(base.metric.omega(), n, 0).add(&embed_form(&extra, n, n0));
    let built = Built { h, metric: HyperhermitianMetric::from_omega(omega)? };
    let sp = rho.is_sp();
    let pullback = if sp {
        let cf0 = canonical_forms(&base.h, &base.metric)?;
        let cu0 = curvature(&base.h, &base.metric, &cf0)?;
        let cf = canonical_forms(&built.h, &built.metric)?;
        let cu = curvature(&built.h, &built.metric, &cf)?;
        Some(PullbackCheck {
            alpha: cf.alpha == embed_form(&cf0.alpha, n, 0),
            beta: cf.beta == embed_form(&cf0.beta, n, 0),
            ric_chern: cu.ric_chern == embed_form(&cu0.ric_chern, n, 0),
            ric_bismut: cu.ric_bismut == embed_form(&cu0.ric_bismut, n, 0),
        })
    } else {
        None
    };
    Ok(BarberisFino { built, sp, pullback })
}

/// One `R (+) d_j (+) f_j` level of a Joyce decomposition, with vectors in the basis of the
/// semisimple algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct JoyceBlock {
    /// `(e_2, e_3, e_4)` spanning `d_j` with `[e_2,e_3] = 2e_4`, `[e_4,e_2] = 2e_3`, `[e_3,e_4] = 2e_2`.
    pub triple: [Vec<Scalar>; 3],
    /// One generator `f` per quaternionic line of `f_j`; the line is `(f, [e_2,f], [e_3,f], [e_4,f])`.
    pub lines: Vec<Vec<Scalar>>,
}

/// A Joyce decomposition `g = b (+) sum d_j (+) sum f_j` of a compact semisimple algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct JoyceData {
    pub name: String,
    pub algebra: LieAlgebra,
    pub rank: usize,
    /// Basis of `b` (dimension `rank - m`); `b_j` becomes the `R` direction of block `j`.
    pub b: Vec<Vec<Scalar>>,
    pub blocks: Vec<JoyceBlock>,
    /// Overrides the weights `mu_j = 1/sqrt(2(1 + d_j))`.
    pub mu: Option<Vec<Scalar>>,
}

/// Output of [`joyce_build`].
#[derive(Clone, Debug)]
pub struct JoyceOutput {
    pub built: Built,
    pub mu: Vec<Scalar>,
    /// Einstein factor recomputed from the output.
    pub lambda: Option<Scalar>,
    /// Dimension of the torus factor `2m - r`.
    pub torus_dim: usize,
}

fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    let (a, b) = x.parts()?;
    if !num_traits::Zero::is_zero(b) {
        return None;
    }
    Scalar::sqrt_rational(a)
}

fn scale_vec(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * s).collect()
}

fn sub_vec(v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    v.iter().zip(w).map(|(x, y)| x - y).collect()
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn bilinear(b: &Mat<Scalar>, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let bv = linalg::mat_vec(b, v);
    u.iter().zip(&bv).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

impl JoyceData {
    /// `d_j = dim_H f_j`.
    pub fn quaternionic_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.lines.len()).collect()
    }

    /// Real spans of `f_j` generated from the lines.
    fn module(&self, j: usize) -> Vec<Vec<Scalar>> {
        let blk = &self.blocks[j];
        blk.lines
            .iter()
            .flat_map(|f| {
                let mut v = vec![f.clone()];
                for e in &blk.triple {
                    v.push(self.algebra.bracket(e, f));
                }
                v
            })
            .collect()
    }

    /// Validates (J1)–(J4), the su(2) relations of each triple and that the pieces span `g`.
    pub fn validate(&self) -> Result<()> {
        let g = &self.algebra;
        let fail = |which: &str, msg: String| Err(HhaError::Structure(format!("({which}) {msg}")));
        let m = self.blocks.len();
        if self.b.len() + m != self.rank {
            return fail("J1", format!("dim b = {} but rank - m = {}", self.b.len(), self.rank as i64 - m as i64));
        }
        if self.b.len() > m {
            return fail("J1", "b has more directions than there are blocks".into());
        }
        g.check_jacobi()?;
        let two = Scalar::from_int(2);
        for (j, blk) in self.blocks.iter().enumerate() {
            let [e2, e3, e4] = &blk.triple;
            for (x, y, z) in [(e2, e3, e4), (e4, e2, e3), (e3, e4, e2)] {
                if g.bracket(x, y) != scale_vec(z, &two) {
                    return fail("J4", format!("block {} does not satisfy the su(2) relations", j + 1));
                }
            }
            for bv in &self.b {
                for e in &blk.triple {
                    if !is_zero_vec(&g.bracket(e, bv)) {
                        return fail("J1", format!("[d_{}, b] != 0", j + 1));
                    }
                }
            }
            for (i, other) in self.blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for x in &blk.triple {
                    for y in &other.triple {
                        if !is_zero_vec(&g.bracket(x, y)) {
                            return fail("J2", format!("[d_{}, d_{}] != 0", j + 1, i + 1));
                        }
                    }
                }
                if j < i {
                    for x in &blk.triple {
                        for f in self.module(i) {
                            if !is_zero_vec(&g.bracket(x, &f)) {
                                return fail("J3", format!("[d_{}, f_{}] != 0", j + 1, i + 1));
                            }
                        }
                    }
                }
            }
            let fj = self.module(j);
            if span_basis(&fj, g.dim()).len() != fj.len() {
                return fail("J4", format!("the lines of f_{} are not independent", j + 1));
            }
            for f in &fj {
                // Spin-1/2 action: ad(e_a)/1 squares to -1 and ad(e_2) ad(e_3) = ad(e_4) on f_j.
                for e in &blk.triple {
                    let ef = g.bracket(e, f);
                    if !in_span(&ef, &fj) {
                        return fail("J4", format!("[d_{}, f_{}] is not contained in f_{}", j + 1, j + 1, j + 1));
                    }
                    if !is_zero_vec(&sub_vec(&g.bracket(e, &ef), &scale_vec(f, &Scalar::from_int(-1)))) {
                        return fail("J4", format!("d_{} does not act on f_{} as on C^2", j + 1, j + 1));
                    }
                }
                if g.bracket(e2, &g.bracket(e3, f)) != g.bracket(e4, f) {
                    return fail("J4", format!("d_{} does not act on f_{} quaternionically", j + 1, j + 1));
                }
            }
        }
        let mut all: Vec<Vec<Scalar>> = self.b.clone();
        for (j, blk) in self.blocks.iter().enumerate() {
            all.extend(blk.triple.iter().cloned());
            all.extend(self.module(j));
        }
        if all.len() != g.dim() || span_basis(&all, g.dim()).len() != g.dim() {
            return Err(HhaError::Structure("the Joyce pieces do not form a basis of g".into()));
        }
        Ok(())
    }

    fn weights(&self) -> Result<Vec<Scalar>> {
        if let Some(mu) = &self.mu {
            if mu.len() != self.blocks.len() || mu.iter().any(|x| !x.is_positive()) {
                return Err(HhaError::Precondition("mu override needs one positive weight per block".into()));
            }
            return Ok(mu.clone());
        }
        self.quaternionic_dims()
            .into_iter()
            .map(|d| {
                Scalar::sqrt_rational(&num_rational::BigRational::new(1.into(), (2 * (1 + d) as i64).into()))
                    .ok_or_else(|| HhaError::Field("mu is not representable".into()))
            })
            .collect()
    }
}

/// Builds `R^{2m-r} (+) g` with Joyce's hypercomplex structure in the orthonormal frame
/// `(e_1^j, .., e_4^j)` with `[e_2^j, e_3^j] = 2 mu_j e_4^j` (cyclic), followed by the lines of each
/// `f_j` scaled to unit length for the ad-invariant metric of that block, and the metric with unit
/// Gram matrix in this frame.
pub fn joyce_build(data: &JoyceData) -> Result<JoyceOutput> {
    data.validate()?;
    let g = &data.algebra;
    let mu = data.weights()?;
    let m = data.blocks.len();
    let torus_dim = 2 * m - data.rank;
    let dim = torus_dim + g.dim();
    let killing = g.killing_form();
    let lift = |v: &[Scalar]| -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); torus_dim];
        w.extend(v.iter().cloned());
        w
    };
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    let mut torus_next = 0;
    let mut lines: Vec<Vec<Scalar>> = Vec::new();
    for (j, blk) in data.blocks.iter().enumerate() {
        let scaled: Vec<Vec<Scalar>> = blk.triple.iter().map(|e| scale_vec(e, &mu[j])).collect();
        // Ad-invariant metric c_j (-B) normalized so that the scaled triple is orthonormal.
        let c = (-&bilinear(&killing, &scaled[0], &scaled[0]))
            .inv()
            .ok_or_else(|| HhaError::Structure("Killing form vanishes on d_j".into()))?;
        let unit = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            let len2 = &c * &(-&bilinear(&killing, v, v));
            let s = sqrt_exact(&len2)
                .ok_or_else(|| HhaError::Field(format!("length {len2} has no square root in a single quadratic field")))?;
            Ok(scale_vec(v, &s.inv().ok_or_else(|| HhaError::Structure("zero vector".into()))?))
        };
        let e1 = if j < data.b.len() {
            lift(&unit(&data.b[j])?)
        } else {
            let mut v = vec![Scalar::zero(); dim];
            v[torus_next] = Scalar::one();
            torus_next += 1;
            v
        };
        cols.push(e1);
        cols.extend(scaled.iter().map(|v| lift(v)));
        for f in &blk.lines {
            let f = unit(f)?;
            lines.push(lift(&f));
            for e in &blk.triple {
                lines.push(lift(&g.bracket(e, &f)));
            }
        }
    }
    cols.extend(lines);
    let full = LieAlgebra::abelian(torus_dim).direct_sum(g)?;
    let p: Mat<Scalar> = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let alg = full.change_basis(&p)?;
    let h = HypercomplexAlgebra::standard(alg)?;
    let metric = HyperhermitianMetric::orthonormal(h.n());
    let cf = canonical_forms(&h, &metric)?;
    let cu = curvature(&h, &metric, &cf)?;
    let lambda = einstein_factor(&h, &metric, &cu)?.lambda;
    Ok(JoyceOutput { built: Built { h, metric }, mu, lambda, torus_dim })
}

fn unit_vec(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

/// `m` copies of su(2) with basis `[x_1, x_2] = 2 x_3` (cyclic) per copy; rank `m`, all `d_j = 0`.
pub fn joyce_su2(m: usize) -> JoyceData {
    let two = Scalar::from_int(2);
    let mut entries = Vec::new();
    for c in 0..m {
        let (a, b, d) = (3 * c, 3 * c + 1, 3 * c + 2);
        entries.push((a, b, d, two.clone()));
        entries.push((d, a, b, two.clone()));
        entries.push((b, d, a, two.clone()));
    }
    let algebra = LieAlgebra::from_brackets(3 * m, &entries).expect("su(2) brackets are valid");
    let blocks = (0..m)
        .map(|c| JoyceBlock { triple: [unit_vec(3 * m, 3 * c), unit_vec(3 * m, 3 * c + 1), unit_vec(3 * m, 3 * c + 2)], lines: Vec::new() })
        .collect();
    JoyceData { name: if m == 1 { "SU(2)".into() } else { format!("SU(2)^{m}") }, algebra, rank: m, b: Vec::new(), blocks, mu: None }
}

/// su(3) in the basis `X_a = -i lambda_a / 2` of Gell-Mann matrices (`[X_a, X_b] = f_abc X_c`),
/// with `b = <X_8>`, `d_1 = <2X_1, 2X_2, 2X_3>` and `f_1` generated by `X_4`.
pub fn joyce_su3() -> JoyceData {
    let half = Scalar::frac(1, 2);
    let s3 = &Scalar::sqrt_int(3) * &half;
    let f: Vec<(usize, usize, usize, Scalar)> = vec![
        (1, 2, 3, Scalar::one()),
        (1, 4, 7, half.clone()),
        (2, 4, 6, half.clone()),
        (2, 5, 7, half.clone()),
        (3, 4, 5, half.clone()),
        (1, 5, 6, -&half),
        (3, 6, 7, -&half),
        (4, 5, 8, s3.clone()),
        (6, 7, 8, s3),
    ];
    // Totally antisymmetric structure constants: expand each triple over its cyclic orders.
    let mut entries = Vec::new();
    for (a, b, c, x) in f {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            entries.push((i - 1, j - 1, k - 1, x.clone()));
        }
    }
    let algebra = LieAlgebra::from_brackets(8, &entries).expect("su(3) brackets are valid");
    let two = Scalar::from_int(2);
    let x = |a: usize| unit_vec(8, a - 1);
    JoyceData {
        name: "SU(3)".into(),
        algebra,
        rank: 2,
        b: vec![x(8)],
        blocks: vec![JoyceBlock { triple: [scale_vec(&x(1), &two), scale_vec(&x(2), &two), scale_vec(&x(3), &two)], lines: vec![x(4)] }],
        mu: None,
    }
}

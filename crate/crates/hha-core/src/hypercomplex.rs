//! Hypercomplex structures on Lie algebras: validation, integrability, sphere
//! rotations of the generating pair and the split differentials.
//!
//! Endomorphisms are real matrices acting on vectors, `(LX)^k = sum_m L[k][m] X^m`.
//! The standard structure on each block `e_{4k-3}, .., e_{4k}` is
//! `I e_1 = e_2`, `J e_1 = e_3`, `K e_1 = IJ e_1 = e_4`, whose dual action on the
//! coframe reads `I e^1 = -e^2`, `J e^1 = -e^3` and `J zeta^{2i-1} = -zetabar^{2i}`.

use crate::error::{HhaError, Result};
use crate::exterior::{endomorphism_map, Form, GeneratorMap};
use crate::liealg::{Differential, LieAlgebra};
use crate::linalg::{self, Mat};
use crate::scalar::Scalar;

/// A pair of anticommuting complex structures `I`, `J` with `K = IJ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypercomplexStructure {
    n: usize,
    i: Mat<Scalar>,
    j: Mat<Scalar>,
    k: Mat<Scalar>,
}

/// A point `(a, b, c)` of the unit sphere, naming `aI + bJ + cK`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoint {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl SpherePoint {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<SpherePoint> {
        let norm = &(&(&a * &a) + &(&b * &b)) + &(&c * &c);
        if !norm.is_one() {
            return Err(HhaError::Sphere(format!("({a}, {b}, {c}) has squared norm {norm}, expected 1")));
        }
        Ok(SpherePoint { a, b, c })
    }

    pub fn axis(which: usize) -> SpherePoint {
        let mut v = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        v[which] = Scalar::one();
        let [a, b, c] = v;
        SpherePoint { a, b, c }
    }

    pub fn dot(&self, o: &SpherePoint) -> Scalar {
        &(&(&self.a * &o.a) + &(&self.b * &o.b)) + &(&self.c * &o.c)
    }

    /// Parses `"a,b,c"`.
    pub fn parse(s: &str) -> Result<SpherePoint> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(HhaError::Parse(format!("sphere point needs three comma-separated entries: {s:?}")));
        }
        let v: Vec<Scalar> = parts.iter().map(|p| p.parse()).collect::<Result<_>>()?;
        SpherePoint::new(v[0].clone(), v[1].clone(), v[2].clone())
    }

    /// A few exact rational points spread over the sphere, used by pair-independence checks.
    pub fn samples() -> Vec<SpherePoint> {
        let f = Scalar::frac;
        vec![
            SpherePoint::axis(0),
            SpherePoint { a: f(3, 5), b: f(4, 5), c: f(0, 1) },
            SpherePoint { a: f(0, 1), b: f(3, 5), c: f(4, 5) },
            SpherePoint { a: f(2, 3), b: f(1, 3), c: f(2, 3) },
            SpherePoint { a: f(-2, 7), b: f(3, 7), c: f(6, 7) },
        ]
    }
}

fn block_matrix(n: usize, images: [[(usize, i64); 4]; 1]) -> Mat<Scalar> {
    // images[0][m] = (k, s): L e_m = s e_k within each block.
    let mut l: Mat<Scalar> = linalg::zeros(4 * n, 4 * n);
    for b in 0..n {
        for (m, &(k, s)) in images[0].iter().enumerate() {
            l[4 * b + k][4 * b + m] = Scalar::from_int(s);
        }
    }
    l
}

fn neg_identity(d: usize) -> Mat<Scalar> {
    let mut m: Mat<Scalar> = linalg::zeros(d, d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::from_int(-1);
    }
    m
}

fn lin_comb(terms: &[(&Scalar, &Mat<Scalar>)]) -> Mat<Scalar> {
    let d = terms[0].1.len();
    let mut out: Mat<Scalar> = linalg::zeros(d, d);
    for (s, m) in terms {
        if s.is_zero() {
            continue;
        }
        for r in 0..d {
            for c in 0..d {
                if !m[r][c].is_zero() {
                    out[r][c] = &out[r][c] + &(*s * &m[r][c]);
                }
            }
        }
    }
    out
}

fn neg_mat(m: &Mat<Scalar>) -> Mat<Scalar> {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

impl HypercomplexStructure {
    /// The standard block structure on `R^{4n}`.
    pub fn standard(n: usize) -> HypercomplexStructure {
        let i = block_matrix(n, [[(1, 1), (0, -1), (3, 1), (2, -1)]]);
        let j = block_matrix(n, [[(2, 1), (3, -1), (0, -1), (1, 1)]]);
        let k = linalg::matmul(&i, &j);
        HypercomplexStructure { n, i, j, k }
    }

    /// Builds from explicit `I`, `J`, checking `I^2 = J^2 = -1` and `IJ = -JI`.
    pub fn new(i: Mat<Scalar>, j: Mat<Scalar>) -> Result<HypercomplexStructure> {
        let d = i.len();
        if !d.is_multiple_of(4) || d == 0 {
            return Err(HhaError::Dimension(d));
        }
        if i.iter().any(|r| r.len() != d) || j.len() != d || j.iter().any(|r| r.len() != d) {
            return Err(HhaError::Structure("I and J must be square matrices of the algebra dimension".into()));
        }
        let minus = neg_identity(d);
        if linalg::matmul(&i, &i) != minus {
            return Err(HhaError::Structure("I^2 is not -Id".into()));
        }
        if linalg::matmul(&j, &j) != minus {
            return Err(HhaError::Structure("J^2 is not -Id".into()));
        }
        let k = linalg::matmul(&i, &j);
        if linalg::matmul(&j, &i) != neg_mat(&k) {
            return Err(HhaError::Structure("I and J do not anticommute".into()));
        }
        Ok(HypercomplexStructure { n: d / 4, i, j, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> &Mat<Scalar> {
        &self.i
    }

    pub fn j(&self) -> &Mat<Scalar> {
        &self.j
    }

    pub fn k(&self) -> &Mat<Scalar> {
        &self.k
    }

    /// `aI + bJ + cK`.
    pub fn endomorphism(&self, p: &SpherePoint) -> Mat<Scalar> {
        lin_comb(&[(&p.a, &self.i), (&p.b, &self.j), (&p.c, &self.k)])
    }

    pub fn is_standard(&self) -> bool {
        *self == HypercomplexStructure::standard(self.n)
    }

    /// The pair `(aI + bJ + cK, a'I + b'J + c'K)` for orthogonal unit points.
    pub fn rotate_pair(&self, p: &SpherePoint, q: &SpherePoint) -> Result<HypercomplexStructure> {
        if !p.dot(q).is_zero() {
            return Err(HhaError::Sphere(format!("points are not orthogonal (dot product {})", p.dot(q))));
        }
        HypercomplexStructure::new(self.endomorphism(p), self.endomorphism(q))
    }

    /// Real basis `(v, Iv, Jv, Kv, ...)` (as columns) in which this structure is standard.
    pub fn adapted_basis(&self) -> Mat<Scalar> {
        let d = 4 * self.n;
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for m in 0..d {
            if cols.len() == d {
                break;
            }
            let mut v = vec![Scalar::zero(); d];
            v[m] = Scalar::one();
            let mut trial = cols.clone();
            trial.push(v.clone());
            if linalg::rank(&trial) == cols.len() {
                continue;
            }
            let iv = linalg::mat_vec(&self.i, &v);
            let jv = linalg::mat_vec(&self.j, &v);
            let kv = linalg::mat_vec(&self.k, &v);
            cols.extend([v, iv, jv, kv]);
        }
        let mut p: Mat<Scalar> = linalg::zeros(d, d);
        for (a, col) in cols.iter().enumerate() {
            for (m, x) in col.iter().enumerate() {
                p[m][a] = x.clone();
            }
        }
        p
    }
}

/// Evidence that a structure is integrable on a given algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityCertificate {
    /// Number of basis pairs on which each Nijenhuis tensor was evaluated.
    pub pairs_checked: usize,
    /// Structures checked, e.g. `["I", "J", "2/3 I + 1/3 J + 2/3 K"]`.
    pub structures: Vec<String>,
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn format_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{c}*e{}", k + 1)).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `N_L(e_x, e_y)`.
pub fn nijenhuis(alg: &LieAlgebra, l: &Mat<Scalar>, x: usize, y: usize) -> Vec<Scalar> {
    let d = alg.dim();
    let ex = unit(d, x);
    let ey = unit(d, y);
    let lx = linalg::mat_vec(l, &ex);
    let ly = linalg::mat_vec(l, &ey);
    let t1 = alg.bracket(&lx, &ly);
    let t2 = linalg::mat_vec(l, &alg.bracket(&lx, &ey));
    let t3 = linalg::mat_vec(l, &alg.bracket(&ex, &ly));
    let t4 = alg.bracket(&ex, &ey);
    vec_sub(&vec_sub(&vec_sub(&t1, &t2), &t3), &t4)
}

/// Checks that `N_I`, `N_J` and `N` of a sampled third structure vanish on every basis pair.
pub fn validate_integrability(alg: &LieAlgebra, h: &HypercomplexStructure) -> Result<IntegrabilityCertificate> {
    if alg.dim() != 4 * h.n() {
        return Err(HhaError::Structure(format!("structure acts on R^{} but the algebra has dimension {}", 4 * h.n(), alg.dim())));
    }
    let sample = SpherePoint { a: Scalar::frac(2, 3), b: Scalar::frac(1, 3), c: Scalar::frac(2, 3) };
    let third = h.endomorphism(&sample);
    let named: [(&str, &Mat<Scalar>); 3] = [("I", h.i()), ("J", h.j()), ("2/3 I + 1/3 J + 2/3 K", &third)];
    let d = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|x| (x + 1..d).map(move |y| (x, y))).collect();
    for (name, l) in named {
        let bad = crate::par::map(&pairs, |&(x, y)| {
            let v = nijenhuis(alg, l, x, y);
            v.iter().any(|c| !c.is_zero()).then_some((x, y, v))
        });
        if let Some((x, y, v)) = bad.into_iter().flatten().next() {
            return Err(HhaError::Nijenhuis { which: name.to_string(), i: x + 1, j: y + 1, value: format_vec(&v) });
        }
    }
    Ok(IntegrabilityCertificate { pairs_checked: pairs.len(), structures: named.iter().map(|(s, _)| s.to_string()).collect() })
}

/// True when `[LX, LY] = [X, Y]` for `L` in `{I, J}` on all basis pairs.
pub fn is_abelian(alg: &LieAlgebra, h: &HypercomplexStructure) -> bool {
    let d = alg.dim();
    [h.i(), h.j()].iter().all(|l| {
        (0..d).all(|x| {
            (x + 1..d).all(|y| {
                let lx = linalg::mat_vec(l, &unit(d, x));
                let ly = linalg::mat_vec(l, &unit(d, y));
                alg.bracket(&lx, &ly) == alg.bracket(&unit(d, x), &unit(d, y))
            })
        })
    })
}

/// A Lie algebra with a validated hypercomplex structure, presented in a real basis
/// adapted to the structure so that all form computations use the standard frame.
#[derive(Clone, Debug)]
pub struct HypercomplexAlgebra {
    original: LieAlgebra,
    structure: HypercomplexStructure,
    basis: Mat<Scalar>,
    adapted: LieAlgebra,
    differential: Differential,
    jmap: GeneratorMap,
    jinv: GeneratorMap,
    certificate: IntegrabilityCertificate,
}

/// The four split differentials of a form.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitDifferentials {
    pub del: Form,
    pub delbar: Form,
    pub del_j: Form,
    pub delbar_j: Form,
}

impl HypercomplexAlgebra {
    /// Validates the algebra and the structure (Jacobi, algebraic identities, integrability).
    pub fn new(alg: LieAlgebra, structure: HypercomplexStructure) -> Result<HypercomplexAlgebra> {
        alg.check_jacobi()?;
        let n = alg.quaternionic_dim()?;
        let certificate = validate_integrability(&alg, &structure)?;
        let basis = structure.adapted_basis();
        let adapted = if structure.is_standard() { alg.clone() } else { alg.change_basis(&basis)? };
        let differential = adapted.differential()?;
        // Integrability in the frame: d of a (1,0)-form has no (0,2) part.
        for a in 0..2 * n {
            if !differential.generator(a).component(0, 2).is_zero() {
                return Err(HhaError::Consistency(format!(
                    "d zeta^{} has a (0,2) component although the Nijenhuis tensor vanishes",
                    a + 1
                )));
            }
        }
        let std = HypercomplexStructure::standard(n);
        let jmap = endomorphism_map(n, std.j());
        let jinv = endomorphism_map(n, &neg_mat(std.j()));
        Ok(HypercomplexAlgebra { original: alg, structure, basis, adapted, differential, jmap, jinv, certificate })
    }

    /// The standard structure on `alg`.
    pub fn standard(alg: LieAlgebra) -> Result<HypercomplexAlgebra> {
        let n = alg.quaternionic_dim()?;
        HypercomplexAlgebra::new(alg, HypercomplexStructure::standard(n))
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    /// The algebra in its input basis.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.original
    }

    /// The algebra in the adapted basis.
    pub fn adapted_algebra(&self) -> &LieAlgebra {
        &self.adapted
    }

    pub fn structure(&self) -> &HypercomplexStructure {
        &self.structure
    }

    /// Adapted basis vectors as columns, in input coordinates.
    pub fn basis(&self) -> &Mat<Scalar> {
        &self.basis
    }

    pub fn certificate(&self) -> &IntegrabilityCertificate {
        &self.certificate
    }

    pub fn differential(&self) -> &Differential {
        &self.differential
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian(&self.original, &self.structure)
    }

    /// The same algebra with the rotated pair `(p, q)`.
    pub fn rotate(&self, p: &SpherePoint, q: &SpherePoint) -> Result<HypercomplexAlgebra> {
        HypercomplexAlgebra::new(self.original.clone(), self.structure.rotate_pair(p, q)?)
    }

    pub fn d(&self, f: &Form) -> Form {
        self.differential.apply(f)
    }

    fn shifted(&self, f: &Form, dp: usize, dq: usize) -> Form {
        let mut out = Form::zero(self.n());
        for ((p, q), part) in f.decompose() {
            out = out.add(&self.d(&part).component(p + dp, q + dq));
        }
        out
    }

    pub fn del(&self, f: &Form) -> Form {
        self.shifted(f, 1, 0)
    }

    pub fn delbar(&self, f: &Form) -> Form {
        self.shifted(f, 0, 1)
    }

    /// Pullback by the standard `J` of the adapted frame.
    pub fn j_action(&self, f: &Form) -> Form {
        self.jmap.apply(f)
    }

    /// Pullback by `J^{-1}`, equal to `(-1)^k J` on `k`-forms.
    pub fn j_inverse_action(&self, f: &Form) -> Form {
        self.jinv.apply(f)
    }

    /// `J^{-1} delbar J`.
    pub fn del_j(&self, f: &Form) -> Form {
        self.j_inverse_action(&self.delbar(&self.j_action(f)))
    }

    /// `J^{-1} del J`.
    pub fn delbar_j(&self, f: &Form) -> Form {
        self.j_inverse_action(&self.del(&self.j_action(f)))
    }

    pub fn split(&self, f: &Form) -> SplitDifferentials {
        SplitDifferentials { del: self.del(f), delbar: self.delbar(f), del_j: self.del_j(f), delbar_j: self.delbar_j(f) }
    }

    /// Vector-action matrix of `aI + bJ + cK` in the adapted basis.
    pub fn adapted_endomorphism(&self, p: &SpherePoint) -> Mat<Scalar> {
        HypercomplexStructure::standard(self.n()).endomorphism(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexScalar;

    #[test]
    fn standard_j_on_zeta1() {
        let h = HypercomplexAlgebra::standard(LieAlgebra::abelian(4)).unwrap();
        assert_eq!(h.j_action(&Form::zeta(1, 1)), Form::zeta_bar(1, 2).neg());
        let i = endomorphism_map(1, HypercomplexStructure::standard(1).i());
        assert_eq!(i.apply(&Form::zeta(1, 1)), Form::zeta(1, 1).scale(&ComplexScalar::i()));
    }

    #[test]
    fn k_anticommutes() {
        let s = HypercomplexStructure::standard(2);
        let ik = linalg::matmul(s.i(), s.k());
        let ki = linalg::matmul(s.k(), s.i());
        assert_eq!(ik, neg_mat(&ki));
        let p = SpherePoint::new(Scalar::frac(3, 5), Scalar::frac(4, 5), Scalar::zero()).unwrap();
        let l = s.endomorphism(&p);
        assert_eq!(linalg::matmul(&l, &l), neg_identity(8));
    }

    #[test]
    fn swapped_pair_basis() {
        let s = HypercomplexStructure::standard(1);
        let r = s.rotate_pair(&SpherePoint::axis(1), &SpherePoint::axis(0)).unwrap();
        let p = r.adapted_basis();
        // Columns e1, e3, e2, -e4.
        let cols: Vec<Vec<i64>> = (0..4)
            .map(|a| {
                (0..4)
                    .map(|m| {
                        if p[m][a].is_zero() {
                            0
                        } else if p[m][a].is_positive() {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(cols, vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -1]]);
    }

    #[test]
    fn non_orthogonal_rotation_rejected() {
        let s = HypercomplexStructure::standard(1);
        let p = SpherePoint::new(Scalar::frac(3, 5), Scalar::frac(4, 5), Scalar::zero()).unwrap();
        assert!(matches!(s.rotate_pair(&p, &SpherePoint::axis(0)), Err(HhaError::Sphere(_))));
        assert!(SpherePoint::new(Scalar::one(), Scalar::one(), Scalar::zero()).is_err());
    }

    #[test]
    fn misaligned_heisenberg_is_not_integrable() {
        // [e1, e3] = e4 couples the two I-lines instead of a line with itself.
        let alg = LieAlgebra::from_brackets(4, &[(0, 2, 3, Scalar::one())]).unwrap();
        match HypercomplexAlgebra::standard(alg) {
            Err(HhaError::Nijenhuis { which, i, j, .. }) => assert_eq!((which.as_str(), i, j), ("I", 1, 3)),
            other => panic!("expected a Nijenhuis failure, got {other:?}"),
        }
    }

    #[test]
    fn su2_plus_r_is_hypercomplex_for_every_alignment() {
        let one = Scalar::one();
        for (a, b, c) in [(0, 1, 2), (1, 2, 3)] {
            let alg = LieAlgebra::from_brackets(4, &[(a, b, c, one.clone()), (b, c, a, one.clone()), (c, a, b, one.clone())]).unwrap();
            assert!(HypercomplexAlgebra::standard(alg).is_ok());
        }
    }
}

//! Lie algebra data, structure theory helpers and the Chevalley–Eilenberg
//! differential on invariant forms.
//!
//! Brackets are `[e_i, e_j] = sum_k c^k_ij e_k` and structure equations are
//! `de^k = -sum_{i<j} c^k_ij e^i ^ e^j`, so that `dxi(X, Y) = -xi([X, Y])`.
//! Indices are 0-based in the API and 1-based in messages and labels.

use crate::error::{HhaError, Result};
use crate::exterior::{Form, Mask};
use crate::linalg::{self, Mat};
use crate::par;
use crate::scalar::{ComplexScalar, Scalar};

/// A sparse vector `sum (k, c) e_k`.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A finite-dimensional real Lie algebra given by structure constants in a fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    radicand: u64,
    /// `table[i][j]` is `[e_i, e_j]`; antisymmetric, empty on the diagonal.
    table: Vec<Vec<SparseVec>>,
}

/// Structure-theory summary of a validated algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraProfile {
    pub dimension: usize,
    pub nilpotent: bool,
    /// Nilpotency step (length of the lower central series), when nilpotent.
    pub step: Option<usize>,
    pub solvable: bool,
    pub unimodular: bool,
    pub semisimple: bool,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// Dimensions of the lower central series `g, [g,g], [g,[g,g]], ...` until it stabilizes.
    pub lower_central: Vec<usize>,
    /// Dimensions of the derived series until it stabilizes.
    pub derived_series: Vec<usize>,
    /// All structure constants are rational.
    pub rational: bool,
}

/// Center and derived algebra with explicit bases.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraInvariants {
    pub center: Vec<Vec<Scalar>>,
    pub derived: Vec<Vec<Scalar>>,
    /// Rational structure constants, so compact quotients by lattices exist for nilpotent algebras.
    pub rational_constants: bool,
}

fn add_into(v: &mut SparseVec, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    if let Some(pos) = v.iter().position(|(kk, _)| *kk == k) {
        let s = &v[pos].1 + c;
        if s.is_zero() {
            v.remove(pos);
        } else {
            v[pos].1 = s;
        }
    } else {
        v.push((k, c.clone()));
        v.sort_by_key(|(kk, _)| *kk);
    }
}

fn sparse_eq_neg(a: &SparseVec, b: &SparseVec) -> bool {
    let mut s = a.clone();
    for (k, c) in b {
        add_into(&mut s, *k, c);
    }
    s.is_empty()
}

fn field_of<'a>(values: impl Iterator<Item = &'a Scalar>) -> Result<u64> {
    let mut d = 1u64;
    for v in values {
        let r = v.radicand();
        if r != 1 {
            if d != 1 && d != r {
                return Err(HhaError::Field(format!("both sqrt({d}) and sqrt({r}) appear")));
            }
            d = r;
        }
    }
    Ok(d)
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m: Mat<Scalar> = vectors.to_vec();
    let pivots = linalg::rref(&mut m);
    m.truncate(pivots.len());
    debug_assert!(m.iter().all(|r| r.len() == dim));
    m
}

impl LieAlgebra {
    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> LieAlgebra {
        LieAlgebra { dim, radicand: 1, table: vec![vec![Vec::new(); dim]; dim] }
    }

    /// Builds from bracket entries `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`.
    /// Entries may be given for either order of a pair; if both orders are given they must
    /// be negatives of each other.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<LieAlgebra> {
        let mut raw: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(HhaError::Parse(format!(
                    "bracket index out of range: [e{}, e{}] -> e{} in dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(HhaError::Antisymmetry { i: i + 1, j: j + 1 });
                }
                continue;
            }
            add_into(&mut raw[i][j], k, c);
        }
        field_of(raw.iter().flatten().flatten().map(|(_, c)| c))?;
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let a = &raw[i][j];
                let b = &raw[j][i];
                let v = match (a.is_empty(), b.is_empty()) {
                    (_, true) => a.clone(),
                    (true, false) => b.iter().map(|(k, c)| (*k, -c)).collect(),
                    (false, false) => {
                        if !sparse_eq_neg(a, b) {
                            return Err(HhaError::Antisymmetry { i: i + 1, j: j + 1 });
                        }
                        a.clone()
                    }
                };
                table[j][i] = v.iter().map(|(k, c)| (*k, -c)).collect();
                table[i][j] = v;
            }
        }
        let radicand = field_of(table.iter().flatten().flatten().map(|(_, c)| c))?;
        Ok(LieAlgebra { dim, radicand, table })
    }

    /// Builds from structure-equation terms `(k, i, j, a)` meaning `de^k += a e^i ^ e^j`.
    pub fn from_structure_equations(dim: usize, terms: &[(usize, usize, usize, Scalar)]) -> Result<LieAlgebra> {
        let mut entries = Vec::with_capacity(terms.len());
        for (k, i, j, a) in terms {
            if i == j {
                return Err(HhaError::Parse(format!("de{} contains e{}^e{}", k + 1, i + 1, j + 1)));
            }
            entries.push((*i, *j, *k, -a));
        }
        // Terms on the same pair in both orders must add, not be cross-checked as brackets.
        let mut merged: Vec<(usize, usize, usize, Scalar)> = Vec::new();
        for (i, j, k, c) in entries {
            let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            if let Some(e) = merged.iter_mut().find(|e| e.0 == i && e.1 == j && e.2 == k) {
                e.3 = &e.3 + &c;
            } else {
                merged.push((i, j, k, c));
            }
        }
        LieAlgebra::from_brackets(dim, &merged)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Radicand `D` of the coefficient field `Q(sqrt(D))` (1 for rationals).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Structure constant `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, &SparseVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !self.table[i][j].is_empty() {
                    out.push((i, j, &self.table[i][j]));
                }
            }
        }
        out
    }

    /// Structure equation terms `(k, i, j, a)` with `i < j`: `de^k = sum a e^i ^ e^j`.
    pub fn structure_equations(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, j, v) in self.nonzero_brackets() {
            for (k, c) in v {
                out.push((*k, i, j, -c));
            }
        }
        out.sort_by_key(|a| (a.0, a.1, a.2));
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(|v| v.is_empty())
    }

    /// Bracket of two vectors in components.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&s * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`: `ad(e_i)[k][j] = c^k_ij`.
    pub fn ad(&self, i: usize) -> Mat<Scalar> {
        let mut m: Mat<Scalar> = linalg::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in &self.table[i][j] {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    /// Matrix of `ad(x)` for a vector `x`.
    pub fn ad_vec(&self, x: &[Scalar]) -> Mat<Scalar> {
        let mut m: Mat<Scalar> = linalg::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.table[i][j] {
                    m[*k][j] = &m[*k][j] + &(xi * c);
                }
            }
        }
        m
    }

    /// Checks the Jacobi identity on every basis triple.
    pub fn check_jacobi(&self) -> Result<()> {
        let d = self.dim;
        let triples: Vec<(usize, usize, usize)> =
            (0..d).flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k)))).collect();
        let failures = par::map(&triples, |&(i, j, k)| {
            let mut acc: SparseVec = Vec::new();
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                for (m, x) in &self.table[a][b] {
                    for (l, y) in &self.table[*m][c] {
                        add_into(&mut acc, *l, &(x * y));
                    }
                }
            }
            (!acc.is_empty()).then(|| {
                let value = acc.iter().map(|(l, c)| format!("{c}*e{}", l + 1)).collect::<Vec<_>>().join(" + ");
                HhaError::Jacobi { i: i + 1, j: j + 1, k: k + 1, value }
            })
        });
        match failures.into_iter().flatten().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Killing form `B(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> Mat<Scalar> {
        let ads: Vec<Mat<Scalar>> = (0..self.dim).map(|i| self.ad(i)).collect();

        par::map_range(self.dim, |i| {
            (0..self.dim)
                .map(|j| {
                    let p = linalg::matmul(&ads[i], &ads[j]);
                    (0..self.dim).fold(Scalar::zero(), |acc, k| &acc + &p[k][k])
                })
                .collect::<Vec<_>>()
        })
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Scalar>> {
        // x is central iff sum_i x_i c^k_ij = 0 for all j, k.
        let d = self.dim;
        let mut m: Mat<Scalar> = Vec::new();
        for j in 0..d {
            for k in 0..d {
                let row: Vec<Scalar> = (0..d).map(|i| self.structure_constant(i, j, k)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    m.push(row);
                }
            }
        }
        if m.is_empty() {
            return (0..d).map(|i| unit(d, i)).collect();
        }
        linalg::kernel(&m, d)
    }

    /// `[A, B]` for subspaces given by spanning vectors.
    pub fn bracket_span(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut vs = Vec::new();
        for x in a {
            for y in b {
                let v = self.bracket(x, y);
                if v.iter().any(|c| !c.is_zero()) {
                    vs.push(v);
                }
            }
        }
        span_basis(&vs, self.dim)
    }

    /// Basis of the derived algebra `[g, g]`.
    pub fn derived(&self) -> Vec<Vec<Scalar>> {
        let vs: Vec<Vec<Scalar>> = self
            .nonzero_brackets()
            .into_iter()
            .map(|(_, _, v)| {
                let mut x = vec![Scalar::zero(); self.dim];
                for (k, c) in v {
                    x[*k] = c.clone();
                }
                x
            })
            .collect();
        span_basis(&vs, self.dim)
    }

    fn full_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim).map(|i| unit(self.dim, i)).collect()
    }

    /// Dimensions of the lower central series until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let g = self.full_basis();
        let mut dims = vec![self.dim];
        let mut cur = g.clone();
        loop {
            let next = self.bracket_span(&g, &cur);
            let d = next.len();
            if d == *dims.last().expect("nonempty") {
                break;
            }
            dims.push(d);
            if d == 0 {
                break;
            }
            cur = next;
        }
        dims
    }

    /// Dimensions of the derived series until it stabilizes.
    pub fn derived_series(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut cur = self.full_basis();
        loop {
            let next = self.bracket_span(&cur, &cur);
            let d = next.len();
            if d == *dims.last().expect("nonempty") {
                break;
            }
            dims.push(d);
            if d == 0 {
                break;
            }
            cur = next;
        }
        dims
    }

    /// `tr ad(e_i) = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| {
            let t = self.table[i].iter().enumerate().fold(Scalar::zero(), |acc, (j, v)| {
                let c = v.iter().find(|(k, _)| *k == j).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero);
                &acc + &c
            });
            t.is_zero()
        })
    }

    pub fn is_rational(&self) -> bool {
        self.table.iter().flatten().flatten().all(|(_, c)| c.is_rational())
    }

    /// Validates the Jacobi identity and computes the structure profile.
    pub fn validate(&self) -> Result<AlgebraProfile> {
        self.check_jacobi()?;
        let lower_central = self.lower_central_series();
        let derived_series = self.derived_series();
        let nilpotent = *lower_central.last().expect("nonempty") == 0 || self.dim == 0;
        let solvable = *derived_series.last().expect("nonempty") == 0 || self.dim == 0;
        let step = nilpotent.then(|| lower_central.len() - 1).map(|s| s.max(1));
        let semisimple = self.dim > 0 && !linalg::det(&self.killing_form()).is_zero();
        Ok(AlgebraProfile {
            dimension: self.dim,
            nilpotent,
            step,
            solvable,
            unimodular: self.is_unimodular(),
            semisimple,
            center_dim: self.center().len(),
            derived_dim: self.derived().len(),
            lower_central,
            derived_series,
            rational: self.is_rational(),
        })
    }

    /// Bases of the center and derived algebra plus the rationality hint.
    pub fn invariants(&self) -> AlgebraInvariants {
        AlgebraInvariants { center: self.center(), derived: self.derived(), rational_constants: self.is_rational() }
    }

    /// The same algebra in the basis whose `a`-th vector is column `a` of `p`.
    pub fn change_basis(&self, p: &Mat<Scalar>) -> Result<LieAlgebra> {
        let pinv = linalg::inverse(p).ok_or_else(|| HhaError::Structure("change of basis is singular".into()))?;
        let d = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..d).map(|a| (0..d).map(|m| p[m][a].clone()).collect()).collect();
        let mut entries = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let v = self.bracket(&cols[a], &cols[b]);
                let w = linalg::mat_vec(&pinv, &v);
                for (c, x) in w.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((a, b, c, x));
                    }
                }
            }
        }
        LieAlgebra::from_brackets(d, &entries)
    }

    /// Direct sum `self (+) other`, with `other` shifted after `self`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        let off = self.dim;
        let mut entries = Vec::new();
        for (i, j, v) in self.nonzero_brackets() {
            for (k, c) in v {
                entries.push((i, j, *k, c.clone()));
            }
        }
        for (i, j, v) in other.nonzero_brackets() {
            for (k, c) in v {
                entries.push((i + off, j + off, k + off, c.clone()));
            }
        }
        LieAlgebra::from_brackets(self.dim + other.dim, &entries)
    }

    /// All bracket entries `(i, j, k, c)` with `i < j`.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, j, v) in self.nonzero_brackets() {
            for (k, c) in v {
                out.push((i, j, *k, c.clone()));
            }
        }
        out
    }

    /// Real structure equation `de^k` as a complex form over quaternionic dimension `dim/4`.
    pub fn real_differential(&self, k: usize) -> Result<Form> {
        let n = self.quaternionic_dim()?;
        let mut f = Form::zero(n);
        for (i, j, v) in self.nonzero_brackets() {
            for (kk, c) in v {
                if *kk == k {
                    let t = Form::real_coframe(n, i + 1).wedge(&Form::real_coframe(n, j + 1))?;
                    f = f.sub(&t.scale_real(c));
                }
            }
        }
        Ok(f)
    }

    /// Quaternionic dimension `dim / 4`, or an error if the dimension is not a multiple of 4.
    pub fn quaternionic_dim(&self) -> Result<usize> {
        if !self.dim.is_multiple_of(4) || self.dim == 0 {
            return Err(HhaError::Dimension(self.dim));
        }
        Ok(self.dim / 4)
    }

    /// The Chevalley–Eilenberg differential on complex invariant forms in the
    /// standard complex frame `zeta^j = e^{2j-1} + i e^{2j}`.
    pub fn differential(&self) -> Result<Differential> {
        let n = self.quaternionic_dim()?;
        let real: Vec<Form> = (0..4 * n).map(|k| self.real_differential(k)).collect::<Result<_>>()?;
        let mut gens = Vec::with_capacity(4 * n);
        for j in 0..2 * n {
            let z = real[2 * j].add(&real[2 * j + 1].scale(&ComplexScalar::i()));
            gens.push(z);
        }
        for j in 0..2 * n {
            let zb = gens[j].conj();
            gens.push(zb);
        }
        Ok(Differential { n, gens })
    }
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

/// The differential on the complex exterior algebra, determined by its values on generators.
#[derive(Clone, Debug)]
pub struct Differential {
    n: usize,
    gens: Vec<Form>,
}

impl Differential {
    /// Builds a differential from the images of the `4n` generators.
    pub fn from_generators(n: usize, gens: Vec<Form>) -> Differential {
        assert_eq!(gens.len(), 4 * n);
        Differential { n, gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d` of generator `a`.
    pub fn generator(&self, a: usize) -> &Form {
        &self.gens[a]
    }

    /// `d` extended as an antiderivation.
    pub fn apply(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (&m, c) in f.terms() {
            let mut rest: Mask = m;
            let mut pos = 0usize;
            while rest != 0 {
                let a = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let dg = &self.gens[a];
                if !dg.is_zero() {
                    let others = m & !(1u64 << a);
                    let sign_neg = pos % 2 == 1;
                    for (&gm, gc) in dg.terms() {
                        if gm & others != 0 {
                            continue;
                        }
                        // dg (degree 2) moved to the front: sign of merging gm with others.
                        let mut coef = gc * c;
                        if sign_neg {
                            coef = -coef;
                        }
                        let mut flips = 0u32;
                        let mut r = others;
                        while r != 0 {
                            let j = r.trailing_zeros();
                            r &= r - 1;
                            flips += (gm >> j).count_ones();
                        }
                        if flips % 2 == 1 {
                            coef = -coef;
                        }
                        out.add_term(gm | others, &coef);
                    }
                }
                pos += 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn su2_plus_r() -> LieAlgebra {
        LieAlgebra::from_brackets(4, &[(1, 2, 3, s(2)), (3, 1, 2, s(2)), (2, 3, 1, s(2))]).unwrap()
    }

    #[test]
    fn abelian_profile() {
        let p = LieAlgebra::abelian(4).validate().unwrap();
        assert!(p.nilpotent);
        assert_eq!(p.step, Some(1));
        assert_eq!(p.center_dim, 4);
        assert_eq!(p.derived_dim, 0);
    }

    #[test]
    fn killing_form_su2() {
        let b = su2_plus_r().killing_form();
        for i in 1..4 {
            for j in 1..4 {
                assert_eq!(b[i][j], if i == j { s(-8) } else { s(0) });
            }
        }
        assert!(b[0].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn jacobi_violation_names_triple() {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 is not a Lie algebra.
        let a = LieAlgebra::from_brackets(4, &[(0, 1, 2, s(1)), (1, 2, 0, s(1)), (2, 0, 0, s(1))]).unwrap();
        assert!(matches!(a.check_jacobi(), Err(HhaError::Jacobi { .. })));
    }

    #[test]
    fn antisymmetry_conflict() {
        let r = LieAlgebra::from_brackets(4, &[(0, 1, 2, s(1)), (1, 0, 2, s(1))]);
        assert_eq!(r, Err(HhaError::Antisymmetry { i: 1, j: 2 }));
    }

    #[test]
    fn structure_equation_sign() {
        // de^3 = e^1 ^ e^2 means [e_1, e_2] = -e_3.
        let a = LieAlgebra::from_structure_equations(4, &[(2, 0, 1, s(1))]).unwrap();
        assert_eq!(a.structure_constant(0, 1, 2), s(-1));
        assert_eq!(a.structure_equations(), vec![(2, 0, 1, s(1))]);
    }

    #[test]
    fn d_squared_vanishes_on_su2() {
        let a = su2_plus_r();
        let d = a.differential().unwrap();
        for g in 0..4 {
            let f = Form::generator(1, g);
            assert!(d.apply(&d.apply(&f)).is_zero());
        }
    }

    #[test]
    fn su2_is_semisimple_part() {
        let p = su2_plus_r().validate().unwrap();
        assert!(!p.semisimple);
        assert!(p.unimodular);
        assert_eq!(p.center_dim, 1);
        assert_eq!(p.derived_dim, 3);
    }
}

//! Dense exact linear algebra over [`Scalar`] and [`ComplexScalar`]:
//! row reduction, solving, inverses, determinants, Pfaffians and the
//! inertia test for Hermitian matrices.

use crate::error::{HhaError, Result};
use crate::scalar::{ComplexScalar, Scalar, Sign};

/// Minimal field interface used by the generic elimination routines.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Option<Self>;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Option<Self> {
        self.inv()
    }
}

impl Field for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::zero()
    }
    fn one() -> Self {
        ComplexScalar::one()
    }
    fn is_zero(&self) -> bool {
        ComplexScalar::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Row-major dense matrix.
pub type Mat<T> = Vec<Vec<T>>;

pub fn zeros<T: Field>(rows: usize, cols: usize) -> Mat<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Field>(n: usize) -> Mat<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Field>(a: &Mat<T>) -> Mat<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn matmul<T: Field>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut c: Mat<T> = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    c[i][j] = c[i][j].fadd(&aik.fmul(&b[k][j]));
                }
            }
        }
    }
    c
}

pub fn mat_vec<T: Field>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.fadd(&x.fmul(y)) }))
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Field>(m: &mut Mat<T>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].finv().expect("nonzero pivot is invertible");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.fmul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.fsub(&f.fmul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(a: &Mat<T>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Solves `a x = b`. Returns a particular solution with free variables set to zero,
/// or `None` when the system is inconsistent.
pub fn solve<T: Field>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Mat<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if rows == 0 {
        return Some(vec![T::zero(); cols]);
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel of `a`.
pub fn kernel<T: Field>(a: &Mat<T>, cols: usize) -> Vec<Vec<T>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = m[r][f].fneg();
            }
            v
        })
        .collect()
}

pub fn inverse<T: Field>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.len();
    let mut aug: Mat<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination over the field.
pub fn det<T: Field>(a: &Mat<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            d = d.fneg();
        }
        d = d.fmul(&m[c][c]);
        let inv = m[c][c].finv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].fmul(&inv);
            for j in c..n {
                let t = f.fmul(&m[c][j]);
                m[i][j] = m[i][j].fsub(&t);
            }
        }
    }
    d
}

/// Pfaffian of a full skew-symmetric matrix, normalized so that the block
/// matrix with `a[2i][2i+1] = 1` has Pfaffian 1.
pub fn pfaffian<T: Field>(a: &Mat<T>) -> Result<T> {
    let n = a.len();
    if n % 2 == 1 {
        return Err(HhaError::OddDimension(n));
    }
    let mut m = a.clone();
    let mut result = T::one();
    let mut size = n;
    while size > 0 {
        // Bring a nonzero entry into position (0, 1).
        let Some(j) = (1..size).find(|&j| !m[0][j].is_zero()) else {
            return Ok(T::zero());
        };
        if j != 1 {
            m.swap(1, j);
            for row in m.iter_mut() {
                row.swap(1, j);
            }
            result = result.fneg();
        }
        let a01 = m[0][1].clone();
        result = result.fmul(&a01);
        let inv = a01.finv().expect("nonzero pivot");
        // Schur complement on the trailing block: D + C^T B^{-1} C.
        let mut next: Mat<T> = zeros(size - 2, size - 2);
        for i in 2..size {
            for k in 2..size {
                let corr = m[1][i].fmul(&m[0][k]).fsub(&m[0][i].fmul(&m[1][k]));
                next[i - 2][k - 2] = m[i][k].fadd(&corr.fmul(&inv));
            }
        }
        m = next;
        size -= 2;
    }
    Ok(result)
}

/// Definiteness class of a Hermitian (or real symmetric) matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Zero,
    Indefinite,
}

impl Definiteness {
    /// True for positive definite and positive semidefinite (including zero).
    pub fn is_psd(self) -> bool {
        matches!(self, Definiteness::PositiveDefinite | Definiteness::PositiveSemidefinite | Definiteness::Zero)
    }
}

/// Exact inertia-based definiteness test of a Hermitian matrix.
///
/// Uses diagonal pivoting on the Schur complement; a remaining block with zero
/// diagonal and a nonzero off-diagonal entry is indefinite.
pub fn hermitian_definiteness(h: &Mat<ComplexScalar>) -> Result<Definiteness> {
    let n = h.len();
    for i in 0..n {
        if !h[i][i].is_real() {
            return Err(HhaError::Consistency(format!("diagonal entry {} is not real", i + 1)));
        }
        for j in 0..n {
            if h[i][j] != h[j][i].conj() {
                return Err(HhaError::Consistency("matrix is not Hermitian".into()));
            }
        }
    }
    let mut m = h.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&r| !m[r][r].is_zero());
        let Some(r) = pivot else {
            let any_off = alive.iter().any(|&i| alive.iter().any(|&j| !m[i][j].is_zero()));
            if any_off {
                return Ok(Definiteness::Indefinite);
            }
            break;
        };
        let d = m[r][r].re.clone();
        match d.sign() {
            Sign::Positive => pos += 1,
            Sign::Negative => neg += 1,
            Sign::Zero => unreachable!("pivot is nonzero"),
        }
        let dinv = d.inv().expect("nonzero pivot");
        alive.retain(|&x| x != r);
        let col: Vec<ComplexScalar> = alive.iter().map(|&i| m[i][r].clone()).collect();
        for (a, &i) in alive.iter().enumerate() {
            if col[a].is_zero() {
                continue;
            }
            for (b, &j) in alive.iter().enumerate() {
                if col[b].is_zero() {
                    continue;
                }
                let t = (&col[a] * &col[b].conj()).scale(&dinv);
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    let zero = n - pos - neg;
    Ok(match (pos, neg) {
        (0, 0) => Definiteness::Zero,
        (_, 0) if zero == 0 => Definiteness::PositiveDefinite,
        (_, 0) => Definiteness::PositiveSemidefinite,
        (0, _) if zero == 0 => Definiteness::NegativeDefinite,
        (0, _) => Definiteness::NegativeSemidefinite,
        _ => Definiteness::Indefinite,
    })
}

/// Factorization `H = L D L^*` of a Hermitian positive definite matrix, with `L`
/// unit lower triangular and `D` real positive. Returns `None` when a pivot is not positive.
pub fn ldl_hermitian(h: &Mat<ComplexScalar>) -> Option<(Mat<ComplexScalar>, Vec<Scalar>)> {
    let n = h.len();
    let mut l: Mat<ComplexScalar> = identity(n);
    let mut d: Vec<Scalar> = Vec::with_capacity(n);
    for j in 0..n {
        let mut djj = h[j][j].clone();
        for k in 0..j {
            if !l[j][k].is_zero() {
                djj = &djj - &ComplexScalar::real(&l[j][k].norm_sqr() * &d[k]);
            }
        }
        if !djj.is_real() || !djj.re.is_positive() {
            return None;
        }
        let dj = djj.re;
        let dinv = dj.inv()?;
        for i in j + 1..n {
            let mut v = h[i][j].clone();
            for k in 0..j {
                if !l[i][k].is_zero() && !l[j][k].is_zero() {
                    v = &v - &(&l[i][k] * &l[j][k].conj()).scale(&d[k]);
                }
            }
            l[i][j] = v.scale(&dinv);
        }
        d.push(dj);
    }
    Some((l, d))
}

/// Embeds a real matrix into the complex numbers.
pub fn complexify(a: &Mat<Scalar>) -> Mat<ComplexScalar> {
    a.iter().map(|r| r.iter().cloned().map(ComplexScalar::real).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn skew_from_upper(n: usize, vals: &[i64]) -> Mat<Scalar> {
        let mut m = zeros(n, n);
        let mut it = vals.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = q(*it.next().unwrap());
                m[j][i] = -&v;
                m[i][j] = v;
            }
        }
        m
    }

    #[test]
    fn pfaffian_4x4_formula() {
        // a12 a34 - a13 a24 + a14 a23
        let m = skew_from_upper(4, &[2, 3, 5, 7, 11, 13]);
        assert_eq!(pfaffian(&m).unwrap(), q(2 * 13 - 3 * 11 + 5 * 7));
    }

    #[test]
    fn pfaffian_odd_is_error() {
        let m: Mat<Scalar> = zeros(3, 3);
        assert_eq!(pfaffian(&m), Err(HhaError::OddDimension(3)));
    }

    #[test]
    fn pfaffian_squared_is_det() {
        let m = skew_from_upper(6, &[1, -2, 3, 0, 4, 5, -1, 2, 0, 3, 7, -2, 1, 1, 6]);
        let p = pfaffian(&m).unwrap();
        assert_eq!(&p * &p, det(&m));
    }

    #[test]
    fn solve_and_kernel() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let x = solve(&a, &[q(6), q(12)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![q(6), q(12)]);
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(mat_vec(&a, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn hermitian_classes() {
        let c = |a: i64, b: i64| ComplexScalar::new(q(a), q(b));
        let pd = vec![vec![c(2, 0), c(1, 1)], vec![c(1, -1), c(2, 0)]];
        assert_eq!(hermitian_definiteness(&pd).unwrap(), Definiteness::PositiveDefinite);
        let psd = vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]];
        assert_eq!(hermitian_definiteness(&psd).unwrap(), Definiteness::PositiveSemidefinite);
        let ind = vec![vec![c(0, 0), c(1, 0)], vec![c(1, 0), c(0, 0)]];
        assert_eq!(hermitian_definiteness(&ind).unwrap(), Definiteness::Indefinite);
        let nd = vec![vec![c(-1, 0), c(0, 0)], vec![c(0, 0), c(-3, 0)]];
        assert_eq!(hermitian_definiteness(&nd).unwrap(), Definiteness::NegativeDefinite);
    }

    #[test]
    fn ldl_reconstructs() {
        let c = |a: i64, b: i64| ComplexScalar::new(q(a), q(b));
        let h = vec![vec![c(4, 0), c(1, 1), c(0, -2)], vec![c(1, -1), c(3, 0), c(1, 0)], vec![c(0, 2), c(1, 0), c(5, 0)]];
        let (l, d) = ldl_hermitian(&h).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = ComplexScalar::zero();
                for k in 0..3 {
                    s = &s + &(&l[i][k] * &l[j][k].conj()).scale(&d[k]);
                }
                assert_eq!(s, h[i][j]);
            }
        }
        let neg = vec![vec![c(-1, 0)]];
        assert!(ldl_hermitian(&neg).is_none());
    }
}

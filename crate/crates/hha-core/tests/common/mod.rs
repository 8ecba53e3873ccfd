#![allow(dead_code)]

use hha::catalog::get_example;
use hha::constructions::right_multiplication;
use hha::linalg::{self, Mat};
use hha::{HypercomplexAlgebra, HyperhermitianMetric, Scalar, SpherePoint};

/// Catalog algebras with quaternionic dimension at most 3.
pub const SMALL_ALGEBRAS: &[&str] = &[
    "abelian4",
    "abelian8",
    "solv_aff_c",
    "solv_rank1",
    "solv_third",
    "joyce_su2",
    "joyce_su2xsu2",
    "joyce_su3",
    "qgau8",
    "qgau12",
    "qbal12",
    "qsg12",
];

pub fn algebra(name: &str) -> HypercomplexAlgebra {
    get_example(name).expect("catalog entry").h
}

/// Hyperhermitian Gram matrix `Id + M^T M`, where `M` is the real form of a quaternionic matrix
/// acting by right multiplication, so it commutes with the standard `I` and `J`.
pub fn gram_from_quaternions(n: usize, q: &[i64]) -> Mat<Scalar> {
    assert!(q.len() >= 4 * n * n);
    let mut m: Mat<Scalar> = linalg::zeros(4 * n, 4 * n);
    for r in 0..n {
        for c in 0..n {
            let k = 4 * (r * n + c);
            let block = right_multiplication(&[
                Scalar::from_int(q[k]),
                Scalar::from_int(q[k + 1]),
                Scalar::from_int(q[k + 2]),
                Scalar::from_int(q[k + 3]),
            ]);
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
    g
}

pub fn random_metric(n: usize, q: &[i64]) -> HyperhermitianMetric {
    HyperhermitianMetric::from_gram(n, gram_from_quaternions(n, q)).expect("positive hyperhermitian Gram")
}

/// Orthogonal pairs of exact unit points, starting with `(I, J)`.
pub fn sphere_pairs() -> Vec<(SpherePoint, SpherePoint)> {
    let f = Scalar::frac;
    let p = |a, b, c| SpherePoint::new(a, b, c).unwrap();
    vec![
        (SpherePoint::axis(0), SpherePoint::axis(1)),
        (p(f(3, 5), f(4, 5), f(0, 1)), p(f(-4, 5), f(3, 5), f(0, 1))),
        (p(f(0, 1), f(3, 5), f(4, 5)), p(f(0, 1), f(-4, 5), f(3, 5))),
        (p(f(2, 3), f(1, 3), f(2, 3)), p(f(1, 3), f(2, 3), f(-2, 3))),
        (p(f(-2, 7), f(3, 7), f(6, 7)), p(f(6, 7), f(-2, 7), f(3, 7))),
        (SpherePoint::axis(1), SpherePoint::axis(0)),
    ]
}

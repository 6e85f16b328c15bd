use num_complex::Complex;

use crate::linalg::DenseComplexMatrix;
use crate::scalar::{Scalar, Vec2};

use super::reduce::BlochMatrices;

type B2<T> = [[T; 2]; 2];

/// `[[a, bᵀ], [b, c]]`.
fn assemble<T: Scalar>(a: B2<T>, b: B2<T>, c: B2<T>, factor: Complex<T>) -> DenseComplexMatrix<T> {
    let mut m = DenseComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = factor * a[i][j];
            m[(i + 2, j + 2)] = factor * c[i][j];
            m[(i + 2, j)] = factor * b[i][j];
            m[(j, i + 2)] = factor * b[i][j];
        }
    }
    m
}

/// Named 2×2 blocks of the closed-form reduced matrices:
/// `Mr = [[A, Bᵀ], [B, C]]`, `Lr = [[D, Eᵀ], [E, F]]`,
/// `D1r = i [[P1, Q1ᵀ], [Q1, R1]]`, `D2r = i [[P2, Q2ᵀ], [Q2, R2]]`.
pub(crate) fn closed_form_blocks<T: Scalar>(kdx: Vec2<T>) -> [(&'static str, B2<T>); 12] {
    let (k, l) = (kdx[0], kdx[1]);
    let n = |x: f64| T::lit(x);
    let s3 = n(3f64.sqrt());
    let c = |x: T| x.cos();
    let s = |x: T| x.sin();
    let q = |a: f64, b: f64| n(a) * k + n(b) * s3 * l;
    // Recurring phases.
    let ma = q(-0.25, 0.25); // −k/4 + √3 l/4
    let pa = q(0.25, 0.25); // k/4 + √3 l/4
    let h = q(0.5, 0.0); // k/2
    let tb = q(0.75, 0.25); // 3k/4 + √3 l/4
    let tm = q(0.75, -0.25); // 3k/4 − √3 l/4
    let ly = q(0.0, 0.5); // √3 l/2
    let pp = q(0.5, 0.5); // k/2 + √3 l/2
    let mp = q(-0.5, 0.5); // −k/2 + √3 l/2
    let kk = k;

    let a = [[n(4.0 / 15.0) * s3, n(2.0 / 15.0) * s3 * c(ma)], [n(2.0 / 15.0) * s3 * c(ma), n(4.0 / 15.0) * s3]];
    let b = [[n(2.0 / 15.0) * s3 * c(pa), n(2.0 / 15.0) * s3 * c(h)], [-s3 / n(30.0) * c(ly), -s3 / n(30.0) * c(tm)]];
    let cc22 = -s3 / n(60.0) * (c(kk) + c(pp) + c(mp)) + n(3.0 / 20.0) * s3;
    let cm = [[n(4.0 / 15.0) * s3, -s3 / n(30.0) * c(tb)], [-s3 / n(30.0) * c(tb), cc22]];

    let d = [[n(8.0) * s3, n(-8.0 / 3.0) * s3 * c(ma)], [n(-8.0 / 3.0) * s3 * c(ma), n(8.0) * s3]];
    let e = [
        [n(-8.0 / 3.0) * s3 * c(pa), n(-8.0 / 3.0) * s3 * c(h)],
        [n(-8.0 / 3.0) * s3 * c(h), n(-8.0 / 3.0) * s3 * c(pa)],
    ];
    let f22 = n(2.0 / 3.0) * s3 * (c(mp) + c(kk) + c(pp)) + n(6.0) * s3;
    let f = [[n(8.0) * s3, n(-8.0 / 3.0) * s3 * c(ma)], [n(-8.0 / 3.0) * s3 * c(ma), f22]];

    let p1 = [[T::zero(), n(-2.0 / 5.0) * s3 * s(ma)], [n(-2.0 / 5.0) * s3 * s(ma), T::zero()]];
    let q1 = [
        [n(2.0 / 5.0) * s3 * s(pa), n(4.0 / 5.0) * s3 * s(h)],
        [n(3.0 / 5.0) * s3 * s(h), -s3 / n(10.0) * s(tm) + n(3.0 / 10.0) * s3 * s(pa)],
    ];
    let r1o = n(-3.0 / 10.0) * s3 * s(ma) - s3 / n(10.0) * s(tb);
    let r1 = [[T::zero(), r1o], [r1o, -s3 / n(5.0) * s(kk) - s3 / n(10.0) * s(pp) - s3 / n(10.0) * s(-mp)]];

    let p2 = [[T::zero(), n(6.0 / 5.0) * s(ma)], [n(6.0 / 5.0) * s(ma), T::zero()]];
    let q2 =
        [[n(6.0 / 5.0) * s(pa), T::zero()], [n(-1.0 / 5.0) * s(ly), n(-1.0 / 10.0) * s(-tm) + n(9.0 / 10.0) * s(pa)]];
    let r2o = n(-1.0 / 10.0) * s(tb) + n(9.0 / 10.0) * s(ma);
    let r2 = [[T::zero(), r2o], [r2o, n(-3.0 / 10.0) * s(pp) - n(3.0 / 20.0) * s(mp) + n(3.0 / 20.0) * s(-mp)]];

    [
        ("A", a),
        ("B", b),
        ("C", cm),
        ("D", d),
        ("E", e),
        ("F", f),
        ("P1", p1),
        ("Q1", q1),
        ("R1", r1),
        ("P2", p2),
        ("Q2", q2),
        ("R2", r2),
    ]
}

/// Closed-form reduced matrices as functions of `(k, l) = kΔx`.
pub fn symbolic_reference<T: Scalar>(kdx: Vec2<T>) -> BlochMatrices<T> {
    let b = closed_form_blocks(kdx);
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    BlochMatrices {
        kdx,
        mr: assemble(b[0].1, b[1].1, b[2].1, one),
        lr: assemble(b[3].1, b[4].1, b[5].1, one),
        d1r: assemble(b[6].1, b[7].1, b[8].1, i),
        d2r: assemble(b[9].1, b[10].1, b[11].1, i),
    }
}

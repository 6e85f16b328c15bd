//! Independent reference integration for tests: tensor Gauss–Legendre on the
//! square collapsed onto the triangle (Duffy map). Uses no library code.
#![allow(dead_code)]

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫_T f` over the triangle with the given corners, exact for polynomials of
/// total degree `≤ 2n − 2`.
pub fn integrate_triangle(corners: [[f64; 2]; 3], f: impl Fn([f64; 2]) -> f64, n: usize) -> f64 {
    let [a, b, c] = corners;
    let jac = ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs();
    let gl = gauss_legendre(n);
    let mut sum = 0.0;
    for &(s, ws) in &gl {
        for &(t, wt) in &gl {
            let u = 0.5 * (s + 1.0);
            let v = 0.5 * (t + 1.0) * (1.0 - u);
            let w = 0.25 * ws * wt * (1.0 - u);
            let x = [a[0] + u * (b[0] - a[0]) + v * (c[0] - a[0]), a[1] + u * (b[1] - a[1]) + v * (c[1] - a[1])];
            sum += w * f(x);
        }
    }
    sum * jac
}

/// Barycentric coordinates of `x` in the triangle and their gradients.
pub fn barycentric(corners: [[f64; 2]; 3], x: [f64; 2]) -> ([f64; 3], [[f64; 2]; 3]) {
    let [p0, p1, p2] = corners;
    let det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    let g = [
        [(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det],
        [(p2[1] - p0[1]) / det, (p0[0] - p2[0]) / det],
        [(p0[1] - p1[1]) / det, (p1[0] - p0[0]) / det],
    ];
    let l1 = g[1][0] * (x[0] - p0[0]) + g[1][1] * (x[1] - p0[1]);
    let l2 = g[2][0] * (x[0] - p0[0]) + g[2][1] * (x[1] - p0[1]);
    ([1.0 - l1 - l2, l1, l2], g)
}

/// Quadratic Lagrange basis (vertices, then midpoints opposite corners 0, 1, 2)
/// with physical gradients, written out from the barycentric formulas.
pub fn p2_basis(corners: [[f64; 2]; 3], x: [f64; 2]) -> ([f64; 6], [[f64; 2]; 6]) {
    let (l, g) = barycentric(corners, x);
    let v = [
        l[0] * (2.0 * l[0] - 1.0),
        l[1] * (2.0 * l[1] - 1.0),
        l[2] * (2.0 * l[2] - 1.0),
        4.0 * l[1] * l[2],
        4.0 * l[2] * l[0],
        4.0 * l[0] * l[1],
    ];
    let lin =
        |a: f64, ga: [f64; 2], b: f64, gb: [f64; 2]| [4.0 * (a * gb[0] + b * ga[0]), 4.0 * (a * gb[1] + b * ga[1])];
    let d = [
        [(4.0 * l[0] - 1.0) * g[0][0], (4.0 * l[0] - 1.0) * g[0][1]],
        [(4.0 * l[1] - 1.0) * g[1][0], (4.0 * l[1] - 1.0) * g[1][1]],
        [(4.0 * l[2] - 1.0) * g[2][0], (4.0 * l[2] - 1.0) * g[2][1]],
        lin(l[1], g[1], l[2], g[2]),
        lin(l[2], g[2], l[0], g[0]),
        lin(l[0], g[0], l[1], g[1]),
    ];
    (v, d)
}

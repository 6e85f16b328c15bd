//! Element matrices on a single affine triangle.

use crate::scalar::{Scalar, Vec2};

use super::geometry::ElementGeometry;
use super::poly::Polynomial2;
use super::quadrature::QuadratureRule;
use super::reference::{p2_eval, p2_nodes};

pub type Block6<T> = [[T; 6]; 6];
pub type Block3<T> = [[T; 3]; 3];

fn zero6<T: Scalar>() -> Block6<T> {
    [[T::zero(); 6]; 6]
}

/// `∫ N_a N_b`
pub fn mass_p2<T: Scalar>(g: &ElementGeometry<T>, rule: &QuadratureRule<T>) -> Block6<T> {
    let mut m = zero6();
    let scale = g.area * T::lit(2.0);
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let e = p2_eval(*p, &g.bary_grads);
        for a in 0..6 {
            for b in 0..6 {
                m[a][b] += scale * w * e.values[a] * e.values[b];
            }
        }
    }
    m
}

/// `∫ ∇N_a · ∇N_b`
pub fn stiffness_p2<T: Scalar>(g: &ElementGeometry<T>, rule: &QuadratureRule<T>) -> Block6<T> {
    let mut m = zero6();
    let scale = g.area * T::lit(2.0);
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let e = p2_eval(*p, &g.bary_grads);
        for a in 0..6 {
            for b in 0..6 {
                let d = e.grads[a][0] * e.grads[b][0] + e.grads[a][1] * e.grads[b][1];
                m[a][b] += scale * w * d;
            }
        }
    }
    m
}

/// `∫ N_a (d · ∇N_b)`
pub fn ddx_p2<T: Scalar>(g: &ElementGeometry<T>, direction: Vec2<T>, rule: &QuadratureRule<T>) -> Block6<T> {
    let mut m = zero6();
    let scale = g.area * T::lit(2.0);
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let e = p2_eval(*p, &g.bary_grads);
        for a in 0..6 {
            for b in 0..6 {
                let d = direction[0] * e.grads[b][0] + direction[1] * e.grads[b][1];
                m[a][b] += scale * w * e.values[a] * d;
            }
        }
    }
    m
}

/// `∫ f λ_i λ_j` for the linear Lagrange basis.
pub fn weighted_mass_p1<T: Scalar>(g: &ElementGeometry<T>, f: &Polynomial2<T>, rule: &QuadratureRule<T>) -> Block3<T> {
    let mut m = [[T::zero(); 3]; 3];
    let scale = g.area * T::lit(2.0);
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let fx = f.eval(g.point(*p));
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += scale * w * fx * p[i] * p[j];
            }
        }
    }
    m
}

/// `∫ λ_i λ_j`
pub fn mass_p1<T: Scalar>(g: &ElementGeometry<T>, rule: &QuadratureRule<T>) -> Block3<T> {
    weighted_mass_p1(g, &Polynomial2::constant(T::one()), rule)
}

/// Kronecker product `m ⊗ B` in the node-major P1DG layout (row `2i + c`).
pub fn kron2<T: Scalar>(m: &Block3<T>, b: [[T; 2]; 2]) -> Block6<T> {
    let mut out = zero6();
    for i in 0..3 {
        for j in 0..3 {
            for c in 0..2 {
                for d in 0..2 {
                    out[2 * i + c][2 * j + d] = m[i][j] * b[c][d];
                }
            }
        }
    }
    out
}

/// Vector P1DG mass block: `mass_p1 ⊗ I₂`.
pub fn mass_p1dg<T: Scalar>(g: &ElementGeometry<T>, rule: &QuadratureRule<T>) -> Block6<T> {
    let (o, z) = (T::one(), T::zero());
    kron2(&mass_p1(g, rule), [[o, z], [z, o]])
}

/// Coriolis block `(C u)_w = ∫ f w · u^⊥`, i.e. `∫ f λ_i λ_j ⊗ J` with
/// `J = [[0, −1], [1, 0]]`.
pub fn coriolis<T: Scalar>(g: &ElementGeometry<T>, f: &Polynomial2<T>, rule: &QuadratureRule<T>) -> Block6<T> {
    let (o, z) = (T::one(), T::zero());
    kron2(&weighted_mass_p1(g, f, rule), [[z, -o], [o, z]])
}

/// Exact gradient embedding: row `2j + c` holds `∂_c N_a` at corner `j`.
pub fn gradient_embedding<T: Scalar>(g: &ElementGeometry<T>) -> Block6<T> {
    let mut m = zero6();
    let nodes = p2_nodes::<T>();
    for j in 0..3 {
        let e = p2_eval(nodes[j], &g.bary_grads);
        for a in 0..6 {
            m[2 * j][a] = e.grads[a][0];
            m[2 * j + 1][a] = e.grads[a][1];
        }
    }
    m
}

/// Coefficient map from the six P2 nodal values to the L2-optimal linear
/// function on the same element (independent of the element shape).
pub fn p2_to_p1_projection<T: Scalar>(rule: &QuadratureRule<T>) -> [[T; 6]; 3] {
    let g = super::reference::reference_bary_grads::<T>();
    // Reference-triangle moments ∫ λ_i N_a, then solve with ∫ λ_i λ_j.
    let mut rhs = [[T::zero(); 6]; 3];
    let mut m = [[T::zero(); 3]; 3];
    for (p, &w) in rule.points.iter().zip(&rule.weights) {
        let e = p2_eval(*p, &g);
        for i in 0..3 {
            for a in 0..6 {
                rhs[i][a] += w * p[i] * e.values[a];
            }
            for j in 0..3 {
                m[i][j] += w * p[i] * p[j];
            }
        }
    }
    let mut out = [[T::zero(); 6]; 3];
    let minv = invert3(&m);
    for i in 0..3 {
        for a in 0..6 {
            out[i][a] = (0..3).map(|k| minv[i][k] * rhs[k][a]).sum();
        }
    }
    out
}

pub(crate) fn invert3<T: Scalar>(m: &Block3<T>) -> Block3<T> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2) / det, -c(0, 2, 1, 2) / det, c(0, 1, 1, 2) / det],
        [-c(1, 2, 0, 2) / det, c(0, 2, 0, 2) / det, -c(0, 1, 0, 2) / det],
        [c(1, 2, 0, 1) / det, -c(0, 2, 0, 1) / det, c(0, 1, 0, 1) / det],
    ]
}

/// Inverse of a 6×6 block by Gauss–Jordan elimination (blocks here are SPD or
/// SPD plus a small antisymmetric part, so no pivoting is needed).
pub fn invert6<T: Scalar>(m: &Block6<T>) -> Block6<T> {
    let mut a = *m;
    let mut inv = zero6();
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for k in 0..6 {
        let p = T::one() / a[k][k];
        for j in 0..6 {
            a[k][j] *= p;
            inv[k][j] *= p;
        }
        for i in 0..6 {
            if i != k {
                let f = a[i][k];
                for j in 0..6 {
                    a[i][j] -= f * a[k][j];
                    inv[i][j] -= f * inv[k][j];
                }
            }
        }
    }
    inv
}

pub fn matmul6<T: Scalar>(a: &Block6<T>, b: &Block6<T>) -> Block6<T> {
    let mut c = zero6();
    for i in 0..6 {
        for k in 0..6 {
            for j in 0..6 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn transpose6<T: Scalar>(a: &Block6<T>) -> Block6<T> {
    let mut t = zero6();
    for i in 0..6 {
        for j in 0..6 {
            t[j][i] = a[i][j];
        }
    }
    t
}

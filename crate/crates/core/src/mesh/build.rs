use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Mesh, Shift};

/// Wraps lattice index `(i, j)` into the `n1 × n2` cell, returning the vertex
/// index and the generator shift.
fn wrap(i: usize, j: usize, n1: usize, n2: usize) -> (usize, Shift) {
    let (si, sj) = ((i / n1) as i32, (j / n2) as i32);
    ((j % n2) * n1 + i % n1, [si, sj])
}

fn quad_split<T: Scalar>(
    vertices: Vec<[T; 2]>,
    n1: usize,
    n2: usize,
    split: &[[(usize, usize); 3]; 2],
    generators: [[T; 2]; 2],
) -> Result<Mesh<T>> {
    let mut triangles = Vec::with_capacity(2 * n1 * n2);
    let mut shifts = Vec::with_capacity(2 * n1 * n2);
    for j in 0..n2 {
        for i in 0..n1 {
            for tri in split {
                let c: [(usize, Shift); 3] = std::array::from_fn(|k| wrap(i + tri[k].0, j + tri[k].1, n1, n2));
                triangles.push([c[0].0, c[1].0, c[2].0]);
                shifts.push([c[0].1, c[1].1, c[2].1]);
            }
        }
    }
    Mesh::new(vertices, triangles, shifts, generators)
}

/// Rhombic torus of equilateral triangles with side `dx`, spanned by
/// `n1·dx·(1, 0)` and `n2·dx·(1/2, √3/2)`.
pub fn build_equilateral_torus<T: Scalar>(n1: usize, n2: usize, dx: T) -> Result<Mesh<T>> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::invalid(format!("equilateral torus needs n1, n2 >= 2 (got {n1}, {n2})")));
    }
    if !(dx > T::zero()) || !dx.is_finite() {
        return Err(Error::invalid("edge length dx must be positive"));
    }
    let a1 = [dx, T::zero()];
    let a2 = [dx * T::lit(0.5), dx * T::lit(3.0).sqrt() * T::lit(0.5)];
    let mut vertices = Vec::with_capacity(n1 * n2);
    for j in 0..n2 {
        for i in 0..n1 {
            let (fi, fj) = (T::from_usize_lossy(i), T::from_usize_lossy(j));
            vertices.push([fi * a1[0] + fj * a2[0], fi * a1[1] + fj * a2[1]]);
        }
    }
    let (m1, m2) = (T::from_usize_lossy(n1), T::from_usize_lossy(n2));
    let generators = [[m1 * a1[0], m1 * a1[1]], [m2 * a2[0], m2 * a2[1]]];
    quad_split(vertices, n1, n2, &[[(0, 0), (1, 0), (0, 1)], [(1, 0), (1, 1), (0, 1)]], generators)
}

/// Rectangle `[0, lx) × [0, ly)` with `nx × ny` cells, each cut along the
/// diagonal from its lower-left to its upper-right corner.
pub fn build_right_triangle_torus<T: Scalar>(nx: usize, ny: usize, lx: T, ly: T) -> Result<Mesh<T>> {
    if nx < 2 || ny < 2 {
        return Err(Error::invalid(format!("rectangular torus needs nx, ny >= 2 (got {nx}, {ny})")));
    }
    if !(lx > T::zero() && ly > T::zero()) || !lx.is_finite() || !ly.is_finite() {
        return Err(Error::invalid("domain extents must be positive"));
    }
    let (hx, hy) = (lx / T::from_usize_lossy(nx), ly / T::from_usize_lossy(ny));
    let mut vertices = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            vertices.push([T::from_usize_lossy(i) * hx, T::from_usize_lossy(j) * hy]);
        }
    }
    let generators = [[lx, T::zero()], [T::zero(), ly]];
    quad_split(vertices, nx, ny, &[[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]], generators)
}

//! Doubly periodic planar triangulations.
//!
//! Vertices are stored once, inside the fundamental cell. Each triangle corner
//! carries an integer shift in units of the two lattice generators, so that
//! `vertex + s₁·g₁ + s₂·g₂` gives geometrically contiguous corner coordinates.

mod build;
mod io;
mod validate;

pub use build::{build_equilateral_torus, build_right_triangle_torus};
pub use io::{read_mesh, write_mesh};
pub use validate::{CheckResult, ValidationReport};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vec2};

/// Integer translation in generator units.
pub type Shift = [i32; 2];

/// An undirected mesh edge between `vertices[0]` and the copy of
/// `vertices[1]` translated by `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub shift: Shift,
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Mesh<T> {
    vertices: Vec<Vec2<T>>,
    triangles: Vec<[usize; 3]>,
    shifts: Vec<[Shift; 3]>,
    generators: [Vec2<T>; 2],
    edges: Vec<Edge>,
    /// `tri_edges[f][k]` is the edge opposite corner `k` of face `f`.
    tri_edges: Vec<[usize; 3]>,
}

fn sub_shift(a: Shift, b: Shift) -> Shift {
    [a[0] - b[0], a[1] - b[1]]
}

/// Canonical key of the edge joining `(va, sa)` and `(vb, sb)`.
fn edge_key(va: usize, sa: Shift, vb: usize, sb: Shift) -> (usize, usize, Shift) {
    let d = sub_shift(sb, sa);
    let neg = [-d[0], -d[1]];
    if va < vb || (va == vb && d >= neg) {
        (va, vb, d)
    } else {
        (vb, va, neg)
    }
}

impl<T: Scalar> Mesh<T> {
    /// Builds a mesh and derives its edges. Only index ranges are checked
    /// here; topological and geometric invariants are reported by
    /// [`Mesh::validate`].
    pub fn new(
        vertices: Vec<Vec2<T>>,
        triangles: Vec<[usize; 3]>,
        shifts: Vec<[Shift; 3]>,
        generators: [Vec2<T>; 2],
    ) -> Result<Self> {
        if shifts.len() != triangles.len() {
            return Err(Error::DimensionMismatch { expected: triangles.len(), found: shifts.len() });
        }
        let nv = vertices.len();
        if let Some((f, _)) = triangles.iter().enumerate().find(|(_, t)| t.iter().any(|&v| v >= nv)) {
            return Err(Error::invalid(format!("face {f} references a vertex outside 0..{nv}")));
        }
        let mut keys: BTreeMap<(usize, usize, Shift), Vec<(usize, usize)>> = BTreeMap::new();
        for (f, (t, s)) in triangles.iter().zip(&shifts).enumerate() {
            for k in 0..3 {
                let (a, b) = ((k + 1) % 3, (k + 2) % 3);
                keys.entry(edge_key(t[a], s[a], t[b], s[b])).or_default().push((f, k));
            }
        }
        let mut edges = Vec::with_capacity(keys.len());
        let mut tri_edges = vec![[usize::MAX; 3]; triangles.len()];
        for (e, ((va, vb, d), uses)) in keys.into_iter().enumerate() {
            for &(f, k) in &uses {
                tri_edges[f][k] = e;
            }
            let mut faces: Vec<usize> = uses.iter().map(|&(f, _)| f).collect();
            faces.dedup();
            edges.push(Edge { vertices: [va, vb], shift: d, faces });
        }
        Ok(Self { vertices, triangles, shifts, generators, edges, tri_edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn shifts(&self) -> &[[Shift; 3]] {
        &self.shifts
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge indices of face `f`, opposite corners 0, 1, 2.
    pub fn face_edges(&self, f: usize) -> [usize; 3] {
        self.tri_edges[f]
    }

    pub fn generators(&self) -> [Vec2<T>; 2] {
        self.generators
    }

    /// Translation vector of an integer shift.
    pub fn shift_vector(&self, s: Shift) -> Vec2<T> {
        let [g1, g2] = self.generators;
        let (a, b) = (T::lit(s[0] as f64), T::lit(s[1] as f64));
        [a * g1[0] + b * g2[0], a * g1[1] + b * g2[1]]
    }

    /// Geometric (unwrapped) coordinates of the corners of face `f`.
    pub fn face_corners(&self, f: usize) -> [Vec2<T>; 3] {
        let t = self.triangles[f];
        let s = self.shifts[f];
        std::array::from_fn(|k| {
            let v = self.vertices[t[k]];
            let d = self.shift_vector(s[k]);
            [v[0] + d[0], v[1] + d[1]]
        })
    }

    /// Signed area of face `f` (positive for counter-clockwise corners).
    pub fn signed_area(&self, f: usize) -> T {
        let [a, b, c] = self.face_corners(f);
        T::lit(0.5) * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
    }

    /// Area of the fundamental cell, `|g₁ × g₂|`.
    pub fn domain_area(&self) -> T {
        let [g1, g2] = self.generators;
        (g1[0] * g2[1] - g1[1] * g2[0]).abs()
    }

    /// Number of edge ends at each vertex (self-loops count twice).
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices()];
        for e in &self.edges {
            deg[e.vertices[0]] += 1;
            deg[e.vertices[1]] += 1;
        }
        deg
    }

    /// Midpoint of edge `e` measured from the copy of `vertices[0]` inside
    /// the fundamental cell.
    pub fn edge_midpoint(&self, e: usize) -> Vec2<T> {
        let edge = &self.edges[e];
        let a = self.vertices[edge.vertices[0]];
        let b = self.vertices[edge.vertices[1]];
        let d = self.shift_vector(edge.shift);
        let half = T::lit(0.5);
        [half * (a[0] + b[0] + d[0]), half * (a[1] + b[1] + d[1])]
    }

    /// Checks every mesh invariant and reports the offending indices.
    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }
}

use crate::error::Result;
use crate::fem::element::{self, Block6};
use crate::fem::{ElementGeometry, QuadratureRule};
use crate::linalg::DenseMatrix;
use crate::scalar::{Scalar, Vec2};

/// Translation class of a P2 node on the equilateral lattice with
/// generators `a1 = (1, 0)`, `a2 = (1/2, √3/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeClass {
    /// Midpoint of an edge parallel to `a1`.
    EdgeA,
    /// Midpoint of an edge parallel to `a2`.
    EdgeB,
    /// Midpoint of an edge parallel to `a2 − a1`.
    EdgeC,
    Vertex,
}

impl NodeClass {
    pub const ALL: [NodeClass; 4] = [NodeClass::EdgeA, NodeClass::EdgeB, NodeClass::EdgeC, NodeClass::Vertex];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Class of a point given in units of the edge length. Lattice vertices have
/// integer coordinates in the `(a1, a2)` basis and edge midpoints have
/// half-integer ones; the parity pattern identifies the edge orientation.
pub fn classify_lattice_point<T: Scalar>(x: Vec2<T>) -> NodeClass {
    let c2 = x[1] * T::lit(2.0) / T::lit(3.0f64.sqrt());
    let c1 = x[0] - T::lit(0.5) * c2;
    let parity = |c: T| ((c * T::lit(2.0)).round().to_f64_lossy() as i64).rem_euclid(2);
    match (parity(c1), parity(c2)) {
        (0, 0) => NodeClass::Vertex,
        (1, 0) => NodeClass::EdgeA,
        (0, 1) => NodeClass::EdgeB,
        _ => NodeClass::EdgeC,
    }
}

/// Unit-edge hexagon of six equilateral triangles around the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceHexagon<T> {
    nodes: Vec<Vec2<T>>,
    triangles: Vec<[usize; 6]>,
    classes: Vec<NodeClass>,
}

/// Node numbering: the centre, the six outer vertices counterclockwise from
/// `(1, 0)`, then midpoints in order of first appearance. Triangle `j` has
/// corners (centre, vertex j, vertex j+1) and the usual local P2 order.
pub fn build_reference_hexagon<T: Scalar>() -> ReferenceHexagon<T> {
    let third = std::f64::consts::PI / 3.0;
    let mut nodes: Vec<Vec2<T>> = vec![[T::zero(), T::zero()]];
    nodes.extend((0..6).map(|j| [T::lit((j as f64 * third).cos()), T::lit((j as f64 * third).sin())]));
    let mut find_or_add = |x: Vec2<T>| -> usize {
        let tol = T::lit(1e-9);
        if let Some(i) = nodes.iter().position(|n| (n[0] - x[0]).abs() < tol && (n[1] - x[1]).abs() < tol) {
            return i;
        }
        nodes.push(x);
        nodes.len() - 1
    };
    let half = T::lit(0.5);
    let mut triangles = Vec::with_capacity(6);
    for j in 0..6 {
        let v = [0, 1 + j, 1 + (j + 1) % 6];
        let p = |i: usize| {
            if i == 0 {
                [T::zero(), T::zero()]
            } else {
                let a = ((i - 1) as f64) * third;
                [T::lit(a.cos()), T::lit(a.sin())]
            }
        };
        let mid = |a: usize, b: usize| [half * (p(a)[0] + p(b)[0]), half * (p(a)[1] + p(b)[1])];
        let m12 = find_or_add(mid(v[1], v[2]));
        let m20 = find_or_add(mid(v[2], v[0]));
        let m01 = find_or_add(mid(v[0], v[1]));
        triangles.push([v[0], v[1], v[2], m12, m20, m01]);
    }
    let classes = nodes.iter().map(|&x| classify_lattice_point(x)).collect();
    ReferenceHexagon { nodes, triangles, classes }
}

impl<T: Scalar> ReferenceHexagon<T> {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Vec2<T>] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 6]] {
        &self.triangles
    }

    pub fn classes(&self) -> &[NodeClass] {
        &self.classes
    }

    /// Node counts per class, in [`NodeClass::ALL`] order.
    pub fn class_sizes(&self) -> [usize; 4] {
        let mut s = [0; 4];
        for c in &self.classes {
            s[c.index()] += 1;
        }
        s
    }

    pub fn triangle_corners(&self, t: usize) -> [Vec2<T>; 3] {
        let tri = self.triangles[t];
        [self.nodes[tri[0]], self.nodes[tri[1]], self.nodes[tri[2]]]
    }

    pub fn area(&self) -> T {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle_corners(t);
                T::lit(0.5) * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
            })
            .sum()
    }
}

/// Mass, Laplacian and the two Cartesian derivative matrices assembled over
/// the hexagon (19 × 19, unit edge length).
#[derive(Clone, Debug, PartialEq)]
pub struct HexagonOperators<T> {
    pub m: DenseMatrix<T>,
    pub l: DenseMatrix<T>,
    pub d1: DenseMatrix<T>,
    pub d2: DenseMatrix<T>,
}

impl<T: Scalar> HexagonOperators<T> {
    pub fn assemble(hex: &ReferenceHexagon<T>, rule: &QuadratureRule<T>) -> Result<Self> {
        let n = hex.n_nodes();
        let mut ops = Self {
            m: DenseMatrix::zeros(n, n),
            l: DenseMatrix::zeros(n, n),
            d1: DenseMatrix::zeros(n, n),
            d2: DenseMatrix::zeros(n, n),
        };
        for (t, dofs) in hex.triangles().iter().enumerate() {
            let g = ElementGeometry::new(hex.triangle_corners(t))?;
            let blocks: [(&mut DenseMatrix<T>, Block6<T>); 4] = [
                (&mut ops.m, element::mass_p2(&g, rule)),
                (&mut ops.l, element::stiffness_p2(&g, rule)),
                (&mut ops.d1, element::ddx_p2(&g, [T::one(), T::zero()], rule)),
                (&mut ops.d2, element::ddx_p2(&g, [T::zero(), T::one()], rule)),
            ];
            for (target, b) in blocks {
                for a in 0..6 {
                    for c in 0..6 {
                        target[(dofs[a], dofs[c])] += b[a][c];
                    }
                }
            }
        }
        Ok(ops)
    }
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::scalar::{Scalar, Vec2};

/// Continuous piecewise-quadratic scalars. Dofs: one per vertex (mesh order),
/// then one per edge (canonical edge order).
#[derive(Clone, Debug)]
pub struct P2Space<T> {
    mesh: Arc<Mesh<T>>,
    element_dofs: Vec<[usize; 6]>,
}

impl<T: Scalar> P2Space<T> {
    pub fn new(mesh: Arc<Mesh<T>>) -> Self {
        let nv = mesh.n_vertices();
        let element_dofs = (0..mesh.n_faces())
            .map(|f| {
                let t = mesh.triangles()[f];
                let e = mesh.face_edges(f);
                [t[0], t[1], t[2], nv + e[0], nv + e[1], nv + e[2]]
            })
            .collect();
        Self { mesh, element_dofs }
    }

    pub fn mesh(&self) -> &Arc<Mesh<T>> {
        &self.mesh
    }

    pub fn n_dofs(&self) -> usize {
        self.mesh.n_vertices() + self.mesh.n_edges()
    }

    /// Global dofs of face `f` in local P2 node order.
    pub fn element_dofs(&self, f: usize) -> [usize; 6] {
        self.element_dofs[f]
    }

    /// Node position of every dof inside the fundamental cell.
    pub fn dof_coordinates(&self) -> Vec<Vec2<T>> {
        let mut out = self.mesh.vertices().to_vec();
        out.extend((0..self.mesh.n_edges()).map(|e| self.mesh.edge_midpoint(e)));
        out
    }
}

/// Discontinuous piecewise-linear 2-vectors. Dof `6f + 2j + c` is component
/// `c` at corner `j` of face `f`.
#[derive(Clone, Debug)]
pub struct P1dgVecSpace<T> {
    mesh: Arc<Mesh<T>>,
}

impl<T: Scalar> P1dgVecSpace<T> {
    pub fn new(mesh: Arc<Mesh<T>>) -> Self {
        Self { mesh }
    }

    pub fn mesh(&self) -> &Arc<Mesh<T>> {
        &self.mesh
    }

    pub fn n_dofs(&self) -> usize {
        6 * self.mesh.n_faces()
    }

    #[inline]
    pub fn dof(f: usize, corner: usize, component: usize) -> usize {
        6 * f + 2 * corner + component
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    P2,
    P1dgVec,
}

/// A coefficient vector tagged with its space.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    kind: SpaceKind,
    coeffs: Vec<T>,
}

impl<T: Scalar> Field<T> {
    pub fn p2(space: &P2Space<T>, coeffs: Vec<T>) -> Result<Self> {
        Self::checked(SpaceKind::P2, space.n_dofs(), coeffs)
    }

    pub fn p1dg(space: &P1dgVecSpace<T>, coeffs: Vec<T>) -> Result<Self> {
        Self::checked(SpaceKind::P1dgVec, space.n_dofs(), coeffs)
    }

    pub fn zeros_p2(space: &P2Space<T>) -> Self {
        Self { kind: SpaceKind::P2, coeffs: vec![T::zero(); space.n_dofs()] }
    }

    pub fn zeros_p1dg(space: &P1dgVecSpace<T>) -> Self {
        Self { kind: SpaceKind::P1dgVec, coeffs: vec![T::zero(); space.n_dofs()] }
    }

    fn checked(kind: SpaceKind, n: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: coeffs.len() });
        }
        Ok(Self { kind, coeffs })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same space, new coefficients of equal length.
    pub fn with_coeffs(&self, coeffs: Vec<T>) -> Result<Self> {
        Self::checked(self.kind, self.coeffs.len(), coeffs)
    }
}

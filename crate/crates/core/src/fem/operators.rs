use std::sync::Arc;

use crate::error::Result;
use crate::linalg::SparseMatrix;
use crate::mesh::Mesh;
use crate::scalar::Scalar;

use super::assemble::{
    assemble_gradient_embedding, assemble_mass_p1dg, assemble_mass_p2, assemble_perp, assemble_stiffness_p2,
    element_geometries,
};
use super::geometry::ElementGeometry;
use super::quadrature::QuadratureRule;
use super::space::{P1dgVecSpace, P2Space};

/// Spaces and the mesh-dependent (parameter-free) operators shared by the
/// Helmholtz decomposition and the time integrators.
#[derive(Clone, Debug)]
pub struct Operators<T> {
    pub mesh: Arc<Mesh<T>>,
    pub p2: P2Space<T>,
    pub vel: P1dgVecSpace<T>,
    pub geometry: Vec<ElementGeometry<T>>,
    /// P2 mass `M`.
    pub mass: SparseMatrix<T>,
    /// P2 stiffness `L`.
    pub stiffness: SparseMatrix<T>,
    /// P1DG vector mass `M_v`.
    pub mass_v: SparseMatrix<T>,
    /// Exact gradient embedding `Gr` (P2 → P1DG).
    pub grad: SparseMatrix<T>,
    /// Pointwise `⊥`.
    pub perp: SparseMatrix<T>,
}

impl<T: Scalar> Operators<T> {
    pub fn new(mesh: Mesh<T>) -> Result<Self> {
        Self::with_rule(Arc::new(mesh), &QuadratureRule::degree4())
    }

    pub fn with_rule(mesh: Arc<Mesh<T>>, rule: &QuadratureRule<T>) -> Result<Self> {
        let p2 = P2Space::new(mesh.clone());
        let vel = P1dgVecSpace::new(mesh.clone());
        let geometry = element_geometries(&mesh)?;
        Ok(Self {
            mass: assemble_mass_p2(&p2, rule)?,
            stiffness: assemble_stiffness_p2(&p2, rule)?,
            mass_v: assemble_mass_p1dg(&vel, rule)?,
            grad: assemble_gradient_embedding(&p2, &vel)?,
            perp: assemble_perp(&vel),
            mesh,
            p2,
            vel,
            geometry,
        })
    }

    pub fn n_p2(&self) -> usize {
        self.p2.n_dofs()
    }

    pub fn n_vel(&self) -> usize {
        self.vel.n_dofs()
    }

    pub fn domain_area(&self) -> T {
        self.mesh.domain_area()
    }

    /// `⟨u, v⟩` in the `M_v` inner product.
    pub fn inner_v(&self, u: &[T], v: &[T]) -> T {
        crate::linalg::dot(u, &self.mass_v.mul_vec(v))
    }

    /// `⟨a, b⟩` in the P2 mass inner product.
    pub fn inner_p2(&self, a: &[T], b: &[T]) -> T {
        crate::linalg::dot(a, &self.mass.mul_vec(b))
    }

    /// `∫ h` for a P2 field.
    pub fn integral_p2(&self, h: &[T]) -> T {
        self.mass.tr_mul_vec(h).into_iter().sum()
    }

    /// Spatial mean `∫ u / |Ω|` of a P1DG vector field.
    pub fn mean_velocity(&self, u: &[T]) -> [T; 2] {
        let mu = self.mass_v.mul_vec(u);
        let area = self.domain_area();
        let mut s = [T::zero(); 2];
        // Σ_w (M_v u)_w over the x (resp. y) basis functions gives ∫ u_x (∫ u_y).
        for (i, v) in mu.iter().enumerate() {
            s[i % 2] += *v;
        }
        [s[0] / area, s[1] / area]
    }
}

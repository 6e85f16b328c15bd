use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vec2};

use super::element::p2_to_p1_projection;
use super::quadrature::QuadratureRule;
use super::space::{Field, P1dgVecSpace, P2Space};

/// Nodal interpolation of a scalar function into P2.
pub fn collocate_p2<T: Scalar>(space: &P2Space<T>, f: impl Fn(Vec2<T>) -> T) -> Field<T> {
    let coeffs = space.dof_coordinates().into_iter().map(f).collect();
    Field::p2(space, coeffs).expect("one value per dof")
}

/// Interpolation of a vector function into P1DG at each element's corners.
pub fn collocate_p1dg<T: Scalar>(space: &P1dgVecSpace<T>, f: impl Fn(Vec2<T>) -> Vec2<T>) -> Field<T> {
    let mesh = space.mesh();
    let mut coeffs = Vec::with_capacity(space.n_dofs());
    for face in 0..mesh.n_faces() {
        for x in mesh.face_corners(face) {
            let v = f(x);
            coeffs.extend_from_slice(&v);
        }
    }
    Field::p1dg(space, coeffs).expect("six values per face")
}

/// Component-wise P2 interpolation of a vector function.
pub fn collocate_p2_vector<T: Scalar>(space: &P2Space<T>, f: impl Fn(Vec2<T>) -> Vec2<T>) -> (Field<T>, Field<T>) {
    let vals: Vec<Vec2<T>> = space.dof_coordinates().into_iter().map(f).collect();
    let ux = vals.iter().map(|v| v[0]).collect();
    let uy = vals.iter().map(|v| v[1]).collect();
    (Field::p2(space, ux).expect("one value per dof"), Field::p2(space, uy).expect("one value per dof"))
}

/// Element-local L2 projection of a P2 vector field `(ux, uy)` onto P1DG.
pub fn project_p2vec_to_p1dg<T: Scalar>(
    p2: &P2Space<T>,
    v: &P1dgVecSpace<T>,
    ux: &Field<T>,
    uy: &Field<T>,
) -> Result<Field<T>> {
    for u in [ux, uy] {
        if u.len() != p2.n_dofs() {
            return Err(Error::DimensionMismatch { expected: p2.n_dofs(), found: u.len() });
        }
    }
    let r = p2_to_p1_projection(&QuadratureRule::<T>::degree4());
    let mut coeffs = vec![T::zero(); v.n_dofs()];
    for f in 0..p2.mesh().n_faces() {
        let dofs = p2.element_dofs(f);
        for (c, u) in [ux, uy].iter().enumerate() {
            let q = u.coeffs();
            for i in 0..3 {
                coeffs[P1dgVecSpace::<T>::dof(f, i, c)] = (0..6).map(|a| r[i][a] * q[dofs[a]]).sum();
            }
        }
    }
    Field::p1dg(v, coeffs)
}

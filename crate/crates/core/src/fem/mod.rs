//! Reference elements, quadrature, dof maps and assembly for the P2
//! continuous scalar space and the P1DG discontinuous vector space.

mod assemble;
pub mod element;
mod geometry;
mod interp;
mod operators;
mod poly;
mod quadrature;
mod reference;
mod space;

pub use assemble::{
    assemble_coriolis, assemble_ddx_p2, assemble_grad_coupling, assemble_gradient_embedding, assemble_mass_p1dg,
    assemble_mass_p2, assemble_perp, assemble_stiffness_p2, element_geometries, gradient_p2_to_p1dg, perp,
};
pub use geometry::ElementGeometry;
pub use interp::{collocate_p1dg, collocate_p2, collocate_p2_vector, project_p2vec_to_p1dg};
pub use operators::Operators;
pub use poly::Polynomial2;
pub use quadrature::QuadratureRule;
pub use reference::{check_barycentric, p2_eval, p2_nodes, ref_p2_basis, P2Eval};
pub use space::{Field, P1dgVecSpace, P2Space, SpaceKind};

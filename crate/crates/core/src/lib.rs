//! P1DG–P2 mixed finite elements for the linearized rotating shallow-water
//! equations on doubly periodic planar triangulations.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases in [`mod@f64`] fix it to `f64`, which is what the experiments
//! and tolerances are calibrated for.

// `!(x > 0)` is used on purpose: it also rejects NaN. Small dense kernels
// read better with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::assign_op_pattern)]

pub mod bloch;
pub mod dynamics;
pub mod error;
pub mod fem;
pub mod format;
pub mod helmholtz;
pub mod linalg;
pub mod mesh;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Scalar, Vec2};

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
pub(crate) mod oracle;

/// The library types fixed to `f64`.
pub mod f64 {
    pub type Mesh = crate::mesh::Mesh<f64>;
    pub type Operators = crate::fem::Operators<f64>;
    pub type Field = crate::fem::Field<f64>;
    pub type SparseMatrix = crate::linalg::SparseMatrix<f64>;
    pub type State = crate::dynamics::State<f64>;
    pub type SweParams = crate::dynamics::SweParams<f64>;
    pub type RossbyParams = crate::dynamics::RossbyParams<f64>;
    pub type PlaneWave = crate::dynamics::PlaneWave<f64>;
    pub type HelmholtzComponents = crate::helmholtz::HelmholtzComponents<f64>;
    pub type BlochMatrices = crate::bloch::BlochMatrices<f64>;
    pub type BlochAnalyzer = crate::bloch::BlochAnalyzer<f64>;
    pub type DispersionResult = crate::bloch::DispersionResult<f64>;
}

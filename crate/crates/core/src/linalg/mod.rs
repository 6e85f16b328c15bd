//! Linear algebra: sparse symmetric solves with constant-nullspace handling,
//! flexible GMRES for nonsymmetric systems, and small dense (real and
//! complex) kernels for element and Bloch matrices.

mod cg;
mod complex;
mod dense;
mod gmres;
mod sparse;

pub use cg::{solve_spd, SolveOptions, SolveStats};
pub use complex::{eig_dense, DenseComplexMatrix, Eigen};
pub use dense::{invert_small, lu_solve, numerical_rank, DenseMatrix};
pub use gmres::{solve_gmres, GmresOptions};
pub use sparse::{SparseMatrix, TripletBuilder};

use crate::scalar::Scalar;

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub(crate) fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

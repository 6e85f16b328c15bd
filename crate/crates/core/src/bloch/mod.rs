//! Bloch-wave dispersion analysis of the P1DG–P2 discretization on the
//! equilateral lattice. A wave `η̃_c e^{i k·ξ}` with one complex amplitude per
//! translation class of P2 nodes reduces the mass, Laplacian and derivative
//! matrices assembled over a reference hexagon to 4×4 Hermitian (or
//! skew-Hermitian) matrices whose eigenvalues give the discrete frequencies.

mod branches;
mod hexagon;
mod oracle;
mod reduce;
mod sweep;
mod symbolic;

pub use branches::{templates, DispersionResult, TEMPLATE_NAMES};
pub use hexagon::{build_reference_hexagon, classify_lattice_point, HexagonOperators, NodeClass, ReferenceHexagon};
pub use oracle::{calibrate_permutation, random_zone_points, run_oracle, OracleReport};
pub use reduce::{
    bloch_matrix_s, bloch_mode_values, reduced_matrices, BlochAnalyzer, BlochMatrices, CLASS_PERMUTATION,
};
pub use sweep::{in_first_zone, sweep_brillouin, sweep_csv, zone_grid, SweepKind, ZONE_BOUND};
pub use symbolic::symbolic_reference;

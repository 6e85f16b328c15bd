//! Time integration of the semi-discrete rotating shallow-water system
//! `M_v u̇ = −C u − c² G η`, `M η̇ = Gᵀ u`, the quasi-geostrophic Rossby
//! equation, initial conditions, and the convergence experiment.

mod checkpoint;
mod convergence;
mod diagnostics;
mod init;
mod params;
mod plane_wave;
mod rossby;
mod stepper;

pub use checkpoint::{read_checkpoint, write_checkpoint};
pub use convergence::{fit_order, run_convergence, ConvergenceResult, ConvergenceRow, IcMode};
pub use diagnostics::{energy, frequency_from_differences, l2_error_p2, Trajectory, TrajectoryRow};
pub use init::{geostrophic_init, inertial_init, random_state, InertialMode};
pub use params::{RossbyParams, SweParams};
pub use plane_wave::{PlaneWave, PlaneWaveSpec};
pub use rossby::{solve_rossby, RossbyIntegrator, RossbyTrajectory};
pub use stepper::{MidpointStepper, State};

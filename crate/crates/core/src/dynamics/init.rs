use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fem::Operators;
use crate::helmholtz::decompose;
use crate::scalar::Scalar;

use super::params::SweParams;
use super::stepper::State;

/// Geostrophically balanced state `u = (c²/f0) ⊥ Gr η0`. On an f-plane this
/// is an exact steady state of the discrete equations.
pub fn geostrophic_init<T: Scalar>(ops: &Operators<T>, eta0: &[T], params: &SweParams<T>) -> Result<State<T>> {
    if eta0.len() != ops.n_p2() {
        return Err(Error::DimensionMismatch { expected: ops.n_p2(), found: eta0.len() });
    }
    if params.f0 == T::zero() {
        return Err(Error::invalid("geostrophic balance needs f0 != 0"));
    }
    let g = ops.grad.mul_vec(eta0);
    let s = params.c2 / params.f0;
    let u = ops.perp.mul_vec(&g).into_iter().map(|v| s * v).collect();
    Ok(State { u, eta: eta0.to_vec(), time: T::zero() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InertialMode {
    /// Spatially constant unit velocity with a seeded direction.
    Physical,
    /// Seeded random velocity filtered to its spurious component.
    Spurious,
}

/// Zero free surface plus a velocity that should oscillate at the inertial
/// frequency: a constant flow, or a member of the spurious subspace.
pub fn inertial_init<T: Scalar>(ops: &Operators<T>, mode: InertialMode, seed: u64, tol: T) -> Result<State<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = match mode {
        InertialMode::Physical => {
            let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (ux, uy) = (T::lit(angle.cos()), T::lit(angle.sin()));
            (0..ops.n_vel()).map(|i| if i % 2 == 0 { ux } else { uy }).collect()
        }
        InertialMode::Spurious => {
            let raw: Vec<T> = (0..ops.n_vel()).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
            let uhat = decompose(ops, &raw, tol)?.uhat;
            let size = ops.inner_v(&uhat, &uhat).sqrt();
            if size == T::zero() {
                return Err(Error::invalid("mesh has no spurious modes"));
            }
            uhat.into_iter().map(|v| v / size).collect()
        }
    };
    Ok(State { u, eta: vec![T::zero(); ops.n_p2()], time: T::zero() })
}

/// Seeded state with independent uniform(−1, 1) coefficients.
pub fn random_state<T: Scalar>(ops: &Operators<T>, seed: u64) -> State<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<T> { (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect() };
    let u = draw(ops.n_vel());
    let eta = draw(ops.n_p2());
    State { u, eta, time: T::zero() }
}

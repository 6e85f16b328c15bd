use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fem::{collocate_p1dg, collocate_p2, collocate_p2_vector, project_p2vec_to_p1dg, Operators, QuadratureRule};
use crate::mesh::build_right_triangle_torus;
use crate::scalar::Scalar;

use super::diagnostics::l2_error_p2;
use super::params::SweParams;
use super::plane_wave::{PlaneWave, PlaneWaveSpec};
use super::stepper::{MidpointStepper, State};

/// How the plane-wave velocity is turned into a P1DG field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcMode {
    /// Pointwise values at each element's corners.
    Collocated,
    /// P2 interpolation followed by element-wise L2 projection.
    Projected,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow<T> {
    pub n: usize,
    pub dx: T,
    pub steps: usize,
    pub dt: T,
    pub error: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceResult<T> {
    pub mode: IcMode,
    pub rows: Vec<ConvergenceRow<T>>,
    /// Least-squares slope of `log error` against `log dx`.
    pub order: T,
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_order<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::invalid("need at least two matching samples"));
    }
    if x.iter().chain(y).any(|v| !(*v > T::zero())) {
        return Err(Error::invalid("samples must be positive"));
    }
    let n = T::from_usize_lossy(x.len());
    let lx: Vec<T> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<T> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().copied().sum::<T>() / n;
    let my = ly.iter().copied().sum::<T>() / n;
    let sxy: T = lx.iter().zip(&ly).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let sxx: T = lx.iter().map(|&a| (a - mx) * (a - mx)).sum();
    Ok(sxy / sxx)
}

fn run_level<T: Scalar>(
    n: usize,
    mode: IcMode,
    params: &SweParams<T>,
    spec: &PlaneWaveSpec<T>,
    dt_scale: T,
) -> Result<ConvergenceRow<T>> {
    let mesh = build_right_triangle_torus(n, n, T::one(), T::one())?;
    let wave = PlaneWave::new(*spec, params, mesh.generators())?;
    let ops = Operators::with_rule(Arc::new(mesh), &QuadratureRule::degree4())?;
    let dx = T::one() / T::from_usize_lossy(n);
    let t_end = wave.transit_time(T::one());
    let steps = (t_end / (dt_scale * dx.powf(T::lit(1.5)))).ceil().to_f64_lossy().max(1.0) as usize;
    let dt = t_end / T::from_usize_lossy(steps);
    let eta = collocate_p2(&ops.p2, |x| wave.eta(x, T::zero())).into_coeffs();
    let u = match mode {
        IcMode::Collocated => collocate_p1dg(&ops.vel, |x| wave.velocity(x, T::zero())),
        IcMode::Projected => {
            let (ux, uy) = collocate_p2_vector(&ops.p2, |x| wave.velocity(x, T::zero()));
            project_p2vec_to_p1dg(&ops.p2, &ops.vel, &ux, &uy)?
        }
    }
    .into_coeffs();
    let mut stepper = MidpointStepper::new(&ops, *params, dt)?;
    let mut state = State { u, eta, time: T::zero() };
    for _ in 0..steps {
        state = stepper.step(&state)?;
    }
    let error = l2_error_p2(&ops, &state.eta, |x| wave.eta(x, t_end))?;
    Ok(ConvergenceRow { n, dx, steps, dt, error })
}

/// Propagates a plane wave across the unit torus for one transit time on
/// right-triangle meshes with `levels[i]` cells per side, and reports the
/// final free-surface L2 error and its convergence order. The time step is
/// `dt_scale · dx^1.5`, rounded down so the transit time is hit exactly.
pub fn run_convergence<T: Scalar>(
    levels: &[usize],
    mode: IcMode,
    params: &SweParams<T>,
    spec: &PlaneWaveSpec<T>,
    dt_scale: T,
) -> Result<ConvergenceResult<T>> {
    if levels.len() < 2 || levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("levels must be at least two strictly increasing resolutions"));
    }
    if !(dt_scale > T::zero()) {
        return Err(Error::invalid("time step scale must be positive"));
    }
    let rows = levels.par_iter().map(|&n| run_level(n, mode, params, spec, dt_scale)).collect::<Result<Vec<_>>>()?;
    let dx: Vec<T> = rows.iter().map(|r| r.dx).collect();
    let err: Vec<T> = rows.iter().map(|r| r.error).collect();
    let order = fit_order(&dx, &err)?;
    Ok(ConvergenceResult { mode, rows, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fitted_slope() {
        let x = [0.1, 0.05, 0.025];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powi(2)).collect();
        assert!((fit_order(&x, &y).unwrap() - 2.0).abs() < 1e-12);
        assert!(fit_order(&[1.0], &[1.0]).is_err());
        assert!(fit_order(&[1.0, 0.5], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn rejects_bad_levels() {
        let p = SweParams::f_plane(1.0, 1.0).unwrap();
        let tau = std::f64::consts::TAU;
        let spec = PlaneWaveSpec { k: [tau, tau], amplitude: 1.0, sign: 1.0 };
        assert!(run_convergence(&[8], IcMode::Projected, &p, &spec, 0.05).is_err());
        assert!(run_convergence(&[8, 8], IcMode::Projected, &p, &spec, 0.05).is_err());
    }
}

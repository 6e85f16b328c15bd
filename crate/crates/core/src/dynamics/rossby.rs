use crate::error::{Error, Result};
use crate::fem::{assemble_ddx_p2, Operators, QuadratureRule};
use crate::linalg::{norm, solve_spd, SolveOptions, SparseMatrix};
use crate::scalar::{Scalar, Vec2};

use super::params::RossbyParams;

/// Implicit midpoint rule for the β-plane quasi-geostrophic equation
/// `A ψ̇ = β D ψ`, `A = L + M / L_R²`, `D_ab = ∫ N_a ∂_east N_b`, where `east`
/// is `f̂` rotated a quarter turn clockwise.
#[derive(Clone, Debug)]
pub struct RossbyIntegrator<'a, T> {
    ops: &'a Operators<T>,
    a: SparseMatrix<T>,
    d: SparseMatrix<T>,
    beta: T,
    dt: T,
    tol: T,
}

impl<'a, T: Scalar> RossbyIntegrator<'a, T> {
    pub fn new(ops: &'a Operators<T>, params: &RossbyParams<T>, fhat: Vec2<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::invalid("time step must be positive"));
        }
        let len = (fhat[0] * fhat[0] + fhat[1] * fhat[1]).sqrt();
        if (len - T::one()).abs() > T::lit(1e-9) {
            return Err(Error::invalid("f-hat must be a unit vector"));
        }
        let east = [fhat[1], -fhat[0]];
        let a = ops.stiffness.linear_combination(T::one(), &ops.mass, params.inv_rossby_radius2());
        let d = assemble_ddx_p2(&ops.p2, east, &QuadratureRule::degree4())?;
        Ok(Self { ops, a, d, beta: params.beta, dt, tol: T::lit(1e-13).max(T::epsilon() * T::lit(100.0)) })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// `ψᵀ A ψ`, conserved exactly by the scheme.
    pub fn invariant(&self, psi: &[T]) -> T {
        crate::linalg::dot(psi, &self.a.mul_vec(psi))
    }

    /// Solves `(A − hβD) ψ̄ = A ψ⁰` and returns `2ψ̄ − ψ⁰`.
    pub fn step(&self, psi: &[T]) -> Result<Vec<T>> {
        if psi.len() != self.ops.n_p2() {
            return Err(Error::DimensionMismatch { expected: self.ops.n_p2(), found: psi.len() });
        }
        let hb = self.dt * T::lit(0.5) * self.beta;
        // Increment form: (A − hβD) δ = hβ D ψ⁰, iterated as A δᵐ⁺¹ = hβ D (ψ⁰ + δᵐ).
        let rhs: Vec<T> = self.d.mul_vec(psi).into_iter().map(|v| hb * v).collect();
        let rhs_norm = norm(&rhs);
        if rhs_norm == T::zero() {
            return Ok(psi.to_vec());
        }
        let opts = SolveOptions { tol: self.tol, nullspace: false, max_iter: None, check_symmetry: false };
        let mut delta = vec![T::zero(); psi.len()];
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        for _ in 0..200 {
            let bar: Vec<T> = psi.iter().zip(&delta).map(|(&p, &d)| p + d).collect();
            let b: Vec<T> = self.d.mul_vec(&bar).into_iter().map(|v| hb * v).collect();
            let (x, stats) = solve_spd(&self.a, &b, Some(&delta), &opts)?;
            iterations += stats.iterations;
            delta = x;
            let ad = self.a.mul_vec(&delta);
            let dd = self.d.mul_vec(&delta);
            let r: Vec<T> = (0..rhs.len()).map(|i| ad[i] - hb * dd[i] - rhs[i]).collect();
            let rel = norm(&r) / rhs_norm;
            residual = rel.to_f64_lossy();
            if rel <= self.tol * T::lit(10.0) {
                let two = T::lit(2.0);
                return Ok(psi.iter().zip(&delta).map(|(&p, &d)| p + two * d).collect());
            }
        }
        Err(Error::NotConverged { iterations, residual })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RossbyTrajectory<T> {
    pub times: Vec<T>,
    pub psi: Vec<Vec<T>>,
}

/// Integrates from `psi0` to `t_end` with `⌈t_end/dt⌉` equal steps (so the
/// step actually used may be slightly smaller than `dt`), recording every state.
pub fn solve_rossby<T: Scalar>(
    ops: &Operators<T>,
    psi0: &[T],
    dt: T,
    t_end: T,
    params: &RossbyParams<T>,
    fhat: Vec2<T>,
) -> Result<RossbyTrajectory<T>> {
    if !(t_end > T::zero()) || !(dt > T::zero()) {
        return Err(Error::invalid("dt and t_end must be positive"));
    }
    let n = (t_end / dt).ceil().to_f64_lossy() as usize;
    let step = t_end / T::from_usize_lossy(n);
    let integ = RossbyIntegrator::new(ops, params, fhat, step)?;
    let mut times = vec![T::zero()];
    let mut psi = vec![psi0.to_vec()];
    for i in 0..n {
        let next = integ.step(psi.last().expect("nonempty"))?;
        psi.push(next);
        times.push(step * T::from_usize_lossy(i + 1));
    }
    Ok(RossbyTrajectory { times, psi })
}

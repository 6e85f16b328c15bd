use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fem::{p2_eval, Operators, QuadratureRule};
use crate::format::fmt_g;
use crate::helmholtz::ComponentEnergies;
use crate::scalar::{Scalar, Vec2};

use super::stepper::State;

/// `½ uᵀ M_v u + ½ c² ηᵀ M η`.
pub fn energy<T: Scalar>(ops: &Operators<T>, c2: T, state: &State<T>) -> T {
    let half = T::lit(0.5);
    half * ops.inner_v(&state.u, &state.u) + half * c2 * ops.inner_p2(&state.eta, &state.eta)
}

/// L2 distance between a P2 field and a function, by degree-5 quadrature.
pub fn l2_error_p2<T: Scalar>(ops: &Operators<T>, eta: &[T], exact: impl Fn(Vec2<T>) -> T) -> Result<T> {
    if eta.len() != ops.n_p2() {
        return Err(Error::DimensionMismatch { expected: ops.n_p2(), found: eta.len() });
    }
    let rule = QuadratureRule::<T>::degree5();
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for (f, g) in ops.geometry.iter().enumerate() {
        let dofs = ops.p2.element_dofs(f);
        for (l, &w) in rule.points.iter().zip(&rule.weights) {
            let phi = p2_eval(*l, &g.bary_grads).values;
            let uh: T = (0..6).map(|a| phi[a] * eta[dofs[a]]).sum();
            let d = uh - exact(g.point(*l));
            sum += two * g.area * w * d * d;
        }
    }
    Ok(sum.sqrt())
}

/// Angular frequency of a sampled sinusoid plus constant, from first
/// differences `δ_n`: `cos ωτ = Σ δ_n (δ_{n+1} + δ_{n−1}) / (2 Σ δ_n²)`.
pub fn frequency_from_differences<T: Scalar>(samples: &[T], tau: T) -> Result<T> {
    if samples.len() < 4 {
        return Err(Error::invalid("need at least four samples"));
    }
    let d: Vec<T> = samples.windows(2).map(|w| w[1] - w[0]).collect();
    let (mut num, mut den) = (T::zero(), T::zero());
    for n in 1..d.len() - 1 {
        num += d[n] * (d[n + 1] + d[n - 1]);
        den += d[n] * d[n];
    }
    if den == T::zero() {
        return Err(Error::invalid("signal is constant"));
    }
    let c = (num / (T::lit(2.0) * den)).max(-T::one()).min(T::one());
    Ok(c.acos() / tau)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow<T> {
    pub t: T,
    pub energy: T,
    pub components: ComponentEnergies<T>,
    pub eta_l2err: Option<T>,
}

/// Time series of energy diagnostics.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory<T> {
    pub rows: Vec<TrajectoryRow<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub const HEADER: &'static str = "t,energy,mean_e,pot_e,stream_e,spurious_e,eta_l2err";

    /// Largest `|E(t) − E(0)| / E(0)`.
    pub fn max_relative_drift(&self) -> T {
        let Some(first) = self.rows.first() else { return T::zero() };
        let e0 = first.energy;
        self.rows.iter().map(|r| ((r.energy - e0) / e0).abs()).fold(T::zero(), T::max)
    }

    /// CSV with `%.12g` values; a missing error column is written as `nan`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::HEADER);
        out.push('\n');
        for r in &self.rows {
            let c = &r.components;
            let vals = [r.t, r.energy, c.mean, c.potential, c.stream, c.spurious];
            let mut line: Vec<String> = vals.iter().map(|v| fmt_g(v.to_f64_lossy(), 12)).collect();
            line.push(r.eta_l2err.map_or("nan".into(), |e| fmt_g(e.to_f64_lossy(), 12)));
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_of_offset_sinusoid() {
        let (w, tau) = (0.37, 0.05);
        let s: Vec<f64> = (0..400).map(|n| 3.0 + 0.2 * (w * n as f64 * tau + 0.4).cos()).collect();
        let est = frequency_from_differences(&s, tau).unwrap();
        assert!((est - w).abs() < 1e-10);
        assert!(frequency_from_differences(&[1.0; 10], 0.1).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = Trajectory {
            rows: vec![TrajectoryRow {
                t: 0.5,
                energy: 2.0,
                components: ComponentEnergies { mean: 0.25, potential: 0.5, stream: 0.75, spurious: 0.0 },
                eta_l2err: None,
            }],
        };
        assert_eq!(t.to_csv(), "t,energy,mean_e,pot_e,stream_e,spurious_e,eta_l2err\n0.5,2,0.25,0.5,0.75,0,nan\n");
        assert_eq!(t.max_relative_drift(), 0.0);
    }
}

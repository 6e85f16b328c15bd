use crate::error::{Error, Result};
use crate::scalar::{dot2, norm2, Scalar, Vec2};

use super::params::SweParams;

/// Wave vector, amplitude and propagation sign `σ = ±1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveSpec<T> {
    pub k: Vec2<T>,
    pub amplitude: T,
    pub sign: T,
}

/// Exact inertia-gravity plane wave on an f-plane:
/// `η = A cos θ`, `θ = k·x − σωt`, `ω² = f0² + c²|k|²`,
/// `u = (A/|k|) (σω cos θ k̂ + f0 sin θ k̂⊥)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave<T> {
    spec: PlaneWaveSpec<T>,
    f0: T,
    omega: T,
}

impl<T: Scalar> PlaneWave<T> {
    /// Rejects `k = 0`, `β ≠ 0`, `|σ| ≠ 1`, and wave vectors that are not
    /// periodic on the torus spanned by `generators`.
    pub fn new(spec: PlaneWaveSpec<T>, params: &SweParams<T>, generators: [Vec2<T>; 2]) -> Result<Self> {
        let kk = dot2(spec.k, spec.k);
        if !(kk > T::zero()) || !kk.is_finite() {
            return Err(Error::invalid("plane wave needs a nonzero finite wave vector"));
        }
        if params.beta != T::zero() {
            return Err(Error::invalid("plane waves are exact only on an f-plane"));
        }
        if spec.sign != T::one() && spec.sign != -T::one() {
            return Err(Error::invalid("sign must be +1 or -1"));
        }
        let two_pi = T::lit(std::f64::consts::TAU);
        for g in generators {
            let cycles = dot2(spec.k, g) / two_pi;
            if (cycles - cycles.round()).abs() > T::lit(1e-9) * cycles.abs().max(T::one()) {
                return Err(Error::invalid("wave vector is not periodic on the mesh"));
            }
        }
        let omega = (params.f0 * params.f0 + params.c2 * kk).sqrt();
        Ok(Self { spec, f0: params.f0, omega })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn spec(&self) -> &PlaneWaveSpec<T> {
        &self.spec
    }

    /// Time to cross a distance `length` at the phase speed.
    pub fn transit_time(&self, length: T) -> T {
        length * norm2(self.spec.k) / self.omega
    }

    fn phase(&self, x: Vec2<T>, t: T) -> T {
        self.spec.k[0] * x[0] + self.spec.k[1] * x[1] - self.spec.sign * self.omega * t
    }

    pub fn eta(&self, x: Vec2<T>, t: T) -> T {
        self.spec.amplitude * self.phase(x, t).cos()
    }

    pub fn velocity(&self, x: Vec2<T>, t: T) -> Vec2<T> {
        let k = self.spec.k;
        let kn = norm2(k);
        let (s, c) = self.phase(x, t).sin_cos();
        let a = self.spec.amplitude / kn;
        let along = a * self.spec.sign * self.omega * c;
        let across = a * self.f0 * s;
        let khat = [k[0] / kn, k[1] / kn];
        [along * khat[0] - across * khat[1], along * khat[1] + across * khat[0]]
    }
}

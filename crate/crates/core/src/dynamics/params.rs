use crate::error::{Error, Result};
use crate::fem::Polynomial2;
use crate::scalar::Scalar;

/// Rotating shallow-water parameters: `f = f0 + β y` and `c² = gH`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweParams<T> {
    pub f0: T,
    pub beta: T,
    pub c2: T,
}

impl<T: Scalar> SweParams<T> {
    pub fn new(f0: T, beta: T, c2: T) -> Result<Self> {
        if !(f0.is_finite() && beta.is_finite() && c2.is_finite()) {
            return Err(Error::invalid("parameters must be finite"));
        }
        if !(c2 > T::zero()) {
            return Err(Error::invalid("c2 must be positive"));
        }
        if beta < T::zero() {
            return Err(Error::invalid("beta must be non-negative"));
        }
        Ok(Self { f0, beta, c2 })
    }

    /// f-plane parameters.
    pub fn f_plane(f0: T, c2: T) -> Result<Self> {
        Self::new(f0, T::zero(), c2)
    }

    pub fn coriolis(&self) -> Polynomial2<T> {
        if self.beta == T::zero() {
            Polynomial2::constant(self.f0)
        } else {
            Polynomial2::beta_plane(self.f0, self.beta)
        }
    }
}

/// Quasi-geostrophic β-plane parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RossbyParams<T> {
    pub f0: T,
    pub beta: T,
    pub c2: T,
}

impl<T: Scalar> RossbyParams<T> {
    pub fn new(f0: T, beta: T, c2: T) -> Result<Self> {
        SweParams::new(f0, beta, c2)?;
        if f0 == T::zero() {
            return Err(Error::invalid("Rossby radius is infinite for f0 = 0"));
        }
        Ok(Self { f0, beta, c2 })
    }

    /// `f0 = 1e-4 s⁻¹`, `β = 1e-12 m⁻¹s⁻¹`, `c² = 1e5 m²s⁻²` (used with `Δx = 1e5 m`).
    pub fn reference() -> Self {
        Self { f0: T::lit(1e-4), beta: T::lit(1e-12), c2: T::lit(1e5) }
    }

    /// `1 / L_R² = f0² / c²`.
    pub fn inv_rossby_radius2(&self) -> T {
        self.f0 * self.f0 / self.c2
    }

    /// Continuous QG frequency `−β k_east / (|k|² + 1/L_R²)`.
    pub fn exact_frequency(&self, k: [T; 2], fhat: [T; 2]) -> T {
        let k_east = k[0] * fhat[1] - k[1] * fhat[0];
        -self.beta * k_east / (k[0] * k[0] + k[1] * k[1] + self.inv_rossby_radius2())
    }
}

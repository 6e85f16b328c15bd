use crate::scalar::{Scalar, Vec2};

/// Bivariate polynomial `Σ c · x^i y^j`, used for coefficient fields such as
/// the Coriolis parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial2<T> {
    terms: Vec<(u32, u32, T)>,
}

impl<T: Scalar> Polynomial2<T> {
    pub fn new(terms: Vec<(u32, u32, T)>) -> Self {
        Self { terms }
    }

    pub fn constant(c: T) -> Self {
        Self { terms: vec![(0, 0, c)] }
    }

    /// `f0 + β y`.
    pub fn beta_plane(f0: T, beta: T) -> Self {
        Self { terms: vec![(0, 0, f0), (0, 1, beta)] }
    }

    /// Total degree of the nonzero terms (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().filter(|t| t.2 != T::zero()).map(|t| t.0 + t.1).max().unwrap_or(0)
    }

    pub fn eval(&self, x: Vec2<T>) -> T {
        self.terms.iter().map(|&(i, j, c)| c * x[0].powi(i as i32) * x[1].powi(j as i32)).sum()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<T> {
        (self.degree() == 0).then(|| self.terms.iter().filter(|t| t.0 + t.1 == 0).map(|t| t.2).sum())
    }

    pub fn max_abs_coefficient(&self) -> T {
        self.terms.iter().fold(T::zero(), |m, t| m.max(t.2.abs()))
    }
}

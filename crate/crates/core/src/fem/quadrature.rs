use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric rule on the reference triangle: barycentric points, weights
/// summing to the reference area `1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T> {
    pub points: Vec<[T; 3]>,
    pub weights: Vec<T>,
    pub degree: u32,
}

fn orbit3<T: Scalar>(a: T) -> [[T; 3]; 3] {
    let b = T::one() - a - a;
    [[a, a, b], [a, b, a], [b, a, a]]
}

impl<T: Scalar> QuadratureRule<T> {
    fn from_orbits(center: Option<T>, orbits: &[(T, T)], degree: u32) -> Self {
        let half = T::lit(0.5);
        let mut points = Vec::new();
        let mut weights = Vec::new();
        if let Some(w) = center {
            let third = T::one() / T::lit(3.0);
            points.push([third; 3]);
            weights.push(w * half);
        }
        for &(a, w) in orbits {
            for p in orbit3(a) {
                points.push(p);
                weights.push(w * half);
            }
        }
        Self { points, weights, degree }
    }

    pub fn centroid() -> Self {
        Self::from_orbits(Some(T::one()), &[], 1)
    }

    /// Three interior points, exact to degree 2.
    pub fn degree2() -> Self {
        Self::from_orbits(None, &[(T::one() / T::lit(6.0), T::one() / T::lit(3.0))], 2)
    }

    /// Six points, exact to degree 4.
    pub fn degree4() -> Self {
        let s10 = T::lit(10.0).sqrt();
        let r = (T::lit(38.0) - T::lit(44.0) * (T::lit(0.4)).sqrt()).sqrt();
        let a1 = (T::lit(8.0) - s10 + r) / T::lit(18.0);
        let a2 = (T::lit(8.0) - s10 - r) / T::lit(18.0);
        let q = (T::lit(213125.0) - T::lit(53320.0) * s10).sqrt();
        let w1 = (T::lit(620.0) + q) / T::lit(3720.0);
        let w2 = (T::lit(620.0) - q) / T::lit(3720.0);
        Self::from_orbits(None, &[(a1, w1), (a2, w2)], 4)
    }

    /// Seven points, exact to degree 5.
    pub fn degree5() -> Self {
        let s15 = T::lit(15.0).sqrt();
        let a1 = (T::lit(6.0) - s15) / T::lit(21.0);
        let a2 = (T::lit(6.0) + s15) / T::lit(21.0);
        let w1 = (T::lit(155.0) - s15) / T::lit(1200.0);
        let w2 = (T::lit(155.0) + s15) / T::lit(1200.0);
        Self::from_orbits(Some(T::lit(9.0) / T::lit(40.0)), &[(a1, w1), (a2, w2)], 5)
    }

    /// The smallest built-in rule exact to at least `degree`.
    pub fn for_degree(degree: u32) -> Result<Self> {
        match degree {
            0 | 1 => Ok(Self::centroid()),
            2 => Ok(Self::degree2()),
            3 | 4 => Ok(Self::degree4()),
            5 => Ok(Self::degree5()),
            d => Err(Error::invalid(format!("no built-in quadrature rule of degree {d}"))),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫ λ₁^a λ₂^b over the reference triangle = a! b! / (a + b + 2)!.
    fn exact_monomial(a: u32, b: u32) -> f64 {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        fact(a) * fact(b) / fact(a + b + 2)
    }

    fn check(rule: &QuadratureRule<f64>) {
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 0.5).abs() < 1e-15);
        for a in 0..=rule.degree {
            for b in 0..=rule.degree - a {
                let q: f64 = rule
                    .points
                    .iter()
                    .zip(&rule.weights)
                    .map(|(p, w)| w * p[1].powi(a as i32) * p[2].powi(b as i32))
                    .sum();
                assert!((q - exact_monomial(a, b)).abs() < 1e-14, "degree {} rule fails on x^{a} y^{b}", rule.degree);
            }
        }
    }

    #[test]
    fn rules_are_exact_to_their_degree() {
        for r in [
            QuadratureRule::centroid(),
            QuadratureRule::degree2(),
            QuadratureRule::degree4(),
            QuadratureRule::degree5(),
        ] {
            check(&r);
        }
    }

    #[test]
    fn degree2_rule_misses_quartics() {
        let r = QuadratureRule::<f64>::degree2();
        let q: f64 = r.points.iter().zip(&r.weights).map(|(p, w)| w * p[1].powi(4)).sum();
        assert!((q - exact_monomial(4, 0)).abs() > 1e-4);
    }

    #[test]
    fn known_degree4_abscissae() {
        let r = QuadratureRule::<f64>::degree4();
        assert!((r.points[0][0] - 0.445948490915965).abs() < 1e-14);
        assert!((r.points[3][0] - 0.091576213509771).abs() < 1e-14);
        assert!((2.0 * r.weights[0] - 0.223381589678011).abs() < 1e-14);
    }

    #[test]
    fn single_precision_rule() {
        let r = QuadratureRule::<f32>::degree5();
        let total: f32 = r.weights.iter().sum();
        assert!((total - 0.5).abs() < 1e-6);
        assert!(QuadratureRule::<f64>::for_degree(9).is_err());
    }
}

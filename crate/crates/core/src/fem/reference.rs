use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vec2};

/// Values and gradients of the six quadratic Lagrange basis functions.
/// Order: vertices 0, 1, 2, then the midpoints of edges opposite corners
/// 0, 1, 2 (that is, edges 1–2, 2–0, 0–1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P2Eval<T> {
    pub values: [T; 6],
    pub grads: [Vec2<T>; 6],
}

/// Barycentric gradients on the reference triangle `(0,0), (1,0), (0,1)`.
pub fn reference_bary_grads<T: Scalar>() -> [Vec2<T>; 3] {
    let (o, z) = (T::one(), T::zero());
    [[-o, -o], [o, z], [z, o]]
}

/// P2 basis at barycentric point `l`, with gradients taken from the supplied
/// barycentric gradients (so the same routine serves every affine element).
pub fn p2_eval<T: Scalar>(l: [T; 3], g: &[Vec2<T>; 3]) -> P2Eval<T> {
    let (one, two, four) = (T::one(), T::lit(2.0), T::lit(4.0));
    let values = [
        l[0] * (two * l[0] - one),
        l[1] * (two * l[1] - one),
        l[2] * (two * l[2] - one),
        four * l[1] * l[2],
        four * l[2] * l[0],
        four * l[0] * l[1],
    ];
    let vert = |k: usize| {
        let s = four * l[k] - one;
        [s * g[k][0], s * g[k][1]]
    };
    let mid = |a: usize, b: usize| [four * (l[a] * g[b][0] + l[b] * g[a][0]), four * (l[a] * g[b][1] + l[b] * g[a][1])];
    let grads = [vert(0), vert(1), vert(2), mid(1, 2), mid(2, 0), mid(0, 1)];
    P2Eval { values, grads }
}

/// Rejects barycentric triples that are negative or do not sum to one.
pub fn check_barycentric<T: Scalar>(l: [T; 3]) -> Result<()> {
    let tol = T::epsilon() * T::lit(16.0);
    let sum = l[0] + l[1] + l[2];
    if l.iter().any(|&x| !x.is_finite() || x < -tol) || (sum - T::one()).abs() > tol {
        return Err(Error::InvalidBarycentric(l[0].to_f64_lossy(), l[1].to_f64_lossy(), l[2].to_f64_lossy()));
    }
    Ok(())
}

/// P2 basis on the reference triangle; gradients are with respect to the
/// reference coordinates `(ξ, η) = (λ₁, λ₂)`.
pub fn ref_p2_basis<T: Scalar>(l: [T; 3]) -> Result<P2Eval<T>> {
    check_barycentric(l)?;
    Ok(p2_eval(l, &reference_bary_grads()))
}

/// Barycentric coordinates of the six P2 nodes.
pub fn p2_nodes<T: Scalar>() -> [[T; 3]; 6] {
    let (o, z, h) = (T::one(), T::zero(), T::lit(0.5));
    [[o, z, z], [z, o, z], [z, z, o], [z, h, h], [h, z, h], [h, h, z]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nodal_property() {
        for (i, node) in p2_nodes::<f64>().iter().enumerate() {
            let e = ref_p2_basis(*node).unwrap();
            for (j, v) in e.values.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn centroid_partition_of_unity() {
        let t = 1.0 / 3.0;
        let e = ref_p2_basis([t, t, 1.0 - 2.0 * t]).unwrap();
        assert!((e.values.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_barycentric() {
        assert!(ref_p2_basis([0.5, 0.6, -0.1f64]).is_err());
        assert!(ref_p2_basis([0.5, 0.6, 0.1f64]).is_err());
        assert!(ref_p2_basis([f64::NAN, 0.5, 0.5]).is_err());
    }

    /// Symbolic derivatives of the six basis polynomials written in (ξ, η).
    fn symbolic_grads(x: f64, y: f64) -> [[f64; 2]; 6] {
        let l0 = 1.0 - x - y;
        [
            [-(4.0 * l0 - 1.0), -(4.0 * l0 - 1.0)],
            [4.0 * x - 1.0, 0.0],
            [0.0, 4.0 * y - 1.0],
            [4.0 * y, 4.0 * x],
            [-4.0 * y, 4.0 * (l0 - y)],
            [4.0 * (l0 - x), -4.0 * x],
        ]
    }

    #[test]
    fn gradients_match_symbolic_derivatives() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let x: f64 = rng.gen_range(0.0..1.0);
            let y: f64 = rng.gen_range(0.0..1.0 - x);
            let e = ref_p2_basis([1.0 - x - y, x, y]).unwrap();
            let s = symbolic_grads(x, y);
            for a in 0..6 {
                assert!((e.grads[a][0] - s[a][0]).abs() < 1e-13);
                assert!((e.grads[a][1] - s[a][1]).abs() < 1e-13);
            }
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity_and_zero_gradient_sum(a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (x, y) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
            let e = ref_p2_basis([1.0 - x - y, x, y]).unwrap();
            prop_assert!((e.values.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
            let gx: f64 = e.grads.iter().map(|g| g[0]).sum();
            let gy: f64 = e.grads.iter().map(|g| g[1]).sum();
            prop_assert!(gx.abs() <= 1e-14 && gy.abs() <= 1e-14);
        }
    }
}

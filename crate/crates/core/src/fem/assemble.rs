//! Global operators. Elements are visited in mesh order and local entries are
//! pushed in a fixed order, so assembled matrices are bitwise reproducible.

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, TripletBuilder};
use crate::scalar::{Scalar, Vec2};

use super::element::{self, Block6};
use super::geometry::ElementGeometry;
use super::poly::Polynomial2;
use super::quadrature::QuadratureRule;
use super::space::{P1dgVecSpace, P2Space};
use crate::mesh::Mesh;

/// Geometry of every face, failing on inverted or degenerate triangles.
pub fn element_geometries<T: Scalar>(mesh: &Mesh<T>) -> Result<Vec<ElementGeometry<T>>> {
    (0..mesh.n_faces())
        .map(|f| {
            ElementGeometry::new(mesh.face_corners(f))
                .map_err(|_| Error::invalid(format!("face {f} has non-positive area")))
        })
        .collect()
}

fn scatter_p2<T: Scalar>(
    space: &P2Space<T>,
    block: impl Fn(&ElementGeometry<T>) -> Block6<T>,
) -> Result<SparseMatrix<T>> {
    let mesh = space.mesh();
    let n = space.n_dofs();
    let mut b = TripletBuilder::with_capacity(n, n, 36 * mesh.n_faces());
    for (f, g) in element_geometries(mesh)?.iter().enumerate() {
        let dofs = space.element_dofs(f);
        let m = block(g);
        for a in 0..6 {
            for c in 0..6 {
                b.push(dofs[a], dofs[c], m[a][c]);
            }
        }
    }
    Ok(b.build())
}

fn scatter_p1dg<T: Scalar>(
    space: &P1dgVecSpace<T>,
    block: impl Fn(&ElementGeometry<T>) -> Block6<T>,
) -> Result<SparseMatrix<T>> {
    let mesh = space.mesh();
    let n = space.n_dofs();
    let mut b = TripletBuilder::with_capacity(n, n, 36 * mesh.n_faces());
    for (f, g) in element_geometries(mesh)?.iter().enumerate() {
        let m = block(g);
        for r in 0..6 {
            for c in 0..6 {
                if m[r][c] != T::zero() || r % 2 == c % 2 {
                    b.push(6 * f + r, 6 * f + c, m[r][c]);
                }
            }
        }
    }
    Ok(b.build())
}

/// `M_ab = ⟨N_a, N_b⟩`
pub fn assemble_mass_p2<T: Scalar>(space: &P2Space<T>, rule: &QuadratureRule<T>) -> Result<SparseMatrix<T>> {
    scatter_p2(space, |g| element::mass_p2(g, rule))
}

/// `L_ab = ⟨∇N_a, ∇N_b⟩`
pub fn assemble_stiffness_p2<T: Scalar>(space: &P2Space<T>, rule: &QuadratureRule<T>) -> Result<SparseMatrix<T>> {
    scatter_p2(space, |g| element::stiffness_p2(g, rule))
}

/// `D_ab = ⟨N_a, d · ∇N_b⟩`
pub fn assemble_ddx_p2<T: Scalar>(
    space: &P2Space<T>,
    direction: Vec2<T>,
    rule: &QuadratureRule<T>,
) -> Result<SparseMatrix<T>> {
    scatter_p2(space, |g| element::ddx_p2(g, direction, rule))
}

/// Block-diagonal vector mass matrix `M_v`.
pub fn assemble_mass_p1dg<T: Scalar>(space: &P1dgVecSpace<T>, rule: &QuadratureRule<T>) -> Result<SparseMatrix<T>> {
    scatter_p1dg(space, |g| element::mass_p1dg(g, rule))
}

/// Coriolis operator `(C u)_w = ⟨f w, u^⊥⟩` for `f` of degree at most one,
/// integrated with the degree-5 rule.
pub fn assemble_coriolis<T: Scalar>(space: &P1dgVecSpace<T>, f: &Polynomial2<T>) -> Result<SparseMatrix<T>> {
    if f.degree() > 1 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    let rule = QuadratureRule::degree5();
    scatter_p1dg(space, |g| element::coriolis(g, f, &rule))
}

/// Exact gradient embedding `Gr`: P2 coefficients to the P1DG coefficients
/// of their pointwise gradient.
pub fn assemble_gradient_embedding<T: Scalar>(p2: &P2Space<T>, v: &P1dgVecSpace<T>) -> Result<SparseMatrix<T>> {
    let mesh = p2.mesh();
    let mut b = TripletBuilder::with_capacity(v.n_dofs(), p2.n_dofs(), 36 * mesh.n_faces());
    for (f, g) in element_geometries(mesh)?.iter().enumerate() {
        let dofs = p2.element_dofs(f);
        let m = element::gradient_embedding(g);
        for r in 0..6 {
            for a in 0..6 {
                b.push(6 * f + r, dofs[a], m[r][a]);
            }
        }
    }
    Ok(b.build())
}

/// Pointwise rotation `u ↦ u^⊥ = (−u₂, u₁)` as a matrix.
pub fn assemble_perp<T: Scalar>(v: &P1dgVecSpace<T>) -> SparseMatrix<T> {
    let n = v.n_dofs();
    let mut b = TripletBuilder::with_capacity(n, n, n);
    for node in 0..n / 2 {
        b.push(2 * node, 2 * node + 1, -T::one());
        b.push(2 * node + 1, 2 * node, T::one());
    }
    b.build()
}

/// `G = M_v · Gr`, so that `(G η)_w = ⟨w, ∇η⟩`; `Gᵀ` is the divergence
/// pairing of the continuity equation.
pub fn assemble_grad_coupling<T: Scalar>(
    p2: &P2Space<T>,
    v: &P1dgVecSpace<T>,
    rule: &QuadratureRule<T>,
) -> Result<SparseMatrix<T>> {
    let mv = assemble_mass_p1dg(v, rule)?;
    Ok(mv.mul_mat(&assemble_gradient_embedding(p2, v)?))
}

/// Pointwise gradient of a P2 field as P1DG coefficients (no projection).
pub fn gradient_p2_to_p1dg<T: Scalar>(p2: &P2Space<T>, h: &[T]) -> Result<Vec<T>> {
    if h.len() != p2.n_dofs() {
        return Err(Error::DimensionMismatch { expected: p2.n_dofs(), found: h.len() });
    }
    let mesh = p2.mesh();
    let mut out = vec![T::zero(); 6 * mesh.n_faces()];
    for (f, g) in element_geometries(mesh)?.iter().enumerate() {
        let dofs = p2.element_dofs(f);
        let m = element::gradient_embedding(g);
        for r in 0..6 {
            out[6 * f + r] = (0..6).map(|a| m[r][a] * h[dofs[a]]).sum();
        }
    }
    Ok(out)
}

/// Pointwise `u^⊥ = (−u₂, u₁)` on P1DG coefficients.
pub fn perp<T: Scalar>(u: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); u.len()];
    for (o, c) in out.chunks_exact_mut(2).zip(u.chunks_exact(2)) {
        o[0] = -c[1];
        o[1] = c[0];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, numerical_rank, DenseMatrix};
    use crate::mesh::{build_equilateral_torus, build_right_triangle_torus};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn spaces(mesh: Mesh<f64>) -> (P2Space<f64>, P1dgVecSpace<f64>) {
        let m = Arc::new(mesh);
        (P2Space::new(m.clone()), P1dgVecSpace::new(m))
    }

    fn random(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn mass_integrates_constants_and_is_symmetric() {
        let (p2, v) = spaces(build_right_triangle_torus(4, 3, 2.0, 1.5).unwrap());
        let rule = QuadratureRule::degree4();
        let m = assemble_mass_p2(&p2, &rule).unwrap();
        let one = vec![1.0; p2.n_dofs()];
        assert!((dot(&one, &m.mul_vec(&one)) - 3.0).abs() < 1e-12);
        assert_eq!(m.asymmetry(), 0.0);
        let mv = assemble_mass_p1dg(&v, &rule).unwrap();
        let ux: Vec<f64> = (0..v.n_dofs()).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect();
        assert!((dot(&ux, &mv.mul_vec(&ux)) - 3.0).abs() < 1e-12);
        for (r, c, _) in mv.iter() {
            assert_eq!(r / 6, c / 6, "coupling between elements");
        }
    }

    #[test]
    fn stiffness_kernel_is_constants() {
        let (p2, _) = spaces(build_equilateral_torus(3, 3, 1.0).unwrap());
        let l = assemble_stiffness_p2(&p2, &QuadratureRule::degree4()).unwrap();
        let lone = l.mul_vec(&vec![1.0; p2.n_dofs()]);
        assert!(lone.iter().all(|x| x.abs() < 1e-12));
        let dense = DenseMatrix::from_rows(&l.to_dense());
        assert_eq!(numerical_rank(&dense, 1e-10), p2.n_dofs() - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let mut x = random(&mut rng, p2.n_dofs());
            let mean = x.iter().sum::<f64>() / x.len() as f64;
            x.iter_mut().for_each(|v| *v -= mean);
            assert!(dot(&x, &l.mul_vec(&x)) > 0.0);
        }
    }

    #[test]
    fn coupling_transpose_reproduces_stiffness() {
        let (p2, v) = spaces(build_right_triangle_torus(3, 4, 1.0, 1.0).unwrap());
        let rule = QuadratureRule::degree4();
        let g = assemble_grad_coupling(&p2, &v, &rule).unwrap();
        let l = assemble_stiffness_p2(&p2, &rule).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = random(&mut rng, p2.n_dofs());
        let grad = gradient_p2_to_p1dg(&p2, &phi).unwrap();
        let lhs = g.tr_mul_vec(&grad);
        let rhs = l.mul_vec(&phi);
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(g.mul_vec(&vec![1.0; p2.n_dofs()]).iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn ddx_is_antisymmetric_on_torus() {
        let (p2, _) = spaces(build_equilateral_torus(4, 3, 0.5).unwrap());
        let d = assemble_ddx_p2(&p2, [0.28, 0.96], &QuadratureRule::degree4()).unwrap();
        let sum = d.linear_combination(1.0, &d.transpose(), 1.0);
        assert!(sum.max_abs() <= 1e-12 * d.max_abs());
        assert!(d.mul_vec(&vec![1.0; p2.n_dofs()]).iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn coriolis_rejects_quadratic_f_and_factors_constant() {
        let (_, v) = spaces(build_equilateral_torus(2, 3, 1.0).unwrap());
        let quad = Polynomial2::new(vec![(2, 0, 1.0)]);
        assert!(matches!(assemble_coriolis(&v, &quad), Err(Error::UnsupportedDegree(2))));
        let c = assemble_coriolis(&v, &Polynomial2::constant(1.3)).unwrap();
        let mvp = assemble_mass_p1dg(&v, &QuadratureRule::degree4()).unwrap().mul_mat(&assemble_perp(&v)).scale(1.3);
        assert!(c.linear_combination(1.0, &mvp, -1.0).max_abs() < 1e-14);
    }

    #[test]
    fn perp_twice_is_minus_identity() {
        let u = vec![1.0, 0.0, 0.3, -2.0];
        assert_eq!(perp(&u), vec![0.0, 1.0, 2.0, 0.3]);
        let back: Vec<f64> = perp(&perp(&u));
        assert_eq!(back, u.iter().map(|x| -x).collect::<Vec<_>>());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn skew_gradient_orthogonality(seed in any::<u64>()) {
            let (p2, v) = spaces(build_equilateral_torus(3, 4, 0.7).unwrap());
            let mv = assemble_mass_p1dg(&v, &QuadratureRule::degree4()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random(&mut rng, p2.n_dofs());
            let phi = random(&mut rng, p2.n_dofs());
            let gpsi = gradient_p2_to_p1dg(&p2, &psi).unwrap();
            let gphi_perp = perp(&gradient_p2_to_p1dg(&p2, &phi).unwrap());
            let ip = dot(&gpsi, &mv.mul_vec(&gphi_perp));
            let scale = dot(&gpsi, &mv.mul_vec(&gpsi)).sqrt() * dot(&gphi_perp, &mv.mul_vec(&gphi_perp)).sqrt();
            prop_assert!(ip.abs() <= 1e-12 * scale);
        }

        #[test]
        fn perp_is_mass_orthogonal_and_coriolis_energy_neutral(seed in any::<u64>()) {
            let (_, v) = spaces(build_right_triangle_torus(3, 3, 1.0, 2.0).unwrap());
            let mv = assemble_mass_p1dg(&v, &QuadratureRule::degree4()).unwrap();
            let c = assemble_coriolis(&v, &Polynomial2::beta_plane(1.0, 0.5)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random(&mut rng, v.n_dofs());
            let nrm2 = dot(&u, &mv.mul_vec(&u));
            prop_assert!(dot(&u, &mv.mul_vec(&perp(&u))).abs() <= 1e-12 * nrm2);
            prop_assert!(dot(&u, &c.mul_vec(&u)).abs() <= 1e-12 * 2.0 * dot(&u, &u));
        }

        #[test]
        fn embedding_exactness(seed in any::<u64>()) {
            let (p2, v) = spaces(build_equilateral_torus(3, 3, 1.0).unwrap());
            let rule = QuadratureRule::degree4();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random(&mut rng, p2.n_dofs());
            let g = assemble_grad_coupling(&p2, &v, &rule).unwrap();
            let direct = g.mul_vec(&h);
            let via = assemble_mass_p1dg(&v, &rule).unwrap().mul_vec(&gradient_p2_to_p1dg(&p2, &h).unwrap());
            for (a, b) in direct.iter().zip(&via) {
                prop_assert!((a - b).abs() <= 1e-13);
            }
        }
    }
}

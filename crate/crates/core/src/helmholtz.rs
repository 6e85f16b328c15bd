//! Discrete Helmholtz decomposition of P1DG velocity fields,
//! `u = ū + ∇φ + ∇^⊥ψ + û`, and the H(P2) filter that drops `û`.

use crate::error::Result;
use crate::fem::Operators;
use crate::linalg::{numerical_rank, solve_spd, DenseMatrix, SolveOptions};
use crate::mesh::Mesh;
use crate::scalar::{Scalar, Vec2};

#[derive(Clone, Debug, PartialEq)]
pub struct HelmholtzComponents<T> {
    /// Mean velocity.
    pub ubar: Vec2<T>,
    /// Velocity potential (P2, zero integral).
    pub phi: Vec<T>,
    /// Streamfunction (P2, zero integral).
    pub psi: Vec<T>,
    /// Spurious remainder (P1DG).
    pub uhat: Vec<T>,
}

/// Squared `M_v` norms of the four parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentEnergies<T> {
    pub mean: T,
    pub potential: T,
    pub stream: T,
    pub spurious: T,
}

impl<T: Scalar> ComponentEnergies<T> {
    pub fn total(&self) -> T {
        self.mean + self.potential + self.stream + self.spurious
    }
}

fn constant_field<T: Scalar>(n_faces: usize, c: Vec2<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(6 * n_faces);
    for _ in 0..3 * n_faces {
        out.extend_from_slice(&c);
    }
    out
}

fn shift_to_zero_integral<T: Scalar>(ops: &Operators<T>, h: &mut [T]) {
    let mean = ops.integral_p2(h) / ops.domain_area();
    for v in h {
        *v -= mean;
    }
}

impl<T: Scalar> HelmholtzComponents<T> {
    pub fn zeros(ops: &Operators<T>) -> Self {
        Self {
            ubar: [T::zero(); 2],
            phi: vec![T::zero(); ops.n_p2()],
            psi: vec![T::zero(); ops.n_p2()],
            uhat: vec![T::zero(); ops.n_vel()],
        }
    }

    /// `‖ū‖²|Ω|`, `‖∇φ‖²`, `‖∇^⊥ψ‖²`, `‖û‖²` in the `M_v` norm.
    pub fn energies(&self, ops: &Operators<T>) -> ComponentEnergies<T> {
        let gphi = ops.grad.mul_vec(&self.phi);
        let gpsi = ops.perp.mul_vec(&ops.grad.mul_vec(&self.psi));
        ComponentEnergies {
            mean: (self.ubar[0] * self.ubar[0] + self.ubar[1] * self.ubar[1]) * ops.domain_area(),
            potential: ops.inner_v(&gphi, &gphi),
            stream: ops.inner_v(&gpsi, &gpsi),
            spurious: ops.inner_v(&self.uhat, &self.uhat),
        }
    }

    /// The four parts as P1DG fields, in the order mean, potential, stream,
    /// spurious.
    pub fn parts(&self, ops: &Operators<T>) -> [Vec<T>; 4] {
        [
            constant_field(ops.mesh.n_faces(), self.ubar),
            ops.grad.mul_vec(&self.phi),
            ops.perp.mul_vec(&ops.grad.mul_vec(&self.psi)),
            self.uhat.clone(),
        ]
    }
}

/// Solves `⟨∇α, ∇φ⟩ = ⟨∇α, u⟩` and `⟨∇α, ∇ψ⟩ = ⟨∇^⊥α, u⟩` and returns the
/// orthogonal decomposition of `u`.
pub fn decompose<T: Scalar>(ops: &Operators<T>, u: &[T], tol: T) -> Result<HelmholtzComponents<T>> {
    if u.len() != ops.n_vel() {
        return Err(crate::Error::DimensionMismatch { expected: ops.n_vel(), found: u.len() });
    }
    let ubar = ops.mean_velocity(u);
    let mu = ops.mass_v.mul_vec(u);
    let b_phi = ops.grad.tr_mul_vec(&mu);
    let b_psi = ops.grad.tr_mul_vec(&ops.perp.tr_mul_vec(&mu));
    let opts = SolveOptions::with_tol(tol).nullspace(true);
    let (mut phi, _) = solve_spd(&ops.stiffness, &b_phi, None, &opts)?;
    let (mut psi, _) = solve_spd(&ops.stiffness, &b_psi, None, &opts)?;
    shift_to_zero_integral(ops, &mut phi);
    shift_to_zero_integral(ops, &mut psi);
    let gphi = ops.grad.mul_vec(&phi);
    let gpsi = ops.perp.mul_vec(&ops.grad.mul_vec(&psi));
    let uhat = u.iter().enumerate().map(|(i, &ui)| ui - ubar[i % 2] - gphi[i] - gpsi[i]).collect();
    Ok(HelmholtzComponents { ubar, phi, psi, uhat })
}

/// `ū + ∇φ + ∇^⊥ψ + û`
pub fn recompose<T: Scalar>(ops: &Operators<T>, c: &HelmholtzComponents<T>) -> Vec<T> {
    let mut u = balanced_part(ops, c);
    for (ui, &h) in u.iter_mut().zip(&c.uhat) {
        *ui += h;
    }
    u
}

fn balanced_part<T: Scalar>(ops: &Operators<T>, c: &HelmholtzComponents<T>) -> Vec<T> {
    let gphi = ops.grad.mul_vec(&c.phi);
    let gpsi = ops.perp.mul_vec(&ops.grad.mul_vec(&c.psi));
    (0..ops.n_vel()).map(|i| c.ubar[i % 2] + gphi[i] + gpsi[i]).collect()
}

/// Projection onto H(P2): `ū + ∇φ + ∇^⊥ψ`.
pub fn project_hp2<T: Scalar>(ops: &Operators<T>, u: &[T], tol: T) -> Result<Vec<T>> {
    Ok(balanced_part(ops, &decompose(ops, u, tol)?))
}

/// Dimension of the spurious subspace, from the numerical rank of the map
/// `u ↦ û` applied to every P1DG basis vector. Intended for small meshes.
pub fn spurious_dimension<T: Scalar>(ops: &Operators<T>) -> Result<usize> {
    let n = ops.n_vel();
    let mut proj = DenseMatrix::zeros(n, n);
    let tol = T::default_tol();
    let mut e = vec![T::zero(); n];
    for j in 0..n {
        e[j] = T::one();
        let c = decompose(ops, &e, tol)?;
        for (i, v) in c.uhat.iter().enumerate() {
            proj[(i, j)] = *v;
        }
        e[j] = T::zero();
    }
    Ok(numerical_rank(&proj, T::lit(1e-6).max(T::epsilon().sqrt())))
}

/// `6n_f − 2(n_v + n_e − 1) − 2`: P1DG dimension minus the gradients and
/// skew-gradients of mean-free P2 fields minus the constants.
pub fn spurious_dimension_formula<T: Scalar>(mesh: &Mesh<T>) -> usize {
    6 * mesh.n_faces() + 2 - 2 * (mesh.n_vertices() + mesh.n_edges()) - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_equilateral_torus, build_right_triangle_torus};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    fn ops() -> Operators<f64> {
        Operators::new(build_equilateral_torus(4, 3, 0.8).unwrap()).unwrap()
    }

    fn random(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    fn rel_diff(a: &[f64], b: &[f64], ops: &Operators<f64>) -> f64 {
        let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        (ops.inner_v(&d, &d) / ops.inner_v(b, b).max(1e-300)).sqrt()
    }

    #[test]
    fn pure_gradient() {
        let ops = ops();
        let mut phi0 = random(1, ops.n_p2());
        shift_to_zero_integral(&ops, &mut phi0);
        let u = ops.grad.mul_vec(&phi0);
        let c = decompose(&ops, &u, TOL).unwrap();
        let err = phi0.iter().zip(&c.phi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "{err}");
        assert!(c.psi.iter().all(|x| x.abs() < 1e-9));
        assert!(c.ubar.iter().all(|x| x.abs() < 1e-13));
        assert!(ops.inner_v(&c.uhat, &c.uhat).sqrt() < 1e-9 * ops.inner_v(&u, &u).sqrt());
    }

    #[test]
    fn constant_field() {
        let ops = ops();
        let u = super::constant_field(ops.mesh.n_faces(), [3.0, -1.0]);
        let c = decompose(&ops, &u, TOL).unwrap();
        assert!((c.ubar[0] - 3.0).abs() < 1e-13 && (c.ubar[1] + 1.0).abs() < 1e-13);
        let e = c.energies(&ops);
        assert!(e.potential + e.stream + e.spurious < 1e-24);
        assert!(recompose(&ops, &HelmholtzComponents::zeros(&ops)).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn spurious_dimensions_on_small_tori() {
        for (n, want) in [(2usize, 16usize), (3, 36)] {
            let ops = Operators::new(build_equilateral_torus(n, n, 1.0).unwrap()).unwrap();
            assert_eq!(spurious_dimension(&ops).unwrap(), want);
            assert_eq!(spurious_dimension_formula(&ops.mesh), want);
            assert_eq!(want, 2 * ops.mesh.n_faces());
        }
        let ops = Operators::new(build_right_triangle_torus(3, 2, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(spurious_dimension(&ops).unwrap(), 2 * ops.mesh.n_faces());
    }

    #[test]
    fn pure_spurious_field_is_filtered_to_zero() {
        let ops = ops();
        let u = random(5, ops.n_vel());
        let spurious = decompose(&ops, &u, TOL).unwrap().uhat;
        let p = project_hp2(&ops, &spurious, TOL).unwrap();
        assert!(ops.inner_v(&p, &p).sqrt() <= 10.0 * TOL * ops.inner_v(&spurious, &spurious).sqrt().max(1.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn orthogonality_round_trip_and_pythagoras(seed in any::<u64>()) {
            let ops = ops();
            let u = random(seed, ops.n_vel());
            let c = decompose(&ops, &u, TOL).unwrap();
            let parts = c.parts(&ops);
            let total = ops.inner_v(&u, &u);
            for i in 0..4 {
                for j in i + 1..4 {
                    prop_assert!(ops.inner_v(&parts[i], &parts[j]).abs() <= 1e-9 * total);
                }
            }
            prop_assert!(rel_diff(&recompose(&ops, &c), &u, &ops) <= 1e-10);
            prop_assert!((c.energies(&ops).total() - total).abs() <= 1e-9 * total);
            prop_assert!(ops.integral_p2(&c.phi).abs() <= 1e-12 * c.phi.iter().map(|x| x.abs()).fold(1.0, f64::max));
            prop_assert!(ops.integral_p2(&c.psi).abs() <= 1e-12 * c.psi.iter().map(|x| x.abs()).fold(1.0, f64::max));
        }

        #[test]
        fn uhat_is_orthogonal_to_gradients_and_skew_gradients(seed in any::<u64>()) {
            let ops = ops();
            let u = random(seed, ops.n_vel());
            let c = decompose(&ops, &u, TOL).unwrap();
            let mu = ops.mass_v.mul_vec(&c.uhat);
            let g = ops.grad.tr_mul_vec(&mu);
            let gp = ops.grad.tr_mul_vec(&ops.perp.tr_mul_vec(&mu));
            // Largest pairing against any unit-norm basis gradient.
            let scale = ops.inner_v(&u, &u).sqrt();
            for a in 0..ops.n_p2() {
                let mut e = vec![0.0; ops.n_p2()];
                e[a] = 1.0;
                let ge = ops.grad.mul_vec(&e);
                let nrm = ops.inner_v(&ge, &ge).sqrt();
                prop_assert!(g[a].abs() <= 1e-10 * scale * nrm);
                prop_assert!(gp[a].abs() <= 1e-10 * scale * nrm);
            }
        }

        #[test]
        fn idempotence_and_uniqueness(seed in any::<u64>()) {
            let ops = ops();
            let u = random(seed, ops.n_vel());
            let c = decompose(&ops, &u, TOL).unwrap();
            let c2 = decompose(&ops, &recompose(&ops, &c), TOL).unwrap();
            let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-8 * (1.0 + y.abs()));
            prop_assert!(close(&c2.phi, &c.phi) && close(&c2.psi, &c.psi) && close(&c2.uhat, &c.uhat));

            let mut alpha = random(seed ^ 0xabc, ops.n_p2());
            let shifted: Vec<f64> = u.iter().zip(ops.grad.mul_vec(&alpha)).map(|(a, b)| a + b).collect();
            let c3 = decompose(&ops, &shifted, TOL).unwrap();
            shift_to_zero_integral(&ops, &mut alpha);
            let want: Vec<f64> = c.phi.iter().zip(&alpha).map(|(a, b)| a + b).collect();
            prop_assert!(close(&c3.phi, &want));
            prop_assert!(close(&c3.psi, &c.psi) && close(&c3.uhat, &c.uhat));
            prop_assert!((c3.ubar[0] - c.ubar[0]).abs() < 1e-12 && (c3.ubar[1] - c.ubar[1]).abs() < 1e-12);
        }

        #[test]
        fn filter_is_idempotent_and_non_expansive(seed in any::<u64>()) {
            let ops = ops();
            let u = random(seed, ops.n_vel());
            let p = project_hp2(&ops, &u, TOL).unwrap();
            prop_assert!(ops.inner_v(&p, &p).sqrt() <= ops.inner_v(&u, &u).sqrt() * (1.0 + 1e-9));
            let pp = project_hp2(&ops, &p, TOL).unwrap();
            prop_assert!(rel_diff(&pp, &p, &ops) <= 10.0 * TOL);
            let c = decompose(&ops, &p, TOL).unwrap();
            prop_assert!(ops.inner_v(&c.uhat, &c.uhat).sqrt() <= 10.0 * TOL * ops.inner_v(&u, &u).sqrt());
        }
    }
}

use crate::error::{Error, Result};
use crate::fem::element::{self, Block6};
use crate::fem::{Operators, QuadratureRule};
use crate::linalg::{
    norm, solve_gmres, solve_spd, GmresOptions, SolveOptions, SolveStats, SparseMatrix, TripletBuilder,
};
use crate::scalar::Scalar;

use super::params::SweParams;

/// Velocity (P1DG), free surface (P2) and time.
#[derive(Clone, Debug, PartialEq)]
pub struct State<T> {
    pub u: Vec<T>,
    pub eta: Vec<T>,
    pub time: T,
}

impl<T: Scalar> State<T> {
    pub fn zeros(ops: &Operators<T>) -> Self {
        Self { u: vec![T::zero(); ops.n_vel()], eta: vec![T::zero(); ops.n_p2()], time: T::zero() }
    }
}

/// Implicit midpoint rule for the linear system. With `h = dt/2`,
/// `B = M_v + hC` (block diagonal) and the residuals of the initial state
/// `r_u = h(C u⁰ + c² M_v Gr η⁰)`, `r_η = h Grᵀ M_v u⁰`, the midpoint
/// increments `a = ū − u⁰`, `δ = η̄ − η⁰` satisfy
///
/// `(M + h²c² Grᵀ K Gr) δ = r_η − h Grᵀ M_v B⁻¹ r_u`,  `K = M_v B⁻¹ M_v`,
///
/// and `a = −B⁻¹(r_u + h c² M_v Gr δ)`. Working with residuals keeps
/// balanced states steady to roundoff at any `dt`. The system matrix is split
/// into its symmetric part and an antisymmetric part (nonzero only when f
/// varies); the latter is handled by GMRES preconditioned with the former.
#[derive(Clone, Debug)]
pub struct MidpointStepper<'a, T> {
    ops: &'a Operators<T>,
    params: SweParams<T>,
    dt: T,
    tol: T,
    mv_blocks: Vec<Block6<T>>,
    c_blocks: Vec<Block6<T>>,
    binv_blocks: Vec<Block6<T>>,
    s_sym: SparseMatrix<T>,
    s_anti: Option<SparseMatrix<T>>,
    last_stats: SolveStats,
    last_delta: Vec<T>,
}

fn add6<T: Scalar>(a: &Block6<T>, b: &Block6<T>, s: T) -> Block6<T> {
    let mut c = *a;
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] += s * b[i][j];
        }
    }
    c
}

fn apply6<T: Scalar>(a: &Block6<T>, x: &[T]) -> [T; 6] {
    std::array::from_fn(|i| (0..6).map(|j| a[i][j] * x[j]).sum())
}

impl<'a, T: Scalar> MidpointStepper<'a, T> {
    /// Default relative tolerance of the free-surface solve.
    pub fn default_tol() -> T {
        T::lit(1e-13).max(T::epsilon() * T::lit(100.0))
    }

    pub fn new(ops: &'a Operators<T>, params: SweParams<T>, dt: T) -> Result<Self> {
        Self::with_tol(ops, params, dt, Self::default_tol())
    }

    pub fn with_tol(ops: &'a Operators<T>, params: SweParams<T>, dt: T, tol: T) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::invalid("time step must be positive"));
        }
        let h = dt * T::lit(0.5);
        let f = params.coriolis();
        let rule4 = QuadratureRule::degree4();
        let rule5 = QuadratureRule::degree5();
        let n = ops.n_p2();
        let scale = h * h * params.c2;
        let mut sym = TripletBuilder::with_capacity(n, n, 36 * ops.geometry.len());
        let mut anti = TripletBuilder::with_capacity(n, n, 36 * ops.geometry.len());
        let mut mv_blocks = Vec::with_capacity(ops.geometry.len());
        let mut c_blocks = Vec::with_capacity(ops.geometry.len());
        let mut binv_blocks = Vec::with_capacity(ops.geometry.len());
        for (face, g) in ops.geometry.iter().enumerate() {
            let mv = element::mass_p1dg(g, &rule4);
            let c = element::coriolis(g, &f, &rule5);
            let binv = element::invert6(&add6(&mv, &c, h));
            let binv_mv = element::matmul6(&binv, &mv);
            let k = element::matmul6(&mv, &binv_mv);
            let gr = element::gradient_embedding(g);
            let grt = element::transpose6(&gr);
            let kt = element::transpose6(&k);
            let ks = add6(&k, &kt, T::one());
            let ka = add6(&k, &kt, -T::one());
            let ss = element::matmul6(&grt, &element::matmul6(&ks, &gr));
            let sa = element::matmul6(&grt, &element::matmul6(&ka, &gr));
            let dofs = ops.p2.element_dofs(face);
            let half = T::lit(0.5);
            for a in 0..6 {
                for b in 0..6 {
                    // Symmetrize explicitly so the assembled matrix is exactly symmetric.
                    sym.push(dofs[a], dofs[b], scale * half * half * (ss[a][b] + ss[b][a]));
                    anti.push(dofs[a], dofs[b], scale * half * half * (sa[a][b] - sa[b][a]));
                }
            }
            mv_blocks.push(mv);
            c_blocks.push(c);
            binv_blocks.push(binv);
        }
        let s_sym = ops.mass.linear_combination(T::one(), &sym.build(), T::one());
        let s_anti = anti.build();
        let negligible = s_anti.max_abs() <= T::epsilon() * T::lit(64.0) * s_sym.max_abs();
        let asym = s_sym.asymmetry();
        if asym > T::lit(1e-12) {
            return Err(Error::NotSymmetric(asym.to_f64_lossy()));
        }
        Ok(Self {
            ops,
            params,
            dt,
            tol,
            mv_blocks,
            c_blocks,
            binv_blocks,
            s_sym,
            s_anti: (!negligible).then_some(s_anti),
            last_stats: SolveStats { iterations: 0, residual: 0.0 },
            last_delta: Vec::new(),
        })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn params(&self) -> &SweParams<T> {
        &self.params
    }

    /// Iterations and final residual of the most recent free-surface solve.
    pub fn last_stats(&self) -> SolveStats {
        self.last_stats
    }

    fn apply_blocks(blocks: &[Block6<T>], u: &[T]) -> Vec<T> {
        let mut out = Vec::with_capacity(u.len());
        for (b, chunk) in blocks.iter().zip(u.chunks_exact(6)) {
            out.extend_from_slice(&apply6(b, chunk));
        }
        out
    }

    pub fn step(&mut self, state: &State<T>) -> Result<State<T>> {
        let ops = self.ops;
        if state.u.len() != ops.n_vel() || state.eta.len() != ops.n_p2() {
            return Err(Error::DimensionMismatch {
                expected: ops.n_vel() + ops.n_p2(),
                found: state.u.len() + state.eta.len(),
            });
        }
        let h = self.dt * T::lit(0.5);
        let c2 = self.params.c2;
        let geta0 = ops.grad.mul_vec(&state.eta);
        let (r_u, mv_u0): (Vec<T>, Vec<T>) = if self.params.beta == T::zero() && self.params.f0 != T::zero() {
            // On an f-plane the balanced part (c²/f0)⊥Gr η⁰ is an exact fixed
            // point, so only the remainder u′ contributes: r_u = hCu′ and
            // r_η = h Grᵀ M_v u′. This keeps the rounding of the vanishing
            // balanced terms out of the h-scaled right-hand side.
            let s = c2 / self.params.f0;
            let ub = ops.perp.mul_vec(&geta0);
            let rest: Vec<T> = state.u.iter().zip(&ub).map(|(&u, &b)| u - s * b).collect();
            let c_rest = Self::apply_blocks(&self.c_blocks, &rest);
            (c_rest.into_iter().map(|v| h * v).collect(), Self::apply_blocks(&self.mv_blocks, &rest))
        } else {
            let mv_geta0 = Self::apply_blocks(&self.mv_blocks, &geta0);
            let c_u0 = Self::apply_blocks(&self.c_blocks, &state.u);
            (
                c_u0.iter().zip(&mv_geta0).map(|(&c, &g)| h * (c + c2 * g)).collect(),
                Self::apply_blocks(&self.mv_blocks, &state.u),
            )
        };
        let binv_ru = Self::apply_blocks(&self.binv_blocks, &r_u);
        let w: Vec<T> = mv_u0.iter().zip(Self::apply_blocks(&self.mv_blocks, &binv_ru)).map(|(&m, k)| m - k).collect();
        let rhs: Vec<T> = ops.grad.tr_mul_vec(&w).into_iter().map(|v| h * v).collect();
        let rhs_norm = norm(&rhs);
        let opts = SolveOptions { tol: self.tol, nullspace: false, max_iter: None, check_symmetry: false };
        let mut delta =
            if self.last_delta.len() == rhs.len() { self.last_delta.clone() } else { vec![T::zero(); rhs.len()] };
        let mut total_iters = 0;
        let mut residual = 0.0;
        if rhs_norm > T::zero() {
            let stats = match &self.s_anti {
                None => {
                    let (x, stats) = solve_spd(&self.s_sym, &rhs, Some(&delta), &opts)?;
                    delta = x;
                    stats
                }
                Some(sa) => {
                    // The symmetric part is an exact-solve preconditioner; the
                    // preconditioned spectrum then lies on the line 1 + iℝ.
                    let s_sym = &self.s_sym;
                    let apply = |x: &[T]| {
                        let mut y = s_sym.mul_vec(x);
                        for (yi, si) in y.iter_mut().zip(sa.mul_vec(x)) {
                            *yi += si;
                        }
                        y
                    };
                    let mut inner = 0;
                    let precond = |v: &[T]| {
                        let (z, st) = solve_spd(s_sym, v, None, &opts)?;
                        inner += st.iterations;
                        Ok(z)
                    };
                    let gopts = GmresOptions { tol: self.tol, restart: 40, max_iter: 10 * rhs.len().max(40) };
                    let (x, stats) = solve_gmres(apply, precond, &rhs, Some(&delta), &gopts)?;
                    delta = x;
                    SolveStats { iterations: inner, residual: stats.residual }
                }
            };
            total_iters = stats.iterations;
            residual = stats.residual;
        } else {
            delta.iter_mut().for_each(|v| *v = T::zero());
        }
        self.last_stats = SolveStats { iterations: total_iters, residual };
        let gdelta = ops.grad.mul_vec(&delta);
        let mv_gdelta = Self::apply_blocks(&self.mv_blocks, &gdelta);
        let z: Vec<T> = r_u.iter().zip(&mv_gdelta).map(|(&r, &g)| r + h * c2 * g).collect();
        let a = Self::apply_blocks(&self.binv_blocks, &z);
        let two = T::lit(2.0);
        let out = State {
            u: state.u.iter().zip(&a).map(|(&u0, &d)| u0 - two * d).collect(),
            eta: state.eta.iter().zip(&delta).map(|(&e0, &d)| e0 + two * d).collect(),
            time: state.time + self.dt,
        };
        self.last_delta = delta;
        Ok(out)
    }

    /// Advances `n` steps, calling `observe` after each one.
    pub fn run(&mut self, state: &State<T>, n: usize, mut observe: impl FnMut(&State<T>)) -> Result<State<T>> {
        let mut s = state.clone();
        for _ in 0..n {
            s = self.step(&s)?;
            observe(&s);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{energy, geostrophic_init, inertial_init, random_state, InertialMode};
    use crate::fem::collocate_p2;
    use crate::helmholtz::decompose;
    use crate::mesh::{build_equilateral_torus, build_right_triangle_torus};

    fn ops_eq(n: usize) -> Operators<f64> {
        Operators::new(build_equilateral_torus(n, n, 1.0 / n as f64).unwrap()).unwrap()
    }

    #[test]
    fn conserves_energy_f_and_beta_plane() {
        let ops = ops_eq(6);
        for params in [SweParams::f_plane(1.3, 0.8).unwrap(), SweParams::new(1.0, 0.7, 1.0).unwrap()] {
            let mut st = MidpointStepper::new(&ops, params, 0.05).unwrap();
            let s0 = random_state(&ops, 11);
            let e0 = energy(&ops, params.c2, &s0);
            let mut worst = 0.0f64;
            st.run(&s0, 40, |s| worst = worst.max(((energy(&ops, params.c2, s) - e0) / e0).abs())).unwrap();
            assert!(worst < 1e-11, "drift {worst}");
        }
    }

    #[test]
    fn geostrophic_state_is_steady() {
        let ops = Operators::new(build_right_triangle_torus(6, 5, 1.0, 1.0).unwrap()).unwrap();
        let tau = std::f64::consts::TAU;
        let eta = collocate_p2(&ops.p2, |x| (tau * x[0]).sin() * (tau * x[1]).cos() + 0.3 * (2.0 * tau * x[1]).sin())
            .into_coeffs();
        let params = SweParams::f_plane(0.9, 1.1).unwrap();
        let s0 = geostrophic_init(&ops, &eta, &params).unwrap();
        let mut st = MidpointStepper::new(&ops, params, 0.1).unwrap();
        let s1 = st.run(&s0, 20, |_| {}).unwrap();
        let du = s1.u.iter().zip(&s0.u).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let de = s1.eta.iter().zip(&s0.eta).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let su = s0.u.iter().map(|v| v.abs()).fold(0.0, f64::max);
        assert!(du <= 1e-11 * su && de <= 1e-11, "{du} {de}");
        assert!((s1.time - 2.0).abs() < 1e-12);
    }

    // Both a constant flow and a spurious mode rotate clockwise at frequency f0,
    // which the midpoint rule maps to the angle 2 atan(f0 dt / 2) per step.
    #[test]
    fn inertial_oscillations() {
        let ops = ops_eq(4);
        let f0: f64 = 1.0;
        let dt: f64 = 0.1;
        let params = SweParams::f_plane(f0, 1.0).unwrap();
        let angle = 2.0 * (0.5 * f0 * dt).atan();
        for mode in [InertialMode::Physical, InertialMode::Spurious] {
            let s0 = inertial_init(&ops, mode, 5, 1e-12).unwrap();
            let mut st = MidpointStepper::new(&ops, params, dt).unwrap();
            let s1 = st.step(&s0).unwrap();
            let (c, s) = (angle.cos(), -angle.sin());
            let rotated: Vec<f64> = s0.u.chunks(2).flat_map(|v| [c * v[0] - s * v[1], s * v[0] + c * v[1]]).collect();
            let err = s1.u.iter().zip(&rotated).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-10, "{mode:?}: {err}");
            assert!(s1.eta.iter().all(|e| e.abs() < 1e-10));
            if mode == InertialMode::Spurious {
                let parts = decompose(&ops, &s1.u, 1e-12).unwrap().energies(&ops);
                assert!((parts.spurious - parts.total()).abs() < 1e-9 * parts.total());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let ops = ops_eq(3);
        let p = SweParams::f_plane(1.0, 1.0).unwrap();
        assert!(MidpointStepper::new(&ops, p, 0.0).is_err());
        let mut st = MidpointStepper::new(&ops, p, 0.1).unwrap();
        let bad = State { u: vec![0.0; 3], eta: vec![0.0; ops.n_p2()], time: 0.0 };
        assert!(st.step(&bad).is_err());
        let zero = State::zeros(&ops);
        assert_eq!(st.step(&zero).unwrap().u, zero.u);
    }
}

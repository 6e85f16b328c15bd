use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{axpy, dot, norm, SparseMatrix};

/// Options for [`solve_spd`].
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions<T> {
    /// Relative residual target `‖Ax − b‖ / ‖b‖`.
    pub tol: T,
    /// Treat constants as the kernel of `A`: the right-hand side and iterates
    /// are projected to zero coefficient mean.
    pub nullspace: bool,
    /// Iteration cap; `None` means `10·n`.
    pub max_iter: Option<usize>,
    /// Reject matrices whose relative asymmetry exceeds `1e-12`. Callers that
    /// solve repeatedly with one verified matrix can switch this off.
    pub check_symmetry: bool,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self { tol: T::default_tol(), nullspace: false, max_iter: None, check_symmetry: true }
    }
}

impl<T: Scalar> SolveOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn nullspace(mut self, on: bool) -> Self {
        self.nullspace = on;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    pub residual: f64,
}

fn remove_mean<T: Scalar>(v: &mut [T]) {
    if v.is_empty() {
        return;
    }
    let mean = v.iter().copied().sum::<T>() / T::from_usize_lossy(v.len());
    for x in v {
        *x -= mean;
    }
}

/// Jacobi-preconditioned conjugate gradients for a symmetric (semi)definite
/// matrix. `x0` is an optional starting guess.
pub fn solve_spd<T: Scalar>(
    a: &SparseMatrix<T>,
    b: &[T],
    x0: Option<&[T]>,
    opts: &SolveOptions<T>,
) -> Result<(Vec<T>, SolveStats)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    if opts.check_symmetry {
        let asym = a.asymmetry();
        if asym > T::lit(1e-12) {
            return Err(Error::NotSymmetric(asym.to_f64_lossy()));
        }
    }

    let mut rhs = b.to_vec();
    if opts.nullspace {
        remove_mean(&mut rhs);
    }
    let bnorm = norm(&rhs);
    let mut x = match x0 {
        Some(g) if g.len() == n => g.to_vec(),
        Some(g) => return Err(Error::DimensionMismatch { expected: n, found: g.len() }),
        None => vec![T::zero(); n],
    };
    if opts.nullspace {
        remove_mean(&mut x);
    }
    if bnorm == T::zero() {
        return Ok((vec![T::zero(); n], SolveStats { iterations: 0, residual: 0.0 }));
    }

    let inv_diag: Vec<T> =
        a.diagonal().into_iter().map(|d| if d > T::zero() { T::one() / d } else { T::one() }).collect();
    let cap = opts.max_iter.unwrap_or(10 * n).max(1);
    let target = opts.tol * bnorm;

    let mut ax = vec![T::zero(); n];
    let mut iterations = 0usize;
    let mut rel = T::infinity();
    // The recurrence residual can drift from the true one; restart from the
    // current iterate until the true residual meets the target.
    for _restart in 0..4 {
        a.mul_vec_into(&x, &mut ax);
        let mut r: Vec<T> = rhs.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect();
        if opts.nullspace {
            remove_mean(&mut r);
        }
        rel = norm(&r) / bnorm;
        if norm(&r) <= target || iterations >= cap {
            break;
        }
        let mut z: Vec<T> = r.iter().zip(&inv_diag).map(|(&ri, &di)| ri * di).collect();
        if opts.nullspace {
            remove_mean(&mut z);
        }
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![T::zero(); n];
        while iterations < cap {
            iterations += 1;
            a.mul_vec_into(&p, &mut ap);
            let pap = dot(&p, &ap);
            if pap <= T::zero() {
                break;
            }
            let alpha = rz / pap;
            axpy(alpha, &p, &mut x);
            axpy(-alpha, &ap, &mut r);
            if norm(&r) <= target {
                break;
            }
            for ((zi, &ri), &di) in z.iter_mut().zip(&r).zip(&inv_diag) {
                *zi = ri * di;
            }
            if opts.nullspace {
                remove_mean(&mut z);
            }
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for (pi, &zi) in p.iter_mut().zip(&z) {
                *pi = zi + beta * *pi;
            }
        }
        if opts.nullspace {
            remove_mean(&mut x);
        }
    }

    let stats = SolveStats { iterations, residual: rel.to_f64_lossy() };
    if rel <= opts.tol {
        Ok((x, stats))
    } else {
        Err(Error::NotConverged { iterations, residual: stats.residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn laplacian_ring<T: Scalar>(n: usize) -> SparseMatrix<T> {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, T::lit(2.0)));
            t.push((i, (i + 1) % n, -T::one()));
            t.push((i, (i + n - 1) % n, -T::one()));
        }
        SparseMatrix::from_triplets(n, n, &t).unwrap()
    }

    #[test]
    fn identity_returns_rhs() {
        let a = SparseMatrix::<f64>::identity(5);
        let b = vec![1.0, -2.0, 3.0, 0.5, 7.0];
        let (x, _) = solve_spd(&a, &b, None, &SolveOptions::default()).unwrap();
        for (xi, bi) in x.iter().zip(&b) {
            assert!((xi - bi).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_ring_recovers_mean_zero_solution() {
        let n = 40;
        let a = laplacian_ring::<f64>(n);
        let mut y: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin() + 0.1 * i as f64).collect();
        remove_mean(&mut y);
        let b = a.mul_vec(&y);
        let opts = SolveOptions::with_tol(1e-12).nullspace(true);
        let (x, _) = solve_spd(&a, &b, None, &opts).unwrap();
        let err = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(err < 1e-8, "err {err}");
        assert!(x.iter().sum::<f64>().abs() < 1e-10);
    }

    #[test]
    fn constant_rhs_in_kernel_gives_zero() {
        let a = laplacian_ring::<f64>(10);
        let opts = SolveOptions::with_tol(1e-12).nullspace(true);
        let (x, stats) = solve_spd(&a, &[3.0; 10], None, &opts).unwrap();
        assert!(x.iter().all(|&v| v == 0.0));
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = SparseMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (0, 1, 0.5), (1, 1, 1.0)]).unwrap();
        assert!(matches!(solve_spd(&a, &[1.0, 1.0], None, &SolveOptions::default()), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn iteration_cap_reports_residual() {
        let a = laplacian_ring::<f64>(50).linear_combination(1.0, &SparseMatrix::identity(50), 1e-3);
        let b: Vec<f64> = (0..50).map(|i| (i % 7) as f64).collect();
        let opts = SolveOptions { max_iter: Some(2), ..SolveOptions::with_tol(1e-12) };
        match solve_spd(&a, &b, None, &opts) {
            Err(Error::NotConverged { iterations, residual }) => {
                assert_eq!(iterations, 2);
                assert!(residual > 1e-12);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn random_btb_plus_identity_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(2..30);
            let m = n + 3;
            let bmat: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect())
                .collect();
            let mut t = Vec::new();
            for i in 0..n {
                t.push((i, i, 1.0));
                for j in 0..n {
                    let v: f64 = (0..m).map(|k| bmat[k][i] * bmat[k][j]).sum();
                    if v != 0.0 {
                        t.push((i, j, v));
                    }
                }
            }
            let a = SparseMatrix::from_triplets(n, n, &t).unwrap();
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (x, _) = solve_spd(&a, &b, None, &SolveOptions::with_tol(1e-12)).unwrap();
            let r: Vec<f64> = a.mul_vec(&x).iter().zip(&b).map(|(p, q)| p - q).collect();
            assert!(norm(&r) <= 1e-12 * norm(&b));
        }
    }

    #[test]
    fn single_precision_uses_looser_default() {
        let a = laplacian_ring::<f32>(12).linear_combination(1.0, &SparseMatrix::identity(12), 0.5);
        let b: Vec<f32> = (0..12).map(|i| i as f32).collect();
        let (x, _) = solve_spd(&a, &b, None, &SolveOptions::default()).unwrap();
        let r: Vec<f32> = a.mul_vec(&x).iter().zip(&b).map(|(p, q)| p - q).collect();
        assert!(norm(&r) <= 1e-4 * norm(&b));
    }
}

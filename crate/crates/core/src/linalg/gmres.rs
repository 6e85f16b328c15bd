use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{axpy, dot, norm, SolveStats};

/// Options for [`solve_gmres`].
#[derive(Clone, Copy, Debug)]
pub struct GmresOptions<T> {
    /// Relative residual target `‖Ax − b‖ / ‖b‖`.
    pub tol: T,
    /// Krylov dimension before restart.
    pub restart: usize,
    /// Cap on the total number of inner iterations.
    pub max_iter: usize,
}

impl<T: Scalar> Default for GmresOptions<T> {
    fn default() -> Self {
        Self { tol: T::default_tol(), restart: 40, max_iter: 2000 }
    }
}

/// Flexible restarted GMRES for a general square operator `apply` with right
/// preconditioner `precond` (which may itself be an inexact inner solve).
pub fn solve_gmres<T: Scalar>(
    apply: impl Fn(&[T]) -> Vec<T>,
    mut precond: impl FnMut(&[T]) -> Result<Vec<T>>,
    b: &[T],
    x0: Option<&[T]>,
    opts: &GmresOptions<T>,
) -> Result<(Vec<T>, SolveStats)> {
    let n = b.len();
    let mut x = match x0 {
        Some(g) if g.len() == n => g.to_vec(),
        Some(g) => return Err(Error::DimensionMismatch { expected: n, found: g.len() }),
        None => vec![T::zero(); n],
    };
    let bnorm = norm(b);
    if bnorm == T::zero() {
        return Ok((vec![T::zero(); n], SolveStats { iterations: 0, residual: 0.0 }));
    }
    let target = opts.tol * bnorm;
    let m = opts.restart.max(1);
    let mut iterations = 0usize;
    loop {
        let ax = apply(&x);
        let r: Vec<T> = b.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect();
        let beta = norm(&r);
        let rel = (beta / bnorm).to_f64_lossy();
        if beta <= target {
            return Ok((x, SolveStats { iterations, residual: rel }));
        }
        if iterations >= opts.max_iter {
            return Err(Error::NotConverged { iterations, residual: rel });
        }
        let mut v: Vec<Vec<T>> = vec![r.into_iter().map(|ri| ri / beta).collect()];
        let mut z: Vec<Vec<T>> = Vec::with_capacity(m);
        let mut h = vec![vec![T::zero(); m]; m + 1];
        let (mut cs, mut sn) = (vec![T::zero(); m], vec![T::zero(); m]);
        let mut g = vec![T::zero(); m + 1];
        g[0] = beta;
        let mut k = 0;
        while k < m && iterations < opts.max_iter {
            iterations += 1;
            let zk = precond(&v[k])?;
            let mut w = apply(&zk);
            z.push(zk);
            for (i, vi) in v.iter().enumerate() {
                h[i][k] = dot(&w, vi);
                axpy(-h[i][k], vi, &mut w);
            }
            h[k + 1][k] = norm(&w);
            for i in 0..k {
                let t = cs[i] * h[i][k] + sn[i] * h[i + 1][k];
                h[i + 1][k] = cs[i] * h[i + 1][k] - sn[i] * h[i][k];
                h[i][k] = t;
            }
            let d = h[k][k].hypot(h[k + 1][k]);
            let (c, s) = if d == T::zero() { (T::one(), T::zero()) } else { (h[k][k] / d, h[k + 1][k] / d) };
            cs[k] = c;
            sn[k] = s;
            h[k][k] = d;
            h[k + 1][k] = T::zero();
            g[k + 1] = -s * g[k];
            g[k] = c * g[k];
            let hk1 = norm(&w);
            k += 1;
            if g[k].abs() <= target || hk1 == T::zero() {
                break;
            }
            v.push(w.into_iter().map(|wi| wi / hk1).collect());
        }
        // Back substitution for the least-squares coefficients.
        let mut y = vec![T::zero(); k];
        for i in (0..k).rev() {
            let s: T = (i + 1..k).map(|j| h[i][j] * y[j]).sum();
            y[i] = (g[i] - s) / h[i][i];
        }
        for (yi, zi) in y.iter().zip(&z) {
            axpy(*yi, zi, &mut x);
        }
    }
}

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense real matrix for element-level and small global problems.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![T::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self { n_rows, n_cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.n_rows
    }

    pub fn ncols(&self) -> usize {
        self.n_cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows);
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows).map(|i| (0..self.n_cols).map(|j| self[(i, j)] * x[j]).sum()).collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n_cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Solves `A X = B` by LU with partial pivoting. `B` has one column per
/// right-hand side.
pub fn lu_solve<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.nrows();
    if a.ncols() != n || b.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.nrows() });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| lu[(i, k)].abs().partial_cmp(&lu[(j, k)].abs()).expect("finite entries"))
            .expect("nonempty range");
        if lu[(p, k)].abs() <= T::epsilon() * scale {
            return Err(Error::invalid("singular matrix in dense LU"));
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            for j in 0..x.ncols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(p, j)];
                x[(p, j)] = t;
            }
        }
        for i in k + 1..n {
            let m = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = m;
            for j in k + 1..n {
                let v = lu[(k, j)];
                lu[(i, j)] -= m * v;
            }
            for j in 0..x.ncols() {
                let v = x[(k, j)];
                x[(i, j)] -= m * v;
            }
        }
    }
    for c in 0..x.ncols() {
        for i in (0..n).rev() {
            let mut s = x[(i, c)];
            for j in i + 1..n {
                s -= lu[(i, j)] * x[(j, c)];
            }
            x[(i, c)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}

pub fn invert_small<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    lu_solve(a, &DenseMatrix::identity(a.nrows()))
}

/// Rank by Householder QR with column pivoting: the number of diagonal
/// entries of `R` above `rel_tol · |R₀₀|`.
pub fn numerical_rank<T: Scalar>(a: &DenseMatrix<T>, rel_tol: T) -> usize {
    let (m, n) = (a.nrows(), a.ncols());
    let mut r = a.clone();
    let mut col_norms: Vec<T> = (0..n).map(|j| (0..m).map(|i| r[(i, j)] * r[(i, j)]).sum()).collect();
    let mut first = T::zero();
    let mut rank = 0;
    for k in 0..m.min(n) {
        let p = (k..n)
            .max_by(|&i, &j| col_norms[i].partial_cmp(&col_norms[j]).expect("finite norms"))
            .expect("nonempty range");
        if p != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, p)];
                r[(i, p)] = t;
            }
            col_norms.swap(k, p);
        }
        let alpha = (k..m).map(|i| r[(i, k)] * r[(i, k)]).sum::<T>().sqrt();
        if k == 0 {
            first = alpha;
        }
        if alpha <= rel_tol * first || alpha == T::zero() {
            break;
        }
        rank += 1;
        let sign = if r[(k, k)] >= T::zero() { T::one() } else { -T::one() };
        let mut v: Vec<T> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] += sign * alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        if vnorm2 > T::zero() {
            for j in k..n {
                let s: T = (k..m).map(|i| v[i - k] * r[(i, j)]).sum::<T>() * T::lit(2.0) / vnorm2;
                for i in k..m {
                    r[(i, j)] -= s * v[i - k];
                }
            }
        }
        // Recompute trailing norms rather than downdating; sizes are small.
        for (j, cn) in col_norms.iter_mut().enumerate().skip(k + 1) {
            *cn = (k + 1..m).map(|i| r[(i, j)] * r[(i, j)]).sum();
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_p1_mass_block() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0, 1.0], vec![1.0, 2.0, 1.0], vec![1.0, 1.0, 2.0]]);
        let inv = invert_small(&m).unwrap();
        // (1/4)[[3,-1,-1],[-1,3,-1],[-1,-1,3]]
        for i in 0..3 {
            for j in 0..3 {
                let want: f64 = if i == j { 0.75 } else { -0.25 };
                assert!((inv[(i, j)] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn singular_is_reported() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(invert_small(&m).is_err());
    }

    #[test]
    fn rank_of_outer_products() {
        let u = [1.0, 2.0, -1.0, 0.5, 3.0];
        let v = [0.3, -1.0, 2.0, 1.0];
        let w = [1.0, 0.0, 1.0, 0.0, -1.0];
        let z = [2.0, 1.0, 0.0, 1.0];
        let mut a = DenseMatrix::zeros(5, 4);
        for i in 0..5 {
            for j in 0..4 {
                a[(i, j)] = u[i] * v[j] + w[i] * z[j];
            }
        }
        assert_eq!(numerical_rank(&a, 1e-10), 2);
        assert_eq!(numerical_rank(&DenseMatrix::<f64>::identity(6), 1e-10), 6);
        assert_eq!(numerical_rank(&DenseMatrix::<f64>::zeros(3, 3), 1e-10), 0);
    }
}

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square dense complex matrix, row-major. Intended for dimensions up to 32.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseComplexMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

/// Eigenpairs: `vectors[j]` belongs to `values[j]`.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<Complex<T>>,
    pub vectors: Vec<Vec<Complex<T>>>,
}

pub const MAX_DENSE_DIM: usize = 32;

impl<T: Scalar> DenseComplexMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(T::zero(), T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_real(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "matrix must be square");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = Complex::new(v, T::zero());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).fold(Complex::new(T::zero(), T::zero()), |acc, j| acc + self[(i, j)] * x[j]))
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.data.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |A − Aᴴ|` relative to `max |A|`.
    pub fn hermitian_defect(&self) -> T {
        let s = self.max_abs();
        if s == T::zero() {
            return T::zero();
        }
        self.sub(&self.adjoint()).max_abs() / s
    }

    /// `max |A + Aᴴ|` relative to `max |A|`.
    pub fn skew_hermitian_defect(&self) -> T {
        let s = self.max_abs();
        if s == T::zero() {
            return T::zero();
        }
        self.add(&self.adjoint()).max_abs() / s
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).expect("finite entries"))
                .expect("nonempty range");
            if a[(p, k)].norm() <= T::epsilon() * scale {
                return Err(Error::invalid("singular complex matrix"));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let piv = a[(k, k)].inv();
            for j in 0..n {
                a[(k, j)] = a[(k, j)] * piv;
                inv[(k, j)] = inv[(k, j)] * piv;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let m = a[(i, k)];
                if m == Complex::new(T::zero(), T::zero()) {
                    continue;
                }
                for j in 0..n {
                    let (akj, ikj) = (a[(k, j)], inv[(k, j)]);
                    a[(i, j)] = a[(i, j)] - m * akj;
                    inv[(i, j)] = inv[(i, j)] - m * ikj;
                }
            }
        }
        Ok(inv)
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Reduces `a` to upper Hessenberg form in place, accumulating the unitary
/// similarity into `q` (so that `a_in = q · a_out · qᴴ`).
fn hessenberg<T: Scalar>(a: &mut DenseComplexMatrix<T>, q: &mut DenseComplexMatrix<T>) {
    let n = a.n;
    for k in 0..n.saturating_sub(2) {
        let alpha = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if alpha == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == T::zero() { Complex::new(T::one(), T::zero()) } else { x0 / x0.norm() };
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] = v[0] + phase * alpha;
        let vn2: T = v.iter().map(|z| z.norm_sqr()).sum();
        if vn2 == T::zero() {
            continue;
        }
        let two = T::lit(2.0) / vn2;
        // a ← (I − 2vvᴴ) a
        for j in 0..n {
            let s = v.iter().enumerate().fold(czero(), |acc, (t, vt)| acc + vt.conj() * a[(k + 1 + t, j)]) * two;
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, j)] = a[(k + 1 + t, j)] - *vt * s;
            }
        }
        // a ← a (I − 2vvᴴ), q ← q (I − 2vvᴴ)
        for m in [&mut *a, &mut *q] {
            for i in 0..n {
                let s = v.iter().enumerate().fold(czero(), |acc, (t, vt)| acc + m[(i, k + 1 + t)] * *vt) * two;
                for (t, vt) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] = m[(i, k + 1 + t)] - s * vt.conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = czero();
        }
    }
}

/// Givens rotation `[[c, s], [−s̄, c]]` mapping `(x, y)` to `(r, 0)`.
fn givens<T: Scalar>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == T::zero() {
        return (T::one(), czero());
    }
    if ax == T::zero() {
        return (T::zero(), Complex::new(T::one(), T::zero()));
    }
    let nrm = ax.hypot(ay);
    (ax / nrm, (x / ax) * y.conj() / nrm)
}

/// Complex Schur form by single-shift QR on the Hessenberg matrix.
fn schur<T: Scalar>(h: &mut DenseComplexMatrix<T>, z: &mut DenseComplexMatrix<T>) -> Result<()> {
    let n = h.n;
    if n < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let cap = 60 * n;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == T::zero() { h.max_abs() } else { s };
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = czero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > cap {
            return Err(Error::EigenFailure(format!("QR iteration exceeded {cap} sweeps")));
        }
        let mu = if iter % 11 == 0 {
            // Exceptional shift to break cycles.
            let t = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { T::zero() };
            h[(hi, hi)] + Complex::new(t * T::lit(0.75), t * T::lit(0.4375))
        } else {
            let a = h[(hi - 1, hi - 1)];
            let b = h[(hi - 1, hi)];
            let c = h[(hi, hi - 1)];
            let d = h[(hi, hi)];
            let half = T::lit(0.5);
            let m = (a + d) * half;
            let disc = ((a - d) * half * ((a - d) * half) + b * c).sqrt();
            let (r1, r2) = (m + disc, m - disc);
            if (r1 - d).norm() <= (r2 - d).norm() {
                r1
            } else {
                r2
            }
        };
        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            let cc = Complex::new(c, T::zero());
            let j0 = if k > l { k - 1 } else { k };
            for j in j0..n {
                let (h1, h2) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = cc * h1 + s * h2;
                h[(k + 1, j)] = -s.conj() * h1 + cc * h2;
            }
            if k > l {
                h[(k + 1, k - 1)] = czero();
            }
            let i1 = (k + 2).min(hi);
            for i in 0..=i1 {
                let (h1, h2) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = cc * h1 + s.conj() * h2;
                h[(i, k + 1)] = -s * h1 + cc * h2;
            }
            for i in 0..n {
                let (z1, z2) = (z[(i, k)], z[(i, k + 1)]);
                z[(i, k)] = cc * z1 + s.conj() * z2;
                z[(i, k + 1)] = -s * z1 + cc * z2;
            }
        }
    }
    Ok(())
}

/// Eigenvalues and unit eigenvectors of a dense complex matrix (dimension at
/// most [`MAX_DENSE_DIM`]). Each eigenvector is scaled so that its first
/// component of non-negligible modulus is real and positive. The algorithm is
/// deterministic: Hessenberg reduction, shifted complex QR, and triangular
/// back-substitution.
pub fn eig_dense<T: Scalar>(a: &DenseComplexMatrix<T>) -> Result<Eigen<T>> {
    let n = a.n;
    if n > MAX_DENSE_DIM {
        return Err(Error::invalid(format!("dense eigenproblem of dimension {n} exceeds {MAX_DENSE_DIM}")));
    }
    if a.data.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::invalid("non-finite matrix entry"));
    }
    let mut t = a.clone();
    let mut z = DenseComplexMatrix::identity(n);
    hessenberg(&mut t, &mut z);
    schur(&mut t, &mut z)?;

    let values: Vec<Complex<T>> = (0..n).map(|i| t[(i, i)]).collect();
    let anorm = a.norm().max(T::min_positive_value());
    let small = T::epsilon() * anorm;
    let mut vectors = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = values[k];
        let mut y = vec![czero(); n];
        y[k] = Complex::new(T::one(), T::zero());
        for i in (0..k).rev() {
            let mut s = czero::<T>();
            for j in i + 1..=k {
                s = s + t[(i, j)] * y[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = Complex::new(small, T::zero());
            }
            y[i] = -s / d;
        }
        let mut v = z.mul_vec(&y);
        let nrm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        for c in &mut v {
            *c = *c / nrm;
        }
        let vmax = v.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let thresh = vmax * T::lit(1e-8).max(T::epsilon() * T::lit(1e3));
        if let Some(first) = v.iter().find(|c| c.norm() > thresh).copied() {
            let phase = first.conj() / first.norm();
            for c in &mut v {
                *c = *c * phase;
            }
        }
        vectors.push(v);
    }
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn backward_error(a: &DenseComplexMatrix<f64>, e: &Eigen<f64>) -> f64 {
        let mut worst: f64 = 0.0;
        for (lam, v) in e.values.iter().zip(&e.vectors) {
            let av = a.mul_vec(v);
            let r: f64 = av.iter().zip(v).map(|(p, q)| (p - lam * q).norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(r / a.norm().max(1e-300));
        }
        worst
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DenseComplexMatrix<f64> {
        let rows: Vec<Vec<C>> = (0..n)
            .map(|_| (0..n).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        DenseComplexMatrix::from_rows(&rows)
    }

    #[test]
    fn diagonal_values() {
        let a = DenseComplexMatrix::from_real(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0, 0.0],
            vec![0.0, 0.0, 3.0, 0.0],
            vec![0.0, 0.0, 0.0, 4.0],
        ]);
        let e = eig_dense(&a).unwrap();
        let mut re: Vec<f64> = e.values.iter().map(|v| v.re).collect();
        re.sort_by(f64::total_cmp);
        assert_eq!(re, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let a = DenseComplexMatrix::from_real(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let e = eig_dense(&a).unwrap();
        let mut im: Vec<f64> = e.values.iter().map(|v| v.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);
        assert!(e.values.iter().all(|v| v.re.abs() < 1e-14));
        assert!(backward_error(&a, &e) < 1e-14);
    }

    #[test]
    fn hermitian_spectrum_is_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let b = random_matrix(&mut rng, 4);
            let h = b.add(&b.adjoint());
            let e = eig_dense(&h).unwrap();
            for v in &e.values {
                assert!(v.im.abs() < 1e-10 * h.norm());
            }
        }
    }

    #[test]
    fn vectors_are_normalized_with_real_leading_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 6);
        let e = eig_dense(&a).unwrap();
        for v in &e.vectors {
            let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
            let lead = v.iter().find(|c| c.norm() > 1e-8).unwrap();
            assert!(lead.im == 0.0 || lead.im.abs() < 1e-15 * lead.re.abs());
            assert!(lead.re > 0.0);
        }
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 9);
        let e1 = eig_dense(&a).unwrap();
        let e2 = eig_dense(&a).unwrap();
        assert_eq!(e1.values, e2.values);
        assert_eq!(e1.vectors, e2.vectors);
    }

    #[test]
    fn defective_jordan_block_still_meets_backward_error() {
        let a = DenseComplexMatrix::from_real(&[vec![2.0, 1.0, 0.0], vec![0.0, 2.0, 1.0], vec![0.0, 0.0, 2.0]]);
        let e = eig_dense(&a).unwrap();
        assert!(backward_error(&a, &e) < 1e-10);
    }

    #[test]
    fn rejects_oversized() {
        assert!(eig_dense(&DenseComplexMatrix::<f64>::identity(33)).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 5);
        let p = a.matmul(&a.inverse().unwrap());
        assert!(p.sub(&DenseComplexMatrix::identity(5)).max_abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn backward_error_bound(seed in any::<u64>(), n in 2usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n);
            let e = eig_dense(&a).unwrap();
            prop_assert!(backward_error(&a, &e) <= 1e-10);
        }
    }
}

use num_complex::Complex;

use crate::dynamics::{RossbyParams, SweParams};
use crate::error::{Error, Result};
use crate::linalg::{eig_dense, DenseComplexMatrix};
use crate::scalar::{Scalar, Vec2};

use super::reduce::BlochAnalyzer;
use super::sweep::in_first_zone;

/// Class-amplitude sign patterns of the four Rossby families at long wavelength.
pub fn templates<T: Scalar>() -> [[T; 4]; 4] {
    let h = T::lit(0.5);
    [[h, h, h, h], [-h, -h, h, h], [h, -h, -h, h], [-h, h, -h, h]]
}

pub const TEMPLATE_NAMES: [&str; 4] = ["fundamental", "alternating-ab", "alternating-bc", "alternating-ca"];

/// Four branches at one wave vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DispersionResult<T> {
    pub kdx: Vec2<T>,
    /// Frequencies in ascending order.
    pub omega: [T; 4],
    /// Unit eigenvectors in class coordinates, one per branch.
    pub vectors: [[Complex<T>; 4]; 4],
    /// Template index per branch (Rossby only).
    pub labels: Option<[usize; 4]>,
    /// `|⟨v_j, t_m⟩|` for branch `j` and template `m` (Rossby only).
    pub scores: Option<[[T; 4]; 4]>,
    /// Branches whose best two template scores differ by less than 1%.
    pub ambiguous: [bool; 4],
    /// Largest imaginary part discarded from the eigenvalues.
    pub max_imag: T,
}

impl<T: Scalar> DispersionResult<T> {
    /// Frequency of the branch labelled with template `label`.
    pub fn labelled(&self, label: usize) -> Option<T> {
        let labels = self.labels?;
        labels.iter().position(|&l| l == label).map(|j| self.omega[j])
    }

    pub fn any_ambiguous(&self) -> bool {
        self.ambiguous.iter().any(|&a| a)
    }
}

fn check_kdx<T: Scalar>(kdx: Vec2<T>) -> Result<()> {
    if !in_first_zone(kdx) {
        return Err(Error::invalid("wave vector lies outside the first Brillouin zone"));
    }
    Ok(())
}

fn vec4<T: Scalar>(v: &[Complex<T>]) -> [Complex<T>; 4] {
    [v[0], v[1], v[2], v[3]]
}

/// Best joint assignment of templates to eigenvectors.
fn label_branches<T: Scalar>(vectors: &[[Complex<T>; 4]; 4]) -> ([usize; 4], [[T; 4]; 4], [bool; 4]) {
    let t = templates::<T>();
    let mut scores = [[T::zero(); 4]; 4];
    for (j, v) in vectors.iter().enumerate() {
        for (m, tm) in t.iter().enumerate() {
            let dot: Complex<T> = v.iter().zip(tm).map(|(a, &b)| a.conj() * b).sum();
            scores[j][m] = dot.norm();
        }
    }
    let mut best = ([0, 1, 2, 3], T::lit(-1.0));
    let mut perm = [0usize, 1, 2, 3];
    loop {
        let total: T = (0..4).map(|j| scores[j][perm[j]]).sum();
        if total > best.1 {
            best = (perm, total);
        }
        let Some(i) = (0..3).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let k = (i + 1..4).rev().find(|&k| perm[k] > perm[i]).expect("successor exists");
        perm.swap(i, k);
        perm[i + 1..].reverse();
    }
    let ambiguous = std::array::from_fn(|j| {
        let mut s = scores[j];
        s.sort_by(|a, b| b.partial_cmp(a).expect("finite scores"));
        s[0] - s[1] < T::lit(0.01) * s[0]
    });
    (best.0, scores, ambiguous)
}

impl<T: Scalar> BlochAnalyzer<T> {
    /// Inertia-gravity branches `ω² = f0² + (c²/Δx²) λ`, `λ ∈ eig(Mr⁻¹Lr)`
    /// (nonnegative roots, ascending).
    pub fn gravity_branches(&self, kdx: Vec2<T>, params: &SweParams<T>, dx: T) -> Result<DispersionResult<T>> {
        check_kdx(kdx)?;
        if !(dx > T::zero()) {
            return Err(Error::invalid("dx must be positive"));
        }
        let b = self.reduced(kdx);
        let a = b.mr.inverse()?.matmul(&b.lr);
        let eig = eig_dense(&a)?;
        let mut pairs: Vec<(T, [Complex<T>; 4])> =
            eig.values.iter().zip(&eig.vectors).map(|(l, v)| (l.re.max(T::zero()), vec4(v))).collect();
        let max_imag = eig.values.iter().map(|l| l.im.abs()).fold(T::zero(), T::max);
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite eigenvalues"));
        let scale = params.c2 / (dx * dx);
        Ok(DispersionResult {
            kdx,
            omega: std::array::from_fn(|j| (params.f0 * params.f0 + scale * pairs[j].0).sqrt()),
            vectors: std::array::from_fn(|j| pairs[j].1),
            labels: None,
            scores: None,
            ambiguous: [false; 4],
            max_imag,
        })
    }

    /// Rossby branches: eigenvalues of `i (β/Δx) (Lr/Δx² + Mr/L_R²)⁻¹ D_east`,
    /// `east` being `f̂` turned clockwise by a right angle.
    pub fn rossby_branches(
        &self,
        kdx: Vec2<T>,
        params: &RossbyParams<T>,
        fhat: Vec2<T>,
        dx: T,
    ) -> Result<DispersionResult<T>> {
        check_kdx(kdx)?;
        if !(dx > T::zero()) {
            return Err(Error::invalid("dx must be positive"));
        }
        let b = self.reduced(kdx);
        let c = |v: T| Complex::new(v, T::zero());
        let a = b.lr.scale(c(T::one() / (dx * dx))).add(&b.mr.scale(c(params.inv_rossby_radius2())));
        let d = b.derivative([fhat[1], -fhat[0]]);
        let op: DenseComplexMatrix<T> = a.inverse()?.matmul(&d).scale(Complex::new(T::zero(), params.beta / dx));
        let eig = eig_dense(&op)?;
        let max_imag = eig.values.iter().map(|l| l.im.abs()).fold(T::zero(), T::max);
        let mut pairs: Vec<(T, [Complex<T>; 4])> =
            eig.values.iter().zip(&eig.vectors).map(|(l, v)| (l.re, vec4(v))).collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite eigenvalues"));
        let vectors = std::array::from_fn(|j| pairs[j].1);
        let (labels, scores, ambiguous) = label_branches(&vectors);
        Ok(DispersionResult {
            kdx,
            omega: std::array::from_fn(|j| pairs[j].0),
            vectors,
            labels: Some(labels),
            scores: Some(scores),
            ambiguous,
            max_imag,
        })
    }
}

use num_complex::Complex;

use crate::error::Result;
use crate::fem::QuadratureRule;
use crate::linalg::DenseComplexMatrix;
use crate::scalar::{Scalar, Vec2};

use super::hexagon::{build_reference_hexagon, classify_lattice_point, HexagonOperators, ReferenceHexagon};

/// Map from our class order to the ordering of the closed-form blocks,
/// established by [`calibrate_permutation`](super::calibrate_permutation).
pub const CLASS_PERMUTATION: [usize; 4] = [0, 1, 2, 3];

/// Reduced 4×4 matrices `S†XS` at a nondimensional wave vector `kΔx`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochMatrices<T> {
    pub kdx: Vec2<T>,
    pub mr: DenseComplexMatrix<T>,
    pub lr: DenseComplexMatrix<T>,
    pub d1r: DenseComplexMatrix<T>,
    pub d2r: DenseComplexMatrix<T>,
}

impl<T: Scalar> BlochMatrices<T> {
    /// `(name, matrix)` pairs in the order M, L, D1, D2.
    pub fn named(&self) -> [(&'static str, &DenseComplexMatrix<T>); 4] {
        [("M", &self.mr), ("L", &self.lr), ("D1", &self.d1r), ("D2", &self.d2r)]
    }

    /// Reduced derivative along `dir`: `dir₁ D1r + dir₂ D2r`.
    pub fn derivative(&self, dir: Vec2<T>) -> DenseComplexMatrix<T> {
        let c = |v: T| Complex::new(v, T::zero());
        self.d1r.scale(c(dir[0])).add(&self.d2r.scale(c(dir[1])))
    }
}

/// Bloch reduction matrix: `S[n][class(n)] = exp(i kΔx·ξ_n)`, 19 rows of 4.
pub fn bloch_matrix_s<T: Scalar>(hex: &ReferenceHexagon<T>, kdx: Vec2<T>) -> Vec<[Complex<T>; 4]> {
    hex.nodes()
        .iter()
        .zip(hex.classes())
        .map(|(x, c)| {
            let mut row = [Complex::new(T::zero(), T::zero()); 4];
            row[c.index()] = Complex::from_polar(T::one(), kdx[0] * x[0] + kdx[1] * x[1]);
            row
        })
        .collect()
}

/// Hexagon operators with a cached assembly, reusable across wave vectors.
#[derive(Clone, Debug)]
pub struct BlochAnalyzer<T> {
    hex: ReferenceHexagon<T>,
    ops: HexagonOperators<T>,
}

impl<T: Scalar> BlochAnalyzer<T> {
    pub fn new() -> Result<Self> {
        Self::with_rule(&QuadratureRule::degree4())
    }

    pub fn with_rule(rule: &QuadratureRule<T>) -> Result<Self> {
        let hex = build_reference_hexagon();
        let ops = HexagonOperators::assemble(&hex, rule)?;
        Ok(Self { hex, ops })
    }

    pub fn hexagon(&self) -> &ReferenceHexagon<T> {
        &self.hex
    }

    pub fn operators(&self) -> &HexagonOperators<T> {
        &self.ops
    }

    /// `S†XS` for the four hexagon operators with classes permuted by `perm`.
    pub fn reduced_with_permutation(&self, kdx: Vec2<T>, perm: [usize; 4]) -> BlochMatrices<T> {
        let n = self.hex.n_nodes();
        let phase: Vec<Complex<T>> =
            self.hex.nodes().iter().map(|x| Complex::from_polar(T::one(), kdx[0] * x[0] + kdx[1] * x[1])).collect();
        let class: Vec<usize> = self.hex.classes().iter().map(|c| c.index()).collect();
        let mut slot = [0usize; 4];
        for (i, &p) in perm.iter().enumerate() {
            slot[p] = i;
        }
        let reduce = |x: &crate::linalg::DenseMatrix<T>| {
            let mut r = DenseComplexMatrix::zeros(4);
            for a in 0..n {
                for b in 0..n {
                    let v = x[(a, b)];
                    if v != T::zero() {
                        r[(slot[class[a]], slot[class[b]])] += phase[a].conj() * phase[b] * v;
                    }
                }
            }
            r
        };
        BlochMatrices {
            kdx,
            mr: reduce(&self.ops.m),
            lr: reduce(&self.ops.l),
            d1r: reduce(&self.ops.d1),
            d2r: reduce(&self.ops.d2),
        }
    }

    pub fn reduced(&self, kdx: Vec2<T>) -> BlochMatrices<T> {
        self.reduced_with_permutation(kdx, CLASS_PERMUTATION)
    }
}

/// Nodal values `v_{class(x/Δx)} e^{i k·x}` of a Bloch mode at physical
/// points of an equilateral mesh with edge `dx`, where `kΔx = kdx` and `v`
/// is in reduced (permuted) class coordinates.
pub fn bloch_mode_values<T: Scalar>(points: &[Vec2<T>], dx: T, kdx: Vec2<T>, v: &[Complex<T>; 4]) -> Vec<Complex<T>> {
    let mut slot = [0usize; 4];
    for (i, &p) in CLASS_PERMUTATION.iter().enumerate() {
        slot[p] = i;
    }
    points
        .iter()
        .map(|x| {
            let xi = [x[0] / dx, x[1] / dx];
            let c = classify_lattice_point(xi).index();
            v[slot[c]] * Complex::from_polar(T::one(), kdx[0] * xi[0] + kdx[1] * xi[1])
        })
        .collect()
}

/// Reduced matrices with exact (degree-4) quadrature.
pub fn reduced_matrices<T: Scalar>(kdx: Vec2<T>) -> Result<BlochMatrices<T>> {
    Ok(BlochAnalyzer::new()?.reduced(kdx))
}

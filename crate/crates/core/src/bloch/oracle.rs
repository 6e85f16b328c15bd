use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::fem::QuadratureRule;
use crate::linalg::DenseComplexMatrix;
use crate::scalar::{Scalar, Vec2};

use super::reduce::{BlochAnalyzer, BlochMatrices};
use super::sweep::{in_first_zone, ZONE_BOUND};
use super::symbolic::symbolic_reference;

/// Uniform samples from the first Brillouin zone (rejection from its
/// bounding box).
pub fn random_zone_points<T: Scalar>(n: usize, seed: u64) -> Vec<Vec2<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rx = 4.0 * std::f64::consts::PI / 3.0;
    let ry = ZONE_BOUND;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = [T::lit(rng.gen_range(-rx..rx)), T::lit(rng.gen_range(-ry..ry))];
        if in_first_zone(k) {
            out.push(k);
        }
    }
    out
}

fn block_error<T: Scalar>(
    a: &DenseComplexMatrix<T>,
    b: &DenseComplexMatrix<T>,
    rows: [usize; 2],
    cols: [usize; 2],
    both: bool,
) -> f64 {
    let mut e = 0.0f64;
    for i in rows[0]..rows[1] {
        for j in cols[0]..cols[1] {
            e = e.max((a[(i, j)] - b[(i, j)]).norm().to_f64_lossy());
            if both {
                e = e.max((a[(j, i)] - b[(j, i)]).norm().to_f64_lossy());
            }
        }
    }
    e
}

fn per_block<T: Scalar>(num: &BlochMatrices<T>, sym: &BlochMatrices<T>) -> [f64; 12] {
    let pairs = [(&num.mr, &sym.mr), (&num.lr, &sym.lr), (&num.d1r, &sym.d1r), (&num.d2r, &sym.d2r)];
    let mut out = [0.0; 12];
    for (m, (a, b)) in pairs.iter().enumerate() {
        out[3 * m] = block_error(a, b, [0, 2], [0, 2], false);
        out[3 * m + 1] = block_error(a, b, [2, 4], [0, 2], true);
        out[3 * m + 2] = block_error(a, b, [2, 4], [2, 4], false);
    }
    out
}

const BLOCK_NAMES: [&str; 12] = ["A", "B", "C", "D", "E", "F", "P1", "Q1", "R1", "P2", "Q2", "R2"];

/// Worst entrywise discrepancy between assembled and closed-form reduced
/// matrices over a set of random wave vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub samples: usize,
    pub tolerance: f64,
    /// `(block name, max |assembled − closed form|)`.
    pub blocks: Vec<(&'static str, f64)>,
    pub worst_kdx: [f64; 2],
}

impl OracleReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.blocks.iter().map(|b| b.1).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_discrepancy() <= self.tolerance
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples {}", self.samples)?;
        for (name, e) in &self.blocks {
            writeln!(f, "{name} {}", crate::format::fmt_g(*e, 6))?;
        }
        writeln!(f, "max {}", crate::format::fmt_g(self.max_discrepancy(), 6))?;
        if !self.passed() {
            writeln!(
                f,
                "worst kdx {} {}",
                crate::format::fmt_g(self.worst_kdx[0], 17),
                crate::format::fmt_g(self.worst_kdx[1], 17)
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Compares the reduced matrices assembled with `rule` against the closed
/// forms at `n` random zone points.
pub fn run_oracle<T: Scalar>(n: usize, seed: u64, rule: &QuadratureRule<T>, tolerance: f64) -> Result<OracleReport> {
    if n == 0 {
        return Err(crate::error::Error::invalid("oracle needs at least one sample"));
    }
    let an = BlochAnalyzer::with_rule(rule)?;
    let mut worst = [0.0f64; 12];
    let mut worst_total = -1.0;
    let mut worst_kdx = [0.0; 2];
    for k in random_zone_points::<T>(n, seed) {
        let e = per_block(&an.reduced(k), &symbolic_reference(k));
        let total = e.iter().copied().fold(0.0, f64::max);
        if total > worst_total {
            worst_total = total;
            worst_kdx = [k[0].to_f64_lossy(), k[1].to_f64_lossy()];
        }
        for (w, v) in worst.iter_mut().zip(e) {
            *w = w.max(v);
        }
    }
    Ok(OracleReport { samples: n, tolerance, blocks: BLOCK_NAMES.iter().copied().zip(worst).collect(), worst_kdx })
}

/// Searches all 24 class orderings for the one that makes the assembled mass
/// and Laplacian agree with the closed forms; returns it with its error.
pub fn calibrate_permutation<T: Scalar>(an: &BlochAnalyzer<T>, samples: &[Vec2<T>]) -> ([usize; 4], f64) {
    let mut best = ([0, 1, 2, 3], f64::INFINITY);
    let mut perm = [0usize, 1, 2, 3];
    for _ in 0..24 {
        let err = samples
            .iter()
            .map(|&k| {
                let num = an.reduced_with_permutation(k, perm);
                let sym = symbolic_reference(k);
                let e = num.mr.sub(&sym.mr).max_abs().max(num.lr.sub(&sym.lr).max_abs());
                e.to_f64_lossy()
            })
            .fold(0.0, f64::max);
        if err < best.1 {
            best = (perm, err);
        }
        next_permutation(&mut perm);
    }
    best
}

fn next_permutation(p: &mut [usize; 4]) {
    let Some(i) = (0..3).rev().find(|&i| p[i] < p[i + 1]) else {
        p.reverse();
        return;
    };
    let j = (i + 1..4).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
}

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dynamics::{RossbyParams, SweParams};
use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::scalar::{Scalar, Vec2};

use super::branches::DispersionResult;
use super::reduce::BlochAnalyzer;

/// Distance from the origin to each edge of the hexagonal first zone.
pub const ZONE_BOUND: f64 = 3.627598728468436; // 2π/√3

fn normals() -> [Vec2<f64>; 6] {
    std::array::from_fn(|n| {
        let t = (n as f64 + 0.5) * std::f64::consts::PI / 3.0;
        [t.cos(), t.sin()]
    })
}

/// Closed first zone: `kΔx·(cos θ_n, sin θ_n) ≤ 2π/√3` for
/// `θ_n = (n + ½)π/3`, with a relative slack of `1e-12`.
pub fn in_first_zone<T: Scalar>(kdx: Vec2<T>) -> bool {
    let k = [kdx[0].to_f64_lossy(), kdx[1].to_f64_lossy()];
    normals().iter().all(|n| k[0] * n[0] + k[1] * n[1] <= ZONE_BOUND * (1.0 + 1e-12))
}

/// Cell centres of an `n × n` grid over the zone's bounding box that lie
/// strictly inside the zone, in row-major order (`l` outer, `k` inner).
pub fn zone_grid<T: Scalar>(n: usize) -> Vec<Vec2<T>> {
    let rx = 4.0 * std::f64::consts::PI / 3.0;
    let ry = ZONE_BOUND;
    let mut out = Vec::new();
    for j in 0..n {
        let l = -ry + (j as f64 + 0.5) * 2.0 * ry / n as f64;
        for i in 0..n {
            let k = -rx + (i as f64 + 0.5) * 2.0 * rx / n as f64;
            if normals().iter().all(|nn| k * nn[0] + l * nn[1] < ZONE_BOUND * (1.0 - 1e-9)) {
                out.push([T::lit(k), T::lit(l)]);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepKind<T> {
    Gravity { params: SweParams<T>, dx: T },
    Rossby { params: RossbyParams<T>, fhat: Vec2<T>, dx: T },
}

impl<T: Scalar> SweepKind<T> {
    /// Continuous frequency of the physical branch at `kΔx`.
    pub fn exact(&self, kdx: Vec2<T>) -> T {
        match self {
            SweepKind::Gravity { params, dx } => {
                let kk = (kdx[0] * kdx[0] + kdx[1] * kdx[1]) / (*dx * *dx);
                (params.f0 * params.f0 + params.c2 * kk).sqrt()
            }
            SweepKind::Rossby { params, fhat, dx } => params.exact_frequency([kdx[0] / *dx, kdx[1] / *dx], *fhat),
        }
    }

    pub fn branches(&self, an: &BlochAnalyzer<T>, kdx: Vec2<T>) -> Result<DispersionResult<T>> {
        match self {
            SweepKind::Gravity { params, dx } => an.gravity_branches(kdx, params, *dx),
            SweepKind::Rossby { params, fhat, dx } => an.rossby_branches(kdx, params, *fhat, *dx),
        }
    }
}

/// Dispersion over [`zone_grid`], computed in parallel with results in grid order.
pub fn sweep_brillouin<T: Scalar>(n_grid: usize, kind: &SweepKind<T>) -> Result<Vec<DispersionResult<T>>> {
    if n_grid < 8 {
        return Err(Error::invalid("sweep grid must have at least 8 points per side"));
    }
    let an = BlochAnalyzer::new()?;
    zone_grid(n_grid).into_par_iter().map(|k| kind.branches(&an, k)).collect()
}

/// CSV `k,l,omega1..omega4[,label1..label4][,omega_exact]`.
pub fn sweep_csv<T: Scalar>(results: &[DispersionResult<T>], kind: &SweepKind<T>, compare_exact: bool) -> String {
    let labelled = matches!(kind, SweepKind::Rossby { .. });
    let mut out = String::from("k,l,omega1,omega2,omega3,omega4");
    if labelled {
        out.push_str(",label1,label2,label3,label4");
    }
    if compare_exact {
        out.push_str(",omega_exact");
    }
    out.push('\n');
    let g = |v: T| fmt_g(v.to_f64_lossy(), 12);
    for r in results {
        let mut cols = vec![g(r.kdx[0]), g(r.kdx[1])];
        cols.extend(r.omega.iter().map(|&w| g(w)));
        if let (true, Some(labels)) = (labelled, r.labels) {
            cols.extend(labels.iter().map(|l| (l + 1).to_string()));
        }
        if compare_exact {
            cols.push(g(kind.exact(r.kdx)));
        }
        let _ = writeln!(out, "{}", cols.join(","));
    }
    out
}

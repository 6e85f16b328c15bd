use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use swlab::bloch::{sweep_brillouin, sweep_csv, SweepKind};
use swlab::dynamics::{RossbyParams, SweParams};

use crate::common::{report, usage, Choice, Ctx, Pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gravity,
    Rossby,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    /// Wave family [default: gravity].
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Grid points per side of the sampling box over the zone (at least 8) [default: 64].
    #[arg(long)]
    ngrid: Option<usize>,
    /// Append the continuous dispersion relation as a column.
    #[arg(long)]
    compare_exact: bool,
    /// Unit rotation-axis direction for Rossby waves [default: 0,1].
    #[arg(long)]
    fhat: Option<Pair>,
    /// Coriolis parameter [default: 1, Rossby 1e-4].
    #[arg(long)]
    f0: Option<f64>,
    /// Coriolis gradient, Rossby only [default: 1e-12].
    #[arg(long)]
    beta: Option<f64>,
    /// Squared gravity-wave speed [default: 1, Rossby 1e5].
    #[arg(long)]
    c2: Option<f64>,
    /// Lattice edge length [default: 1, Rossby 1e5].
    #[arg(long)]
    dx: Option<f64>,
    /// Also write a plotting script here.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

pub fn run(ctx: &Ctx, a: &DispersionArgs) -> Result<bool> {
    let kind = ctx.config.pick(a.kind.map(Choice), "kind", Choice(Kind::Gravity))?.0;
    sweep(ctx, kind, &a.sweep)
}

pub fn sweep(ctx: &Ctx, kind: Kind, a: &SweepArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let ngrid = cfg.pick(a.ngrid, "ngrid", 64)?;
    if ngrid < 8 {
        return Err(usage(format!("--ngrid must be at least 8, got {ngrid}")));
    }
    let compare = cfg.switch(a.compare_exact, "compare-exact")?;
    let bad = |e: swlab::Error| usage(e.to_string());
    let sweep_kind = match kind {
        Kind::Gravity => {
            if a.beta.is_some() {
                return Err(usage("--beta applies to Rossby sweeps only"));
            }
            let params = SweParams::f_plane(cfg.pick(a.f0, "f0", 1.0)?, cfg.pick(a.c2, "c2", 1.0)?).map_err(bad)?;
            SweepKind::Gravity { params, dx: cfg.pick(a.dx, "dx", 1.0)? }
        }
        Kind::Rossby => {
            let r = RossbyParams::<f64>::reference();
            let params = RossbyParams::new(
                cfg.pick(a.f0, "f0", r.f0)?,
                cfg.pick(a.beta, "beta", r.beta)?,
                cfg.pick(a.c2, "c2", r.c2)?,
            )
            .map_err(bad)?;
            let fhat = cfg.pick(a.fhat, "fhat", Pair([0.0, 1.0]))?.0;
            let norm = fhat[0].hypot(fhat[1]);
            if (norm - 1.0).abs() > 1e-9 {
                return Err(usage(format!("--fhat must be a unit vector, |fhat| = {norm}")));
            }
            SweepKind::Rossby { params, fhat, dx: cfg.pick(a.dx, "dx", 1e5)? }
        }
    };
    let results = sweep_brillouin(ngrid, &sweep_kind).map_err(bad)?;
    ctx.emit(&sweep_csv(&results, &sweep_kind, compare))?;
    ctx.emit_gnuplot(a.gnuplot.as_ref(), |data| {
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset view map\nset size ratio -1\n\
             set xlabel 'k dx'\nset ylabel 'l dx'\nsplot '{data}' using 1:2:3 with points pointtype 5 palette title 'lowest branch'\n"
        )
    })?;
    let imag = results
        .iter()
        .map(|r| r.max_imag / r.omega.iter().fold(f64::MIN_POSITIVE, |m, w| m.max(w.abs())))
        .fold(0.0, f64::max);
    let mut ok = report("max |Im omega| / max |omega|", imag, 1e-10, imag <= 1e-10);
    if kind == Kind::Rossby {
        let ambiguous = results.iter().filter(|r| r.any_ambiguous()).count();
        ok &= report("ambiguous branch labels", ambiguous as f64, 0.0, ambiguous == 0);
    }
    Ok(ok)
}

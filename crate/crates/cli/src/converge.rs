use std::f64::consts::TAU;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use swlab::dynamics::{run_convergence, IcMode, PlaneWaveSpec, SweParams};
use swlab::format::fmt_g;

use crate::common::{report, usage, Ctx, Levels, Pair};

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    /// Cells per side of each right-triangle mesh level [default: 8,16,32].
    #[arg(long)]
    levels: Option<Levels>,
    /// Coriolis parameter [default: 1].
    #[arg(long)]
    f0: Option<f64>,
    /// Squared gravity-wave speed [default: 1].
    #[arg(long)]
    c2: Option<f64>,
    /// Wave vector of the plane wave on the unit torus [default: 2π,2π].
    #[arg(long)]
    k: Option<Pair>,
    /// Time step factor: dt = courant · dx^1.5 [default: 0.05].
    #[arg(long)]
    courant: Option<f64>,
    /// Also write a plotting script here.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

pub fn run(ctx: &Ctx, a: &ConvergeArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let levels = cfg.pick(a.levels.clone(), "levels", Levels(vec![8, 16, 32]))?.0;
    if levels.len() < 3 {
        return Err(usage(format!("converge needs at least 3 levels, got {}", levels.len())));
    }
    if levels.windows(2).any(|w| w[1] <= w[0]) || levels[0] < 2 {
        return Err(usage("levels must be strictly increasing and at least 2"));
    }
    let params =
        SweParams::f_plane(cfg.pick(a.f0, "f0", 1.0)?, cfg.pick(a.c2, "c2", 1.0)?).map_err(|e| usage(e.to_string()))?;
    let k = cfg.pick(a.k, "k", Pair([TAU, TAU]))?.0;
    let courant = cfg.pick(a.courant, "courant", 0.05)?;
    if courant.is_nan() || courant <= 0.0 {
        return Err(usage("courant must be positive"));
    }
    let spec = PlaneWaveSpec { k, amplitude: 1.0, sign: 1.0 };
    let col = run_convergence(&levels, IcMode::Collocated, &params, &spec, courant)?;
    let proj = run_convergence(&levels, IcMode::Projected, &params, &spec, courant)?;

    let mut csv = String::from("dx,err_collocated,err_projected\n");
    for (c, p) in col.rows.iter().zip(&proj.rows) {
        csv.push_str(&format!("{},{},{}\n", fmt_g(c.dx, 12), fmt_g(c.error, 12), fmt_g(p.error, 12)));
    }
    ctx.emit(&csv)?;
    eprintln!("slopes collocated {} projected {}", fmt_g(col.order, 6), fmt_g(proj.order, 6));
    ctx.emit_gnuplot(a.gnuplot.as_ref(), |data| {
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset logscale xy\nset xlabel 'dx'\nset ylabel 'free-surface L2 error'\n\
             plot '{data}' using 1:2 with linespoints title 'collocated', '{data}' using 1:3 with linespoints title 'projected'\n"
        )
    })?;
    let ok_p = report("projected slope >=", proj.order, 2.7, proj.order >= 2.7);
    let ok_c = report("collocated slope in [1.7, 2.4]", col.order, 2.4, (1.7..=2.4).contains(&col.order));
    Ok(ok_p && ok_c)
}

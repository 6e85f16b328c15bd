use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use swlab::dynamics::{
    energy, geostrophic_init, inertial_init, l2_error_p2, random_state, read_checkpoint, write_checkpoint,
    InertialMode, MidpointStepper, PlaneWave, PlaneWaveSpec, State, SweParams, Trajectory, TrajectoryRow,
};
use swlab::fem::{collocate_p2, collocate_p2_vector, project_p2vec_to_p1dg, Operators};
use swlab::format::fmt_g;
use swlab::helmholtz::{decompose, project_hp2, ComponentEnergies};

use crate::common::{load_mesh, operators, report, usage, Choice, Ctx, MeshArgs, Pair};

/// Reads a checkpoint and the mesh it names; relative mesh paths are taken
/// from the checkpoint's directory.
fn load_checkpoint(path: &Path) -> Result<(Operators<f64>, State<f64>)> {
    let file = std::fs::File::open(path).with_context(|| format!("opening checkpoint {}", path.display()))?;
    let (mesh_path, state) = read_checkpoint(std::io::BufReader::new(file))
        .with_context(|| format!("reading checkpoint {}", path.display()))?;
    let mesh_path = PathBuf::from(mesh_path);
    let mesh_path =
        if mesh_path.is_relative() { path.parent().unwrap_or(Path::new(".")).join(mesh_path) } else { mesh_path };
    let ops = operators(load_mesh(&mesh_path)?)?;
    if state.u.len() != ops.n_vel() || state.eta.len() != ops.n_p2() {
        return Err(usage(format!("checkpoint {} does not match mesh {}", path.display(), mesh_path.display())));
    }
    Ok((ops, state))
}

fn energies_line(e: &ComponentEnergies<f64>) -> String {
    [e.mean, e.potential, e.stream, e.spurious, e.total()].iter().map(|v| fmt_g(*v, 12)).collect::<Vec<_>>().join(",")
}

#[derive(Args, Debug)]
pub struct HelmholtzArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Decompose the velocity stored in this checkpoint instead of a seeded random field.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Project the velocity onto H(P2) first, removing its spurious part.
    #[arg(long)]
    filter_hp2: bool,
    /// Relative tolerance of the elliptic solves [default: 1e-12].
    #[arg(long)]
    tol: Option<f64>,
}

pub fn run_helmholtz(ctx: &Ctx, a: &HelmholtzArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let tol = cfg.pick(a.tol, "tol", 1e-12)?;
    let (ops, mut u) = match cfg.pick_opt(a.checkpoint.clone(), "checkpoint")? {
        Some(path) => {
            let (ops, s) = load_checkpoint(&path)?;
            (ops, s.u)
        }
        None => {
            let ops = operators(a.mesh.build(cfg)?)?;
            let u = random_state(&ops, ctx.seed).u;
            (ops, u)
        }
    };
    let filter = cfg.switch(a.filter_hp2, "filter-hp2")?;
    if filter {
        u = project_hp2(&ops, &u, tol)?;
    }
    let c = decompose(&ops, &u, tol)?;
    let e = c.energies(&ops);
    ctx.emit(&format!("mean_e,pot_e,stream_e,spurious_e,total\n{}\n", energies_line(&e)))?;
    let total = ops.inner_v(&u, &u);
    let scale = total.max(f64::MIN_POSITIVE);
    let parts = c.parts(&ops);
    let mut orth = 0.0f64;
    for i in 0..4 {
        for j in i + 1..4 {
            orth = orth.max(ops.inner_v(&parts[i], &parts[j]).abs() / scale);
        }
    }
    let mut ok = report("pairwise orthogonality", orth, 1e-9, orth <= 1e-9);
    let pyth = (e.total() - total).abs() / scale;
    ok &= report("energy identity", pyth, 1e-9, pyth <= 1e-9);
    if filter {
        let sp = e.spurious / scale;
        ok &= report("spurious fraction after filter", sp, 1e-18, sp <= 1e-18);
    }
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Init {
    /// Independent uniform coefficients.
    Random,
    /// Balanced flow over a random free surface.
    Geostrophic,
    /// Constant velocity, zero free surface.
    Physical,
    /// Velocity in the spurious subspace, zero free surface.
    Spurious,
    /// Exact inertia-gravity plane wave (f-plane), with error tracking.
    PlaneWave,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Initial condition [default: random].
    #[arg(long, value_enum)]
    init: Option<Init>,
    /// Start from this checkpoint (overrides --init and the mesh options).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write the final state here; the mesh goes next to it.
    #[arg(long)]
    write_checkpoint: Option<PathBuf>,
    /// Project the initial velocity onto H(P2).
    #[arg(long)]
    filter_hp2: bool,
    /// Coriolis parameter at the origin [default: 1].
    #[arg(long)]
    f0: Option<f64>,
    /// Coriolis gradient along y [default: 0].
    #[arg(long)]
    beta: Option<f64>,
    /// Squared gravity-wave speed [default: 1].
    #[arg(long)]
    c2: Option<f64>,
    /// Time step [default: 0.05].
    #[arg(long)]
    dt: Option<f64>,
    /// Number of steps [default: 100].
    #[arg(long)]
    steps: Option<usize>,
    /// Record a row every this many steps [default: 1].
    #[arg(long)]
    every: Option<usize>,
    /// Plane-wave vector, a reciprocal lattice vector of the mesh [default: the first one].
    #[arg(long)]
    k: Option<Pair>,
    /// Relative tolerance of the diagnostic solves [default: 1e-12].
    #[arg(long)]
    tol: Option<f64>,
    /// Also write a plotting script here.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

pub fn run_simulate(ctx: &Ctx, a: &SimulateArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let params = SweParams::new(cfg.pick(a.f0, "f0", 1.0)?, cfg.pick(a.beta, "beta", 0.0)?, cfg.pick(a.c2, "c2", 1.0)?)
        .map_err(|e| usage(e.to_string()))?;
    let dt = cfg.pick(a.dt, "dt", 0.05)?;
    let steps = cfg.pick(a.steps, "steps", 100)?;
    let every = cfg.pick(a.every, "every", 1)?.max(1);
    let tol = cfg.pick(a.tol, "tol", 1e-12)?;
    let checkpoint = cfg.pick_opt(a.checkpoint.clone(), "checkpoint")?;
    let init = cfg.pick(a.init.map(Choice), "init", Choice(Init::Random))?.0;
    let bad = |e: swlab::Error| usage(e.to_string());

    let mut wave = None;
    let (ops, mut s0) = match &checkpoint {
        Some(path) => load_checkpoint(path)?,
        None => {
            let mesh = a.mesh.build(cfg)?;
            let ops = operators(mesh)?;
            let s = match init {
                Init::Random => random_state(&ops, ctx.seed),
                Init::Geostrophic => geostrophic_init(&ops, &random_state(&ops, ctx.seed).eta, &params).map_err(bad)?,
                Init::Physical => inertial_init(&ops, InertialMode::Physical, ctx.seed, tol)?,
                Init::Spurious => inertial_init(&ops, InertialMode::Spurious, ctx.seed, tol)?,
                Init::PlaneWave => {
                    // First reciprocal lattice vector: b·g1 = 2π, b·g2 = 0.
                    let [g1, g2] = ops.mesh.generators();
                    let det = g1[0] * g2[1] - g1[1] * g2[0];
                    let b1 = [std::f64::consts::TAU * g2[1] / det, -std::f64::consts::TAU * g2[0] / det];
                    let k = cfg.pick(a.k, "k", Pair(b1))?.0;
                    let spec = PlaneWaveSpec { k, amplitude: 1.0, sign: 1.0 };
                    let w = PlaneWave::new(spec, &params, ops.mesh.generators()).map_err(bad)?;
                    let eta = collocate_p2(&ops.p2, |x| w.eta(x, 0.0)).into_coeffs();
                    let (ux, uy) = collocate_p2_vector(&ops.p2, |x| w.velocity(x, 0.0));
                    let u = project_p2vec_to_p1dg(&ops.p2, &ops.vel, &ux, &uy)?.into_coeffs();
                    wave = Some(w);
                    State { u, eta, time: 0.0 }
                }
            };
            (ops, s)
        }
    };
    let filter = cfg.switch(a.filter_hp2, "filter-hp2")?;
    if filter {
        s0.u = project_hp2(&ops, &s0.u, tol)?;
    }

    let row = |s: &State<f64>| -> Result<TrajectoryRow<f64>> {
        let components = decompose(&ops, &s.u, tol)?.energies(&ops);
        let eta_l2err = match &wave {
            Some(w) => Some(l2_error_p2(&ops, &s.eta, |x| w.eta(x, s.time))?),
            None => None,
        };
        Ok(TrajectoryRow { t: s.time, energy: energy(&ops, params.c2, s), components, eta_l2err })
    };
    let mut traj = Trajectory { rows: vec![row(&s0)?] };
    let mut stepper = MidpointStepper::new(&ops, params, dt).map_err(bad)?;
    let (mut drift_u, mut drift_eta) = (0.0f64, 0.0f64);
    let mut state = s0.clone();
    for i in 1..=steps {
        state = stepper.step(&state)?;
        drift_u = drift_u.max(max_rel_diff(&state.u, &s0.u));
        drift_eta = drift_eta.max(max_rel_diff(&state.eta, &s0.eta));
        if i % every == 0 || i == steps {
            traj.rows.push(row(&state)?);
        }
    }
    ctx.emit(&traj.to_csv())?;
    if let Some(path) = cfg.pick_opt(a.write_checkpoint.clone(), "write-checkpoint")? {
        let mesh_path = path.with_extension("mesh");
        let mut text = Vec::new();
        swlab::mesh::write_mesh(&ops.mesh, &mut text)?;
        std::fs::write(&mesh_path, text).with_context(|| format!("writing {}", mesh_path.display()))?;
        let name = mesh_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let mut out = Vec::new();
        write_checkpoint(&name, &state, &mut out)?;
        std::fs::write(&path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    ctx.emit_gnuplot(a.gnuplot.as_ref(), |data| {
        format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 't'\nset ylabel 'energy'\n\
             plot for [c=2:6] '{data}' using 1:c with lines\n"
        )
    })?;

    let drift = traj.max_relative_drift();
    let mut ok = report("energy drift", drift, 1e-10, drift <= 1e-10);
    if checkpoint.is_none() && init == Init::Geostrophic && params.beta == 0.0 && !filter {
        ok &= report("geostrophic u drift", drift_u, 1e-10, drift_u <= 1e-10);
        ok &= report("geostrophic eta drift", drift_eta, 1e-10, drift_eta <= 1e-10);
    }
    if checkpoint.is_none() && init == Init::Spurious && params.beta == 0.0 {
        let s_init = traj.rows[0].components.spurious;
        let (mut leak, mut change) = (0.0f64, 0.0f64);
        for r in &traj.rows {
            let c = r.components;
            leak = leak.max((c.mean + c.potential + c.stream) / s_init);
            change = change.max((c.spurious - s_init).abs() / s_init);
        }
        ok &= report("leak out of spurious subspace", leak, 1e-10, leak <= 1e-10);
        ok &= report("spurious energy change", change, 1e-10, change <= 1e-10);
    }
    if filter {
        let worst = traj
            .rows
            .iter()
            .map(|r| r.components.spurious / r.components.total().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        ok &= report("spurious fraction of filtered run", worst, 1e-16, worst <= 1e-16);
    }
    Ok(ok)
}

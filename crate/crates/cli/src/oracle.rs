use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use swlab::bloch::run_oracle;
use swlab::fem::{Operators, QuadratureRule};
use swlab::format::matrix_to_coordinate_text;
use swlab::mesh::write_mesh;

use crate::common::{report, usage, Ctx, MeshArgs};

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Number of random wave vectors in the zone [default: 100].
    #[arg(long)]
    samples: Option<usize>,
    /// Quadrature degree used for assembly (2, 4 or 5) [default: 4].
    #[arg(long)]
    quad_degree: Option<u32>,
    /// Largest accepted entrywise discrepancy [default: 1e-12].
    #[arg(long)]
    tol: Option<f64>,
}

pub fn run_oracle_cmd(ctx: &Ctx, a: &OracleArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let n = cfg.pick(a.samples, "samples", 100)?;
    if n == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let rule = QuadratureRule::<f64>::for_degree(cfg.pick(a.quad_degree, "quad-degree", 4)?)
        .map_err(|e| usage(e.to_string()))?;
    let tol = cfg.pick(a.tol, "tol", 1e-12)?;
    let r = run_oracle(n, ctx.seed, &rule, tol)?;
    ctx.emit(&format!("{r}\n"))?;
    Ok(r.passed())
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    mesh: MeshArgs,
    /// Directory receiving one coordinate-format file per operator.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Quadrature degree used for assembly [default: 4].
    #[arg(long)]
    quad_degree: Option<u32>,
}

pub fn run_dump(ctx: &Ctx, a: &DumpArgs) -> Result<bool> {
    let cfg = &ctx.config;
    let dir = cfg.pick_opt(a.dir.clone(), "dir")?.ok_or_else(|| usage("dump-matrices needs --dir"))?;
    let rule = QuadratureRule::<f64>::for_degree(cfg.pick(a.quad_degree, "quad-degree", 4)?)
        .map_err(|e| usage(e.to_string()))?;
    let mesh = a.mesh.build(cfg)?;
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut mesh_text = Vec::new();
    write_mesh(&mesh, &mut mesh_text)?;
    std::fs::write(dir.join("mesh.txt"), mesh_text)?;
    let ops = Operators::with_rule(std::sync::Arc::new(mesh), &rule)?;
    let mats = [
        ("mass", &ops.mass),
        ("stiffness", &ops.stiffness),
        ("mass_v", &ops.mass_v),
        ("grad", &ops.grad),
        ("perp", &ops.perp),
    ];
    for (name, m) in mats {
        let path = dir.join(format!("{name}.txt"));
        std::fs::write(&path, matrix_to_coordinate_text(m)).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut listing = String::from("name,rows,cols,nnz\n");
    for (name, m) in mats {
        listing.push_str(&format!("{name},{},{},{}\n", m.nrows(), m.ncols(), m.nnz()));
    }
    ctx.emit(&listing)?;
    let asym = ops.mass.asymmetry().max(ops.stiffness.asymmetry()).max(ops.mass_v.asymmetry());
    Ok(report("mass and stiffness asymmetry", asym, 1e-12, asym <= 1e-12))
}

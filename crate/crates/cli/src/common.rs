use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use swlab::f64::Mesh;
use swlab::fem::Operators;
use swlab::mesh::{build_equilateral_torus, build_right_triangle_torus, read_mesh};

use crate::config::Config;

/// Bad arguments or configuration; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Two comma-separated reals, `a,b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pair(pub [f64; 2]);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(format!("expected two comma-separated numbers, got `{s}`"));
        }
        let a = parts[0].parse::<f64>().map_err(|e| e.to_string())?;
        let b = parts[1].parse::<f64>().map_err(|e| e.to_string())?;
        Ok(Pair([a, b]))
    }
}

/// Comma-separated mesh resolutions.
#[derive(Clone, Debug, PartialEq)]
pub struct Levels(pub Vec<usize>);

impl FromStr for Levels {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
            .collect::<std::result::Result<_, _>>()
            .map(Levels)
    }
}

/// Parses a [`ValueEnum`] from config text.
#[derive(Clone, Copy, Debug)]
pub struct Choice<E>(pub E);

impl<E: ValueEnum> FromStr for Choice<E> {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        E::from_str(s, true).map(Choice)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeshKind {
    /// Rhombus of equilateral triangles.
    Equilateral,
    /// Rectangle of right triangles.
    Right,
}

#[derive(Args, Clone, Debug, Default)]
pub struct MeshArgs {
    /// Mesh file to load instead of generating one.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Generated mesh type [default: equilateral].
    #[arg(long, value_enum)]
    pub mesh_kind: Option<MeshKind>,
    /// Cells per side of the generated mesh [default: 8].
    #[arg(long)]
    pub n: Option<usize>,
    /// Side length of the generated domain [default: 1].
    #[arg(long)]
    pub length: Option<f64>,
}

impl MeshArgs {
    pub fn build(&self, cfg: &Config) -> Result<Mesh> {
        if let Some(path) = cfg.pick_opt(self.mesh.clone(), "mesh")? {
            return load_mesh(&path);
        }
        let kind = cfg.pick(self.mesh_kind.map(Choice), "mesh-kind", Choice(MeshKind::Equilateral))?.0;
        let n = cfg.pick(self.n, "n", 8)?;
        let length = cfg.pick(self.length, "length", 1.0)?;
        let mesh = match kind {
            MeshKind::Equilateral => build_equilateral_torus(n, n, length / n as f64),
            MeshKind::Right => build_right_triangle_torus(n, n, length, length),
        };
        mesh.map_err(|e| usage(e.to_string()))
    }
}

pub fn load_mesh(path: &Path) -> Result<Mesh> {
    let file = std::fs::File::open(path).with_context(|| format!("opening mesh {}", path.display()))?;
    read_mesh(std::io::BufReader::new(file)).with_context(|| format!("reading mesh {}", path.display()))
}

pub fn operators(mesh: Mesh) -> Result<Operators<f64>> {
    Ok(Operators::new(mesh)?)
}

/// Run-wide settings shared by every subcommand.
pub struct Ctx {
    pub config: Config,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Ctx {
    /// Writes the primary result to `--output` or stdout.
    pub fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    /// Writes a plotting script for the data file given by `--output`.
    pub fn emit_gnuplot(&self, script_path: Option<&PathBuf>, body: impl FnOnce(&str) -> String) -> Result<()> {
        let Some(script) = script_path else { return Ok(()) };
        let Some(data) = &self.output else {
            return Err(usage("--gnuplot needs --output so the script can refer to the data file"));
        };
        std::fs::write(script, body(&data.display().to_string()))
            .with_context(|| format!("writing {}", script.display()))
    }
}

/// Prints one check line to stderr and returns whether it passed.
pub fn report(name: &str, value: f64, limit: f64, ok: bool) -> bool {
    eprintln!(
        "{} {name} {} (limit {})",
        if ok { "PASS" } else { "FAIL" },
        swlab::format::fmt_g(value, 6),
        swlab::format::fmt_g(limit, 6)
    );
    ok
}

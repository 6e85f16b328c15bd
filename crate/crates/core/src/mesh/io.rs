//! Plain-text mesh format.
//!
//! ```text
//! n_v n_f
//! x y                                  (n_v lines)
//! i j k sx1 sy1 sx2 sy2 sx3 sy3        (n_f lines)
//! g1x g1y
//! g2x g2y
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::scalar::Scalar;

use super::{Mesh, Shift};

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format { kind: "mesh", line, message: message.into() }
}

fn parse_fields<V: std::str::FromStr>(line: usize, text: &str, want: usize, what: &str) -> Result<Vec<V>> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != want {
        return Err(format_err(line, format!("expected {want} fields for {what}, found {}", parts.len())));
    }
    parts
        .iter()
        .map(|p| p.parse::<V>().map_err(|_| format_err(line, format!("cannot parse '{p}' in {what}"))))
        .collect()
}

pub fn write_mesh<T: Scalar, W: Write>(mesh: &Mesh<T>, mut out: W) -> Result<()> {
    let g = |x: T| fmt_g(x.to_f64_lossy(), 17);
    writeln!(out, "{} {}", mesh.n_vertices(), mesh.n_faces())?;
    for v in mesh.vertices() {
        writeln!(out, "{} {}", g(v[0]), g(v[1]))?;
    }
    for (t, s) in mesh.triangles().iter().zip(mesh.shifts()) {
        writeln!(
            out,
            "{} {} {} {} {} {} {} {} {}",
            t[0], t[1], t[2], s[0][0], s[0][1], s[1][0], s[1][1], s[2][0], s[2][1]
        )?;
    }
    for gen in mesh.generators() {
        writeln!(out, "{} {}", g(gen[0]), g(gen[1]))?;
    }
    Ok(())
}

pub fn read_mesh<T: Scalar, R: BufRead>(input: R) -> Result<Mesh<T>> {
    let mut lines = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim().to_string();
        if !body.is_empty() {
            lines.push((i + 1, body));
        }
    }
    let mut it = lines.into_iter();
    let (l0, header) = it.next().ok_or_else(|| format_err(1, "empty mesh file"))?;
    let counts: Vec<usize> = parse_fields(l0, &header, 2, "header 'n_v n_f'")?;
    let (nv, nf) = (counts[0], counts[1]);

    let mut last = l0;
    let mut next = |what: &str| {
        it.next().ok_or_else(|| format_err(last + 1, format!("unexpected end of file while reading {what}"))).map(
            |(l, s)| {
                last = l;
                (l, s)
            },
        )
    };

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, s) = next("vertices")?;
        let xy: Vec<f64> = parse_fields(l, &s, 2, "vertex")?;
        vertices.push([T::lit(xy[0]), T::lit(xy[1])]);
    }
    let mut triangles = Vec::with_capacity(nf);
    let mut shifts = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, s) = next("triangles")?;
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 9 {
            return Err(format_err(l, format!("expected 9 fields for triangle, found {}", parts.len())));
        }
        let mut idx = [0usize; 3];
        for k in 0..3 {
            idx[k] = parts[k].parse().map_err(|_| format_err(l, format!("bad vertex index '{}'", parts[k])))?;
            if idx[k] >= nv {
                return Err(format_err(l, format!("vertex index {} out of range (n_v = {nv})", idx[k])));
            }
        }
        let mut sh: [Shift; 3] = [[0; 2]; 3];
        for k in 0..6 {
            sh[k / 2][k % 2] =
                parts[3 + k].parse().map_err(|_| format_err(l, format!("bad shift component '{}'", parts[3 + k])))?;
        }
        triangles.push(idx);
        shifts.push(sh);
    }
    let mut generators = [[T::zero(); 2]; 2];
    for g in &mut generators {
        let (l, s) = next("generators")?;
        let xy: Vec<f64> = parse_fields(l, &s, 2, "generator")?;
        *g = [T::lit(xy[0]), T::lit(xy[1])];
    }
    if let Some((l, _)) = it.next() {
        return Err(format_err(l, "trailing content after generators"));
    }
    Mesh::new(vertices, triangles, shifts, generators)
}

//! Text checkpoints:
//!
//! ```text
//! mesh <path>
//! time <t>
//! u <n>
//! <n values>
//! eta <m>
//! <m values>
//! ```
//!
//! Values are written with 17 significant digits; blank lines and `#`
//! comments are ignored.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::scalar::Scalar;

use super::stepper::State;

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Format { kind: "checkpoint", line, message: message.into() }
}

pub fn write_checkpoint<T: Scalar, W: Write>(mesh_path: &str, state: &State<T>, mut out: W) -> Result<()> {
    if mesh_path.trim().is_empty() || mesh_path.contains('\n') {
        return Err(Error::invalid("mesh path must be a nonempty single line"));
    }
    let g = |x: T| fmt_g(x.to_f64_lossy(), 17);
    writeln!(out, "mesh {}", mesh_path.trim())?;
    writeln!(out, "time {}", g(state.time))?;
    for (name, v) in [("u", &state.u), ("eta", &state.eta)] {
        writeln!(out, "{name} {}", v.len())?;
        for &x in v {
            writeln!(out, "{}", g(x))?;
        }
    }
    Ok(())
}

/// Returns the mesh path and the stored state.
pub fn read_checkpoint<T: Scalar, R: BufRead>(input: R) -> Result<(String, State<T>)> {
    let mut lines = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim().to_string();
        if !body.is_empty() {
            lines.push((i + 1, body));
        }
    }
    let mut it = lines.into_iter();
    let mut last = 0;
    let mut next = |what: &str| -> Result<(usize, String)> {
        let (l, s) =
            it.next().ok_or_else(|| format_err(last + 1, format!("unexpected end of file while reading {what}")))?;
        last = l;
        Ok((l, s))
    };
    let keyed = |(l, s): (usize, String), key: &str| -> Result<(usize, String)> {
        match s.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok((l, rest.trim().to_string())),
            _ => Err(format_err(l, format!("expected '{key} ...'"))),
        }
    };
    let number = |l: usize, s: &str| -> Result<T> {
        s.parse::<f64>().map(T::lit).map_err(|_| format_err(l, format!("cannot parse '{s}' as a number")))
    };
    let (_, mesh) = keyed(next("mesh")?, "mesh")?;
    let (lt, t) = keyed(next("time")?, "time")?;
    let time = number(lt, &t)?;
    let mut vectors = Vec::new();
    for key in ["u", "eta"] {
        let (l, n) = keyed(next(key)?, key)?;
        let n: usize = n.parse().map_err(|_| format_err(l, format!("cannot parse '{n}' as a count")))?;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            let (l, s) = next(key)?;
            v.push(number(l, &s)?);
        }
        vectors.push(v);
    }
    if let Some((l, _)) = it.next() {
        return Err(format_err(l, "trailing content after eta block"));
    }
    let eta = vectors.pop().expect("two blocks");
    let u = vectors.pop().expect("two blocks");
    Ok((mesh, State { u, eta, time }))
}

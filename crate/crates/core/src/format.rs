//! Text output helpers: C-style `%.Ng` number formatting and the coordinate
//! matrix format (`n_rows n_cols nnz` header, then `row col value` lines).

use std::fmt::Write as _;

use crate::linalg::SparseMatrix;
use crate::scalar::Scalar;

/// Formats `x` like C's `printf("%.{precision}g", x)`.
pub fn fmt_g(x: f64, precision: usize) -> String {
    let p = precision.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Round to p significant digits first; the exponent of the rounded value
    // decides between fixed and scientific notation.
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes a sparse matrix in coordinate text format with `%.17g` values.
pub fn matrix_to_coordinate_text<T: Scalar>(a: &SparseMatrix<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", a.nrows(), a.ncols(), a.nnz());
    for (r, c, v) in a.iter() {
        let _ = writeln!(out, "{} {} {}", r, c, fmt_g(v.to_f64_lossy(), 17));
    }
    out
}

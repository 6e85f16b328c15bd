use std::fmt;

use crate::scalar::Scalar;

use super::Mesh;

/// Outcome of one invariant check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// One message per offending entity (empty when the check passed).
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().flat_map(|c| c.failures.iter().map(String::as_str))
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            for m in &c.failures {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

fn check(name: &'static str, failures: Vec<String>) -> CheckResult {
    CheckResult { name, passed: failures.is_empty(), failures }
}

pub(super) fn validate<T: Scalar>(mesh: &Mesh<T>) -> ValidationReport {
    let (nv, ne, nf) = (mesh.n_vertices() as i64, mesh.n_edges() as i64, mesh.n_faces() as i64);
    let mut checks = Vec::new();

    let area_failures = (0..mesh.n_faces())
        .filter_map(|f| {
            let a = mesh.signed_area(f);
            if a < T::zero() {
                Some(format!("negative area at face {f}"))
            } else if a == T::zero() {
                Some(format!("zero area at face {f}"))
            } else {
                None
            }
        })
        .collect();
    checks.push(check("positive_area", area_failures));

    let edge_failures = mesh
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.faces.len() != 2)
        .map(|(i, e)| {
            let n = e.faces.len();
            format!(
                "edge with {n} adjacent face{} (edge {i}: vertices {} {})",
                if n == 1 { "" } else { "s" },
                e.vertices[0],
                e.vertices[1]
            )
        })
        .collect();
    checks.push(check("two_faces_per_edge", edge_failures));

    let mut count = Vec::new();
    if 2 * ne != 3 * nf {
        count.push(format!("2*n_e = {} but 3*n_f = {}", 2 * ne, 3 * nf));
    }
    checks.push(check("edge_face_count", count));

    let mut euler = Vec::new();
    if nv - ne + nf != 0 {
        euler.push(format!("n_v - n_e + n_f = {} (torus requires 0)", nv - ne + nf));
    }
    checks.push(check("euler_characteristic", euler));

    // Walking along each face edge with the stored relative shift must land
    // on the neighbouring corner's geometric position.
    let tol = T::lit(1e-9) * mesh.domain_area().sqrt();
    let mut wrap = Vec::new();
    for f in 0..mesh.n_faces() {
        let corners = mesh.face_corners(f);
        let t = mesh.triangles()[f];
        for (k, &e) in mesh.face_edges(f).iter().enumerate() {
            let edge = &mesh.edges()[e];
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            let (from, to) = if edge.vertices[0] == t[a] && edge.vertices[1] == t[b] { (a, b) } else { (b, a) };
            let start = mesh.vertices()[edge.vertices[0]];
            let end = mesh.vertices()[edge.vertices[1]];
            let d = mesh.shift_vector(edge.shift);
            let want = [corners[to][0] - corners[from][0], corners[to][1] - corners[from][1]];
            let got = [end[0] + d[0] - start[0], end[1] + d[1] - start[1]];
            let close = |g: [T; 2]| (want[0] - g[0]).abs() <= tol && (want[1] - g[1]).abs() <= tol;
            // A self-loop edge may be walked in either direction.
            let reversed = [-got[0], -got[1]];
            if !(close(got) || (edge.vertices[0] == edge.vertices[1] && close(reversed))) {
                wrap.push(format!("inconsistent periodic shift on edge {e} of face {f}"));
            }
        }
    }
    checks.push(check("periodic_shift_consistency", wrap));

    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use crate::mesh::{build_equilateral_torus, Mesh};

    #[test]
    fn valid_torus_passes_everything() {
        let m = build_equilateral_torus(2, 2, 1.0f64).unwrap();
        let r = m.validate();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn reversed_triangle_is_reported() {
        let m = build_equilateral_torus(3, 3, 1.0f64).unwrap();
        let mut tris = m.triangles().to_vec();
        let mut shifts = m.shifts().to_vec();
        tris[4].swap(1, 2);
        shifts[4].swap(1, 2);
        let bad = Mesh::new(m.vertices().to_vec(), tris, shifts, m.generators()).unwrap();
        let r = bad.validate();
        assert!(!r.passed());
        assert_eq!(r.check("positive_area").unwrap().failures, vec!["negative area at face 4".to_string()]);
    }

    #[test]
    fn deleted_triangle_leaves_open_edges() {
        let m = build_equilateral_torus(3, 3, 1.0f64).unwrap();
        let mut tris = m.triangles().to_vec();
        let mut shifts = m.shifts().to_vec();
        tris.remove(0);
        shifts.remove(0);
        let bad = Mesh::new(m.vertices().to_vec(), tris, shifts, m.generators()).unwrap();
        let r = bad.validate();
        let open = &r.check("two_faces_per_edge").unwrap().failures;
        assert_eq!(open.len(), 3);
        assert!(open.iter().all(|s| s.starts_with("edge with 1 adjacent face")));
        assert!(!r.check("euler_characteristic").unwrap().passed);
    }
}

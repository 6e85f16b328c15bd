use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vec2};

/// Affine triangle: corners, area, and the constant barycentric gradients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementGeometry<T> {
    pub corners: [Vec2<T>; 3],
    pub area: T,
    pub bary_grads: [Vec2<T>; 3],
}

impl<T: Scalar> ElementGeometry<T> {
    /// Requires counter-clockwise corners with positive area.
    pub fn new(corners: [Vec2<T>; 3]) -> Result<Self> {
        let [p0, p1, p2] = corners;
        let det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        if !(det > T::zero()) {
            return Err(Error::invalid("element has non-positive area"));
        }
        let bary_grads = [
            [(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det],
            [(p2[1] - p0[1]) / det, (p0[0] - p2[0]) / det],
            [(p0[1] - p1[1]) / det, (p1[0] - p0[0]) / det],
        ];
        Ok(Self { corners, area: det * T::lit(0.5), bary_grads })
    }

    pub fn point(&self, l: [T; 3]) -> Vec2<T> {
        let c = &self.corners;
        [l[0] * c[0][0] + l[1] * c[1][0] + l[2] * c[2][0], l[0] * c[0][1] + l[1] * c[1][1] + l[2] * c[2][1]]
    }

    /// Barycentric coordinates of a physical point.
    pub fn barycentric(&self, x: Vec2<T>) -> [T; 3] {
        let p0 = self.corners[0];
        let g = &self.bary_grads;
        let d = [x[0] - p0[0], x[1] - p0[1]];
        let l1 = g[1][0] * d[0] + g[1][1] * d[1];
        let l2 = g[2][0] * d[0] + g[2][1] * d[1];
        [T::one() - l1 - l2, l1, l2]
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;

/// Smallest |det| accepted as invertible, relative to the squared entry scale.
const SINGULAR_TOL: f64 = 1e-12;

/// An affine map `p ↦ linear · p + shift`.
///
/// `linear` is stored row-major: `[[a, b], [c, d]]` sends `(x, y)` to
/// `(a x + b y, c x + d y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: [[f64; 2]; 2],
    pub shift: Point,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        linear: [[1.0, 0.0], [0.0, 1.0]],
        shift: Point::ORIGIN,
    };

    /// Builds a map, rejecting (numerically) singular linear parts.
    pub fn new(linear: [[f64; 2]; 2], shift: Point) -> Result<Self> {
        let map = AffineMap { linear, shift };
        if !map.is_invertible() {
            return Err(Error::SingularMap);
        }
        Ok(map)
    }

    /// The unique affine map sending `src[i]` to `dst[i]` for `i = 0, 1, 2`.
    pub fn from_triangles(src: [Point; 3], dst: [Point; 3]) -> Result<Self> {
        let to_src = Self::from_unit_frame(src)?;
        let to_dst = Self::from_unit_frame(dst)?;
        Ok(to_dst.compose(&to_src.inverse()?))
    }

    /// Map sending `(0,0)`, `(1,0)`, `(0,1)` to `frame[0]`, `frame[1]`, `frame[2]`.
    fn from_unit_frame(frame: [Point; 3]) -> Result<Self> {
        let u = frame[1] - frame[0];
        let v = frame[2] - frame[0];
        AffineMap::new([[u.x, v.x], [u.y, v.y]], frame[0])
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.linear;
        a * d - b * c
    }

    fn entry_scale(&self) -> f64 {
        let [[a, b], [c, d]] = self.linear;
        a.abs().max(b.abs()).max(c.abs()).max(d.abs())
    }

    pub fn is_invertible(&self) -> bool {
        let scale = self.entry_scale();
        let det = self.det();
        det.is_finite() && scale > 0.0 && det.abs() > SINGULAR_TOL * scale * scale
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[a, b], [c, d]] = self.linear;
        Point::new(a * p.x + b * p.y + self.shift.x, c * p.x + d * p.y + self.shift.y)
    }

    /// Applies only the linear part (for displacements).
    pub fn apply_vector(&self, v: Point) -> Point {
        let [[a, b], [c, d]] = self.linear;
        Point::new(a * v.x + b * v.y, c * v.x + d * v.y)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::SingularMap);
        }
        let [[a, b], [c, d]] = self.linear;
        let det = self.det();
        let linear = [[d / det, -b / det], [-c / det, a / det]];
        let inv = AffineMap {
            linear,
            shift: Point::ORIGIN,
        };
        let shift = -inv.apply_vector(self.shift);
        Ok(AffineMap { linear, shift })
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let [[a, b], [c, d]] = self.linear;
        let [[e, f], [g, h]] = other.linear;
        AffineMap {
            linear: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
            shift: self.apply(other.shift),
        }
    }

    /// Ratio of the singular values of the linear part.
    pub fn condition_number(&self) -> f64 {
        let [[a, b], [c, d]] = self.linear;
        let frob2 = a * a + b * b + c * c + d * d;
        let det = self.det().abs();
        let disc = (frob2 * frob2 - 4.0 * det * det).max(0.0).sqrt();
        let s_max = ((frob2 + disc) / 2.0).sqrt();
        let s_min = ((frob2 - disc) / 2.0).max(0.0).sqrt();
        if s_min == 0.0 {
            f64::INFINITY
        } else {
            s_max / s_min
        }
    }

    /// 3×3 homogeneous matrix.
    pub fn homogeneous(&self) -> [[f64; 3]; 3] {
        let [[a, b], [c, d]] = self.linear;
        [[a, b, self.shift.x], [c, d, self.shift.y], [0.0, 0.0, 1.0]]
    }
}

impl Default for AffineMap {
    fn default() -> Self {
        Self::IDENTITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn assert_point_eq(a: Point, b: Point) {
        assert_relative_eq!(a.x, b.x, epsilon = 1e-12);
        assert_relative_eq!(a.y, b.y, epsilon = 1e-12);
    }

    #[test]
    fn triangle_to_triangle() {
        let src = [Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)];
        let dst = [Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)];
        let map = AffineMap::from_triangles(src, dst).unwrap();
        for (s, d) in src.iter().zip(dst) {
            assert_point_eq(map.apply(*s), d);
        }
        assert_eq!(map.linear, [[1.0, 0.0], [1.0, 1.0]]);
    }

    #[test]
    fn inverse_round_trip() {
        let map = AffineMap::new([[2.0, 1.0], [-0.5, 3.0]], Point::new(4.0, -1.0)).unwrap();
        let inv = map.inverse().unwrap();
        let p = Point::new(0.3, 7.0);
        assert_point_eq(inv.apply(map.apply(p)), p);
        let id = map.compose(&inv);
        assert_point_eq(id.apply(p), p);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            AffineMap::new([[1.0, 2.0], [2.0, 4.0]], Point::ORIGIN),
            Err(Error::SingularMap)
        );
        let collinear = [Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)];
        assert!(AffineMap::from_triangles(collinear, collinear).is_err());
    }

    #[test]
    fn condition_number_of_diagonal() {
        let map = AffineMap::new([[5.0, 0.0], [0.0, -0.5]], Point::ORIGIN).unwrap();
        assert_relative_eq!(map.condition_number(), 10.0, epsilon = 1e-12);
        assert_relative_eq!(AffineMap::IDENTITY.condition_number(), 1.0);
    }
}

//! General conic algebra.
//!
//! A conic is stored as the six coefficients of
//! `A x² + B xy + C y² + D x + E y + F = 0`. Scalar multiples describe the same
//! point set; [`ConicCoeffs::canonical`] picks the representative with unit
//! Euclidean norm and a positive leading quadratic coefficient.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::point::Point;

/// Relative size a discriminant must exceed its own rounding noise by.
const NONDEGENERACY_TOL: f64 = 1e-12;

/// Coefficients `(A, B, C, D, E, F)` of a general conic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 6]", into = "[f64; 6]")]
pub struct ConicCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// `Δ = 4AC − B²` and `δ = CD² + AE² − BDE − FΔ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicDiscriminants {
    pub big_delta: f64,
    pub small_delta: f64,
}

/// Center, semi-axes and orientation of a real ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseGeometry {
    pub center: Point,
    /// Semi-major axis length.
    pub a: f64,
    /// Semi-minor axis length.
    pub b: f64,
    /// Direction of the major axis in radians, in `[0, π)`.
    pub angle: f64,
}

impl EllipseGeometry {
    /// Point at eccentric angle `theta` on the boundary.
    pub fn point_at(&self, theta: f64) -> Point {
        let (sin_r, cos_r) = self.angle.sin_cos();
        let (u, v) = (self.a * theta.cos(), self.b * theta.sin());
        Point::new(
            self.center.x + u * cos_r - v * sin_r,
            self.center.y + u * sin_r + v * cos_r,
        )
    }

    pub fn area(&self) -> f64 {
        PI * self.a * self.b
    }
}

/// Parametric line `anchor + u · direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    anchor: Point,
    direction: Point,
}

impl Line {
    pub fn new(anchor: Point, direction: Point) -> Result<Self> {
        if direction.norm() == 0.0 || !direction.is_finite() || !anchor.is_finite() {
            return Err(Error::DegenerateLine);
        }
        Ok(Line { anchor, direction })
    }

    /// Line through `from` (u = 0) and `to` (u = 1).
    pub fn through(from: Point, to: Point) -> Result<Self> {
        Line::new(from, to - from)
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn direction(&self) -> Point {
        self.direction
    }

    pub fn at(&self, u: f64) -> Point {
        self.anchor + self.direction * u
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TangencyStatus {
    Tangent,
    Secant,
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyResult {
    pub status: TangencyStatus,
    /// Touching point; present iff `status` is tangent.
    pub point: Option<Point>,
    /// Line parameter of the touching point.
    pub param: Option<f64>,
    /// `|β² − 4αγ| / max(|α|, |β|, |γ|)²` for the restricted quadratic.
    pub residual: f64,
}

impl ConicCoeffs {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        Self::try_from([a, b, c, d, e, f])
    }

    /// Builds `A(x−h)² + B(x−h)(y−k) + C(y−k)² = R` expanded to general form.
    pub fn from_centered(center: Point, a: f64, b: f64, c: f64, rhs: f64) -> Result<Self> {
        let Point { x: h, y: k } = center;
        Self::new(
            a,
            b,
            c,
            -2.0 * a * h - b * k,
            -b * h - 2.0 * c * k,
            a * h * h + b * h * k + c * k * k - rhs,
        )
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let [a, b, c, d, e, f] = self.to_array().map(|v| v * lambda);
        ConicCoeffs { a, b, c, d, e, f }
    }

    fn norm(&self) -> f64 {
        self.to_array().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Unit-norm representative whose first significant quadratic coefficient is positive.
    pub fn canonical(&self) -> Self {
        let norm = self.norm();
        let lead = [self.a, self.b, self.c]
            .into_iter()
            .find(|v| v.abs() > 1e-15 * norm)
            .unwrap_or(self.a);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        self.scaled(sign / norm)
    }

    /// Equality up to a nonzero scalar: compares canonical forms entrywise.
    pub fn approx_eq(&self, other: &ConicCoeffs, tol: f64) -> bool {
        self.canonical()
            .to_array()
            .iter()
            .zip(other.canonical().to_array())
            .all(|(x, y)| (x - y).abs() <= tol)
    }

    /// Discriminants of the raw (uncanonicalized) coefficients.
    pub fn discriminants(&self) -> ConicDiscriminants {
        let ConicCoeffs { a, b, c, d, e, f } = *self;
        let big_delta = 4.0 * a * c - b * b;
        let small_delta = c * d * d + a * e * e - b * d * e - f * big_delta;
        ConicDiscriminants {
            big_delta,
            small_delta,
        }
    }

    /// `Δ > 0` and `δ > 0` on the canonical form, each beyond the rounding
    /// noise of the terms it is built from.
    pub fn is_real_ellipse(&self) -> bool {
        let k = self.canonical();
        let ConicCoeffs { a, b, c, d, e, f } = k;
        if !k.to_array().iter().all(|v| v.is_finite()) {
            return false;
        }
        let ConicDiscriminants {
            big_delta,
            small_delta,
        } = k.discriminants();
        let big_scale = 4.0 * (a * c).abs() + b * b;
        let small_scale =
            (c * d * d).abs() + (a * e * e).abs() + (b * d * e).abs() + (f * big_delta).abs();
        big_delta > NONDEGENERACY_TOL * big_scale && small_delta > NONDEGENERACY_TOL * small_scale
    }

    /// Center, axes and orientation via the 2×2 quadratic-form eigenproblem.
    pub fn geometry(&self) -> Result<EllipseGeometry> {
        if !self.is_real_ellipse() {
            return Err(Error::NotAnEllipse);
        }
        let k = self.canonical();
        let ConicCoeffs { a, b, c, d, e, .. } = k;
        let ConicDiscriminants {
            big_delta,
            small_delta,
        } = k.discriminants();
        let center = Point::new((b * e - 2.0 * c * d) / big_delta, (b * d - 2.0 * a * e) / big_delta);
        // Value of the form at the center is −δ/Δ.
        let level = small_delta / big_delta;
        let half_trace = 0.5 * (a + c);
        let radius = (0.5 * (a - c)).hypot(0.5 * b);
        let lambda_max = half_trace + radius;
        let lambda_min = 0.25 * big_delta / lambda_max;
        let major = (level / lambda_min).sqrt();
        let minor = (level / lambda_max).sqrt();
        let mut angle = 0.5 * b.atan2(a - c) + 0.5 * PI;
        if angle >= PI {
            angle -= PI;
        }
        Ok(EllipseGeometry {
            center,
            a: major,
            b: minor,
            angle,
        })
    }

    /// `π a b = 2πδ / Δ^{3/2}`.
    pub fn area(&self) -> Result<f64> {
        if !self.is_real_ellipse() {
            return Err(Error::NotAnEllipse);
        }
        Ok(PI * self.semi_axes_product_sq().sqrt())
    }

    /// `a²b² = 4δ²/Δ³`, invariant under scaling of the coefficients.
    pub fn semi_axes_product_sq(&self) -> f64 {
        let ConicDiscriminants {
            big_delta,
            small_delta,
        } = self.discriminants();
        4.0 * small_delta * small_delta / (big_delta * big_delta * big_delta)
    }

    /// Value of the canonical form at `p`.
    pub fn eval(&self, p: Point) -> f64 {
        self.canonical().eval_raw(p)
    }

    pub fn eval_raw(&self, p: Point) -> f64 {
        let ConicCoeffs { a, b, c, d, e, f } = *self;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// Classifies `line` against the conic from the discriminant of the
    /// restricted quadratic `α u² + β u + γ`.
    pub fn line_tangency(&self, line: &Line, tol: f64) -> Result<TangencyResult> {
        let k = self.canonical();
        let ConicCoeffs { a, b, c, d, e, .. } = k;
        let p = line.anchor();
        let v = line.direction();
        let alpha = a * v.x * v.x + b * v.x * v.y + c * v.y * v.y;
        let beta = 2.0 * a * p.x * v.x + b * (p.x * v.y + p.y * v.x) + 2.0 * c * p.y * v.y + d * v.x + e * v.y;
        let gamma = k.eval_raw(p);
        let scale = alpha.abs().max(beta.abs()).max(gamma.abs());
        if scale == 0.0 || alpha == 0.0 {
            return Err(Error::NotAnEllipse);
        }
        let rel = (beta * beta - 4.0 * alpha * gamma) / (scale * scale);
        let residual = rel.abs();
        let result = if residual <= tol {
            let u = -beta / (2.0 * alpha);
            TangencyResult {
                status: TangencyStatus::Tangent,
                point: Some(line.at(u)),
                param: Some(u),
                residual,
            }
        } else {
            TangencyResult {
                status: if rel > 0.0 {
                    TangencyStatus::Secant
                } else {
                    TangencyStatus::Disjoint
                },
                point: None,
                param: None,
                residual,
            }
        };
        Ok(result)
    }

    /// Conic of the image `{T(p) : c(p) = 0}`, canonicalized.
    pub fn pushforward(&self, map: &AffineMap) -> Result<Self> {
        let h = map.inverse()?.homogeneous();
        let ConicCoeffs { a, b, c, d, e, f } = *self;
        let k = [
            [a, 0.5 * b, 0.5 * d],
            [0.5 * b, c, 0.5 * e],
            [0.5 * d, 0.5 * e, f],
        ];
        // Hᵀ K H
        let mut kh = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                kh[i][j] = (0..3).map(|m| k[i][m] * h[m][j]).sum();
            }
        }
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|m| h[m][i] * kh[m][j]).sum();
            }
        }
        let image = ConicCoeffs::new(
            out[0][0],
            out[0][1] + out[1][0],
            out[1][1],
            out[0][2] + out[2][0],
            out[1][2] + out[2][1],
            out[2][2],
        )?;
        Ok(image.canonical())
    }
}

impl TryFrom<[f64; 6]> for ConicCoeffs {
    type Error = Error;

    fn try_from([a, b, c, d, e, f]: [f64; 6]) -> Result<Self> {
        if ![a, b, c, d, e, f].iter().all(|v| v.is_finite()) || (a == 0.0 && b == 0.0 && c == 0.0) {
            return Err(Error::DegenerateConic);
        }
        Ok(ConicCoeffs { a, b, c, d, e, f })
    }
}

impl From<ConicCoeffs> for [f64; 6] {
    fn from(c: ConicCoeffs) -> Self {
        c.to_array()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_circle() -> ConicCoeffs {
        ConicCoeffs::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap()
    }

    fn family_2_2() -> ConicCoeffs {
        ConicCoeffs::new(4.0, -2.0, 4.0, -4.0, -4.0, 1.0).unwrap()
    }

    fn trapezoid_example() -> ConicCoeffs {
        ConicCoeffs::new(1.0, -3.0, 6.25, -1.0, -2.5, 0.25).unwrap()
    }

    #[test]
    fn discriminant_values() {
        let d = trapezoid_example().discriminants();
        assert_relative_eq!(d.big_delta, 16.0);
        assert_relative_eq!(d.small_delta, 16.0);
        let d = unit_circle().discriminants();
        assert_eq!((d.big_delta, d.small_delta), (4.0, 4.0));
        let lines = ConicCoeffs::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(lines.discriminants().big_delta, -4.0);
        let d = family_2_2().discriminants();
        assert_eq!((d.big_delta, d.small_delta), (60.0, 100.0));
    }

    #[test]
    fn ellipse_test() {
        assert!(unit_circle().is_real_ellipse());
        assert!(family_2_2().is_real_ellipse());
        assert!(!ConicCoeffs::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0).unwrap().is_real_ellipse());
        // imaginary ellipse and a single point
        assert!(!ConicCoeffs::new(1.0, 0.0, 1.0, 0.0, 0.0, 1.0).unwrap().is_real_ellipse());
        assert!(!ConicCoeffs::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0).unwrap().is_real_ellipse());
        // parabola
        assert!(!ConicCoeffs::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap().is_real_ellipse());
        assert!(unit_circle().scaled(-3.0).is_real_ellipse());
    }

    #[test]
    fn rejects_degenerate_coefficients() {
        assert_eq!(ConicCoeffs::new(0.0, 0.0, 0.0, 1.0, 1.0, 1.0), Err(Error::DegenerateConic));
        assert!(ConicCoeffs::new(f64::NAN, 0.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn geometry_values() {
        let g = unit_circle().geometry().unwrap();
        assert_relative_eq!(g.center.x, 0.0);
        assert_relative_eq!(g.a, 1.0, epsilon = 1e-15);
        assert_relative_eq!(g.b, 1.0, epsilon = 1e-15);

        let g = trapezoid_example().geometry().unwrap();
        assert_relative_eq!(g.center.x, 1.25, epsilon = 1e-14);
        assert_relative_eq!(g.center.y, 0.5, epsilon = 1e-14);
        assert_relative_eq!(g.a * g.a * g.b * g.b, 0.25, max_relative = 1e-12);
        assert!(g.a >= g.b);

        let g = family_2_2().geometry().unwrap();
        assert_relative_eq!(g.center.x, 2.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(g.center.y, 2.0 / 3.0, epsilon = 1e-14);
        // 4x² − 2xy + 4y²: major axis along (1, 1)
        assert_relative_eq!(g.angle, PI / 4.0, epsilon = 1e-14);
    }

    #[test]
    fn geometry_axis_aligned() {
        // x²/9 + y²/4 = 1
        let c = ConicCoeffs::new(4.0, 0.0, 9.0, 0.0, 0.0, -36.0).unwrap();
        let g = c.geometry().unwrap();
        assert_relative_eq!(g.a, 3.0, epsilon = 1e-14);
        assert_relative_eq!(g.b, 2.0, epsilon = 1e-14);
        assert_relative_eq!(g.angle, 0.0, epsilon = 1e-14);
        let c = ConicCoeffs::new(9.0, 0.0, 4.0, 0.0, 0.0, -36.0).unwrap();
        assert_relative_eq!(c.geometry().unwrap().angle, PI / 2.0, epsilon = 1e-14);
        assert_eq!(ConicCoeffs::new(1.0, 0.0, -1.0, 0.0, 0.0, -1.0).unwrap().geometry(), Err(Error::NotAnEllipse));
    }

    #[test]
    fn area_values() {
        assert_relative_eq!(unit_circle().area().unwrap(), PI, max_relative = 1e-15);
        assert_relative_eq!(trapezoid_example().area().unwrap(), PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            trapezoid_example().scaled(7.0).area().unwrap(),
            PI / 2.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            trapezoid_example().scaled(-7.0).area().unwrap(),
            PI / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn eval_values() {
        assert_relative_eq!(family_2_2().eval(Point::new(0.5, 0.0)), 0.0, epsilon = 1e-16);
        // coefficient vector (1,0,1,0,0,−1) has norm √3
        assert_relative_eq!(unit_circle().eval(Point::ORIGIN), -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_eq!(unit_circle().eval(Point::new(1.0, 0.0)), 0.0);
    }

    #[test]
    fn tangency_examples() {
        let x_axis = Line::new(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        let y_axis = Line::new(Point::ORIGIN, Point::new(0.0, 1.0)).unwrap();
        let r = family_2_2().line_tangency(&y_axis, 1e-9).unwrap();
        assert_eq!(r.status, TangencyStatus::Tangent);
        let p = r.point.unwrap();
        assert_relative_eq!(p.x, 0.0);
        assert_relative_eq!(p.y, 0.5, epsilon = 1e-15);
        let r = family_2_2().line_tangency(&x_axis, 1e-9).unwrap();
        assert_relative_eq!(r.point.unwrap().x, 0.5, epsilon = 1e-15);

        let far = Line::new(Point::new(2.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert_eq!(unit_circle().line_tangency(&far, 1e-9).unwrap().status, TangencyStatus::Disjoint);
        assert_eq!(unit_circle().line_tangency(&x_axis, 1e-9).unwrap().status, TangencyStatus::Secant);
        assert_eq!(Line::new(Point::ORIGIN, Point::ORIGIN), Err(Error::DegenerateLine));
    }

    #[test]
    fn pushforward_identity_and_round_trip() {
        let c = trapezoid_example();
        let same = c.pushforward(&AffineMap::IDENTITY).unwrap();
        assert!(same.approx_eq(&c, 1e-15));

        let map = AffineMap::new([[2.0, 0.3], [-1.0, 1.5]], Point::new(3.0, -2.0)).unwrap();
        let there = c.pushforward(&map).unwrap();
        let back = there.pushforward(&map.inverse().unwrap()).unwrap();
        assert!(back.approx_eq(&c, 1e-13));
        assert_relative_eq!(
            there.area().unwrap(),
            c.area().unwrap() * map.det().abs(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn pushforward_of_normalized_example() {
        // (0,0),(0,1),(1,0) ↦ (0,0),(0,1),(1,1)
        let map = AffineMap::new([[1.0, 0.0], [1.0, 1.0]], Point::ORIGIN).unwrap();
        let image = family_2_2().pushforward(&map).unwrap();
        let expected =
            ConicCoeffs::from_centered(Point::new(2.0 / 3.0, 4.0 / 3.0), 10.0, -10.0, 4.0, 5.0 / 3.0).unwrap();
        assert!(image.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn canonical_form() {
        let c = unit_circle().scaled(-2.0).canonical();
        assert!(c.a > 0.0);
        assert_relative_eq!(c.to_array().iter().map(|v| v * v).sum::<f64>(), 1.0, epsilon = 1e-15);
        let hyper = ConicCoeffs::new(0.0, -1.0, 0.0, 0.0, 0.0, 1.0).unwrap().canonical();
        assert!(hyper.b > 0.0);
    }
}

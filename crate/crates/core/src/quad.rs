//! Convex quadrilaterals: labeling, diagonals, classification, and affine
//! normalization onto `Q(s,t) = (0,0), (0,1), (s,t), (1,0)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::point::{orient, Point};
use crate::DEFAULT_TOL;

/// Orientation threshold (relative to diameter²) for strict convexity.
const CONVEXITY_TOL: f64 = 1e-12;

/// A strictly convex quadrilateral labeled clockwise.
///
/// Sides are `S1 = A1A2`, `S2 = A2A3`, `S3 = A3A4`, `S4 = A4A1`; diagonals are
/// `D1 = A1A3` and `D2 = A2A4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quadrilateral {
    vertices: [Point; 4],
}

/// Diagonal intersection and diagonal midpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalData {
    pub intersection: Point,
    /// Midpoint of `D1 = A1A3`.
    pub mid_d1: Point,
    /// Midpoint of `D2 = A2A4`.
    pub mid_d2: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "parallelogram")]
    Parallelogram,
    #[serde(rename = "trapezoid")]
    Trapezoid,
    /// Diagonals meet at the midpoint of `D2`.
    #[serde(rename = "mdq-type-1")]
    MdqType1,
    /// Diagonals meet at the midpoint of `D1`.
    #[serde(rename = "mdq-type-2")]
    MdqType2,
    #[serde(rename = "generic")]
    Generic,
}

impl Classification {
    pub const ALL: [Classification; 5] = [
        Classification::Parallelogram,
        Classification::Trapezoid,
        Classification::MdqType1,
        Classification::MdqType2,
        Classification::Generic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Parallelogram => "parallelogram",
            Classification::Trapezoid => "trapezoid",
            Classification::MdqType1 => "mdq-type-1",
            Classification::MdqType2 => "mdq-type-2",
            Classification::Generic => "generic",
        }
    }

    pub fn is_mdq(&self) -> bool {
        matches!(self, Classification::MdqType1 | Classification::MdqType2)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Classification::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown class `{s}`")))
    }
}

impl Quadrilateral {
    /// Orders four points into the canonical clockwise labeling.
    ///
    /// `A1` is the vertex with the smallest y (ties: smallest x).
    pub fn new(points: [Point; 4]) -> Result<Self> {
        if !points.iter().all(|p| p.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        let scale = max_pairwise_distance(&points);
        if scale == 0.0 {
            return Err(Error::CollinearPoints);
        }
        let eps = CONVEXITY_TOL * scale * scale;
        const CYCLES: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
        let cycle = CYCLES.iter().find(|cycle| {
            let turns = turns(cycle.map(|i| points[i]));
            turns.iter().all(|&o| o > eps) || turns.iter().all(|&o| o < -eps)
        });
        let Some(cycle) = cycle else {
            let any_area = (0..4).any(|skip| {
                let tri: Vec<Point> = (0..4).filter(|&i| i != skip).map(|i| points[i]).collect();
                orient(tri[0], tri[1], tri[2]).abs() > eps
            });
            return Err(if any_area {
                Error::NonConvex
            } else {
                Error::CollinearPoints
            });
        };
        let mut ordered = cycle.map(|i| points[i]);
        if signed_area2(&ordered) > 0.0 {
            ordered.reverse();
        }
        let start = (0..4)
            .min_by(|&i, &j| {
                let (p, q) = (ordered[i], ordered[j]);
                p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
            })
            .unwrap_or(0);
        ordered.rotate_left(start);
        Ok(Quadrilateral { vertices: ordered })
    }

    /// Accepts vertices already in clockwise order, keeping their labels.
    pub fn from_labeled(vertices: [Point; 4]) -> Result<Self> {
        if !vertices.iter().all(|p| p.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        let scale = max_pairwise_distance(&vertices);
        let eps = CONVEXITY_TOL * scale * scale;
        if scale == 0.0 || !turns(vertices).iter().all(|&o| o < -eps) {
            return Err(Error::NonConvex);
        }
        Ok(Quadrilateral { vertices })
    }

    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    /// Endpoints of side `S_j`, `j` in `1..=4`.
    pub fn side(&self, j: usize) -> (Point, Point) {
        assert!((1..=4).contains(&j), "side index {j} out of range");
        (self.vertices[j - 1], self.vertices[j % 4])
    }

    pub fn sides(&self) -> [(Point, Point); 4] {
        [1, 2, 3, 4].map(|j| self.side(j))
    }

    pub fn side_midpoints(&self) -> [Point; 4] {
        self.sides().map(|(p, q)| p.midpoint(q))
    }

    pub fn diameter(&self) -> f64 {
        max_pairwise_distance(&self.vertices)
    }

    pub fn diagonal_data(&self) -> DiagonalData {
        let [a1, a2, a3, a4] = self.vertices;
        let d1 = a3 - a1;
        let d2 = a4 - a2;
        let u = (a2 - a1).cross(d2) / d1.cross(d2);
        DiagonalData {
            intersection: a1 + d1 * u,
            mid_d1: a1.midpoint(a3),
            mid_d2: a2.midpoint(a4),
        }
    }

    /// True when the clockwise polygon strictly contains `p`.
    pub fn contains(&self, p: Point) -> bool {
        self.sides().iter().all(|&(a, b)| orient(a, b, p) < 0.0)
    }

    fn sides_parallel(&self, i: usize, j: usize, tol: f64) -> bool {
        let (a, b) = self.side(i);
        let (c, d) = self.side(j);
        let (u, v) = (b - a, d - c);
        u.cross(v).abs() <= tol * u.norm() * v.norm()
    }

    /// Classifies in the current labeling. Parallelism is tested on the sine of
    /// the angle between opposite sides, mdq-ness on `|P − M| ≤ tol · diam`.
    pub fn classify(&self, tol: f64) -> Classification {
        let p13 = self.sides_parallel(1, 3, tol);
        let p24 = self.sides_parallel(2, 4, tol);
        if p13 && p24 {
            return Classification::Parallelogram;
        }
        if p13 || p24 {
            return Classification::Trapezoid;
        }
        let dd = self.diagonal_data();
        let limit = tol * self.diameter();
        if dd.intersection.distance(dd.mid_d2) <= limit {
            Classification::MdqType1
        } else if dd.intersection.distance(dd.mid_d1) <= limit {
            Classification::MdqType2
        } else {
            Classification::Generic
        }
    }

    /// Same quadrilateral with labels advanced: new `A1` is old `A(1+k)`.
    pub fn relabeled(&self, k: usize) -> Quadrilateral {
        let mut vertices = self.vertices;
        vertices.rotate_left(k % 4);
        Quadrilateral { vertices }
    }

    /// Image under `map`, keeping each vertex's label. An orientation-reversing
    /// map is followed by the reversal `A1, A4, A3, A2`, which restores
    /// clockwise order and keeps both diagonals.
    pub fn transformed(&self, map: &AffineMap) -> Quadrilateral {
        let [a1, a2, a3, a4] = self.vertices.map(|p| map.apply(p));
        let vertices = if map.det() < 0.0 {
            [a1, a4, a3, a2]
        } else {
            [a1, a2, a3, a4]
        };
        Quadrilateral { vertices }
    }

    /// Affine normalization onto `Q(s,t)` at the default tolerance.
    pub fn normalize(&self) -> Result<Normalization> {
        self.normalize_with_tol(DEFAULT_TOL)
    }

    /// Sends `A1, A2, A4` to `(0,0), (0,1), (1,0)`. A trapezoid is first
    /// relabeled so its parallel pair is `{S2, S4}`, and `t` is then exactly 1.
    pub fn normalize_with_tol(&self, tol: f64) -> Result<Normalization> {
        let kind = self.classify(tol);
        let quad = match kind {
            Classification::Parallelogram => return Err(Error::Parallelogram),
            Classification::Trapezoid if self.sides_parallel(1, 3, tol) => self.relabeled(1),
            _ => *self,
        };
        let [a1, a2, a3, a4] = quad.vertices;
        let to_normalized = AffineMap::from_triangles(
            [a1, a2, a4],
            [Point::ORIGIN, Point::new(0.0, 1.0), Point::new(1.0, 0.0)],
        )?;
        let image = to_normalized.apply(a3);
        let t = if kind == Classification::Trapezoid { 1.0 } else { image.y };
        let nq = NormalizedQuad::new(image.x, t)?;
        Ok(Normalization {
            quad,
            kind,
            to_normalized,
            nq,
        })
    }
}

/// Result of [`Quadrilateral::normalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    /// The labeling the normalization (and every side index derived from it) uses.
    pub quad: Quadrilateral,
    pub kind: Classification,
    /// User coordinates → normalized coordinates.
    pub to_normalized: AffineMap,
    pub nq: NormalizedQuad,
}

impl Normalization {
    /// Normalized coordinates → user coordinates.
    pub fn to_user(&self) -> AffineMap {
        // from_triangles only yields invertible maps
        self.to_normalized.inverse().expect("normalization map is invertible")
    }
}

/// The pair `(s, t)` with `s, t > 0`, `s + t > 1`, `s ≠ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedQuad {
    s: f64,
    t: f64,
}

impl NormalizedQuad {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        let admissible = s.is_finite() && t.is_finite() && s > 0.0 && t > 0.0 && s + t > 1.0 && s != 1.0;
        if !admissible {
            return Err(Error::InvalidNormalizedQuad { s, t });
        }
        Ok(NormalizedQuad { s, t })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn vertices(&self) -> [Point; 4] {
        [
            Point::ORIGIN,
            Point::new(0.0, 1.0),
            Point::new(self.s, self.t),
            Point::new(1.0, 0.0),
        ]
    }

    pub fn quad(&self) -> Quadrilateral {
        Quadrilateral {
            vertices: self.vertices(),
        }
    }

    /// `MP1 = (0, 1/2)`, `MP2 = (s/2, (1+t)/2)`, `MP3 = ((1+s)/2, t/2)`, `MP4 = (1/2, 0)`.
    pub fn side_midpoints(&self) -> [Point; 4] {
        let (s, t) = (self.s, self.t);
        [
            Point::new(0.0, 0.5),
            Point::new(0.5 * s, 0.5 * (1.0 + t)),
            Point::new(0.5 * (1.0 + s), 0.5 * t),
            Point::new(0.5, 0.0),
        ]
    }

    pub fn diagonal_data(&self) -> DiagonalData {
        let (s, t) = (self.s, self.t);
        DiagonalData {
            intersection: Point::new(s / (s + t), t / (s + t)),
            mid_d1: Point::new(0.5 * s, 0.5 * t),
            mid_d2: Point::new(0.5, 0.5),
        }
    }

    pub fn diameter(&self) -> f64 {
        self.quad().diameter()
    }
}

fn turns(v: [Point; 4]) -> [f64; 4] {
    [0, 1, 2, 3].map(|i| orient(v[i], v[(i + 1) % 4], v[(i + 2) % 4]))
}

fn signed_area2(v: &[Point; 4]) -> f64 {
    (0..4).map(|i| v[i].cross(v[(i + 1) % 4])).sum()
}

fn max_pairwise_distance(points: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.distance(*q));
        }
    }
    best
}

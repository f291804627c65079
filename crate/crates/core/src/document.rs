//! JSON documents read and written by the command-line tool.
//!
//! Input is `{"vertices": [[x, y], [x, y], [x, y], [x, y]]}` in any order.
//! Results echo the vertices in the labeling their side indices refer to, so a
//! result document is itself a valid input document.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inscribed::InscribedEllipse;
use crate::point::Point;
use crate::quad::{Classification, NormalizedQuad, Quadrilateral};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDocument {
    pub vertices: Vec<[f64; 2]>,
}

impl QuadDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("malformed quadrilateral document: {e}")))
    }

    /// Eight numbers `x1 y1 x2 y2 x3 y3 x4 y4`.
    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        if coords.len() != 8 {
            return Err(Error::InvalidConfig(format!("expected 8 coordinates, got {}", coords.len())));
        }
        Ok(QuadDocument {
            vertices: coords.chunks(2).map(|c| [c[0], c[1]]).collect(),
        })
    }

    /// The four points, checked for count and finiteness only.
    pub fn points(&self) -> Result<[Point; 4]> {
        let points: [[f64; 2]; 4] = self
            .vertices
            .clone()
            .try_into()
            .map_err(|v: Vec<_>| Error::InvalidConfig(format!("expected 4 vertices, got {}", v.len())))?;
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("vertex coordinates must be finite".into()));
        }
        Ok(points.map(Point::from))
    }

    pub fn quadrilateral(&self) -> Result<Quadrilateral> {
        Quadrilateral::new(self.points()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedParams {
    pub s: f64,
    pub t: f64,
}

impl From<NormalizedQuad> for NormalizedParams {
    fn from(nq: NormalizedQuad) -> Self {
        NormalizedParams { s: nq.s(), t: nq.t() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalEntry {
    #[serde(flatten)]
    pub ellipse: InscribedEllipse,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub classification: Classification,
    /// Vertices in the labeling used for side indices.
    pub vertices: [Point; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<NormalizedParams>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ellipses: Vec<InscribedEllipse>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal: Option<MaximalEntry>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("classification: {}\n", self.classification));
        out.push_str(&format!("vertices: {}\n", fmt_points(&self.vertices)));
        if let Some(n) = self.normalized {
            out.push_str(&format!("normalized: s = {}, t = {}\n", n.s, n.t));
        }
        for (i, e) in self.ellipses.iter().enumerate() {
            out.push_str(&format!("ellipse {}:\n", i + 1));
            push_ellipse(&mut out, e);
        }
        if let Some(m) = &self.maximal {
            out.push_str("maximal-area ellipse:\n");
            push_ellipse(&mut out, &m.ellipse);
            if let Some(note) = &m.note {
                out.push_str(&format!("  note: {note}\n"));
            }
        }
        out
    }
}

fn fmt_points(points: &[Point]) -> String {
    points.iter().map(|p| format!("({}, {})", p.x, p.y)).collect::<Vec<_>>().join(" ")
}

fn push_ellipse(out: &mut String, e: &InscribedEllipse) {
    let coeffs: Vec<String> = e.coefficients.to_array().iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("  q: {}\n", e.q));
    out.push_str(&format!("  coefficients: {}\n", coeffs.join(" ")));
    out.push_str(&format!("  tangency points: {}\n", fmt_points(&e.tangency_points.0)));
    out.push_str(&format!("  midpoint sides: {}\n", e.midpoint_sides));
    out.push_str(&format!("  area: {}\n", e.area));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documents() {
        let doc = QuadDocument::from_json(r#"{"vertices": [[0,0],[0,1],[2,4],[1,1]]}"#).unwrap();
        assert_eq!(doc.points().unwrap()[2], Point::new(2.0, 4.0));
        let doc = QuadDocument::from_json(r#"{"vertices": [[0,0],[0,1],[2,4]]}"#).unwrap();
        assert!(doc.points().is_err());
        assert!(QuadDocument::from_json(r#"{"vertices": [[0,0],[0,1],[2],[1,1]]}"#).is_err());
        assert!(QuadDocument::from_json("not json").is_err());
        assert!(QuadDocument::from_coords(&[0.0; 7]).is_err());
        let doc = QuadDocument::from_coords(&[0.0, 0.0, 0.0, 1.0, 4.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(doc.vertices[2], [4.0, 1.0]);
    }
}

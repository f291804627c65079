//! Standalone SVG figures of a quadrilateral and some of its inscribed ellipses.

use std::fmt::Write;

use crate::error::Result;
use crate::inscribed::InscribedEllipse;
use crate::point::Point;
use crate::quad::Quadrilateral;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// What the figure shows besides the quadrilateral.
#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub ellipses: Vec<InscribedEllipse>,
    /// Filled dots.
    pub marks: Vec<Point>,
}

/// Renders the quadrilateral (closed polygon), each ellipse, the marked points
/// as filled dots and the side midpoints as hollow dots. The y axis points up.
pub fn render(quad: &Quadrilateral, figure: &Figure) -> Result<String> {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: Point| {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    quad.vertices().into_iter().for_each(&mut grow);
    figure.marks.iter().copied().for_each(&mut grow);
    let mut shapes = Vec::with_capacity(figure.ellipses.len());
    for e in &figure.ellipses {
        let g = e.coefficients.geometry()?;
        let (sin, cos) = g.angle.sin_cos();
        let half_w = (g.a * g.a * cos * cos + g.b * g.b * sin * sin).sqrt();
        let half_h = (g.a * g.a * sin * sin + g.b * g.b * cos * cos).sqrt();
        grow(g.center - Point::new(half_w, half_h));
        grow(g.center + Point::new(half_w, half_h));
        shapes.push(g);
    }
    let size = hi - lo;
    let margin = 0.05 * size.x.max(size.y);
    let (min_x, min_y) = (lo.x - margin, lo.y - margin);
    let (width, height) = (size.x + 2.0 * margin, size.y + 2.0 * margin);
    let diag = size.norm();
    let stroke = 0.003 * diag;
    let dot = 0.01 * diag;

    let mut svg = String::new();
    // fmt::Write into a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{min_x} {min_y} {width} {height}" width="800" height="{}">"#,
        (800.0 * height / width).round()
    );
    let _ = writeln!(svg, r#"<g transform="matrix(1 0 0 -1 0 {})">"#, 2.0 * min_y + height);
    let points: Vec<String> = quad.vertices().iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    let _ = writeln!(
        svg,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="{stroke}"/>"#,
        points.join(" ")
    );
    for (i, g) in shapes.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})" fill="none" stroke="{}" stroke-width="{stroke}"/>"#,
            g.center.x,
            g.center.y,
            g.a,
            g.b,
            g.angle.to_degrees(),
            g.center.x,
            g.center.y,
            PALETTE[i % PALETTE.len()]
        );
    }
    for m in quad.side_midpoints() {
        let _ = writeln!(
            svg,
            r#"<circle cx="{}" cy="{}" r="{dot}" fill="none" stroke="black" stroke-width="{}"/>"#,
            m.x,
            m.y,
            0.5 * stroke
        );
    }
    for p in &figure.marks {
        let _ = writeln!(svg, r#"<circle cx="{}" cy="{}" r="{dot}" fill="black"/>"#, p.x, p.y);
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

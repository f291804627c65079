//! Brute-force checks that do not go through the closed forms they verify:
//! random quadrilaterals per class, grid scans for midpoint tangency, a
//! line-by-line inscribed-ness test, polygonal areas, and the fuzz drivers.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::conic::{ConicCoeffs, Line, TangencyStatus};
use crate::error::{Error, Result};
use crate::inscribed::{self, FamilyParam, SideSet};
use crate::point::Point;
use crate::quad::{Classification, NormalizedQuad, Quadrilateral};
use crate::search;
use crate::DEFAULT_TOL;

/// Distance kept from every degenerate locus (`s = t`, `s + t = 2`, `t = 1`, `s = 1`).
const SAMPLING_MARGIN: f64 = 0.05;
const MAX_CONDITION: f64 = 50.0;
/// Range of `s` and `t` sampled inside the admissible region.
const PARAM_RANGE: (f64, f64) = (0.1, 4.0);
/// Refined midpoint parameters closer than this are the same ellipse.
const SAME_Q: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    /// q-samples per trial.
    pub grid_size: usize,
    pub tol: f64,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.grid_size < 16 {
            return Err(Error::InvalidConfig("grid size must be at least 16".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub vertices: [Point; 4],
    pub q: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub target: String,
    pub config: FuzzConfig,
    pub trials_run: usize,
    /// Trials whose sample was rejected before testing (never counted as violations).
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub max_observed_midpoint_count: usize,
    /// Per-trial observed count → number of trials.
    pub histogram: BTreeMap<usize, usize>,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

/// RNG for one trial; depends only on `(seed, trial)`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn far_from(v: f64, locus: f64) -> bool {
    (v - locus).abs() > SAMPLING_MARGIN
}

/// Samples `(s, t)` in a compact part of the admissible region for `class`.
pub fn random_normalized(rng: &mut impl Rng, class: Classification) -> NormalizedQuad {
    let (lo, hi) = PARAM_RANGE;
    loop {
        let (s, t) = match class {
            Classification::Generic => (rng.random_range(lo..hi), rng.random_range(lo..hi)),
            Classification::MdqType1 => {
                let s = rng.random_range(0.55..hi);
                (s, s)
            }
            Classification::MdqType2 => {
                let s = rng.random_range(0.1..1.9);
                (s, 2.0 - s)
            }
            Classification::Trapezoid => (rng.random_range(lo..hi), 1.0),
            Classification::Parallelogram => unreachable!("parallelograms have no normalized form"),
        };
        let ok = far_from(s, 1.0)
            && s + t > 1.0 + SAMPLING_MARGIN
            && match class {
                Classification::Generic => far_from(s, t) && far_from(s + t, 2.0) && far_from(t, 1.0),
                _ => true,
            };
        if ok {
            if let Ok(nq) = NormalizedQuad::new(s, t) {
                return nq;
            }
        }
    }
}

/// Random affine map with condition number ≤ 50, either orientation.
pub fn random_affine(rng: &mut impl Rng) -> AffineMap {
    let rot = |a: f64| {
        let (s, c) = a.sin_cos();
        [[c, -s], [s, c]]
    };
    let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    let big = rng.random_range(0.2..5.0);
    let kappa = rng.random_range(1.0..MAX_CONDITION);
    let flip = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
    let scale = [[big, 0.0], [0.0, flip * big / kappa]];
    let linear = mul(mul(rot(rng.random_range(0.0..2.0 * PI)), scale), rot(rng.random_range(0.0..2.0 * PI)));
    let shift = Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
    AffineMap::new(linear, shift).expect("sampled map is well conditioned")
}

/// A random parallelogram (for rejection tests).
pub fn random_parallelogram(rng: &mut impl Rng) -> Quadrilateral {
    let map = random_affine(rng);
    let square = [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)].map(|p| map.apply(Point::from(p)));
    Quadrilateral::new(square).expect("image of a square is convex")
}

/// Random quadrilateral of `class` in canonical labeling: a sampled `Q(s,t)`
/// pushed through a random affine map. Maps whose canonical relabeling swaps
/// the mdq type are redrawn.
pub fn random_quad(rng: &mut impl Rng, class: Classification) -> Quadrilateral {
    if class == Classification::Parallelogram {
        return random_parallelogram(rng);
    }
    loop {
        let nq = random_normalized(rng, class);
        let map = random_affine(rng);
        let Ok(quad) = Quadrilateral::new(nq.vertices().map(|p| map.apply(p))) else {
            continue;
        };
        if quad.classify(DEFAULT_TOL) == class {
            return quad;
        }
    }
}

/// Per-side grid argmin of `|P_j(q) − MP_j|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridScanResult {
    pub q: f64,
    pub distance: f64,
}

/// Scans `q = k / grid_size`, `k = 1 .. grid_size − 1`.
pub fn grid_scan_midpoints(nq: &NormalizedQuad, grid_size: usize) -> [GridScanResult; 4] {
    let mids = nq.quad().side_midpoints();
    let mut best = [GridScanResult {
        q: f64::NAN,
        distance: f64::INFINITY,
    }; 4];
    for k in 1..grid_size {
        let q = k as f64 / grid_size as f64;
        let points = inscribed::tangency_points(nq, FamilyParam::new(q).expect("grid is interior"));
        for j in 0..4 {
            let d = points.0[j].distance(mids[j]);
            if d < best[j].distance {
                best[j] = GridScanResult { q, distance: d };
            }
        }
    }
    best
}

/// Grid scan followed by golden-section minimization of the midpoint distance
/// around each grid argmin.
pub fn locate_midpoint_params(nq: &NormalizedQuad, grid_size: usize) -> [f64; 4] {
    let mids = nq.quad().side_midpoints();
    let h = 1.0 / grid_size as f64;
    let scan = grid_scan_midpoints(nq, grid_size);
    [0, 1, 2, 3].map(|j| {
        let neg_dist = |q: f64| match FamilyParam::new(q) {
            Ok(q) => -inscribed::tangency_points(nq, q).0[j].distance(mids[j]),
            Err(_) => f64::NEG_INFINITY,
        };
        let lo = (scan[j].q - h).max(0.0);
        let hi = (scan[j].q + h).min(1.0);
        search::golden_section_max(neg_dist, lo, hi, 1e-15)
    })
}

/// Tangent to every side line with each touching point strictly inside its
/// segment, and centered inside `quad`.
pub fn inscribed_check(c: &ConicCoeffs, quad: &Quadrilateral, tol: f64) -> bool {
    let Ok(geometry) = c.geometry() else {
        return false;
    };
    let sides_ok = quad.sides().iter().all(|&(a, b)| {
        let Ok(line) = Line::through(a, b) else {
            return false;
        };
        match c.line_tangency(&line, tol) {
            Ok(r) if r.status == TangencyStatus::Tangent => r.param.is_some_and(|u| u > tol && u < 1.0 - tol),
            _ => false,
        }
    });
    sides_ok && quad.contains(geometry.center)
}

/// Similarity taking the quad centroid to the origin and its diameter to 1.
pub fn local_frame(quad: &Quadrilateral) -> Result<AffineMap> {
    let v = quad.vertices();
    let centroid = (v[0] + v[1] + v[2] + v[3]) * 0.25;
    let k = 1.0 / quad.diameter();
    AffineMap::new([[k, 0.0], [0.0, k]], -centroid * k)
}

/// Area of the `n`-gon inscribed in the ellipse at equally spaced eccentric angles.
pub fn polygonal_area(c: &ConicCoeffs, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidConfig("polygon needs at least 3 vertices".into()));
    }
    let g = c.geometry()?;
    let pts: Vec<Point> = (0..n).map(|k| g.point_at(2.0 * PI * k as f64 / n as f64)).collect();
    let twice: f64 = (0..n).map(|k| (pts[k] - g.center).cross(pts[(k + 1) % n] - g.center)).sum();
    Ok(0.5 * twice.abs())
}

#[derive(Default)]
struct TrialOutcome {
    count: Option<usize>,
    violations: Vec<Violation>,
    skipped: bool,
}

impl TrialOutcome {
    fn flag(&mut self, trial: usize, quad: &Quadrilateral, q: Option<f64>, detail: impl Into<String>) {
        self.violations.push(Violation {
            trial,
            vertices: quad.vertices(),
            q,
            detail: detail.into(),
        });
    }
}

fn run_trials<F>(target: &str, cfg: &FuzzConfig, trial: F) -> Result<FuzzReport>
where
    F: Fn(usize, &mut ChaCha8Rng) -> TrialOutcome + Sync,
{
    cfg.validate()?;
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(i, &mut trial_rng(cfg.seed, i)))
        .collect();
    let mut report = FuzzReport {
        target: target.to_string(),
        config: *cfg,
        trials_run: cfg.trials,
        skipped: 0,
        violations: Vec::new(),
        max_observed_midpoint_count: 0,
        histogram: BTreeMap::new(),
        elapsed: Duration::ZERO,
    };
    for outcome in outcomes {
        report.skipped += usize::from(outcome.skipped);
        if let Some(count) = outcome.count {
            report.max_observed_midpoint_count = report.max_observed_midpoint_count.max(count);
            *report.histogram.entry(count).or_default() += 1;
        }
        report.violations.extend(outcome.violations);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

pub const NON_PARALLELOGRAMS: [Classification; 4] = [
    Classification::Generic,
    Classification::MdqType1,
    Classification::MdqType2,
    Classification::Trapezoid,
];

/// No inscribed ellipse of a non-parallelogram touches three side midpoints.
///
/// Each trial scans the q-grid plus the four closed-form midpoint parameters
/// and records the largest per-q count of midpoint tangencies.
pub fn fuzz_theorem_t1(cfg: &FuzzConfig) -> Result<FuzzReport> {
    fuzz_theorem_t1_classes(cfg, &NON_PARALLELOGRAMS)
}

/// [`fuzz_theorem_t1`] restricted to the given classes, cycled by trial index.
pub fn fuzz_theorem_t1_classes(cfg: &FuzzConfig, classes: &[Classification]) -> Result<FuzzReport> {
    if classes.is_empty() || classes.contains(&Classification::Parallelogram) {
        return Err(Error::InvalidConfig("theorem fuzz needs non-parallelogram classes".into()));
    }
    run_trials("t1", cfg, |i, rng| {
        let class = classes[i % classes.len()];
        let quad = random_quad(rng, class);
        let mut out = TrialOutcome::default();
        let Ok(norm) = quad.normalize() else {
            out.skipped = true;
            return out;
        };
        let nq = norm.nq;
        let grid = (1..cfg.grid_size).map(|k| k as f64 / cfg.grid_size as f64);
        let special = inscribed::midpoint_solutions(&nq).as_array();
        let mut max = 0;
        for q in grid.chain(special) {
            let Ok(param) = FamilyParam::new(q) else { continue };
            let count = inscribed::count_midpoint_tangencies(&nq, param, cfg.tol);
            if count >= 3 {
                out.flag(i, &quad, Some(q), format!("{count} midpoint tangencies"));
            }
            max = max.max(count);
        }
        out.count = Some(max);
        out
    })
}

/// Expected side sets of the multi-midpoint ellipses for each class.
pub fn expected_multi_midpoint_sides(class: Classification) -> Vec<SideSet> {
    match class {
        Classification::MdqType1 => vec![SideSet::of(&[1, 4]), SideSet::of(&[2, 3])],
        Classification::MdqType2 => vec![SideSet::of(&[1, 2]), SideSet::of(&[3, 4])],
        Classification::Trapezoid => vec![SideSet::of(&[2, 4])],
        Classification::Generic | Classification::Parallelogram => vec![],
    }
}

/// Counts inscribed ellipses tangent at two or more side midpoints, per class.
///
/// The oracle locates each side's midpoint parameter by grid scan and golden
/// refinement, merges coinciding parameters, and compares the resulting side
/// sets with the class expectation and with the analytic solver's output
/// (which must also be inscribed in the user-coordinate quadrilateral).
pub fn fuzz_lemma_counts(cfg: &FuzzConfig, classes: &[Classification]) -> Result<FuzzReport> {
    if classes.is_empty() || classes.contains(&Classification::Parallelogram) {
        return Err(Error::InvalidConfig("counts need non-parallelogram classes".into()));
    }
    run_trials("counts", cfg, |i, rng| {
        let class = classes[i % classes.len()];
        let quad = random_quad(rng, class);
        let mut out = TrialOutcome::default();
        let Ok(norm) = quad.normalize() else {
            out.skipped = true;
            return out;
        };
        let nq = norm.nq;

        let mut candidates: Vec<f64> = Vec::new();
        for q in locate_midpoint_params(&nq, cfg.grid_size) {
            if candidates.iter().all(|c| (c - q).abs() > SAME_Q) {
                candidates.push(q);
            }
        }
        let mut found: Vec<(f64, SideSet)> = candidates
            .into_iter()
            .filter_map(|q| FamilyParam::new(q).ok())
            .map(|q| (q.get(), inscribed::midpoint_sides_at(&nq, q, cfg.tol)))
            .filter(|(_, sides)| sides.len() >= 2)
            .collect();
        found.sort_by_key(|(_, sides)| sides.iter().next());
        out.count = Some(found.len());

        let expected = expected_multi_midpoint_sides(class);
        let found_sides: Vec<SideSet> = found.iter().map(|(_, s)| *s).collect();
        if found_sides != expected {
            out.flag(i, &quad, None, format!("oracle found {found_sides:?}, expected {expected:?}"));
        }

        let analytic = match inscribed::midpoint_tangent_ellipses_for(norm) {
            Ok(a) => a,
            Err(e) => {
                out.flag(i, &quad, None, format!("analytic solver failed: {e}"));
                return out;
            }
        };
        let multi: Vec<_> = analytic.ellipses.iter().filter(|e| e.midpoint_sides.len() >= 2).collect();
        if multi.len() != found.len() {
            out.flag(i, &quad, None, format!("analytic gave {} multi-midpoint ellipses", multi.len()));
        }
        for (e, (q, sides)) in multi.iter().zip(&found) {
            if e.midpoint_sides != *sides || (e.q - q).abs() > SAME_Q {
                out.flag(i, &quad, Some(e.q), format!("analytic {} at q={} vs oracle {sides} at q={q}", e.midpoint_sides, e.q));
            }
        }
        let labeled = analytic.normalization.quad;
        let mids = labeled.side_midpoints();
        let limit = cfg.tol * labeled.diameter();
        // A thin ellipse far from the origin has a badly conditioned general
        // form, so the carried-back conic is checked in a frame centered on the
        // quad and scaled to unit diameter.
        let Ok(frame) = local_frame(&labeled) else {
            out.flag(i, &quad, None, "degenerate local frame");
            return out;
        };
        let framed_quad = labeled.transformed(&frame);
        let to_frame = frame.compose(&analytic.normalization.to_user());
        for e in &analytic.ellipses {
            let framed = FamilyParam::new(e.q)
                .map(|q| inscribed::ellipse_from_q(&analytic.normalization.nq, q))
                .and_then(|c| c.pushforward(&to_frame));
            if !framed.is_ok_and(|c| inscribed_check(&c, &framed_quad, cfg.tol)) {
                out.flag(i, &quad, Some(e.q), "analytic ellipse not inscribed in user coordinates");
            }
            for j in e.midpoint_sides.iter() {
                if e.tangency_points.get(j).distance(mids[j - 1]) > limit {
                    out.flag(i, &quad, Some(e.q), format!("S{j} tangency is not at its midpoint"));
                }
            }
        }
        out
    })
}

/// Affine maps preserve classification. Checks the label-preserving image and
/// the canonically relabeled image (where an odd label shift swaps mdq types).
pub fn fuzz_affine_invariance(cfg: &FuzzConfig, classes: &[Classification]) -> Result<FuzzReport> {
    if classes.is_empty() {
        return Err(Error::InvalidConfig("no classes to sample".into()));
    }
    run_trials("affine", cfg, |i, rng| {
        let class = classes[i % classes.len()];
        let quad = random_quad(rng, class);
        let map = random_affine(rng);
        let mut out = TrialOutcome::default();
        let image = quad.transformed(&map);
        let kind = image.classify(cfg.tol);
        if kind != class {
            out.flag(i, &quad, None, format!("labeled image classified {kind}, expected {class}"));
        }
        let Ok(canonical) = Quadrilateral::new(image.vertices()) else {
            out.flag(i, &quad, None, "image is not a convex quadrilateral");
            return out;
        };
        let shift = image.vertices().iter().position(|v| *v == canonical.vertices()[0]).unwrap_or(0);
        let expected = match class {
            Classification::MdqType1 if shift % 2 == 1 => Classification::MdqType2,
            Classification::MdqType2 if shift % 2 == 1 => Classification::MdqType1,
            other => other,
        };
        let kind = canonical.classify(cfg.tol);
        if kind != expected {
            out.flag(i, &quad, None, format!("canonical image classified {kind}, expected {expected}"));
        }
        out
    })
}

/// On trapezoids `a²b² = (s/4) q (1 − q)` and the numeric maximizer is 1/2.
pub fn fuzz_trapezoid_area(cfg: &FuzzConfig) -> Result<FuzzReport> {
    run_trials("area", cfg, |i, rng| {
        let nq = random_normalized(rng, Classification::Trapezoid);
        let q = rng.random_range(1e-3..1.0 - 1e-3);
        let mut out = TrialOutcome::default();
        let quad = nq.quad();
        let param = FamilyParam::new(q).expect("sampled inside (0,1)");
        let law = nq.s() / 4.0 * q * (1.0 - q);
        let product = inscribed::area_product(&nq, param);
        let rel = ((product - law) / law).abs();
        if rel > cfg.tol {
            out.flag(i, &quad, Some(q), format!("4δ²/Δ³ = {product}, (s/4)q(1−q) = {law}, rel {rel:e}"));
        }
        let q_star = inscribed::maximize_area_numeric(&nq).get();
        if (q_star - 0.5).abs() > cfg.tol {
            out.flag(i, &quad, Some(q_star), format!("numeric maximizer {q_star} is not 1/2"));
        }
        out
    })
}

/// Polygonal area of random family ellipses against `2πδ/Δ^{3/2}`.
pub fn fuzz_polygon_area(cfg: &FuzzConfig, polygon_sides: usize) -> Result<FuzzReport> {
    run_trials("polygon", cfg, |i, rng| {
        let class = NON_PARALLELOGRAMS[i % NON_PARALLELOGRAMS.len()];
        let nq = random_normalized(rng, class);
        let q = rng.random_range(0.01..0.99);
        let c = inscribed::ellipse_from_q(&nq, FamilyParam::new(q).expect("interior"));
        let mut out = TrialOutcome::default();
        match (polygonal_area(&c, polygon_sides), c.area()) {
            (Ok(poly), Ok(exact)) => {
                let rel = ((poly - exact) / exact).abs();
                if rel > cfg.tol || poly > exact {
                    out.flag(i, &nq.quad(), Some(q), format!("polygon {poly} vs formula {exact}"));
                }
            }
            _ => out.flag(i, &nq.quad(), Some(q), "family member is not an ellipse"),
        }
        out
    })
}

/// Family members are real ellipses tangent to all four sides at the closed-form
/// points, strictly inside each side, and distinct for distinct `q`.
pub fn fuzz_family(cfg: &FuzzConfig) -> Result<FuzzReport> {
    run_trials("family", cfg, |i, rng| {
        let class = NON_PARALLELOGRAMS[i % NON_PARALLELOGRAMS.len()];
        let nq = random_normalized(rng, class);
        let q = rng.random_range(0.01..0.99);
        let mut q2 = rng.random_range(0.01..0.99);
        if q2 == q {
            q2 = 1.0 - q;
        }
        let quad = nq.quad();
        let mut out = TrialOutcome::default();
        let param = FamilyParam::new(q).expect("interior");
        let c = inscribed::ellipse_from_q(&nq, param);
        if !c.is_real_ellipse() {
            out.flag(i, &quad, Some(q), "not a real ellipse");
            return out;
        }
        let closed = inscribed::tangency_points(&nq, param);
        let limit = cfg.tol * quad.diameter();
        for (j, &(a, b)) in quad.sides().iter().enumerate() {
            let line = Line::through(a, b).expect("sides are nondegenerate");
            match c.line_tangency(&line, cfg.tol) {
                Ok(r) if r.status == TangencyStatus::Tangent => {
                    let p = r.point.expect("tangent has a point");
                    if p.distance(closed.0[j]) > limit {
                        out.flag(i, &quad, Some(q), format!("S{} touches at {p:?}, closed form {:?}", j + 1, closed.0[j]));
                    }
                    if !r.param.is_some_and(|u| u > 0.0 && u < 1.0) {
                        out.flag(i, &quad, Some(q), format!("S{} tangency outside the segment", j + 1));
                    }
                }
                Ok(r) => out.flag(i, &quad, Some(q), format!("S{} {:?}, residual {:e}", j + 1, r.status, r.residual)),
                Err(e) => out.flag(i, &quad, Some(q), e.to_string()),
            }
        }
        if !inscribed_check(&c, &quad, cfg.tol) {
            out.flag(i, &quad, Some(q), "inscribed check failed");
        }
        let other = inscribed::ellipse_from_q(&nq, FamilyParam::new(q2).expect("interior"));
        let p4 = inscribed::tangency_points(&nq, FamilyParam::new(q2).expect("interior")).get(4);
        if other.approx_eq(&c, 1e-12) || p4.x == closed.get(4).x {
            out.flag(i, &quad, Some(q2), "distinct parameters gave the same ellipse");
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg(trials: usize) -> FuzzConfig {
        FuzzConfig {
            seed: 7,
            trials,
            grid_size: 256,
            tol: 1e-7,
        }
    }

    #[test]
    fn config_validation() {
        assert!(cfg(0).validate().is_err());
        assert!(FuzzConfig { grid_size: 8, ..cfg(1) }.validate().is_err());
        assert!(FuzzConfig { tol: 0.0, ..cfg(1) }.validate().is_err());
        assert!(fuzz_theorem_t1(&cfg(0)).is_err());
    }

    #[test]
    fn random_quads_have_requested_class() {
        let mut rng = trial_rng(1, 0);
        let q = random_quad(&mut rng, Classification::MdqType1);
        let dd = q.diagonal_data();
        assert!(dd.intersection.distance(dd.mid_d2) <= 1e-12 * q.diameter());
        for class in Classification::ALL {
            let mut rng = trial_rng(1, 3);
            assert_eq!(random_quad(&mut rng, class).classify(DEFAULT_TOL), class);
        }
    }

    #[test]
    fn trial_rng_is_deterministic() {
        let a: f64 = trial_rng(5, 11).random();
        let b: f64 = trial_rng(5, 11).random();
        let c: f64 = trial_rng(5, 12).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_affine_is_well_conditioned() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..200 {
            assert!(random_affine(&mut rng).condition_number() <= MAX_CONDITION + 1e-9);
        }
    }

    #[test]
    fn grid_scan_examples() {
        let nq = NormalizedQuad::new(4.0, 1.0).unwrap();
        let scan = grid_scan_midpoints(&nq, 1000);
        assert_relative_eq!(scan[1].q, 0.5, epsilon = 1e-3);
        assert_eq!(scan[3].q, 0.5);
        assert_eq!(scan[3].distance, 0.0);
    }

    #[test]
    fn located_params_match_closed_forms() {
        let nq = NormalizedQuad::new(2.0, 3.0).unwrap();
        let located = locate_midpoint_params(&nq, 512);
        let closed = inscribed::midpoint_solutions(&nq).as_array();
        for (a, b) in located.iter().zip(closed) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn inscribed_check_examples() {
        let quad = NormalizedQuad::new(4.0, 1.0).unwrap().quad();
        let c = ConicCoeffs::new(1.0, -3.0, 6.25, -1.0, -2.5, 0.25).unwrap();
        assert!(inscribed_check(&c, &quad, 1e-9));
        let square = Quadrilateral::new([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)].map(Point::from)).unwrap();
        let big = ConicCoeffs::new(1.0, 0.0, 1.0, 0.0, 0.0, -100.0).unwrap();
        assert!(!inscribed_check(&big, &square, 1e-9));
        let incircle = ConicCoeffs::from_centered(Point::new(0.5, 0.5), 1.0, 0.0, 1.0, 0.25).unwrap();
        assert!(inscribed_check(&incircle, &square, 1e-9));
        // tangent to the side lines but centered outside
        let outside = ConicCoeffs::from_centered(Point::new(0.5, -0.5), 1.0, 0.0, 1.0, 0.25).unwrap();
        assert!(!inscribed_check(&outside, &square, 1e-9));
    }

    #[test]
    fn polygonal_area_examples() {
        let circle = ConicCoeffs::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap();
        assert_relative_eq!(polygonal_area(&circle, 10_000).unwrap(), PI, max_relative = 1e-7);
        let c = ConicCoeffs::new(1.0, -3.0, 6.25, -1.0, -2.5, 0.25).unwrap();
        let exact = c.area().unwrap();
        assert_relative_eq!(polygonal_area(&c, 10_000).unwrap(), PI / 2.0, max_relative = 1e-7);
        let mut prev = 0.0;
        for n in [64, 128, 1000, 4096] {
            let a = polygonal_area(&c, n).unwrap();
            assert!(a >= prev && a <= exact);
            prev = a;
        }
    }

    #[test]
    fn small_fuzz_runs_pass() {
        let t1 = fuzz_theorem_t1(&cfg(40)).unwrap();
        assert!(t1.passed(), "{:?}", t1.violations);
        assert_eq!(t1.max_observed_midpoint_count, 2);
        let counts = fuzz_lemma_counts(&cfg(40), &NON_PARALLELOGRAMS).unwrap();
        assert!(counts.passed(), "{:?}", counts.violations);
        let affine = fuzz_affine_invariance(&FuzzConfig { tol: 1e-9, ..cfg(40) }, &NON_PARALLELOGRAMS).unwrap();
        assert!(affine.passed(), "{:?}", affine.violations);
        let area = fuzz_trapezoid_area(&FuzzConfig { tol: 1e-9, ..cfg(40) }).unwrap();
        assert!(area.passed(), "{:?}", area.violations);
        let family = fuzz_family(&FuzzConfig { tol: 1e-9, ..cfg(40) }).unwrap();
        assert!(family.passed(), "{:?}", family.violations);
    }

    #[test]
    fn minimal_run_is_well_formed() {
        let r = fuzz_theorem_t1(&cfg(1)).unwrap();
        assert_eq!(r.trials_run, 1);
        assert_eq!(r.histogram.values().sum::<usize>(), 1);
    }

    #[test]
    fn counts_reject_parallelograms() {
        assert!(fuzz_lemma_counts(&cfg(4), &[Classification::Parallelogram]).is_err());
    }
}

//! The one-parameter family of ellipses inscribed in `Q(s,t)`, midpoint
//! tangency, and the maximal-area inscribed ellipse.
//!
//! Every ellipse inscribed in `Q(s,t)` touches the bottom side at `(q, 0)` for
//! a unique `q ∈ (0,1)`, and `q` determines the ellipse completely.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::conic::ConicCoeffs;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::quad::{Classification, Normalization, NormalizedQuad, Quadrilateral};
use crate::search;
use crate::DEFAULT_TOL;

/// Uniform samples in the coarse scan before golden-section refinement.
const AREA_SCAN_SAMPLES: usize = 1024;
const GOLDEN_WIDTH: f64 = 1e-12;

/// Family parameter `q ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FamilyParam(f64);

impl FamilyParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(FamilyParam(q))
        } else {
            Err(Error::ParameterOutOfRange(q))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FamilyParam {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        FamilyParam::new(q)
    }
}

impl From<FamilyParam> for f64 {
    fn from(q: FamilyParam) -> f64 {
        q.0
    }
}

/// A subset of the side indices `{1, 2, 3, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SideSet(u8);

impl SideSet {
    pub const EMPTY: SideSet = SideSet(0);

    pub fn of(sides: &[usize]) -> SideSet {
        sides.iter().fold(SideSet::EMPTY, |set, &j| set.with(j))
    }

    pub fn with(self, j: usize) -> SideSet {
        assert!((1..=4).contains(&j), "side index {j} out of range");
        SideSet(self.0 | 1 << (j - 1))
    }

    pub fn contains(self, j: usize) -> bool {
        (1..=4).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=4).filter(move |&j| self.contains(j))
    }

    /// Bit `j − 1` set for each side `j`.
    pub fn bits(self) -> u8 {
        self.0
    }
}

impl TryFrom<Vec<usize>> for SideSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if let Some(bad) = v.iter().find(|j| !(1..=4).contains(*j)) {
            return Err(Error::InvalidConfig(format!("side index {bad} out of range")));
        }
        Ok(SideSet::of(&v))
    }
}

impl From<SideSet> for Vec<usize> {
    fn from(s: SideSet) -> Self {
        s.iter().collect()
    }
}

impl fmt::Display for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|j| format!("S{j}")).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Touching points `P1..P4`, `P_j` on side `S_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencySet(pub [Point; 4]);

impl TangencySet {
    pub fn get(&self, j: usize) -> Point {
        self.0[j - 1]
    }
}

/// The parameters `q_j` at which `P_j` is the midpoint of `S_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MidpointSolutions {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
}

impl MidpointSolutions {
    pub fn as_array(&self) -> [f64; 4] {
        [self.q1, self.q2, self.q3, self.q4]
    }
}

/// An inscribed ellipse reported in user coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InscribedEllipse {
    pub q: f64,
    /// Canonicalized coefficients in user coordinates.
    pub coefficients: ConicCoeffs,
    pub tangency_points: TangencySet,
    /// Sides touched at their midpoints.
    pub midpoint_sides: SideSet,
    pub area: f64,
}

/// Conic of the family member `q` for `Q(s,t)`.
pub fn ellipse_from_q(nq: &NormalizedQuad, q: FamilyParam) -> ConicCoeffs {
    let [a, b, c, d, e, f] = family_coefficients(nq.s(), nq.t(), q.get());
    ConicCoeffs { a, b, c, d, e, f }
}

fn family_coefficients<T>(s: f64, t: f64, q: T) -> [T; 6]
where
    T: Copy + From<f64> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let k = |v: f64| T::from(v);
    let w = (k(1.0) - q) * k(s) + q * k(t);
    [
        k(t * t),
        k(4.0 * (t - 1.0) * t) * q * q + k(2.0 * t * (s - t + 2.0)) * q - k(2.0 * s * t),
        w * w,
        k(-2.0 * t * t) * q,
        k(-2.0 * t) * q * w,
        k(t * t) * q * q,
    ]
}

pub fn tangency_points(nq: &NormalizedQuad, q: FamilyParam) -> TangencySet {
    let (s, t, q) = (nq.s(), nq.t(), q.get());
    let den1 = (t - s) * q + s;
    let den2 = (t - 1.0) * (s + t) * q + s;
    let den3 = (s + t - 2.0) * q + 1.0;
    TangencySet([
        Point::new(0.0, q * t / den1),
        Point::new((1.0 - q) * s * s / den2, t * (s + q * (t - 1.0)) / den2),
        Point::new((s + q * (t - 1.0)) / den3, (1.0 - q) * t / den3),
        Point::new(q, 0.0),
    ])
}

pub fn midpoint_solutions(nq: &NormalizedQuad) -> MidpointSolutions {
    let (s, t) = (nq.s(), nq.t());
    MidpointSolutions {
        q1: s / (s + t),
        q2: s / (t * t + s * t + s - t),
        q3: 1.0 / (s + t),
        q4: 0.5,
    }
}

/// Sides `j` with `|P_j(q) − MP_j| ≤ tol · diam(Q(s,t))`.
pub fn midpoint_sides_at(nq: &NormalizedQuad, q: FamilyParam, tol: f64) -> SideSet {
    let limit = tol * nq.diameter();
    let points = tangency_points(nq, q);
    nq.side_midpoints()
        .iter()
        .enumerate()
        .filter(|(i, m)| points.0[*i].distance(**m) <= limit)
        .fold(SideSet::EMPTY, |set, (i, _)| set.with(i + 1))
}

pub fn count_midpoint_tangencies(nq: &NormalizedQuad, q: FamilyParam, tol: f64) -> usize {
    midpoint_sides_at(nq, q, tol).len()
}

/// `a²b² = 4δ²/Δ³` of the family member `q`.
pub fn area_product(nq: &NormalizedQuad, q: FamilyParam) -> f64 {
    ellipse_from_q(nq, q).semi_axes_product_sq()
}

/// d/dq of `ln(a²b²) = ln 4 + 2 ln δ − 3 ln Δ`, via forward-mode derivatives.
fn log_area_slope(nq: &NormalizedQuad, q: f64) -> f64 {
    let [a, b, c, d, e, f] = family_coefficients(nq.s(), nq.t(), Dual::var(q));
    let big = Dual::from(4.0) * a * c - b * b;
    let small = c * d * d + a * e * e - b * d * e - f * big;
    2.0 * small.d / small.v - 3.0 * big.d / big.v
}

/// Maximizer of `a²b²` over `(0, 1)` by a 1024-sample scan, golden-section
/// refinement, and a final bisection on the sign of the log-derivative.
pub fn maximize_area_numeric(nq: &NormalizedQuad) -> FamilyParam {
    let objective = |q: f64| match FamilyParam::new(q) {
        Ok(q) => area_product(nq, q),
        Err(_) => f64::NEG_INFINITY,
    };
    let (lo, hi) = search::scan_bracket(objective, 0.0, 1.0, AREA_SCAN_SAMPLES);
    let golden = search::golden_section_max(objective, lo, hi, GOLDEN_WIDTH);
    // a²b² is flat at its peak, so comparing values cannot resolve q beyond
    // ~1e-8; the slope changes sign cleanly.
    let (lo, hi) = (lo.max(f64::EPSILON), hi.min(1.0 - f64::EPSILON));
    let q = search::bisect_descending(|q| log_area_slope(nq, q), lo, hi).unwrap_or(golden);
    FamilyParam(q)
}

/// Maximizer of `a²b²`: exactly `1/2` on trapezoids (`t = 1`, where
/// `a²b² = (s/4) q (1 − q)`), numeric otherwise.
pub fn maximize_area(nq: &NormalizedQuad) -> FamilyParam {
    if nq.t() == 1.0 {
        FamilyParam(0.5)
    } else {
        maximize_area_numeric(nq)
    }
}

fn carry_to_user(norm: &Normalization, q: FamilyParam, midpoint_sides: SideSet) -> Result<InscribedEllipse> {
    let to_user = norm.to_user();
    let conic = ellipse_from_q(&norm.nq, q);
    let normalized_area = conic.area()?;
    let points = tangency_points(&norm.nq, q).0.map(|p| to_user.apply(p));
    Ok(InscribedEllipse {
        q: q.get(),
        coefficients: conic.pushforward(&to_user)?,
        tangency_points: TangencySet(points),
        midpoint_sides,
        area: normalized_area * to_user.det().abs(),
    })
}

/// Member `q` of the inscribed family of `quad`, in user coordinates.
pub fn family_ellipse(norm: &Normalization, q: FamilyParam) -> Result<InscribedEllipse> {
    carry_to_user(norm, q, midpoint_sides_at(&norm.nq, q, DEFAULT_TOL))
}

/// Midpoint-tangent ellipses of a non-parallelogram, with the labeling used.
#[derive(Debug, Clone, PartialEq)]
pub struct MidpointEllipses {
    pub normalization: Normalization,
    pub ellipses: Vec<InscribedEllipse>,
}

/// All inscribed ellipses tangent at a side midpoint, grouped by the exact
/// coincidence conditions: type-1 mdq gives `{1,4}` and `{2,3}`, type-2 mdq
/// `{1,2}` and `{3,4}`, a trapezoid `{2,4}`, and a generic quadrilateral four
/// single-midpoint ellipses.
pub fn midpoint_tangent_ellipses(quad: &Quadrilateral) -> Result<MidpointEllipses> {
    let normalization = quad.normalize()?;
    midpoint_tangent_ellipses_for(normalization)
}

pub fn midpoint_tangent_ellipses_for(normalization: Normalization) -> Result<MidpointEllipses> {
    let sol = midpoint_solutions(&normalization.nq);
    let groups: Vec<(f64, SideSet)> = match normalization.kind {
        Classification::Parallelogram => return Err(Error::Parallelogram),
        Classification::MdqType1 => vec![(sol.q4, SideSet::of(&[1, 4])), (sol.q3, SideSet::of(&[2, 3]))],
        Classification::MdqType2 => vec![(sol.q1, SideSet::of(&[1, 2])), (sol.q4, SideSet::of(&[3, 4]))],
        Classification::Trapezoid => vec![(0.5, SideSet::of(&[2, 4]))],
        Classification::Generic => sol
            .as_array()
            .into_iter()
            .enumerate()
            .map(|(i, q)| (q, SideSet::of(&[i + 1])))
            .collect(),
    };
    let ellipses = groups
        .into_iter()
        .map(|(q, sides)| carry_to_user(&normalization, FamilyParam::new(q)?, sides))
        .collect::<Result<Vec<_>>>()?;
    Ok(MidpointEllipses {
        normalization,
        ellipses,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxAreaEllipse {
    pub normalization: Normalization,
    pub ellipse: InscribedEllipse,
    /// Area of the maximizer inside `Q(s,t)`.
    pub normalized_area: f64,
}

pub fn max_area_ellipse(quad: &Quadrilateral) -> Result<MaxAreaEllipse> {
    max_area_ellipse_for(quad.normalize()?)
}

pub fn max_area_ellipse_for(normalization: Normalization) -> Result<MaxAreaEllipse> {
    if normalization.kind == Classification::Parallelogram {
        return Err(Error::Parallelogram);
    }
    let q = maximize_area(&normalization.nq);
    let sides = if normalization.kind == Classification::Trapezoid {
        SideSet::of(&[2, 4])
    } else {
        midpoint_sides_at(&normalization.nq, q, DEFAULT_TOL)
    };
    let ellipse = carry_to_user(&normalization, q, sides)?;
    let normalized_area = ellipse_from_q(&normalization.nq, q).area()?;
    Ok(MaxAreaEllipse {
        normalization,
        ellipse,
        normalized_area,
    })
}

/// Value and first derivative.
#[derive(Debug, Clone, Copy)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }
}

impl From<f64> for Dual {
    fn from(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

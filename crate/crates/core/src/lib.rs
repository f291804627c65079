//! Ellipses inscribed in convex quadrilaterals.
//!
//! Every convex quadrilateral that is not a parallelogram is affinely
//! equivalent to `Q(s,t) = (0,0), (0,1), (s,t), (1,0)`, whose inscribed
//! ellipses form a one-parameter family indexed by `q ∈ (0,1)`. This crate
//! builds that family, finds the members tangent at side midpoints, finds the
//! member of maximal area, and ships a brute-force [`oracle`] that checks all
//! of it independently.

pub mod affine;
pub mod cli;
pub mod conic;
pub mod document;
pub mod error;
pub mod inscribed;
pub mod oracle;
pub mod point;
pub mod quad;
pub mod search;
pub mod svg;

pub use affine::AffineMap;
pub use conic::{ConicCoeffs, ConicDiscriminants, EllipseGeometry, Line, TangencyResult, TangencyStatus};
pub use error::{Error, Result};
pub use inscribed::{FamilyParam, InscribedEllipse, MidpointSolutions, SideSet, TangencySet};
pub use point::Point;
pub use quad::{Classification, DiagonalData, NormalizedQuad, Normalization, Quadrilateral};

/// Default relative tolerance for classification and algebraic identities.
pub const DEFAULT_TOL: f64 = 1e-9;

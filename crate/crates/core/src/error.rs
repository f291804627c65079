use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("conic has no quadratic part")]
    DegenerateConic,
    #[error("conic is not a real nondegenerate ellipse")]
    NotAnEllipse,
    #[error("line direction is zero")]
    DegenerateLine,
    #[error("affine map is singular")]
    SingularMap,
    #[error("points do not form a convex quadrilateral")]
    NonConvex,
    #[error("input coordinates must be finite")]
    NonFiniteInput,
    #[error("points are collinear or coincident")]
    CollinearPoints,
    #[error("quadrilateral is a parallelogram")]
    Parallelogram,
    #[error("family parameter q = {0} is outside (0, 1)")]
    ParameterOutOfRange(f64),
    #[error("(s, t) = ({s}, {t}) is not an admissible normalized quadrilateral")]
    InvalidNormalizedQuad { s: f64, t: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

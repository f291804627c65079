//! C ABI for `inellipse-core`.
//!
//! Every fallible call returns an [`InellipseStatus`] and writes its result
//! through out-pointers, which are left untouched on failure. Handles are
//! opaque; release each with its matching `_free` function.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use inellipse_core::inscribed::{self, FamilyParam, InscribedEllipse};
use inellipse_core::{Classification, ConicCoeffs, Error, Point, Quadrilateral, DEFAULT_TOL};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InellipseStatus {
    Ok = 0,
    NullPointer = 1,
    NonFiniteInput = 2,
    NonConvex = 3,
    CollinearPoints = 4,
    Parallelogram = 5,
    NotAnEllipse = 6,
    ParameterOutOfRange = 7,
    IndexOutOfRange = 8,
    InvalidArgument = 9,
    Internal = 10,
}

impl From<Error> for InellipseStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFiniteInput => InellipseStatus::NonFiniteInput,
            Error::NonConvex => InellipseStatus::NonConvex,
            Error::CollinearPoints => InellipseStatus::CollinearPoints,
            Error::Parallelogram => InellipseStatus::Parallelogram,
            Error::DegenerateConic | Error::NotAnEllipse => InellipseStatus::NotAnEllipse,
            Error::ParameterOutOfRange(_) => InellipseStatus::ParameterOutOfRange,
            Error::DegenerateLine
            | Error::SingularMap
            | Error::InvalidNormalizedQuad { .. }
            | Error::InvalidConfig(_) => InellipseStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InellipseClass {
    Parallelogram = 0,
    Trapezoid = 1,
    MdqType1 = 2,
    MdqType2 = 3,
    Generic = 4,
}

impl From<Classification> for InellipseClass {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Parallelogram => InellipseClass::Parallelogram,
            Classification::Trapezoid => InellipseClass::Trapezoid,
            Classification::MdqType1 => InellipseClass::MdqType1,
            Classification::MdqType2 => InellipseClass::MdqType2,
            Classification::Generic => InellipseClass::Generic,
        }
    }
}

/// An inscribed ellipse in user coordinates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InellipseEllipse {
    pub q: f64,
    /// Canonical A, B, C, D, E, F.
    pub coefficients: [f64; 6],
    /// Tangency points on S1..S4 as x1, y1, ..., x4, y4.
    pub tangency: [f64; 8],
    /// Bit `j − 1` set when side `j` is touched at its midpoint.
    pub midpoint_sides: u8,
    pub area: f64,
}

impl From<&InscribedEllipse> for InellipseEllipse {
    fn from(e: &InscribedEllipse) -> Self {
        let mut tangency = [0.0; 8];
        for (j, p) in e.tangency_points.0.iter().enumerate() {
            tangency[2 * j] = p.x;
            tangency[2 * j + 1] = p.y;
        }
        InellipseEllipse {
            q: e.q,
            coefficients: e.coefficients.to_array(),
            tangency,
            midpoint_sides: e.midpoint_sides.bits(),
            area: e.area,
        }
    }
}

/// Opaque convex quadrilateral in canonical labeling.
pub struct InellipseQuad {
    quad: Quadrilateral,
}

/// Opaque list of midpoint-tangent ellipses.
pub struct InellipseEllipseList {
    ellipses: Vec<InellipseEllipse>,
}

fn guard(f: impl FnOnce() -> Result<(), InellipseStatus>) -> InellipseStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => InellipseStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => InellipseStatus::Internal,
    }
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, InellipseStatus> {
    p.as_ref().ok_or(InellipseStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), InellipseStatus> {
    if out.is_null() {
        return Err(InellipseStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

/// Static, NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn inellipse_status_message(status: InellipseStatus) -> *const c_char {
    let msg: &CStr = match status {
        InellipseStatus::Ok => c"ok",
        InellipseStatus::NullPointer => c"null pointer argument",
        InellipseStatus::NonFiniteInput => c"input coordinates must be finite",
        InellipseStatus::NonConvex => c"points do not form a convex quadrilateral",
        InellipseStatus::CollinearPoints => c"points are collinear or coincident",
        InellipseStatus::Parallelogram => c"quadrilateral is a parallelogram",
        InellipseStatus::NotAnEllipse => c"conic is not a real nondegenerate ellipse",
        InellipseStatus::ParameterOutOfRange => c"family parameter is outside (0, 1)",
        InellipseStatus::IndexOutOfRange => c"index out of range",
        InellipseStatus::InvalidArgument => c"invalid argument",
        InellipseStatus::Internal => c"internal error",
    };
    msg.as_ptr()
}

/// Builds a quadrilateral from `coords = {x1, y1, ..., x4, y4}` in any order.
///
/// # Safety
/// `coords` must point to 8 readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn inellipse_quad_new(coords: *const f64, out: *mut *mut InellipseQuad) -> InellipseStatus {
    guard(|| {
        if coords.is_null() || out.is_null() {
            return Err(InellipseStatus::NullPointer);
        }
        let c = std::slice::from_raw_parts(coords, 8);
        let points = [0, 1, 2, 3].map(|i| Point::new(c[2 * i], c[2 * i + 1]));
        let quad = Quadrilateral::new(points)?;
        write(out, Box::into_raw(Box::new(InellipseQuad { quad })))
    })
}

/// # Safety
/// `quad` must come from [`inellipse_quad_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn inellipse_quad_free(quad: *mut InellipseQuad) {
    if !quad.is_null() {
        drop(Box::from_raw(quad));
    }
}

/// Vertices A1..A4 in canonical (clockwise) labeling.
///
/// # Safety
/// `out` must point to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn inellipse_quad_vertices(quad: *const InellipseQuad, out: *mut f64) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        if out.is_null() {
            return Err(InellipseStatus::NullPointer);
        }
        let out = std::slice::from_raw_parts_mut(out, 8);
        for (i, v) in quad.quad.vertices().iter().enumerate() {
            out[2 * i] = v.x;
            out[2 * i + 1] = v.y;
        }
        Ok(())
    })
}

/// Classification at relative tolerance `tol` (non-positive means the default).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_quad_classify(
    quad: *const InellipseQuad,
    tol: f64,
    out: *mut InellipseClass,
) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
        write(out, quad.quad.classify(tol).into())
    })
}

/// Parameters `(s, t)` of the normalized form `Q(s,t)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_quad_normalize(
    quad: *const InellipseQuad,
    s: *mut f64,
    t: *mut f64,
) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        if s.is_null() || t.is_null() {
            return Err(InellipseStatus::NullPointer);
        }
        let norm = quad.quad.normalize()?;
        write(s, norm.nq.s())?;
        write(t, norm.nq.t())
    })
}

/// Inscribed ellipses tangent at side midpoints.
///
/// # Safety
/// Pointers must be valid; free the list with [`inellipse_ellipse_list_free`].
#[no_mangle]
pub unsafe extern "C" fn inellipse_midpoint_ellipses(
    quad: *const InellipseQuad,
    out: *mut *mut InellipseEllipseList,
) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        if out.is_null() {
            return Err(InellipseStatus::NullPointer);
        }
        let found = inscribed::midpoint_tangent_ellipses(&quad.quad)?;
        let ellipses = found.ellipses.iter().map(InellipseEllipse::from).collect();
        write(out, Box::into_raw(Box::new(InellipseEllipseList { ellipses })))
    })
}

/// Number of ellipses in `list` (0 for a null list).
///
/// # Safety
/// `list` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_ellipse_list_len(list: *const InellipseEllipseList) -> usize {
    list.as_ref().map_or(0, |l| l.ellipses.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_ellipse_list_get(
    list: *const InellipseEllipseList,
    index: usize,
    out: *mut InellipseEllipse,
) -> InellipseStatus {
    guard(|| {
        let list = borrow(list)?;
        let e = list.ellipses.get(index).ok_or(InellipseStatus::IndexOutOfRange)?;
        write(out, *e)
    })
}

/// # Safety
/// `list` must come from [`inellipse_midpoint_ellipses`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn inellipse_ellipse_list_free(list: *mut InellipseEllipseList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// The maximal-area inscribed ellipse.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_max_area(quad: *const InellipseQuad, out: *mut InellipseEllipse) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        let max = inscribed::max_area_ellipse(&quad.quad)?;
        write(out, (&max.ellipse).into())
    })
}

/// Family member `q ∈ (0, 1)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn inellipse_family_ellipse(
    quad: *const InellipseQuad,
    q: f64,
    out: *mut InellipseEllipse,
) -> InellipseStatus {
    guard(|| {
        let quad = borrow(quad)?;
        let q = FamilyParam::new(q)?;
        let e = inscribed::family_ellipse(&quad.quad.normalize()?, q)?;
        write(out, (&e).into())
    })
}

/// Area of the ellipse with coefficients `{A, B, C, D, E, F}`.
///
/// # Safety
/// `coefficients` must point to 6 readable doubles.
#[no_mangle]
pub unsafe extern "C" fn inellipse_conic_area(coefficients: *const f64, out: *mut f64) -> InellipseStatus {
    guard(|| {
        if coefficients.is_null() {
            return Err(InellipseStatus::NullPointer);
        }
        let c = std::slice::from_raw_parts(coefficients, 6);
        let conic = ConicCoeffs::new(c[0], c[1], c[2], c[3], c[4], c[5])?;
        write(out, conic.area()?)
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn messages_are_static_c_strings() {
        let msg = unsafe { CStr::from_ptr(inellipse_status_message(InellipseStatus::Parallelogram)) };
        assert_eq!(msg.to_str().unwrap(), "quadrilateral is a parallelogram");
    }

    #[test]
    fn null_arguments_are_reported() {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { inellipse_quad_new(ptr::null(), &mut out) }, InellipseStatus::NullPointer);
        assert_eq!(unsafe { inellipse_ellipse_list_len(ptr::null()) }, 0);
    }
}

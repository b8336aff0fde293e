//! C ABI for `jdiv`.
//!
//! Objects are opaque heap handles created by `jdiv_*_new` and released by
//! the matching `jdiv_*_free`. Every fallible call returns a [`JdivStatus`]
//! and writes its result through an out-pointer; on failure
//! [`jdiv_last_error_message`] describes what went wrong on the calling
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use jdiv::bounds;
use jdiv::classical;
use jdiv::geometry;
use jdiv::quantum;
use jdiv::{Alpha, DensityMatrix, DistanceMatrix, Distribution, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdivStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// An argument failed validation (bad probabilities, α ≤ 0, shapes...).
    InvalidArgument = 2,
    /// The result is infinite (support violation in a relative entropy).
    Infinite = 3,
    /// The distance matrix is not of negative type, so it cannot be embedded.
    NotNegativeType = 4,
    /// A caller-provided buffer is too small.
    BufferTooSmall = 5,
    /// The library panicked; this is a bug.
    Panic = 6,
}

/// Opaque validated probability vector.
pub struct JdivDistribution(Distribution);

/// Opaque validated density matrix.
pub struct JdivDensityMatrix(DensityMatrix);

/// Opaque validated squared-distance matrix.
pub struct JdivDistanceMatrix(DistanceMatrix);

/// Lower bound, divergence and upper bound at total variation `v`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct JdivBounds {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub v: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> JdivStatus {
    match e {
        Error::InfiniteDivergence => JdivStatus::Infinite,
        Error::NotNegativeType(_) => JdivStatus::NotNegativeType,
        _ => JdivStatus::InvalidArgument,
    }
}

struct Fail(JdivStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(JdivStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> JdivStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JdivStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            JdivStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn input<'a>(data: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(data, len))
}

fn alpha(a: f64) -> Result<Alpha, Fail> {
    Ok(Alpha::new(a)?)
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jdiv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn jdiv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Validates `len` probabilities and returns a new handle in `*out`.
///
/// # Safety
/// `probs` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distribution_new(
    probs: *const f64,
    len: usize,
    out: *mut *mut JdivDistribution,
) -> JdivStatus {
    guard(|| {
        let p = Distribution::new(input(probs, len, "probs")?.to_vec())?;
        write(out, Box::into_raw(Box::new(JdivDistribution(p))), "out")
    })
}

/// Releases a handle from [`jdiv_distribution_new`]; null is ignored.
///
/// # Safety
/// `p` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distribution_free(p: *mut JdivDistribution) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of letters, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distribution_len(p: *const JdivDistribution) -> usize {
    p.as_ref().map_or(0, |d| d.0.len())
}

/// Builds a `dim × dim` state from row-major real and imaginary parts;
/// `im` may be null for a real matrix.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `dim·dim` doubles; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_density_matrix_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut JdivDensityMatrix,
) -> JdivStatus {
    guard(|| {
        let len = dim
            .checked_mul(dim)
            .ok_or_else(|| Fail(JdivStatus::InvalidArgument, "dim too large".into()))?;
        let re = input(re, len, "re")?;
        let zeros = vec![0.0; len];
        let im = if im.is_null() {
            &zeros[..]
        } else {
            input(im, len, "im")?
        };
        let rho = DensityMatrix::from_parts(dim, re, im)?;
        write(out, Box::into_raw(Box::new(JdivDensityMatrix(rho))), "out")
    })
}

/// # Safety
/// `rho` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn jdiv_density_matrix_free(rho: *mut JdivDensityMatrix) {
    if !rho.is_null() {
        drop(Box::from_raw(rho));
    }
}

/// Hilbert-space dimension, or 0 for a null handle.
///
/// # Safety
/// `rho` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jdiv_density_matrix_dim(rho: *const JdivDensityMatrix) -> usize {
    rho.as_ref().map_or(0, |r| r.0.dim())
}

/// Validates a row-major `n × n` squared-distance matrix.
///
/// # Safety
/// `d` must point to `n·n` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distance_matrix_new(
    n: usize,
    d: *const f64,
    out: *mut *mut JdivDistanceMatrix,
) -> JdivStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail(JdivStatus::InvalidArgument, "n too large".into()))?;
        let d = input(d, len, "d")?;
        let rows: Vec<Vec<f64>> = d.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        let m = DistanceMatrix::from_rows(&rows)?;
        write(out, Box::into_raw(Box::new(JdivDistanceMatrix(m))), "out")
    })
}

/// # Safety
/// `d` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distance_matrix_free(d: *mut JdivDistanceMatrix) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distance_matrix_n(d: *const JdivDistanceMatrix) -> usize {
    d.as_ref().map_or(0, |m| m.0.n())
}

/// Copies entry `(i, j)` into `*out`.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_distance_matrix_get(
    d: *const JdivDistanceMatrix,
    i: usize,
    j: usize,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let m = &deref(d, "d")?.0;
        if i >= m.n() || j >= m.n() {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                n: m.n(),
            }
            .into());
        }
        write(out, m.get(i, j), "out")
    })
}

/// Entropy of order α (Shannon at α = 1).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_alpha_entropy(
    p: *const JdivDistribution,
    a: f64,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let v = classical::alpha_entropy(&deref(p, "p")?.0, alpha(a)?);
        write(out, v, "out")
    })
}

/// Quantum entropy of order α (von Neumann at α = 1).
///
/// # Safety
/// `rho` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_q_alpha_entropy(
    rho: *const JdivDensityMatrix,
    a: f64,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let v = quantum::alpha_entropy_q(&deref(rho, "rho")?.0, alpha(a)?);
        write(out, v, "out")
    })
}

/// `JD_α(P, Q)`.
///
/// # Safety
/// `p`, `q` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_jd_alpha(
    p: *const JdivDistribution,
    q: *const JdivDistribution,
    a: f64,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let r = jdiv::jd_alpha(&deref(p, "p")?.0, &deref(q, "q")?.0, alpha(a)?)?;
        write(out, r.value, "out")
    })
}

/// `QJD_α(ρ, σ)`.
///
/// # Safety
/// `rho`, `sigma` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_qjd_alpha(
    rho: *const JdivDensityMatrix,
    sigma: *const JdivDensityMatrix,
    a: f64,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let r = jdiv::qjd_alpha(&deref(rho, "rho")?.0, &deref(sigma, "sigma")?.0, alpha(a)?)?;
        write(out, r.value, "out")
    })
}

/// `D(P‖Q)`; reports [`JdivStatus::Infinite`] when `P` is not supported
/// inside `Q`.
///
/// # Safety
/// `p`, `q` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_kl_divergence(
    p: *const JdivDistribution,
    q: *const JdivDistribution,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let v = classical::kl_divergence(&deref(p, "p")?.0, &deref(q, "q")?.0)?;
        if v.is_infinite() {
            return Err(Error::InfiniteDivergence.into());
        }
        write(out, v, "out")
    })
}

/// `Σ|p_i − q_i|`, in `[0, 2]`.
///
/// # Safety
/// `p`, `q` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_total_variation(
    p: *const JdivDistribution,
    q: *const JdivDistribution,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let v = classical::total_variation(&deref(p, "p")?.0, &deref(q, "q")?.0)?;
        write(out, v, "out")
    })
}

/// `‖ρ − σ‖₁`, in `[0, 2]`.
///
/// # Safety
/// `rho`, `sigma` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_trace_distance(
    rho: *const JdivDensityMatrix,
    sigma: *const JdivDensityMatrix,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        let v = quantum::trace_distance(&deref(rho, "rho")?.0, &deref(sigma, "sigma")?.0)?;
        write(out, v, "out")
    })
}

/// Pairwise `JD_α` matrix of `count` distributions.
///
/// # Safety
/// `points` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_divergence_matrix(
    points: *const *const JdivDistribution,
    count: usize,
    a: f64,
    out: *mut *mut JdivDistanceMatrix,
) -> JdivStatus {
    guard(|| {
        if points.is_null() {
            return Err(null("points"));
        }
        let handles = slice::from_raw_parts(points, count);
        let mut ps = Vec::with_capacity(count);
        for &h in handles {
            ps.push(deref(h, "points[i]")?.0.clone());
        }
        let d = geometry::divergence_matrix(&ps, alpha(a)?)?;
        write(out, Box::into_raw(Box::new(JdivDistanceMatrix(d))), "out")
    })
}

/// Pairwise `QJD_α` matrix of `count` states.
///
/// # Safety
/// `states` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_q_divergence_matrix(
    states: *const *const JdivDensityMatrix,
    count: usize,
    a: f64,
    out: *mut *mut JdivDistanceMatrix,
) -> JdivStatus {
    guard(|| {
        if states.is_null() {
            return Err(null("states"));
        }
        let handles = slice::from_raw_parts(states, count);
        let mut ps = Vec::with_capacity(count);
        for &h in handles {
            ps.push(deref(h, "states[i]")?.0.clone());
        }
        let d = geometry::divergence_matrix(&ps, alpha(a)?)?;
        write(out, Box::into_raw(Box::new(JdivDistanceMatrix(d))), "out")
    })
}

/// Negative-type test. `tol < 0` or NaN selects the default tolerance
/// `1e−9·n·max|D|`. `min_eigenvalue` may be null.
///
/// # Safety
/// `d` must be a live handle; `is_negative_type` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_negative_type_check(
    d: *const JdivDistanceMatrix,
    tol: f64,
    is_negative_type: *mut bool,
    min_eigenvalue: *mut f64,
) -> JdivStatus {
    guard(|| {
        let m = &deref(d, "d")?.0;
        let tol = (tol >= 0.0).then_some(tol);
        let r = geometry::negative_type_check(m, tol);
        write(is_negative_type, r.is_negative_type, "is_negative_type")?;
        if !min_eigenvalue.is_null() {
            min_eigenvalue.write(r.witness_min_eigenvalue);
        }
        Ok(())
    })
}

/// Determinant of the bordered Cayley–Menger matrix.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_cayley_menger_det(
    d: *const JdivDistanceMatrix,
    out: *mut f64,
) -> JdivStatus {
    guard(|| write(out, geometry::cayley_menger_det(&deref(d, "d")?.0), "out"))
}

/// Spectral embedding. Coordinates are written row-major as `n × dim` into
/// `coords`, which must hold `n·n` doubles; `dim` and
/// `reconstruction_error` (nullable) receive the rest.
///
/// # Safety
/// `d` must be a live handle; `coords` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn jdiv_embed(
    d: *const JdivDistanceMatrix,
    coords: *mut f64,
    capacity: usize,
    dim: *mut usize,
    reconstruction_error: *mut f64,
) -> JdivStatus {
    guard(|| {
        let m = &deref(d, "d")?.0;
        let e = geometry::embed(m)?;
        let n = m.n();
        let need = n * e.dim();
        if capacity < need {
            return Err(Fail(
                JdivStatus::BufferTooSmall,
                format!("coords needs {need} doubles, got {capacity}"),
            ));
        }
        if need > 0 && coords.is_null() {
            return Err(null("coords"));
        }
        for (i, row) in e.rows().iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                coords.add(i * e.dim() + k).write(*x);
            }
        }
        write(dim, e.dim(), "dim")?;
        if !reconstruction_error.is_null() {
            reconstruction_error.write(e.reconstruction_error);
        }
        Ok(())
    })
}

/// `E(α)` of the three-point triangle counterexample; positive means the
/// triangle inequality for `√JD_α` fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_counterexample_energy(a: f64, out: *mut f64) -> JdivStatus {
    guard(|| write(out, geometry::counterexample_energy(alpha(a)?), "out"))
}

/// Cayley–Menger determinant of the four-point two-letter configuration
/// with spacing `eps` in `(0, 1/6)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_quadruple_cm_determinant(
    a: f64,
    eps: f64,
    out: *mut f64,
) -> JdivStatus {
    guard(|| {
        write(
            out,
            geometry::quadruple_cm_determinant(alpha(a)?, eps)?,
            "out",
        )
    })
}

/// `x^α` via its integral representation, for α in `(0,1) ∪ (1,2)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_power_integral(x: f64, a: f64, out: *mut f64) -> JdivStatus {
    guard(|| write(out, geometry::power_integral(x, alpha(a)?)?, "out"))
}

/// Lower bound, `JD_α` and upper bound for a pair of distributions.
///
/// # Safety
/// `p`, `q` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_bounds(
    p: *const JdivDistribution,
    q: *const JdivDistribution,
    a: f64,
    out: *mut JdivBounds,
) -> JdivStatus {
    guard(|| {
        let r = bounds::bound_report(&deref(p, "p")?.0, &deref(q, "q")?.0, alpha(a)?)?;
        write(
            out,
            JdivBounds {
                lower: r.lower,
                value: r.value,
                upper: r.upper,
                v: r.v,
            },
            "out",
        )
    })
}

/// Trace-distance bounds on `QJD_α` for a pair of states.
///
/// # Safety
/// `rho`, `sigma` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jdiv_q_bounds(
    rho: *const JdivDensityMatrix,
    sigma: *const JdivDensityMatrix,
    a: f64,
    out: *mut JdivBounds,
) -> JdivStatus {
    guard(|| {
        let r =
            bounds::q_bound_report(&deref(rho, "rho")?.0, &deref(sigma, "sigma")?.0, alpha(a)?)?;
        write(
            out,
            JdivBounds {
                lower: r.lower,
                value: r.value,
                upper: r.upper,
                v: r.v,
            },
            "out",
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::InfiniteDivergence), JdivStatus::Infinite);
        assert_eq!(
            status_of(&Error::EmptyDistribution),
            JdivStatus::InvalidArgument
        );
    }

    #[test]
    fn panics_are_caught() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, JdivStatus::Panic);
        let msg = unsafe { std::ffi::CStr::from_ptr(jdiv_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("boom"));
    }
}

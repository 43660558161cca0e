//! C ABI for the splinetop library: opaque complex handles, status codes,
//! and JSON strings for structured results, so other languages can bind
//! without knowing the Rust types.
//!
//! Conventions:
//! - Every function returns a [`SplinetopStatus`]; outputs go through out
//!   pointers.
//! - Strings returned through out pointers are NUL-terminated, UTF-8, and
//!   owned by the caller; free them with [`splinetop_string_free`].
//! - Handles from [`splinetop_complex_parse`] are freed with
//!   [`splinetop_complex_free`].
//! - On any non-Ok status, [`splinetop_last_error_message`] returns a
//!   human-readable description (valid until the next call on the same
//!   thread).

use splinetop::arrangement::LatticeMode;
use splinetop::complex::PolytopalComplex;
use splinetop::document::{emit_complex, load_complex};
use splinetop::poly::DegreeMode;
use splinetop::splines::SplineEngine;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplinetopStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed or geometrically invalid input document.
    InvalidDocument = 3,
    /// A parameter was out of range for the requested computation.
    InvalidArgument = 4,
    /// The modular-rank oracle disagreed with the exact computation.
    OracleMismatch = 5,
}

/// Opaque handle to a loaded complex.
pub struct SplinetopComplex {
    inner: PolytopalComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let stored = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

/// Message for the most recent error on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn splinetop_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |s| s.as_ptr())
    })
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SplinetopStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(SplinetopStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SplinetopStatus::InvalidUtf8
    })
}

fn give_string(out: *mut *mut c_char, s: String) -> SplinetopStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SplinetopStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            SplinetopStatus::InvalidArgument
        }
    }
}

/// Parse a JSON complex document into a handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splinetop_complex_parse(
    json: *const c_char,
    out: *mut *mut SplinetopComplex,
) -> SplinetopStatus {
    if out.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match load_complex(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(SplinetopComplex { inner }));
            SplinetopStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            SplinetopStatus::InvalidDocument
        }
    }
}

/// Free a handle returned by [`splinetop_complex_parse`]. NULL is a no-op.
///
/// # Safety
/// `handle` must come from [`splinetop_complex_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn splinetop_complex_free(handle: *mut SplinetopComplex) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Free a string returned through an out pointer. NULL is a no-op.
///
/// # Safety
/// `s` must come from a splinetop function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn splinetop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Emit a built-in fixture ("q", "qprime", "delta_plus", "two_squares",
/// "t2", "t3", ...) as a JSON document.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn splinetop_fixture_json(
    name: *const c_char,
    out: *mut *mut c_char,
) -> SplinetopStatus {
    if out.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    let name = match read_str(name) {
        Ok(n) => n,
        Err(status) => return status,
    };
    match splinetop::fixtures::fixture_by_name(name) {
        Some(p) => give_string(out, emit_complex(&p)),
        None => {
            set_error(format!("unknown fixture {name:?}"));
            SplinetopStatus::InvalidArgument
        }
    }
}

unsafe fn borrow_complex<'a>(
    handle: *const SplinetopComplex,
) -> Result<&'a PolytopalComplex, SplinetopStatus> {
    if handle.is_null() {
        set_error("null complex handle");
        return Err(SplinetopStatus::NullArgument);
    }
    Ok(&(*handle).inner)
}

/// Basic counts: facets, interior codim-1 faces, interior vertices.
///
/// # Safety
/// `handle` must be a live handle; out pointers must be valid or NULL
/// (NULL out pointers are skipped).
#[no_mangle]
pub unsafe extern "C" fn splinetop_complex_counts(
    handle: *const SplinetopComplex,
    out_facets: *mut usize,
    out_interior_codim1: *mut usize,
    out_interior_vertices: *mut usize,
) -> SplinetopStatus {
    let p = match borrow_complex(handle) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if !out_facets.is_null() {
        *out_facets = p.num_facets();
    }
    if !out_interior_codim1.is_null() {
        *out_interior_codim1 = p.interior_codim1().len();
    }
    if !out_interior_vertices.is_null() {
        *out_interior_vertices = p.face_counts()[0].1;
    }
    SplinetopStatus::Ok
}

/// Validation report as JSON
/// (fields: pure, hereditary, manifold_ok, non_hereditary_witness).
///
/// # Safety
/// `handle` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn splinetop_complex_validate_json(
    handle: *const SplinetopComplex,
    out: *mut *mut c_char,
) -> SplinetopStatus {
    let p = match borrow_complex(handle) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    give_string(out, serde_json::to_string(&p.validate()).unwrap())
}

fn mode_of(homogeneous: bool) -> DegreeMode {
    if homogeneous {
        DegreeMode::Homogeneous
    } else {
        DegreeMode::Filtered
    }
}

/// dim C^r_d. The dimension is cross-checked by the modular oracle at three
/// random primes drawn from `seed`; an oracle disagreement is an error.
///
/// # Safety
/// `handle` must be live; `out_dim` must be valid.
#[no_mangle]
pub unsafe extern "C" fn splinetop_dim(
    handle: *const SplinetopComplex,
    r: u32,
    d: u32,
    homogeneous: bool,
    seed: u64,
    out_dim: *mut usize,
) -> SplinetopStatus {
    let p = match borrow_complex(handle) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out_dim.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    let engine = SplineEngine::new(p);
    let mode = mode_of(homogeneous);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let outcome = engine.oracle_check_smoothness(r, d, mode, &mut rng, 3);
    if !outcome.ok {
        set_error("modular oracle disagreed with the exact rank");
        return SplinetopStatus::OracleMismatch;
    }
    *out_dim = outcome.dim;
    SplinetopStatus::Ok
}

/// dim LS^{r,k}_d over the affine or homogenized lattice, oracle-checked.
///
/// # Safety
/// `handle` must be live; `out_dim` must be valid.
#[no_mangle]
pub unsafe extern "C" fn splinetop_ls_dim(
    handle: *const SplinetopComplex,
    r: u32,
    k: usize,
    d: u32,
    homogeneous: bool,
    homogenized_lattice: bool,
    seed: u64,
    out_dim: *mut usize,
) -> SplinetopStatus {
    let p = match borrow_complex(handle) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out_dim.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    let engine = SplineEngine::new(p);
    let lattice = if homogenized_lattice {
        LatticeMode::Homogenized
    } else {
        LatticeMode::Affine
    };
    let space = engine.ls_space(r, k, d, mode_of(homogeneous), lattice);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let outcome = engine.oracle_check_space(&space, &mut rng, 3);
    if !outcome.ok {
        set_error("modular oracle disagreed with the exact rank");
        return SplinetopStatus::OracleMismatch;
    }
    *out_dim = space.dim();
    SplinetopStatus::Ok
}

/// The Gamma poset up to rank k as JSON (row sizes, node labels with ranks,
/// maximal labels, Hasse edges).
///
/// # Safety
/// `handle` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn splinetop_gamma_json(
    handle: *const SplinetopComplex,
    k: usize,
    homogenized_lattice: bool,
    out: *mut *mut c_char,
) -> SplinetopStatus {
    let p = match borrow_complex(handle) {
        Ok(p) => p,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null out pointer");
        return SplinetopStatus::NullArgument;
    }
    let engine = SplineEngine::new(p);
    let lattice = if homogenized_lattice {
        LatticeMode::Homogenized
    } else {
        LatticeMode::Affine
    };
    let gamma = engine.gamma(k, lattice);
    let payload = serde_json::json!({
        "k": k,
        "row_sizes": gamma.row_sizes(),
        "nodes": gamma.nodes.iter().map(|n| serde_json::json!({
            "label": splinetop::complex::facet_set_label(n.subcomplex.facet_ids()),
            "gamma_rank": n.gamma_rank,
        })).collect::<Vec<_>>(),
        "maximal": gamma.maximal_labels(),
        "hasse": gamma.hasse,
    });
    give_string(out, payload.to_string())
}

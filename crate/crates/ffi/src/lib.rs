//! C ABI over `squaretour`.
//!
//! Objects are opaque handles returned through out-parameters by the
//! constructors (`sqt_point_parse`, `sqt_point_donut`, `sqt_tour_run`, ...)
//! and released with the matching `sqt_*_free`. Every fallible call
//! returns an [`SqtStatus`]; on failure the message is available from
//! [`sqt_last_error`] until the next failing call on the same thread.
//! Variable-length results are copied into caller buffers: pass the buffer
//! capacity, and the required length is written to `needed` whether or not
//! it fits.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use squaretour::graph::metric_closure;
use squaretour::halfpoint::{classify, validate_subtour, PointClass};
use squaretour::instances::{
    make_donut, parse_instance, random_square_instance, serialize_bts, serialize_point, Instance,
};
use squaretour::kotzig::{find_trail, BitransitionSystem};
use squaretour::oracles::held_karp;
use squaretour::tour::{run_tour, TourReport};
use squaretour::{Error, HalfIntegerPoint};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    TooLarge = 3,
    NotSquare = 4,
    BoundViolated = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqtPointClass {
    Square = 0,
    BoydCarr = 1,
    CarrVempala = 2,
    HalfInteger = 3,
    /// Fails a degree or cut constraint.
    Invalid = 4,
}

/// A half-integer point with one cost per support edge.
pub struct SqtPoint {
    point: HalfIntegerPoint,
    costs: Vec<i64>,
}

pub struct SqtTourReport {
    report: TourReport,
}

pub struct SqtBts {
    sys: BitransitionSystem,
}

/// Costs of a tour run. `c_x2` is twice `c·x`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqtTourCosts {
    pub c_h: i64,
    pub c_j: i64,
    pub c_x2: i64,
    pub final_cost: i64,
    pub bound_holds: bool,
}

/// One end of an edge: `end` is 0 or 1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqtDart {
    pub edge: usize,
    pub end: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(err: Error) -> SqtStatus {
    let status = match err {
        Error::TooLarge { .. } => SqtStatus::TooLarge,
        Error::NotSquarePoint | Error::IntegralPoint => SqtStatus::NotSquare,
        Error::BoundViolated(_) => SqtStatus::BoundViolated,
        Error::InvariantViolation(_) | Error::GenerationFailed(_) => SqtStatus::Internal,
        _ => SqtStatus::InvalidInput,
    };
    set_error(err.to_string());
    status
}

fn null() -> SqtStatus {
    set_error("null pointer argument");
    SqtStatus::NullPointer
}

/// Runs `f`, turning a panic into [`SqtStatus::Internal`].
fn guard<F: FnOnce() -> SqtStatus + std::panic::UnwindSafe>(f: F) -> SqtStatus {
    std::panic::catch_unwind(f).unwrap_or_else(|_| {
        set_error("internal panic");
        SqtStatus::Internal
    })
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, SqtStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        SqtStatus::InvalidInput
    })
}

unsafe fn copy_out<T: Copy>(items: &[T], buf: *mut T, cap: usize, needed: *mut usize) -> SqtStatus {
    if !needed.is_null() {
        *needed = items.len();
    }
    if items.len() > cap {
        set_error(format!("buffer holds {cap} items, {} needed", items.len()));
        return SqtStatus::BufferTooSmall;
    }
    if !items.is_empty() {
        if buf.is_null() {
            return null();
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    SqtStatus::Ok
}

unsafe fn store<T>(value: T, out: *mut *mut T) -> SqtStatus {
    *out = Box::into_raw(Box::new(value));
    SqtStatus::Ok
}

/// Message of the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sqt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a `POINT` instance from NUL-terminated text.
///
/// # Safety
/// `text_ptr` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_parse(text_ptr: *const c_char, out: *mut *mut SqtPoint) -> SqtStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let s = match text(text_ptr) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_instance(s) {
            Ok(Instance::Point { point, costs }) => store(SqtPoint { point, costs }, out),
            Ok(Instance::Bitransition(_)) => {
                set_error("expected a POINT instance");
                SqtStatus::InvalidInput
            }
            Err(e) => fail(e),
        }
    })
}

/// The `k`-donut with its canonical costs.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_donut(k: usize, out: *mut *mut SqtPoint) -> SqtStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        match make_donut(k) {
            Ok(d) => store(
                SqtPoint {
                    point: d.point,
                    costs: d.costs,
                },
                out,
            ),
            Err(e) => fail(e),
        }
    })
}

/// Random square point with random costs in `[0, max_cost]`.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_random_square(
    squares: usize,
    max_path: usize,
    max_cost: i64,
    seed: u64,
    out: *mut *mut SqtPoint,
) -> SqtStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        match random_square_instance(squares, max_path, max_cost, seed) {
            Ok((point, costs)) => store(SqtPoint { point, costs }, out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_free(p: *mut SqtPoint) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Node count of the point, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_node_count(p: *const SqtPoint) -> usize {
    p.as_ref().map_or(0, |p| p.point.n())
}

/// Support edge count of the point, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_edge_count(p: *const SqtPoint) -> usize {
    p.as_ref().map_or(0, |p| p.point.edge_count())
}

/// Twice `c·x`.
///
/// # Safety
/// `p` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_cost_x2(p: *const SqtPoint, out: *mut i64) -> SqtStatus {
    let (Some(p), false) = (p.as_ref(), out.is_null()) else {
        return null();
    };
    match p.point.cost_x2(&p.costs) {
        Ok(v) => {
            *out = v;
            SqtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Class of the point; [`SqtPointClass::Invalid`] when a subtour constraint
/// fails (the witness is left in [`sqt_last_error`]).
///
/// # Safety
/// `p` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_classify(p: *const SqtPoint, out: *mut SqtPointClass) -> SqtStatus {
    let (Some(p), false) = (p.as_ref(), out.is_null()) else {
        return null();
    };
    let check = validate_subtour(&p.point);
    if !check.holds() {
        set_error(check.to_string());
        *out = SqtPointClass::Invalid;
        return SqtStatus::Ok;
    }
    match classify(&p.point) {
        Ok(c) => {
            *out = match c {
                PointClass::Square => SqtPointClass::Square,
                PointClass::BoydCarr => SqtPointClass::BoydCarr,
                PointClass::CarrVempala => SqtPointClass::CarrVempala,
                PointClass::OtherHalfInteger => SqtPointClass::HalfInteger,
            };
            SqtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Writes the instance text (without a NUL terminator) into `buf`.
///
/// # Safety
/// `p` must be NULL or a live handle; `buf` must hold `cap` bytes;
/// `needed` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_serialize(
    p: *const SqtPoint,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SqtStatus {
    let Some(p) = p.as_ref() else {
        return null();
    };
    match serialize_point(&p.point, &p.costs) {
        Ok(s) => copy_out(s.as_bytes(), buf.cast::<u8>(), cap, needed),
        Err(e) => fail(e),
    }
}

/// Optimal tour cost on the metric closure of the support (at most 24 nodes).
///
/// # Safety
/// `p` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_point_opt(p: *const SqtPoint, out: *mut i64) -> SqtStatus {
    let (Some(p), false) = (p.as_ref(), out.is_null()) else {
        return null();
    };
    guard(std::panic::AssertUnwindSafe(|| {
        let d = match p.point.weighted_support(&p.costs).and_then(|g| metric_closure(&g)) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        match held_karp(&d) {
            Ok(v) => {
                *out = v;
                SqtStatus::Ok
            }
            Err(e) => fail(e),
        }
    }))
}

/// Runs the tour pipeline on a square point.
///
/// # Safety
/// `p` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_tour_run(p: *const SqtPoint, out: *mut *mut SqtTourReport) -> SqtStatus {
    let (Some(p), false) = (p.as_ref(), out.is_null()) else {
        return null();
    };
    guard(std::panic::AssertUnwindSafe(|| match run_tour(&p.point, &p.costs) {
        Ok(report) => store(SqtTourReport { report }, out),
        Err(e) => fail(e),
    }))
}

/// # Safety
/// `r` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_tour_costs(r: *const SqtTourReport, out: *mut SqtTourCosts) -> SqtStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return null();
    };
    let r = &r.report;
    *out = SqtTourCosts {
        c_h: r.c_h,
        c_j: r.c_j,
        c_x2: r.c_x2,
        final_cost: r.final_cost,
        bound_holds: r.bound_holds,
    };
    SqtStatus::Ok
}

/// Node order of the shortcut Hamiltonian cycle.
///
/// # Safety
/// `r` must be NULL or a live handle; `buf` must hold `cap` entries;
/// `needed` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_tour_cycle(
    r: *const SqtTourReport,
    buf: *mut usize,
    cap: usize,
    needed: *mut usize,
) -> SqtStatus {
    match r.as_ref() {
        Some(r) => copy_out(&r.report.final_cycle, buf, cap, needed),
        None => null(),
    }
}

/// # Safety
/// `r` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sqt_tour_free(r: *mut SqtTourReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Parses a `BTS` instance from NUL-terminated text.
///
/// # Safety
/// `text_ptr` must be NULL or a NUL-terminated string; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_bts_parse(text_ptr: *const c_char, out: *mut *mut SqtBts) -> SqtStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        let s = match text(text_ptr) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_instance(s) {
            Ok(Instance::Bitransition(sys)) => store(SqtBts { sys }, out),
            Ok(Instance::Point { .. }) => {
                set_error("expected a BTS instance");
                SqtStatus::InvalidInput
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `b` must be NULL or a live handle; `buf` must hold `cap` bytes;
/// `needed` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_bts_serialize(
    b: *const SqtBts,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SqtStatus {
    match b.as_ref() {
        Some(b) => copy_out(serialize_bts(&b.sys).as_bytes(), buf.cast::<u8>(), cap, needed),
        None => null(),
    }
}

/// Eulerian trail avoiding the forbidden bitransitions, as `2m` darts: the
/// dart where each edge is entered followed by its other end.
///
/// # Safety
/// `b` must be NULL or a live handle; `buf` must hold `cap` entries;
/// `needed` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqt_bts_find_trail(
    b: *const SqtBts,
    buf: *mut SqtDart,
    cap: usize,
    needed: *mut usize,
) -> SqtStatus {
    let Some(b) = b.as_ref() else {
        return null();
    };
    guard(std::panic::AssertUnwindSafe(|| match find_trail(&b.sys) {
        Ok(trail) => {
            let darts: Vec<SqtDart> = trail
                .darts
                .iter()
                .map(|d| SqtDart {
                    edge: d.edge,
                    end: d.end,
                })
                .collect();
            copy_out(&darts, buf, cap, needed)
        }
        Err(e) => fail(e),
    }))
}

/// # Safety
/// `b` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sqt_bts_free(b: *mut SqtBts) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

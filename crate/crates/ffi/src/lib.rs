//! C ABI over the `wzs` library.
//!
//! Objects are opaque heap handles created by `*_parse` and released by the
//! matching `*_free`. Every fallible call returns a `WzsStatus`; on failure
//! the message is kept per thread and read with `wzs_last_error_message`.
//! Strings returned to the caller are freed with `wzs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wzs::parse::{parse_group, parse_sequence, parse_weights};
use wzs::reach::{has_nonempty_zero, has_zero_of_length};
use wzs::search::compute_invariant;
use wzs::{Error, Group, InvariantKind, InvariantResult, SearchBudget, Sequence, WeightSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WzsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGroup = 4,
    InvalidWeights = 5,
    InvalidSequence = 6,
    BadParameters = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WzsInvariantKind {
    /// Nonempty zero-sums.
    Davenport = 0,
    /// Zero-sums of length `exp(G)`.
    SmallS = 1,
    /// Zero-sums of length `|G|`.
    BigE = 2,
}

/// Result of `wzs_invariant`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WzsInvariant {
    pub value: u64,
    /// False when the node cap stopped the search; `value` is then a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

pub struct WzsGroup(Group);
pub struct WzsWeights(WeightSet);
pub struct WzsSequence(Sequence);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WzsStatus {
    match e {
        Error::Parse(_) => WzsStatus::Parse,
        Error::EmptyFactorList
        | Error::FactorBelowTwo(_)
        | Error::NotDivisibilityChain(_)
        | Error::OrderTooLarge { .. }
        | Error::NotAPGroup => WzsStatus::InvalidGroup,
        Error::WeightOutOfRange { .. } | Error::EmptyWeightSet => WzsStatus::InvalidWeights,
        Error::IndexOutOfRange { .. } | Error::GroupMismatch | Error::NotASubsequence => {
            WzsStatus::InvalidSequence
        }
        _ => WzsStatus::BadParameters,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (WzsStatus, String)>) -> WzsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WzsStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            WzsStatus::Internal
        }
    }
}

fn lib(e: Error) -> (WzsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (WzsStatus, String) {
    (WzsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (WzsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (WzsStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (WzsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (WzsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

/// Length in bytes of the last error message on this thread, excluding the
/// terminating NUL; 0 when there is none.
#[no_mangle]
pub extern "C" fn wzs_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |c| c.as_bytes().len()))
}

/// Copies the last error message into `buf` (NUL-terminated). Returns the
/// number of bytes written excluding the NUL, or -1 if `buf` is too small.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wzs_last_error_message(buf: *mut c_char, len: usize) -> isize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map_or(&[][..], |c| c.as_bytes());
        if buf.is_null() || len < bytes.len() + 1 {
            return -1;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
        *buf.add(bytes.len()) = 0;
        bytes.len() as isize
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wzs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses `"4,8"`, `"Z4xZ8"` or `"8^2"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_group_parse(
    spec: *const c_char,
    out: *mut *mut WzsGroup,
) -> WzsStatus {
    guard(|| {
        let g = parse_group(read_str(spec, "spec")?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(WzsGroup(g))))
    })
}

/// # Safety
/// `g` must come from `wzs_group_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wzs_group_free(g: *mut WzsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wzs_group_order(g: *const WzsGroup) -> u64 {
    g.as_ref().map_or(0, |g| g.0.order() as u64)
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wzs_group_exponent(g: *const WzsGroup) -> u64 {
    g.as_ref().map_or(0, |g| g.0.exponent())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wzs_group_rank(g: *const WzsGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.rank())
}

/// Parses `"pm1"`, `"1..l"` or `"a,b,c"` against the exponent of `g`.
///
/// # Safety
/// `g` must be a live handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_weights_parse(
    g: *const WzsGroup,
    text: *const c_char,
    out: *mut *mut WzsWeights,
) -> WzsStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let w = parse_weights(read_str(text, "text")?, g.0.exponent()).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(WzsWeights(w))))
    })
}

/// # Safety
/// `w` must come from `wzs_weights_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wzs_weights_free(w: *mut WzsWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Parses `"(0,0)^7 (1,0)"` or the JSON `[[coords, mult], ...]` form.
///
/// # Safety
/// `g` must be a live handle, `text` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_sequence_parse(
    g: *const WzsGroup,
    text: *const c_char,
    out: *mut *mut WzsSequence,
) -> WzsStatus {
    guard(|| {
        let g = deref(g, "group")?;
        let s = parse_sequence(&g.0, read_str(text, "text")?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(WzsSequence(s))))
    })
}

/// # Safety
/// `s` must come from `wzs_sequence_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wzs_sequence_free(s: *mut WzsSequence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wzs_sequence_len(s: *const WzsSequence) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Whether `s` has a weighted zero-sum subsequence of exactly `length` terms.
///
/// # Safety
/// All handles must be live and built over the same group; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_has_zero_sum_of_length(
    g: *const WzsGroup,
    w: *const WzsWeights,
    s: *const WzsSequence,
    length: usize,
    out: *mut bool,
) -> WzsStatus {
    guard(|| {
        let (g, w, s) = (
            deref(g, "group")?,
            deref(w, "weights")?,
            deref(s, "sequence")?,
        );
        let r = has_zero_of_length(&g.0, &s.0, &w.0, length).map_err(lib)?;
        write_out(out, r)
    })
}

/// Whether `s` has a nonempty weighted zero-sum subsequence.
///
/// # Safety
/// All handles must be live and built over the same group; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_has_nonempty_zero_sum(
    g: *const WzsGroup,
    w: *const WzsWeights,
    s: *const WzsSequence,
    out: *mut bool,
) -> WzsStatus {
    guard(|| {
        let (g, w, s) = (
            deref(g, "group")?,
            deref(w, "weights")?,
            deref(s, "sequence")?,
        );
        let r = has_nonempty_zero(&g.0, &s.0, &w.0).map_err(lib)?;
        write_out(out, r)
    })
}

fn invariant(
    g: &Group,
    w: &WeightSet,
    kind: WzsInvariantKind,
    node_cap: u64,
) -> wzs::Result<InvariantResult> {
    let kind = match kind {
        WzsInvariantKind::Davenport => InvariantKind::D,
        WzsInvariantKind::SmallS => InvariantKind::S,
        WzsInvariantKind::BigE => InvariantKind::E,
    };
    let budget = SearchBudget {
        node_cap: (node_cap > 0).then_some(node_cap),
        ..SearchBudget::exhaustive()
    };
    compute_invariant(g, w, kind, &budget)
}

/// Exhaustive computation of an invariant. `node_cap` 0 means unlimited.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_invariant(
    g: *const WzsGroup,
    w: *const WzsWeights,
    kind: WzsInvariantKind,
    node_cap: u64,
    out: *mut WzsInvariant,
) -> WzsStatus {
    guard(|| {
        let (g, w) = (deref(g, "group")?, deref(w, "weights")?);
        let r = invariant(&g.0, &w.0, kind, node_cap).map_err(lib)?;
        write_out(
            out,
            WzsInvariant {
                value: r.value as u64,
                exact: r.is_exact(),
                nodes: r.stats.nodes,
            },
        )
    })
}

/// Like `wzs_invariant` but returns the full result as JSON in `*out`,
/// to be released with `wzs_string_free`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wzs_invariant_json(
    g: *const WzsGroup,
    w: *const WzsWeights,
    kind: WzsInvariantKind,
    node_cap: u64,
    out: *mut *mut c_char,
) -> WzsStatus {
    guard(|| {
        let (g, w) = (deref(g, "group")?, deref(w, "weights")?);
        let r = invariant(&g.0, &w.0, kind, node_cap).map_err(lib)?;
        let text = serde_json::to_string(&r).map_err(|e| (WzsStatus::Internal, e.to_string()))?;
        let c = CString::new(text).map_err(|e| (WzsStatus::Internal, e.to_string()))?;
        write_out(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wzs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

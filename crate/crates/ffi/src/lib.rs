//! C ABI over `frameposet`.
//!
//! Frames and posets are opaque handles created by `fp_*_new`/`fp_*_from_json`
//! and released with the matching `fp_*_free`. Every fallible call returns an
//! [`FpStatus`]; on failure `fp_last_error_message` describes the error for the
//! calling thread. Strings returned through out-parameters are owned by the
//! caller and must be released with `fp_string_free`.
//!
//! Subsets cross the boundary as 32-bit masks with bit `i` set for the 0-based
//! index `i`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frameposet::dual::{canonical_dual, tight_dual, TightDualOutcome};
use frameposet::io::{frame_to_json, parse_frame, parse_poset, poset_to_json};
use frameposet::poset::{
    characteristic_of_poset, empty_cover, factor_poset_with_cap, poset_necessary_check, strongly_isomorphic,
    DEFAULT_CAP,
};
use frameposet::{frame_bounds, is_tight, FactorPoset, Field, Frame, FrameError, ToleranceConfig};
use num_complex::Complex64;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NotAFrame = 4,
    NotTight = 5,
    ZeroVector = 6,
    TooLarge = 7,
    BufferTooSmall = 8,
    Panic = 99,
}

/// Tolerances; pass NULL anywhere one is expected to use the defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FpTolerance {
    pub zero_rel: f64,
    pub rank_rel: f64,
    pub seed: u64,
}

/// Opaque frame handle.
pub struct FpFrame(Frame);

/// Opaque factor-poset handle.
pub struct FpPoset(FactorPoset);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &FrameError) -> FpStatus {
    match e {
        FrameError::Parse(_) => FpStatus::Parse,
        FrameError::NotAFrame | FrameError::NotPositiveDefinite { .. } => FpStatus::NotAFrame,
        FrameError::NotTight => FpStatus::NotTight,
        FrameError::ZeroVector(_) | FrameError::ZeroDualVector(_) => FpStatus::ZeroVector,
        FrameError::GroundSetTooLarge { .. } => FpStatus::TooLarge,
        _ => FpStatus::InvalidArgument,
    }
}

fn fail(status: FpStatus, msg: impl Into<String>) -> FpStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), FpStatus>) -> FpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(FpStatus::Panic, "internal panic"),
    }
}

fn check(e: FrameError) -> FpStatus {
    fail(status_of(&e), e.to_string())
}

fn tolerance(tol: *const FpTolerance) -> Result<ToleranceConfig, FpStatus> {
    if tol.is_null() {
        return Ok(ToleranceConfig::default());
    }
    let t = unsafe { *tol };
    ToleranceConfig::new(t.zero_rel, t.rank_rel, t.seed).map_err(check)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, FpStatus> {
    p.as_ref().ok_or_else(|| fail(FpStatus::NullPointer, "null handle"))
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, FpStatus> {
    if s.is_null() {
        return Err(fail(FpStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(FpStatus::Parse, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), FpStatus> {
    if out.is_null() {
        return Err(fail(FpStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), FpStatus> {
    let c = CString::new(s).map_err(|_| fail(FpStatus::InvalidArgument, "string contains NUL"))?;
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Default tolerances.
#[no_mangle]
pub extern "C" fn fp_tolerance_default() -> FpTolerance {
    let t = ToleranceConfig::default();
    FpTolerance { zero_rel: t.zero_rel, rank_rel: t.rank_rel, seed: t.seed }
}

/// Real frame of `k` vectors in dimension `n`; `data` holds `k * n` doubles,
/// one vector after another.
///
/// # Safety
/// `data` must point to `k * n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_new_real(n: usize, k: usize, data: *const f64, out: *mut *mut FpFrame) -> FpStatus {
    guard(|| {
        if data.is_null() {
            return Err(fail(FpStatus::NullPointer, "null data"));
        }
        let flat = std::slice::from_raw_parts(data, n * k);
        let vectors = flat.chunks(n.max(1)).take(k).map(|c| c.to_vec()).collect();
        let f = Frame::real(n, vectors).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpFrame(f))))
    })
}

/// Complex frame; `re` and `im` each hold `k * n` doubles, vector-major.
///
/// # Safety
/// `re` and `im` must point to `k * n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_new_complex(
    n: usize,
    k: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut FpFrame,
) -> FpStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(fail(FpStatus::NullPointer, "null data"));
        }
        let re = std::slice::from_raw_parts(re, n * k);
        let im = std::slice::from_raw_parts(im, n * k);
        let vectors = (0..k).map(|i| (0..n).map(|j| Complex64::new(re[i * n + j], im[i * n + j])).collect()).collect();
        let f = Frame::new(Field::Complex, n, vectors).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpFrame(f))))
    })
}

/// Parses a frame file document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_from_json(json: *const c_char, out: *mut *mut FpFrame) -> FpStatus {
    guard(|| {
        let f = parse_frame(c_str(json)?).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpFrame(f))))
    })
}

/// # Safety
/// `frame` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_free(frame: *mut FpFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Dimension, or 0 for NULL.
///
/// # Safety
/// `frame` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_dim(frame: *const FpFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.0.dim())
}

/// Number of vectors, or 0 for NULL.
///
/// # Safety
/// `frame` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_len(frame: *const FpFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.0.len())
}

/// Frame document with 17 significant digits.
///
/// # Safety
/// `frame` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_to_json(frame: *const FpFrame, out: *mut *mut c_char) -> FpStatus {
    guard(|| put_string(out, frame_to_json(&handle(frame)?.0)))
}

/// Optimal frame bounds.
///
/// # Safety
/// `frame` must be a live handle, `tol` NULL or readable, `lower`/`upper` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_bounds(
    frame: *const FpFrame,
    tol: *const FpTolerance,
    lower: *mut f64,
    upper: *mut f64,
) -> FpStatus {
    guard(|| {
        let (a, b) = frame_bounds(&handle(frame)?.0, &tolerance(tol)?).map_err(check)?;
        put(lower, a)?;
        put(upper, b)
    })
}

/// Whether the subframe on `mask` is tight (1) or not (0).
///
/// # Safety
/// `frame` must be a live handle, `tol` NULL or readable, `tight` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_frame_is_tight(
    frame: *const FpFrame,
    mask: u32,
    tol: *const FpTolerance,
    tight: *mut i32,
) -> FpStatus {
    guard(|| {
        let cert =
            is_tight(&handle(frame)?.0, frameposet::IndexSet::from_bits(mask), &tolerance(tol)?).map_err(check)?;
        put(tight, cert.tight as i32)
    })
}

/// Canonical dual as a new frame handle.
///
/// # Safety
/// `frame` must be a live handle, `tol` NULL or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_canonical_dual(
    frame: *const FpFrame,
    tol: *const FpTolerance,
    out: *mut *mut FpFrame,
) -> FpStatus {
    guard(|| {
        let d = canonical_dual(&handle(frame)?.0, &tolerance(tol)?).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpFrame(d.as_frame()))))
    })
}

/// Alternate tight dual of a tight frame. When only the canonical dual is
/// tight (`k < 2n`) the canonical dual is returned and `alternate` is 0.
///
/// # Safety
/// `frame` must be a live handle, `tol` NULL or readable, the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn fp_tight_dual(
    frame: *const FpFrame,
    alpha: f64,
    tol: *const FpTolerance,
    out: *mut *mut FpFrame,
    bound: *mut f64,
    alternate: *mut i32,
) -> FpStatus {
    guard(|| {
        let f = &handle(frame)?.0;
        let tol = tolerance(tol)?;
        match tight_dual(f, alpha, &tol).map_err(check)? {
            TightDualOutcome::Alternate { element, bound: b } => {
                put(bound, b)?;
                put(alternate, 1)?;
                put(out, Box::into_raw(Box::new(FpFrame(element.as_frame()))))
            }
            TightDualOutcome::CanonicalOnly { .. } => {
                let d = canonical_dual(f, &tol).map_err(check)?;
                let (a, _) = frame_bounds(&d.as_frame(), &tol).map_err(check)?;
                put(bound, a)?;
                put(alternate, 0)?;
                put(out, Box::into_raw(Box::new(FpFrame(d.as_frame()))))
            }
        }
    })
}

/// Factor poset of a frame; `cap` 0 selects the default ground-set cap.
///
/// # Safety
/// `frame` must be a live handle, `tol` NULL or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_factor_poset(
    frame: *const FpFrame,
    tol: *const FpTolerance,
    cap: usize,
    out: *mut *mut FpPoset,
) -> FpStatus {
    guard(|| {
        let cap = if cap == 0 { DEFAULT_CAP } else { cap };
        let p = factor_poset_with_cap(&handle(frame)?.0, &tolerance(tol)?, cap).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpPoset(p))))
    })
}

/// Parses a poset file document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_from_json(json: *const c_char, out: *mut *mut FpPoset) -> FpStatus {
    guard(|| {
        let p = parse_poset(c_str(json)?).map_err(check)?;
        put(out, Box::into_raw(Box::new(FpPoset(p))))
    })
}

/// # Safety
/// `poset` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_free(poset: *mut FpPoset) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

/// Ground-set size, or 0 for NULL.
///
/// # Safety
/// `poset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_ground(poset: *const FpPoset) -> usize {
    poset.as_ref().map_or(0, |p| p.0.ground())
}

/// Number of members including the empty set, or 0 for NULL.
///
/// # Safety
/// `poset` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_len(poset: *const FpPoset) -> usize {
    poset.as_ref().map_or(0, |p| p.0.len())
}

unsafe fn write_masks(masks: &[u32], buf: *mut u32, cap: usize, count: *mut usize) -> Result<(), FpStatus> {
    put(count, masks.len())?;
    if masks.len() > cap {
        return Err(fail(FpStatus::BufferTooSmall, format!("need room for {} masks", masks.len())));
    }
    if !masks.is_empty() {
        if buf.is_null() {
            return Err(fail(FpStatus::NullPointer, "null buffer"));
        }
        ptr::copy_nonoverlapping(masks.as_ptr(), buf, masks.len());
    }
    Ok(())
}

/// Member masks in sorted order. `count` receives the number of members even
/// when the buffer is too small.
///
/// # Safety
/// `poset` must be a live handle, `buf` writable for `cap` entries, `count` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_members(
    poset: *const FpPoset,
    buf: *mut u32,
    cap: usize,
    count: *mut usize,
) -> FpStatus {
    guard(|| {
        let masks: Vec<u32> = handle(poset)?.0.members().iter().map(|m| m.bits()).collect();
        write_masks(&masks, buf, cap, count)
    })
}

/// Empty-cover masks, same buffer protocol as `fp_poset_members`.
///
/// # Safety
/// As for `fp_poset_members`.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_empty_cover(
    poset: *const FpPoset,
    buf: *mut u32,
    cap: usize,
    count: *mut usize,
) -> FpStatus {
    guard(|| {
        let masks: Vec<u32> = empty_cover(&handle(poset)?.0).sets.iter().map(|m| m.bits()).collect();
        write_masks(&masks, buf, cap, count)
    })
}

/// Characteristic counts; `buf` must hold `fp_poset_ground` entries.
///
/// # Safety
/// `poset` must be a live handle and `buf` writable for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_characteristic(poset: *const FpPoset, buf: *mut usize, cap: usize) -> FpStatus {
    guard(|| {
        let chi = characteristic_of_poset(&handle(poset)?.0);
        if chi.counts.len() > cap {
            return Err(fail(FpStatus::BufferTooSmall, format!("need room for {} counts", chi.counts.len())));
        }
        if !chi.counts.is_empty() {
            if buf.is_null() {
                return Err(fail(FpStatus::NullPointer, "null buffer"));
            }
            ptr::copy_nonoverlapping(chi.counts.as_ptr(), buf, chi.counts.len());
        }
        Ok(())
    })
}

/// Runs the necessary checks for a candidate poset; `passed` receives 1 or 0
/// and `violations` the number of violated conditions.
///
/// # Safety
/// `poset` must be a live handle and the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_necessary_check(
    poset: *const FpPoset,
    passed: *mut i32,
    violations: *mut usize,
) -> FpStatus {
    guard(|| {
        let check = poset_necessary_check(&handle(poset)?.0);
        put(passed, check.passed() as i32)?;
        put(violations, check.violations.len())
    })
}

/// Looks for a permutation of the ground set taking `p` onto `q`. `found`
/// receives 1 and `perm` (room for `cap` entries) the 0-based images when
/// one exists.
///
/// # Safety
/// `p`, `q` must be live handles; `perm` writable for `cap` entries; `found` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_strongly_isomorphic(
    p: *const FpPoset,
    q: *const FpPoset,
    perm: *mut usize,
    cap: usize,
    found: *mut i32,
) -> FpStatus {
    guard(|| match strongly_isomorphic(&handle(p)?.0, &handle(q)?.0).map_err(check)? {
        Some(eta) => {
            if eta.len() > cap || perm.is_null() {
                return Err(fail(FpStatus::BufferTooSmall, format!("need room for {} entries", eta.len())));
            }
            ptr::copy_nonoverlapping(eta.as_ptr(), perm, eta.len());
            put(found, 1)
        }
        None => put(found, 0),
    })
}

/// Poset file document.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_to_json(poset: *const FpPoset, out: *mut *mut c_char) -> FpStatus {
    guard(|| put_string(out, poset_to_json(&handle(poset)?.0)))
}

/// Hasse diagram in DOT.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fp_poset_to_dot(poset: *const FpPoset, out: *mut *mut c_char) -> FpStatus {
    guard(|| put_string(out, handle(poset)?.0.to_dot()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

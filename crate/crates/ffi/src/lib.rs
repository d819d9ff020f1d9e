//! C ABI for loopforge.
//!
//! Loops and mappings are opaque heap handles released with
//! [`lf_loop_free`] and [`lf_mapping_free`]. Every fallible call returns an
//! [`LfStatus`]; on failure [`lf_last_error`] describes the cause. Results are
//! written through out-pointers only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use loopforge::catalog;
use loopforge::extension::{verify_theorem1, ExtensionError, ExtensionSpec};
use loopforge::morphisms::{classify, enumerate_semiautomorphisms, inversion, MorphError, SemiAutOptions};
use loopforge::props::{is_commutative, is_group, is_moufang, MoufangMode};
use loopforge::scan::ScanPolicy;
use loopforge::{CayleyTable, LoopError, Mapping, SubsetHandle};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidTable = 2,
    OutOfRange = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    HypothesisViolated = 6,
    BudgetExhausted = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque loop handle.
pub struct LfLoop {
    table: CayleyTable,
}

/// Opaque mapping handle.
pub struct LfMapping {
    map: Mapping,
}

/// Classification flags of a mapping.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LfMapClass {
    pub is_automorphism: bool,
    pub is_anti_automorphism: bool,
    pub is_semi_automorphism: bool,
    pub order: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl std::fmt::Display) {
    let s = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

struct Fail(LfStatus, String);

impl Fail {
    fn new(status: LfStatus, msg: impl std::fmt::Display) -> Self {
        Fail(status, msg.to_string())
    }
}

impl From<LoopError> for Fail {
    fn from(e: LoopError) -> Self {
        let status = match e {
            LoopError::CapExceeded { .. } => LfStatus::CapExceeded,
            LoopError::Table(_) => LfStatus::InvalidTable,
            _ => LfStatus::InvalidArgument,
        };
        Fail::new(status, e)
    }
}

impl From<MorphError> for Fail {
    fn from(e: MorphError) -> Self {
        let status = match e {
            MorphError::BudgetExhausted { .. } => LfStatus::BudgetExhausted,
            MorphError::Loop(LoopError::CapExceeded { .. }) => LfStatus::CapExceeded,
            _ => LfStatus::InvalidArgument,
        };
        Fail::new(status, e)
    }
}

impl From<ExtensionError> for Fail {
    fn from(e: ExtensionError) -> Self {
        let status = match e {
            ExtensionError::HypothesisViolation(_) => LfStatus::HypothesisViolated,
            ExtensionError::CapExceeded { .. } => LfStatus::CapExceeded,
            ExtensionError::EnumerationBudget => LfStatus::BudgetExhausted,
            _ => LfStatus::InvalidArgument,
        };
        Fail::new(status, e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LfStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::new(LfStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::new(LfStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::new(LfStatus::NullPointer, "null array"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn new_loop(table: CayleyTable) -> *mut LfLoop {
    Box::into_raw(Box::new(LfLoop { table }))
}

fn new_mapping(map: Mapping) -> *mut LfMapping {
    Box::into_raw(Box::new(LfMapping { map }))
}

fn policy() -> ScanPolicy {
    ScanPolicy::with_cap(catalog::MAX_CATALOG_ORDER)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Build a loop from `n * n` row-major cells. Element 0 must be the identity.
///
/// # Safety
/// `cells` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_from_table(n: usize, cells: *const u32, out: *mut *mut LfLoop) -> LfStatus {
    guard(|| {
        let len = n.checked_mul(n).ok_or_else(|| Fail::new(LfStatus::InvalidArgument, "order overflows"))?;
        let cells = slice(cells, len)?.to_vec();
        let t = CayleyTable::from_cells(n, cells).map_err(|e| Fail::new(LfStatus::InvalidTable, e))?;
        write(out, new_loop(t))
    })
}

/// Build a catalog loop by name (`z5`, `sym3`, `q8`, `chein:sym3`, `cml81`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_catalog(name: *const c_char, out: *mut *mut LfLoop) -> LfStatus {
    guard(|| {
        if name.is_null() {
            return Err(Fail::new(LfStatus::NullPointer, "null name"));
        }
        let name = CStr::from_ptr(name).to_str().map_err(|e| Fail::new(LfStatus::InvalidArgument, e))?;
        let t = catalog::named(name).map_err(|e| Fail::new(LfStatus::InvalidArgument, e))?;
        write(out, new_loop(t))
    })
}

/// Release a loop. Null is ignored.
///
/// # Safety
/// `l` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_free(l: *mut LfLoop) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Order of a loop, or 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_order(l: *const LfLoop) -> usize {
    l.as_ref().map_or(0, |l| l.table.order())
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_mul(l: *const LfLoop, x: usize, y: usize, out: *mut usize) -> LfStatus {
    guard(|| {
        let t = &deref(l)?.table;
        let z = t.try_mul(x, y).map_err(|e| Fail::new(LfStatus::OutOfRange, e))?;
        write(out, z)
    })
}

/// Copy the `n * n` cells into `buf`, which holds `len` values.
///
/// # Safety
/// `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_copy_table(l: *const LfLoop, buf: *mut u32, len: usize) -> LfStatus {
    guard(|| {
        let cells = deref(l)?.table.cells();
        if len < cells.len() {
            return Err(Fail::new(LfStatus::BufferTooSmall, format!("need {} cells", cells.len())));
        }
        if buf.is_null() {
            return Err(Fail::new(LfStatus::NullPointer, "null buffer"));
        }
        std::ptr::copy_nonoverlapping(cells.as_ptr(), buf, cells.len());
        Ok(())
    })
}

/// Full Moufang scan; with `all_four` every identity is checked.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_is_moufang(l: *const LfLoop, all_four: bool, out: *mut bool) -> LfStatus {
    guard(|| {
        let mode = if all_four { MoufangMode::AllFour } else { MoufangMode::Single };
        let r = is_moufang(&deref(l)?.table, mode, &policy())?;
        write(out, r.holds)
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_is_group(l: *const LfLoop, out: *mut bool) -> LfStatus {
    guard(|| write(out, is_group(&deref(l)?.table, &policy())?.holds))
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_is_commutative(l: *const LfLoop, out: *mut bool) -> LfStatus {
    guard(|| write(out, is_commutative(&deref(l)?.table).holds))
}

/// Order-`2|N|` double `N ∪ Nu` of a group `N`.
///
/// # Safety
/// `base` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_loop_chein_double(base: *const LfLoop, out: *mut *mut LfLoop) -> LfStatus {
    guard(|| {
        let t = catalog::chein_double(&deref(base)?.table).map_err(|e| Fail::new(LfStatus::InvalidArgument, e))?;
        write(out, new_loop(t))
    })
}

/// Materialize the cyclic extension of `base` of degree `h` by `action`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_extension_materialize(
    base: *const LfLoop,
    h: usize,
    action: *const LfMapping,
    out: *mut *mut LfLoop,
) -> LfStatus {
    guard(|| {
        let spec = ExtensionSpec::new(deref(base)?.table.clone(), h, deref(action)?.map.clone())?;
        write(out, new_loop(spec.materialize()?))
    })
}

/// Check the factorized product law for `g = N⟨u⟩` with `N` given by its
/// members. Hypothesis failures return `HypothesisViolated`.
///
/// # Safety
/// `g` must be a live handle; `members` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn lf_verify_theorem1(
    g: *const LfLoop,
    members: *const usize,
    len: usize,
    u: usize,
    out: *mut bool,
) -> LfStatus {
    guard(|| {
        let t = &deref(g)?.table;
        let n = SubsetHandle::new(t.order(), slice(members, len)?.to_vec())?;
        let r = verify_theorem1(t, &n, u, &policy())?;
        write(out, r.holds)
    })
}

/// Build a mapping from its image array.
///
/// # Safety
/// `images` must point to `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_new(images: *const usize, n: usize, out: *mut *mut LfMapping) -> LfStatus {
    guard(|| {
        let m = Mapping::new(slice(images, n)?.to_vec())?;
        write(out, new_mapping(m))
    })
}

/// Inversion `x ↦ x⁻¹` of a loop.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_inversion(l: *const LfLoop, out: *mut *mut LfMapping) -> LfStatus {
    guard(|| write(out, new_mapping(inversion(&deref(l)?.table))))
}

/// The semi-automorphism `(a,b,c) ↦ (a/k, b/k, ck + ab(k⁻² − k)/2)` of the Heisenberg group over `F_q`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_rajah(q: u64, k: u64, out: *mut *mut LfMapping) -> LfStatus {
    guard(|| {
        let m = catalog::rajah_semiauto(q, k).map_err(|e| Fail::new(LfStatus::InvalidArgument, e))?;
        write(out, new_mapping(m))
    })
}

/// Release a mapping. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_free(m: *mut LfMapping) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_len(m: *const LfMapping) -> usize {
    m.as_ref().map_or(0, |m| m.map.len())
}

/// Image of a single point.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_apply(m: *const LfMapping, x: usize, out: *mut usize) -> LfStatus {
    guard(|| {
        let m = &deref(m)?.map;
        if x >= m.len() {
            return Err(Fail::new(LfStatus::OutOfRange, format!("{x} is not below {}", m.len())));
        }
        write(out, m.apply(x))
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_mapping_classify(l: *const LfLoop, m: *const LfMapping, out: *mut LfMapClass) -> LfStatus {
    guard(|| {
        let c = classify(&deref(l)?.table, &deref(m)?.map)?;
        write(
            out,
            LfMapClass {
                is_automorphism: c.is_automorphism,
                is_anti_automorphism: c.is_anti_automorphism,
                is_semi_automorphism: c.is_semi_automorphism,
                order: c.order,
            },
        )
    })
}

/// Count semi-automorphisms, optionally only those fixing the identity.
/// `budget` bounds the search nodes; 0 uses the library default.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lf_semiaut_count(
    l: *const LfLoop,
    budget: u64,
    identity_fixing: bool,
    out: *mut usize,
) -> LfStatus {
    guard(|| {
        let mut opts = SemiAutOptions { identity_fixing, ..Default::default() };
        if budget > 0 {
            opts.budget = budget;
        }
        let g = enumerate_semiautomorphisms(&deref(l)?.table, opts)?;
        write(out, g.maps.len())
    })
}

//! C ABI for the pro2 group engine.
//!
//! Every object crosses the boundary as an opaque handle owned by Rust;
//! callers free handles with the matching `*_free` function.  Functions
//! return a [`Pro2Status`] code and write results through out-pointers.
//! The header `include/pro2.h` is kept in sync with this file (regenerate
//! with cbindgen; see cbindgen.toml).
//!
//! Safety contract, uniform across the surface: handle arguments must be
//! valid pointers obtained from this library (or null, which is reported
//! as `NullPointer`), out-pointers must be writable, and handles must not
//! be used after the matching `*_free`.

#![allow(clippy::missing_safety_doc)]

use pro2_core::series::{
    dimension_series, frattini_series, iterated_power_series, lower_2_series,
    lower_central_series, rn_series, two_power_series,
};
use pro2_core::spectra::{build_named, hdim_ratio, NamedSubgroup};
use pro2_core::verify::{run_suite, CheckStatus, VerifyOptions};
use pro2_core::{Error, GroupContext, SeriesTable, Subgroup};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pro2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ContextMismatch = 3,
    NotNormal = 4,
    Capacity = 5,
    UndefinedRatio = 6,
    CheckFailed = 7,
    Panic = 8,
}

/// Generator names for `pro2_element_generator`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pro2Gen {
    X = 0,
    Y = 1,
    /// `y_i = y^(x^i)`; pass `i` as the index argument.
    Yi = 2,
    /// `c_d = [y_0, y_d]`; pass `d` as the index argument.
    Cd = 3,
    YSquared = 4,
    W = 5,
}

/// Filtration series selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pro2SeriesKind {
    LowerCentral = 0,
    Lower2 = 1,
    Dimension = 2,
    Frattini = 3,
    TwoPower = 4,
    Iterated = 5,
    RSeries = 6,
    NSeries = 7,
}

/// Named subgroup selector; `m` and `n` are only read for `K` and `L`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pro2NamedSubgroup {
    Z = 0,
    Zk = 1,
    H = 2,
    K = 3,
    L = 4,
    FullGroup = 5,
    Trivial = 6,
}

pub struct Pro2Context(GroupContext);
pub struct Pro2Element(pro2_core::Element);
pub struct Pro2Subgroup(Subgroup);
pub struct Pro2Series(SeriesTable);

fn status_of(e: &Error) -> Pro2Status {
    match e {
        Error::ContextMismatch { .. } => Pro2Status::ContextMismatch,
        Error::NotNormal => Pro2Status::NotNormal,
        Error::Capacity { .. } => Pro2Status::Capacity,
        Error::UndefinedRatio => Pro2Status::UndefinedRatio,
        _ => Pro2Status::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Pro2Status) -> Pro2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => Pro2Status::Panic,
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Pro2Status {
    if out.is_null() {
        return Pro2Status::NullPointer;
    }
    unsafe { out.write(value) };
    Pro2Status::Ok
}

macro_rules! deref {
    ($ptr:ident) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return Pro2Status::NullPointer,
        }
    };
}

/// Create the context for `G_k` (`2 <= k <= 6`).
#[no_mangle]
pub unsafe extern "C" fn pro2_context_new(k: u32, out: *mut *mut Pro2Context) -> Pro2Status {
    guard(|| match GroupContext::new(k) {
        Ok(ctx) => unsafe { write_out(out, Box::into_raw(Box::new(Pro2Context(ctx)))) },
        Err(e) => status_of(&e),
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_context_free(ctx: *mut Pro2Context) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// `log_2 |G_k| = 2^k + 2^(k-1) + k + 2`.
#[no_mangle]
pub unsafe extern "C" fn pro2_context_log_order(
    ctx: *const Pro2Context,
    out: *mut u32,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        unsafe { write_out(out, ctx.0.log_order()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_identity(
    ctx: *const Pro2Context,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(ctx.0.identity())))) }
    })
}

/// The named generator; `index` is read for `Yi` and `Cd` only.
#[no_mangle]
pub unsafe extern "C" fn pro2_element_generator(
    ctx: *const Pro2Context,
    gen: Pro2Gen,
    index: u32,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        let gen = match gen {
            Pro2Gen::X => pro2_core::Gen::X,
            Pro2Gen::Y => pro2_core::Gen::Y,
            Pro2Gen::Yi => pro2_core::Gen::Yi(index),
            Pro2Gen::Cd => pro2_core::Gen::Cd(index),
            Pro2Gen::YSquared => pro2_core::Gen::YSquared,
            Pro2Gen::W => pro2_core::Gen::W,
        };
        match ctx.0.generator(gen) {
            Ok(e) => unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(e)))) },
            Err(e) => status_of(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_free(e: *mut Pro2Element) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_mul(
    a: *const Pro2Element,
    b: *const Pro2Element,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        let b = deref!(b);
        match a.0.mul(&b.0) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(p)))) },
            Err(e) => status_of(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_inv(
    a: *const Pro2Element,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(a.0.inv())))) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_pow(
    a: *const Pro2Element,
    n: i64,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(a.0.pow(n))))) }
    })
}

/// Left-normed commutator `[a, b] = a^-1 b^-1 a b`.
#[no_mangle]
pub unsafe extern "C" fn pro2_element_comm(
    a: *const Pro2Element,
    b: *const Pro2Element,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        let b = deref!(b);
        match a.0.comm(&b.0) {
            Ok(c) => unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(c)))) },
            Err(e) => status_of(&e),
        }
    })
}

/// Order of the element, a power of 2.
#[no_mangle]
pub unsafe extern "C" fn pro2_element_order(a: *const Pro2Element, out: *mut u64) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        unsafe { write_out(out, a.0.order()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_is_identity(
    a: *const Pro2Element,
    out: *mut bool,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        unsafe { write_out(out, a.0.is_identity()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_element_eq(
    a: *const Pro2Element,
    b: *const Pro2Element,
    out: *mut bool,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        let b = deref!(b);
        unsafe { write_out(out, a.0 == b.0) }
    })
}

/// Polycyclic coordinate vector as two 64-bit words (low word first).
#[no_mangle]
pub unsafe extern "C" fn pro2_element_coords(
    a: *const Pro2Element,
    out_lo: *mut u64,
    out_hi: *mut u64,
) -> Pro2Status {
    guard(|| {
        let a = deref!(a);
        let c = a.0.coords();
        let s = unsafe { write_out(out_lo, c as u64) };
        if s != Pro2Status::Ok {
            return s;
        }
        unsafe { write_out(out_hi, (c >> 64) as u64) }
    })
}

/// Echelonized closure of `len` generators; the normal closure when
/// `normal` is set.
#[no_mangle]
pub unsafe extern "C" fn pro2_subgroup_closure(
    ctx: *const Pro2Context,
    gens: *const *const Pro2Element,
    len: usize,
    normal: bool,
    out: *mut *mut Pro2Subgroup,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        if gens.is_null() && len > 0 {
            return Pro2Status::NullPointer;
        }
        let mut elems = Vec::with_capacity(len);
        for i in 0..len {
            let p = unsafe { *gens.add(i) };
            let e = match unsafe { p.as_ref() } {
                Some(e) => e,
                None => return Pro2Status::NullPointer,
            };
            if e.0.level() != ctx.0.k() {
                return Pro2Status::ContextMismatch;
            }
            elems.push(e.0);
        }
        let s = if normal {
            Subgroup::normal_closure(ctx.0, &elems)
        } else {
            Subgroup::closure(ctx.0, &elems)
        };
        unsafe { write_out(out, Box::into_raw(Box::new(Pro2Subgroup(s)))) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_subgroup_free(s: *mut Pro2Subgroup) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn pro2_subgroup_log_order(
    s: *const Pro2Subgroup,
    out: *mut u32,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        unsafe { write_out(out, s.0.log_order()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_subgroup_contains(
    s: *const Pro2Subgroup,
    e: *const Pro2Element,
    out: *mut bool,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        let e = deref!(e);
        if e.0.level() != s.0.ctx().k() {
            return Pro2Status::ContextMismatch;
        }
        unsafe { write_out(out, s.0.contains(&e.0)) }
    })
}

/// Residue of `e` after sifting through the subgroup basis.
#[no_mangle]
pub unsafe extern "C" fn pro2_subgroup_sift(
    s: *const Pro2Subgroup,
    e: *const Pro2Element,
    out: *mut *mut Pro2Element,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        let e = deref!(e);
        if e.0.level() != s.0.ctx().k() {
            return Pro2Status::ContextMismatch;
        }
        unsafe { write_out(out, Box::into_raw(Box::new(Pro2Element(s.0.sift(&e.0))))) }
    })
}

fn compute_series(
    ctx: GroupContext,
    kind: Pro2SeriesKind,
    cap: u32,
) -> Result<SeriesTable, Error> {
    match kind {
        Pro2SeriesKind::LowerCentral => Ok(lower_central_series(ctx)),
        Pro2SeriesKind::Lower2 => lower_2_series(ctx, cap),
        Pro2SeriesKind::Dimension => dimension_series(ctx, cap),
        Pro2SeriesKind::Frattini => frattini_series(ctx, cap),
        Pro2SeriesKind::TwoPower => two_power_series(ctx, cap),
        Pro2SeriesKind::Iterated => iterated_power_series(ctx, cap),
        Pro2SeriesKind::RSeries => Ok(rn_series(ctx, cap)?.0),
        Pro2SeriesKind::NSeries => Ok(rn_series(ctx, cap)?.1),
    }
}

/// Compute a filtration series; `cap_log2` bounds exhaustive enumeration.
#[no_mangle]
pub unsafe extern "C" fn pro2_series_compute(
    ctx: *const Pro2Context,
    kind: Pro2SeriesKind,
    cap_log2: u32,
    out: *mut *mut Pro2Series,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        match compute_series(ctx.0, kind, cap_log2) {
            Ok(t) => unsafe { write_out(out, Box::into_raw(Box::new(Pro2Series(t)))) },
            Err(e) => status_of(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_series_free(s: *mut Pro2Series) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Subscript of the first stored term.
#[no_mangle]
pub unsafe extern "C" fn pro2_series_start_index(
    s: *const Pro2Series,
    out: *mut u32,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        unsafe { write_out(out, s.0.start_index()) }
    })
}

/// Number of factor steps (one less than the number of stored terms).
#[no_mangle]
pub unsafe extern "C" fn pro2_series_num_factors(
    s: *const Pro2Series,
    out: *mut usize,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        unsafe { write_out(out, s.0.factor_ranks().len()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_series_factor_rank(
    s: *const Pro2Series,
    idx: usize,
    out: *mut u32,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        match s.0.factor_ranks().get(idx) {
            Some(&r) => unsafe { write_out(out, r) },
            None => Pro2Status::InvalidArgument,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn pro2_series_term_log_order(
    s: *const Pro2Series,
    idx: usize,
    out: *mut u32,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        match s.0.terms().get(idx) {
            Some(t) => unsafe { write_out(out, t.log_order()) },
            None => Pro2Status::InvalidArgument,
        }
    })
}

/// Whether the term agrees with its structural closed form.
#[no_mangle]
pub unsafe extern "C" fn pro2_series_closed_form_match(
    s: *const Pro2Series,
    idx: usize,
    out: *mut bool,
) -> Pro2Status {
    guard(|| {
        let s = deref!(s);
        match s.0.closed_form_match().get(idx) {
            Some(&b) => unsafe { write_out(out, b) },
            None => Pro2Status::InvalidArgument,
        }
    })
}

/// Exact ratio `log|K S_i : S_i| / log|G : S_i|` for a named subgroup `K`
/// against the series term with subscript `level`; writes the reduced
/// fraction.
#[no_mangle]
pub unsafe extern "C" fn pro2_hdim_ratio(
    ctx: *const Pro2Context,
    kind: Pro2SeriesKind,
    subgroup: Pro2NamedSubgroup,
    m: u32,
    n: u32,
    level: u32,
    cap_log2: u32,
    out_num: *mut u64,
    out_den: *mut u64,
) -> Pro2Status {
    guard(|| {
        let ctx = deref!(ctx);
        let named = match subgroup {
            Pro2NamedSubgroup::Z => NamedSubgroup::Z,
            Pro2NamedSubgroup::Zk => NamedSubgroup::Zk,
            Pro2NamedSubgroup::H => NamedSubgroup::H,
            Pro2NamedSubgroup::K => NamedSubgroup::K { m, n },
            Pro2NamedSubgroup::L => NamedSubgroup::L { m, n },
            Pro2NamedSubgroup::FullGroup => NamedSubgroup::FullGroup,
            Pro2NamedSubgroup::Trivial => NamedSubgroup::Trivial,
        };
        let table = match compute_series(ctx.0, kind, cap_log2) {
            Ok(t) => t,
            Err(e) => return status_of(&e),
        };
        let sub = match build_named(&ctx.0, named) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        match hdim_ratio(&table, &sub, level) {
            Ok(p) => {
                let s = unsafe { write_out(out_num, p.value.num()) };
                if s != Pro2Status::Ok {
                    return s;
                }
                unsafe { write_out(out_den, p.value.den()) }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Run the structural check suite for `G_k`; writes the number of failing
/// checks and returns `CheckFailed` if any fail (skips do not fail).
#[no_mangle]
pub unsafe extern "C" fn pro2_verify(
    k: u32,
    cap_log2: u32,
    samples: u32,
    out_failed: *mut u32,
) -> Pro2Status {
    guard(|| {
        let ctx = match GroupContext::new(k) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let opts = VerifyOptions {
            log_cap: cap_log2,
            samples,
        };
        let failed = run_suite(&ctx, &opts)
            .iter()
            .filter(|o| o.status == CheckStatus::Fail)
            .count() as u32;
        let s = unsafe { write_out(out_failed, failed) };
        if s != Pro2Status::Ok {
            return s;
        }
        if failed == 0 {
            Pro2Status::Ok
        } else {
            Pro2Status::CheckFailed
        }
    })
}

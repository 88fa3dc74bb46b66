//! Exercises the C surface exactly as a foreign caller would: raw pointers,
//! status codes, explicit frees.

use pro2_ffi::*;
use std::ptr;

unsafe fn new_ctx(k: u32) -> *mut Pro2Context {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { pro2_context_new(k, &mut ctx) }, Pro2Status::Ok);
    assert!(!ctx.is_null());
    ctx
}

unsafe fn gen(ctx: *const Pro2Context, g: Pro2Gen, index: u32) -> *mut Pro2Element {
    let mut e = ptr::null_mut();
    assert_eq!(
        unsafe { pro2_element_generator(ctx, g, index, &mut e) },
        Pro2Status::Ok
    );
    e
}

#[test]
fn context_lifecycle_and_errors() {
    unsafe {
        let mut ctx = ptr::null_mut();
        assert_eq!(pro2_context_new(1, &mut ctx), Pro2Status::InvalidArgument);
        assert_eq!(pro2_context_new(7, &mut ctx), Pro2Status::InvalidArgument);
        assert_eq!(
            pro2_context_new(3, ptr::null_mut()),
            Pro2Status::NullPointer
        );

        let ctx = new_ctx(3);
        let mut log_order = 0;
        assert_eq!(pro2_context_log_order(ctx, &mut log_order), Pro2Status::Ok);
        assert_eq!(log_order, 17);
        assert_eq!(
            pro2_context_log_order(ptr::null(), &mut log_order),
            Pro2Status::NullPointer
        );
        pro2_context_free(ctx);
        pro2_context_free(ptr::null_mut());
    }
}

#[test]
fn element_arithmetic_through_the_abi() {
    unsafe {
        let ctx = new_ctx(2);
        let x = gen(ctx, Pro2Gen::X, 0);
        let y = gen(ctx, Pro2Gen::Y, 0);
        let w = gen(ctx, Pro2Gen::W, 0);

        // Orders: |y| = 4, |w| = 2, |x| = 2^(k+1).
        let mut ord = 0u64;
        assert_eq!(pro2_element_order(y, &mut ord), Pro2Status::Ok);
        assert_eq!(ord, 4);
        assert_eq!(pro2_element_order(w, &mut ord), Pro2Status::Ok);
        assert_eq!(ord, 2);
        assert_eq!(pro2_element_order(x, &mut ord), Pro2Status::Ok);
        assert_eq!(ord, 8);

        // (xy)^(2^k) = x^(2^k) w.
        let mut xy = ptr::null_mut();
        assert_eq!(pro2_element_mul(x, y, &mut xy), Pro2Status::Ok);
        let mut lhs = ptr::null_mut();
        assert_eq!(pro2_element_pow(xy, 4, &mut lhs), Pro2Status::Ok);
        let mut x4 = ptr::null_mut();
        assert_eq!(pro2_element_pow(x, 4, &mut x4), Pro2Status::Ok);
        let mut rhs = ptr::null_mut();
        assert_eq!(pro2_element_mul(x4, w, &mut rhs), Pro2Status::Ok);
        let mut eq = false;
        assert_eq!(pro2_element_eq(lhs, rhs, &mut eq), Pro2Status::Ok);
        assert!(eq);

        // [w, x] = [y_0, y_(2^(k-1))] = c_(2^(k-1)).
        let mut wx = ptr::null_mut();
        assert_eq!(pro2_element_comm(w, x, &mut wx), Pro2Status::Ok);
        let c2 = gen(ctx, Pro2Gen::Cd, 2);
        assert_eq!(pro2_element_eq(wx, c2, &mut eq), Pro2Status::Ok);
        assert!(eq);

        // g * g^-1 = 1 and coords of the identity vanish.
        let mut inv = ptr::null_mut();
        assert_eq!(pro2_element_inv(xy, &mut inv), Pro2Status::Ok);
        let mut unit = ptr::null_mut();
        assert_eq!(pro2_element_mul(xy, inv, &mut unit), Pro2Status::Ok);
        let mut is_id = false;
        assert_eq!(pro2_element_is_identity(unit, &mut is_id), Pro2Status::Ok);
        assert!(is_id);
        let (mut lo, mut hi) = (1u64, 1u64);
        assert_eq!(pro2_element_coords(unit, &mut lo, &mut hi), Pro2Status::Ok);
        assert_eq!((lo, hi), (0, 0));

        // Generator index range errors surface as InvalidArgument.
        let mut bad = ptr::null_mut();
        assert_eq!(
            pro2_element_generator(ctx, Pro2Gen::Cd, 3, &mut bad),
            Pro2Status::InvalidArgument
        );

        // Mixing contexts is rejected.
        let ctx3 = new_ctx(3);
        let y3 = gen(ctx3, Pro2Gen::Y, 0);
        let mut nope = ptr::null_mut();
        assert_eq!(pro2_element_mul(x, y3, &mut nope), Pro2Status::ContextMismatch);

        for e in [x, y, w, xy, lhs, x4, rhs, wx, c2, inv, unit, y3] {
            pro2_element_free(e);
        }
        pro2_context_free(ctx);
        pro2_context_free(ctx3);
    }
}

#[test]
fn subgroups_through_the_abi() {
    unsafe {
        let ctx = new_ctx(2);
        let x = gen(ctx, Pro2Gen::X, 0);
        let w = gen(ctx, Pro2Gen::W, 0);
        let mut x4 = ptr::null_mut();
        assert_eq!(pro2_element_pow(x, 4, &mut x4), Pro2Status::Ok);
        let mut wx = ptr::null_mut();
        assert_eq!(pro2_element_comm(w, x, &mut wx), Pro2Status::Ok);

        // <x^4, w, [w,x]> = G^(2^k), order 8.
        let gens = [x4 as *const Pro2Element, w as *const _, wx as *const _];
        let mut sub = ptr::null_mut();
        assert_eq!(
            pro2_subgroup_closure(ctx, gens.as_ptr(), gens.len(), false, &mut sub),
            Pro2Status::Ok
        );
        let mut rank = 0;
        assert_eq!(pro2_subgroup_log_order(sub, &mut rank), Pro2Status::Ok);
        assert_eq!(rank, 3);

        let mut contains = false;
        assert_eq!(pro2_subgroup_contains(sub, w, &mut contains), Pro2Status::Ok);
        assert!(contains);
        assert_eq!(pro2_subgroup_contains(sub, x, &mut contains), Pro2Status::Ok);
        assert!(!contains);

        // Sifting a member gives the identity residue.
        let mut residue = ptr::null_mut();
        assert_eq!(pro2_subgroup_sift(sub, w, &mut residue), Pro2Status::Ok);
        let mut is_id = false;
        assert_eq!(
            pro2_element_is_identity(residue, &mut is_id),
            Pro2Status::Ok
        );
        assert!(is_id);

        pro2_element_free(residue);
        pro2_subgroup_free(sub);
        for e in [x, w, x4, wx] {
            pro2_element_free(e);
        }
        pro2_context_free(ctx);
    }
}

#[test]
fn series_and_ratios_through_the_abi() {
    unsafe {
        let ctx = new_ctx(3);

        // Frattini factor ranks [2, 4, 7, 4].
        let mut series = ptr::null_mut();
        assert_eq!(
            pro2_series_compute(ctx, Pro2SeriesKind::Frattini, 22, &mut series),
            Pro2Status::Ok
        );
        let mut n = 0usize;
        assert_eq!(pro2_series_num_factors(series, &mut n), Pro2Status::Ok);
        assert_eq!(n, 4);
        let mut ranks = Vec::new();
        for i in 0..n {
            let mut r = 0;
            assert_eq!(pro2_series_factor_rank(series, i, &mut r), Pro2Status::Ok);
            ranks.push(r);
            let mut ok = false;
            assert_eq!(
                pro2_series_closed_form_match(series, i, &mut ok),
                Pro2Status::Ok
            );
            assert!(ok);
        }
        assert_eq!(ranks, vec![2, 4, 7, 4]);
        let mut start = 99;
        assert_eq!(pro2_series_start_index(series, &mut start), Pro2Status::Ok);
        assert_eq!(start, 0);
        assert_eq!(
            pro2_series_factor_rank(series, 10, &mut 0u32 as *mut u32),
            Pro2Status::InvalidArgument
        );
        pro2_series_free(series);

        // (Z, P) at level k: 4/14 reduced to 2/7.
        let (mut num, mut den) = (0u64, 0u64);
        assert_eq!(
            pro2_hdim_ratio(
                ctx,
                Pro2SeriesKind::TwoPower,
                Pro2NamedSubgroup::Z,
                0,
                0,
                3,
                22,
                &mut num,
                &mut den
            ),
            Pro2Status::Ok
        );
        assert_eq!((num, den), (2, 7));

        // Level 0 term is the whole group: undefined ratio.
        assert_eq!(
            pro2_hdim_ratio(
                ctx,
                Pro2SeriesKind::TwoPower,
                Pro2NamedSubgroup::Z,
                0,
                0,
                0,
                22,
                &mut num,
                &mut den
            ),
            Pro2Status::UndefinedRatio
        );

        // Capacity errors surface as their own status.
        let ctx4 = new_ctx(4);
        let mut s4 = ptr::null_mut();
        assert_eq!(
            pro2_series_compute(ctx4, Pro2SeriesKind::TwoPower, 22, &mut s4),
            Pro2Status::Capacity
        );

        pro2_context_free(ctx4);
        pro2_context_free(ctx);
    }
}

#[test]
fn verify_through_the_abi() {
    unsafe {
        let mut failed = 99;
        assert_eq!(pro2_verify(2, 22, 2000, &mut failed), Pro2Status::Ok);
        assert_eq!(failed, 0);
        assert_eq!(pro2_verify(9, 22, 10, &mut failed), Pro2Status::InvalidArgument);
    }
}

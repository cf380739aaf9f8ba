//! C ABI for the intersection-set decision procedure.
//!
//! Conventions:
//!
//! * every function returns a [`CsStatus`] code; out-parameters are written
//!   only on [`CsStatus::Ok`];
//! * `CsPointSet`, `CsPoly` and `CsDecision` are opaque handles created and
//!   released by this library (`cs_*_free`);
//! * strings cross the boundary as NUL-terminated UTF-8 in the library's
//!   JSON wire formats; strings returned by the library must be released
//!   with [`cs_string_free`];
//! * no function panics across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
#[cfg(test)]
use std::ptr;

use curvesect::decision::{
    decide_intersection_set, noether_decompose, verify_cayley_bacharach, verify_intersection_set,
    Decision,
};
use curvesect::independence::independence_report;
use curvesect::poly::Poly;
use curvesect::{Error, PointSet};

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// JSON parsing or schema validation failed.
    ParseError = 3,
    /// Arguments violate a documented precondition (degrees, sizes).
    InvalidArgument = 4,
    /// The operation ran but reported no result (inconsistent system).
    NoResult = 5,
    /// An internal invariant failed; treat as a bug in this library.
    InternalError = 6,
}

/// Opaque handle: an ordered set of distinct rational plane points.
pub struct CsPointSet(PointSet);

/// Opaque handle: a bivariate polynomial with exact rational coefficients.
pub struct CsPoly(Poly);

/// Opaque handle: the outcome of the decision procedure.
pub struct CsDecision(Decision);

/// Human-readable description of a status code. Static storage; do not free.
#[no_mangle]
pub extern "C" fn cs_status_message(status: CsStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        CsStatus::Ok => b"ok\0",
        CsStatus::NullArgument => b"null argument\0",
        CsStatus::InvalidUtf8 => b"invalid utf-8\0",
        CsStatus::ParseError => b"parse error\0",
        CsStatus::InvalidArgument => b"invalid argument\0",
        CsStatus::NoResult => b"no result\0",
        CsStatus::InternalError => b"internal error\0",
    };
    msg.as_ptr() as *const c_char
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn status_of(err: &Error) -> CsStatus {
    match err {
        Error::BadFraction(_)
        | Error::DuplicatePoint(_)
        | Error::CoefficientLength { .. }
        | Error::LengthMismatch { .. } => CsStatus::ParseError,
        Error::WitnessPostCheck(_) | Error::GenerationCap(_) => CsStatus::InternalError,
        _ => CsStatus::InvalidArgument,
    }
}

/// Run `body` with panics converted to `InternalError`.
fn guarded(body: impl FnOnce() -> CsStatus) -> CsStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(CsStatus::InternalError)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CsStatus> {
    if ptr.is_null() {
        return Err(CsStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| CsStatus::InvalidUtf8)
}

fn give_string(s: String, out: *mut *mut c_char) -> CsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CsStatus::Ok
        }
        Err(_) => CsStatus::InternalError,
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `cs_*` function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a point set from its JSON form
/// `{"points": [["num/den","num/den"], ...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn cs_pointset_parse_json(
    json: *const c_char,
    out: *mut *mut CsPointSet,
) -> CsStatus {
    if out.is_null() {
        return CsStatus::NullArgument;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match serde_json::from_str::<PointSet>(text) {
        Ok(set) => {
            *out = Box::into_raw(Box::new(CsPointSet(set)));
            CsStatus::Ok
        }
        Err(_) => CsStatus::ParseError,
    })
}

/// Serialize a point set back to its JSON form.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_pointset_to_json(
    set: *const CsPointSet,
    out: *mut *mut c_char,
) -> CsStatus {
    if set.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| match serde_json::to_string(&(*set).0) {
        Ok(s) => give_string(s, out),
        Err(_) => CsStatus::InternalError,
    })
}

/// Number of points in the set.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_pointset_len(set: *const CsPointSet, out: *mut usize) -> CsStatus {
    if set.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    *out = (*set).0.len();
    CsStatus::Ok
}

/// # Safety
/// `set` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cs_pointset_free(set: *mut CsPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parse a polynomial from its JSON form
/// `{"degree": n, "terms": [{"i":..,"j":..,"c":"num/den"}, ...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_poly_parse_json(
    json: *const c_char,
    out: *mut *mut CsPoly,
) -> CsStatus {
    if out.is_null() {
        return CsStatus::NullArgument;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match serde_json::from_str::<Poly>(text) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(CsPoly(p)));
            CsStatus::Ok
        }
        Err(_) => CsStatus::ParseError,
    })
}

/// Serialize a polynomial to its JSON form.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_poly_to_json(poly: *const CsPoly, out: *mut *mut c_char) -> CsStatus {
    if poly.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| match serde_json::to_string(&(*poly).0) {
        Ok(s) => give_string(s, out),
        Err(_) => CsStatus::InternalError,
    })
}

/// # Safety
/// `poly` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cs_poly_free(poly: *mut CsPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Decide whether the set is the intersection set of curves of degrees
/// `m <= n`. The decision (verdict, witnesses or certificate) lands in a
/// new handle.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_decide(
    set: *const CsPointSet,
    m: i64,
    n: i64,
    out: *mut *mut CsDecision,
) -> CsStatus {
    if set.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| match decide_intersection_set(&(*set).0, m, n) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(CsDecision(d)));
            CsStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Verdict of a decision: 1 accepted, 0 rejected.
///
/// # Safety
/// `decision` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_decision_verdict(
    decision: *const CsDecision,
    out: *mut i32,
) -> CsStatus {
    if decision.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    *out = (*decision).0.verdict as i32;
    CsStatus::Ok
}

/// The full decision (verdict, kappa, witnesses, certificate) as JSON.
///
/// # Safety
/// `decision` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_decision_to_json(
    decision: *const CsDecision,
    out: *mut *mut c_char,
) -> CsStatus {
    if decision.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| match serde_json::to_string(&(*decision).0) {
        Ok(s) => give_string(s, out),
        Err(_) => CsStatus::InternalError,
    })
}

/// The witness curves of an accepted decision as new polynomial handles.
/// Returns `NoResult` on rejected decisions.
///
/// # Safety
/// `decision` must be a live handle; `out_sigma_m` and `out_sigma_n` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_decision_witnesses(
    decision: *const CsDecision,
    out_sigma_m: *mut *mut CsPoly,
    out_sigma_n: *mut *mut CsPoly,
) -> CsStatus {
    if decision.is_null() || out_sigma_m.is_null() || out_sigma_n.is_null() {
        return CsStatus::NullArgument;
    }
    let d = &(*decision).0;
    let (Some(sm), Some(sn)) = (&d.sigma_m, &d.sigma_n) else {
        return CsStatus::NoResult;
    };
    *out_sigma_m = Box::into_raw(Box::new(CsPoly(sm.clone())));
    *out_sigma_n = Box::into_raw(Box::new(CsPoly(sn.clone())));
    CsStatus::Ok
}

/// # Safety
/// `decision` must be a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cs_decision_free(decision: *mut CsDecision) {
    if !decision.is_null() {
        drop(Box::from_raw(decision));
    }
}

/// Check a claimed witness pair against the set: 1 when it verifies.
///
/// # Safety
/// All three handles must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_verify_intersection_set(
    set: *const CsPointSet,
    sigma_m: *const CsPoly,
    sigma_n: *const CsPoly,
    out: *mut i32,
) -> CsStatus {
    if set.is_null() || sigma_m.is_null() || sigma_n.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| {
        *out = verify_intersection_set(&(*set).0, &(*sigma_m).0, &(*sigma_n).0) as i32;
        CsStatus::Ok
    })
}

/// Independence/poisedness report for the set at one degree, as JSON.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_analyze_json(
    set: *const CsPointSet,
    degree: i64,
    out: *mut *mut c_char,
) -> CsStatus {
    if set.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    guarded(|| {
        let report = independence_report(&(*set).0, degree);
        match serde_json::to_string(&report) {
            Ok(s) => give_string(s, out),
            Err(_) => CsStatus::InternalError,
        }
    })
}

/// The three Cayley-Bacharach facts for the set at `(m, n)`, as JSON.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_cb_verify_json(
    set: *const CsPointSet,
    m: i64,
    n: i64,
    out: *mut *mut c_char,
) -> CsStatus {
    if set.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    if m < 1 || m > n {
        return CsStatus::InvalidArgument;
    }
    guarded(|| {
        let report = verify_cayley_bacharach(&(*set).0, m, n);
        match serde_json::to_string(&report) {
            Ok(s) => give_string(s, out),
            Err(_) => CsStatus::InternalError,
        }
    })
}

/// Decompose `p` as `A*sigma_m + B*sigma_n` over the verified witness pair
/// for `set`. `NoResult` signals an inconsistent system; precondition
/// violations map to `InvalidArgument`.
///
/// # Safety
/// All handles must be live; `out_a` and `out_b` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_noether_decompose(
    p: *const CsPoly,
    sigma_m: *const CsPoly,
    sigma_n: *const CsPoly,
    set: *const CsPointSet,
    out_a: *mut *mut CsPoly,
    out_b: *mut *mut CsPoly,
) -> CsStatus {
    if p.is_null()
        || sigma_m.is_null()
        || sigma_n.is_null()
        || set.is_null()
        || out_a.is_null()
        || out_b.is_null()
    {
        return CsStatus::NullArgument;
    }
    guarded(
        || match noether_decompose(&(*p).0, &(*sigma_m).0, &(*sigma_n).0, &(*set).0) {
            Ok(Some((a, b))) => {
                *out_a = Box::into_raw(Box::new(CsPoly(a)));
                *out_b = Box::into_raw(Box::new(CsPoly(b)));
                CsStatus::Ok
            }
            Ok(None) => CsStatus::NoResult,
            Err(e) => status_of(&e),
        },
    )
}

/// Generate a scenario (same kinds and seeding as the CLI) as JSON.
/// `kind` is one of the documented kind strings, e.g. "line_product_grid".
///
/// # Safety
/// `kind` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cs_generate_scenario_json(
    kind: *const c_char,
    m: i64,
    n: i64,
    seed: u64,
    out: *mut *mut c_char,
) -> CsStatus {
    use curvesect::generators::{
        gen_conic_chords, gen_line_product, gen_negative, gen_random_generic,
        gen_reducible_mixed, NegativeKind,
    };
    if out.is_null() {
        return CsStatus::NullArgument;
    }
    let kind = match read_str(kind) {
        Ok(k) => k,
        Err(s) => return s,
    };
    guarded(|| {
        let scenario = match kind {
            "line_product_grid" => gen_line_product(m, n, seed),
            "conic_chords" => gen_conic_chords(n, seed),
            "reducible_mixed" => gen_reducible_mixed(m, n, seed),
            "random_generic" => gen_random_generic(m, n, seed),
            "negative_moved_point" => gen_line_product(m, n, seed)
                .and_then(|b| gen_negative(&b, NegativeKind::MovedPoint, seed)),
            "negative_deleted_point" => gen_line_product(m, n, seed)
                .and_then(|b| gen_negative(&b, NegativeKind::DeletedPoint, seed)),
            "negative_collinear_overload" => gen_line_product(m, n, seed)
                .and_then(|b| gen_negative(&b, NegativeKind::CollinearOverload, seed)),
            _ => return CsStatus::InvalidArgument,
        };
        match scenario {
            Ok(s) => match serde_json::to_string(&s) {
                Ok(text) => give_string(text, out),
                Err(_) => CsStatus::InternalError,
            },
            Err(e) => status_of(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn parse_set(json: &str) -> *mut CsPointSet {
        let mut handle: *mut CsPointSet = ptr::null_mut();
        let status = cs_pointset_parse_json(c(json).as_ptr(), &mut handle);
        assert_eq!(status, CsStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        cs_string_free(ptr);
        s
    }

    const GRID: &str =
        r#"{"points":[["0","0"],["0","1"],["0","2"],["1","0"],["1","1"],["1","2"]]}"#;

    #[test]
    fn decide_round_trip_over_the_abi() {
        unsafe {
            let set = parse_set(GRID);

            let mut len = 0usize;
            assert_eq!(cs_pointset_len(set, &mut len), CsStatus::Ok);
            assert_eq!(len, 6);

            let mut decision: *mut CsDecision = ptr::null_mut();
            assert_eq!(cs_decide(set, 2, 3, &mut decision), CsStatus::Ok);

            let mut verdict = -1i32;
            assert_eq!(cs_decision_verdict(decision, &mut verdict), CsStatus::Ok);
            assert_eq!(verdict, 1);

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(cs_decision_to_json(decision, &mut json), CsStatus::Ok);
            let text = take_string(json);
            assert!(text.contains(r#""verdict":true"#));

            let mut sm: *mut CsPoly = ptr::null_mut();
            let mut sn: *mut CsPoly = ptr::null_mut();
            assert_eq!(cs_decision_witnesses(decision, &mut sm, &mut sn), CsStatus::Ok);

            let mut ok = 0i32;
            assert_eq!(cs_verify_intersection_set(set, sm, sn, &mut ok), CsStatus::Ok);
            assert_eq!(ok, 1);

            cs_poly_free(sm);
            cs_poly_free(sn);
            cs_decision_free(decision);
            cs_pointset_free(set);
        }
    }

    #[test]
    fn error_paths_map_to_codes() {
        unsafe {
            let mut handle: *mut CsPointSet = ptr::null_mut();
            assert_eq!(
                cs_pointset_parse_json(ptr::null(), &mut handle),
                CsStatus::NullArgument
            );
            assert_eq!(
                cs_pointset_parse_json(c("{\"points\":[[\"1.5\",\"2\"]]}").as_ptr(), &mut handle),
                CsStatus::ParseError
            );
            assert_eq!(
                cs_pointset_parse_json(
                    c("{\"points\":[[\"1\",\"2\"],[\"1\",\"2\"]]}").as_ptr(),
                    &mut handle
                ),
                CsStatus::ParseError
            );

            let set = parse_set(GRID);
            let mut decision: *mut CsDecision = ptr::null_mut();
            assert_eq!(cs_decide(set, 3, 2, &mut decision), CsStatus::InvalidArgument);
            cs_pointset_free(set);
        }
    }

    #[test]
    fn rejected_decision_has_no_witnesses() {
        unsafe {
            let set = parse_set(r#"{"points":[["0","0"],["1","0"]]}"#);
            let mut decision: *mut CsDecision = ptr::null_mut();
            assert_eq!(cs_decide(set, 2, 3, &mut decision), CsStatus::Ok);
            let mut verdict = -1i32;
            cs_decision_verdict(decision, &mut verdict);
            assert_eq!(verdict, 0);
            let mut sm: *mut CsPoly = ptr::null_mut();
            let mut sn: *mut CsPoly = ptr::null_mut();
            assert_eq!(
                cs_decision_witnesses(decision, &mut sm, &mut sn),
                CsStatus::NoResult
            );
            cs_decision_free(decision);
            cs_pointset_free(set);
        }
    }

    #[test]
    fn analyze_and_cb_reports_serialize() {
        unsafe {
            let set = parse_set(GRID);
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(cs_analyze_json(set, 2, &mut json), CsStatus::Ok);
            let text = take_string(json);
            assert!(text.contains(r#""essentially_dependent":true"#));

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(cs_cb_verify_json(set, 2, 3, &mut json), CsStatus::Ok);
            let text = take_string(json);
            assert!(text.contains(r#""kappa_plus_one_independent":true"#));

            assert_eq!(cs_cb_verify_json(set, 3, 2, &mut json), CsStatus::InvalidArgument);
            cs_pointset_free(set);
        }
    }

    #[test]
    fn noether_over_the_abi() {
        unsafe {
            let set = parse_set(GRID);
            let mut decision: *mut CsDecision = ptr::null_mut();
            assert_eq!(cs_decide(set, 2, 3, &mut decision), CsStatus::Ok);
            let mut sm: *mut CsPoly = ptr::null_mut();
            let mut sn: *mut CsPoly = ptr::null_mut();
            assert_eq!(cs_decision_witnesses(decision, &mut sm, &mut sn), CsStatus::Ok);

            // p = sigma_n vanishes on X; A = 0, B = 1
            let mut p_json: *mut c_char = ptr::null_mut();
            assert_eq!(cs_poly_to_json(sn, &mut p_json), CsStatus::Ok);
            let text = take_string(p_json);
            let mut p: *mut CsPoly = ptr::null_mut();
            assert_eq!(cs_poly_parse_json(c(&text).as_ptr(), &mut p), CsStatus::Ok);

            let mut a: *mut CsPoly = ptr::null_mut();
            let mut b: *mut CsPoly = ptr::null_mut();
            assert_eq!(
                cs_noether_decompose(p, sm, sn, set, &mut a, &mut b),
                CsStatus::Ok
            );
            let mut b_json: *mut c_char = ptr::null_mut();
            assert_eq!(cs_poly_to_json(b, &mut b_json), CsStatus::Ok);
            let b_text = take_string(b_json);
            assert!(b_text.contains(r#""c":"1""#), "B should be the constant 1: {b_text}");

            for h in [p, a, b, sm, sn] {
                cs_poly_free(h);
            }
            cs_decision_free(decision);
            cs_pointset_free(set);
        }
    }

    #[test]
    fn scenario_generation_over_the_abi() {
        unsafe {
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(
                cs_generate_scenario_json(
                    c("line_product_grid").as_ptr(),
                    2,
                    3,
                    7,
                    &mut json
                ),
                CsStatus::Ok
            );
            let first = take_string(json);
            let mut json2: *mut c_char = ptr::null_mut();
            cs_generate_scenario_json(c("line_product_grid").as_ptr(), 2, 3, 7, &mut json2);
            assert_eq!(first, take_string(json2));

            let mut bad: *mut c_char = ptr::null_mut();
            assert_eq!(
                cs_generate_scenario_json(c("nope").as_ptr(), 2, 3, 7, &mut bad),
                CsStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn status_messages_are_static_c_strings() {
        unsafe {
            for status in [
                CsStatus::Ok,
                CsStatus::NullArgument,
                CsStatus::InvalidUtf8,
                CsStatus::ParseError,
                CsStatus::InvalidArgument,
                CsStatus::NoResult,
                CsStatus::InternalError,
            ] {
                let msg = cs_status_message(status);
                assert!(!msg.is_null());
                assert!(!CStr::from_ptr(msg).to_str().unwrap().is_empty());
            }
            assert!(!cs_version().is_null());
        }
    }
}

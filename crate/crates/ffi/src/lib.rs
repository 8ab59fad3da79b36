//! C interface for the degree bound toolkit.
//!
//! Every entry point is panic free and reports failures through
//! [`MwbStatus`]; the message for the most recent failing call on the
//! current thread is available from [`mwb_last_error_message`]. Strings
//! handed out through out parameters are owned by the caller and must be
//! released with [`mwb_string_free`], report handles with
//! [`mwb_report_free`]. The generated header lives in `include/mwbound.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mwbound::scalar::parse_rational;
use mwbound::{
    build_algebra, build_report, check_admissible, compute_c_sigma, curvature_and_trace_identity,
    embed_sp_in_su, make_sample, omega_two_routes, standard_rep_su, verify_wedge_collapse,
    EmbeddingData, Family, MwReport, ReportOptions, SampleMode, DEFAULT_PI_BITS,
};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument was outside its domain (bad group parameters, malformed
    /// volume, ...).
    InvalidArgument = 3,
    /// The computation itself failed; see mwb_last_error_message.
    ComputationFailed = 4,
}

/// Which family of groups a request refers to.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwbGroupKind {
    /// su(p,q); the fields p and q are read, n is ignored.
    Su = 0,
    /// sp(2n,R); the field n is read, p and q are ignored.
    Sp = 1,
}

/// Group selector passed by value. Unused fields may hold anything.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MwbGroup {
    pub kind: MwbGroupKind,
    pub p: u32,
    pub q: u32,
    pub n: u32,
}

/// Opaque handle to a finished degree bound report.
pub struct MwbReport {
    inner: MwReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes stripped");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: MwbStatus, msg: impl Into<String>) -> MwbStatus {
    set_last_error(msg.into());
    status
}

/// Panics must not unwind across the C boundary.
fn guard(f: impl FnOnce() -> MwbStatus) -> MwbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(MwbStatus::ComputationFailed, "internal panic"),
    }
}

fn tag(name: &str, e: impl ToString) -> String {
    format!("{name}: {}", e.to_string())
}

fn family_of(group: &MwbGroup) -> Result<Family, String> {
    match group.kind {
        MwbGroupKind::Su => {
            if group.p < 1 || group.q < 1 {
                return Err(format!("su needs p >= 1 and q >= 1, got p={} q={}", group.p, group.q));
            }
            Ok(Family::Su { p: group.p as usize, q: group.q as usize })
        }
        MwbGroupKind::Sp => {
            if group.n < 1 {
                return Err(format!("sp needs n >= 1, got n={}", group.n));
            }
            Ok(Family::Sp { n: group.n as usize })
        }
    }
}

/// Runs the full structural check battery plus `trials` sampled identity
/// trials, the same sequence the CLI `verify` operation walks through.
fn verify_family(family: Family, seed: u64, trials: u32) -> Result<(), String> {
    let g = build_algebra(family).map_err(|e| e.to_string())?;
    g.check_jacobi_all().map_err(|e| tag("jacobi", e))?;
    g.check_killing_closed_form().map_err(|e| tag("killing-closed-form", e))?;
    g.check_killing_signature().map_err(|e| tag("killing-signature", e))?;
    g.check_ad_invariance().map_err(|e| tag("ad-invariance", e))?;
    g.check_cartan_grading().map_err(|e| tag("cartan-grading", e))?;
    let h = g.hermitian_structure().map_err(|e| tag("hermitian-structure", e))?;
    let rep = match family {
        Family::Sp { .. } => embed_sp_in_su(&g, &h),
        Family::Su { .. } => standard_rep_su(&g, &h),
    }
    .map_err(|e| tag("representation", e))?;
    if let Some(emb) = rep.embedding() {
        emb.verify_involution().map_err(|e| tag("s-involution", e))?;
        emb.verify_unitary().map_err(|e| tag("t-unitary", e))?;
        emb.verify_images_in_target(&g).map_err(|e| tag("images-in-target", e))?;
        emb.verify_block_display(&g).map_err(|e| tag("block-display", e))?;
        emb.verify_trace_compat(&g).map_err(|e| tag("trace-compat", e))?;
    }
    rep.check_homomorphism(&g).map_err(|e| tag("homomorphism", e))?;
    check_admissible(&g, &rep, h.central()).map_err(|e| tag("admissibility", e))?;
    let c_sigma = compute_c_sigma(&g, &h, &rep).map_err(|e| tag("c-sigma", e))?;

    let (v, w) = (rep.dim_v(), rep.dim_w());
    let modes: &[SampleMode] = if v * w >= 2 {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple, SampleMode::Structured]
    } else {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple]
    };
    for trial in 0..trials as usize {
        let mode = modes[trial % modes.len()];
        let trial_seed = seed.wrapping_add(trial as u64);
        let prefix = format!("trial {trial} {mode}");
        let s = make_sample(v, w, mode, trial_seed).map_err(|e| tag(&prefix, e))?;
        let wedge_report = verify_wedge_collapse(&s).map_err(|e| tag(&prefix, e))?;
        if !wedge_report.all_pass() {
            return Err(tag(&prefix, "wedge identities failed"));
        }
        curvature_and_trace_identity(&s, &rep).map_err(|e| tag(&prefix, e))?;
        omega_two_routes(&s, &rep, &c_sigma).map_err(|e| tag(&prefix, e))?;
    }
    Ok(())
}

fn check_embedding_n(n: usize) -> Result<(), String> {
    let g = build_algebra(Family::Sp { n }).map_err(|e| e.to_string())?;
    let emb = EmbeddingData::new(n);
    emb.verify_involution().map_err(|e| tag("s-involution", e))?;
    emb.verify_unitary().map_err(|e| tag("t-unitary", e))?;
    emb.verify_images_in_target(&g).map_err(|e| tag("images-in-target", e))?;
    emb.verify_block_display(&g).map_err(|e| tag("block-display", e))?;
    emb.verify_trace_compat(&g).map_err(|e| tag("trace-compat", e))?;
    Ok(())
}

/// Hands `s` to the caller through `out`. The text never contains NUL.
unsafe fn export_string(s: &str, out: *mut *mut c_char) -> MwbStatus {
    let c = CString::new(s).expect("no interior NUL");
    *out = c.into_raw();
    MwbStatus::Ok
}

/// Message for the most recent failing call on this thread, or null if no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn mwb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Builds a degree bound report for `group` over a surface of volume `vol`
/// (a rational like "100" or "77/10", as UTF-8). `pi_bits` of 0 selects the
/// default enclosure width; `trials` sampled identity trials feed the
/// report's certificates. On success writes a handle to `out`.
///
/// # Safety
/// `vol` must point to a NUL terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_build(
    group: MwbGroup,
    vol: *const c_char,
    seed: u64,
    trials: u32,
    pi_bits: u32,
    out: *mut *mut MwbReport,
) -> MwbStatus {
    if vol.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "vol and out must be non-null");
    }
    let vol = match CStr::from_ptr(vol).to_str() {
        Ok(s) => s.to_owned(),
        Err(_) => return fail(MwbStatus::InvalidUtf8, "vol is not valid UTF-8"),
    };
    guard(move || {
        let family = match family_of(&group) {
            Ok(f) => f,
            Err(m) => return fail(MwbStatus::InvalidArgument, m),
        };
        let vol = match parse_rational(&vol) {
            Ok(v) => v,
            Err(e) => return fail(MwbStatus::InvalidArgument, format!("vol: {e}")),
        };
        let opts = ReportOptions {
            seed,
            trials: trials as usize,
            pi_bits: if pi_bits == 0 { DEFAULT_PI_BITS } else { pi_bits },
        };
        match build_report(family, &vol, &opts) {
            Ok(report) => {
                unsafe { *out = Box::into_raw(Box::new(MwbReport { inner: report })) };
                MwbStatus::Ok
            }
            Err(e) => fail(MwbStatus::ComputationFailed, e.to_string()),
        }
    })
}

/// Serializes the report as pretty printed JSON. The caller owns the
/// returned string.
///
/// # Safety
/// `report` must be a live handle from mwb_report_build and `out` writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_json(
    report: *const MwbReport,
    out: *mut *mut c_char,
) -> MwbStatus {
    if report.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "report and out must be non-null");
    }
    export_string(&(*report).inner.to_json(), out)
}

/// Serializes the report's degree table as CSV. The caller owns the
/// returned string.
///
/// # Safety
/// `report` must be a live handle from mwb_report_build and `out` writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_csv(
    report: *const MwbReport,
    out: *mut *mut c_char,
) -> MwbStatus {
    if report.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "report and out must be non-null");
    }
    export_string(&(*report).inner.degree_table_csv(), out)
}

/// Real rank of the group the report was built for.
///
/// # Safety
/// `report` must be a live handle and `out` writable storage for one u32.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_rank(
    report: *const MwbReport,
    out: *mut u32,
) -> MwbStatus {
    if report.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "report and out must be non-null");
    }
    *out = (*report).inner.rank as u32;
    MwbStatus::Ok
}

/// Largest degree the certified bound admits.
///
/// # Safety
/// `report` must be a live handle and `out` writable storage for one u64.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_max_degree(
    report: *const MwbReport,
    out: *mut u64,
) -> MwbStatus {
    if report.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "report and out must be non-null");
    }
    *out = (*report).inner.max_degree;
    MwbStatus::Ok
}

/// Pairing constant of the admissible representation, as canonical rational
/// text. The caller owns the returned string.
///
/// # Safety
/// `report` must be a live handle and `out` writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_c_sigma(
    report: *const MwbReport,
    out: *mut *mut c_char,
) -> MwbStatus {
    if report.is_null() || out.is_null() {
        return fail(MwbStatus::NullPointer, "report and out must be non-null");
    }
    export_string(&(*report).inner.c_sigma, out)
}

/// Runs the structural check battery for `group` plus `trials` sampled
/// identity trials. Returns MWB_STATUS_OK when everything holds.
#[no_mangle]
pub extern "C" fn mwb_verify(group: MwbGroup, seed: u64, trials: u32) -> MwbStatus {
    guard(move || {
        let family = match family_of(&group) {
            Ok(f) => f,
            Err(m) => return fail(MwbStatus::InvalidArgument, m),
        };
        match verify_family(family, seed, trials) {
            Ok(()) => MwbStatus::Ok,
            Err(m) => fail(MwbStatus::ComputationFailed, m),
        }
    })
}

/// Checks the defining identities of the sp(2n,R) to su(n,n) embedding.
#[no_mangle]
pub extern "C" fn mwb_check_embedding(n: u32) -> MwbStatus {
    guard(move || {
        if n < 1 {
            return fail(MwbStatus::InvalidArgument, "n must be at least 1");
        }
        match check_embedding_n(n as usize) {
            Ok(()) => MwbStatus::Ok,
            Err(m) => fail(MwbStatus::ComputationFailed, m),
        }
    })
}

/// Releases a report handle. Null is a no-op.
///
/// # Safety
/// `report` must be null or a handle from mwb_report_build that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn mwb_report_free(report: *mut MwbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string produced by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn mwb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

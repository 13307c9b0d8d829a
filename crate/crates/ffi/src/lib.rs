//! C ABI for `fracops-core`.
//!
//! Every fallible function returns a [`FracStatus`]; on failure a message is
//! available from [`frac_last_error_message`] on the same thread. Handles are
//! opaque and owned by the caller, who releases them with the matching
//! `*_free` function. Strings returned through out-parameters are released
//! with [`frac_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fracops_core::harness::{mismatches, reports_to_json, run_families, RunConfig};
use fracops_core::riesz::{riesz_potential, PeriodicGridND, PeriodicSamples};
use fracops_core::transforms::{extend_additive, AdditiveSamples};
use fracops_core::transmute::{pushforward_measure, rl_wrt_phi_direct, rl_wrt_phi_transmuted, Integrator};
use fracops_core::{
    estimate_order, make_family, rl_integral, CatalogFamily, FracError, OperatorFamily, SampledFunction1D,
    UniformGrid1D,
};
use num_complex::Complex64;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGrid = 3,
    GridMismatch = 4,
    InvalidOrder = 5,
    NonFinite = 6,
    NotReal = 7,
    NonPositive = 8,
    UnknownFamily = 9,
    NotAdditive = 10,
    InvalidIntegrator = 11,
    OutOfDomain = 12,
    BufferTooSmall = 13,
    Io = 14,
    Json = 15,
    Internal = 16,
}

impl From<&FracError> for FracStatus {
    fn from(e: &FracError) -> Self {
        match e {
            FracError::NonFinite { .. } => FracStatus::NonFinite,
            FracError::InvalidGrid(_) => FracStatus::InvalidGrid,
            FracError::GridMismatch(_) | FracError::DimensionMismatch { .. } => FracStatus::GridMismatch,
            FracError::InvalidOrder(_) | FracError::KernelDomain(_) | FracError::DegenerateOrders(_) => {
                FracStatus::InvalidOrder
            }
            FracError::UnknownFamily { .. } => FracStatus::UnknownFamily,
            FracError::NonPositive { .. } | FracError::NonPositiveEntry { .. } => FracStatus::NonPositive,
            FracError::NotReal(_) => FracStatus::NotReal,
            FracError::NotAdditive { .. } | FracError::IllPosedExtension { .. } => FracStatus::NotAdditive,
            FracError::NonZeroMean(_) | FracError::InvalidArgument(_) => FracStatus::InvalidArgument,
            FracError::InvalidIntegrator(_) => FracStatus::InvalidIntegrator,
            FracError::OutOfDomain(_) => FracStatus::OutOfDomain,
            FracError::Io(_) => FracStatus::Io,
            FracError::Json(_) => FracStatus::Json,
        }
    }
}

/// A sampled function on a uniform grid.
pub struct FracSampled(SampledFunction1D);

/// A strictly increasing integrator.
pub struct FracIntegrator(Integrator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(FracStatus, String);

impl From<FracError> for Fail {
    fn from(e: FracError) -> Self {
        Fail(FracStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FracStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FracStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FracStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FracStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(FracStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle(out: *mut *mut FracSampled, f: SampledFunction1D) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(FracSampled(f))), "out")
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn frac_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn frac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Γ(x)`.
#[no_mangle]
pub extern "C" fn frac_gamma(x: f64) -> f64 {
    fracops_core::special::gamma(x)
}

/// Samples on the uniform grid of `[a, t]` with `n` intervals; `values` holds
/// `n + 1` real parts and `imag` is null or holds `n + 1` imaginary parts.
///
/// # Safety
/// `values` (and `imag` when not null) must point to `n + 1` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frac_sampled_new(
    a: f64,
    t: f64,
    n: usize,
    values: *const f64,
    imag: *const f64,
    out: *mut *mut FracSampled,
) -> FracStatus {
    guard(|| {
        let grid = UniformGrid1D::new(a, t, n)?;
        let re = slice(values, n + 1, "values")?;
        let im = if imag.is_null() { None } else { Some(slice(imag, n + 1, "imag")?) };
        let data = (0..=n).map(|k| Complex64::new(re[k], im.map_or(0.0, |im| im[k]))).collect();
        write_handle(out, SampledFunction1D::from_values(grid, data)?)
    })
}

/// # Safety
/// `f` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn frac_sampled_free(f: *mut FracSampled) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frac_sampled_len(f: *const FracSampled) -> usize {
    f.as_ref().map_or(0, |f| f.0.values().len())
}

/// Copies node values into `re` and, when not null, `im`; both hold `capacity` doubles.
///
/// # Safety
/// `f` must be a live handle; `re` and `im` must point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn frac_sampled_values(
    f: *const FracSampled,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
) -> FracStatus {
    guard(|| {
        let f = borrow(f, "function")?;
        let values = f.0.values();
        if capacity < values.len() {
            return Err(Fail(
                FracStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, {} needed", values.len()),
            ));
        }
        if re.is_null() {
            return Err(null("re"));
        }
        for (k, v) in values.iter().enumerate() {
            re.add(k).write(v.re);
            if !im.is_null() {
                im.add(k).write(v.im);
            }
        }
        Ok(())
    })
}

/// `I^α f` with origin at the left endpoint.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frac_rl_integral(alpha: f64, f: *const FracSampled, out: *mut *mut FracSampled) -> FracStatus {
    guard(|| {
        let f = borrow(f, "function")?;
        write_handle(out, rl_integral(alpha, &f.0)?)
    })
}

/// `J^α f` for the catalog family called `family`.
///
/// # Safety
/// `family` must be a nul-terminated string; `f` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_family_apply(
    family: *const c_char,
    alpha: f64,
    f: *const FracSampled,
    out: *mut *mut FracSampled,
) -> FracStatus {
    guard(|| {
        let fam = make_family(c_str(family, "family")?)?;
        let f = borrow(f, "function")?;
        write_handle(out, fam.apply(alpha, &f.0)?)
    })
}

/// Effective order `β` of `g ≈ (t - a)^β / Γ(β + 1)`.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_estimate_order(g: *const FracSampled, out: *mut f64) -> FracStatus {
    guard(|| {
        let g = borrow(g, "function")?;
        write_out(out, estimate_order(&g.0)?, "out")
    })
}

/// Parses and validates an integrator from its JSON description.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_integrator_from_json(json: *const c_char, out: *mut *mut FracIntegrator) -> FracStatus {
    guard(|| {
        let phi = Integrator::from_json(c_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(FracIntegrator(phi))), "out")
    })
}

/// # Safety
/// `phi` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn frac_integrator_free(phi: *mut FracIntegrator) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Lebesgue measure of `φ([u, v])`.
///
/// # Safety
/// `phi` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_pushforward_measure(
    phi: *const FracIntegrator,
    u: f64,
    v: f64,
    out: *mut f64,
) -> FracStatus {
    guard(|| {
        let phi = borrow(phi, "integrator")?;
        write_out(out, pushforward_measure(&phi.0, u, v)?, "out")
    })
}

/// `I_{a,φ}^α g` by quadrature on the image of `φ`.
///
/// # Safety
/// `phi` and `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_rl_wrt_phi_direct(
    alpha: f64,
    phi: *const FracIntegrator,
    g: *const FracSampled,
    out: *mut *mut FracSampled,
) -> FracStatus {
    guard(|| {
        let (phi, g) = (borrow(phi, "integrator")?, borrow(g, "function")?);
        write_handle(out, rl_wrt_phi_direct(alpha, &phi.0, &g.0)?)
    })
}

/// `I_{a,φ}^α g` by transmutation of the ordinary integral.
///
/// # Safety
/// `phi` and `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_rl_wrt_phi_transmuted(
    alpha: f64,
    phi: *const FracIntegrator,
    g: *const FracSampled,
    out: *mut *mut FracSampled,
) -> FracStatus {
    guard(|| {
        let (phi, g) = (borrow(phi, "integrator")?, borrow(g, "function")?);
        write_handle(out, rl_wrt_phi_transmuted(alpha, &phi.0, &g.0)?)
    })
}

/// One-dimensional Riesz potential of `m` periodic samples at `j / m`;
/// writes the real part of the result to `out`.
///
/// # Safety
/// `values` must point to `m` doubles and `out` to `m` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn frac_riesz_potential_1d(alpha: f64, values: *const f64, m: usize, out: *mut f64) -> FracStatus {
    guard(|| {
        let input = slice(values, m, "values")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let grid = PeriodicGridND::new(vec![m])?;
        let data = input.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let result = riesz_potential(alpha, &PeriodicSamples::from_values(grid, data)?)?;
        for (k, v) in result.values().iter().enumerate() {
            out.add(k).write(v.re);
        }
        Ok(())
    })
}

/// Runs the axiom checks with default settings at resolution `grid_n` for
/// `family` (a catalog name or `"all"`). Writes the JSON report array to
/// `out_json` and whether every verdict matched its profile to `all_match`.
///
/// # Safety
/// `family` must be a nul-terminated string; `out_json` and `all_match` writable.
#[no_mangle]
pub unsafe extern "C" fn frac_axioms_json(
    family: *const c_char,
    grid_n: usize,
    out_json: *mut *mut c_char,
    all_match: *mut bool,
) -> FracStatus {
    guard(|| {
        let name = c_str(family, "family")?;
        let families =
            if name == "all" { CatalogFamily::ALL.to_vec() } else { vec![make_family(name)?] };
        let refs: Vec<&dyn OperatorFamily> = families.iter().map(|f| f as &dyn OperatorFamily).collect();
        let config = RunConfig { grid_n, ..RunConfig::default() };
        let reports = run_families(&refs, &config)?;
        let json = CString::new(reports_to_json(&reports)?).expect("JSON has no nul bytes");
        write_out(all_match, mismatches(&reports).is_empty(), "all_match")?;
        write_out(out_json, json.into_raw(), "out_json")
    })
}

/// Extends samples `h(k num/den)`, `0 < k num/den < bound`, additively over
/// `doublings` doublings of the domain. Writes the extended samples to `out`
/// (room for `capacity` doubles) and their count to `out_len`; when the buffer
/// is too small only `out_len` is written.
///
/// # Safety
/// `values` must point to `len` doubles, `out` to `capacity` writable doubles,
/// and `out_len` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn frac_extend_additive(
    bound: f64,
    step_num: u64,
    step_den: u64,
    values: *const f64,
    len: usize,
    doublings: u32,
    out: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> FracStatus {
    guard(|| {
        let h = AdditiveSamples::new(bound, step_num, step_den, slice(values, len, "values")?.to_vec())?;
        let extended = extend_additive(&h, doublings)?;
        let samples = extended.values();
        write_out(out_len, samples.len(), "out_len")?;
        if capacity < samples.len() {
            return Err(Fail(
                FracStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, {} needed", samples.len()),
            ));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(samples.as_ptr(), out, samples.len());
        Ok(())
    })
}

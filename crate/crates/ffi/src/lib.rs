//! C ABI for the su11 library: plain-old-data mirrors of the configuration
//! and result types, status codes instead of Rust errors, and an opaque
//! handle for oracle sessions. The header `include/su11.h` is generated by
//! the build script (cbindgen).
//!
//! Conventions: every function returns a [`Su11Status`]; outputs are
//! written through pointers only on `Ok`; null pointers are rejected, never
//! dereferenced; panics never cross the boundary.

// Null checks guard every pointer before it is dereferenced; the safe
// signatures are the C-side contract.
#![allow(clippy::not_unsafe_ptr_arg_deref)]
// `!(x >= 0.0)` rejects NaN along with negative values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::c_char;
use std::panic::{catch_unwind, UnwindSafe};

use su11::model::{DetectionScheme, InterferometerConfig};
use su11::moments::LossyMomentPath;
use su11::oracle::{self, KerrVariant, OracleOptions};
use su11::{fisher, moments, sensitivity, Error};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su11Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TruncationExceeded = 3,
    StationaryPoint = 4,
    DegenerateStatistics = 5,
    Internal = 6,
}

/// All physical parameters of one experiment point.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Su11Config {
    pub alpha: f64,
    pub gamma: f64,
    pub r1: f64,
    pub r2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub phi: f64,
    pub mu: f64,
    pub eta: f64,
}

/// Output-mode moments; `n1` and `n2` are the (real) normally ordered
/// photon-number moments.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Su11MomentSet {
    pub m1_re: f64,
    pub m1_im: f64,
    pub m2_re: f64,
    pub m2_im: f64,
    pub n1: f64,
    pub n2: f64,
}

/// Photon-number statistics of the two internal modes.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Su11NumberStats {
    pub var1: f64,
    pub var2: f64,
    pub cov: f64,
}

/// A phase-sensitivity result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Su11Sensitivity {
    pub delta_phi: f64,
    pub derivative_mag: f64,
}

/// Detection scheme selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su11Scheme {
    Si = 0,
    Hd = 1,
}

/// Kerr treatment of the oracle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su11KerrVariant {
    Exact = 0,
    Linearized = 1,
}

/// Which closed form evaluates the lossy second moment.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su11LossyPath {
    Corrected = 0,
    Reference = 1,
}

/// Opaque oracle session carrying truncation options.
pub struct Su11Oracle {
    options: OracleOptions,
}

impl Su11Config {
    fn to_rust(self) -> InterferometerConfig {
        InterferometerConfig {
            alpha: self.alpha,
            gamma: self.gamma,
            r1: self.r1,
            r2: self.r2,
            theta1: self.theta1,
            theta2: self.theta2,
            phi: self.phi,
            mu: self.mu,
            eta: self.eta,
        }
    }
}

impl Su11Scheme {
    fn to_rust(self) -> DetectionScheme {
        match self {
            Su11Scheme::Si => DetectionScheme::Si,
            Su11Scheme::Hd => DetectionScheme::Hd,
        }
    }
}

impl Su11KerrVariant {
    fn to_rust(self) -> KerrVariant {
        match self {
            Su11KerrVariant::Exact => KerrVariant::Exact,
            Su11KerrVariant::Linearized => KerrVariant::Linearized,
        }
    }
}

impl Su11LossyPath {
    fn to_rust(self) -> LossyMomentPath {
        match self {
            Su11LossyPath::Corrected => LossyMomentPath::Corrected,
            Su11LossyPath::Reference => LossyMomentPath::Reference,
        }
    }
}

fn status_of(e: &Error) -> Su11Status {
    match e {
        Error::TruncationBudgetExceeded { .. } => Su11Status::TruncationExceeded,
        Error::StationaryPoint { .. } | Error::FlatLandscape => Su11Status::StationaryPoint,
        Error::DegenerateStatistics(_) => Su11Status::DegenerateStatistics,
        Error::Io(_) => Su11Status::Internal,
        _ => Su11Status::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> Su11Status + UnwindSafe) -> Su11Status {
    catch_unwind(f).unwrap_or(Su11Status::Internal)
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn su11_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Human-readable description of a status code (static storage).
#[no_mangle]
pub extern "C" fn su11_status_message(status: Su11Status) -> *const c_char {
    let s: &'static str = match status {
        Su11Status::Ok => "ok\0",
        Su11Status::NullPointer => "null pointer argument\0",
        Su11Status::InvalidArgument => "invalid argument or configuration\0",
        Su11Status::TruncationExceeded => "truncation budget exceeded\0",
        Su11Status::StationaryPoint => "stationary point: sensitivity undefined\0",
        Su11Status::DegenerateStatistics => "degenerate photon-number statistics\0",
        Su11Status::Internal => "internal error\0",
    };
    s.as_ptr() as *const c_char
}

/// gamma = chi3 * length / velocity.
#[no_mangle]
pub extern "C" fn su11_kerr_gamma(
    chi3: f64,
    length: f64,
    velocity: f64,
    out: *mut f64,
) -> Su11Status {
    if out.is_null() {
        return Su11Status::NullPointer;
    }
    guarded(|| match su11::kerr_gamma(chi3, length, velocity) {
        Ok(v) => {
            unsafe { *out = v };
            Su11Status::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Validates every configuration invariant.
#[no_mangle]
pub extern "C" fn su11_validate(cfg: *const Su11Config) -> Su11Status {
    if cfg.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || match cfg.to_rust().validated() {
        Ok(_) => Su11Status::Ok,
        Err(_) => Su11Status::InvalidArgument,
    })
}

/// Approximate Kerr-state mean photon number: alpha^2 + 4 alpha^4 (1+alpha^2) gamma^2.
#[no_mangle]
pub extern "C" fn su11_mean_photon_kerr(alpha: f64, gamma: f64, out: *mut f64) -> Su11Status {
    if out.is_null() {
        return Su11Status::NullPointer;
    }
    if !(alpha >= 0.0) || !(gamma >= 0.0) || !alpha.is_finite() || !gamma.is_finite() {
        return Su11Status::InvalidArgument;
    }
    unsafe { *out = moments::mean_photon_kerr(alpha, gamma) };
    Su11Status::Ok
}

/// Shot-noise limit 1/sqrt(n).
#[no_mangle]
pub extern "C" fn su11_snl(n: f64, out: *mut f64) -> Su11Status {
    if out.is_null() {
        return Su11Status::NullPointer;
    }
    guarded(|| match su11::snl(n) {
        Ok(v) => {
            unsafe { *out = v };
            Su11Status::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Heisenberg limit 1/n.
#[no_mangle]
pub extern "C" fn su11_hl(n: f64, out: *mut f64) -> Su11Status {
    if out.is_null() {
        return Su11Status::NullPointer;
    }
    guarded(|| match su11::hl(n) {
        Ok(v) => {
            unsafe { *out = v };
            Su11Status::Ok
        }
        Err(e) => status_of(&e),
    })
}

fn write_sensitivity(
    r: su11::Result<su11::SensitivityResult>,
    out: *mut Su11Sensitivity,
) -> Su11Status {
    match r {
        Ok(s) => {
            unsafe {
                *out = Su11Sensitivity {
                    delta_phi: s.delta_phi,
                    derivative_mag: s.derivative_mag,
                }
            };
            Su11Status::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Single-intensity phase sensitivity (lossless configurations).
#[no_mangle]
pub extern "C" fn su11_delta_phi_si(
    cfg: *const Su11Config,
    out: *mut Su11Sensitivity,
) -> Su11Status {
    if cfg.is_null() || out.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || write_sensitivity(sensitivity::phase_sensitivity_si(&cfg.to_rust()), out))
}

/// Homodyne phase sensitivity (lossless configurations).
#[no_mangle]
pub extern "C" fn su11_delta_phi_hd(
    cfg: *const Su11Config,
    out: *mut Su11Sensitivity,
) -> Su11Status {
    if cfg.is_null() || out.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || write_sensitivity(sensitivity::phase_sensitivity_hd(&cfg.to_rust()), out))
}

/// Homodyne phase sensitivity with internal/external loss.
#[no_mangle]
pub extern "C" fn su11_delta_phi_hd_lossy(
    cfg: *const Su11Config,
    path: Su11LossyPath,
    out: *mut Su11Sensitivity,
) -> Su11Status {
    if cfg.is_null() || out.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || {
        write_sensitivity(
            sensitivity::phase_sensitivity_hd_lossy(&cfg.to_rust(), path.to_rust()),
            out,
        )
    })
}

/// Quantum Cramer-Rao bound of the Kerr-seeded interferometer.
#[no_mangle]
pub extern "C" fn su11_qcrb_kerr_seed(
    alpha: f64,
    gamma: f64,
    r1: f64,
    out: *mut f64,
) -> Su11Status {
    if out.is_null() {
        return Su11Status::NullPointer;
    }
    guarded(move || match fisher::qcrb_kerr_seed(alpha, gamma, r1) {
        Ok(v) => {
            unsafe { *out = v };
            Su11Status::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Minimizes the phase sensitivity over phi in [0, 2 pi).
#[no_mangle]
pub extern "C" fn su11_optimum_phi(
    cfg: *const Su11Config,
    scheme: Su11Scheme,
    path: Su11LossyPath,
    out_phi: *mut f64,
    out_delta_phi: *mut f64,
) -> Su11Status {
    if cfg.is_null() || out_phi.is_null() || out_delta_phi.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || {
        match sensitivity::optimum_phi(&cfg.to_rust(), scheme.to_rust(), path.to_rust()) {
            Ok(opt) => {
                unsafe {
                    *out_phi = opt.phi;
                    *out_delta_phi = opt.delta_phi;
                }
                Su11Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Closed-form output moments (the selected lossy path for lossy inputs).
#[no_mangle]
pub extern "C" fn su11_analytic_moments(
    cfg: *const Su11Config,
    path: Su11LossyPath,
    out: *mut Su11MomentSet,
) -> Su11Status {
    if cfg.is_null() || out.is_null() {
        return Su11Status::NullPointer;
    }
    let cfg = unsafe { *cfg };
    guarded(move || {
        let rust_cfg = cfg.to_rust();
        let set = if rust_cfg.is_lossless() {
            moments::lossless_moment_set(&rust_cfg)
        } else {
            moments::lossy_moment_set(&rust_cfg, path.to_rust())
        };
        match set {
            Ok(m) => {
                unsafe {
                    *out = Su11MomentSet {
                        m1_re: m.m1.re,
                        m1_im: m.m1.im,
                        m2_re: m.m2.re,
                        m2_im: m.m2.im,
                        n1: m.n1.re,
                        n2: m.n2.re,
                    }
                };
                Su11Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Creates an oracle session. `n_max` = 0 selects the cutoff automatically;
/// `n_ancilla` = 0 keeps the default (16); `convergence_check` re-runs with
/// +25% headroom and fails if the moments move.
#[no_mangle]
pub extern "C" fn su11_oracle_new(
    n_max: usize,
    n_ancilla: usize,
    convergence_check: bool,
) -> *mut Su11Oracle {
    let mut options = OracleOptions {
        convergence_check,
        ..Default::default()
    };
    if n_max > 0 {
        options.n_max = Some(n_max);
    }
    if n_ancilla > 0 {
        options.n_ancilla = n_ancilla;
    }
    Box::into_raw(Box::new(Su11Oracle { options }))
}

/// Frees an oracle session. Null is a safe no-op.
#[no_mangle]
pub extern "C" fn su11_oracle_free(oracle: *mut Su11Oracle) {
    if !oracle.is_null() {
        drop(unsafe { Box::from_raw(oracle) });
    }
}

/// Runs the truncated Fock-space simulation and writes the output moments
/// and internal photon-number statistics. Either output pointer may be
/// null if that half is not wanted (but not both).
#[no_mangle]
pub extern "C" fn su11_oracle_moments(
    oracle: *const Su11Oracle,
    cfg: *const Su11Config,
    variant: Su11KerrVariant,
    out_moments: *mut Su11MomentSet,
    out_internal: *mut Su11NumberStats,
) -> Su11Status {
    if oracle.is_null() || cfg.is_null() || (out_moments.is_null() && out_internal.is_null()) {
        return Su11Status::NullPointer;
    }
    let options = unsafe { &*oracle }.options;
    let cfg = unsafe { *cfg };
    let out_moments = out_moments as usize;
    let out_internal = out_internal as usize;
    guarded(move || {
        match oracle::simulate_with(&cfg.to_rust(), variant.to_rust(), &options) {
            Ok(run) => {
                if out_moments != 0 {
                    unsafe {
                        *(out_moments as *mut Su11MomentSet) = Su11MomentSet {
                            m1_re: run.moments.m1.re,
                            m1_im: run.moments.m1.im,
                            m2_re: run.moments.m2.re,
                            m2_im: run.moments.m2.im,
                            n1: run.moments.n1.re,
                            n2: run.moments.n2.re,
                        }
                    };
                }
                if out_internal != 0 {
                    unsafe {
                        *(out_internal as *mut Su11NumberStats) = Su11NumberStats {
                            var1: run.internal.var1,
                            var2: run.internal.var2,
                            cov: run.internal.cov,
                        }
                    };
                }
                Su11Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Oracle error-propagation sensitivity with a centered finite difference
/// of step `h` (1e-7 ..= 1e-3 radians).
#[no_mangle]
pub extern "C" fn su11_oracle_sensitivity(
    oracle: *const Su11Oracle,
    cfg: *const Su11Config,
    scheme: Su11Scheme,
    variant: Su11KerrVariant,
    h: f64,
    out: *mut Su11Sensitivity,
) -> Su11Status {
    if oracle.is_null() || cfg.is_null() || out.is_null() {
        return Su11Status::NullPointer;
    }
    let options = unsafe { &*oracle }.options;
    let cfg = unsafe { *cfg };
    guarded(move || {
        write_sensitivity(
            oracle::oracle_phase_sensitivity_with(
                &cfg.to_rust(),
                scheme.to_rust(),
                variant.to_rust(),
                h,
                &options,
            ),
            out,
        )
    })
}

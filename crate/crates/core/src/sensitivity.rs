//! Phase sensitivities via the error-propagation formula
//! Δφ = ΔA / |∂⟨A⟩/∂φ| for the single-intensity and homodyne schemes,
//! lossless and lossy, plus the optimum-φ search.

use crate::error::{Error, Result};
use crate::model::{
    DetectionScheme, InterferometerConfig, ResultSource, SensitivityResult,
    GAMMA_ANALYTIC_CEILING,
};
use crate::moments::{
    fourth_moment_core, lossless_first_moment, lossless_second_moment, lossy_first_moment,
    lossy_first_moment_dphi, lossy_number_moment, lossy_second_moment, number_moment_core,
    number_moment_dphi_core, LossyMomentPath,
};

/// Relative threshold below which a derivative counts as stationary.
const STATIONARY_EPS: f64 = 1e-12;

/// Δφ = σ_A / |∂⟨A⟩/∂φ|.
pub fn error_propagation(std_dev: f64, d_mean_dphi: f64) -> Result<f64> {
    if !(std_dev >= 0.0) {
        return Err(Error::Domain(format!(
            "error_propagation: standard deviation must be nonnegative, got {std_dev}"
        )));
    }
    if d_mean_dphi == 0.0 {
        return Err(Error::StationaryPoint { derivative: 0.0 });
    }
    Ok(std_dev / d_mean_dphi.abs())
}

/// `derivative_scale` is the magnitude the derivative would have away from
/// its zeros (the trigonometric prefactor); a derivative below
/// 1e-12 × that scale is numerically a stationary point, so sweeps show a
/// gap there instead of an absurdly large value.
fn finish(
    variance: f64,
    derivative: f64,
    derivative_scale: f64,
    scheme: DetectionScheme,
) -> Result<SensitivityResult> {
    // Tiny negative variances are roundoff of an exactly-zero quantity.
    let variance = if variance < 0.0 && variance > -1e-10 {
        0.0
    } else {
        variance
    };
    if variance < 0.0 {
        return Err(Error::Domain(format!(
            "negative observable variance {variance:e}"
        )));
    }
    let noise = variance.sqrt();
    let threshold = STATIONARY_EPS * derivative_scale.max(noise).max(1.0);
    if derivative.abs() < threshold {
        return Err(Error::StationaryPoint {
            derivative: derivative.abs(),
        });
    }
    Ok(SensitivityResult {
        delta_phi: noise / derivative.abs(),
        scheme,
        derivative_mag: derivative.abs(),
        source: ResultSource::Analytic,
    })
}

/// Single-intensity sensitivity
/// Δφ_si = √(⟨d†²d²⟩ + ⟨d†d⟩ - ⟨d†d⟩²) / |∂⟨d†d⟩/∂φ|.
///
/// The Kerr unitary commutes with the photon number, so every
/// number-diagonal moment of the seed is exactly Poissonian and Δφ_si is
/// exactly the coherent-seed (γ = 0) result: the γ-dependent terms the
/// linearization would inject into ⟨d†d⟩ and ⟨d†²d²⟩ are pure expansion
/// artifacts and are evaluated at γ = 0 here.
pub fn phase_sensitivity_si(cfg: &InterferometerConfig) -> Result<SensitivityResult> {
    let cfg = cfg.validated()?;
    if !cfg.is_lossless() {
        return Err(Error::WrongOperation {
            op: "phase_sensitivity_si",
            alternative: "the homodyne lossy scheme (SI gains nothing from the Kerr seed)",
        });
    }
    if cfg.gamma > GAMMA_ANALYTIC_CEILING {
        return Err(Error::GammaOutOfRange {
            op: "phase_sensitivity_si",
            gamma: cfg.gamma,
            ceiling: GAMMA_ANALYTIC_CEILING,
        });
    }
    let n1 = number_moment_core(&cfg, 0.0);
    let n2 = fourth_moment_core(&cfg, 0.0);
    let dn1 = number_moment_dphi_core(&cfg, 0.0);
    // dn1 = -(1/2)(N+1) sin Φ sinh 2r₁ sinh 2r₂; its prefactor is the scale.
    let scale = 0.5
        * (cfg.alpha * cfg.alpha + 1.0)
        * ((2.0 * cfg.r1).sinh() * (2.0 * cfg.r2).sinh()).abs();
    finish(n2 + n1 - n1 * n1, dn1, scale, DetectionScheme::Si)
}

/// Homodyne sensitivity per the quadrature x = (d + d†)/√2:
/// Δφ_hd = √(⟨d²⟩+⟨d†²⟩+2⟨d†d⟩+1 - (⟨d⟩+⟨d†⟩)²) / |∂(⟨d⟩+⟨d†⟩)/∂φ|.
/// The 1/√2 of the observable cancels in the ratio.
pub fn phase_sensitivity_hd(cfg: &InterferometerConfig) -> Result<SensitivityResult> {
    let cfg = cfg.validated()?;
    if !cfg.is_lossless() {
        return Err(Error::WrongOperation {
            op: "phase_sensitivity_hd",
            alternative: "phase_sensitivity_hd_lossy",
        });
    }
    let m1 = lossless_first_moment(&cfg)?;
    let m2 = lossless_second_moment(&cfg)?;
    let n1 = crate::moments::lossless_number_moment(&cfg)?;
    let q = 2.0 * m1.re;
    let variance = 2.0 * m2.re + 2.0 * n1 + 1.0 - q * q;
    let derivative = 2.0 * crate::moments::lossless_first_moment_dphi(&cfg)?.re;
    let scale = hd_derivative_scale(&cfg);
    finish(variance, derivative, scale, DetectionScheme::Hd)
}

/// Prefactor of the homodyne signal derivative,
/// 2√(ημ) cosh r₁ cosh r₂ |⟨K̂⟩|.
fn hd_derivative_scale(cfg: &InterferometerConfig) -> f64 {
    let a2 = cfg.alpha * cfg.alpha;
    let k1_mag = cfg.alpha * (1.0 + 4.0 * a2 * a2 * cfg.gamma * cfg.gamma).sqrt();
    2.0 * (cfg.eta * cfg.mu).sqrt() * cfg.r1.cosh() * cfg.r2.cosh() * k1_mag
}

/// Homodyne sensitivity with internal and external loss. `path` selects
/// which closed form evaluates ⟨f²⟩; the corrected path is the
/// oracle-validated default.
pub fn phase_sensitivity_hd_lossy(
    cfg: &InterferometerConfig,
    path: LossyMomentPath,
) -> Result<SensitivityResult> {
    let cfg = cfg.validated()?;
    let m1 = lossy_first_moment(&cfg)?;
    let m2 = lossy_second_moment(&cfg, path)?;
    let n1 = lossy_number_moment(&cfg)?;
    let q = 2.0 * m1.re;
    let variance = 2.0 * m2.re + 2.0 * n1 + 1.0 - q * q;
    let derivative = 2.0 * lossy_first_moment_dphi(&cfg)?.re;
    let scale = hd_derivative_scale(&cfg);
    finish(variance, derivative, scale, DetectionScheme::Hd)
}

/// Result of an optimum-φ search.
#[derive(Debug, Clone, Copy)]
pub struct PhiOptimum {
    pub phi: f64,
    pub delta_phi: f64,
}

/// Minimizes Δφ over φ ∈ [0, 2π): a 2000-point scan followed by
/// golden-section refinement to 1e-6 rad. Stationary points show up as
/// gaps in the scan and are skipped; if every point is a gap the landscape
/// is flat and an error is returned.
pub fn optimum_phi(
    cfg: &InterferometerConfig,
    scheme: DetectionScheme,
    path: LossyMomentPath,
) -> Result<PhiOptimum> {
    let eval = |phi: f64| -> Option<f64> {
        let mut c = *cfg;
        c.phi = phi;
        let r = match (scheme, c.is_lossless()) {
            (DetectionScheme::Si, _) => phase_sensitivity_si(&c),
            (DetectionScheme::Hd, true) => phase_sensitivity_hd(&c),
            (DetectionScheme::Hd, false) => phase_sensitivity_hd_lossy(&c, path),
        };
        match r {
            Ok(s) => Some(s.delta_phi),
            Err(Error::StationaryPoint { .. }) => None,
            Err(_) => None,
        }
    };

    const GRID: usize = 2000;
    let tau = std::f64::consts::TAU;
    let mut best: Option<(f64, f64)> = None;
    for k in 0..GRID {
        let phi = k as f64 * tau / GRID as f64;
        if let Some(v) = eval(phi) {
            if best.is_none_or(|(_, bv)| v < bv) {
                best = Some((phi, v));
            }
        }
    }
    let (phi0, _) = best.ok_or(Error::FlatLandscape)?;

    // Golden-section refinement in the bracketing interval.
    let golden = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut a = phi0 - tau / GRID as f64;
    let mut b = phi0 + tau / GRID as f64;
    let big = f64::MAX;
    let mut x1 = b - golden * (b - a);
    let mut x2 = a + golden * (b - a);
    let mut f1 = eval(x1).unwrap_or(big);
    let mut f2 = eval(x2).unwrap_or(big);
    while (b - a).abs() > 1e-6 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = eval(x1).unwrap_or(big);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = eval(x2).unwrap_or(big);
        }
    }
    let phi_star = 0.5 * (a + b);
    let value = eval(phi_star).ok_or(Error::FlatLandscape)?;
    let phi_star = phi_star.rem_euclid(tau);
    Ok(PhiOptimum {
        phi: phi_star,
        delta_phi: value,
    })
}

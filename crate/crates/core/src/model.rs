//! Shared domain types: interferometer configuration, detection schemes,
//! moment sets, photon-number statistics, and sensitivity results.
//!
//! The interferometer under study seeds one port of a degenerate SU(1,1)
//! interferometer (two optical parametric amplifiers around a phase shift)
//! with a Kerr state: a coherent state |alpha> evolved through a chi^(3)
//! medium under the number-diagonal unitary exp[-i gamma n(n-1)].

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result, ValidationErrors, ValidationIssue};

/// Hard validity ceiling on gamma for every closed-form (linearized) path.
///
/// The analytic expressions keep terms through first order in the Kerr phase
/// per photon; beyond this ceiling the dropped terms are no longer negligible
/// at alpha >= 1 and only the exact Fock-space oracle is trusted.
pub const GAMMA_ANALYTIC_CEILING: f64 = 1e-3;

/// Squeezing amplitudes above this are rejected by the analytic path.
pub const MAX_SQUEEZING: f64 = 10.0;

/// All physical parameters of one experiment point.
///
/// Angles are stored unreduced; use [`InterferometerConfig::canonical_eq`]
/// for comparisons modulo 2π. `mu` and `eta` are the internal and external
/// transmissivities; `mu == eta == 1` is the lossless configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    /// Coherent seed amplitude (real, >= 0).
    pub alpha: f64,
    /// Kerr interaction coefficient chi3 * l / u (>= 0).
    pub gamma: f64,
    /// Squeezing amplitude of the first OPA (>= 0).
    pub r1: f64,
    /// Squeezing amplitude of the second OPA (>= 0).
    pub r2: f64,
    /// Squeezing phase of the first OPA (radians).
    pub theta1: f64,
    /// Squeezing phase of the second OPA (radians).
    pub theta2: f64,
    /// Unknown phase to estimate (radians).
    pub phi: f64,
    /// Internal transmissivity, in (0, 1].
    pub mu: f64,
    /// External transmissivity, in (0, 1].
    pub eta: f64,
}

impl Default for InterferometerConfig {
    fn default() -> Self {
        Self {
            alpha: 0.0,
            gamma: 0.0,
            r1: 0.0,
            r2: 0.0,
            theta1: 0.0,
            theta2: 0.0,
            phi: 0.0,
            mu: 1.0,
            eta: 1.0,
        }
    }
}

impl InterferometerConfig {
    pub fn is_lossless(&self) -> bool {
        self.mu == 1.0 && self.eta == 1.0
    }

    /// Validates every type invariant, returning the configuration unchanged
    /// on success and the complete list of violations otherwise.
    pub fn validated(self) -> std::result::Result<Self, ValidationErrors> {
        let mut issues = Vec::new();
        let mut check_finite = |field: &'static str, v: f64| {
            if !v.is_finite() {
                issues.push(ValidationIssue {
                    field,
                    message: format!("{field} not finite"),
                });
                false
            } else {
                true
            }
        };
        let finite_alpha = check_finite("alpha", self.alpha);
        let finite_gamma = check_finite("gamma", self.gamma);
        let finite_r1 = check_finite("r1", self.r1);
        let finite_r2 = check_finite("r2", self.r2);
        check_finite("theta1", self.theta1);
        check_finite("theta2", self.theta2);
        check_finite("phi", self.phi);
        let finite_mu = check_finite("mu", self.mu);
        let finite_eta = check_finite("eta", self.eta);

        if finite_alpha && self.alpha < 0.0 {
            issues.push(ValidationIssue {
                field: "alpha",
                message: "alpha negative".into(),
            });
        }
        if finite_gamma && self.gamma < 0.0 {
            issues.push(ValidationIssue {
                field: "gamma",
                message: "gamma negative".into(),
            });
        }
        if finite_r1 && self.r1 < 0.0 {
            issues.push(ValidationIssue {
                field: "r1",
                message: "r1 negative".into(),
            });
        }
        if finite_r2 && self.r2 < 0.0 {
            issues.push(ValidationIssue {
                field: "r2",
                message: "r2 negative".into(),
            });
        }
        if finite_mu && !(self.mu > 0.0 && self.mu <= 1.0) {
            issues.push(ValidationIssue {
                field: "mu",
                message: "mu out of (0,1]".into(),
            });
        }
        if finite_eta && !(self.eta > 0.0 && self.eta <= 1.0) {
            issues.push(ValidationIssue {
                field: "eta",
                message: "eta out of (0,1]".into(),
            });
        }
        if issues.is_empty() {
            Ok(self)
        } else {
            Err(ValidationErrors(issues))
        }
    }

    /// Compares two configurations with all angles reduced modulo 2π.
    pub fn canonical_eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.gamma == other.gamma
            && self.r1 == other.r1
            && self.r2 == other.r2
            && self.mu == other.mu
            && self.eta == other.eta
            && reduce_angle(self.theta1) == reduce_angle(other.theta1)
            && reduce_angle(self.theta2) == reduce_angle(other.theta2)
            && reduce_angle(self.phi) == reduce_angle(other.phi)
    }
}

/// Reduces an angle to [0, 2π).
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

/// Kerr interaction coefficient gamma = chi3 * l / u for a medium of length
/// `length` traversed at velocity `velocity`.
pub fn kerr_gamma(chi3: f64, length: f64, velocity: f64) -> Result<f64> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::Domain(format!(
            "kerr_gamma: length must be positive and finite, got {length}"
        )));
    }
    if !(velocity > 0.0) || !velocity.is_finite() {
        return Err(Error::Domain(format!(
            "kerr_gamma: velocity must be positive and finite, got {velocity}"
        )));
    }
    Ok(chi3 * length / velocity)
}

/// Detection scheme at the output port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionScheme {
    /// Single-intensity detection: measure the output photon number.
    Si,
    /// Homodyne detection: measure the quadrature (d + d†)/√2.
    Hd,
}

impl std::fmt::Display for DetectionScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetectionScheme::Si => write!(f, "si"),
            DetectionScheme::Hd => write!(f, "hd"),
        }
    }
}

/// Complex moments of one output mode: ⟨d⟩, ⟨d²⟩, ⟨d†d⟩, ⟨d†²d²⟩.
///
/// `n1` and `n2` are physically real; they are carried as complex so the
/// oracle's tiny imaginary residues stay visible to the invariant checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub m1: Complex64,
    pub m2: Complex64,
    pub n1: Complex64,
    pub n2: Complex64,
}

impl MomentSet {
    /// Checks the physicality invariants: near-real number moments,
    /// nonnegative photon numbers, and nonnegative intensity variance.
    pub fn validate(&self) -> Result<()> {
        let im_tol = |re: f64| 1e-10 * (1.0 + re.abs());
        if self.n1.im.abs() > im_tol(self.n1.re) {
            return Err(Error::Domain(format!(
                "moment <d†d> has non-physical imaginary part {:e}",
                self.n1.im
            )));
        }
        if self.n2.im.abs() > im_tol(self.n2.re) {
            return Err(Error::Domain(format!(
                "moment <d†²d²> has non-physical imaginary part {:e}",
                self.n2.im
            )));
        }
        if self.n1.re < -1e-10 || self.n2.re < -1e-10 {
            return Err(Error::Domain(
                "negative photon-number moment".to_string(),
            ));
        }
        if self.si_variance() < -1e-10 {
            return Err(Error::Domain(format!(
                "negative intensity variance {:e}",
                self.si_variance()
            )));
        }
        Ok(())
    }

    /// Variance of the output photon number, ⟨d†²d²⟩ + ⟨d†d⟩ - ⟨d†d⟩².
    pub fn si_variance(&self) -> f64 {
        self.n2.re + self.n1.re - self.n1.re * self.n1.re
    }

    /// Variance of the unnormalized quadrature d + d†,
    /// ⟨d²⟩ + ⟨d†²⟩ + 2⟨d†d⟩ + 1 - (⟨d⟩ + ⟨d†⟩)².
    pub fn hd_variance(&self) -> f64 {
        let q = 2.0 * self.m1.re;
        2.0 * self.m2.re + 2.0 * self.n1.re + 1.0 - q * q
    }
}

/// Photon-number variances and covariance of the two internal modes,
/// the inputs to the sum-phase quantum Fisher information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberStats {
    pub var1: f64,
    pub var2: f64,
    pub cov: f64,
}

impl NumberStats {
    pub fn validate(&self) -> Result<()> {
        if self.var1 < 0.0 || self.var2 < 0.0 {
            return Err(Error::OutsideLinearizationValidity(
                "negative photon-number variance",
            ));
        }
        if self.cov * self.cov > self.var1 * self.var2 + 1e-10 {
            return Err(Error::Domain(format!(
                "covariance bound violated: cov² = {:e} > var1·var2 = {:e}",
                self.cov * self.cov,
                self.var1 * self.var2
            )));
        }
        Ok(())
    }
}

/// Where a sensitivity value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultSource {
    Analytic,
    Oracle,
}

/// A phase-sensitivity value together with the scheme that produced it and
/// the magnitude of the signal derivative |∂⟨A⟩/∂φ|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityResult {
    pub delta_phi: f64,
    pub scheme: DetectionScheme,
    pub derivative_mag: f64,
    pub source: ResultSource,
}

/// Shot-noise limit 1/√n.
pub fn snl(n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::Domain(format!("snl: n must be positive, got {n}")));
    }
    Ok(1.0 / n.sqrt())
}

/// Heisenberg limit 1/n.
pub fn hl(n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::Domain(format!("hl: n must be positive, got {n}")));
    }
    Ok(1.0 / n)
}

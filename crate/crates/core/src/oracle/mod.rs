//! Brute-force ground truth: a truncated Fock-space simulator of the full
//! interferometer chain
//!
//!   seed → Kerr → OPA-1(r₁,θ₁) → [internal loss μ] → phase φ →
//!   OPA-2(r₂,θ₂) → [external loss η] → detect mode 1,
//!
//! with two Kerr treatments. `Exact` evolves the seed through the
//! number-diagonal Kerr unitary and measures output moments directly.
//! `Linearized` replaces the Kerr field operator e^{-2iγn̂}â by (1-2iγn̂)â,
//! inserting it into the numerically extracted Heisenberg output operator,
//! which is what the closed-form moment expressions assume.
//!
//! Internal loss acts as beam splitters of transmissivity μ on *both*
//! internal arms between the OPAs; external loss η only attenuates the
//! detected mode, which for normally ordered moments is a pure rescaling
//! (√η per operator factor).

pub mod density;
pub mod ops;
pub mod state;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    DetectionScheme, InterferometerConfig, MomentSet, NumberStats, ResultSource,
    SensitivityResult,
};
use ops::{GaussianPipeline, GaussianStep};
use state::{adjoint_combo, coherent_amplitudes, poisson_tail_cutoff, ModeOp, TruncatedState};

/// How the Kerr medium enters the simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KerrVariant {
    /// Apply exp[-iγn̂(n̂-1)] to the seed exactly.
    Exact,
    /// Insert (1-2iγn̂)â for the seed-mode field operator.
    Linearized,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Per-mode photon-number cutoff for the two interferometer modes;
    /// `None` selects automatically from the configuration.
    pub n_max: Option<usize>,
    /// Photon-number cutoff for loss ancilla modes.
    pub n_ancilla: usize,
    /// Declared truncation budget for the seed tail.
    pub epsilon: f64,
    /// Re-run with +25% headroom and require the moments to be stable.
    pub convergence_check: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            n_max: None,
            n_ancilla: 16,
            epsilon: 1e-12,
            convergence_check: true,
        }
    }
}

/// One completed oracle run.
#[derive(Debug, Clone)]
pub struct OracleRun {
    /// Moments of the detected output mode.
    pub moments: MomentSet,
    /// Photon-number statistics of the two modes just after OPA-1.
    pub internal: NumberStats,
    /// Per-mode cutoff actually used for the interferometer modes.
    pub n_max: usize,
    /// Worst norm² drift over all unitary applications.
    pub max_norm_drift: f64,
}

/// Largest seed amplitude the truncated oracle accepts.
pub const ORACLE_ALPHA_LIMIT: f64 = 3.0;

pub fn simulate(cfg: &InterferometerConfig, variant: KerrVariant) -> Result<OracleRun> {
    simulate_with(cfg, variant, &OracleOptions::default())
}

pub fn simulate_with(
    cfg: &InterferometerConfig,
    variant: KerrVariant,
    opts: &OracleOptions,
) -> Result<OracleRun> {
    let cfg = cfg.validated()?;
    if cfg.alpha > ORACLE_ALPHA_LIMIT {
        return Err(Error::TruncationBudgetExceeded {
            detail: format!(
                "alpha = {} is beyond the Fock oracle's reach (limit {ORACLE_ALPHA_LIMIT})",
                cfg.alpha
            ),
            suggested: 128,
        });
    }
    let n_max = opts.n_max.unwrap_or_else(|| auto_n_max(&cfg, opts));
    let run = run_once(&cfg, variant, n_max, opts)?;
    if opts.convergence_check {
        let n_refined = (n_max + n_max / 4).max(n_max + 4);
        let refined = run_once(&cfg, variant, n_refined, opts)?;
        let drift = moment_change(&run.moments, &refined.moments)
            .max(stats_change(&run.internal, &refined.internal));
        if drift > 1e-10 {
            return Err(Error::TruncationBudgetExceeded {
                detail: format!(
                    "moments moved by {drift:e} when n_max grew from {n_max} to {n_refined}"
                ),
                suggested: n_refined + n_refined / 4,
            });
        }
    }
    Ok(run)
}

/// Error-propagation sensitivity from oracle moments, with the signal
/// derivative taken by centered finite difference of step `h`.
pub fn oracle_phase_sensitivity(
    cfg: &InterferometerConfig,
    scheme: DetectionScheme,
    variant: KerrVariant,
    h: f64,
) -> Result<SensitivityResult> {
    oracle_phase_sensitivity_with(cfg, scheme, variant, h, &OracleOptions::default())
}

pub fn oracle_phase_sensitivity_with(
    cfg: &InterferometerConfig,
    scheme: DetectionScheme,
    variant: KerrVariant,
    h: f64,
    opts: &OracleOptions,
) -> Result<SensitivityResult> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::Domain(format!(
            "finite-difference step h = {h:e} out of [1e-7, 1e-3]"
        )));
    }
    // One cutoff for all three phase points keeps the difference clean.
    let n_max = opts.n_max.unwrap_or_else(|| auto_n_max(cfg, opts));
    let fixed = OracleOptions {
        n_max: Some(n_max),
        ..*opts
    };
    let observable = |c: &InterferometerConfig| -> Result<(f64, f64)> {
        let run = simulate_with(c, variant, &fixed)?;
        let mean = match scheme {
            DetectionScheme::Si => run.moments.n1.re,
            DetectionScheme::Hd => 2.0 * run.moments.m1.re,
        };
        let var = match scheme {
            DetectionScheme::Si => run.moments.si_variance(),
            DetectionScheme::Hd => run.moments.hd_variance(),
        };
        Ok((mean, var))
    };
    let (_, var) = observable(cfg)?;
    let mut plus = *cfg;
    plus.phi += h;
    let mut minus = *cfg;
    minus.phi -= h;
    let (mean_plus, _) = observable(&plus)?;
    let (mean_minus, _) = observable(&minus)?;
    let derivative = (mean_plus - mean_minus) / (2.0 * h);
    let noise = var.max(0.0).sqrt();
    if derivative.abs() < 1e-12 * noise.max(1.0) {
        return Err(Error::StationaryPoint {
            derivative: derivative.abs(),
        });
    }
    Ok(SensitivityResult {
        delta_phi: noise / derivative.abs(),
        scheme,
        derivative_mag: derivative.abs(),
        source: ResultSource::Oracle,
    })
}

/// Cutoff selection: seed tail below the budget, plus squeeze headroom,
/// capped at 128 per mode. Lossy runs carry four modes, so their headroom
/// is tighter; the convergence re-run guards both profiles.
fn auto_n_max(cfg: &InterferometerConfig, opts: &OracleOptions) -> usize {
    let tail = poisson_tail_cutoff(cfg.alpha * cfg.alpha, opts.epsilon.min(1e-14));
    let headroom = if cfg.mu < 1.0 {
        (3.0 * (cfg.r1 + cfg.r2).exp()).ceil() as usize + 8
    } else {
        (10.0 * (2.0 * (cfg.r1 + cfg.r2)).exp()).ceil() as usize
    };
    (tail + headroom).min(128)
}

fn moment_change(a: &MomentSet, b: &MomentSet) -> f64 {
    let rel = |x: Complex64, y: Complex64| (x - y).norm() / (1.0 + x.norm());
    rel(a.m1, b.m1)
        .max(rel(a.m2, b.m2))
        .max(rel(a.n1, b.n1))
        .max(rel(a.n2, b.n2))
}

fn stats_change(a: &NumberStats, b: &NumberStats) -> f64 {
    let rel = |x: f64, y: f64| (x - y).abs() / (1.0 + x.abs());
    rel(a.var1, b.var1)
        .max(rel(a.var2, b.var2))
        .max(rel(a.cov, b.cov))
}

fn run_once(
    cfg: &InterferometerConfig,
    variant: KerrVariant,
    n_max: usize,
    opts: &OracleOptions,
) -> Result<OracleRun> {
    // At gamma = 0 the two variants are the same model; running the exact
    // path for both makes them agree bit for bit.
    match variant {
        KerrVariant::Exact => run_exact(cfg, n_max, opts),
        KerrVariant::Linearized if cfg.gamma == 0.0 => run_exact(cfg, n_max, opts),
        KerrVariant::Linearized => run_linearized(cfg, n_max, opts),
    }
}

fn dims_for(cfg: &InterferometerConfig, n_max: usize, opts: &OracleOptions) -> Vec<usize> {
    if cfg.mu < 1.0 {
        vec![n_max + 1, n_max + 1, opts.n_ancilla + 1, opts.n_ancilla + 1]
    } else {
        vec![n_max + 1, n_max + 1]
    }
}

fn check_memory(dims: &[usize]) -> Result<()> {
    let len: usize = dims.iter().product();
    if len > 20_000_000 {
        return Err(Error::TruncationBudgetExceeded {
            detail: format!("state of {len} amplitudes exceeds the memory guard"),
            suggested: 128,
        });
    }
    Ok(())
}

fn seed_state(cfg: &InterferometerConfig, dims: &[usize]) -> Result<TruncatedState> {
    let mut modes = vec![coherent_amplitudes(cfg.alpha, dims[0] - 1)?];
    for &d in &dims[1..] {
        modes.push(state::vacuum_amplitudes(d));
    }
    Ok(TruncatedState::product(&modes))
}

/// The Gaussian stages after OPA-1 (loss beam splitters, phase, OPA-2).
fn post_opa1_steps(cfg: &InterferometerConfig) -> Vec<GaussianStep> {
    let mut steps = Vec::new();
    if cfg.mu < 1.0 {
        steps.push(GaussianStep::BeamSplitter {
            a: 0,
            b: 2,
            transmissivity: cfg.mu,
        });
        steps.push(GaussianStep::BeamSplitter {
            a: 1,
            b: 3,
            transmissivity: cfg.mu,
        });
    }
    steps.push(GaussianStep::Phase {
        mode: 0,
        phi: cfg.phi,
    });
    steps.push(GaussianStep::Squeeze {
        a: 0,
        b: 1,
        r: cfg.r2,
        theta: cfg.theta2,
    });
    steps
}

fn opa1_step(cfg: &InterferometerConfig) -> GaussianStep {
    GaussianStep::Squeeze {
        a: 0,
        b: 1,
        r: cfg.r1,
        theta: cfg.theta1,
    }
}

/// Rescales normally ordered output moments for external loss η.
fn apply_external_loss(moments: MomentSet, eta: f64) -> MomentSet {
    MomentSet {
        m1: moments.m1 * eta.sqrt(),
        m2: moments.m2 * eta,
        n1: moments.n1 * eta,
        n2: moments.n2 * eta * eta,
    }
}

fn run_exact(cfg: &InterferometerConfig, n_max: usize, opts: &OracleOptions) -> Result<OracleRun> {
    let dims = dims_for(cfg, n_max, opts);
    check_memory(&dims)?;
    let mut state = seed_state(cfg, &dims)?;
    state.apply_kerr(0, cfg.gamma);

    let mut worst = 0.0f64;
    let pre = GaussianPipeline {
        steps: vec![opa1_step(cfg)],
    };
    worst = worst.max(pre.apply(&mut state)?);
    let internal = state.number_stats(0, 1);

    let post = GaussianPipeline {
        steps: post_opa1_steps(cfg),
    };
    worst = worst.max(post.apply(&mut state)?);

    let norm = state.norm_sqr();
    let moments = MomentSet {
        m1: state.a_moment(0) / norm,
        m2: state.a2_moment(0) / norm,
        n1: Complex64::new(state.n_moment(0) / norm, 0.0),
        n2: Complex64::new(state.a4_normal_moment(0) / norm, 0.0),
    };
    Ok(OracleRun {
        moments: apply_external_loss(moments, cfg.eta),
        internal,
        n_max,
        max_norm_drift: worst,
    })
}

/// Builds the composite linearized output operator for `out_mode` from the
/// numerically extracted linear coefficients, substituting the linearized
/// Kerr operator for every seed-mode factor.
fn lin_combo(
    coeffs: &ops::LinearInputCoefficients,
    gamma: f64,
) -> Vec<(Complex64, ModeOp)> {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.annihilation.iter().enumerate() {
        if c.norm() > 1e-13 {
            let op = if k == 0 {
                ModeOp::LinA { mode: 0, gamma }
            } else {
                ModeOp::A(k)
            };
            terms.push((c, op));
        }
    }
    for (k, &c) in coeffs.creation.iter().enumerate() {
        if c.norm() > 1e-13 {
            let op = if k == 0 {
                ModeOp::LinADag { mode: 0, gamma }
            } else {
                ModeOp::ADag(k)
            };
            terms.push((c, op));
        }
    }
    terms
}

fn run_linearized(
    cfg: &InterferometerConfig,
    n_max: usize,
    opts: &OracleOptions,
) -> Result<OracleRun> {
    let dims = dims_for(cfg, n_max, opts);
    check_memory(&dims)?;
    let seed = seed_state(cfg, &dims)?;

    let mut full_steps = vec![opa1_step(cfg)];
    full_steps.extend(post_opa1_steps(cfg));
    let full = GaussianPipeline { steps: full_steps };
    let coeffs = ops::output_mode_coefficients(&full, &dims, 0)?;
    let d_op = lin_combo(&coeffs, cfg.gamma);

    let norm = seed.norm_sqr();
    let w = seed.apply_mode_ops(&d_op);
    let w2 = w.apply_mode_ops(&d_op);
    let moments = MomentSet {
        m1: seed.inner(&w) / norm,
        m2: seed.inner(&w2) / norm,
        n1: Complex64::new(w.norm_sqr() / norm, 0.0),
        n2: Complex64::new(w2.norm_sqr() / norm, 0.0),
    };

    // Internal statistics after OPA-1: composite number operators built from
    // the OPA-1-only coefficients of each internal mode.
    let opa1 = GaussianPipeline {
        steps: vec![opa1_step(cfg)],
    };
    let c1 = lin_combo(&ops::output_mode_coefficients(&opa1, &dims, 0)?, cfg.gamma);
    let b2 = lin_combo(&ops::output_mode_coefficients(&opa1, &dims, 1)?, cfg.gamma);
    let internal = composite_number_stats(&seed, &c1, &b2);

    Ok(OracleRun {
        moments: apply_external_loss(moments, cfg.eta),
        internal,
        n_max,
        max_norm_drift: 0.0,
    })
}

/// Var and Cov of the composite number operators c†c and b†b in `state`.
fn composite_number_stats(
    state: &TruncatedState,
    c: &[(Complex64, ModeOp)],
    b: &[(Complex64, ModeOp)],
) -> NumberStats {
    let norm = state.norm_sqr();
    let c_dag = adjoint_combo(c);
    let b_dag = adjoint_combo(b);
    let t_c = state.apply_mode_ops(c);
    let nc = t_c.apply_mode_ops(&c_dag); // n_c |ψ⟩
    let t_b = state.apply_mode_ops(b);
    let nb = t_b.apply_mode_ops(&b_dag); // n_b |ψ⟩

    let mean_c = t_c.norm_sqr() / norm;
    let mean_b = t_b.norm_sqr() / norm;
    NumberStats {
        var1: nc.norm_sqr() / norm - mean_c * mean_c,
        var2: nb.norm_sqr() / norm - mean_b * mean_b,
        cov: nc.inner(&nb).re / norm - mean_c * mean_b,
    }
}

//! Gaussian evolution pipelines and numeric extraction of the linear
//! input-output coefficients of an output mode.
//!
//! The extraction evolves a handful of basis kets through the pipeline and
//! reads the coefficients off inner products, so the composite output
//! operators used by the linearized oracle never touch the closed-form
//! Bogoliubov algebra they are meant to check.

use num_complex::Complex64;

use crate::error::Result;
use crate::oracle::state::TruncatedState;

#[derive(Debug, Clone, Copy)]
pub enum GaussianStep {
    Squeeze { a: usize, b: usize, r: f64, theta: f64 },
    Phase { mode: usize, phi: f64 },
    BeamSplitter { a: usize, b: usize, transmissivity: f64 },
}

/// An ordered sequence of Gaussian operations on a truncated state.
#[derive(Debug, Clone, Default)]
pub struct GaussianPipeline {
    pub steps: Vec<GaussianStep>,
}

impl GaussianPipeline {
    /// Applies every step in order; returns the worst per-unitary norm drift.
    pub fn apply(&self, state: &mut TruncatedState) -> Result<f64> {
        let mut worst = 0.0f64;
        for step in &self.steps {
            let drift = match *step {
                GaussianStep::Squeeze { a, b, r, theta } => {
                    state.apply_two_mode_squeeze(a, b, r, theta)?
                }
                GaussianStep::Phase { mode, phi } => {
                    state.apply_phase_shift(mode, phi);
                    0.0
                }
                GaussianStep::BeamSplitter { a, b, transmissivity } => {
                    state.apply_beam_splitter(a, b, transmissivity)?
                }
            };
            worst = worst.max(drift);
        }
        Ok(worst)
    }
}

/// Linear coefficients of the Heisenberg-evolved annihilation operator of
/// one output mode: `d = Σ_k (annihilation[k] a_k + creation[k] a_k†)`.
#[derive(Debug, Clone)]
pub struct LinearInputCoefficients {
    pub annihilation: Vec<Complex64>,
    pub creation: Vec<Complex64>,
}

/// Extracts the coefficients numerically: with G the pipeline unitary and
/// d = G† a_out G,
///   `annihilation[k]` = ⟨0| d a_k† |0⟩ = ⟨G0| a_out |G 1_k⟩,
///   `creation[k]`     = ⟨1_k| d |0⟩    = ⟨G 1_k| a_out |G 0⟩.
pub fn output_mode_coefficients(
    pipeline: &GaussianPipeline,
    dims: &[usize],
    out_mode: usize,
) -> Result<LinearInputCoefficients> {
    let mut evolved_vacuum = TruncatedState::vacuum(dims);
    pipeline.apply(&mut evolved_vacuum)?;

    let n_modes = dims.len();
    let mut annihilation = Vec::with_capacity(n_modes);
    let mut creation = Vec::with_capacity(n_modes);
    for k in 0..n_modes {
        let mut occ = vec![0usize; n_modes];
        occ[k] = 1;
        let mut evolved_one = TruncatedState::basis(dims, &occ);
        pipeline.apply(&mut evolved_one)?;
        // ⟨Gψ| a_out |Gφ⟩ via one operator application per pair.
        let a_on_one = evolved_one.apply_mode_ops(&[(
            Complex64::new(1.0, 0.0),
            crate::oracle::state::ModeOp::A(out_mode),
        )]);
        annihilation.push(evolved_vacuum.inner(&a_on_one));
        let a_on_vac = evolved_vacuum.apply_mode_ops(&[(
            Complex64::new(1.0, 0.0),
            crate::oracle::state::ModeOp::A(out_mode),
        )]);
        creation.push(evolved_one.inner(&a_on_vac));
    }
    Ok(LinearInputCoefficients {
        annihilation,
        creation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// The extracted coefficients must reproduce the Bogoliubov composition
    /// of OPA1 → phase → OPA2, pinning every sign and phase convention.
    #[test]
    fn coefficients_match_bogoliubov_composition() {
        let (r1, r2, th1, th2, phi) = (0.3, 0.55, 0.4, 2.0, 0.9);
        let pipeline = GaussianPipeline {
            steps: vec![
                GaussianStep::Squeeze { a: 0, b: 1, r: r1, theta: th1 },
                GaussianStep::Phase { mode: 0, phi },
                GaussianStep::Squeeze { a: 0, b: 1, r: r2, theta: th2 },
            ],
        };
        let dims = [42, 42];
        let coeffs = output_mode_coefficients(&pipeline, &dims, 0).unwrap();

        let (c1, s1) = (r1.cosh(), r1.sinh());
        let (c2, s2) = (r2.cosh(), r2.sinh());
        let u = Complex64::from_polar(1.0, phi) * c1 * c2
            + Complex64::from_polar(1.0, th2 - th1) * s1 * s2;
        let v = Complex64::from_polar(1.0, th1 + phi) * s1 * c2
            + Complex64::from_polar(1.0, th2) * c1 * s2;

        assert!((coeffs.annihilation[0] - u).norm() < 1e-10);
        assert!((coeffs.creation[1] - v).norm() < 1e-10);
        assert!(coeffs.creation[0].norm() < 1e-10);
        assert!(coeffs.annihilation[1].norm() < 1e-10);
        // Commutator preservation: |U|² - |V|² = 1.
        assert!((u.norm_sqr() - v.norm_sqr() - 1.0).abs() < 1e-10);
    }

    /// Balanced OPAs with a pi phase offset undo each other at phi = 0.
    #[test]
    fn balanced_opas_cancel() {
        let pipeline = GaussianPipeline {
            steps: vec![
                GaussianStep::Squeeze { a: 0, b: 1, r: 0.7, theta: 0.0 },
                GaussianStep::Squeeze { a: 0, b: 1, r: 0.7, theta: PI },
            ],
        };
        let coeffs = output_mode_coefficients(&pipeline, &[32, 32], 0).unwrap();
        assert!((coeffs.annihilation[0] - Complex64::new(1.0, 0.0)).norm() < 1e-11);
        assert!(coeffs.creation[1].norm() < 1e-11);
    }
}

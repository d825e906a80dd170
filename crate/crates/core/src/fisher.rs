//! Sum-phase quantum Fisher information and the quantum Cramér-Rao bound.
//!
//! For the SU(1,1) interferometer the sum-phase QFI collapses to
//!   F_Q = 4 (Var n₁ · Var n₂ - Cov²) / (Var n₁ + Var n₂ - 2 Cov)
//! in terms of the photon-number statistics of the two internal modes, and
//! the bound is Δφ_Q = 1/√F_Q.

use crate::error::{Error, Result};
use crate::model::NumberStats;
use crate::moments::{internal_number_stats, InternalNumberStatsInputs};

/// Sum-phase quantum Fisher information from internal-mode number statistics.
pub fn qfi_from_number_stats(stats: &NumberStats) -> Result<f64> {
    let numerator = stats.var1 * stats.var2 - stats.cov * stats.cov;
    let denominator = stats.var1 + stats.var2 - 2.0 * stats.cov;
    let scale = (stats.var1 + stats.var2).abs().max(1.0);
    if denominator.abs() <= 1e-14 * scale {
        return Err(Error::DegenerateStatistics(
            "Var n1 + Var n2 - 2 Cov vanishes",
        ));
    }
    Ok(4.0 * numerator / denominator)
}

/// Quantum Cramér-Rao bound Δφ_Q = 1/√F_Q.
pub fn qcrb(fq: f64) -> Result<f64> {
    if !(fq > 0.0) {
        return Err(Error::Domain(format!(
            "qcrb: Fisher information must be positive, got {fq}"
        )));
    }
    Ok(1.0 / fq.sqrt())
}

/// Δφ_Q of the Kerr-seeded interferometer,
/// (1/2)√[(Var n₁ + Var n₂ - 2 Cov)/(Var n₁ Var n₂ - Cov²)],
/// from the closed-form internal statistics. Lossless only.
pub fn qcrb_kerr_seed(alpha: f64, gamma: f64, r1: f64) -> Result<f64> {
    let stats = internal_number_stats(InternalNumberStatsInputs { alpha, gamma, r1 })?;
    qcrb_from_stats(&stats)
}

/// The same combination for externally supplied statistics.
pub fn qcrb_from_stats(stats: &NumberStats) -> Result<f64> {
    let numerator = stats.var1 + stats.var2 - 2.0 * stats.cov;
    let denominator = stats.var1 * stats.var2 - stats.cov * stats.cov;
    let scale = (stats.var1 * stats.var2).abs().max(1.0);
    if denominator <= 1e-14 * scale {
        return Err(Error::DegenerateStatistics(
            "Var n1 · Var n2 - Cov² not positive",
        ));
    }
    if numerator <= 0.0 {
        return Err(Error::DegenerateStatistics(
            "Var n1 + Var n2 - 2 Cov not positive",
        ));
    }
    Ok(0.5 * (numerator / denominator).sqrt())
}

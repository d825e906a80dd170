//! Phase sensitivity of a Kerr-state-seeded SU(1,1) interferometer.
//!
//! A degenerate SU(1,1) interferometer replaces the beam splitters of a
//! conventional interferometer with two optical parametric amplifiers,
//! OPA-1(r₁,θ₁) and OPA-2(r₂,θ₂), around an unknown phase shift φ. This
//! crate computes the phase sensitivity Δφ when the signal port is seeded
//! with a Kerr state — a coherent state |α⟩ evolved through a χ⁽³⁾ medium
//! under exp[-iγn̂(n̂-1)] — for single-intensity and homodyne detection, in
//! lossless and lossy conditions, together with the quantum Cramér-Rao
//! bound as the measurement-independent floor.
//!
//! Two computational routes are kept deliberately independent:
//!
//! * [`moments`], [`sensitivity`], [`fisher`] — closed-form expressions
//!   under the small-γ linearization e^{-2iγn̂}â ≈ (1-2iγn̂)â, valid for
//!   γ ≤ 1e-3 and evaluated at any seed strength;
//! * [`oracle`] — a truncated Fock-space simulator that builds the states
//!   and channels numerically (exact or linearized Kerr treatment) and is
//!   the ground truth for every closed form, reachable for α ≤ 3.
//!
//! [`sweep`] and the `su11` binary drive parameter sweeps, figure-style
//! data sets, optimum searches and analytic-vs-oracle verification reports
//! as deterministic CSV files.

// Validation uses `!(x > 0.0)`-style comparisons on purpose: they reject
// NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config_file;
pub mod error;
pub mod figures;
pub mod fisher;
pub mod model;
pub mod moments;
pub mod oracle;
pub mod sensitivity;
pub mod svg;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    hl, kerr_gamma, snl, DetectionScheme, InterferometerConfig, MomentSet, NumberStats,
    ResultSource, SensitivityResult,
};
pub use moments::{mean_photon_kerr, LossyMomentPath};

//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A single configuration-invariant violation, named after the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    pub field: &'static str,
    pub message: String,
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Complete list of invariant violations found in a configuration.
///
/// Validation never stops at the first problem; every violated invariant
/// produces one entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<ValidationIssue>);

impl std::fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid configuration: ")?;
        for (i, issue) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Validation(ValidationErrors),

    /// A lossless-only operation was handed a lossy configuration.
    #[error("{op}: requires a lossless configuration (mu = eta = 1); use {alternative} instead")]
    WrongOperation {
        op: &'static str,
        alternative: &'static str,
    },

    /// The closed-form expressions assume gamma << 1; beyond the ceiling only
    /// the Fock-space oracle is trusted.
    #[error("{op}: gamma = {gamma:e} exceeds the linearization validity ceiling {ceiling:e}")]
    GammaOutOfRange {
        op: &'static str,
        gamma: f64,
        ceiling: f64,
    },

    #[error("{op}: squeezing amplitude r = {r} out of supported range (r <= {max})")]
    SqueezingOutOfRange { op: &'static str, r: f64, max: f64 },

    #[error("stationary point: sensitivity undefined (|d<A>/dphi| = {derivative:e})")]
    StationaryPoint { derivative: f64 },

    #[error("degenerate statistics: {0}")]
    DegenerateStatistics(&'static str),

    #[error("outside linearization validity: {0}")]
    OutsideLinearizationValidity(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation budget exceeded: {detail} (suggested n_max: {suggested})")]
    TruncationBudgetExceeded { detail: String, suggested: usize },

    #[error("flat landscape: the observable has no phi dependence to optimize")]
    FlatLandscape,

    #[error("config file: {0}")]
    ConfigFile(String),

    #[error("unknown figure name: {0}")]
    UnknownFigure(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ValidationErrors> for Error {
    fn from(e: ValidationErrors) -> Self {
        Error::Validation(e)
    }
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 truncation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 4,
            Error::TruncationBudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}

//! Parameter sweeps, figure-style data sets and verification reports,
//! emitted as deterministic CSV: fixed column order, shortest round-trip
//! float formatting, no timestamps, undefined points as an empty cell plus
//! a 0/1 flag column. Output is byte-identical across runs and worker
//! counts; sweep points evaluate independently and are assembled in axis
//! order.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fisher;
use crate::model::{DetectionScheme, InterferometerConfig};
use crate::moments::{self, LossyMomentPath};
use crate::oracle::{self, KerrVariant, ORACLE_ALPHA_LIMIT};
use crate::sensitivity;

/// What a sweep evaluates at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    DeltaPhiSi,
    DeltaPhiHd,
    DeltaPhiHdLossy,
    QcrbKerr,
    QcrbCoherent,
    NKerr,
    NCs,
}

impl Quantity {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "delta_phi_si" => Quantity::DeltaPhiSi,
            "delta_phi_hd" => Quantity::DeltaPhiHd,
            "delta_phi_hd_lossy" => Quantity::DeltaPhiHdLossy,
            "qcrb_kerr" => Quantity::QcrbKerr,
            "qcrb_coherent" => Quantity::QcrbCoherent,
            "n_kerr" => Quantity::NKerr,
            "n_cs" => Quantity::NCs,
            other => return Err(Error::ConfigFile(format!("unknown quantity `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::DeltaPhiSi => "delta_phi_si",
            Quantity::DeltaPhiHd => "delta_phi_hd",
            Quantity::DeltaPhiHdLossy => "delta_phi_hd_lossy",
            Quantity::QcrbKerr => "qcrb_kerr",
            Quantity::QcrbCoherent => "qcrb_coherent",
            Quantity::NKerr => "n_kerr",
            Quantity::NCs => "n_cs",
        }
    }

    /// Sensitivities and bounds can be undefined at stationary or degenerate
    /// points; those quantities carry a flag column.
    pub fn can_be_undefined(&self) -> bool {
        !matches!(self, Quantity::NKerr | Quantity::NCs)
    }
}

/// Which computational route evaluates the quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Analytic,
    OracleExact,
    OracleLinearized,
}

impl Engine {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "analytic" => Engine::Analytic,
            "oracle-exact" => Engine::OracleExact,
            "oracle-linearized" => Engine::OracleLinearized,
            other => return Err(Error::ConfigFile(format!("unknown engine `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Analytic => "analytic",
            Engine::OracleExact => "oracle-exact",
            Engine::OracleLinearized => "oracle-linearized",
        }
    }

    fn variant(&self) -> Option<KerrVariant> {
        match self {
            Engine::Analytic => None,
            Engine::OracleExact => Some(KerrVariant::Exact),
            Engine::OracleLinearized => Some(KerrVariant::Linearized),
        }
    }
}

/// A sweepable configuration field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamName {
    Alpha,
    Gamma,
    R1,
    R2,
    Theta1,
    Theta2,
    Phi,
    Mu,
    Eta,
}

impl ParamName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => ParamName::Alpha,
            "gamma" => ParamName::Gamma,
            "r1" => ParamName::R1,
            "r2" => ParamName::R2,
            "theta1" => ParamName::Theta1,
            "theta2" => ParamName::Theta2,
            "phi" => ParamName::Phi,
            "mu" => ParamName::Mu,
            "eta" => ParamName::Eta,
            other => return Err(Error::ConfigFile(format!("unknown parameter `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ParamName::Alpha => "alpha",
            ParamName::Gamma => "gamma",
            ParamName::R1 => "r1",
            ParamName::R2 => "r2",
            ParamName::Theta1 => "theta1",
            ParamName::Theta2 => "theta2",
            ParamName::Phi => "phi",
            ParamName::Mu => "mu",
            ParamName::Eta => "eta",
        }
    }

    pub fn set(&self, cfg: &mut InterferometerConfig, value: f64) {
        match self {
            ParamName::Alpha => cfg.alpha = value,
            ParamName::Gamma => cfg.gamma = value,
            ParamName::R1 => cfg.r1 = value,
            ParamName::R2 => cfg.r2 = value,
            ParamName::Theta1 => cfg.theta1 = value,
            ParamName::Theta2 => cfg.theta2 = value,
            ParamName::Phi => cfg.phi = value,
            ParamName::Mu => cfg.mu = value,
            ParamName::Eta => cfg.eta = value,
        }
    }
}

/// One linear sweep axis. With `endpoint` the grid is the inclusive
/// linspace(start, stop, count); without it, count points of spacing
/// (stop-start)/count starting at `start` (half-open grids like [0, 2π)).
#[derive(Debug, Clone, Copy)]
pub struct AxisSpec {
    pub param: ParamName,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub endpoint: bool,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        let step = if self.endpoint {
            (self.stop - self.start) / (n - 1) as f64
        } else {
            (self.stop - self.start) / n as f64
        };
        (0..n).map(|k| self.start + step * k as f64).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::ConfigFile(format!(
                "axis `{}` needs count >= 2, got {}",
                self.param.name(),
                self.count
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::ConfigFile(format!(
                "axis `{}` has non-finite bounds",
                self.param.name()
            )));
        }
        Ok(())
    }
}

/// One curve of a figure: a quantity plus fixed parameter overrides.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub name: String,
    pub quantity: Quantity,
    pub overrides: Vec<(ParamName, f64)>,
    pub lossy_path: LossyMomentPath,
}

/// A full sweep specification.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: InterferometerConfig,
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub curves: Vec<CurveSpec>,
    pub engine: Engine,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validated()?;
        self.axis1.validate()?;
        if let Some(a2) = &self.axis2 {
            a2.validate()?;
            if a2.param == self.axis1.param {
                return Err(Error::ConfigFile(
                    "axis1 and axis2 sweep the same parameter".into(),
                ));
            }
        }
        if self.curves.is_empty() {
            return Err(Error::ConfigFile("no quantity to sweep".into()));
        }
        if self.engine != Engine::Analytic {
            let mut max_alpha = self.base.alpha;
            for axis in std::iter::once(&self.axis1).chain(self.axis2.iter()) {
                if axis.param == ParamName::Alpha {
                    max_alpha = max_alpha.max(axis.start.max(axis.stop));
                }
            }
            for c in &self.curves {
                for (p, v) in &c.overrides {
                    if *p == ParamName::Alpha {
                        max_alpha = max_alpha.max(*v);
                    }
                }
            }
            if max_alpha > ORACLE_ALPHA_LIMIT {
                return Err(Error::TruncationBudgetExceeded {
                    detail: format!(
                        "oracle engines reject alpha > {ORACLE_ALPHA_LIMIT} (sweep reaches {max_alpha})"
                    ),
                    suggested: 128,
                });
            }
        }
        Ok(())
    }
}

/// Evaluates one quantity at one configuration. `Ok(None)` marks a defined
/// gap (stationary point, degenerate statistics); hard errors propagate.
pub fn evaluate_quantity(
    cfg: &InterferometerConfig,
    quantity: Quantity,
    engine: Engine,
    lossy_path: LossyMomentPath,
) -> Result<Option<f64>> {
    match (engine.variant(), quantity) {
        (None, Quantity::DeltaPhiSi) => {
            undefined_ok(sensitivity::phase_sensitivity_si(cfg).map(|s| s.delta_phi))
        }
        (None, Quantity::DeltaPhiHd) => {
            undefined_ok(sensitivity::phase_sensitivity_hd(cfg).map(|s| s.delta_phi))
        }
        (None, Quantity::DeltaPhiHdLossy) => undefined_ok(
            sensitivity::phase_sensitivity_hd_lossy(cfg, lossy_path).map(|s| s.delta_phi),
        ),
        (None, Quantity::QcrbKerr) => {
            undefined_ok(fisher::qcrb_kerr_seed(cfg.alpha, cfg.gamma, cfg.r1))
        }
        (None, Quantity::QcrbCoherent) => {
            undefined_ok(fisher::qcrb_kerr_seed(cfg.alpha, 0.0, cfg.r1))
        }
        (None, Quantity::NKerr) => Ok(Some(moments::mean_photon_kerr(cfg.alpha, cfg.gamma))),
        (None, Quantity::NCs) => Ok(Some(cfg.alpha * cfg.alpha)),
        (Some(variant), q) => oracle_quantity(cfg, q, variant),
    }
}

fn undefined_ok(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(
            Error::StationaryPoint { .. } | Error::DegenerateStatistics(_) | Error::FlatLandscape,
        ) => Ok(None),
        Err(e) => Err(e),
    }
}

fn oracle_quantity(
    cfg: &InterferometerConfig,
    quantity: Quantity,
    variant: KerrVariant,
) -> Result<Option<f64>> {
    match quantity {
        Quantity::DeltaPhiSi => undefined_ok(
            oracle::oracle_phase_sensitivity(cfg, DetectionScheme::Si, variant, 1e-5)
                .map(|s| s.delta_phi),
        ),
        Quantity::DeltaPhiHd | Quantity::DeltaPhiHdLossy => undefined_ok(
            oracle::oracle_phase_sensitivity(cfg, DetectionScheme::Hd, variant, 1e-5)
                .map(|s| s.delta_phi),
        ),
        Quantity::QcrbKerr => undefined_ok(
            oracle::simulate(cfg, variant).and_then(|run| fisher::qcrb_from_stats(&run.internal)),
        ),
        Quantity::QcrbCoherent => {
            let mut c = *cfg;
            c.gamma = 0.0;
            undefined_ok(
                oracle::simulate(&c, variant)
                    .and_then(|run| fisher::qcrb_from_stats(&run.internal)),
            )
        }
        Quantity::NKerr => Ok(Some(oracle_seed_mean_photon(cfg, variant)?)),
        Quantity::NCs => {
            let mut c = *cfg;
            c.gamma = 0.0;
            Ok(Some(oracle_seed_mean_photon(&c, variant)?))
        }
    }
}

/// Mean photon number of the (possibly linearized) Kerr seed, by Fock sum.
fn oracle_seed_mean_photon(cfg: &InterferometerConfig, variant: KerrVariant) -> Result<f64> {
    use crate::oracle::state::{coherent_amplitudes, ModeOp, TruncatedState};
    if cfg.alpha > ORACLE_ALPHA_LIMIT {
        return Err(Error::TruncationBudgetExceeded {
            detail: format!("alpha = {} beyond the oracle limit", cfg.alpha),
            suggested: 128,
        });
    }
    let n_max = crate::oracle::state::poisson_tail_cutoff(cfg.alpha * cfg.alpha, 1e-15) + 8;
    let seed = TruncatedState::product(&[coherent_amplitudes(cfg.alpha, n_max)?]);
    match variant {
        // The exact Kerr unitary is number diagonal: ⟨n⟩ is the seed's.
        KerrVariant::Exact => Ok(seed.n_moment(0)),
        KerrVariant::Linearized => {
            let w = seed.apply_mode_ops(&[(
                Complex64::new(1.0, 0.0),
                ModeOp::LinA {
                    mode: 0,
                    gamma: cfg.gamma,
                },
            )]);
            Ok(w.norm_sqr() / seed.norm_sqr())
        }
    }
}

/// A finished sweep: header plus rows of preformatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the cell at (row, named column) back to f64; None if empty.
    pub fn value(&self, row: usize, column: &str) -> Option<f64> {
        let idx = self.header.iter().position(|h| h == column)?;
        let cell = &self.rows[row][idx];
        if cell.is_empty() {
            None
        } else {
            cell.parse().ok()
        }
    }
}

/// Shortest round-trip decimal representation (Rust's float Display).
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Runs a sweep on `threads` workers (0 = library default). Rows are sorted
/// lexicographically by (axis1 index, axis2 index) regardless of execution
/// order, so output is independent of the worker count.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<SweepTable> {
    spec.validate()?;
    let a1 = spec.axis1.values();
    let a2 = spec.axis2.as_ref().map(|a| a.values());

    let mut points: Vec<InterferometerConfig> = Vec::new();
    match &a2 {
        None => {
            for &v1 in &a1 {
                let mut cfg = spec.base;
                spec.axis1.param.set(&mut cfg, v1);
                points.push(cfg);
            }
        }
        Some(vals2) => {
            for &v1 in &a1 {
                for &v2 in vals2 {
                    let mut cfg = spec.base;
                    spec.axis1.param.set(&mut cfg, v1);
                    spec.axis2.as_ref().unwrap().param.set(&mut cfg, v2);
                    points.push(cfg);
                }
            }
        }
    }

    let curves = &spec.curves;
    let engine = spec.engine;
    let eval_point = |cfg: &InterferometerConfig| -> Result<Vec<Option<f64>>> {
        curves
            .iter()
            .map(|c| {
                let mut cc = *cfg;
                for (p, v) in &c.overrides {
                    p.set(&mut cc, *v);
                }
                evaluate_quantity(&cc, c.quantity, engine, c.lossy_path)
            })
            .collect()
    };

    let results: Vec<Result<Vec<Option<f64>>>> =
        with_pool(threads, || points.par_iter().map(eval_point).collect())?;

    let mut header = vec![spec.axis1.param.name().to_string()];
    if let Some(a) = &spec.axis2 {
        header.push(a.param.name().to_string());
    }
    for c in curves {
        header.push(c.name.clone());
        if c.quantity.can_be_undefined() {
            header.push(format!("{}_undefined", c.name));
        }
    }

    let mut rows = Vec::with_capacity(points.len());
    for (idx, result) in results.into_iter().enumerate() {
        let values = result?;
        let mut row = Vec::with_capacity(header.len());
        match &a2 {
            None => row.push(fmt_f64(a1[idx])),
            Some(vals2) => {
                row.push(fmt_f64(a1[idx / vals2.len()]));
                row.push(fmt_f64(vals2[idx % vals2.len()]));
            }
        }
        for (c, v) in curves.iter().zip(values) {
            match v {
                Some(x) => {
                    row.push(fmt_f64(x));
                    if c.quantity.can_be_undefined() {
                        row.push("0".to_string());
                    }
                }
                None => {
                    row.push(String::new());
                    if c.quantity.can_be_undefined() {
                        row.push("1".to_string());
                    }
                }
            }
        }
        rows.push(row);
    }
    Ok(SweepTable { header, rows })
}

/// Runs `f` inside a dedicated rayon pool of `threads` workers
/// (0 = rayon's default pool).
pub fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        Ok(f())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn base() -> InterferometerConfig {
        InterferometerConfig {
            alpha: 100.0,
            gamma: 1e-6,
            r1: 2.0,
            r2: 2.0,
            theta1: 0.0,
            theta2: PI,
            phi: 6.15,
            mu: 1.0,
            eta: 1.0,
        }
    }

    fn curve(name: &str, quantity: Quantity) -> CurveSpec {
        CurveSpec {
            name: name.into(),
            quantity,
            overrides: vec![],
            lossy_path: LossyMomentPath::Corrected,
        }
    }

    fn axis(param: ParamName, start: f64, stop: f64, count: usize) -> AxisSpec {
        AxisSpec {
            param,
            start,
            stop,
            count,
            endpoint: true,
        }
    }

    #[test]
    fn hd_minimum_interior_to_optimum_window() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Phi, 5.9, 6.19, 100),
            axis2: None,
            curves: vec![curve("dphi", Quantity::DeltaPhiHd)],
            engine: Engine::Analytic,
        };
        let table = run_sweep(&spec, 1).unwrap();
        let vals: Vec<f64> = (0..100).map(|r| table.value(r, "dphi").unwrap()).collect();
        let (imin, _) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert!(imin > 0 && imin < vals.len() - 1, "minimum at edge {imin}");
    }

    #[test]
    fn degenerate_two_point_sweep_of_constant() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Phi, 1.0, 2.0, 2),
            axis2: None,
            curves: vec![curve("n", Quantity::NKerr)],
            engine: Engine::Analytic,
        };
        let table = run_sweep(&spec, 1).unwrap();
        assert_eq!(table.rows[0][1], table.rows[1][1]);
    }

    #[test]
    fn stationary_points_emit_empty_cell_and_flag() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Phi, 0.0, PI, 3),
            axis2: None,
            curves: vec![curve("dphi", Quantity::DeltaPhiSi)],
            engine: Engine::Analytic,
        };
        let table = run_sweep(&spec, 1).unwrap();
        // phi = 0 and phi = pi are stationary for the SI scheme here.
        assert_eq!(table.rows[0][1], "");
        assert_eq!(table.rows[0][2], "1");
        assert_ne!(table.rows[1][1], "");
        assert_eq!(table.rows[2][2], "1");
    }

    #[test]
    fn sweep_output_independent_of_worker_count() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Gamma, 0.0, 1e-6, 25),
            axis2: Some(axis(ParamName::Phi, 5.9, 6.19, 8)),
            curves: vec![curve("dphi", Quantity::DeltaPhiHd)],
            engine: Engine::Analytic,
        };
        let t1 = run_sweep(&spec, 1).unwrap();
        let t8 = run_sweep(&spec, 8).unwrap();
        assert_eq!(t1.to_csv(), t8.to_csv());
    }

    #[test]
    fn oracle_engine_rejects_large_alpha() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Phi, 0.1, 0.2, 2),
            axis2: None,
            curves: vec![curve("dphi", Quantity::DeltaPhiHd)],
            engine: Engine::OracleLinearized,
        };
        assert!(matches!(
            spec.validate(),
            Err(Error::TruncationBudgetExceeded { .. })
        ));
    }

    #[test]
    fn axis_count_must_be_at_least_two() {
        let spec = SweepSpec {
            base: base(),
            axis1: axis(ParamName::Phi, 0.1, 0.2, 1),
            axis2: None,
            curves: vec![curve("dphi", Quantity::DeltaPhiHd)],
            engine: Engine::Analytic,
        };
        assert!(spec.validate().is_err());
    }
}

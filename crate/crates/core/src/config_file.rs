//! Flat `key = value` configuration files with `[section]` headers.
//!
//! Sections: one `[base]` (all nine physical parameters, no defaults), one
//! `[axis]` and optionally one `[axis2]`, then either one `[sweep]` section
//! (generic single-quantity sweep) or one or more `[curve]` sections
//! (figure-style multi-column sweeps). Unknown sections, unknown keys,
//! duplicate keys and missing keys are hard errors: silent typos in physics
//! parameters are the top user hazard.
//!
//! ```text
//! # comment
//! [base]
//! alpha = 100.0
//! ...
//! [axis]
//! param = phi
//! start = 0.0
//! stop = 6.283185307179586
//! count = 200
//! endpoint = false
//! [sweep]
//! quantity = delta_phi_hd
//! engine = analytic
//! lossy_path = corrected
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::InterferometerConfig;
use crate::moments::LossyMomentPath;
use crate::sweep::{AxisSpec, CurveSpec, Engine, ParamName, Quantity, SweepSpec};

#[derive(Debug, Default)]
struct Section {
    name: String,
    entries: BTreeMap<String, String>,
    order: Vec<String>,
}

fn parse_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push(Section {
                name: name.trim().to_string(),
                ..Default::default()
            });
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::ConfigFile(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        let section = sections.last_mut().ok_or_else(|| {
            Error::ConfigFile(format!(
                "line {}: `{key}` appears before any [section]",
                lineno + 1
            ))
        })?;
        if section.entries.insert(key.clone(), value).is_some() {
            return Err(Error::ConfigFile(format!(
                "line {}: duplicate key `{key}` in [{}]",
                lineno + 1,
                section.name
            )));
        }
        section.order.push(key);
    }
    Ok(sections)
}

struct KeyChecker<'a> {
    section: &'a Section,
    used: Vec<&'a str>,
}

impl<'a> KeyChecker<'a> {
    fn new(section: &'a Section) -> Self {
        Self {
            section,
            used: Vec::new(),
        }
    }

    fn take(&mut self, key: &'a str) -> Option<&'a str> {
        self.used.push(key);
        self.section.entries.get(key).map(|s| s.as_str())
    }

    fn require(&mut self, key: &'a str) -> Result<&'a str> {
        self.take(key).ok_or_else(|| {
            Error::ConfigFile(format!("[{}] is missing `{key}`", self.section.name))
        })
    }

    fn finish(self) -> Result<()> {
        for key in self.section.order.iter() {
            if !self.used.contains(&key.as_str()) {
                return Err(Error::ConfigFile(format!(
                    "unknown key `{key}` in [{}]",
                    self.section.name
                )));
            }
        }
        Ok(())
    }
}

fn parse_f64(section: &str, key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| {
        Error::ConfigFile(format!("[{section}] {key} = {value}: not a number"))
    })
}

fn parse_bool(section: &str, key: &str, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::ConfigFile(format!(
            "[{section}] {key} = {value}: expected true or false"
        ))),
    }
}

fn parse_lossy_path(section: &str, value: &str) -> Result<LossyMomentPath> {
    match value {
        "corrected" => Ok(LossyMomentPath::Corrected),
        "reference" => Ok(LossyMomentPath::Reference),
        other => Err(Error::ConfigFile(format!(
            "[{section}] lossy_path = {other}: expected corrected or reference"
        ))),
    }
}

fn parse_base(section: &Section) -> Result<InterferometerConfig> {
    let mut c = KeyChecker::new(section);
    let cfg = InterferometerConfig {
        alpha: parse_f64("base", "alpha", c.require("alpha")?)?,
        gamma: parse_f64("base", "gamma", c.require("gamma")?)?,
        r1: parse_f64("base", "r1", c.require("r1")?)?,
        r2: parse_f64("base", "r2", c.require("r2")?)?,
        theta1: parse_f64("base", "theta1", c.require("theta1")?)?,
        theta2: parse_f64("base", "theta2", c.require("theta2")?)?,
        phi: parse_f64("base", "phi", c.require("phi")?)?,
        mu: parse_f64("base", "mu", c.require("mu")?)?,
        eta: parse_f64("base", "eta", c.require("eta")?)?,
    };
    c.finish()?;
    Ok(cfg)
}

fn parse_axis(section: &Section) -> Result<AxisSpec> {
    let mut c = KeyChecker::new(section);
    let param = ParamName::parse(c.require("param")?)?;
    let start = parse_f64(&section.name, "start", c.require("start")?)?;
    let stop = parse_f64(&section.name, "stop", c.require("stop")?)?;
    let count = c
        .require("count")?
        .parse::<usize>()
        .map_err(|_| Error::ConfigFile(format!("[{}] count: not an integer", section.name)))?;
    let endpoint = match c.take("endpoint") {
        Some(v) => parse_bool(&section.name, "endpoint", v)?,
        None => true,
    };
    c.finish()?;
    Ok(AxisSpec {
        param,
        start,
        stop,
        count,
        endpoint,
    })
}

fn parse_curve(section: &Section) -> Result<CurveSpec> {
    let mut c = KeyChecker::new(section);
    let name = c.require("name")?.to_string();
    let quantity = Quantity::parse(c.require("quantity")?)?;
    let lossy_path = match c.take("lossy_path") {
        Some(v) => parse_lossy_path("curve", v)?,
        None => LossyMomentPath::Corrected,
    };
    let mut overrides = Vec::new();
    for key in [
        "alpha", "gamma", "r1", "r2", "theta1", "theta2", "phi", "mu", "eta",
    ] {
        if let Some(v) = c.take(key) {
            overrides.push((ParamName::parse(key)?, parse_f64("curve", key, v)?));
        }
    }
    c.finish()?;
    Ok(CurveSpec {
        name,
        quantity,
        overrides,
        lossy_path,
    })
}

/// Parses a complete sweep or figure configuration.
pub fn parse_sweep_config(text: &str) -> Result<SweepSpec> {
    let sections = parse_sections(text)?;
    let mut base = None;
    let mut axis1 = None;
    let mut axis2 = None;
    let mut curves = Vec::new();
    let mut sweep_quantity = None;
    let mut engine = Engine::Analytic;
    let mut sweep_lossy_path = LossyMomentPath::Corrected;

    for section in &sections {
        match section.name.as_str() {
            "base" => {
                if base.is_some() {
                    return Err(Error::ConfigFile("duplicate [base] section".into()));
                }
                base = Some(parse_base(section)?);
            }
            "axis" => {
                if axis1.is_some() {
                    return Err(Error::ConfigFile("duplicate [axis] section".into()));
                }
                axis1 = Some(parse_axis(section)?);
            }
            "axis2" => {
                if axis2.is_some() {
                    return Err(Error::ConfigFile("duplicate [axis2] section".into()));
                }
                axis2 = Some(parse_axis(section)?);
            }
            "curve" => curves.push(parse_curve(section)?),
            "sweep" => {
                if sweep_quantity.is_some() {
                    return Err(Error::ConfigFile("duplicate [sweep] section".into()));
                }
                let mut c = KeyChecker::new(section);
                sweep_quantity = Some(Quantity::parse(c.require("quantity")?)?);
                if let Some(v) = c.take("engine") {
                    engine = Engine::parse(v)?;
                }
                if let Some(v) = c.take("lossy_path") {
                    sweep_lossy_path = parse_lossy_path("sweep", v)?;
                }
                c.finish()?;
            }
            other => {
                return Err(Error::ConfigFile(format!("unknown section [{other}]")));
            }
        }
    }

    let base = base.ok_or_else(|| Error::ConfigFile("missing [base] section".into()))?;
    let axis1 = axis1.ok_or_else(|| Error::ConfigFile("missing [axis] section".into()))?;
    match (sweep_quantity, curves.is_empty()) {
        (Some(_), false) => Err(Error::ConfigFile(
            "[sweep] and [curve] sections are mutually exclusive".into(),
        )),
        (None, true) => Err(Error::ConfigFile(
            "need either a [sweep] section or [curve] sections".into(),
        )),
        (Some(q), true) => Ok(SweepSpec {
            base,
            axis1,
            axis2,
            curves: vec![CurveSpec {
                name: q.name().to_string(),
                quantity: q,
                overrides: vec![],
                lossy_path: sweep_lossy_path,
            }],
            engine,
        }),
        (None, false) => Ok(SweepSpec {
            base,
            axis1,
            axis2,
            curves,
            engine,
        }),
    }
}

/// Parses a configuration that only carries a `[base]` section (for the
/// `optimum` and `moments` commands).
pub fn parse_base_config(text: &str) -> Result<InterferometerConfig> {
    let sections = parse_sections(text)?;
    let mut base = None;
    for section in &sections {
        match section.name.as_str() {
            "base" => base = Some(parse_base(section)?),
            other => {
                return Err(Error::ConfigFile(format!(
                    "unexpected section [{other}] (only [base] is allowed here)"
                )))
            }
        }
    }
    base.ok_or_else(|| Error::ConfigFile("missing [base] section".into()))
}

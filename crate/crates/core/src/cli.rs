//! Command-line front end: `figure`, `sweep`, `verify`, `optimum` and
//! `moments`. Exit codes: 0 success, 2 validation error, 3 truncation
//! infeasibility, 4 I/O.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config_file::{parse_base_config, parse_sweep_config};
use crate::error::{Error, Result};
use crate::figures;
use crate::model::DetectionScheme;
use crate::moments::LossyMomentPath;
use crate::oracle::{self, KerrVariant};
use crate::sensitivity;
use crate::sweep::{fmt_f64, run_sweep, Engine};
use crate::verify::{run_verify, VerifyPreset};

#[derive(Parser)]
#[command(
    name = "su11",
    about = "Phase sensitivity of a Kerr-state-seeded SU(1,1) interferometer",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Worker threads for sweep points (0 = library default).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate a named figure data set (CSV, optionally SVG).
    Figure {
        /// One of: fig2, fig3a, fig3, fig5, fig9, fig10, fig11, fig12.
        name: String,
        /// Output directory for <name>.csv (and <name>.svg with --svg).
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also render a simple SVG plot.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Override the config file's engine:
        /// analytic, oracle-exact or oracle-linearized.
        #[arg(long)]
        engine: Option<String>,
        /// Also render a simple SVG plot next to the CSV.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the analytic-vs-oracle verification grid.
    Verify {
        /// Grid preset: small or full.
        #[arg(long, default_value = "small")]
        preset: String,
        /// Output CSV path for the report.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Find the phi minimizing the phase sensitivity.
    Optimum {
        /// Config file with a [base] section.
        #[arg(long)]
        config: PathBuf,
        /// Detection scheme: si or hd.
        #[arg(long)]
        scheme: String,
        /// Lossy second-moment path: corrected or reference.
        #[arg(long, default_value = "corrected")]
        lossy_path: String,
        /// Optional output CSV path (phi_star,delta_phi).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the output-mode moment set for one configuration.
    Moments {
        /// Config file with a [base] section.
        #[arg(long)]
        config: PathBuf,
        /// Evaluation engine: analytic, oracle-exact or oracle-linearized.
        #[arg(long, default_value = "analytic")]
        engine: String,
        /// Lossy second-moment path for the analytic engine.
        #[arg(long, default_value = "corrected")]
        lossy_path: String,
        /// Optional output CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_lossy_path(s: &str) -> Result<LossyMomentPath> {
    match s {
        "corrected" => Ok(LossyMomentPath::Corrected),
        "reference" => Ok(LossyMomentPath::Reference),
        other => Err(Error::ConfigFile(format!(
            "unknown lossy path `{other}` (expected corrected or reference)"
        ))),
    }
}

fn parse_scheme(s: &str) -> Result<DetectionScheme> {
    match s {
        "si" => Ok(DetectionScheme::Si),
        "hd" => Ok(DetectionScheme::Hd),
        other => Err(Error::ConfigFile(format!(
            "unknown scheme `{other}` (expected si or hd)"
        ))),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, contents)?;
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Figure {
            name,
            out,
            svg,
            common,
        } => {
            let table = figures::run_figure(&name, common.threads)?;
            fs::create_dir_all(&out)?;
            let csv_path = out.join(format!("{name}.csv"));
            write_file(&csv_path, &table.to_csv())?;
            println!("wrote {}", csv_path.display());
            if svg {
                let spec = figures::figure_spec(&name)?;
                let rendered = if spec.axis2.is_some() {
                    crate::svg::heatmap(&table, &name)
                } else {
                    crate::svg::line_chart(&table, &name)
                };
                let svg_path = out.join(format!("{name}.svg"));
                write_file(&svg_path, &rendered)?;
                println!("wrote {}", svg_path.display());
            }
            Ok(())
        }
        Command::Sweep {
            config,
            out,
            engine,
            svg,
            common,
        } => {
            let text = fs::read_to_string(&config)?;
            let mut spec = parse_sweep_config(&text)?;
            if let Some(engine) = engine {
                spec.engine = Engine::parse(&engine)?;
            }
            let table = run_sweep(&spec, common.threads)?;
            write_file(&out, &table.to_csv())?;
            println!("wrote {} ({} rows)", out.display(), table.rows.len());
            if svg {
                let rendered = if spec.axis2.is_some() {
                    crate::svg::heatmap(&table, "sweep")
                } else {
                    crate::svg::line_chart(&table, "sweep")
                };
                let svg_path = out.with_extension("svg");
                write_file(&svg_path, &rendered)?;
                println!("wrote {}", svg_path.display());
            }
            Ok(())
        }
        Command::Verify {
            preset,
            out,
            common,
        } => {
            let preset = VerifyPreset::parse(&preset)?;
            let report = run_verify(preset, common.threads)?;
            write_file(&out, &report.to_csv())?;
            println!("{}", report.summary());
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Optimum {
            config,
            scheme,
            lossy_path,
            out,
        } => {
            let cfg = parse_base_config(&fs::read_to_string(&config)?)?;
            let scheme = parse_scheme(&scheme)?;
            let path = parse_lossy_path(&lossy_path)?;
            let opt = sensitivity::optimum_phi(&cfg, scheme, path)?;
            let csv = format!(
                "phi_star,delta_phi\n{},{}\n",
                fmt_f64(opt.phi),
                fmt_f64(opt.delta_phi)
            );
            println!("phi_star = {}, delta_phi = {}", opt.phi, opt.delta_phi);
            if let Some(out) = out {
                write_file(&out, &csv)?;
                println!("wrote {}", out.display());
            }
            Ok(())
        }
        Command::Moments {
            config,
            engine,
            lossy_path,
            out,
        } => {
            let cfg = parse_base_config(&fs::read_to_string(&config)?)?;
            let engine = Engine::parse(&engine)?;
            let path = parse_lossy_path(&lossy_path)?;
            let set = match engine {
                Engine::Analytic => {
                    if cfg.is_lossless() {
                        crate::moments::lossless_moment_set(&cfg)?
                    } else {
                        crate::moments::lossy_moment_set(&cfg, path)?
                    }
                }
                Engine::OracleExact => oracle::simulate(&cfg, KerrVariant::Exact)?.moments,
                Engine::OracleLinearized => {
                    oracle::simulate(&cfg, KerrVariant::Linearized)?.moments
                }
            };
            let mut csv = String::from("moment,re,im\n");
            for (name, v) in [("m1", set.m1), ("m2", set.m2), ("n1", set.n1), ("n2", set.n2)] {
                csv.push_str(&format!("{name},{},{}\n", fmt_f64(v.re), fmt_f64(v.im)));
            }
            print!("{csv}");
            if let Some(out) = out {
                write_file(&out, &csv)?;
                println!("wrote {}", out.display());
            }
            Ok(())
        }
    }
}

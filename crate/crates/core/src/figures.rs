//! Named figure-style data sets. Each figure is defined by a committed
//! configuration file under `configs/`, embedded at compile time so the
//! binary and the repository cannot drift apart; `su11 sweep --config
//! configs/figN.conf` reproduces the same CSV byte for byte.

use crate::error::{Error, Result};
use crate::sweep::{run_sweep, SweepSpec, SweepTable};

pub const FIGURE_NAMES: [&str; 8] = [
    "fig2", "fig3a", "fig3", "fig5", "fig9", "fig10", "fig11", "fig12",
];

/// The committed configuration text for a named figure.
pub fn figure_config_text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "fig2" => include_str!("../configs/fig2.conf"),
        "fig3a" => include_str!("../configs/fig3a.conf"),
        "fig3" => include_str!("../configs/fig3.conf"),
        "fig5" => include_str!("../configs/fig5.conf"),
        "fig9" => include_str!("../configs/fig9.conf"),
        "fig10" => include_str!("../configs/fig10.conf"),
        "fig11" => include_str!("../configs/fig11.conf"),
        "fig12" => include_str!("../configs/fig12.conf"),
        other => return Err(Error::UnknownFigure(other.to_string())),
    })
}

pub fn figure_spec(name: &str) -> Result<SweepSpec> {
    crate::config_file::parse_sweep_config(figure_config_text(name)?)
}

pub fn run_figure(name: &str, threads: usize) -> Result<SweepTable> {
    run_sweep(&figure_spec(name)?, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_figures_parse_and_validate() {
        for name in FIGURE_NAMES {
            let spec = figure_spec(name).unwrap();
            spec.validate().unwrap();
        }
    }

    #[test]
    fn unknown_figure_is_an_error() {
        assert!(matches!(figure_spec("fig99"), Err(Error::UnknownFigure(_))));
    }

    /// The embedded definitions are the committed files, so `figure figN`
    /// and `sweep --config configs/figN.conf` cannot drift apart.
    #[test]
    fn embedded_configs_match_committed_files() {
        for name in FIGURE_NAMES {
            let path = format!("{}/configs/{name}.conf", env!("CARGO_MANIFEST_DIR"));
            let on_disk = std::fs::read_to_string(&path).unwrap();
            assert_eq!(figure_config_text(name).unwrap(), on_disk, "{name}");
        }
    }

    #[test]
    fn fig2_kerr_coherent_crossover() {
        let table = run_figure("fig2", 1).unwrap();
        assert_eq!(table.header, ["gamma", "n_kerr", "n_cs"]);
        assert_eq!(table.rows.len(), 201);
        // Row 20 is gamma = 1e-6 exactly (step 5e-8).
        let gamma: f64 = table.value(20, "gamma").unwrap();
        assert!((gamma - 1e-6).abs() < 1e-20);
        let n_kerr = table.value(20, "n_kerr").unwrap();
        let n_cs = table.value(20, "n_cs").unwrap();
        let excess = n_kerr / n_cs - 1.0;
        assert!(
            (excess - 4.0004e-4).abs() < 1e-8,
            "seed excess at gamma=1e-6 was {excess:e}"
        );
    }

    #[test]
    fn fig3a_si_grid_is_gamma_flat() {
        // Per-phi comparison of each gamma row against the gamma = 0 row,
        // read straight off the emitted grid.
        let table = run_figure("fig3a", 0).unwrap();
        assert_eq!(
            table.header,
            ["gamma", "phi", "delta_phi_si", "delta_phi_si_undefined"]
        );
        assert_eq!(table.rows.len(), 50 * 200);
        let mut worst = 0.0f64;
        for row in 0..table.rows.len() {
            let base_row = row % 200; // gamma = 0 block comes first
            match (table.value(row, "delta_phi_si"), table.value(base_row, "delta_phi_si")) {
                (Some(v), Some(b)) => worst = worst.max((v - b).abs() / b),
                (None, None) => {}
                _ => panic!("definedness differs between gamma rows at {row}"),
            }
        }
        assert!(worst <= 1e-6, "max relative gamma-dependence {worst:e}");
    }

    #[test]
    fn fig5_kerr_column_below_coherent() {
        let table = run_figure("fig5", 1).unwrap();
        for row in 1..table.rows.len() {
            let kerr = table.value(row, "dphi_hd_kerr").unwrap();
            let coherent = table.value(row, "dphi_hd_coherent").unwrap();
            assert!(kerr < coherent, "row {row}: {kerr} !< {coherent}");
        }
        // At gamma = 0 the two columns coincide.
        assert_eq!(
            table.value(0, "dphi_hd_kerr"),
            table.value(0, "dphi_hd_coherent")
        );
    }
}

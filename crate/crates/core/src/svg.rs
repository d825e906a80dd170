//! Minimal SVG rendering for sweep tables: polyline charts for one-axis
//! sweeps and a grayscale heatmap for two-axis grids. Convenience output
//! only; the CSV files are the data artifact.

use crate::sweep::SweepTable;

const W: f64 = 800.0;
const H: f64 = 520.0;
const MARGIN: f64 = 60.0;

fn color(i: usize) -> &'static str {
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    COLORS[i % COLORS.len()]
}

/// Renders a table whose first column is the x axis and whose remaining
/// value columns (skipping `_undefined` flags) become one polyline each.
pub fn line_chart(table: &SweepTable, title: &str) -> String {
    let value_cols: Vec<usize> = (1..table.header.len())
        .filter(|&i| !table.header[i].ends_with("_undefined"))
        .collect();
    let xs: Vec<f64> = table
        .rows
        .iter()
        .map(|r| r[0].parse().unwrap_or(f64::NAN))
        .collect();
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for &col in &value_cols {
        let pts: Vec<(f64, f64)> = table
            .rows
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r[col].parse::<f64>().ok().map(|v| (xs[k], v)))
            .collect();
        series.push((table.header[col].clone(), pts));
    }
    let all: Vec<(f64, f64)> = series.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    let (x0, x1) = bounds(all.iter().map(|p| p.0));
    let (y0, y1) = bounds(all.iter().map(|p| p.1));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0).max(1e-300) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0).max(1e-300) * (H - 2.0 * MARGIN);

    let mut svg = svg_header(title);
    for (i, (name, pts)) in series.iter().enumerate() {
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            color(i),
            path.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{}\" font-size=\"12\">{}</text>\n",
            W - MARGIN - 150.0,
            MARGIN + 16.0 * (i + 1) as f64,
            color(i),
            name
        ));
    }
    axis_labels(&mut svg, x0, x1, y0, y1, &table.header[0]);
    svg.push_str("</svg>\n");
    svg
}

/// Renders a two-axis table (axis1, axis2, value, flag) as a heatmap.
pub fn heatmap(table: &SweepTable, title: &str) -> String {
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let ys: Vec<f64> = table.rows.iter().map(|r| r[1].parse().unwrap()).collect();
    let vals: Vec<Option<f64>> = table.rows.iter().map(|r| r[2].parse().ok()).collect();
    let mut ux: Vec<f64> = xs.clone();
    ux.dedup();
    let ny = table.rows.len() / ux.len().max(1);
    let present: Vec<f64> = vals.iter().flatten().copied().collect();
    let (v0, v1) = bounds(present.iter().copied());
    let (x0, x1) = bounds(xs.iter().copied());
    let (y0, y1) = bounds(ys.iter().copied());
    let cw = (W - 2.0 * MARGIN) / ux.len() as f64;
    let ch = (H - 2.0 * MARGIN) / ny as f64;

    let mut svg = svg_header(title);
    for (k, v) in vals.iter().enumerate() {
        let i = k / ny;
        let j = k % ny;
        let fill = match v {
            // Log-scaled grayscale; undefined cells stay white.
            Some(v) => {
                let t = ((v.ln() - v0.ln()) / (v1.ln() - v0.ln()).max(1e-300)).clamp(0.0, 1.0);
                let g = (255.0 * (1.0 - t)) as u8;
                format!("rgb({g},{g},255)")
            }
            None => "white".to_string(),
        };
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
            MARGIN + i as f64 * cw,
            H - MARGIN - (j + 1) as f64 * ch,
            cw + 0.5,
            ch + 0.5,
            fill
        ));
    }
    axis_labels(&mut svg, x0, x1, y0, y1, &table.header[0]);
    svg.push_str("</svg>\n");
    svg
}

fn svg_header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">{title}</text>\n",
        W / 2.0
    )
}

fn axis_labels(svg: &mut String, x0: f64, x1: f64, y0: f64, y1: f64, xname: &str) {
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\">{xname}: {x0:.4e} .. {x1:.4e}</text>\n\
         <text x=\"12\" y=\"{}\" font-size=\"11\">y: {y0:.4e} .. {y1:.4e}</text>\n",
        MARGIN,
        H - 18.0,
        MARGIN - 30.0,
    ));
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo, lo + 1.0)
    } else {
        (lo, hi)
    }
}

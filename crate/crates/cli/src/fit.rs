//! Least-squares slope of log y against log x — the tool for reading an
//! empirical exponent off a counting grid.

use anyhow::{bail, Context, Result};
use serde_json::json;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub n: usize,
}

impl FitResult {
    pub const CSV_HEADER: &'static str = "slope,intercept,residual,n";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            crate::output::f6(self.slope),
            crate::output::f6(self.intercept),
            crate::output::f6(self.residual),
            self.n
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "n": self.n,
        })
    }
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        bail!("fit: need at least 3 points, got {}", points.len());
    }
    for &(x, y) in points {
        if !(x > 0.0) || !(y > 0.0) {
            bail!("fit: points must have x > 0 and y > 0, got ({x}, {y})");
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        bail!("fit: all x values coincide");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (logs
        .iter()
        .map(|p| {
            let e = p.1 - (intercept + slope * p.0);
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(FitResult {
        slope,
        intercept,
        residual,
        n: logs.len(),
    })
}

/// Pulls (x, y) columns out of headered CSV text — the shape the other
/// subcommands emit, so their output feeds straight back in.
pub fn read_xy_csv(text: &str, x_col: &str, y_col: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("fit: empty input")?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let find = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .with_context(|| format!("fit: no column {name:?}; input has {}", header.trim()))
    };
    let xi = find(x_col)?;
    let yi = find(y_col)?;
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != cols.len() {
            bail!(
                "fit: row {} has {} fields, header has {}",
                idx + 2,
                fields.len(),
                cols.len()
            );
        }
        let parse = |i: usize| -> Result<f64> {
            fields[i]
                .parse()
                .with_context(|| format!("fit: row {}, column {:?}", idx + 2, cols[i]))
        };
        out.push((parse(xi)?, parse(yi)?));
    }
    Ok(out)
}

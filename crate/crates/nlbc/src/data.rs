//! Turning initial-data descriptors into grid samples.

use std::f64::consts::PI;
use std::path::Path;

use nlbc_core::constraints::ProblemSpec;
use nlbc_core::spectral::EigenMode;
use nlbc_core::{GridFunction, C64};

use crate::config::{cx, InitialData};
use crate::error::{CliError, Result};

/// Samples `data` on the problem grid. Relative CSV paths resolve against
/// `base` (the directory of the config file).
pub fn resolve(data: &InitialData, spec: &ProblemSpec, modes: &[EigenMode], base: &Path) -> Result<GridFunction> {
    let n = spec.n;
    let g = match data {
        InitialData::Zero {} => GridFunction::zeros(n)?,
        InitialData::Mode { index, scale } => {
            let m = index
                .checked_sub(1)
                .and_then(|i| modes.get(i))
                .ok_or_else(|| CliError::Validation(format!("mode index {index} outside 1..={}", modes.len())))?;
            m.function().scaled(cx(*scale)).sample(n)?
        }
        InitialData::Trig { cos, sin } => {
            let (a, b): (Vec<C64>, Vec<C64>) = (cos.iter().map(|v| cx(*v)).collect(), sin.iter().map(|v| cx(*v)).collect());
            GridFunction::from_fn(n, |x| {
                let mut s = C64::new(0.0, 0.0);
                for (k, c) in a.iter().enumerate() {
                    s += c * (2.0 * PI * k as f64 * x).cos();
                }
                for (k, c) in b.iter().enumerate() {
                    s += c * (2.0 * PI * k as f64 * x).sin();
                }
                s
            })?
        }
        InitialData::Poly { coeffs } => {
            let c: Vec<C64> = coeffs.iter().map(|v| cx(*v)).collect();
            GridFunction::from_fn(n, |x| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &ci| acc * x + ci))?
        }
        InitialData::Csv { path } => {
            let full = if path.is_absolute() { path.clone() } else { base.join(path) };
            read_samples(&full, n)?
        }
    };
    Ok(g)
}

fn read_samples(path: &Path, n: usize) -> Result<GridFunction> {
    let bad = |msg: String| CliError::Validation(format!("{}: {msg}", path.display()));
    let mut rdr = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let re_col = col("re").ok_or_else(|| bad("missing column `re`".into()))?;
    let im_col = col("im");
    let mut values = Vec::with_capacity(n + 1);
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .unwrap_or("")
                .trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("row {}: {e}", row + 2)))
        };
        let im = match im_col {
            Some(i) => num(i)?,
            None => 0.0,
        };
        values.push(C64::new(num(re_col)?, im));
    }
    if values.len() != n + 1 {
        return Err(bad(format!("expected {} samples for n = {n}, found {}", n + 1, values.len())));
    }
    Ok(GridFunction::new(values)?)
}

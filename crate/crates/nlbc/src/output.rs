//! CSV writers. Floats carry 17 significant digits so files round-trip.

use std::path::Path;

use nlbc_core::evolution::SolutionTrace;
use nlbc_core::spectral::{EigenMode, WeylRow};

use crate::error::{CliError, Result};

pub fn num(x: f64) -> String {
    // + 0.0 folds -0 into 0
    format!("{:.16e}", x + 0.0)
}

struct Sheet {
    path: std::path::PathBuf,
    w: csv::Writer<std::fs::File>,
}

impl Sheet {
    fn create(path: &Path, header: &[String]) -> Result<Self> {
        let w = csv::Writer::from_path(path).map_err(|e| CliError::output(path, e))?;
        let mut s = Sheet {
            path: path.to_path_buf(),
            w,
        };
        s.row(header)?;
        Ok(s)
    }

    fn row<S: AsRef<[u8]>>(&mut self, fields: &[S]) -> Result<()> {
        self.w.write_record(fields).map_err(|e| CliError::output(&self.path, e))
    }

    fn finish(mut self) -> Result<()> {
        self.w.flush().map_err(|e| CliError::output(&self.path, e))
    }
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn write_spectrum(path: &Path, modes: &[EigenMode]) -> Result<()> {
    let mut s = Sheet::create(
        path,
        &header(&["index", "lambda", "lambda_sq", "c1_re", "c1_im", "c2_re", "c2_im", "residual", "hy_norm", "sigma_min"]),
    )?;
    for m in modes {
        s.row(&[
            m.index.to_string(),
            num(m.lambda),
            num(m.lambda_sq()),
            num(m.c1.re),
            num(m.c1.im),
            num(m.c2.re),
            num(m.c2.im),
            num(m.residual),
            num(m.hy_norm),
            num(m.sigma_min),
        ])?;
    }
    s.finish()
}

pub fn write_weyl(path: &Path, rows: &[WeylRow]) -> Result<()> {
    let mut s = Sheet::create(path, &header(&["k", "lambda", "ratio"]))?;
    for r in rows {
        s.row(&[r.k.to_string(), num(r.lambda), num(r.ratio)])?;
    }
    s.finish()
}

/// One row per time and part: `t, part, x_0 .. x_n` with `part` in
/// `{re, im}`.
pub fn write_trace(path: &Path, trace: &SolutionTrace, n: usize) -> Result<()> {
    let mut h = header(&["t", "part"]);
    h.extend((0..=n).map(|j| format!("x_{j}")));
    let mut s = Sheet::create(path, &h)?;
    for (t, snap) in trace.times.iter().zip(&trace.snapshots) {
        for (part, pick) in [("re", 0usize), ("im", 1)] {
            let mut row = vec![num(*t), part.to_string()];
            row.extend(snap.values().iter().map(|v| num(if pick == 0 { v.re } else { v.im })));
            s.row(&row)?;
        }
    }
    s.finish()
}

/// `t, mu0, mu1, hy_norm, energy, moment_residual`, complex moments split.
pub fn write_moments(path: &Path, trace: &SolutionTrace, residuals: Option<&[f64]>) -> Result<()> {
    let mut s = Sheet::create(
        path,
        &header(&["t", "mu0_re", "mu0_im", "mu1_re", "mu1_im", "hy_norm", "energy", "moment_residual"]),
    )?;
    for (i, t) in trace.times.iter().enumerate() {
        let g = trace.moment_trace[i];
        let energy = trace.energy.as_ref().map(|e| num(e[i])).unwrap_or_default();
        let res = residuals.map(|r| num(r[i])).unwrap_or_default();
        s.row(&[
            num(*t),
            num(g[0].re),
            num(g[0].im),
            num(g[1].re),
            num(g[1].im),
            num(trace.norms[i]),
            energy,
            res,
        ])?;
    }
    s.finish()
}

/// Long format `t, x, re_u, im_u`: `(n + 1)` rows per snapshot.
pub fn write_plot(path: &Path, trace: &SolutionTrace) -> Result<()> {
    let mut s = Sheet::create(path, &header(&["t", "x", "re_u", "im_u"]))?;
    for (t, snap) in trace.times.iter().zip(&trace.snapshots) {
        for (j, v) in snap.values().iter().enumerate() {
            s.row(&[num(*t), num(snap.x(j)), num(v.re), num(v.im)])?;
        }
    }
    s.finish()
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::output(path, e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::output(path, e))
}

#[cfg(test)]
mod tests {
    use super::num;

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(num(-0.0), num(0.0));
        assert_eq!(num(1.5), "1.5000000000000000e0");
        let x = std::f64::consts::PI;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }
}

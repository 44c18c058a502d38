//! Task dispatch: compute, write artifacts, build the JSON report.

use std::path::{Path, PathBuf};

use nlbc_core::constraints::{feasibility, ProblemSpec, SubspaceY};
use nlbc_core::evolution::{cascade_check, heat_solve, hm1_distance, moment_residuals, wave_solve, SolutionTrace};
use nlbc_core::oracle::{compare, evolve_cn, evolve_wave_tr, gen_eigensolve, matexp_evolve, GalerkinSystem};
use nlbc_core::spectral::{check_comparison, compare_spectra, fit_odd_constant, odd_family_root, odd_gap, weyl_table, EigenMode};
use nlbc_core::GridFunction;
use serde_json::{json, Value};

use crate::config::{InitialData, OracleConfig, ProblemConfig, RunConfig, TaskConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};
use crate::{data, output, scan, verify};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out: PathBuf,
    pub threads: usize,
    pub seed: u64,
    /// Directory that relative data paths resolve against.
    pub base: PathBuf,
}

#[derive(Debug)]
pub struct Outcome {
    pub summary: Vec<String>,
    pub report: Value,
    /// Set when `verify` ran to completion but some check failed.
    pub failure: Option<CliError>,
}

pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<Outcome> {
    let spec = cfg.problem.to_spec()?;
    std::fs::create_dir_all(&opts.out).map_err(|e| CliError::output(&opts.out, e))?;
    let mut summary = Vec::new();
    let body = match &cfg.task {
        TaskConfig::Spectrum { k_max } => spectrum(&spec, *k_max, opts, &mut summary)?,
        TaskConfig::Weyl { k_max } => weyl(&spec, *k_max, opts, &mut summary)?,
        TaskConfig::Heat {
            n_modes,
            times,
            initial,
            oracle,
        } => heat(&spec, *n_modes, times, initial, oracle.as_ref(), opts, &mut summary)?,
        TaskConfig::Wave {
            n_modes,
            times,
            initial,
            velocity,
            oracle,
        } => wave(&spec, *n_modes, times, initial, velocity, oracle.as_ref(), opts, &mut summary)?,
        TaskConfig::Verify { k_max } => verify_task(&spec, *k_max, opts, &mut summary)?,
        TaskConfig::Compare { k_max, against, degree } => {
            compare_task(&spec, *k_max, against.as_ref(), *degree, opts, &mut summary)?
        }
    };
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "task": cfg.task.name(),
        "problem": ProblemConfig::from_spec(&spec),
        "seed": opts.seed,
    });
    if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
        r.extend(b);
    }
    let path = opts.out.join("report.json");
    output::write_json(&path, &report)?;
    let failure = match report.get("all_passed") {
        Some(Value::Bool(false)) => Some(CliError::Verification(format!("see {}", path.display()))),
        _ => None,
    };
    Ok(Outcome {
        summary,
        report,
        failure,
    })
}

fn modes_json(modes: &[EigenMode]) -> Value {
    Value::Array(
        modes
            .iter()
            .map(|m| json!({ "index": m.index, "lambda": m.lambda, "residual": m.residual }))
            .collect(),
    )
}

fn spectrum(spec: &ProblemSpec, k_max: usize, opts: &RunOptions, summary: &mut Vec<String>) -> Result<Value> {
    let modes = scan::find_eigenvalues(spec, k_max, opts.threads)?;
    output::write_spectrum(&opts.out.join("spectrum.csv"), &modes)?;
    let worst = modes.iter().map(|m| m.residual).fold(0.0, f64::max);
    summary.push(format!("{} eigenvalues, lambda_1 = {:.12}", modes.len(), modes[0].lambda));
    summary.push(format!("max relative eigen residual {worst:.3e}"));
    Ok(json!({ "count": modes.len(), "max_residual": worst, "modes": modes_json(&modes) }))
}

fn weyl(spec: &ProblemSpec, k_max: usize, opts: &RunOptions, summary: &mut Vec<String>) -> Result<Value> {
    let modes = scan::find_eigenvalues(spec, k_max, opts.threads)?;
    let rows = weyl_table(&modes);
    output::write_spectrum(&opts.out.join("spectrum.csv"), &modes)?;
    output::write_weyl(&opts.out.join("weyl.csv"), &rows)?;
    let last = rows.last().expect("k_max >= 1");
    summary.push(format!("k = {}: lambda^2/(k^2 pi^2) = {:.8}", last.k, last.ratio));
    let mut body = json!({ "k": last.k, "lambda": last.lambda, "ratio": last.ratio });
    if matches!(spec.y, SubspaceY::Zero) {
        let d25 = odd_gap(25, odd_family_root(25, 1e-15)?);
        let d50 = odd_gap(50, odd_family_root(50, 1e-15)?);
        let (c, b) = fit_odd_constant(25, d25, 50, d50);
        summary.push(format!("odd family: d_25 = {d25:.8}, d_50 = {d50:.8}, fitted limit {c:.8}"));
        body["odd_family"] = json!({ "d25": d25, "d50": d50, "fitted_limit": c, "fitted_slope": b });
    }
    Ok(body)
}

fn check_k(k_max: usize) -> Result<()> {
    if k_max == 0 {
        return Err(CliError::Validation("k_max must be >= 1".into()));
    }
    Ok(())
}

fn write_trace_files(out: &Path, trace: &SolutionTrace, n: usize, residuals: Option<&[f64]>) -> Result<()> {
    output::write_trace(&out.join("trace.csv"), trace, n)?;
    output::write_moments(&out.join("moments.csv"), trace, residuals)?;
    output::write_plot(&out.join("plot.csv"), trace)
}

fn perp_residuals(spec: &ProblemSpec, trace: &SolutionTrace) -> Vec<f64> {
    trace
        .moment_trace
        .iter()
        .map(|g| {
            let p = spec.y.proj_perp(*g);
            (p[0].norm_sqr() + p[1].norm_sqr()).sqrt()
        })
        .collect()
}

fn require_feasible(spec: &ProblemSpec, u: &GridFunction, what: &str) -> Result<()> {
    let r = feasibility(u, spec);
    if r > spec.feasibility_tol * (1.0 + u.l2_norm(spec.quadrature)) {
        return Err(CliError::Validation(format!("{what} infeasible: moment residual {r:.3e}")));
    }
    Ok(())
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

#[allow(clippy::too_many_arguments)]
fn heat(
    spec: &ProblemSpec,
    n_modes: usize,
    times: &[f64],
    initial: &InitialData,
    oracle: Option<&OracleConfig>,
    opts: &RunOptions,
    summary: &mut Vec<String>,
) -> Result<Value> {
    check_k(n_modes)?;
    if !spec.k.is_hermitian() {
        return heat_general(spec, times, initial, oracle, opts, summary);
    }
    let modes = scan::find_eigenvalues(spec, n_modes, opts.threads)?;
    let u0 = data::resolve(initial, spec, &modes, &opts.base)?;
    let tr = heat_solve(spec, &modes, &u0, times)?;
    let res = moment_residuals(&tr, spec)?;
    let mut cascade: f64 = 0.0;
    for (i, &t) in times.iter().enumerate() {
        if t > 0.0 {
            cascade = cascade.max(cascade_check(&tr, i, spec)?);
        }
    }
    write_trace_files(&opts.out, &tr, spec.n, Some(&res))?;
    let decreasing = tr.norms.windows(2).all(|w| w[1] < w[0]);
    summary.push(format!("{} snapshots, {} modes, discarded part {:.3e}", times.len(), modes.len(), tr.discarded));
    summary.push(format!("max moment residual {:.3e}, max cascade residual {:.3e}", max(&res), cascade));
    let mut body = json!({
        "path": "modal",
        "n_modes": modes.len(),
        "discarded": tr.discarded,
        "tail_estimate": tr.tail_estimate,
        "max_moment_residual": max(&res),
        "max_cascade_residual": cascade,
        "norms": tr.norms,
        "norm_decreasing": decreasing,
    });
    if let Some(o) = oracle {
        let sys = GalerkinSystem::build(spec, o.degree)?;
        let x0 = sys.project_grid(&u0)?;
        let cn = evolve_cn(spec, &sys, &x0, o.dt, times)?;
        let gap = tr
            .snapshots
            .iter()
            .zip(&cn.trace.snapshots)
            .map(|(a, b)| hm1_distance(a, b, spec))
            .collect::<nlbc_core::Result<Vec<f64>>>()?;
        summary.push(format!("Crank-Nicolson oracle gap {:.3e}", max(&gap)));
        body["oracle"] = json!({ "degree": o.degree, "dt": o.dt, "gap": gap, "moment_residual": max(&perp_residuals(spec, &cn.trace)) });
    }
    Ok(body)
}

/// Non-hermitian `K`: no orthogonal expansion, so the Galerkin matrix
/// exponential carries the flow.
fn heat_general(
    spec: &ProblemSpec,
    times: &[f64],
    initial: &InitialData,
    oracle: Option<&OracleConfig>,
    opts: &RunOptions,
    summary: &mut Vec<String>,
) -> Result<Value> {
    if matches!(initial, InitialData::Mode { .. }) {
        return Err(CliError::Validation("mode initial data need hermitian K".into()));
    }
    let u0 = data::resolve(initial, spec, &[], &opts.base)?;
    require_feasible(spec, &u0, "initial data")?;
    let degree = oracle.map_or(40, |o| o.degree);
    let sys = GalerkinSystem::build(spec, degree)?;
    let x0 = sys.project_grid(&u0)?;
    let tr = matexp_evolve(spec, &sys, &x0, times)?.trace;
    let res = perp_residuals(spec, &tr);
    write_trace_files(&opts.out, &tr, spec.n, Some(&res))?;
    summary.push(format!("non-hermitian K: matrix exponential on a degree-{degree} Galerkin space"));
    Ok(json!({
        "path": "matexp",
        "degree": degree,
        "max_moment_residual": max(&res),
        "norms": tr.norms,
        "norm_decreasing": tr.norms.windows(2).all(|w| w[1] < w[0]),
    }))
}

#[allow(clippy::too_many_arguments)]
fn wave(
    spec: &ProblemSpec,
    n_modes: usize,
    times: &[f64],
    initial: &InitialData,
    velocity: &InitialData,
    oracle: Option<&OracleConfig>,
    opts: &RunOptions,
    summary: &mut Vec<String>,
) -> Result<Value> {
    check_k(n_modes)?;
    let modes = scan::find_eigenvalues(spec, n_modes, opts.threads)?;
    let u0 = data::resolve(initial, spec, &modes, &opts.base)?;
    let u1 = data::resolve(velocity, spec, &modes, &opts.base)?;
    let tr = wave_solve(spec, &modes, &u0, &u1, times)?;
    let res = moment_residuals(&tr, spec)?;
    write_trace_files(&opts.out, &tr, spec.n, Some(&res))?;
    let e = tr.energy.clone().unwrap_or_default();
    let drift = e.iter().map(|v| (v - e[0]).abs() / e[0].max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
    summary.push(format!("{} snapshots, relative energy drift {drift:.3e}", times.len()));
    let mut body = json!({
        "n_modes": modes.len(),
        "discarded": tr.discarded,
        "tail_estimate": tr.tail_estimate,
        "max_moment_residual": max(&res),
        "energy": e,
        "energy_drift": drift,
    });
    if let Some(o) = oracle {
        let sys = GalerkinSystem::build(spec, o.degree)?;
        let x0 = sys.project_grid(&u0)?;
        let v0 = sys.project_grid(&u1)?;
        let nm = evolve_wave_tr(spec, &sys, &x0, &v0, o.dt, times)?;
        let ne = nm.trace.energy.clone().unwrap_or_default();
        let ndrift = ne.iter().map(|v| (v - ne[0]).abs() / ne[0].max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
        summary.push(format!("Newmark oracle energy drift {ndrift:.3e}"));
        body["oracle"] = json!({ "degree": o.degree, "dt": o.dt, "energy_drift": ndrift });
    }
    Ok(body)
}

fn verify_task(spec: &ProblemSpec, k_max: usize, opts: &RunOptions, summary: &mut Vec<String>) -> Result<Value> {
    check_k(k_max)?;
    let modes = scan::find_eigenvalues(spec, k_max.max(50), opts.threads)?;
    let checks = verify::run_suite(spec, &modes[..], opts.seed)?;
    for c in &checks {
        summary.push(format!(
            "{:<26} {} ({:.3e} vs {:.1e})",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.value,
            c.tolerance
        ));
    }
    let all = checks.iter().all(|c| c.passed);
    Ok(json!({ "checks": checks, "all_passed": all }))
}

fn compare_task(
    spec: &ProblemSpec,
    k_max: usize,
    against: Option<&ProblemConfig>,
    degree: usize,
    opts: &RunOptions,
    summary: &mut Vec<String>,
) -> Result<Value> {
    check_k(k_max)?;
    let mut body = json!({});
    if let Some(other) = against {
        let spec2 = other.to_spec()?;
        check_comparison(spec, &spec2).map_err(|e| {
            CliError::Validation(format!("{e}; the ordering needs Y2 ⊆ Y1 and K2 - K1 positive semidefinite"))
        })?;
        let a = scan::find_eigenvalues(spec, k_max, opts.threads)?;
        let b = scan::find_eigenvalues(&spec2, k_max, opts.threads)?;
        let m = compare_spectra(&a, &b, 1e-8);
        summary.push(format!("ordering over {} eigenvalues: {}", m.compared, if m.holds { "holds" } else { "violated" }));
        body["monotonicity"] = json!({ "holds": m.holds, "max_excess": m.max_excess, "compared": m.compared });
    }
    let modes = scan::find_eigenvalues(spec, k_max, opts.threads)?;
    let ritz = gen_eigensolve(&GalerkinSystem::build(spec, degree)?)?;
    let rows = compare("problem", &modes, &ritz);
    let worst = rows.iter().take(5).map(|r| r.rel_err).fold(0.0, f64::max);
    summary.push(format!("oracle (degree {degree}): worst relative gap over first 5 = {worst:.3e}"));
    body["comparison"] = Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "case": r.case,
                    "k": r.k,
                    "lambda_spectral": r.lambda_spectral,
                    "lambda_galerkin": r.lambda_galerkin,
                    "rel_err": r.rel_err,
                })
            })
            .collect(),
    );
    Ok(body)
}

//! Property suite run by the `verify` task on the configured problem.

use std::f64::consts::{PI, SQRT_2};

use nlbc_core::bouziani::{hm1_norm, mu0, mu1, primitive_p};
use nlbc_core::constraints::ProblemSpec;
use nlbc_core::evolution::{
    cascade_check, heat_solve, hm1_distance, moment_residuals, wave_energy, ModalCoefficients,
};
use nlbc_core::legendre::LegendreSeries;
use nlbc_core::oracle::{build_basis, compare, evolve_cn, gen_eigensolve, GalerkinSystem};
use nlbc_core::spectral::{char_matrices, constraint_residuals, eigen_residual, EigenMode};
use nlbc_core::{GridFunction, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }

    fn flag(name: &'static str, ok: bool) -> Self {
        Check {
            name,
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_feasible(rng: &mut ChaCha8Rng, spec: &ProblemSpec) -> Result<LegendreSeries> {
    let basis = build_basis(spec, 10)?;
    let w: Vec<C64> = (0..basis.len()).map(|j| random_c(rng) / (1.0 + j as f64).powi(2)).collect();
    Ok(basis.combine(&w))
}

/// `modes` must hold at least 50 modes for the evolution checks.
pub fn run_suite(spec: &ProblemSpec, modes: &[EigenMode], seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut eig: f64 = 0.0;
    let mut cons: f64 = 0.0;
    for m in modes {
        let phi = m.function();
        eig = eig.max(eigen_residual(spec, &phi));
        let (a, b) = constraint_residuals(spec, &phi);
        cons = cons.max(a).max(b);
    }
    out.push(Check::at_most("eigen_identity", eig, 1e-6));
    out.push(Check::at_most("constraint_residuals", cons, 1e-8));

    let mut ortho: f64 = 0.0;
    let first: Vec<_> = modes.iter().take(10).map(|m| m.function()).collect();
    for (i, a) in first.iter().enumerate() {
        for b in &first[i + 1..] {
            ortho = ortho.max(a.hm1_inner(b).norm());
        }
    }
    out.push(Check::at_most("orthogonality", ortho, 1e-6));

    let ritz = gen_eigensolve(&GalerkinSystem::build(spec, 40)?)?;
    let worst = compare("verify", &modes[..modes.len().min(5)], &ritz)
        .iter()
        .map(|c| c.rel_err)
        .fold(0.0, f64::max);
    out.push(Check::at_most("oracle_agreement", worst, 1e-4));

    let mut det: f64 = 0.0;
    for i in 1..=1000 {
        let l = 0.1 * i as f64;
        let m = char_matrices(l)?;
        det = det
            .max((m.det_b() - (l * l.sin() + 2.0 * l.cos() - 2.0)).abs())
            .max((m.det_c() - (2.0 * l * (1.0 - l.cos()) - l.sin())).abs());
    }
    out.push(Check::at_most("determinant_identities", det, 1e-12));

    // heat on random feasible data
    let evo = &modes[..modes.len().min(50)];
    let times = [0.0, 0.001, 0.01, 0.05, 0.1];
    let (mut mom, mut casc, mut cn_gap): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut decreasing = true;
    let sys = GalerkinSystem::build(spec, 40)?;
    for _ in 0..3 {
        let f = random_feasible(&mut rng, spec)?;
        let u0 = f.sample(spec.n)?;
        let tr = heat_solve(spec, evo, &u0, &times)?;
        mom = moment_residuals(&tr, spec)?.into_iter().fold(mom, f64::max);
        for i in 1..times.len() {
            casc = casc.max(cascade_check(&tr, i, spec)?);
        }
        decreasing &= tr.norms.windows(2).all(|w| w[1] < w[0]);
        let cn = evolve_cn(spec, &sys, &sys.project_series(&f)?, 1e-4, &times[1..])?;
        for (i, s) in cn.trace.snapshots.iter().enumerate() {
            cn_gap = cn_gap.max(hm1_distance(s, &tr.snapshots[i + 1], spec)?);
        }
    }
    out.push(Check::at_most("heat_moment_residual", mom, 1e-8));
    out.push(Check::at_most("heat_cascade", casc, 1e-8));
    out.push(Check::at_most("heat_vs_crank_nicolson", cn_gap, 1e-3));
    if spec.k.is_psd() {
        out.push(Check::flag("heat_norm_decreasing", decreasing));
    }

    // wave energy and reversal in modal form
    let a: Vec<C64> = (0..evo.len()).map(|k| random_c(&mut rng) / (1.0 + k as f64)).collect();
    let b: Vec<C64> = (0..evo.len()).map(|k| random_c(&mut rng) / (1.0 + k as f64)).collect();
    let c = ModalCoefficients::from_parts(evo.to_vec(), a, b)?;
    let e0 = wave_energy(&c);
    let drift = (0..=20)
        .map(|i| (wave_energy(&c.wave_state_at(0.05 * i as f64)) - e0).abs() / e0)
        .fold(0.0, f64::max);
    out.push(Check::at_most("wave_energy_drift", drift, 1e-10));
    let back = c.wave_state_at(1.0).wave_state_at(-1.0);
    let rev = back
        .a
        .iter()
        .zip(&c.a)
        .chain(back.b.iter().zip(&c.b))
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    out.push(Check::at_most("wave_reversal", rev, 1e-9));

    // function-space lemmas on random trig polynomials
    let q = spec.quadrature;
    let (mut mean, mut end, mut bound, mut weak): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..20 {
        let coeffs: Vec<(C64, C64)> = (0..=6).map(|_| (random_c(&mut rng), random_c(&mut rng))).collect();
        let g = GridFunction::from_fn(2048, |x| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, (a, b))| a * (2.0 * PI * k as f64 * x).cos() + b * (2.0 * PI * k as f64 * x).sin())
                .sum()
        })?;
        let p = primitive_p(&g, q);
        let l2 = g.l2_norm(q);
        mean = mean.max(mu0(&p, q).norm() / l2);
        end = end.max((p.first() + mu1(&g, q)).norm() / l2);
        bound = bound.max(p.l2_norm(q) / (SQRT_2 * l2));
        weak = weak.max(mu1(&g, q).norm_sqr() / (16.0 * l2 * hm1_norm(&g, q)));
    }
    out.push(Check::at_most("primitive_mean", mean, 1e-10));
    out.push(Check::at_most("primitive_endpoint", end, 1e-8));
    out.push(Check::at_most("primitive_bound_ratio", bound, 1.0));
    out.push(Check::at_most("weak_continuity_ratio", weak, 1.0));
    Ok(out)
}

//! Acceptance runner: prints PASS/FAIL per criterion and exits non-zero on
//! any failure. Run with `cargo test --test acceptance`.

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use nlbc_core::bouziani::{hm1_norm, ibp_identity_residual, mu0, mu1, primitive_p};
use nlbc_core::constraints::{KMatrix, ProblemSpec, SubspaceY};
use nlbc_core::evolution::{
    cascade_check, heat_solve, hm1_distance, moment_residuals, wave_energy, ModalCoefficients,
};
use nlbc_core::legendre::LegendreSeries;
use nlbc_core::oracle::{build_basis, compare, evolve_cn, evolve_wave_tr, gen_eigensolve, GalerkinSystem};
use nlbc_core::spectral::{
    constraint_residuals, eigen_residual, find_eigenvalues, fit_odd_constant, monotonicity_check,
    odd_family_root, odd_gap, weyl_report,
};
use nlbc_core::{GridFunction, Quadrature, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn cases() -> Vec<(String, ProblemSpec)> {
    let ys = [
        ("zero", SubspaceY::Zero),
        ("full", SubspaceY::Full),
        ("line(1,0)", SubspaceY::first_axis()),
        ("line(0,1)", SubspaceY::second_axis()),
    ];
    let mut out = Vec::new();
    for (yn, y) in ys {
        for (kn, k) in [("K=0", KMatrix::zero()), ("K=I", KMatrix::identity())] {
            out.push((format!("{yn} {kn}"), ProblemSpec::new(y, k)));
        }
    }
    out
}

fn rc(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn feasible(rng: &mut ChaCha8Rng, spec: &ProblemSpec) -> Res<LegendreSeries> {
    let basis = build_basis(spec, 10)?;
    let w: Vec<C64> = (0..basis.len()).map(|j| rc(rng) / (1.0 + j as f64).powi(2)).collect();
    Ok(basis.combine(&w))
}

fn trig(rng: &mut ChaCha8Rng, deg: usize, n: usize) -> Res<GridFunction> {
    let c: Vec<(C64, C64)> = (0..=deg).map(|_| (rc(rng), rc(rng))).collect();
    Ok(GridFunction::from_fn(n, |x| {
        c.iter()
            .enumerate()
            .map(|(k, (a, b))| {
                let w = 2.0 * PI * k as f64 * x;
                a * w.cos() + b * w.sin()
            })
            .sum()
    })?)
}

fn poly(rng: &mut ChaCha8Rng, deg: usize, n: usize) -> Res<GridFunction> {
    let c: Vec<C64> = (0..=deg).map(|_| rc(rng)).collect();
    Ok(GridFunction::from_fn(n, |x| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * x + a))?)
}

fn even_spectrum() -> Res<Verdict> {
    let t = Instant::now();
    let spec = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let modes = find_eigenvalues(&spec, 20)?;
    let secs = t.elapsed().as_secs_f64();
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let target = 2.0 * PI * k as f64;
        let d = modes.iter().map(|m| (m.lambda - target).abs()).fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Ok(verdict(
        worst <= 1e-9 && secs < 1.0,
        format!("max distance to 2kπ {worst:.2e}, runtime {secs:.3} s"),
    ))
}

fn odd_asymptotics() -> Res<Verdict> {
    let d25 = odd_gap(25, odd_family_root(25, 1e-15)?);
    let d50 = odd_gap(50, odd_family_root(50, 1e-15)?);
    let rel = (d25 - d50).abs() / d50;
    let (c, _) = fit_odd_constant(25, d25, 50, d50);
    Ok(verdict(
        rel <= 0.05,
        format!(
            "d25 = {d25:.8}, d50 = {d50:.8}, rel {rel:.2e}; fitted limit {c:.8} (vs 1/4: off by {:.4}, vs 4: off by {:.2e})",
            (c - 0.25).abs(),
            (c - 4.0).abs()
        ),
    ))
}

fn weyl() -> Res<Verdict> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, spec) in cases() {
        let t = Instant::now();
        let rows = weyl_report(&spec, 200)?;
        let secs = t.elapsed().as_secs_f64();
        let last = rows.last().ok_or("empty spectrum")?;
        let dev = (last.ratio - 1.0).abs();
        ok &= last.k == 200 && dev <= 0.05 && secs < 30.0;
        parts.push(format!("{name}: {:.6} ({secs:.2} s)", last.ratio));
    }
    Ok(verdict(ok, parts.join("; ")))
}

fn monotonicity() -> Res<Verdict> {
    let full0 = ProblemSpec::new(SubspaceY::Full, KMatrix::zero());
    let line0 = ProblemSpec::new(SubspaceY::first_axis(), KMatrix::zero());
    let zero0 = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let full_i = ProblemSpec::new(SubspaceY::Full, KMatrix::identity());
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, a, b) in [
        ("full<=line", &full0, &line0),
        ("line<=zero", &line0, &zero0),
        ("K=0<=K=I", &full0, &full_i),
    ] {
        let m = monotonicity_check(a, b, 20, 1e-8)?;
        ok &= m.holds && m.compared == 20;
        parts.push(format!("{label}: max excess {:.2e}", m.max_excess));
    }
    Ok(verdict(ok, parts.join("; ")))
}

fn oracle_agreement() -> Res<Verdict> {
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    for (name, spec) in cases() {
        let modes = find_eigenvalues(&spec, 5)?;
        let ritz = gen_eigensolve(&GalerkinSystem::build(&spec, 40)?)?;
        for c in compare(&name, &modes, &ritz) {
            if c.rel_err >= worst {
                worst = c.rel_err;
                at = format!("{} k={}", c.case, c.k);
            }
        }
    }
    Ok(verdict(worst <= 1e-4, format!("max relative error {worst:.2e} at {at}")))
}

fn residuals() -> Res<Verdict> {
    let (mut eig, mut cons): (f64, f64) = (0.0, 0.0);
    let mut count = 0;
    for (_, spec) in cases() {
        for m in find_eigenvalues(&spec, 60)? {
            let phi = m.function();
            eig = eig.max(eigen_residual(&spec, &phi) / m.lambda_sq());
            let (a, b) = constraint_residuals(&spec, &phi);
            cons = cons.max(a).max(b);
            count += 1;
        }
    }
    Ok(verdict(
        eig <= 1e-6 && cons <= 1e-8,
        format!("{count} modes: max residual/λ² {eig:.2e}, max constraint residual {cons:.2e}"),
    ))
}

/// Criteria 7 and 10 share the heat runs.
fn heat(rng: &mut ChaCha8Rng) -> Res<(Verdict, Verdict)> {
    let times = [0.01, 0.1];
    let (mut gap, mut mom_modal, mut mom_cn, mut casc): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut decay = true;
    for (_, spec) in cases() {
        let modes = find_eigenvalues(&spec, 50)?;
        let sys = GalerkinSystem::build(&spec, 40)?;
        for _ in 0..5 {
            let f = feasible(rng, &spec)?;
            let u0 = f.sample(spec.n)?;
            let modal = heat_solve(&spec, &modes, &u0, &[0.0, 0.01, 0.05, 0.1])?;
            let cn = evolve_cn(&spec, &sys, &sys.project_series(&f)?, 1e-4, &times)?;
            for (i, s) in cn.trace.snapshots.iter().enumerate() {
                let j = if i == 0 { 1 } else { 3 };
                gap = gap.max(hm1_distance(s, &modal.snapshots[j], &spec)?);
            }
            mom_modal = moment_residuals(&modal, &spec)?.into_iter().fold(mom_modal, f64::max);
            for g in &cn.trace.moment_trace {
                let p = spec.y.proj_perp(*g);
                mom_cn = mom_cn.max((p[0].norm_sqr() + p[1].norm_sqr()).sqrt());
            }
            if spec.k.is_psd() {
                decay &= modal.norms.windows(2).all(|w| w[1] < w[0]);
                decay &= cn.trace.norms.windows(2).all(|w| w[1] < w[0]);
            }
            for i in 1..modal.times.len() {
                casc = casc.max(cascade_check(&modal, i, &spec)?);
            }
        }
    }
    let seven = verdict(
        gap <= 1e-3 && mom_modal <= 1e-8 && mom_cn <= 1e-8 && decay,
        format!(
            "40 runs: max H⁻¹ gap {gap:.2e}, moments modal {mom_modal:.2e} / CN {mom_cn:.2e}, monotone decay {decay}"
        ),
    );
    let ten = verdict(casc <= 1e-8, format!("max boundary defect at t > 0: {casc:.2e}"));
    Ok((seven, ten))
}

fn wave(rng: &mut ChaCha8Rng) -> Res<Verdict> {
    let (mut drift, mut rev, mut nm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (_, spec) in cases() {
        let modes = find_eigenvalues(&spec, 50)?;
        let a: Vec<C64> = (0..modes.len()).map(|k| rc(rng) / (1.0 + k as f64)).collect();
        let b: Vec<C64> = (0..modes.len()).map(|k| rc(rng) / (1.0 + k as f64)).collect();
        let c = ModalCoefficients::from_parts(modes, a, b)?;
        let e0 = wave_energy(&c);
        for i in 0..=100 {
            let e = wave_energy(&c.wave_state_at(0.01 * i as f64));
            drift = drift.max((e - e0).abs() / e0);
        }
        let back = c.wave_state_at(1.0).wave_state_at(-1.0);
        for (x, y) in back.a.iter().zip(&c.a).chain(back.b.iter().zip(&c.b)) {
            rev = rev.max((x - y).norm());
        }

        let sys = GalerkinSystem::build(&spec, 40)?;
        let x0 = sys.project_series(&feasible(rng, &spec)?)?;
        let v0 = sys.project_series(&feasible(rng, &spec)?)?;
        let times: Vec<f64> = (0..=20).map(|i| 0.05 * i as f64).collect();
        let tr = evolve_wave_tr(&spec, &sys, &x0, &v0, 1e-4, &times)?;
        let e = tr.trace.energy.as_ref().ok_or("no energy")?;
        for v in e {
            nm = nm.max((v - e[0]).abs() / e[0]);
        }
    }
    Ok(verdict(
        drift <= 1e-10 && rev <= 1e-9 && nm <= 1e-3,
        format!("modal energy drift {drift:.2e}, reversal {rev:.2e}, Newmark drift {nm:.2e}"),
    ))
}

fn witness(terms: usize) -> Res<GridFunction> {
    Ok(GridFunction::from_real_fn(16384, |x| {
        2.0 * PI * (1..=terms).map(|k| (2.0 * PI * k as f64 * x).sin()).sum::<f64>()
    })?)
}

fn lemmas(rng: &mut ChaCha8Rng) -> Res<Verdict> {
    let q = Quadrature::Simpson;
    let (mut mean, mut end, mut bound, mut weak): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let deg = rng.gen_range(1..=8);
        let g = trig(rng, deg, 2048)?;
        let p = primitive_p(&g, q);
        let l2 = g.l2_norm(q);
        mean = mean.max(mu0(&p, q).norm() / l2);
        end = end.max((p.first() + mu1(&g, q)).norm() / l2);
        bound = bound.max(p.l2_norm(q) / (SQRT_2 * l2));
        weak = weak.max(mu1(&g, q).norm_sqr() / (16.0 * l2 * hm1_norm(&g, q)));
    }

    let mut ratios = Vec::new();
    for n in [4usize, 16, 64, 256] {
        let u = witness(n)?;
        ratios.push(mu1(&u, q).norm() / hm1_norm(&u, q));
    }
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);

    let mut ibp: f64 = 0.0;
    for i in 0..100 {
        let u = if i % 2 == 0 { trig(rng, 4, 512)? } else { poly(rng, 6, 512)? };
        let h = if i % 3 == 0 { poly(rng, 4, 512)? } else { trig(rng, 4, 512)? };
        let c = rc(rng) * 3.0;
        ibp = ibp.max(ibp_identity_residual(&u, c, &h, q)?);
    }

    Ok(verdict(
        mean <= 1e-10 && end <= 1e-8 && bound <= 1.0 && weak <= 1.0 && increasing && ibp <= 1e-6,
        format!(
            "mean {mean:.1e}, endpoint {end:.1e}, ‖Pf‖/(√2‖f‖) {bound:.3}, weak ratio {weak:.3}, witness {:?}, ibp {ibp:.1e}",
            ratios.iter().map(|r| (r * 1e3).round() / 1e3).collect::<Vec<_>>()
        ),
    ))
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; listing must not run the suite
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut results: Vec<(usize, &str, Res<Verdict>)> = Vec::new();
    results.push((1, "even spectrum", even_spectrum()));
    results.push((2, "odd-family gaps", odd_asymptotics()));
    results.push((3, "Weyl limit", weyl()));
    results.push((4, "monotonicity", monotonicity()));
    results.push((5, "oracle agreement", oracle_agreement()));
    results.push((6, "eigen residuals", residuals()));
    let (seven, ten) = match heat(&mut rng) {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.to_string().into()), Err(e)),
    };
    results.push((7, "heat vs Crank-Nicolson", seven));
    results.push((8, "wave properties", wave(&mut rng)));
    results.push((9, "function-space lemmas", lemmas(&mut rng)));
    results.push((10, "regularity cascade", ten));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, r) in &results {
        let (tag, detail) = match r {
            Ok(v) if v.passed => ("PASS", v.detail.clone()),
            Ok(v) => ("FAIL", v.detail.clone()),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {n:>2} {tag}  {name}: {detail}");
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

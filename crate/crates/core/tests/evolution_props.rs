mod common;

use std::f64::consts::PI;

use nlbc_core::constraints::{KMatrix, ProblemSpec, SubspaceY};
use nlbc_core::evolution::{
    cascade_check, heat_from_coefficients, heat_solve, hm1_distance, moment_residuals, project, wave_energy,
    wave_from_coefficients, wave_solve, ModalCoefficients,
};
use nlbc_core::oracle::{evolve_cn, evolve_wave_tr, matexp_evolve, GalerkinSystem};
use nlbc_core::spectral::find_eigenvalues;
use nlbc_core::{GridFunction, C64};

use common::{cx, eight_cases, feasible_series, rng};

const ZERO: C64 = C64::new(0.0, 0.0);

fn random_coeffs(seed: u64, modes: usize) -> Vec<C64> {
    let mut r = rng(seed);
    (0..modes).map(|k| cx(&mut r) / (1.0 + k as f64)).collect()
}

#[test]
fn heat_semigroup_property() {
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 30).unwrap();
        for seed in 0..10 {
            let a = random_coeffs(seed, 30);
            let c = ModalCoefficients::from_parts(modes.clone(), a, vec![ZERO; 30]).unwrap();
            let (t1, t2) = (0.003, 0.011);
            let direct = heat_from_coefficients(&spec, &c, &[t1 + t2]).unwrap();
            let mid = heat_from_coefficients(&spec, &c, &[t1]).unwrap();
            // restart from the sampled snapshot (projected again)
            let restarted = heat_solve(&spec, &modes, &mid.snapshots[0], &[t2]).unwrap();
            let d = hm1_distance(&direct.snapshots[0], &restarted.snapshots[0], &spec).unwrap();
            assert!(d <= 1e-8, "{name} seed {seed}: {d:e}");
        }
    }
}

#[test]
fn heat_moments_and_decay() {
    let times = [0.0, 0.001, 0.01, 0.05, 0.1];
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 30).unwrap();
        let l1 = modes[0].lambda_sq();
        for seed in 0..5 {
            let c = ModalCoefficients::from_parts(modes.clone(), random_coeffs(100 + seed, 30), vec![ZERO; 30]).unwrap();
            let tr = heat_from_coefficients(&spec, &c, &times).unwrap();
            for r in moment_residuals(&tr, &spec).unwrap() {
                assert!(r <= 1e-8, "{name}: {r:e}");
            }
            for (w, t) in tr.norms.windows(2).zip(&times[1..]) {
                assert!(w[1] < w[0], "{name}");
                assert!(w[1] <= (-l1 * t).exp() * tr.norms[0] * (1.0 + 1e-6));
            }
        }
    }
}

#[test]
fn zero_data_stays_zero() {
    let spec = ProblemSpec::new(SubspaceY::Full, KMatrix::identity());
    let modes = find_eigenvalues(&spec, 10).unwrap();
    let z = GridFunction::zeros(spec.n).unwrap();
    let tr = heat_solve(&spec, &modes, &z, &[0.0, 0.1]).unwrap();
    assert!(tr.snapshots.iter().all(|s| s.is_zero()));
    let tr = wave_solve(&spec, &modes, &z, &z, &[0.0, 0.5]).unwrap();
    assert!(tr.snapshots.iter().all(|s| s.is_zero()));
}

#[test]
fn projection_recovers_mode_combinations() {
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 8).unwrap();
        let u = GridFunction::from_fn(spec.n, |x| modes[0].function().value(x) * 2.0 + modes[1].function().value(x) * 3.0).unwrap();
        let c = project(&spec, &modes, &u).unwrap();
        assert!((c.a[0] - 2.0).norm() <= 1e-8 && (c.a[1] - 3.0).norm() <= 1e-8, "{name}");
        assert!(c.a[2..].iter().all(|a| a.norm() <= 1e-8), "{name}");
        assert!(c.discarded <= 1e-8);
    }
}

#[test]
fn wave_energy_and_reversal() {
    let times: Vec<f64> = (0..=20).map(|i| 0.05 * i as f64).collect();
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 20).unwrap();
        let c = ModalCoefficients::from_parts(modes.clone(), random_coeffs(7, 20), random_coeffs(8, 20)).unwrap();
        let tr = wave_from_coefficients(&spec, &c, &times).unwrap();
        let e = tr.energy.as_ref().unwrap();
        for v in e {
            assert!((v - e[0]).abs() <= 1e-10 * e[0], "{name}");
        }
        for r in moment_residuals(&tr, &spec).unwrap() {
            assert!(r <= 1e-7);
        }
        // forward to T, then back
        let back = c.wave_state_at(1.0).wave_state_at(-1.0);
        let err = back.a.iter().zip(&c.a).chain(back.b.iter().zip(&c.b)).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-9, "{name}: {err:e}");
        let u0 = c.sample(spec.n).unwrap();
        let ub = back.sample(spec.n).unwrap();
        assert!(hm1_distance(&u0, &ub, &spec).unwrap() <= 1e-9);
        assert!((wave_energy(&back) - wave_energy(&c)).abs() <= 1e-10 * wave_energy(&c));
    }
}

#[test]
fn single_mode_wave_is_periodic() {
    let spec = ProblemSpec::new(SubspaceY::first_axis(), KMatrix::identity());
    let modes = find_eigenvalues(&spec, 5).unwrap();
    let phi = modes[0].function().sample(spec.n).unwrap();
    let z = GridFunction::zeros(spec.n).unwrap();
    let period = 2.0 * PI / modes[0].lambda;
    let tr = wave_solve(&spec, &modes, &phi, &z, &[0.0, period]).unwrap();
    assert!(hm1_distance(&tr.snapshots[1], &phi, &spec).unwrap() <= 1e-8);
    // velocity data: u = sin(λt)/λ φ
    let tr = wave_solve(&spec, &modes, &z, &phi, &[0.25 * period]).unwrap();
    let expect = phi.scale(C64::new(1.0 / modes[0].lambda, 0.0));
    assert!(hm1_distance(&tr.snapshots[0], &expect, &spec).unwrap() <= 1e-8);
}

#[test]
fn cascade_holds_for_heat_solutions() {
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 30).unwrap();
        let c = ModalCoefficients::from_parts(modes, random_coeffs(11, 30), vec![ZERO; 30]).unwrap();
        let tr = heat_from_coefficients(&spec, &c, &[0.0, 0.01, 0.05]).unwrap();
        assert!(cascade_check(&tr, 0, &spec).is_err());
        for i in 1..3 {
            let r = cascade_check(&tr, i, &spec).unwrap();
            assert!(r <= 1e-8, "{name}: {r:e}");
        }
    }
}

#[test]
fn cascade_detects_forged_snapshot() {
    let spec = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let modes = find_eigenvalues(&spec, 5).unwrap();
    let c = ModalCoefficients::from_parts(modes.clone(), vec![C64::new(1.0, 0.0); 5], vec![ZERO; 5]).unwrap();
    let mut tr = heat_from_coefficients(&spec, &c, &[0.0, 0.05]).unwrap();
    // replace the stored coefficients by a sine-only combination outside the domain
    let forged = nlbc_core::TrigFunction::sin(modes[0].lambda).unwrap();
    let mut h = tr.modal.take().unwrap();
    h.modes[0].c1 = forged.c1;
    h.modes[0].c2 = forged.c2;
    tr.modal = Some(h);
    assert!(cascade_check(&tr, 1, &spec).unwrap() > 0.1);
}

#[test]
fn modal_heat_matches_crank_nicolson() {
    let mut r = rng(21);
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 50).unwrap();
        let sys = GalerkinSystem::build(&spec, 40).unwrap();
        for _ in 0..5 {
            let f = feasible_series(&mut r, &spec, 10);
            let u0 = f.sample(spec.n).unwrap();
            let times = [0.01, 0.1];
            let modal = heat_solve(&spec, &modes, &u0, &times).unwrap();
            let x0 = sys.project_series(&f).unwrap();
            let cn = evolve_cn(&spec, &sys, &x0, 1e-4, &times).unwrap();
            for i in 0..2 {
                let d = hm1_distance(&modal.snapshots[i], &cn.trace.snapshots[i], &spec).unwrap();
                assert!(d <= 1e-3, "{name} t={}: {d:e}", times[i]);
            }
            for w in cn.trace.norms.windows(2) {
                assert!(w[1] < w[0]);
            }
            assert!(cn.trace.moment_trace.iter().all(|g| {
                let p = spec.y.proj_perp(*g);
                (p[0].norm_sqr() + p[1].norm_sqr()).sqrt() <= 1e-8
            }));
        }
    }
}

#[test]
fn newmark_energy_drift_and_period() {
    let spec = ProblemSpec::new(SubspaceY::Full, KMatrix::identity());
    let sys = GalerkinSystem::build(&spec, 40).unwrap();
    let modes = find_eigenvalues(&spec, 3).unwrap();
    let lam = modes[0].lambda;
    let (vals, vecs) = nlbc_core::oracle::eigen_pairs(&sys).unwrap();
    assert!((vals[0] - lam * lam).abs() <= 1e-8 * lam * lam);
    let x0: Vec<C64> = (0..sys.dim()).map(|i| vecs[(i, 0)]).collect();
    let v0 = vec![ZERO; sys.dim()];
    let times: Vec<f64> = (1..=10).map(|i| 0.1 * i as f64).collect();
    let tr = evolve_wave_tr(&spec, &sys, &x0, &v0, 1e-4, &times).unwrap();
    let e = tr.trace.energy.as_ref().unwrap();
    let e0 = vals[0];
    assert!(e.iter().all(|v| (v - e0).abs() <= 1e-3 * e0));
    // one period returns the data
    let period = 2.0 * PI / lam;
    let tr = evolve_wave_tr(&spec, &sys, &x0, &v0, 1e-4, &[period]).unwrap();
    let d: Vec<C64> = tr.states[0].iter().zip(&x0).map(|(a, b)| a - b).collect();
    assert!(sys.norm(&d) <= 1e-3);
}

#[test]
fn matexp_agrees_with_cn_and_contracts() {
    let mut r = rng(31);
    let spec = ProblemSpec::new(SubspaceY::Full, KMatrix::real([[2.0, 0.5], [0.5, 1.0]]));
    let sys = GalerkinSystem::build(&spec, 24).unwrap();
    let x0 = sys.project_series(&feasible_series(&mut r, &spec, 8)).unwrap();
    let times = [0.0, 0.01, 0.05];
    let a = matexp_evolve(&spec, &sys, &x0, &times).unwrap();
    let b = evolve_cn(&spec, &sys, &x0, 1e-5, &times).unwrap();
    assert_eq!(a.states[0], x0);
    for i in 0..3 {
        let d: Vec<C64> = a.states[i].iter().zip(&b.states[i]).map(|(x, y)| x - y).collect();
        assert!(sys.norm(&d) <= 1e-6, "t={}", times[i]);
    }
    // non-hermitian K with eigenvalues 1 ± i
    let spec = ProblemSpec::new(SubspaceY::Full, KMatrix::real([[1.0, 1.0], [-1.0, 1.0]]));
    let sys = GalerkinSystem::build(&spec, 24).unwrap();
    let x0 = sys.project_series(&feasible_series(&mut r, &spec, 6)).unwrap();
    let tr = matexp_evolve(&spec, &sys, &x0, &[0.0, 0.1, 0.2, 0.5]).unwrap();
    for w in tr.trace.norms.windows(2) {
        assert!(w[1] < w[0]);
    }
}

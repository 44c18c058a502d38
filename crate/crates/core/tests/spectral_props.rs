mod common;

use std::f64::consts::PI;

use nlbc_core::bouziani::{embed_trig, hm1_inner};
use nlbc_core::constraints::{domain_residual, KMatrix, ProblemSpec, SubspaceY};
use nlbc_core::spectral::{
    char_matrices, constraint_residuals, eigen_residual, find_eigenvalues, fit_odd_constant, monotonicity_check,
    odd_family_root, odd_gap, weyl_report,
};
use nlbc_core::{Quadrature, C64};
use proptest::prelude::*;

use common::{eight_cases, rng};

#[test]
fn determinant_identities_on_dense_samples() {
    let mut worst: f64 = 0.0;
    for i in 1..=10_000 {
        let l = 100.0 * i as f64 / 10_000.0;
        let m = char_matrices(l).unwrap();
        let db = l * l.sin() + 2.0 * l.cos() - 2.0;
        let dc = 2.0 * l * (1.0 - l.cos()) - l.sin();
        worst = worst.max((m.det_b() - db).abs()).max((m.det_c() - dc).abs());
    }
    assert!(worst <= 1e-12, "{worst:e}");
}

proptest! {
    #[test]
    fn determinant_identities_random(l in 1e-3..100.0f64) {
        let m = char_matrices(l).unwrap();
        prop_assert!((m.det_b() - (l * l.sin() + 2.0 * l.cos() - 2.0)).abs() <= 1e-12);
        prop_assert!((m.det_c() - (2.0 * l * (1.0 - l.cos()) - l.sin())).abs() <= 1e-12);
    }
}

#[test]
fn zero_constraints_contain_even_multiples() {
    let spec = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let modes = find_eigenvalues(&spec, 20).unwrap();
    for k in 1..=10 {
        let m = &modes[2 * k - 2];
        assert!((m.lambda - 2.0 * k as f64 * PI).abs() <= 1e-9, "k={k}: {}", m.lambda);
    }
    // the other family sits in (2kπ, (2k+1)π)
    for k in 1..=10 {
        let l = modes[2 * k - 1].lambda;
        assert!(l > 2.0 * k as f64 * PI && l < (2 * k + 1) as f64 * PI);
        assert!((l - odd_family_root(k, 1e-14).unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn modes_satisfy_eigen_identity_and_constraints() {
    for (name, spec) in eight_cases() {
        for m in find_eigenvalues(&spec, 60).unwrap() {
            let phi = m.function();
            assert!(eigen_residual(&spec, &phi) <= 1e-6, "{name} k={}", m.index);
            let (perp, dom) = constraint_residuals(&spec, &phi);
            assert!(perp <= 1e-8 && dom <= 1e-8, "{name} k={}", m.index);
            assert!(domain_residual(&phi, &spec) <= 1e-8);
            assert!((phi.hm1_norm() - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn first_ten_modes_are_orthonormal() {
    for (name, spec) in eight_cases() {
        let modes = find_eigenvalues(&spec, 10).unwrap();
        for (i, a) in modes.iter().enumerate() {
            let ea = embed_trig(&a.function(), spec.n).unwrap();
            for b in &modes[i + 1..] {
                // closed form and grid form must agree
                let exact = a.function().hm1_inner(&b.function());
                let eb = embed_trig(&b.function(), spec.n).unwrap();
                let grid = hm1_inner(&ea, &eb, Quadrature::Simpson).unwrap();
                assert!(exact.norm() <= 1e-6, "{name} {} {}", a.index, b.index);
                assert!(grid.norm() <= 1e-6, "{name} {} {}", a.index, b.index);
            }
        }
    }
}

#[test]
fn complex_line_modes_are_orthonormal() {
    let i = C64::new(0.0, 1.0);
    let y = SubspaceY::line(C64::new(0.3, 0.2), C64::new(-0.5, 0.9)).unwrap();
    let k = KMatrix([[C64::new(1.0, 0.0), i * 0.7], [-i * 0.7, C64::new(2.0, 0.0)]]);
    let spec = ProblemSpec::new(y, k);
    let modes = find_eigenvalues(&spec, 12).unwrap();
    for (j, a) in modes.iter().enumerate() {
        assert!(eigen_residual(&spec, &a.function()) <= 1e-6);
        for b in &modes[j + 1..] {
            assert!(a.function().hm1_inner(&b.function()).norm() <= 1e-6);
        }
    }
}

#[test]
fn odd_family_scaled_gap_converges() {
    let d25 = odd_gap(25, odd_family_root(25, 1e-15).unwrap());
    let d50 = odd_gap(50, odd_family_root(50, 1e-15).unwrap());
    assert!((d50 - d25).abs() <= 0.05 * d50.abs());
    let (c, _) = fit_odd_constant(25, d25, 50, d50);
    // two-term expansion: the limit is 4
    assert!((c - 4.0).abs() < 1e-3, "{c}");
}

#[test]
fn weyl_ratio_for_all_kinds() {
    for (name, spec) in eight_cases() {
        let rows = weyl_report(&spec, 200).unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last.k, 200);
        assert!((last.ratio - 1.0).abs() <= 0.05, "{name}: {}", last.ratio);
    }
}

#[test]
fn spectra_are_monotone_in_y_and_k() {
    let full0 = ProblemSpec::new(SubspaceY::Full, KMatrix::zero());
    let line0 = ProblemSpec::new(SubspaceY::first_axis(), KMatrix::zero());
    let zero0 = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let full_i = ProblemSpec::new(SubspaceY::Full, KMatrix::identity());
    for (a, b) in [(&full0, &line0), (&line0, &zero0), (&full0, &full_i)] {
        let m = monotonicity_check(a, b, 20, 1e-8).unwrap();
        assert!(m.holds && m.compared == 20, "{m:?}");
    }
}

#[test]
fn monotone_in_k_for_random_psd_increments() {
    let mut r = rng(3);
    for _ in 0..10 {
        use rand::Rng;
        let a: f64 = r.gen_range(0.0..3.0);
        let d: f64 = r.gen_range(0.0..3.0);
        let b: f64 = r.gen_range(-1.0..1.0) * (a * d).sqrt();
        let k1 = KMatrix::real([[0.5, 0.1], [0.1, 0.5]]);
        let k2 = KMatrix::real([[0.5 + a, 0.1 + b], [0.1 + b, 0.5 + d]]);
        let y = SubspaceY::line(C64::new(0.6, 0.0), C64::new(0.8, 0.0)).unwrap();
        let m = monotonicity_check(&ProblemSpec::new(y, k1), &ProblemSpec::new(y, k2), 15, 1e-8).unwrap();
        assert!(m.holds, "{m:?}");
    }
}

#[test]
fn comparison_hypotheses_are_enforced() {
    let zero = ProblemSpec::new(SubspaceY::Zero, KMatrix::zero());
    let full = ProblemSpec::new(SubspaceY::Full, KMatrix::zero());
    // Y₂ ⊄ Y₁
    assert!(monotonicity_check(&zero, &full, 5, 1e-8).is_err());
    let full_i = ProblemSpec::new(SubspaceY::Full, KMatrix::identity());
    // K₂ - K₁ = -I
    assert!(monotonicity_check(&full_i, &full, 5, 1e-8).is_err());
}

mod common;

use std::f64::consts::{PI, SQRT_2};

use nlbc_core::bouziani::{hm1_norm, ibp_identity_residual, mu0, mu1, primitive_p};
use nlbc_core::{GridFunction, Quadrature, C64};
use proptest::prelude::*;

use common::{cx, rng, sample_poly, sample_trig, trig_poly};

const Q: Quadrature = Quadrature::Simpson;

fn smooth_data() -> impl Strategy<Value = GridFunction> {
    (any::<u64>(), 0usize..8, prop::bool::ANY).prop_map(|(seed, deg, poly)| {
        let mut r = rng(seed);
        if poly {
            sample_poly(&mut r, deg, 2048)
        } else {
            let (a, b) = trig_poly(&mut r, deg);
            sample_trig(&a, &b, 2048)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn primitive_has_zero_mean(f in smooth_data()) {
        let p = primitive_p(&f, Q);
        prop_assert!(mu0(&p, Q).norm() <= 1e-10 * f.l2_norm(Q).max(1e-300));
    }

    #[test]
    fn primitive_endpoint_values(f in smooth_data()) {
        let p = primitive_p(&f, Q);
        let scale = f.l2_norm(Q).max(1.0);
        prop_assert!((p.first() + mu1(&f, Q)).norm() <= 1e-8 * scale);
        prop_assert!((p.last() - mu0(&f, Q) + mu1(&f, Q)).norm() <= 1e-8 * scale);
    }

    #[test]
    fn primitive_bound(f in smooth_data()) {
        let p = primitive_p(&f, Q);
        prop_assert!(p.l2_norm(Q) <= SQRT_2 * f.l2_norm(Q) * (1.0 + 1e-12));
    }

    #[test]
    fn primitive_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample_poly(&mut r, 5, 256);
        let g = sample_poly(&mut r, 3, 256);
        let (a, b) = (cx(&mut r), cx(&mut r));
        let lhs = primitive_p(&f.combine(a, &g, b).unwrap(), Q);
        let rhs = primitive_p(&f, Q).combine(a, &primitive_p(&g, Q), b).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }
}

#[test]
fn weak_continuity_on_random_trig_polynomials() {
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = trig_poly(&mut r, 32);
        let g = sample_trig(&a, &b, 2048);
        let lhs = mu1(&g, Q).norm_sqr();
        let rhs = 16.0 * g.l2_norm(Q) * hm1_norm(&g, Q);
        worst = worst.max(lhs / rhs);
        assert!(lhs <= rhs);
    }
    // the bound has slack; the constant 2 already suffices
    assert!(worst <= 1.0 / 8.0);
}

fn witness(n_terms: usize, grid: usize) -> GridFunction {
    GridFunction::from_real_fn(grid, |x| {
        2.0 * PI * (1..=n_terms).map(|k| (2.0 * PI * k as f64 * x).sin()).sum::<f64>()
    })
    .unwrap()
}

#[test]
fn mu1_unboundedness_witness() {
    let mut prev = 0.0;
    for n in [4usize, 16, 64, 256] {
        let u = witness(n, 16384);
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let m1 = mu1(&u, Q);
        assert!((m1.re - harmonic).abs() < 1e-6 * harmonic, "n={n} mu1={m1}");
        // closed form ‖u_n‖² = Σ 1/(2k²)
        let exact_norm = (1..=n).map(|k| 0.5 / (k * k) as f64).sum::<f64>().sqrt();
        let norm = hm1_norm(&u, Q);
        assert!((norm - exact_norm).abs() < 1e-6);
        let ratio = m1.norm() / norm;
        assert!(ratio > prev, "n={n}");
        prev = ratio;
    }
}

#[test]
fn ibp_identity_on_random_triples() {
    let mut r = rng(17);
    for i in 0..100 {
        let u = if i % 2 == 0 {
            let (a, b) = trig_poly(&mut r, 4);
            sample_trig(&a, &b, 512)
        } else {
            sample_poly(&mut r, 6, 512)
        };
        let h = if i % 3 == 0 {
            sample_poly(&mut r, 4, 512)
        } else {
            let (a, b) = trig_poly(&mut r, 4);
            sample_trig(&a, &b, 512)
        };
        let c = cx(&mut r) * 3.0;
        let res = ibp_identity_residual(&u, c, &h, Q).unwrap();
        assert!(res <= 1e-6, "triple {i}: {res:e}");
    }
}

#[test]
fn ibp_closed_form_examples() {
    let u = GridFunction::from_real_fn(512, |x| (2.0 * PI * x).cos()).unwrap();
    let h = GridFunction::from_real_fn(512, |x| (2.0 * PI * x).sin()).unwrap();
    assert!(ibp_identity_residual(&u, C64::new(0.0, 0.0), &h, Q).unwrap() <= 1e-8);
    let u = GridFunction::from_real_fn(512, |x| x * x).unwrap();
    let h = GridFunction::from_real_fn(512, |x| x).unwrap();
    assert!(ibp_identity_residual(&u, C64::new(3.0, 0.0), &h, Q).unwrap() <= 1e-6);
}

#![allow(dead_code)]

use std::f64::consts::PI;

use nlbc_core::constraints::{KMatrix, ProblemSpec, SubspaceY};
use nlbc_core::legendre::LegendreSeries;
use nlbc_core::oracle::build_basis;
use nlbc_core::{GridFunction, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn cx(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `Σ_{k≤deg} a_k cos(2πkx) + b_k sin(2πkx)` with random complex weights.
pub fn trig_poly(rng: &mut ChaCha8Rng, deg: usize) -> (Vec<C64>, Vec<C64>) {
    let a = (0..=deg).map(|_| cx(rng)).collect();
    let b = (0..=deg).map(|_| cx(rng)).collect();
    (a, b)
}

pub fn sample_trig(a: &[C64], b: &[C64], n: usize) -> GridFunction {
    GridFunction::from_fn(n, |x| {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(k, (a, b))| {
                let w = 2.0 * PI * k as f64 * x;
                a * w.cos() + b * w.sin()
            })
            .sum()
    })
    .unwrap()
}

/// Random polynomial of the given degree (monomial weights).
pub fn sample_poly(rng: &mut ChaCha8Rng, deg: usize, n: usize) -> GridFunction {
    let c: Vec<C64> = (0..=deg).map(|_| cx(rng)).collect();
    GridFunction::from_fn(n, |x| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &ci| acc * x + ci)).unwrap()
}

/// A random element of `V_Y`: a feasible Legendre combination of low degree.
pub fn feasible_series(rng: &mut ChaCha8Rng, spec: &ProblemSpec, degree: usize) -> LegendreSeries {
    let basis = build_basis(spec, degree).unwrap();
    let w: Vec<C64> = (0..basis.len())
        .map(|j| cx(rng) / (1.0 + j as f64).powi(2))
        .collect();
    basis.combine(&w)
}

pub fn eight_cases() -> Vec<(String, ProblemSpec)> {
    let ys = [
        ("zero", SubspaceY::Zero),
        ("full", SubspaceY::Full),
        ("line(1,0)", SubspaceY::first_axis()),
        ("line(0,1)", SubspaceY::second_axis()),
    ];
    let mut out = Vec::new();
    for (name, y) in ys {
        for (kn, k) in [("K=0", KMatrix::zero()), ("K=I", KMatrix::identity())] {
            out.push((format!("{name} {kn}"), ProblemSpec::new(y, k)));
        }
    }
    out
}

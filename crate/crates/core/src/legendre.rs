//! Shifted Legendre polynomials `L_j(x) = P_j(2x - 1)` on `[0, 1]`.
//!
//! Series are stored by coefficients. Moments, `L²` products and the
//! zero-mean primitive `P` all have exact coefficient formulas, which keeps
//! the Galerkin oracle free of any quadrature.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::grid::GridFunction;
use crate::{re, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Values `L_0(x) ..= L_n(x)`.
pub fn values(n: usize, x: f64) -> Vec<f64> {
    let t = 2.0 * x - 1.0;
    let mut out = vec![0.0; n + 1];
    out[0] = 1.0;
    if n >= 1 {
        out[1] = t;
    }
    for j in 1..n {
        let jf = j as f64;
        out[j + 1] = ((2.0 * jf + 1.0) * t * out[j] - jf * out[j - 1]) / (jf + 1.0);
    }
    out
}

/// Gauss–Legendre nodes and weights on `[0, 1]` with `m` points.
pub fn gauss_nodes(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..(m + 1) / 2 {
        // Chebyshev-like initial guess on [-1, 1]
        let mut t = (core::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for j in 1..m {
                let jf = j as f64;
                let p2 = ((2.0 * jf + 1.0) * t * p1 - jf * p0) / (jf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { t } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = mf * (t * pm - pm1) / (t * t - 1.0);
            let step = pm / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = 0.5 * (1.0 - t);
        nodes[m - 1 - i] = 0.5 * (1.0 + t);
        weights[i] = 0.5 * w;
        weights[m - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// `Σ c_j L_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreSeries {
    pub coeffs: Vec<C64>,
}

impl LegendreSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        LegendreSeries { coeffs }
    }

    /// The single polynomial `L_j`, padded to degree `n`.
    pub fn unit(j: usize, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n.max(j) + 1];
        coeffs[j] = re(1.0);
        LegendreSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> C64 {
        let t = 2.0 * x - 1.0;
        let (mut b1, mut b2) = (ZERO, ZERO);
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            let jf = j as f64;
            // alpha_j = (2j+1)/(j+1) t, beta_{j+1} = -(j+1)/(j+2)
            let alpha = (2.0 * jf + 1.0) / (jf + 1.0) * t;
            let beta = -(jf + 1.0) / (jf + 2.0);
            let b0 = c + b1 * alpha + b2 * beta;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.eval(x))
    }

    pub fn mu0(&self) -> C64 {
        self.coeffs.first().copied().unwrap_or(ZERO)
    }

    /// `∫(1-x) f`, using `1 - x = L_0/2 - L_1/2`.
    pub fn mu1(&self) -> C64 {
        let c0 = self.mu0();
        let c1 = self.coeffs.get(1).copied().unwrap_or(ZERO);
        c0 * 0.5 - c1 / 6.0
    }

    pub fn l2_inner(&self, other: &LegendreSeries) -> C64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(j, (a, b))| a * b.conj() / (2.0 * j as f64 + 1.0))
            .sum()
    }

    /// Zero-mean primitive `P f`, one degree higher.
    pub fn primitive(&self) -> LegendreSeries {
        let n = self.coeffs.len();
        let mut out = vec![ZERO; n + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if j == 0 {
                // ∫₀ˣ L_0 = x = (L_0 + L_1)/2; the L_0 part is the mean
                out[1] += c * 0.5;
            } else {
                let s = c / (2.0 * (2.0 * j as f64 + 1.0));
                out[j + 1] += s;
                if j >= 2 {
                    out[j - 1] -= s;
                }
            }
        }
        LegendreSeries { coeffs: out }
    }

    /// `H⁻¹(T)` inner product `(Pf|Pg) + μ₀(f) conj μ₀(g)`.
    pub fn hm1_inner(&self, other: &LegendreSeries) -> C64 {
        self.primitive().l2_inner(&other.primitive()) + self.mu0() * other.mu0().conj()
    }

    /// `Σ w_i s_i` for a family of series.
    pub fn linear_combination(terms: &[LegendreSeries], weights: &[C64]) -> LegendreSeries {
        let len = terms.iter().map(|t| t.coeffs.len()).max().unwrap_or(0);
        let mut out = vec![ZERO; len];
        for (t, &w) in terms.iter().zip(weights) {
            for (o, &c) in out.iter_mut().zip(&t.coeffs) {
                *o += c * w;
            }
        }
        LegendreSeries { coeffs: out }
    }
}

//! Closed-form carrier `c₁ cos(λx) + c₂ sin(λx)` for eigenfunctions.
//!
//! Moments, traces, the primitive `P` and `H⁻¹(T)` inner products are all
//! evaluated exactly here; nothing in this module touches a quadrature rule.

#[allow(unused_imports)]
use num_traits::Float;

use crate::grid::GridFunction;
use crate::{re, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigFunction {
    pub lambda: f64,
    pub c1: C64,
    pub c2: C64,
}

/// `sin(w)/w`, continuous at 0.
pub(crate) fn sinc(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        1.0 - w * w / 6.0
    } else {
        w.sin() / w
    }
}

/// `(1 - cos w)/w = ∫₀¹ sin(wx) dx`, continuous at 0.
pub(crate) fn versinc(w: f64) -> f64 {
    let half = 0.5 * w;
    half.sin() * sinc(half)
}

/// `∫₀¹ (cos λx, sin λx)ᵀ (cos νx, sin νx) dx` as a 2×2 table.
pub(crate) fn product_integrals(lambda: f64, nu: f64) -> [[f64; 2]; 2] {
    let (d, s) = (lambda - nu, lambda + nu);
    [
        [
            0.5 * (sinc(d) + sinc(s)),
            0.5 * (versinc(s) - versinc(d)),
        ],
        [
            0.5 * (versinc(s) + versinc(d)),
            0.5 * (sinc(d) - sinc(s)),
        ],
    ]
}

impl TrigFunction {
    pub fn new(lambda: f64, c1: C64, c2: C64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::NonPositiveLambda(lambda));
        }
        Ok(TrigFunction { lambda, c1, c2 })
    }

    pub fn cos(lambda: f64) -> Result<Self> {
        Self::new(lambda, re(1.0), re(0.0))
    }

    pub fn sin(lambda: f64) -> Result<Self> {
        Self::new(lambda, re(0.0), re(1.0))
    }

    pub fn scaled(&self, a: C64) -> Self {
        TrigFunction {
            lambda: self.lambda,
            c1: self.c1 * a,
            c2: self.c2 * a,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1 == re(0.0) && self.c2 == re(0.0)
    }

    pub fn value(&self, x: f64) -> C64 {
        let (s, c) = (self.lambda * x).sin_cos();
        self.c1 * c + self.c2 * s
    }

    /// `k`-th derivative at `x`.
    pub fn derivative(&self, k: u32, x: f64) -> C64 {
        // d/dx rotates (c1, c2) -> (λ c2, -λ c1)
        let (mut a, mut b) = (self.c1, self.c2);
        for _ in 0..k {
            let na = b * self.lambda;
            let nb = -a * self.lambda;
            a = na;
            b = nb;
        }
        let (s, c) = (self.lambda * x).sin_cos();
        a * c + b * s
    }

    pub fn mu0(&self) -> C64 {
        let l = self.lambda;
        (self.c1 * l.sin() + self.c2 * (1.0 - l.cos())) / l
    }

    pub fn mu1(&self) -> C64 {
        let l = self.lambda;
        (self.c1 * (1.0 - l.cos()) + self.c2 * (l - l.sin())) / (l * l)
    }

    /// `(Pφ)(x) = ∫₀ˣ φ - μ₁(φ)`.
    pub fn primitive(&self, x: f64) -> C64 {
        let l = self.lambda;
        let (s, c) = (l * x).sin_cos();
        (self.c1 * s + self.c2 * (1.0 - c)) / l - self.mu1()
    }

    /// `Φ(x) = ∫₀ˣ Pφ`; vanishes at both ends.
    pub fn second_primitive(&self, x: f64) -> C64 {
        let l = self.lambda;
        -self.value(x) / (l * l) + self.c1 / (l * l) + (self.c2 / l - self.mu1()) * x
    }

    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.value(x))
    }

    pub fn sample_derivative(&self, k: u32, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.derivative(k, x))
    }

    pub fn sample_primitive(&self, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.primitive(x))
    }

    /// `(self | other)_{L²}`, exact.
    pub fn l2_inner(&self, other: &TrigFunction) -> C64 {
        let t = product_integrals(self.lambda, other.lambda);
        let a = [self.c1, self.c2];
        let b = [other.c1.conj(), other.c2.conj()];
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += a[i] * b[j] * t[i][j];
            }
        }
        acc
    }

    /// `(Pself | Pother)_{L²}`, exact, via `(Pφ|Pψ) = -(φ|Φ_ψ)`.
    pub fn primitive_inner(&self, other: &TrigFunction) -> C64 {
        let nu2 = other.lambda * other.lambda;
        let m0 = self.mu0();
        let m1 = self.mu1();
        self.l2_inner(other) / nu2
            - m0 * other.c1.conj() / nu2
            - (m0 - m1) * (other.c2 / other.lambda - other.mu1()).conj()
    }

    /// `H⁻¹(T)` inner product `(Pφ|Pψ) + μ₀(φ) conj μ₀(ψ)`, exact.
    pub fn hm1_inner(&self, other: &TrigFunction) -> C64 {
        self.primitive_inner(other) + self.mu0() * other.mu0().conj()
    }

    pub fn hm1_norm(&self) -> f64 {
        self.hm1_inner(self).re.max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Quadrature;
    use core::f64::consts::PI;

    #[test]
    fn moments_of_sine_at_pi() {
        let u = TrigFunction::sin(PI).unwrap();
        assert!((u.mu0() - re(2.0 / PI)).norm() < 1e-15);
        assert!((u.mu1() - re(1.0 / PI)).norm() < 1e-15);
    }

    #[test]
    fn cosine_two_pi_has_zero_moments() {
        let u = TrigFunction::cos(2.0 * PI).unwrap();
        assert!(u.mu0().norm() < 1e-15);
        assert!(u.mu1().norm() < 1e-15);
    }

    #[test]
    fn second_primitive_vanishes_at_ends() {
        let u = TrigFunction::new(8.9868, C64::new(0.3, -1.0), re(2.0)).unwrap();
        assert!(u.second_primitive(0.0).norm() < 1e-14);
        assert!(u.second_primitive(1.0).norm() < 1e-14);
    }

    #[test]
    fn closed_forms_match_fine_quadrature() {
        let u = TrigFunction::new(7.3, C64::new(0.4, 0.2), re(-1.1)).unwrap();
        let v = TrigFunction::new(12.1, re(0.5), C64::new(0.0, 0.9)).unwrap();
        let n = 4096;
        let q = Quadrature::Simpson;
        let (gu, gv) = (u.sample(n).unwrap(), v.sample(n).unwrap());
        assert!((gu.integral(q) - u.mu0()).norm() < 1e-12);
        let weight = gu.map(|x, y| y * (1.0 - x));
        assert!((weight.integral(q) - u.mu1()).norm() < 1e-12);
        assert!((gu.l2_inner(&gv, q).unwrap() - u.l2_inner(&v)).norm() < 1e-12);
        let (pu, pv) = (u.sample_primitive(n).unwrap(), v.sample_primitive(n).unwrap());
        assert!(pu.integral(q).norm() < 1e-12);
        assert!((pu.l2_inner(&pv, q).unwrap() - u.primitive_inner(&v)).norm() < 1e-12);
    }

    #[test]
    fn equal_frequencies_use_limits() {
        let u = TrigFunction::new(5.0, re(1.0), re(0.5)).unwrap();
        let n = 2048;
        let g = u.sample(n).unwrap();
        let q = Quadrature::Simpson;
        assert!((g.l2_inner(&g, q).unwrap() - u.l2_inner(&u)).norm() < 1e-12);
        let p = u.sample_primitive(n).unwrap();
        let expect = p.l2_inner(&p, q).unwrap() + u.mu0() * u.mu0().conj();
        assert!((u.hm1_inner(&u) - expect).norm() < 1e-12);
    }

    #[test]
    fn derivative_rotation() {
        let u = TrigFunction::new(3.0, re(1.0), re(2.0)).unwrap();
        let x = 0.37;
        let d1 = re(-3.0 * (3.0 * x).sin() + 6.0 * (3.0 * x).cos());
        assert!((u.derivative(1, x) - d1).norm() < 1e-14);
        assert!((u.derivative(2, x) + u.value(x) * 9.0).norm() < 1e-13);
    }

    #[test]
    fn rejects_nonpositive_lambda() {
        assert_eq!(TrigFunction::cos(0.0), Err(Error::NonPositiveLambda(0.0)));
    }
}

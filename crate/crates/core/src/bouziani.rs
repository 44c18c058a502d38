//! Function-space calculus on `(0, 1)`: the antiderivative `𝓘`, the
//! zero-mean primitive `P`, the moments `μ₀`, `μ₁`, and the `H⁻¹(T)` inner
//! product `(Pf|Pg)_{L²} + μ₀(f) conj μ₀(g)`.
//!
//! Elements of `H⁻¹(T)` are stored by coordinates `(P f, μ₀(f))`; the point
//! mass at the glued endpoint is `(0, 1)` since `P` annihilates it.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::grid::{GridFunction, Quadrature};
use crate::trig::TrigFunction;
use crate::{re, Error, Result, C64};

/// Coordinates of an `H⁻¹(T)` element: zero-mean `P`-image and mean.
#[derive(Debug, Clone, PartialEq)]
pub struct Hminus1Element {
    pub p: GridFunction,
    pub m0: C64,
}

impl Hminus1Element {
    /// Builds an element, re-centering `p` to zero quadrature mean.
    pub fn new(p: GridFunction, m0: C64, q: Quadrature) -> Self {
        let mean = p.integral(q);
        Hminus1Element {
            p: p.shift(-mean),
            m0,
        }
    }

    /// The point mass `δ₁` on a grid of `n` subintervals.
    pub fn delta1(n: usize) -> Result<Self> {
        Ok(Hminus1Element {
            p: GridFunction::zeros(n)?,
            m0: re(1.0),
        })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn combine(&self, a: C64, other: &Hminus1Element, b: C64) -> Result<Self> {
        Ok(Hminus1Element {
            p: self.p.combine(a, &other.p, b)?,
            m0: a * self.m0 + b * other.m0,
        })
    }

    pub fn sub(&self, other: &Hminus1Element) -> Result<Self> {
        self.combine(re(1.0), other, re(-1.0))
    }

    pub fn norm(&self, q: Quadrature) -> f64 {
        hm1_inner(self, self, q)
            .map(|v| v.re.max(0.0).sqrt())
            .unwrap_or(f64::NAN)
    }
}

/// `𝓘f(x) = ∫₀ˣ f`, with `𝓘f(0) = 0`.
pub fn antiderivative(f: &GridFunction, q: Quadrature) -> GridFunction {
    f.cumulative(q)
}

/// `Pf = 𝓘f - ∫₀¹ 𝓘f`.
pub fn primitive_p(f: &GridFunction, q: Quadrature) -> GridFunction {
    let i = antiderivative(f, q);
    let mean = i.integral(q);
    i.shift(-mean)
}

pub fn mu0(f: &GridFunction, q: Quadrature) -> C64 {
    f.integral(q)
}

/// `μ₁(f) = ∫₀¹ (1 - x) f(x) dx`.
pub fn mu1(f: &GridFunction, q: Quadrature) -> C64 {
    f.map(|x, v| v * (1.0 - x)).integral(q)
}

pub fn embed(f: &GridFunction, q: Quadrature) -> Hminus1Element {
    Hminus1Element::new(primitive_p(f, q), mu0(f, q), q)
}

/// Exact embedding of a closed-form mode, sampled on `n` subintervals.
pub fn embed_trig(phi: &TrigFunction, n: usize) -> Result<Hminus1Element> {
    Ok(Hminus1Element {
        p: phi.sample_primitive(n)?,
        m0: phi.mu0(),
    })
}

pub fn hm1_inner(a: &Hminus1Element, b: &Hminus1Element, q: Quadrature) -> Result<C64> {
    Ok(a.p.l2_inner(&b.p, q)? + a.m0 * b.m0.conj())
}

pub fn hm1_norm(f: &GridFunction, q: Quadrature) -> f64 {
    embed(f, q).norm(q)
}

/// `(embed u | embed φ)_{H⁻¹(T)}` for grid data against a closed-form mode.
///
/// Uses `(Pu|Pφ) = -(u|Φ)` with `Φ = 𝓘Pφ` known exactly, so the only
/// quadrature is a single weighted integral of the raw samples.
pub fn hm1_inner_trig(u: &GridFunction, phi: &TrigFunction, q: Quadrature) -> C64 {
    let weighted = u.map(|x, v| v * phi.second_primitive(x).conj());
    -weighted.integral(q) + mu0(u, q) * phi.mu0().conj()
}

/// Norm ratios between the `(P·, μ₀)` norm and a Fourier `H⁻¹` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRatios {
    /// `‖f‖_{Fourier} / ‖f‖_{P,μ₀}`
    pub lower: f64,
    /// `‖f‖_{P,μ₀} / ‖f‖_{Fourier}`
    pub upper: f64,
}

/// Number of Fourier modes on each side of zero in the reference norm.
pub const FOURIER_MODES: i64 = 256;

/// Reference norm `(Σ_{|k|≤256} |f̂_k|² / (1 + 4π²k²))^{1/2}`.
///
/// Coefficients integrate the piecewise-linear interpolant exactly
/// (Filon weights), so they do not alias for `k` near the grid Nyquist
/// frequency.
pub fn fourier_hm1_norm(f: &GridFunction) -> f64 {
    let mut acc = 0.0;
    for k in -FOURIER_MODES..=FOURIER_MODES {
        let omega = 2.0 * PI * k as f64;
        let c = filon_coefficient(f, omega);
        acc += c.norm_sqr() / (1.0 + omega * omega);
    }
    acc.sqrt()
}

/// `∫₀¹ L(x) e^{-iωx} dx` for the piecewise-linear interpolant `L` of `f`.
fn filon_coefficient(f: &GridFunction, omega: f64) -> C64 {
    let n = f.n();
    let h = f.h();
    let theta = omega * h;
    let v = f.values();
    // hat weights: interior h·sinc²(θ/2)·e^{-iωx_j}; ends are half-hats
    let interior = h * sinc_sq_half(theta);
    let (left, right) = half_hat_weights(theta);
    let mut acc = v[0] * left * h;
    for (j, vj) in v.iter().enumerate().take(n).skip(1) {
        acc += vj * C64::from_polar(interior, -omega * j as f64 * h);
    }
    acc + v[n] * right * h * C64::from_polar(1.0, -omega * (1.0 - h))
}

fn sinc_sq_half(theta: f64) -> f64 {
    let s = crate::trig::sinc(0.5 * theta);
    s * s
}

/// `∫₀¹ (1-s) e^{-iθs} ds` and `∫₀¹ s e^{-iθs} ds`.
fn half_hat_weights(theta: f64) -> (C64, C64) {
    if theta.abs() < 1e-3 {
        let a = C64::new(0.0, theta);
        let left = re(0.5) - a / 6.0 + a * a / 24.0;
        let right = re(0.5) - a / 3.0 + a * a / 8.0;
        return (left, right);
    }
    let a = C64::new(0.0, theta);
    let ea = (-a).exp();
    let left = (a - 1.0 + ea) / (a * a);
    let right = (re(1.0) - ea * (a + 1.0)) / (a * a);
    (left, right)
}

pub fn norm_equivalence_check(f: &GridFunction, q: Quadrature) -> Result<NormRatios> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ours = hm1_norm(f, q);
    let reference = fourier_hm1_norm(f);
    if !(ours > 0.0 && reference > 0.0) {
        return Err(Error::ZeroInput);
    }
    Ok(NormRatios {
        lower: reference / ours,
        upper: ours / reference,
    })
}

/// Residual of the integration-by-parts identity for `g = Id_m⁻¹(u'') + cδ₁`:
///
/// `(g|h)_{H⁻¹(T)} = ((c+u(1), u(0)-u(1)) | (μ₀h, μ₁h))_{ℂ²} - (u|h)_{L²}`.
///
/// The left side builds `g` from its coordinates `(u' - (u(1)-u(0)), c)`,
/// which needs the nodal derivative of `u`; the right side needs only
/// moments and boundary values.
pub fn ibp_identity_residual(
    u: &GridFunction,
    c: C64,
    h: &GridFunction,
    q: Quadrature,
) -> Result<f64> {
    u.check_same_grid(h)?;
    let du = u.derivative()?.values;
    let jump = u.last() - u.first();
    let g = Hminus1Element::new(du.shift(-jump), c, q);
    let lhs = hm1_inner(&g, &embed(h, q), q)?;
    let rhs = (c + u.last()) * mu0(h, q).conj() + (u.first() - u.last()) * mu1(h, q).conj()
        - u.l2_inner(h, q)?;
    Ok((lhs - rhs).norm())
}

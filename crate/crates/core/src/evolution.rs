//! Heat and wave flows by expansion in `H_Y`-orthonormal eigenfunctions.
//!
//! For hermitian `K` the operator is self-adjoint in `H_Y`, so
//! `u(t) = Σ a_k e^{-λ_k² t} φ_k` (heat) and
//! `u(t) = Σ [a_k cos(λ_k t) + b_k sin(λ_k t)/λ_k] φ_k` (wave). Moments,
//! traces and norms of the flow are evaluated mode by mode in closed form.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bouziani::{hm1_inner_trig, primitive_p};
use crate::constraints::{gamma2, norm2, BoundaryData, ProblemSpec, Vec2};
use crate::grid::GridFunction;
use crate::spectral::EigenMode;
use crate::trig::TrigFunction;
use crate::{Error, Result, C64};
#[cfg(test)]
use crate::re;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Expansion of initial data in a truncated eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalCoefficients {
    pub modes: Vec<EigenMode>,
    /// Position coefficients.
    pub a: Vec<C64>,
    /// Velocity coefficients (zero for heat data).
    pub b: Vec<C64>,
    /// `H⁻¹(T)` norm of the part of the data outside the span of the modes.
    pub discarded: f64,
}

impl ModalCoefficients {
    pub fn from_parts(modes: Vec<EigenMode>, a: Vec<C64>, b: Vec<C64>) -> Result<Self> {
        if a.len() != modes.len() {
            return Err(Error::LengthMismatch {
                expected: modes.len(),
                got: a.len(),
            });
        }
        if b.len() != modes.len() {
            return Err(Error::LengthMismatch {
                expected: modes.len(),
                got: b.len(),
            });
        }
        Ok(ModalCoefficients {
            modes,
            a,
            b,
            discarded: 0.0,
        })
    }

    /// Wave state `(position, velocity)` after time `t` (any sign).
    pub fn wave_state_at(&self, t: f64) -> ModalCoefficients {
        let mut a = Vec::with_capacity(self.a.len());
        let mut b = Vec::with_capacity(self.a.len());
        for ((m, &p), &v) in self.modes.iter().zip(&self.a).zip(&self.b) {
            let (s, c) = (m.lambda * t).sin_cos();
            a.push(p * c + v * (s / m.lambda));
            b.push(-p * (m.lambda * s) + v * c);
        }
        ModalCoefficients {
            modes: self.modes.clone(),
            a,
            b,
            discarded: self.discarded,
        }
    }

    /// Heat state after time `t ≥ 0`.
    pub fn heat_state_at(&self, t: f64) -> ModalCoefficients {
        let a = self
            .modes
            .iter()
            .zip(&self.a)
            .map(|(m, &p)| p * (-m.lambda_sq() * t).exp())
            .collect();
        ModalCoefficients {
            modes: self.modes.clone(),
            a,
            b: alloc::vec![ZERO; self.modes.len()],
            discarded: self.discarded,
        }
    }

    /// Magnitude of the last coefficient times the mode count: a tail
    /// estimate assuming coefficients decay like `k⁻²`.
    pub fn tail_estimate(&self) -> f64 {
        let n = self.a.len();
        self.a.last().map_or(0.0, |a| a.norm() * n as f64)
    }

    /// `H_Y` norm of the position (modes are orthonormal).
    pub fn norm(&self) -> f64 {
        self.a.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Sum of the position expansion on `n` subintervals.
    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        sample_sum(&self.modes, &self.a, n)
    }
}

fn sample_sum(modes: &[EigenMode], coeffs: &[C64], n: usize) -> Result<GridFunction> {
    let fs: Vec<TrigFunction> = modes.iter().map(|m| m.function()).collect();
    GridFunction::from_fn(n, |x| {
        fs.iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != ZERO)
            .map(|(f, &c)| f.value(x) * c)
            .sum()
    })
}

/// Modal bookkeeping kept alongside the sampled trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalHistory {
    pub modes: Vec<EigenMode>,
    /// Position coefficients at each output time.
    pub coeffs: Vec<Vec<C64>>,
}

/// Sampled solution at a list of times.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrace {
    pub times: Vec<f64>,
    pub snapshots: Vec<GridFunction>,
    /// `Γ₁u(t)` at each time.
    pub moment_trace: Vec<Vec2>,
    /// `H_Y` norm at each time.
    pub norms: Vec<f64>,
    /// Wave energy `‖∂_t u‖² + Σ λ_k²|position_k|²`, when applicable.
    pub energy: Option<Vec<f64>>,
    pub modal: Option<ModalHistory>,
    /// `H⁻¹(T)` norm of the initial data outside the computed modes.
    pub discarded: f64,
    pub tail_estimate: f64,
}

impl SolutionTrace {
    /// A trace from plain snapshots, with moments and `H⁻¹(T)` norms taken
    /// by quadrature.
    pub fn from_snapshots(spec: &ProblemSpec, times: Vec<f64>, snapshots: Vec<GridFunction>) -> Result<Self> {
        check_times(&times)?;
        if times.len() != snapshots.len() {
            return Err(Error::LengthMismatch {
                expected: times.len(),
                got: snapshots.len(),
            });
        }
        let q = spec.quadrature;
        let moment_trace = snapshots.iter().map(|s| s.gamma1(q)).collect();
        let norms = snapshots.iter().map(|s| crate::bouziani::hm1_norm(s, q)).collect();
        Ok(SolutionTrace {
            times,
            snapshots,
            moment_trace,
            norms,
            energy: None,
            modal: None,
            discarded: 0.0,
            tail_estimate: 0.0,
        })
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) || times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::InvalidParameter("times must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("times must be strictly increasing"));
    }
    Ok(())
}

fn check_feasible(spec: &ProblemSpec, u: &GridFunction) -> Result<()> {
    let r = crate::constraints::feasibility(u, spec);
    if r > spec.feasibility_tol * (1.0 + u.l2_norm(spec.quadrature)) {
        return Err(Error::Infeasible { residual: r });
    }
    Ok(())
}

/// `a_k = (u0 | φ_k)_{H⁻¹(T)}` with the discarded part measured on the grid.
pub fn project(spec: &ProblemSpec, modes: &[EigenMode], u0: &GridFunction) -> Result<ModalCoefficients> {
    spec.require_hermitian()?;
    let q = spec.quadrature;
    let fs: Vec<TrigFunction> = modes.iter().map(|m| m.function()).collect();
    let a: Vec<C64> = fs.iter().map(|f| hm1_inner_trig(u0, f, q)).collect();
    // discarded part: embed(u0) - Σ a_k embed(φ_k)
    let pu = primitive_p(u0, q);
    let rest = pu.map(|x, v| {
        v - fs
            .iter()
            .zip(&a)
            .map(|(f, &c)| f.primitive(x) * c)
            .sum::<C64>()
    });
    let m0 = crate::bouziani::mu0(u0, q) - fs.iter().zip(&a).map(|(f, &c)| f.mu0() * c).sum::<C64>();
    let discarded = (rest.l2_norm(q).powi(2) + m0.norm_sqr()).sqrt();
    Ok(ModalCoefficients {
        modes: modes.to_vec(),
        b: alloc::vec![ZERO; a.len()],
        a,
        discarded,
    })
}

fn modal_gamma1(modes: &[EigenMode], coeffs: &[C64]) -> Vec2 {
    let mut g = [ZERO; 2];
    for (m, &c) in modes.iter().zip(coeffs) {
        let f = m.function();
        g[0] += f.mu0() * c;
        g[1] += f.mu1() * c;
    }
    g
}

/// Heat flow from grid data: projects, then evolves.
pub fn heat_solve(spec: &ProblemSpec, modes: &[EigenMode], u0: &GridFunction, times: &[f64]) -> Result<SolutionTrace> {
    spec.require_hermitian()?;
    check_feasible(spec, u0)?;
    let coeffs = project(spec, modes, u0)?;
    heat_from_coefficients(spec, &coeffs, times)
}

pub fn heat_from_coefficients(spec: &ProblemSpec, coeffs: &ModalCoefficients, times: &[f64]) -> Result<SolutionTrace> {
    spec.require_hermitian()?;
    check_times(times)?;
    let mut snapshots = Vec::with_capacity(times.len());
    let mut moment_trace = Vec::with_capacity(times.len());
    let mut norms = Vec::with_capacity(times.len());
    let mut history = Vec::with_capacity(times.len());
    for &t in times {
        let state = coeffs.heat_state_at(t);
        snapshots.push(state.sample(spec.n)?);
        moment_trace.push(modal_gamma1(&state.modes, &state.a));
        norms.push(state.norm());
        history.push(state.a);
    }
    Ok(SolutionTrace {
        times: times.to_vec(),
        snapshots,
        moment_trace,
        norms,
        energy: None,
        modal: Some(ModalHistory {
            modes: coeffs.modes.clone(),
            coeffs: history,
        }),
        discarded: coeffs.discarded,
        tail_estimate: coeffs.tail_estimate(),
    })
}

/// Wave flow from grid data `u(0) = u0`, `∂_t u(0) = u1`.
pub fn wave_solve(
    spec: &ProblemSpec,
    modes: &[EigenMode],
    u0: &GridFunction,
    u1: &GridFunction,
    times: &[f64],
) -> Result<SolutionTrace> {
    spec.require_hermitian()?;
    check_feasible(spec, u0)?;
    check_feasible(spec, u1)?;
    let p = project(spec, modes, u0)?;
    let v = project(spec, modes, u1)?;
    let coeffs = ModalCoefficients {
        modes: p.modes,
        a: p.a,
        b: v.a,
        discarded: p.discarded.hypot(v.discarded),
    };
    wave_from_coefficients(spec, &coeffs, times)
}

/// Modal wave energy `Σ |v_k|² + λ_k²|p_k|²`.
pub fn wave_energy(state: &ModalCoefficients) -> f64 {
    state
        .modes
        .iter()
        .zip(&state.a)
        .zip(&state.b)
        .map(|((m, p), v)| v.norm_sqr() + m.lambda_sq() * p.norm_sqr())
        .sum()
}

pub fn wave_from_coefficients(spec: &ProblemSpec, coeffs: &ModalCoefficients, times: &[f64]) -> Result<SolutionTrace> {
    spec.require_hermitian()?;
    check_times(times)?;
    let mut snapshots = Vec::with_capacity(times.len());
    let mut moment_trace = Vec::with_capacity(times.len());
    let mut norms = Vec::with_capacity(times.len());
    let mut energy = Vec::with_capacity(times.len());
    let mut history = Vec::with_capacity(times.len());
    for &t in times {
        let state = coeffs.wave_state_at(t);
        snapshots.push(state.sample(spec.n)?);
        moment_trace.push(modal_gamma1(&state.modes, &state.a));
        norms.push(state.norm());
        energy.push(wave_energy(&state));
        history.push(state.a);
    }
    Ok(SolutionTrace {
        times: times.to_vec(),
        snapshots,
        moment_trace,
        norms,
        energy: Some(energy),
        modal: Some(ModalHistory {
            modes: coeffs.modes.clone(),
            coeffs: history,
        }),
        discarded: coeffs.discarded,
        tail_estimate: coeffs.tail_estimate(),
    })
}

/// `KΓ₁φ + (μ₀(φ'') + φ(1), φ(0) - φ(1))` for a closed-form function.
fn domain_vector(spec: &ProblemSpec, f: &TrigFunction) -> Vec2 {
    let kg = spec.k.apply([f.mu0(), f.mu1()]);
    let (u0, u1) = (f.value(0.0), f.value(1.0));
    let m0dd = f.derivative(1, 1.0) - f.derivative(1, 0.0);
    [kg[0] + m0dd + u1, kg[1] + u0 - u1]
}

/// Per time: the larger of `‖P_{Y^⊥}Γ₁u(t)‖` and
/// `‖P_Y(KΓ₁u + (μ₀(u'') + u(1), u(0) - u(1)))‖`. Modal traces are
/// evaluated in closed form; plain traces fall back to grid stencils.
pub fn moment_residuals(trace: &SolutionTrace, spec: &ProblemSpec) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(trace.times.len());
    for (i, g1) in trace.moment_trace.iter().enumerate() {
        let perp = norm2(&spec.y.proj_perp(*g1));
        let dom = match &trace.modal {
            Some(h) => {
                let mut v = [ZERO; 2];
                for (m, &c) in h.modes.iter().zip(&h.coeffs[i]) {
                    let d = domain_vector(spec, &m.function());
                    v[0] += d[0] * c;
                    v[1] += d[1] * c;
                }
                norm2(&spec.y.proj(v))
            }
            None => {
                let s = &trace.snapshots[i];
                let g2 = gamma2(s)?;
                let kg = spec.k.apply(*g1);
                norm2(&spec.y.proj([kg[0] - g2[0], kg[1] - g2[1]]))
            }
        };
        out.push(perp.max(dom));
    }
    Ok(out)
}

/// Residual of the first derivative-level boundary conditions at
/// `times[t_index] > 0`:
/// `Γ₁(u'') = (u'(1) - u'(0), u(1) - u(0) - u'(0)) ∈ Y` and
/// `KΓ₁(u'') + (u'''(1) - u'''(0) + u''(1), u''(0) - u''(1)) ∈ Y^⊥`.
pub fn cascade_check(trace: &SolutionTrace, t_index: usize, spec: &ProblemSpec) -> Result<f64> {
    let t = *trace.times.get(t_index).ok_or(Error::InvalidParameter("time index out of range"))?;
    if !(t > 0.0) {
        return Err(Error::NeedsPositiveTime);
    }
    let h = trace.modal.as_ref().ok_or(Error::ClosedFormRequired)?;
    let mut g = [ZERO; 2];
    let mut tail = [ZERO; 2];
    for (m, &c) in h.modes.iter().zip(&h.coeffs[t_index]) {
        let f = m.function();
        let d = |k: u32, x: f64| f.derivative(k, x);
        g[0] += (d(1, 1.0) - d(1, 0.0)) * c;
        g[1] += (d(0, 1.0) - d(0, 0.0) - d(1, 0.0)) * c;
        tail[0] += (d(3, 1.0) - d(3, 0.0) + d(2, 1.0)) * c;
        tail[1] += (d(2, 0.0) - d(2, 1.0)) * c;
    }
    let kg = spec.k.apply(g);
    let first = norm2(&spec.y.proj_perp(g));
    let second = norm2(&spec.y.proj([kg[0] + tail[0], kg[1] + tail[1]]));
    Ok(first.max(second))
}

/// `‖u - v‖_{H⁻¹(T)}` between two grid functions.
pub fn hm1_distance(u: &GridFunction, v: &GridFunction, spec: &ProblemSpec) -> Result<f64> {
    Ok(crate::bouziani::hm1_norm(&u.sub(v)?, spec.quadrature))
}

/// `(u | v)_{H⁻¹(T)}` of two modal expansions over the same modes.
pub fn modal_inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

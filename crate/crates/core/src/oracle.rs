//! Independent Legendre–Galerkin discretization of the form `a_K` in the
//! `H_Y` metric.
//!
//! Basis functions are shifted Legendre polynomials combined so that
//! `Γ₁e ∈ Y` holds exactly. Only `L²` products and the moments `Γ₁` enter
//! the matrices, so boundary conditions of the operator arise variationally
//! and nothing here shares code with the characteristic-matrix path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::constraints::{norm2, ProblemSpec, SubspaceY, Vec2};
use crate::evolution::SolutionTrace;
use crate::grid::GridFunction;
use crate::legendre::{self, LegendreSeries};
use crate::linalg::{self, form, Lu, Mat};
use crate::spectral::EigenMode;
use crate::{re, Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// `V_Y`-feasible polynomial basis of degree at most `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinBasis {
    pub degree: usize,
    pub elements: Vec<LegendreSeries>,
}

/// `L_j` for `j ≥ 2` have vanishing moments; only `L_0`, `L_1` need care:
/// `Γ₁(αL_0 + βL_1) = (α, α/2 - β/6)`.
pub fn build_basis(spec: &ProblemSpec, degree: usize) -> Result<GalerkinBasis> {
    if degree < 4 {
        return Err(Error::InvalidParameter("Galerkin degree must be at least 4"));
    }
    let n = degree;
    let mut elements = Vec::with_capacity(n + 1);
    match spec.y {
        SubspaceY::Full => {
            elements.push(LegendreSeries::unit(0, n));
            elements.push(LegendreSeries::unit(1, n));
        }
        SubspaceY::Zero => {}
        SubspaceY::Line(d) => {
            // one constraint: (-y, x)·Γ₁ = 0
            let (x, y) = (d[0], d[1]);
            let alpha = x / 6.0;
            let beta = x * 0.5 - y;
            if alpha.norm() + beta.norm() == 0.0 {
                return Err(Error::DegenerateDirection);
            }
            let mut c = vec![ZERO; n + 1];
            c[0] = alpha;
            c[1] = beta;
            let e = LegendreSeries::new(c);
            let scale = e.l2_inner(&e).re.sqrt();
            elements.push(LegendreSeries::new(e.coeffs.iter().map(|v| v / scale).collect()));
        }
    }
    for j in 2..=n {
        elements.push(LegendreSeries::unit(j, n));
    }
    Ok(GalerkinBasis { degree, elements })
}

impl GalerkinBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn gamma1(e: &LegendreSeries) -> Vec2 {
        [e.mu0(), e.mu1()]
    }

    /// `Σ x_j e_j`.
    pub fn combine(&self, x: &[C64]) -> LegendreSeries {
        LegendreSeries::linear_combination(&self.elements, x)
    }

    pub fn sample(&self, n: usize) -> Result<Vec<GridFunction>> {
        self.elements.iter().map(|e| e.sample(n)).collect()
    }

    /// Largest `‖P_{Y^⊥}Γ₁e‖` over the basis.
    pub fn max_infeasibility(&self, y: &SubspaceY) -> f64 {
        self.elements
            .iter()
            .map(|e| norm2(&y.proj_perp(Self::gamma1(e))))
            .fold(0.0, f64::max)
    }
}

/// `A x = θ G x` with `A_ij = a_K(e_j, e_i)` and `G_ij = (e_j | e_i)_{H⁻¹(T)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinSystem {
    pub basis: GalerkinBasis,
    pub a: Mat,
    pub g: Mat,
}

pub fn assemble(spec: &ProblemSpec, basis: GalerkinBasis) -> Result<GalerkinSystem> {
    let m = basis.len();
    let gammas: Vec<Vec2> = basis.elements.iter().map(GalerkinBasis::gamma1).collect();
    let prims: Vec<LegendreSeries> = basis.elements.iter().map(|e| e.primitive()).collect();
    let mut a = Mat::zeros(m, m);
    let mut g = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let (ei, ej) = (&basis.elements[i], &basis.elements[j]);
            let kg = spec.k.apply(gammas[j]);
            a[(i, j)] = ej.l2_inner(ei) + kg[0] * gammas[i][0].conj() + kg[1] * gammas[i][1].conj();
            g[(i, j)] = prims[j].l2_inner(&prims[i]) + ej.mu0() * ei.mu0().conj();
        }
    }
    Ok(GalerkinSystem { basis, a, g })
}

impl GalerkinSystem {
    pub fn build(spec: &ProblemSpec, degree: usize) -> Result<Self> {
        assemble(spec, build_basis(spec, degree)?)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.a.hermitian_defect().max(self.g.hermitian_defect())
    }

    /// `H⁻¹(T)` norm of `Σ x_j e_j`.
    pub fn norm(&self, x: &[C64]) -> f64 {
        form(&self.g, x, x).re.max(0.0).sqrt()
    }

    /// Coordinates of the `H_Y`-orthogonal projection of a series.
    pub fn project_series(&self, f: &LegendreSeries) -> Result<Vec<C64>> {
        let pf = f.primitive();
        let b: Vec<C64> = self
            .basis
            .elements
            .iter()
            .map(|e| pf.l2_inner(&e.primitive()) + f.mu0() * e.mu0().conj())
            .collect();
        Ok(Lu::new(&self.g)?.solve(&b))
    }

    /// Same, for grid data. The samples are first fitted by their `L²`
    /// Legendre expansion; feeding quadrature `H⁻¹` products into `G`
    /// directly amplifies the quadrature error by the conditioning of `G`.
    pub fn project_grid(&self, u: &GridFunction) -> Result<Vec<C64>> {
        self.project_series(&fit_series(u, self.basis.degree))
    }
}

/// `L²`-orthogonal Legendre fit of degree `degree`:
/// `c_j = (2j + 1) ∫ u L_j`, by Gauss quadrature on a local 8-point
/// interpolant of the samples. The error then depends on the smoothness
/// of `u` only; grid quadrature of `u·L_j` loses accuracy as `j` grows.
pub fn fit_series(u: &GridFunction, degree: usize) -> LegendreSeries {
    let (nodes, weights) = legendre::gauss_nodes(degree + 24);
    let mut coeffs = vec![ZERO; degree + 1];
    for (&x, &w) in nodes.iter().zip(&weights) {
        let v = interpolate(u, x) * w;
        for (c, l) in coeffs.iter_mut().zip(legendre::values(degree, x)) {
            *c += v * l;
        }
    }
    for (j, c) in coeffs.iter_mut().enumerate() {
        *c *= 2.0 * j as f64 + 1.0;
    }
    LegendreSeries::new(coeffs)
}

/// Lagrange interpolation through the 8 grid points nearest `x`.
fn interpolate(u: &GridFunction, x: f64) -> C64 {
    const W: usize = 8;
    let n = u.n();
    let h = u.h();
    let width = W.min(n + 1);
    let centre = (x / h).floor() as isize - (width as isize / 2 - 1);
    let start = centre.clamp(0, (n + 1 - width) as isize) as usize;
    let mut acc = ZERO;
    for i in start..start + width {
        let xi = u.x(i);
        let mut l = 1.0;
        for k in start..start + width {
            if k != i {
                l *= (x - u.x(k)) / (xi - u.x(k));
            }
        }
        acc += u.values()[i] * l;
    }
    acc
}

/// Sorted Ritz values `θ_k ≈ λ_k²`.
pub fn gen_eigensolve(sys: &GalerkinSystem) -> Result<Vec<f64>> {
    Ok(eigen_pairs(sys)?.0)
}

/// Ritz values with `G`-orthonormal coordinate vectors (columns).
pub fn eigen_pairs(sys: &GalerkinSystem) -> Result<(Vec<f64>, Mat)> {
    let defect = sys.a.hermitian_defect();
    if defect > 1e-12 * sys.a.max_abs().max(1.0) {
        return Err(Error::NonHermitian { defect });
    }
    linalg::generalized_eigen(&sys.a, &sys.g)
}

/// Oracle trace with the Galerkin coordinates at each output time.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleTrace {
    pub trace: SolutionTrace,
    pub states: Vec<Vec<C64>>,
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("times must be non-negative and strictly increasing"));
    }
    Ok(())
}

fn build_trace(
    spec: &ProblemSpec,
    sys: &GalerkinSystem,
    times: &[f64],
    states: Vec<Vec<C64>>,
    energy: Option<Vec<f64>>,
) -> Result<OracleTrace> {
    let mut snapshots = Vec::with_capacity(states.len());
    let mut moments = Vec::with_capacity(states.len());
    let mut norms = Vec::with_capacity(states.len());
    for x in &states {
        let f = sys.basis.combine(x);
        snapshots.push(f.sample(spec.n)?);
        moments.push([f.mu0(), f.mu1()]);
        norms.push(sys.norm(x));
    }
    Ok(OracleTrace {
        trace: SolutionTrace {
            times: times.to_vec(),
            snapshots,
            moment_trace: moments,
            norms,
            energy,
            modal: None,
            discarded: 0.0,
            tail_estimate: 0.0,
        },
        states,
    })
}

fn steps_for(span: f64, dt: f64) -> (usize, f64) {
    if span <= 0.0 {
        return (0, dt);
    }
    let n = (span / dt - 1e-9).ceil().max(1.0) as usize;
    (n, span / n as f64)
}

/// Crank–Nicolson for `G ẋ = -A x`, stepping to each output time with a
/// step no larger than `dt`.
pub fn evolve_cn(spec: &ProblemSpec, sys: &GalerkinSystem, x0: &[C64], dt: f64, times: &[f64]) -> Result<OracleTrace> {
    check_times(times)?;
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("dt must be > 0"));
    }
    let mut x = x0.to_vec();
    let mut t = 0.0;
    let mut states = Vec::with_capacity(times.len());
    let mut cache: Option<(f64, Lu, Mat)> = None;
    for &target in times {
        let (steps, h) = steps_for(target - t, dt);
        if steps > 0 {
            let reuse = matches!(&cache, Some((hh, _, _)) if (*hh - h).abs() <= 1e-15 * h);
            if !reuse {
                let lhs = sys.g.combine(re(1.0), &sys.a, re(0.5 * h));
                let rhs = sys.g.combine(re(1.0), &sys.a, re(-0.5 * h));
                cache = Some((h, Lu::new(&lhs)?, rhs));
            }
            let (_, lu, rhs) = cache.as_ref().expect("factorization cached");
            for _ in 0..steps {
                x = lu.solve(&rhs.matvec(&x));
            }
        }
        t = target;
        states.push(x.clone());
    }
    build_trace(spec, sys, times, states, None)
}

/// Average-acceleration Newmark for `G ẍ = -A x`.
pub fn evolve_wave_tr(
    spec: &ProblemSpec,
    sys: &GalerkinSystem,
    x0: &[C64],
    v0: &[C64],
    dt: f64,
    times: &[f64],
) -> Result<OracleTrace> {
    check_times(times)?;
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter("dt must be > 0"));
    }
    let g_lu = Lu::new(&sys.g)?;
    let accel = |x: &[C64]| -> Vec<C64> { g_lu.solve(&sys.a.matvec(x)).iter().map(|v| -v).collect() };
    let (mut x, mut v) = (x0.to_vec(), v0.to_vec());
    let mut acc = accel(&x);
    let mut t = 0.0;
    let mut states = Vec::with_capacity(times.len());
    let mut energy = Vec::with_capacity(times.len());
    let mut cache: Option<(f64, Lu)> = None;
    for &target in times {
        let (steps, h) = steps_for(target - t, dt);
        if steps > 0 {
            let reuse = matches!(&cache, Some((hh, _)) if (*hh - h).abs() <= 1e-15 * h);
            if !reuse {
                let lhs = sys.g.combine(re(1.0), &sys.a, re(0.25 * h * h));
                cache = Some((h, Lu::new(&lhs)?));
            }
            let (_, lu) = cache.as_ref().expect("factorization cached");
            for _ in 0..steps {
                // predictor, then solve (G + h²/4 A) a₁ = -A x̃
                let pred: Vec<C64> = (0..x.len())
                    .map(|i| x[i] + v[i] * h + acc[i] * (0.25 * h * h))
                    .collect();
                let rhs: Vec<C64> = sys.a.matvec(&pred).iter().map(|r| -r).collect();
                let next = lu.solve(&rhs);
                for i in 0..x.len() {
                    x[i] = pred[i] + next[i] * (0.25 * h * h);
                    v[i] += (acc[i] + next[i]) * (0.5 * h);
                }
                acc = next;
            }
        }
        t = target;
        energy.push(form(&sys.g, &v, &v).re + form(&sys.a, &x, &x).re);
        states.push(x.clone());
    }
    build_trace(spec, sys, times, states, Some(energy))
}

/// Exact flow `x(t) = exp(-tG⁻¹A) x0`: through the generalized eigenbasis
/// when `A` is hermitian, by scaling and squaring otherwise.
pub fn matexp_evolve(spec: &ProblemSpec, sys: &GalerkinSystem, x0: &[C64], times: &[f64]) -> Result<OracleTrace> {
    check_times(times)?;
    let mut states = Vec::with_capacity(times.len());
    let hermitian = sys.a.hermitian_defect() <= 1e-12 * sys.a.max_abs().max(1.0);
    if hermitian {
        let (vals, x) = eigen_pairs(sys)?;
        let gx0 = sys.g.matvec(x0);
        let c: Vec<C64> = (0..vals.len())
            .map(|k| (0..x0.len()).map(|i| x[(i, k)].conj() * gx0[i]).sum())
            .collect();
        for &t in times {
            if t == 0.0 {
                states.push(x0.to_vec());
                continue;
            }
            let mut s = vec![ZERO; x0.len()];
            for (k, &th) in vals.iter().enumerate() {
                let w = c[k] * (-th * t).exp();
                for (i, si) in s.iter_mut().enumerate() {
                    *si += x[(i, k)] * w;
                }
            }
            states.push(s);
        }
    } else {
        let gen = Lu::new(&sys.g)?.solve_mat(&sys.a).scale(re(-1.0));
        for &t in times {
            states.push(linalg::expm(&gen.scale(re(t))).matvec(x0));
        }
    }
    build_trace(spec, sys, times, states, None)
}

/// One row of the spectral-versus-Galerkin comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub case: String,
    pub k: usize,
    pub lambda_spectral: f64,
    pub lambda_galerkin: f64,
    /// Relative difference of the squared values.
    pub rel_err: f64,
}

pub fn compare(case: &str, modes: &[EigenMode], ritz: &[f64]) -> Vec<Comparison> {
    modes
        .iter()
        .zip(ritz)
        .map(|(m, &th)| {
            let l2 = m.lambda_sq();
            Comparison {
                case: String::from(case),
                k: m.index,
                lambda_spectral: m.lambda,
                lambda_galerkin: th.max(0.0).sqrt(),
                rel_err: (th - l2).abs() / l2,
            }
        })
        .collect()
}

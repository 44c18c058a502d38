//! Eigenvalues of `A_{Y,K}` through the characteristic matrices.
//!
//! An eigenfunction has the form `c₁cos(λx) + c₂sin(λx)`, with
//! `Γ₁u = M(λ)B(λ)c` and `Γ₂u = C(λ)c`. The value `λ²` is an eigenvalue
//! exactly when the stacked `4×2` matrix
//! `[P_{Y^⊥}MB; P_Y(KMB - C)]` has rank at most one. The scalar
//! determinant of a reduced `2×2` system drives a bracketing scan, and the
//! singular values of the stacked matrix arbitrate.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::constraints::{self, c_functional, domain_residual, feasibility, ProblemSpec, SubspaceY, Vec2};
use crate::roots::{brent_min, brent_root};
use crate::trig::TrigFunction;
use crate::{re, Error, Result, C64};

pub type Mat2 = [[f64; 2]; 2];
pub type CharSystem = [[C64; 2]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);

/// Default scan step in `λ`.
pub const SCAN_STEP: f64 = PI / 64.0;

/// Samples per scan window (four half-periods).
pub const WINDOW_SAMPLES: usize = 256;

/// `M(λ) = diag(1/λ, 1/λ²)`, symmetric `B(λ)` and `C(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharMatrices {
    pub lambda: f64,
    pub m: [f64; 2],
    pub b: Mat2,
    pub c: Mat2,
}

fn det2(a: &Mat2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn char_matrices(lambda: f64) -> Result<CharMatrices> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let (s, c) = lambda.sin_cos();
    let vc = 1.0 - c;
    Ok(CharMatrices {
        lambda,
        m: [1.0 / lambda, 1.0 / (lambda * lambda)],
        b: [[s, vc], [vc, lambda - s]],
        c: [[lambda * s - c, lambda * vc - s], [c - 1.0, s]],
    })
}

impl CharMatrices {
    /// `M(λ)B(λ)`: maps `(c₁, c₂)` to `Γ₁u`.
    pub fn mb(&self) -> Mat2 {
        let (m, b) = (self.m, self.b);
        [
            [m[0] * b[0][0], m[0] * b[0][1]],
            [m[1] * b[1][0], m[1] * b[1][1]],
        ]
    }

    pub fn det_b(&self) -> f64 {
        det2(&self.b)
    }

    pub fn det_c(&self) -> f64 {
        det2(&self.c)
    }

    /// `(d/dλ (MB), d/dλ C)`.
    fn derivatives(&self) -> (Mat2, Mat2) {
        let l = self.lambda;
        let (s, c) = l.sin_cos();
        let db = [[c, s], [s, 1.0 - c]];
        let dm = [-1.0 / (l * l), -2.0 / (l * l * l)];
        let (m, b) = (self.m, self.b);
        let dmb = [
            [dm[0] * b[0][0] + m[0] * db[0][0], dm[0] * b[0][1] + m[0] * db[0][1]],
            [dm[1] * b[1][0] + m[1] * db[1][0], dm[1] * b[1][1] + m[1] * db[1][1]],
        ];
        let dc = [[2.0 * s + l * c, 1.0 - 2.0 * c + l * s], [-s, c]];
        (dmb, dc)
    }
}

fn cmat(a: &Mat2) -> [[C64; 2]; 2] {
    [[re(a[0][0]), re(a[0][1])], [re(a[1][0]), re(a[1][1])]]
}

fn mat_mul(k: &[[C64; 2]; 2], a: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = k[i][0] * a[0][j] + k[i][1] * a[1][j];
        }
    }
    out
}

fn kmb_minus_c(spec: &ProblemSpec, mb: &Mat2, c: &Mat2) -> [[C64; 2]; 2] {
    let kmb = mat_mul(&spec.k.0, &cmat(mb));
    let mut out = kmb;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] -= re(c[i][j]);
        }
    }
    out
}

fn row_times(v: [C64; 2], a: &[[C64; 2]; 2]) -> [C64; 2] {
    [v[0] * a[0][0] + v[1] * a[1][0], v[0] * a[0][1] + v[1] * a[1][1]]
}

fn projector(y: &SubspaceY) -> [[C64; 2]; 2] {
    let e0 = y.proj([re(1.0), ZERO]);
    let e1 = y.proj([ZERO, re(1.0)]);
    [[e0[0], e1[0]], [e0[1], e1[1]]]
}

/// The stacked `4×2` matrix `[P_{Y^⊥}MB; P_Y(KMB - C)]`.
pub fn char_system(spec: &ProblemSpec, lambda: f64) -> Result<CharSystem> {
    let cm = char_matrices(lambda)?;
    let mb = cm.mb();
    let py = projector(&spec.y);
    let mut pperp = py;
    for (i, row) in pperp.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = if i == j { re(1.0) } else { ZERO } - *v;
        }
    }
    let top = mat_mul(&pperp, &cmat(&mb));
    let bottom = mat_mul(&py, &kmb_minus_c(spec, &mb, &cm.c));
    Ok([top[0], top[1], bottom[0], bottom[1]])
}

/// Two rows whose `2×2` determinant vanishes exactly at eigenvalues,
/// together with their `λ`-derivatives and a scale for each row.
struct Reduced {
    rows: [[C64; 2]; 2],
    drows: [[C64; 2]; 2],
    scale: [f64; 2],
}

fn reduced(spec: &ProblemSpec, lambda: f64) -> Result<Reduced> {
    let cm = char_matrices(lambda)?;
    let mb = cm.mb();
    let (dmb, dc) = cm.derivatives();
    let kc = kmb_minus_c(spec, &mb, &cm.c);
    let dkc = kmb_minus_c(spec, &dmb, &dc);
    let mbc = cmat(&mb);
    let dmbc = cmat(&dmb);
    let fro = |a: &[[C64; 2]; 2]| a.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mb_scale = fro(&mbc);
    let kc_scale = fro(&mat_mul(&spec.k.0, &mbc)) + fro(&cmat(&cm.c));
    Ok(match spec.y {
        SubspaceY::Zero => Reduced {
            rows: mbc,
            drows: dmbc,
            scale: [mb_scale, mb_scale],
        },
        SubspaceY::Full => Reduced {
            rows: kc,
            drows: dkc,
            scale: [kc_scale, kc_scale],
        },
        SubspaceY::Line(d) => {
            let w = [-d[1], d[0]];
            let dc_ = [d[0].conj(), d[1].conj()];
            Reduced {
                rows: [row_times(w, &mbc), row_times(dc_, &kc)],
                drows: [row_times(w, &dmbc), row_times(dc_, &dkc)],
                scale: [mb_scale, kc_scale],
            }
        }
    })
}

/// The characteristic determinant: `λsinλ + 2cosλ - 2` for `{0}²`,
/// `det(KMB - C)` for `ℂ²`, and the reduced `2×2` determinant for a line.
pub fn char_det(spec: &ProblemSpec, lambda: f64) -> Result<C64> {
    Ok(char_det_with_derivative(spec, lambda)?.0)
}

fn char_det_with_derivative(spec: &ProblemSpec, lambda: f64) -> Result<(C64, C64)> {
    if let SubspaceY::Zero = spec.y {
        let cm = char_matrices(lambda)?;
        let (s, c) = lambda.sin_cos();
        return Ok((re(cm.det_b()), re(lambda * c - s)));
    }
    let r = reduced(spec, lambda)?;
    let (a, d) = (r.rows, r.drows);
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let ddet = d[0][0] * a[1][1] + a[0][0] * d[1][1] - d[0][1] * a[1][0] - a[0][1] * d[1][0];
    Ok((det, ddet))
}

/// Singular values of a stacked system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankInfo {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl RankInfo {
    /// `σ_min / max(σ_max, 1)`.
    pub fn min_ratio(&self) -> f64 {
        self.sigma_min / self.sigma_max.max(1.0)
    }

    pub fn rank(&self, tol: f64) -> usize {
        if self.sigma_max / self.sigma_max.max(1.0) <= tol {
            0
        } else if self.min_ratio() <= tol {
            1
        } else {
            2
        }
    }
}

/// Both singular values of a `4×2` matrix. `σ_min` comes from the
/// Cauchy–Binet sum of `2×2` minors so it stays accurate near rank one.
pub fn rank_defect(mat: &CharSystem) -> RankInfo {
    let mut g = [[ZERO; 2]; 2];
    for row in mat {
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] += row[i].conj() * row[j];
            }
        }
    }
    let mut det = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            det += (mat[i][0] * mat[j][1] - mat[i][1] * mat[j][0]).norm_sqr();
        }
    }
    let tr = g[0][0].re + g[1][1].re;
    let disc = ((g[0][0].re - g[1][1].re).powi(2) + 4.0 * g[0][1].norm_sqr()).sqrt();
    let smax = (0.5 * (tr + disc)).max(0.0).sqrt();
    let smin = if smax > 0.0 { det.sqrt() / smax } else { 0.0 };
    RankInfo {
        sigma_min: smin,
        sigma_max: smax,
    }
}

/// A validated point of the spectrum with an `H_Y`-normalized eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    /// 1-based position in the sorted list (with multiplicity).
    pub index: usize,
    pub lambda: f64,
    pub c1: C64,
    pub c2: C64,
    /// `‖Aφ - λ²φ‖_{H⁻¹(T)} / λ²`.
    pub residual: f64,
    pub hy_norm: f64,
    pub sigma_min: f64,
}

impl EigenMode {
    pub fn function(&self) -> TrigFunction {
        TrigFunction {
            lambda: self.lambda,
            c1: self.c1,
            c2: self.c2,
        }
    }

    pub fn lambda_sq(&self) -> f64 {
        self.lambda * self.lambda
    }
}

/// `‖A_{Y,K}φ - λ²φ‖_{H⁻¹(T)}` for a closed-form candidate, with every
/// term evaluated exactly and only the final norm taken by quadrature.
pub fn eigen_residual(spec: &ProblemSpec, phi: &TrigFunction) -> f64 {
    let l2 = phi.lambda * phi.lambda;
    let jump = phi.value(1.0) - phi.value(0.0);
    let n = spec.n;
    let h = 1.0 / n as f64;
    let p: Vec<C64> = (0..=n)
        .map(|j| {
            let x = j as f64 * h;
            -(phi.derivative(1, x) - jump) - phi.primitive(x) * l2
        })
        .collect();
    let pn = spec.quadrature.inner(&p, &p, h).re.max(0.0);
    let m0 = -c_functional(phi, spec) - phi.mu0() * l2;
    (pn + m0.norm_sqr()).sqrt()
}

/// `(‖P_{Y^⊥}Γ₁φ‖, ‖P_Y(KΓ₁φ + (c + φ(1), φ(0) - φ(1)))‖)`.
pub fn constraint_residuals(spec: &ProblemSpec, phi: &TrigFunction) -> (f64, f64) {
    (feasibility(phi, spec), domain_residual(phi, spec))
}

fn null_vector(r: &Reduced) -> [C64; 2] {
    // pick the row that is largest relative to its natural scale
    let rel = |i: usize| {
        let n = (r.rows[i][0].norm_sqr() + r.rows[i][1].norm_sqr()).sqrt();
        if r.scale[i] > 0.0 {
            n / r.scale[i]
        } else {
            0.0
        }
    };
    let i = if rel(0) >= rel(1) { 0 } else { 1 };
    let row = r.rows[i];
    [row[1], -row[0]]
}

fn normalize(phi: TrigFunction) -> Result<TrigFunction> {
    let nrm = phi.hm1_norm();
    if !(nrm > 0.0) {
        return Err(Error::ZeroInput);
    }
    // fix the phase so the larger coefficient is real and positive
    let big = if phi.c1.norm() >= phi.c2.norm() { phi.c1 } else { phi.c2 };
    let phase = big.conj() / big.norm();
    Ok(phi.scaled(phase / nrm))
}

/// Eigenfunctions for `λ`: one for a rank-one system, two
/// `H⁻¹(T)`-orthonormal ones when the system vanishes.
pub fn eigenfunction(spec: &ProblemSpec, lambda: f64) -> Result<Vec<TrigFunction>> {
    let info = rank_defect(&char_system(spec, lambda)?);
    match info.rank(spec.rank_tol) {
        2 => Err(Error::NotAnEigenvalue {
            lambda,
            sigma_ratio: info.min_ratio(),
        }),
        1 => {
            let r = reduced(spec, lambda)?;
            let v = null_vector(&r);
            let phi = TrigFunction::new(lambda, v[0], v[1])?;
            Ok(alloc::vec![normalize(phi)?])
        }
        _ => {
            let a = normalize(TrigFunction::cos(lambda)?)?;
            let s = TrigFunction::sin(lambda)?;
            let proj = s.hm1_inner(&a);
            let b = TrigFunction::new(lambda, s.c1 - a.c1 * proj, s.c2 - a.c2 * proj)?;
            Ok(alloc::vec![a, normalize(b)?])
        }
    }
}

fn build_mode(spec: &ProblemSpec, phi: TrigFunction, sigma_min: f64) -> EigenMode {
    let l2 = phi.lambda * phi.lambda;
    EigenMode {
        index: 0,
        lambda: phi.lambda,
        c1: phi.c1,
        c2: phi.c2,
        residual: eigen_residual(spec, &phi) / l2,
        hy_norm: phi.hm1_norm(),
        sigma_min,
    }
}

/// How the scan turns the characteristic determinant into a real function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetMode {
    /// The determinant is real on the real axis.
    Real,
    /// The determinant is a fixed phase times a real function.
    Rotated(C64),
    /// Fall back to `|D|²`; only tangential zeros are visible.
    Modulus,
}

pub fn det_mode(spec: &ProblemSpec) -> Result<DetMode> {
    let real_k = spec.k.0.iter().flatten().all(|v| v.im == 0.0);
    let real_y = match spec.y {
        SubspaceY::Line(d) => d[0].im == 0.0 && d[1].im == 0.0,
        _ => true,
    };
    if matches!(spec.y, SubspaceY::Zero) || (real_k && real_y) {
        return Ok(DetMode::Real);
    }
    let samples: Vec<C64> = (0..24)
        .map(|i| char_det(spec, 0.7 + 1.93 * i as f64))
        .collect::<Result<_>>()?;
    let big = samples
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(ZERO);
    if big.norm() == 0.0 {
        return Ok(DetMode::Modulus);
    }
    let phase = big / big.norm();
    let aligned = samples
        .iter()
        .all(|d| (phase.conj() * d).im.abs() <= 1e-10 * d.norm().max(1e-300) + 1e-14 * big.norm());
    Ok(if aligned {
        DetMode::Rotated(phase)
    } else {
        DetMode::Modulus
    })
}

/// Real scan function and its derivative.
fn scan_fn(spec: &ProblemSpec, mode: DetMode, lambda: f64) -> (f64, f64) {
    let (d, dd) = match char_det_with_derivative(spec, lambda) {
        Ok(v) => v,
        Err(_) => return (f64::NAN, f64::NAN),
    };
    match mode {
        DetMode::Real => (d.re, dd.re),
        DetMode::Rotated(p) => ((p.conj() * d).re, (p.conj() * dd).re),
        DetMode::Modulus => (d.norm_sqr(), 2.0 * (d.conj() * dd).re),
    }
}

fn polish(spec: &ProblemSpec, mode: DetMode, lambda: f64, lo: f64, hi: f64) -> f64 {
    let (f, df) = scan_fn(spec, mode, lambda);
    if df != 0.0 && df.is_finite() {
        let cand = lambda - f / df;
        if cand > lo && cand < hi && scan_fn(spec, mode, cand).0.abs() <= f.abs() {
            return cand;
        }
    }
    lambda
}

fn bracketed_root(spec: &ProblemSpec, mode: DetMode, a: f64, b: f64) -> Result<f64> {
    let f = |x: f64| scan_fn(spec, mode, x).0;
    let r = brent_root(f, a, b, spec.root_tol)?;
    Ok(polish(spec, mode, r, a, b))
}

/// Root of the scan derivative near a tangential minimum at `m`.
fn tangential_root(spec: &ProblemSpec, mode: DetMode, m: f64, lo: f64, hi: f64) -> f64 {
    let df = |x: f64| scan_fn(spec, mode, x).1;
    let mut delta = 1e-7 * m.max(1.0);
    while delta < hi - lo {
        let (a, b) = ((m - delta).max(lo), (m + delta).min(hi));
        if df(a) * df(b) <= 0.0 {
            if let Ok(r) = brent_root(df, a, b, spec.root_tol) {
                return r;
            }
        }
        delta *= 8.0;
    }
    m
}

/// Candidate roots whose left bracket sample index lies in `[start, end)`.
/// The sample grid is `λ_i = i·SCAN_STEP`, `i ≥ 1`, so disjoint index
/// windows give disjoint candidate sets and can run independently.
pub fn scan_window(spec: &ProblemSpec, mode: DetMode, start: usize, end: usize) -> Result<Vec<f64>> {
    let start = start.max(1);
    let mut out = Vec::new();
    if end <= start {
        return Ok(out);
    }
    let lam = |i: usize| i as f64 * SCAN_STEP;
    // samples start-1 ..= end+1, index 0 stands in for λ = 0 and is unused
    let vals: Vec<f64> = (start - 1..=end + 1)
        .map(|i| if i == 0 { f64::NAN } else { scan_fn(spec, mode, lam(i)).0 })
        .collect();
    let at = |i: usize| vals[i + 1 - start];
    let crosses = |i: usize| {
        let (a, b) = (at(i), at(i + 1));
        a.is_finite() && b.is_finite() && ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || b == 0.0)
    };
    for i in start..end {
        if crosses(i) {
            out.push(bracketed_root(spec, mode, lam(i), lam(i + 1))?);
            continue;
        }
        if i < 2 {
            continue;
        }
        let (fl, f0, fr) = (at(i - 1), at(i), at(i + 1));
        let local_min = f0.abs() < fl.abs() && f0.abs() <= fr.abs() && f0 != 0.0;
        if !local_min || crosses(i - 1) {
            continue;
        }
        let s = f0.signum();
        let (lo, hi) = (lam(i - 1), lam(i + 1));
        let (m, fm) = brent_min(|x| s * scan_fn(spec, mode, x).0, lo, hi, 1e-10);
        if fm < 0.0 {
            let r1 = bracketed_root(spec, mode, lo, m)?;
            let r2 = bracketed_root(spec, mode, m, hi)?;
            if (r2 - r1).abs() > 1e-9 * r1.max(1.0) {
                out.push(r1);
                out.push(r2);
            } else {
                out.push(tangential_root(spec, mode, m, lo, hi));
            }
        } else {
            out.push(tangential_root(spec, mode, m, lo, hi));
        }
    }
    Ok(out)
}

/// Rank-tests scan candidates and builds modes (unindexed, unsorted).
pub fn resolve_candidates(spec: &ProblemSpec, mut cands: Vec<f64>) -> Result<Vec<EigenMode>> {
    cands.sort_by(f64::total_cmp);
    cands.dedup_by(|b, a| (*b - *a).abs() <= 1e-9 * a.max(1.0));
    let mut modes = Vec::new();
    for lambda in cands {
        let info = rank_defect(&char_system(spec, lambda)?);
        if info.rank(spec.rank_tol) == 2 {
            continue;
        }
        for phi in eigenfunction(spec, lambda)? {
            modes.push(build_mode(spec, phi, info.sigma_min));
        }
    }
    Ok(modes)
}

/// The first `k_max` eigenvalue parameters `λ` (with `λ²` the eigenvalue),
/// sorted and counted with multiplicity.
///
/// Only `λ > SCAN_STEP` is searched, so negative eigenvalues that a
/// non-semidefinite `K` may produce are not reported.
pub fn find_eigenvalues(spec: &ProblemSpec, k_max: usize) -> Result<Vec<EigenMode>> {
    spec.validate()?;
    spec.require_hermitian()?;
    let mode = det_mode(spec)?;
    let limit = ((2 * k_max + 16) as f64 * PI / SCAN_STEP) as usize;
    let mut modes = Vec::new();
    let mut start = 1;
    while modes.len() < k_max {
        if start >= limit {
            return Err(Error::BracketExhausted {
                found: modes.len(),
                wanted: k_max,
                scanned_to: start as f64 * SCAN_STEP,
            });
        }
        let end = (start + WINDOW_SAMPLES).min(limit);
        let cands = scan_window(spec, mode, start, end)?;
        modes.extend(resolve_candidates(spec, cands)?);
        start = end;
    }
    Ok(finalize(modes, k_max))
}

/// Sorts, truncates to `k_max` and assigns 1-based indices.
pub fn finalize(mut modes: Vec<EigenMode>, k_max: usize) -> Vec<EigenMode> {
    modes.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    modes.truncate(k_max);
    for (i, m) in modes.iter_mut().enumerate() {
        m.index = i + 1;
    }
    modes
}

/// `(k, λ_k, λ_k²/(k²π²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylRow {
    pub k: usize,
    pub lambda: f64,
    pub ratio: f64,
}

pub fn weyl_table(modes: &[EigenMode]) -> Vec<WeylRow> {
    modes
        .iter()
        .map(|m| {
            let kp = m.index as f64 * PI;
            WeylRow {
                k: m.index,
                lambda: m.lambda,
                ratio: m.lambda_sq() / (kp * kp),
            }
        })
        .collect()
}

pub fn weyl_report(spec: &ProblemSpec, k_max: usize) -> Result<Vec<WeylRow>> {
    Ok(weyl_table(&find_eigenvalues(spec, k_max)?))
}

/// Outcome of a comparison of two spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monotonicity {
    pub holds: bool,
    /// `max_k (λ_{1,k} - λ_{2,k})`; non-positive when ordering holds.
    pub max_excess: f64,
    pub compared: usize,
}

/// Checks `λ_{1,k} ≤ λ_{2,k} + slack` given `Y₂ ⊆ Y₁` and `K₂ - K₁ ≥ 0`.
pub fn monotonicity_check(spec1: &ProblemSpec, spec2: &ProblemSpec, k_max: usize, slack: f64) -> Result<Monotonicity> {
    check_comparison(spec1, spec2)?;
    let a = find_eigenvalues(spec1, k_max)?;
    let b = find_eigenvalues(spec2, k_max)?;
    Ok(compare_spectra(&a, &b, slack))
}

pub fn compare_spectra(a: &[EigenMode], b: &[EigenMode], slack: f64) -> Monotonicity {
    let mut max_excess = f64::NEG_INFINITY;
    for (x, y) in a.iter().zip(b) {
        max_excess = max_excess.max(x.lambda - y.lambda);
    }
    Monotonicity {
        holds: max_excess <= slack,
        max_excess,
        compared: a.len().min(b.len()),
    }
}

/// The hypotheses of the comparison principle.
pub fn check_comparison(spec1: &ProblemSpec, spec2: &ProblemSpec) -> Result<()> {
    spec1.require_hermitian()?;
    spec2.require_hermitian()?;
    if !spec1.y.contains(&spec2.y) {
        return Err(Error::ComparisonHypothesis("Y2 must be a subspace of Y1"));
    }
    if !spec2.k.sub(&spec1.k).is_psd() {
        return Err(Error::ComparisonHypothesis("K2 - K1 must be positive semidefinite"));
    }
    Ok(())
}

/// The root of `λsinλ + 2cosλ - 2` in `(2kπ, (2k+1)π)`.
pub fn odd_family_root(k: usize, tol: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("odd family starts at k = 1"));
    }
    let spec = ProblemSpec::new(SubspaceY::Zero, constraints::KMatrix::zero());
    let lo = 2.0 * k as f64 * PI;
    let hi = lo + PI;
    let f = |x: f64| x * x.sin() + 2.0 * x.cos() - 2.0;
    // D(2kπ + ε) ≈ 2kπε > 0 and D((2k+1)π) = -4
    let r = brent_root(f, lo + 1e-3, hi, tol)?;
    Ok(polish(&spec, DetMode::Real, r, lo, hi))
}

/// `d_k = ((2k+1)π - λ̂_k)(2k+1)π`.
pub fn odd_gap(k: usize, lambda_hat: f64) -> f64 {
    let top = (2 * k + 1) as f64 * PI;
    (top - lambda_hat) * top
}

/// Fit `d_k ≈ C + B/((2k+1)π)²` through two points; returns `(C, B)`.
pub fn fit_odd_constant(k1: usize, d1: f64, k2: usize, d2: f64) -> (f64, f64) {
    let x1 = ((2 * k1 + 1) as f64 * PI).powi(-2);
    let x2 = ((2 * k2 + 1) as f64 * PI).powi(-2);
    let b = (d1 - d2) / (x1 - x2);
    (d1 - b * x1, b)
}

/// Closed-form `Γ₁` of a mode, for consistency with the characteristic
/// matrices.
pub fn gamma1_from_matrices(phi: &TrigFunction) -> Result<Vec2> {
    let mb = char_matrices(phi.lambda)?.mb();
    Ok([
        phi.c1 * mb[0][0] + phi.c2 * mb[0][1],
        phi.c1 * mb[1][0] + phi.c2 * mb[1][1],
    ])
}

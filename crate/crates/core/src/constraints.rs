//! The `(Y, K)` parametrization: projections onto `Y` and `Y^⊥`, the trace
//! maps `Γ₁`, `Γ₂`, the scalar `c(u)`, the form `a_K` and the operator
//! `A_{Y,K}` in `H⁻¹(T)` coordinates.
//!
//! Membership in the operator domain is written as
//! `KΓ₁u + (c + u(1), u(0) - u(1))ᵀ ∈ Y^⊥`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::bouziani::{self, Hminus1Element};
use crate::grid::{GridFunction, Quadrature};
use crate::trig::TrigFunction;
use crate::{re, Error, Result, C64};

pub type Vec2 = [C64; 2];

const ZERO: C64 = C64::new(0.0, 0.0);

pub(crate) fn dot(a: &Vec2, b: &Vec2) -> C64 {
    a[0] * b[0].conj() + a[1] * b[1].conj()
}

pub(crate) fn norm2(a: &Vec2) -> f64 {
    (a[0].norm_sqr() + a[1].norm_sqr()).sqrt()
}

/// A subspace of `ℂ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubspaceY {
    Zero,
    Full,
    /// `span{(x, y)}` with `|x|² + |y|² = 1`.
    Line(Vec2),
}

impl SubspaceY {
    /// Line through `(x, y)`; the direction is normalized.
    pub fn line(x: C64, y: C64) -> Result<Self> {
        let len = norm2(&[x, y]);
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::DegenerateDirection);
        }
        Ok(SubspaceY::Line([x / len, y / len]))
    }

    /// `ℂ × {0}`.
    pub fn first_axis() -> Self {
        SubspaceY::Line([re(1.0), ZERO])
    }

    /// `{0} × ℂ`.
    pub fn second_axis() -> Self {
        SubspaceY::Line([ZERO, re(1.0)])
    }

    pub fn dim(&self) -> usize {
        match self {
            SubspaceY::Zero => 0,
            SubspaceY::Full => 2,
            SubspaceY::Line(_) => 1,
        }
    }

    pub fn proj(&self, v: Vec2) -> Vec2 {
        match self {
            SubspaceY::Zero => [ZERO, ZERO],
            SubspaceY::Full => v,
            SubspaceY::Line(d) => {
                let beta = d[0].conj() * v[0] + d[1].conj() * v[1];
                [beta * d[0], beta * d[1]]
            }
        }
    }

    pub fn proj_perp(&self, v: Vec2) -> Vec2 {
        let p = self.proj(v);
        [v[0] - p[0], v[1] - p[1]]
    }

    /// Whether the ambient space `H_Y` is the zero-mean space `H` rather
    /// than all of `H⁻¹(T)`; true for `{0}²` and `{0} × ℂ`.
    pub fn mean_zero_ambient(&self) -> bool {
        match self {
            SubspaceY::Zero => true,
            SubspaceY::Full => false,
            SubspaceY::Line(d) => d[0].norm() <= 1e-14,
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &SubspaceY) -> bool {
        match (self, other) {
            (_, SubspaceY::Zero) | (SubspaceY::Full, _) => true,
            (SubspaceY::Zero, _) | (SubspaceY::Line(_), SubspaceY::Full) => false,
            (SubspaceY::Line(a), SubspaceY::Line(b)) => (1.0 - dot(a, b).norm()).abs() <= 1e-12,
        }
    }
}

/// A `2×2` complex coupling matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMatrix(pub [[C64; 2]; 2]);

impl KMatrix {
    pub fn zero() -> Self {
        KMatrix([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        KMatrix([[re(1.0), ZERO], [ZERO, re(1.0)]])
    }

    pub fn real(k: [[f64; 2]; 2]) -> Self {
        KMatrix([
            [re(k[0][0]), re(k[0][1])],
            [re(k[1][0]), re(k[1][1])],
        ])
    }

    pub fn scaled(&self, a: f64) -> Self {
        let k = self.0;
        KMatrix([[k[0][0] * a, k[0][1] * a], [k[1][0] * a, k[1][1] * a]])
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        let k = &self.0;
        [k[0][0] * v[0] + k[0][1] * v[1], k[1][0] * v[0] + k[1][1] * v[1]]
    }

    pub fn sub(&self, other: &KMatrix) -> KMatrix {
        let (a, b) = (&self.0, &other.0);
        KMatrix([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }

    /// `max |K - K*|` over entries.
    pub fn hermitian_defect(&self) -> f64 {
        let k = &self.0;
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((k[i][j] - k[j][i].conj()).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= 1e-14
    }

    /// Eigenvalues of the hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let k = &self.0;
        let a = k[0][0].re;
        let d = k[1][1].re;
        let b = (k[0][1] + k[1][0].conj()) * 0.5;
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mid - rad, mid + rad]
    }

    pub fn is_psd(&self) -> bool {
        let scale = self.0.iter().flatten().map(|v| v.norm()).fold(1.0, f64::max);
        self.is_hermitian() && self.hermitian_eigenvalues()[0] >= -1e-12 * scale
    }
}

/// Immutable description of one problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub y: SubspaceY,
    pub k: KMatrix,
    /// Grid subintervals for all grid-based operations.
    pub n: usize,
    pub quadrature: Quadrature,
    /// Absolute tolerance for polished eigenvalue parameters.
    pub root_tol: f64,
    /// Relative `σ_min` threshold for the rank test.
    pub rank_tol: f64,
    /// Threshold on `‖P_{Y^⊥}Γ₁u‖` for constraint membership.
    pub feasibility_tol: f64,
}

impl ProblemSpec {
    pub fn new(y: SubspaceY, k: KMatrix) -> Self {
        ProblemSpec {
            y,
            k,
            n: 512,
            quadrature: Quadrature::Simpson,
            root_tol: 1e-12,
            rank_tol: 1e-9,
            feasibility_tol: 1e-8,
        }
    }

    pub fn with_grid(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 8 || self.n % 2 != 0 {
            return Err(Error::InvalidGrid(self.n));
        }
        for (v, what) in [
            (self.root_tol, "root tolerance must be > 0"),
            (self.rank_tol, "rank tolerance must be > 0"),
            (self.feasibility_tol, "feasibility tolerance must be > 0"),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(what));
            }
        }
        if self.k.0.iter().flatten().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidParameter("K entries must be finite"));
        }
        Ok(())
    }

    pub fn require_hermitian(&self) -> Result<()> {
        if self.k.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NonHermitian {
                defect: self.k.hermitian_defect(),
            })
        }
    }
}

/// Access to moments, endpoint values and boundary derivatives.
pub trait BoundaryData {
    /// `Γ₁u = (μ₀(u), μ₁(u))`.
    fn gamma1(&self, q: Quadrature) -> Vec2;
    /// `(u(0), u(1))`.
    fn endpoints(&self) -> (C64, C64);
    /// `(u'(0), u'(1))`.
    fn boundary_slopes(&self) -> Result<(C64, C64)>;
    /// Nodal samples of `u'` on `n` subintervals.
    fn derivative_samples(&self, n: usize) -> Result<GridFunction>;
}

impl BoundaryData for GridFunction {
    fn gamma1(&self, q: Quadrature) -> Vec2 {
        [bouziani::mu0(self, q), bouziani::mu1(self, q)]
    }

    fn endpoints(&self) -> (C64, C64) {
        (self.first(), self.last())
    }

    fn boundary_slopes(&self) -> Result<(C64, C64)> {
        if let Some(&j) = self.kinks().first() {
            return Err(Error::NonSmooth {
                location: self.x(j),
                disagreement: f64::INFINITY,
            });
        }
        self.boundary_derivatives()
    }

    fn derivative_samples(&self, n: usize) -> Result<GridFunction> {
        if n != self.n() {
            return Err(Error::GridMismatch {
                left: self.n(),
                right: n,
            });
        }
        Ok(self.derivative()?.values)
    }
}

impl BoundaryData for TrigFunction {
    fn gamma1(&self, _q: Quadrature) -> Vec2 {
        [self.mu0(), self.mu1()]
    }

    fn endpoints(&self) -> (C64, C64) {
        (self.value(0.0), self.value(1.0))
    }

    fn boundary_slopes(&self) -> Result<(C64, C64)> {
        Ok((self.derivative(1, 0.0), self.derivative(1, 1.0)))
    }

    fn derivative_samples(&self, n: usize) -> Result<GridFunction> {
        self.sample_derivative(1, n)
    }
}

pub fn gamma1<U: BoundaryData + ?Sized>(u: &U, q: Quadrature) -> Vec2 {
    u.gamma1(q)
}

/// `Γ₂u = (-μ₀(u'') - u(1), u(1) - u(0))` with `μ₀(u'') = u'(1) - u'(0)`.
pub fn gamma2<U: BoundaryData + ?Sized>(u: &U) -> Result<Vec2> {
    let (d0, d1) = u.boundary_slopes()?;
    let (u0, u1) = u.endpoints();
    Ok([-(d1 - d0) - u1, u1 - u0])
}

/// `‖P_{Y^⊥} Γ₁u‖`; membership in `V_Y` means this is below tolerance.
pub fn feasibility<U: BoundaryData + ?Sized>(u: &U, spec: &ProblemSpec) -> f64 {
    norm2(&spec.y.proj_perp(u.gamma1(spec.quadrature)))
}

/// The vector `KΓ₁u + (u(1), u(0) - u(1))` whose `Y`-part fixes `c(u)`.
fn boundary_vector<U: BoundaryData + ?Sized>(u: &U, spec: &ProblemSpec) -> Vec2 {
    let kg = spec.k.apply(u.gamma1(spec.quadrature));
    let (u0, u1) = u.endpoints();
    [kg[0] + u1, kg[1] + u0 - u1]
}

/// The scalar `c(u)` making `P_Y(KΓ₁u + (c + u(1), u(0) - u(1))) = 0`.
///
/// When `P_Y e₁ = 0` (for `{0}²` and `{0} × ℂ`) `c` does not enter the
/// condition and is `0`. Otherwise it is the least-squares solution, which
/// is exact for `ℂ × ...` lines and for `ℂ²` whenever `u` is in the domain.
pub fn c_functional<U: BoundaryData + ?Sized>(u: &U, spec: &ProblemSpec) -> C64 {
    let e = spec.y.proj([re(1.0), ZERO]);
    let ee = e[0].norm_sqr() + e[1].norm_sqr();
    if ee <= 1e-28 {
        return ZERO;
    }
    let pv = spec.y.proj(boundary_vector(u, spec));
    -dot(&pv, &e) / ee
}

/// `‖P_Y(KΓ₁u + (c(u) + u(1), u(0) - u(1)))‖`: zero iff `u` satisfies the
/// boundary part of the domain condition.
pub fn domain_residual<U: BoundaryData + ?Sized>(u: &U, spec: &ProblemSpec) -> f64 {
    let c = c_functional(u, spec);
    let v = boundary_vector(u, spec);
    norm2(&spec.y.proj([v[0] + c, v[1]]))
}

/// Value of `a_K(f, g)` with the worse infeasibility of its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormValue {
    pub value: C64,
    pub infeasibility: f64,
}

impl FormValue {
    pub fn is_feasible(&self, tol: f64) -> bool {
        self.infeasibility <= tol
    }
}

/// `a_K(f, g) = (f|g)_{L²} + (KΓ₁f|Γ₁g)_{ℂ²}`.
pub fn form_ak(f: &GridFunction, g: &GridFunction, spec: &ProblemSpec) -> Result<FormValue> {
    let q = spec.quadrature;
    let l2 = f.l2_inner(g, q)?;
    let gf = f.gamma1(q);
    let gg = g.gamma1(q);
    Ok(FormValue {
        value: l2 + dot(&spec.k.apply(gf), &gg),
        infeasibility: feasibility(f, spec).max(feasibility(g, spec)),
    })
}

/// `A_{Y,K}u = -Id_m⁻¹(u'') - c(u)δ₁` in coordinates:
/// `p = -(u' - (u(1) - u(0)))`, `m0 = -c(u)`.
pub fn apply_a<U: BoundaryData + ?Sized>(u: &U, spec: &ProblemSpec) -> Result<Hminus1Element> {
    let du = u.derivative_samples(spec.n)?;
    let (u0, u1) = u.endpoints();
    let p = du.shift(-(u1 - u0)).scale(re(-1.0));
    Ok(Hminus1Element::new(p, -c_functional(u, spec), spec.quadrature))
}

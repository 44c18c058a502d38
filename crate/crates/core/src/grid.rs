//! Uniform grids on `[0, 1]` and the quadrature/differentiation kernels that
//! operate on them.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{re, Error, Result, C64};

/// Composite quadrature rule used for integrals over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    Trapezoid,
    #[default]
    Simpson,
}

impl Quadrature {
    /// Integrate samples on a uniform grid with spacing `h`.
    ///
    /// Simpson needs an even number of subintervals; callers go through
    /// [`GridFunction`], which guarantees it.
    pub fn integrate(self, values: &[C64], h: f64) -> C64 {
        let n = values.len() - 1;
        match self {
            Quadrature::Trapezoid => {
                let inner: C64 = values[1..n].iter().sum();
                (inner + (values[0] + values[n]) * 0.5) * h
            }
            Quadrature::Simpson => {
                let mut odd = C64::new(0.0, 0.0);
                let mut even = C64::new(0.0, 0.0);
                for (j, v) in values.iter().enumerate().take(n).skip(1) {
                    if j % 2 == 1 {
                        odd += v;
                    } else {
                        even += v;
                    }
                }
                (values[0] + values[n] + odd * 4.0 + even * 2.0) * (h / 3.0)
            }
        }
    }

    /// Integral of `f · conj(g)` for equally sized sample slices.
    pub fn inner(self, f: &[C64], g: &[C64], h: f64) -> C64 {
        let prod: Vec<C64> = f.iter().zip(g).map(|(a, b)| a * b.conj()).collect();
        self.integrate(&prod, h)
    }
}

/// Complex samples `u(x_j)` at `x_j = j/n`, `j = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<C64>,
}

impl GridFunction {
    pub fn new(values: Vec<C64>) -> Result<Self> {
        let n = values.len().saturating_sub(1);
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidGrid(n));
        }
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(GridFunction { n, values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![C64::new(0.0, 0.0); n + 1])
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        let h = 1.0 / n as f64;
        Self::new((0..=n).map(|j| f(j as f64 * h)).collect())
    }

    pub fn from_real_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(n, |x| re(f(x)))
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.n as f64
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn first(&self) -> C64 {
        self.values[0]
    }

    pub fn last(&self) -> C64 {
        self.values[self.n]
    }

    pub fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(f64, C64) -> C64) -> GridFunction {
        let h = self.h();
        GridFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(j, &v)| f(j as f64 * h, v))
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> GridFunction {
        self.map(|_, v| v * c)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C64, other: &GridFunction, b: C64) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        Ok(GridFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(u, v)| a * u + b * v)
                .collect(),
        })
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.combine(re(1.0), other, re(1.0))
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.combine(re(1.0), other, re(-1.0))
    }

    pub fn shift(&self, c: C64) -> GridFunction {
        self.map(|_, v| v + c)
    }

    pub fn integral(&self, q: Quadrature) -> C64 {
        q.integrate(&self.values, self.h())
    }

    /// `(self | other)_{L²}`.
    pub fn l2_inner(&self, other: &GridFunction, q: Quadrature) -> Result<C64> {
        self.check_same_grid(other)?;
        Ok(q.inner(&self.values, &other.values, self.h()))
    }

    pub fn l2_norm(&self, q: Quadrature) -> f64 {
        q.inner(&self.values, &self.values, self.h()).re.max(0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == C64::new(0.0, 0.0))
    }

    /// Cumulative integral `∫₀^{x_j} u` at every node.
    ///
    /// With [`Quadrature::Simpson`] each cell uses the cubic through four
    /// neighbouring nodes (trapezoid plus a second-difference correction),
    /// which is exact for cubics and fourth-order accurate.
    pub fn cumulative(&self, q: Quadrature) -> GridFunction {
        let n = self.n;
        let h = self.h();
        let f = &self.values;
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = C64::new(0.0, 0.0);
        out.push(acc);
        for j in 0..n {
            let cell = if q == Quadrature::Trapezoid || n < 3 {
                (f[j] + f[j + 1]) * (h / 2.0)
            } else if j == 0 {
                (f[0] * 9.0 + f[1] * 19.0 - f[2] * 5.0 + f[3]) * (h / 24.0)
            } else if j == n - 1 {
                (f[n - 3] - f[n - 2] * 5.0 + f[n - 1] * 19.0 + f[n] * 9.0) * (h / 24.0)
            } else {
                ((f[j] + f[j + 1]) * 13.0 - f[j - 1] - f[j + 2]) * (h / 24.0)
            };
            acc += cell;
            out.push(acc);
        }
        GridFunction { n, values: out }
    }

    /// Locate interior nodes where the samples have a slope discontinuity.
    ///
    /// A node is flagged when its second difference dominates the second
    /// differences two and three nodes away on both sides.
    pub fn kinks(&self) -> Vec<usize> {
        let n = self.n;
        let f = &self.values;
        if n < 4 {
            return Vec::new();
        }
        let h = self.h();
        let d2: Vec<f64> = (1..n)
            .map(|j| (f[j + 1] - f[j] * 2.0 + f[j - 1]).norm())
            .collect();
        let scale_u = self.max_abs();
        let scale_du = (0..n)
            .map(|j| (f[j + 1] - f[j]).norm() / h)
            .fold(0.0, f64::max);
        let floor = 1e-7 * h * (scale_du + scale_u) + f64::MIN_POSITIVE;
        let mut out = Vec::new();
        for j in 1..n {
            let here = d2[j - 1];
            if here <= floor {
                continue;
            }
            let mut background: f64 = 0.0;
            for off in [2usize, 3] {
                if j > off {
                    background = background.max(d2[j - off - 1]);
                }
                if j + off < n {
                    background = background.max(d2[j + off - 1]);
                }
            }
            if here > 20.0 * background + floor {
                out.push(j);
            }
        }
        out
    }

    /// Nodal derivative by five-point stencils confined to smooth pieces.
    ///
    /// Isolated kinks at nodes split the grid into pieces; at a kink node the
    /// value is the average of the one-sided limits, which keeps composite
    /// Simpson fourth-order when the kink sits on an even node. Kinks at
    /// adjacent nodes, or pieces shorter than four cells, are rejected.
    pub fn derivative(&self) -> Result<Derivative> {
        let n = self.n;
        if n < 4 {
            return Err(Error::InvalidGrid(n));
        }
        let kinks = self.kinks();
        for w in kinks.windows(2) {
            if w[1] - w[0] < 4 {
                return Err(Error::NonSmooth {
                    location: self.x(w[0]),
                    disagreement: f64::INFINITY,
                });
            }
        }
        let mut bounds = Vec::with_capacity(kinks.len() + 2);
        bounds.push(0usize);
        bounds.extend_from_slice(&kinks);
        bounds.push(n);
        for w in bounds.windows(2) {
            if w[1] - w[0] < 4 {
                return Err(Error::NonSmooth {
                    location: self.x(w[0]),
                    disagreement: f64::INFINITY,
                });
            }
        }
        let mut d = vec![C64::new(0.0, 0.0); n + 1];
        for w in bounds.windows(2) {
            let (s, e) = (w[0], w[1]);
            for (j, slot) in d.iter_mut().enumerate().take(e + 1).skip(s) {
                let val = self.stencil(j, s, e);
                if (j == s && s != 0) || (j == e && e != n) {
                    // kink node: shared between two pieces
                    *slot += val * 0.5;
                } else {
                    *slot = val;
                }
            }
        }
        Ok(Derivative {
            values: GridFunction { n, values: d },
            kinks,
        })
    }

    fn stencil(&self, j: usize, s: usize, e: usize) -> C64 {
        const W: [[f64; 5]; 5] = [
            [-25.0, 48.0, -36.0, 16.0, -3.0],
            [-3.0, -10.0, 18.0, -6.0, 1.0],
            [1.0, -8.0, 0.0, 8.0, -1.0],
            [-1.0, 6.0, -18.0, 10.0, 3.0],
            [3.0, -16.0, 36.0, -48.0, 25.0],
        ];
        let start = j.saturating_sub(2).clamp(s, e - 4);
        let t = j - start;
        let scale = 1.0 / (12.0 * self.h());
        (0..5)
            .map(|i| self.values[start + i] * W[t][i])
            .sum::<C64>()
            * scale
    }

    /// One-sided derivatives at both ends, cross-checked between a five-point
    /// and a four-point stencil.
    pub fn boundary_derivatives(&self) -> Result<(C64, C64)> {
        let n = self.n;
        if n < 4 {
            return Err(Error::InvalidGrid(n));
        }
        let f = &self.values;
        let h = self.h();
        let d5_left = self.stencil(0, 0, n);
        let d5_right = self.stencil(n, 0, n);
        let d4_left = (f[0] * -11.0 + f[1] * 18.0 - f[2] * 9.0 + f[3] * 2.0) / (6.0 * h);
        let d4_right = (f[n] * 11.0 - f[n - 1] * 18.0 + f[n - 2] * 9.0 - f[n - 3] * 2.0) / (6.0 * h);
        let scale = self.max_abs()
            + (0..n)
                .map(|j| (f[j + 1] - f[j]).norm() / h)
                .fold(0.0, f64::max);
        for (loc, a, b) in [(0.0, d5_left, d4_left), (1.0, d5_right, d4_right)] {
            let gap = (a - b).norm();
            if gap > 1e-2 * scale + 1e-12 {
                return Err(Error::NonSmooth {
                    location: loc,
                    disagreement: gap,
                });
            }
        }
        Ok((d5_left, d5_right))
    }
}

/// Output of [`GridFunction::derivative`].
#[derive(Debug, Clone)]
pub struct Derivative {
    pub values: GridFunction,
    /// Nodes where a slope discontinuity was detected.
    pub kinks: Vec<usize>,
}

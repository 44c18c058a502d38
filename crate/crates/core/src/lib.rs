//! Spectral theory and evolution for `-u''` on `(0, 1)` under non-local
//! moment constraints.
//!
//! The constraint class is parametrized by a subspace `Y` of `ℂ²` and a
//! `2×2` matrix `K`: the moment vector `Γ₁u = (∫u, ∫(1-x)u)` must lie in `Y`,
//! and the remaining degrees of freedom are coupled through the form
//! `a_K(f, g) = (f|g)_{L²} + (KΓ₁f|Γ₁g)`. The natural ambient Hilbert space
//! is `H⁻¹` of the torus, represented here through the zero-mean primitive
//! operator `P` and the mean `μ₀`.
//!
//! Modules:
//! - [`grid`], [`trig`]: function carriers (grid samples, closed-form modes)
//! - [`bouziani`]: quadrature, `P`, moments and the `H⁻¹(T)` inner product
//! - [`constraints`]: `(Y, K)` algebra, trace maps, the form and the operator
//! - [`spectral`]: characteristic matrices, eigenvalue search, asymptotics
//! - [`evolution`]: heat and wave flows by eigenfunction expansion
//! - [`oracle`]: independent Legendre–Galerkin discretization
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// Each `use num_traits::Float` carries an allow: when a dev-dependency
// pulls std into the graph, std's inherent float methods shadow the trait
// and the import looks unused.

extern crate alloc;

pub mod bouziani;
pub mod constraints;
pub mod evolution;
pub mod grid;
pub mod legendre;
pub mod linalg;
pub mod oracle;
pub mod roots;
pub mod spectral;
pub mod trig;

mod error;

pub use error::Error;
pub use num_complex::Complex64 as C64;

pub use bouziani::Hminus1Element;
pub use constraints::{KMatrix, ProblemSpec, SubspaceY};
pub use evolution::{ModalCoefficients, SolutionTrace};
pub use grid::{GridFunction, Quadrature};
pub use spectral::EigenMode;
pub use trig::TrigFunction;

pub type Result<T> = core::result::Result<T, Error>;

/// Shorthand for a real number as a complex value.
#[inline]
pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

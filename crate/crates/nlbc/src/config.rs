//! JSON run configuration.
//!
//! Complex numbers are `[re, im]` pairs throughout. Unknown keys are
//! rejected at every level.

use std::path::{Path, PathBuf};

use nlbc_core::constraints::{KMatrix, ProblemSpec, SubspaceY};
use nlbc_core::{Quadrature, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub type Cx = [f64; 2];

pub fn cx(v: Cx) -> C64 {
    C64::new(v[0], v[1])
}

fn uncx(v: C64) -> Cx {
    [v.re, v.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub problem: ProblemConfig,
    pub task: TaskConfig,
    /// Output directory; `--out` wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Seed for randomized test data; `--seed` wins.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum YConfig {
    Zero {},
    Full {},
    Line { direction: [Cx; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureName {
    Simpson,
    Trapezoid,
}

fn default_k() -> [[Cx; 2]; 2] {
    [[[0.0, 0.0]; 2]; 2]
}
fn default_n() -> usize {
    512
}
fn default_root_tol() -> f64 {
    1e-12
}
fn default_rank_tol() -> f64 {
    1e-9
}
fn default_feasibility_tol() -> f64 {
    1e-8
}
fn default_quadrature() -> QuadratureName {
    QuadratureName::Simpson
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub y: YConfig,
    #[serde(default = "default_k")]
    pub k: [[Cx; 2]; 2],
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_quadrature")]
    pub quadrature: QuadratureName,
    #[serde(default = "default_root_tol")]
    pub root_tol: f64,
    #[serde(default = "default_rank_tol")]
    pub rank_tol: f64,
    #[serde(default = "default_feasibility_tol")]
    pub feasibility_tol: f64,
}

impl ProblemConfig {
    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let y = match &self.y {
            YConfig::Zero {} => SubspaceY::Zero,
            YConfig::Full {} => SubspaceY::Full,
            YConfig::Line { direction } => SubspaceY::line(cx(direction[0]), cx(direction[1]))?,
        };
        let k = KMatrix([
            [cx(self.k[0][0]), cx(self.k[0][1])],
            [cx(self.k[1][0]), cx(self.k[1][1])],
        ]);
        let spec = ProblemSpec {
            y,
            k,
            n: self.n,
            quadrature: match self.quadrature {
                QuadratureName::Simpson => Quadrature::Simpson,
                QuadratureName::Trapezoid => Quadrature::Trapezoid,
            },
            root_tol: self.root_tol,
            rank_tol: self.rank_tol,
            feasibility_tol: self.feasibility_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_spec(spec: &ProblemSpec) -> Self {
        let y = match spec.y {
            SubspaceY::Zero => YConfig::Zero {},
            SubspaceY::Full => YConfig::Full {},
            SubspaceY::Line(d) => YConfig::Line {
                direction: [uncx(d[0]), uncx(d[1])],
            },
        };
        let k = spec.k.0;
        ProblemConfig {
            y,
            k: [[uncx(k[0][0]), uncx(k[0][1])], [uncx(k[1][0]), uncx(k[1][1])]],
            n: spec.n,
            quadrature: match spec.quadrature {
                Quadrature::Simpson => QuadratureName::Simpson,
                Quadrature::Trapezoid => QuadratureName::Trapezoid,
            },
            root_tol: spec.root_tol,
            rank_tol: spec.rank_tol,
            feasibility_tol: spec.feasibility_tol,
        }
    }
}

fn default_modes() -> usize {
    50
}
fn default_degree() -> usize {
    40
}
fn default_verify_k() -> usize {
    20
}
fn one() -> Cx {
    [1.0, 0.0]
}

/// Cross-check of an evolution against the Galerkin oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "default_degree")]
    pub degree: usize,
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TaskConfig {
    Spectrum {
        k_max: usize,
    },
    Heat {
        #[serde(default = "default_modes")]
        n_modes: usize,
        times: Vec<f64>,
        initial: InitialData,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleConfig>,
    },
    Wave {
        #[serde(default = "default_modes")]
        n_modes: usize,
        times: Vec<f64>,
        initial: InitialData,
        #[serde(default = "InitialData::zero")]
        velocity: InitialData,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<OracleConfig>,
    },
    Weyl {
        k_max: usize,
    },
    Verify {
        #[serde(default = "default_verify_k")]
        k_max: usize,
    },
    Compare {
        k_max: usize,
        /// Second problem for the ordering check; the configured problem
        /// plays the role of `(Y₁, K₁)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        against: Option<ProblemConfig>,
        #[serde(default = "default_degree")]
        degree: usize,
    },
}

impl TaskConfig {
    pub fn name(&self) -> &'static str {
        match self {
            TaskConfig::Spectrum { .. } => "spectrum",
            TaskConfig::Heat { .. } => "heat",
            TaskConfig::Wave { .. } => "wave",
            TaskConfig::Weyl { .. } => "weyl",
            TaskConfig::Verify { .. } => "verify",
            TaskConfig::Compare { .. } => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialData {
    Zero {},
    /// `scale · φ_index` (1-based).
    Mode {
        index: usize,
        #[serde(default = "one")]
        scale: Cx,
    },
    /// `Σ cos[k]·cos(2πkx) + sin[k]·sin(2πkx)`.
    Trig {
        #[serde(default)]
        cos: Vec<Cx>,
        #[serde(default)]
        sin: Vec<Cx>,
    },
    /// `Σ coeffs[j]·x^j`.
    Poly { coeffs: Vec<Cx> },
    /// Grid samples with columns `re` and optional `im`, `n + 1` rows.
    Csv { path: PathBuf },
}

impl InitialData {
    pub fn zero() -> Self {
        InitialData::Zero {}
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

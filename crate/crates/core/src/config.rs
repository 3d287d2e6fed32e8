//! Simulation configuration.
//!
//! Configs are TOML: flat `key = value` lines grouped in sections. Unknown
//! keys are rejected. Example:
//!
//! ```toml
//! [grid]
//! n = 16
//! box_length = 6.283185307179586
//!
//! [time]
//! dt = 0.05
//! steps = 200
//! sample_every = 10
//!
//! [solver]
//! kind = "spectral"        # spectral | rk4_curl | fdtd_oracle
//!
//! [initial]
//! kind = "plane_wave"      # plane_wave | gaussian_packet | random_transverse | em_snapshot
//! mode = [0, 0, 1]
//! helicity = 1
//! amplitude = [1.0, 0.0]
//!
//! [output]
//! dir = "out"
//! snapshots = false
//! ```
//!
//! The `compare` command additionally reads a `[compare]` section with
//! `levels`, `final_time` and `courant`.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::evolve::SolverKind;
use crate::field::{self, ComplexVectorField, Helicity, PlaneWaveSpec};
use crate::grid::Grid;
use crate::io;
use crate::spintensor::DEFAULT_C_NORM;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n: usize,
    pub box_length: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub dt: f64,
    pub steps: usize,
    #[serde(default = "one")]
    pub sample_every: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub kind: SolverKind,
    /// Skip the RK4 / Courant stability checks.
    #[serde(default)]
    pub allow_unstable: bool,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            kind: SolverKind::Spectral,
            allow_unstable: false,
        }
    }
}

/// Initial state of `ψ`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    PlaneWave {
        mode: [i64; 3],
        helicity: i64,
        #[serde(default = "unit_amplitude")]
        amplitude: [f64; 2],
    },
    GaussianPacket {
        center_mode: [i64; 3],
        width: f64,
        helicity: i64,
    },
    RandomTransverse {
        seed: u64,
        cutoff: f64,
    },
    /// A field snapshot file; its `ψ` packs `E = Re ψ`, `B = −Im ψ`.
    EmSnapshot {
        path: PathBuf,
    },
}

fn unit_amplitude() -> [f64; 2] {
    [1.0, 0.0]
}

impl InitialCondition {
    /// Builds the initial field. Relative snapshot paths resolve against
    /// `base_dir`.
    pub fn build(&self, grid: &Grid, base_dir: &Path) -> Result<ComplexVectorField> {
        match self {
            InitialCondition::PlaneWave { mode, helicity, amplitude } => {
                let spec = PlaneWaveSpec {
                    mode: *mode,
                    helicity: Helicity::from_sign(*helicity)?,
                    amplitude: Complex64::new(amplitude[0], amplitude[1]),
                };
                field::make_plane_wave(&spec, grid)
            }
            InitialCondition::GaussianPacket { center_mode, width, helicity } => {
                field::make_gaussian_packet(*center_mode, *width, Helicity::from_sign(*helicity)?, grid)
            }
            InitialCondition::RandomTransverse { seed, cutoff } => field::random_transverse_field(*seed, grid, *cutoff),
            InitialCondition::EmSnapshot { path } => {
                let p = if path.is_absolute() { path.clone() } else { base_dir.join(path) };
                let snap = io::read_snapshot(&p)?;
                if snap.psi.grid() != grid {
                    return Err(Error::Config(format!(
                        "snapshot grid (n = {}, L = {}) does not match [grid] (n = {}, L = {})",
                        snap.psi.grid().n(),
                        snap.psi.grid().box_length(),
                        grid.n(),
                        grid.box_length()
                    )));
                }
                Ok(snap.psi)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    /// Write a field snapshot at every sample.
    #[serde(default)]
    pub snapshots: bool,
}

fn default_dir() -> PathBuf {
    PathBuf::from(".")
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            snapshots: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    /// Grid sizes, coarse to fine.
    pub levels: Vec<usize>,
    pub final_time: f64,
    /// `dt = courant · dx / √3`, rounded down so the final time is hit exactly.
    #[serde(default = "default_courant")]
    pub courant: f64,
}

fn default_courant() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub grid: GridSection,
    pub time: Option<TimeSection>,
    #[serde(default)]
    pub solver: SolverSection,
    pub initial: InitialCondition,
    #[serde(default)]
    pub output: OutputSection,
    pub compare: Option<CompareSection>,
    #[serde(default = "default_c_norm")]
    pub c_norm: f64,
    /// Directory used to resolve relative paths; set by [`SimulationConfig::from_file`].
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_c_norm() -> f64 {
    DEFAULT_C_NORM
}

impl SimulationConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let mut cfg: SimulationConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.base_dir = PathBuf::from(".");
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.n, self.grid.box_length).map_err(|e| Error::Config(format!("[grid] {e}")))
    }

    /// Output directory, resolved against the config's directory.
    pub fn output_dir(&self) -> PathBuf {
        if self.output.dir.is_absolute() {
            self.output.dir.clone()
        } else {
            self.base_dir.join(&self.output.dir)
        }
    }

    /// Checks everything an `evolve` run needs; returns every problem found.
    pub fn validate_run(&self) -> Result<()> {
        let mut problems = Vec::new();
        self.common_problems(&mut problems);
        match &self.time {
            None => problems.push("missing [time] section".to_string()),
            Some(t) => {
                if !(t.dt > 0.0 && t.dt.is_finite()) {
                    problems.push(format!("time.dt must be positive, got {}", t.dt));
                }
                if t.sample_every == 0 {
                    problems.push("time.sample_every must be >= 1".to_string());
                }
            }
        }
        finish(problems)
    }

    /// Checks everything a `compare` run needs.
    pub fn validate_compare(&self) -> Result<()> {
        let mut problems = Vec::new();
        self.common_problems(&mut problems);
        match &self.compare {
            None => problems.push("missing [compare] section".to_string()),
            Some(c) => {
                if c.levels.len() < 3 {
                    problems.push(format!("compare.levels: need >= 3 levels, got {}", c.levels.len()));
                }
                if c.levels.windows(2).any(|w| w[1] <= w[0]) {
                    problems.push("compare.levels must be strictly increasing".to_string());
                }
                for &n in &c.levels {
                    if let Err(e) = Grid::new(n, self.grid.box_length) {
                        problems.push(format!("compare.levels: {e}"));
                    }
                }
                if !(c.final_time > 0.0 && c.final_time.is_finite()) {
                    problems.push(format!("compare.final_time must be positive, got {}", c.final_time));
                }
                if !(c.courant > 0.0 && c.courant <= 1.0) {
                    problems.push(format!("compare.courant must be in (0, 1], got {}", c.courant));
                }
            }
        }
        finish(problems)
    }

    fn common_problems(&self, problems: &mut Vec<String>) {
        if let Err(e) = Grid::new(self.grid.n, self.grid.box_length) {
            problems.push(format!("[grid] {e}"));
        }
        if !(self.c_norm > 0.0 && self.c_norm.is_finite()) {
            problems.push(format!("c_norm must be positive, got {}", self.c_norm));
        }
        match &self.initial {
            InitialCondition::PlaneWave { helicity, .. } | InitialCondition::GaussianPacket { helicity, .. } => {
                if Helicity::from_sign(*helicity).is_err() {
                    problems.push(format!("initial.helicity must be 1 or -1, got {helicity}"));
                }
            }
            InitialCondition::RandomTransverse { cutoff, .. } => {
                if !(*cutoff >= 1.0) {
                    problems.push(format!("initial.cutoff must be >= 1, got {cutoff}"));
                }
            }
            InitialCondition::EmSnapshot { .. } => {}
        }
        if let InitialCondition::GaussianPacket { width, .. } = &self.initial {
            if !(*width > 0.0) {
                problems.push(format!("initial.width must be positive, got {width}"));
            }
        }
    }
}

fn finish(problems: Vec<String>) -> Result<()> {
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(problems.join("; ")))
    }
}

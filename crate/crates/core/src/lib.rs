//! Photon wave function electrodynamics.
//!
//! The electromagnetic field is packaged as `ψ = E − iB`, which obeys the
//! first-order equation `∂ψ/∂t = i∇×ψ` with `∇·ψ = 0` in vacuum. This crate
//! provides:
//!
//! - [`exactalg`]: exact Gaussian-rational matrices (`α`, `γ`, Pauli) and an
//!   identity suite for their commutation and Clifford relations;
//! - [`spintensor`]: rank-`(k, r)` spintensors, symmetrization, the
//!   Clebsch–Gordan split, and spinor-form residuals of the Maxwell and Dirac
//!   systems;
//! - [`field`]: `ψ` on a periodic grid with helicity bases, constructors and
//!   diagnostics;
//! - [`evolve`]: exact spectral, RK4 finite-difference and Yee leapfrog
//!   solvers with cross-solver comparison;
//! - [`gelfand_yaglom`]: first-order wave operators, Lagrangian densities,
//!   Noether current and variational checks.

pub mod config;
pub mod error;
pub mod evolve;
pub mod exactalg;
pub mod fft;
pub mod field;
pub mod gelfand_yaglom;
pub mod grid;
pub mod io;
pub mod reduce;
pub mod report;
pub mod spintensor;
pub mod verify;

pub use error::{Error, Result};
pub use field::{ComplexVectorField, EMField, Helicity, ModeField};
pub use grid::Grid;
pub use num_complex::Complex64;

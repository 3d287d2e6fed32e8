//! Time evolution of `ψ` under `∂ψ/∂t = i∇×ψ`.
//!
//! Three independent schemes:
//!
//! - [`step_spectral`]: exact per-mode propagation. In mode space the
//!   equation reads `∂ψ̂/∂t = −k × ψ̂`, whose flow is a rotation about `k̂` by
//!   angle `−|k|t`; see [`rodrigues_rotation`].
//! - [`step_rk4`]: classical RK4 on a second-order central-difference curl.
//! - [`fdtd::step_fdtd`]: staggered Yee leapfrog on real `E`, `B`.
//!
//! With the helicity basis of [`crate::field::helicity_basis`], a mode with
//! helicity `σ` evolves as `e^{iσ|k|t}`.

mod compare;
pub mod fdtd;
mod run;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::{dft3, idft3, CVec3, ComplexVectorField, ModeField};
use crate::grid::Grid;

pub use compare::{compare_solvers, fit_order, CompareRow, CompareTable, SolverPair, COMPARE_HEADER};
pub use fdtd::{psi_from_yee, step_fdtd, yee_div_b, yee_div_e, yee_from_psi};
pub use run::{run, run_with, RunOutput, Sample, TimeSeries, TIMESERIES_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Spectral,
    Rk4Curl,
    FdtdOracle,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Spectral => "spectral",
            SolverKind::Rk4Curl => "rk4_curl",
            SolverKind::FdtdOracle => "fdtd_oracle",
        }
    }
}

/// Sign of the generator. `Forward` evolves `ψ` by `∂ψ/∂t = i∇×ψ`;
/// `Conjugate` evolves `ψ*` by `∂ψ*/∂t = −i∇×ψ*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Forward,
    Conjugate,
}

pub type Mat3 = [[f64; 3]; 3];

/// `exp(tK)` with `K a = −k × a`: a rotation about `k̂` by angle `−|k|t`,
/// written in Rodrigues form `I + sinθ [n]× + (1 − cosθ)[n]×²`.
pub fn rodrigues_rotation(kvec: [f64; 3], t: f64) -> Mat3 {
    let kn = (kvec[0] * kvec[0] + kvec[1] * kvec[1] + kvec[2] * kvec[2]).sqrt();
    let mut r = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    if kn == 0.0 {
        return r;
    }
    let n = kvec.map(|x| x / kn);
    let theta = -kn * t;
    let (s, c) = theta.sin_cos();
    let cross = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
    for i in 0..3 {
        for j in 0..3 {
            let nn = n[i] * n[j] - if i == j { 1.0 } else { 0.0 };
            r[i][j] += s * cross[i][j] + (1.0 - c) * nn;
        }
    }
    r
}

fn apply_real(m: &Mat3, v: &CVec3) -> CVec3 {
    std::array::from_fn(|i| v[0] * m[i][0] + v[1] * m[i][1] + v[2] * m[i][2])
}

/// Propagates every mode of `hat` by time `t`.
pub fn propagate_modes(hat: &ModeField, t: f64, generator: Generator) -> ModeField {
    let grid = *hat.grid();
    let t = match generator {
        Generator::Forward => t,
        Generator::Conjugate => -t,
    };
    let data = hat
        .data()
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] {
                return *v;
            }
            apply_real(&rodrigues_rotation(grid.wavevector(m), t), v)
        })
        .collect();
    ModeField::from_data(grid, data).expect("same grid")
}

/// One exact spectral step of any size.
pub fn step_spectral(psi: &ComplexVectorField, dt: f64) -> ComplexVectorField {
    idft3(&propagate_modes(&dft3(psi), dt, Generator::Forward))
}

/// Exact spectral step for the conjugate field `ψ*`.
pub fn step_spectral_conjugate(psi_star: &ComplexVectorField, dt: f64) -> ComplexVectorField {
    idft3(&propagate_modes(&dft3(psi_star), dt, Generator::Conjugate))
}

/// Largest `√3·dt/dx` accepted by [`step_rk4`]; the RK4 stability interval on
/// the imaginary axis is `2√2`.
pub const RK4_STABILITY_LIMIT: f64 = 2.8;

/// Largest `√3·dt/dx` accepted by [`fdtd::step_fdtd`].
pub const COURANT_LIMIT: f64 = 1.0;

pub fn rk4_stable(grid: &Grid, dt: f64) -> bool {
    3f64.sqrt() * dt.abs() / grid.spacing() <= RK4_STABILITY_LIMIT
}

/// Second-order central-difference curl.
pub fn curl_central(psi: &ComplexVectorField) -> Vec<CVec3> {
    let grid = *psi.grid();
    let d = psi.data();
    let inv = 1.0 / (2.0 * grid.spacing());
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let diff = |axis: usize, comp: usize| (d[grid.shifted(i, axis, 1)][comp] - d[grid.shifted(i, axis, -1)][comp]) * inv;
            [
                diff(1, 2) - diff(2, 1),
                diff(2, 0) - diff(0, 2),
                diff(0, 1) - diff(1, 0),
            ]
        })
        .collect()
}

fn rk4_rhs(psi: &ComplexVectorField) -> Vec<CVec3> {
    let i = Complex64::new(0.0, 1.0);
    curl_central(psi).into_iter().map(|c| c.map(|x| i * x)).collect()
}

fn axpy(base: &ComplexVectorField, k: &[CVec3], a: f64) -> ComplexVectorField {
    let data = base
        .data()
        .par_iter()
        .zip(k)
        .map(|(b, kk)| std::array::from_fn(|c| b[c] + kk[c] * a))
        .collect();
    ComplexVectorField::from_data(*base.grid(), data).expect("same grid")
}

/// Classical RK4 step on `∂ψ/∂t = i∇×ψ` with a central-difference curl.
/// Refuses steps outside the stability bound.
pub fn step_rk4(psi: &ComplexVectorField, dt: f64) -> Result<ComplexVectorField> {
    if !rk4_stable(psi.grid(), dt) {
        return Err(Error::Unstable(format!(
            "rk4: sqrt(3)*dt/dx = {:.4} exceeds {RK4_STABILITY_LIMIT}",
            3f64.sqrt() * dt / psi.grid().spacing()
        )));
    }
    Ok(step_rk4_unchecked(psi, dt))
}

pub fn step_rk4_unchecked(psi: &ComplexVectorField, dt: f64) -> ComplexVectorField {
    let k1 = rk4_rhs(psi);
    let k2 = rk4_rhs(&axpy(psi, &k1, dt / 2.0));
    let k3 = rk4_rhs(&axpy(psi, &k2, dt / 2.0));
    let k4 = rk4_rhs(&axpy(psi, &k3, dt));
    let data = psi
        .data()
        .par_iter()
        .enumerate()
        .map(|(i, p)| std::array::from_fn(|c| p[c] + (k1[i][c] + k2[i][c] * 2.0 + k3[i][c] * 2.0 + k4[i][c]) * (dt / 6.0)))
        .collect();
    ComplexVectorField::from_data(*psi.grid(), data).expect("same grid")
}

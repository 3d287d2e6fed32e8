//! Yee leapfrog for source-free Maxwell equations `∂E/∂t = ∇×B`,
//! `∂B/∂t = −∇×E` on the periodic grid.
//!
//! Staggering (positions in units of the spacing, for storage index
//! `(i, j, k)`):
//!
//! | component | position              |
//! |-----------|-----------------------|
//! | `E_x`     | `(i+½, j, k)`         |
//! | `E_y`     | `(i, j+½, k)`         |
//! | `E_z`     | `(i, j, k+½)`         |
//! | `B_x`     | `(i, j+½, k+½)`       |
//! | `B_y`     | `(i+½, j, k+½)`       |
//! | `B_z`     | `(i+½, j+½, k)`       |
//!
//! An [`EMField`] in Yee layout holds `E` at time `t` and `B` at `t − dt/2`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evolve::{step_spectral, COURANT_LIMIT};
use crate::fft::spectral_shift_real;
use crate::field::{em_from_psi, psi_from_em, ComplexVectorField, EMField};
use crate::grid::Grid;

pub const E_OFFSETS: [[f64; 3]; 3] = [[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]];
pub const B_OFFSETS: [[f64; 3]; 3] = [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]];

pub fn courant_ok(grid: &Grid, dt: f64) -> bool {
    3f64.sqrt() * dt.abs() / grid.spacing() <= COURANT_LIMIT
}

/// Discrete curl of `E`, evaluated at the `B` positions.
pub fn curl_e(grid: &Grid, e: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let inv = 1.0 / grid.spacing();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let p = |axis| grid.shifted(i, axis, 1);
            [
                (e[p(1)][2] - e[i][2] - e[p(2)][1] + e[i][1]) * inv,
                (e[p(2)][0] - e[i][0] - e[p(0)][2] + e[i][2]) * inv,
                (e[p(0)][1] - e[i][1] - e[p(1)][0] + e[i][0]) * inv,
            ]
        })
        .collect()
}

/// Discrete curl of `B`, evaluated at the `E` positions.
pub fn curl_b(grid: &Grid, b: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let inv = 1.0 / grid.spacing();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let m = |axis| grid.shifted(i, axis, -1);
            [
                (b[i][2] - b[m(1)][2] - b[i][1] + b[m(2)][1]) * inv,
                (b[i][0] - b[m(2)][0] - b[i][2] + b[m(0)][2]) * inv,
                (b[i][1] - b[m(0)][1] - b[i][0] + b[m(1)][0]) * inv,
            ]
        })
        .collect()
}

/// Discrete divergence of `B` at cell centres `(i+½, j+½, k+½)`.
pub fn yee_div_b(em: &EMField) -> Vec<f64> {
    let grid = em.grid;
    let b = &em.b;
    let inv = 1.0 / grid.spacing();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let p = |axis| grid.shifted(i, axis, 1);
            (b[p(0)][0] - b[i][0] + b[p(1)][1] - b[i][1] + b[p(2)][2] - b[i][2]) * inv
        })
        .collect()
}

/// Discrete divergence of `E` at the integer nodes.
pub fn yee_div_e(em: &EMField) -> Vec<f64> {
    let grid = em.grid;
    let e = &em.e;
    let inv = 1.0 / grid.spacing();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let m = |axis| grid.shifted(i, axis, -1);
            (e[i][0] - e[m(0)][0] + e[i][1] - e[m(1)][1] + e[i][2] - e[m(2)][2]) * inv
        })
        .collect()
}

/// One leapfrog step: `B ← B − dt ∇×E`, then `E ← E + dt ∇×B`.
pub fn step_fdtd(em: &EMField, dt: f64) -> Result<EMField> {
    if !courant_ok(&em.grid, dt) {
        return Err(Error::Unstable(format!(
            "fdtd: sqrt(3)*dt/dx = {:.4} exceeds the Courant limit {COURANT_LIMIT}",
            3f64.sqrt() * dt / em.grid.spacing()
        )));
    }
    Ok(step_fdtd_unchecked(em, dt))
}

pub fn step_fdtd_unchecked(em: &EMField, dt: f64) -> EMField {
    let grid = em.grid;
    let ce = curl_e(&grid, &em.e);
    let b: Vec<[f64; 3]> = em.b.iter().zip(&ce).map(|(b, c)| std::array::from_fn(|k| b[k] - dt * c[k])).collect();
    let cb = curl_b(&grid, &b);
    let e = em.e.iter().zip(&cb).map(|(e, c)| std::array::from_fn(|k| e[k] + dt * c[k])).collect();
    EMField { grid, e, b }
}

fn shift_components(grid: &Grid, v: &[[f64; 3]], offsets: &[[f64; 3]; 3], sign: f64) -> Vec<[f64; 3]> {
    let comps: Vec<Vec<f64>> = (0..3)
        .map(|c| {
            let col: Vec<f64> = v.iter().map(|x| x[c]).collect();
            spectral_shift_real(grid, &col, offsets[c].map(|o| o * sign))
        })
        .collect();
    (0..grid.len()).map(|i| [comps[0][i], comps[1][i], comps[2][i]]).collect()
}

/// Samples a collocated `ψ` onto the Yee layout: `E` at `t = 0`, `B` at
/// `t = −dt/2` via one exact spectral half-step backwards.
pub fn yee_from_psi(psi: &ComplexVectorField, dt: f64) -> EMField {
    let grid = *psi.grid();
    let now = em_from_psi(psi);
    let back = em_from_psi(&step_spectral(psi, -dt / 2.0));
    EMField {
        grid,
        e: shift_components(&grid, &now.e, &E_OFFSETS, 1.0),
        b: shift_components(&grid, &back.b, &B_OFFSETS, 1.0),
    }
}

/// Collocated `ψ` at the time of `E`. `B` is brought forward half a step by
/// averaging `B^{n−½}` with a provisional `B^{n+½}`.
pub fn psi_from_yee(em: &EMField, dt: f64) -> ComplexVectorField {
    let grid = em.grid;
    let ce = curl_e(&grid, &em.e);
    let b_sync: Vec<[f64; 3]> = em
        .b
        .iter()
        .zip(&ce)
        .map(|(b, c)| std::array::from_fn(|k| b[k] - 0.5 * dt * c[k]))
        .collect();
    let collocated = EMField {
        grid,
        e: shift_components(&grid, &em.e, &E_OFFSETS, -1.0),
        b: shift_components(&grid, &b_sync, &B_OFFSETS, -1.0),
    };
    psi_from_em(&collocated)
}

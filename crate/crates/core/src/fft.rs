//! Unitary 3D discrete Fourier transforms on the periodic grid.
//!
//! Forward: `f̂(m) = N^{-3/2} Σ_j f(j) e^{−2πi m·j/N}`; inverse uses the
//! opposite sign and the same factor.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    }
}

/// In-place unitary transform of one scalar component laid out on `grid`.
pub fn fft3_scalar(grid: &Grid, data: &mut [Complex64], inverse: bool) {
    let n = grid.n();
    assert_eq!(data.len(), grid.len());
    let fft = plan(n, inverse);

    // z lines are contiguous
    data.par_chunks_mut(n).for_each(|line| fft.process(line));

    // y lines: stride n inside each x slab
    data.par_chunks_mut(n * n).for_each(|slab| {
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for iz in 0..n {
            for iy in 0..n {
                line[iy] = slab[iy * n + iz];
            }
            fft.process(&mut line);
            for iy in 0..n {
                slab[iy * n + iz] = line[iy];
            }
        }
    });

    // x lines: stride n²; gather, transform, scatter
    let nn = n * n;
    let mut lines: Vec<Vec<Complex64>> = (0..nn)
        .into_par_iter()
        .map(|yz| {
            let mut line: Vec<Complex64> = (0..n).map(|ix| data[ix * nn + yz]).collect();
            fft.process(&mut line);
            line
        })
        .collect();
    for (yz, line) in lines.iter_mut().enumerate() {
        for (ix, v) in line.iter().enumerate() {
            data[ix * nn + yz] = *v;
        }
    }

    let scale = 1.0 / (grid.len() as f64).sqrt();
    data.par_iter_mut().for_each(|v| *v *= scale);
}

/// Unitary transform of a 3-component field stored point-major.
pub fn fft3_vector(grid: &Grid, data: &[[Complex64; 3]], inverse: bool) -> Vec<[Complex64; 3]> {
    let mut comps: Vec<Vec<Complex64>> = (0..3)
        .map(|c| data.iter().map(|v| v[c]).collect())
        .collect();
    for comp in comps.iter_mut() {
        fft3_scalar(grid, comp, inverse);
    }
    (0..data.len())
        .map(|i| [comps[0][i], comps[1][i], comps[2][i]])
        .collect()
}

/// Transform of a real scalar field.
pub fn fft3_real(grid: &Grid, data: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft3_scalar(grid, &mut c, false);
    c
}

/// Spectral partial derivative of a scalar field along `axis`. The unpaired
/// `−n/2` mode is dropped.
pub fn spectral_derivative(grid: &Grid, data: &[Complex64], axis: usize) -> Vec<Complex64> {
    let mut hat = data.to_vec();
    fft3_scalar(grid, &mut hat, false);
    let half = (grid.n() / 2) as i64;
    hat.par_iter_mut().enumerate().for_each(|(idx, v)| {
        let m = grid.mode_of(idx);
        if m[axis] == -half {
            *v = Complex64::new(0.0, 0.0);
        } else {
            let k = grid.wavevector(m)[axis];
            *v *= Complex64::new(0.0, k);
        }
    });
    fft3_scalar(grid, &mut hat, true);
    hat
}

/// Samples a real periodic field at positions shifted by `delta` (in units of
/// grid spacing) using trigonometric interpolation. The unpaired `−n/2`
/// modes are dropped so the result stays real.
pub fn spectral_shift_real(grid: &Grid, data: &[f64], delta: [f64; 3]) -> Vec<f64> {
    let mut hat = fft3_real(grid, data);
    let h = grid.spacing();
    hat.par_iter_mut().enumerate().for_each(|(idx, v)| {
        let m = grid.mode_of(idx);
        if grid.is_nyquist(m) {
            *v = Complex64::new(0.0, 0.0);
            return;
        }
        let k = grid.wavevector(m);
        let phase: f64 = (0..3).map(|a| k[a] * delta[a] * h).sum();
        *v *= Complex64::from_polar(1.0, phase);
    });
    fft3_scalar(grid, &mut hat, true);
    hat.into_iter().map(|v| v.re).collect()
}

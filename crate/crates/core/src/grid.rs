use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic cubic grid of `n³` points on a box of side `box_length`.
///
/// Point `(ix, iy, iz)` sits at `(ix, iy, iz)·spacing` and is stored at flat
/// index `(ix·n + iy)·n + iz`. Array index `j` along an axis corresponds to the
/// signed mode `j` for `j < n/2` and `j − n` otherwise, so modes span
/// `[−n/2, n/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    box_length: f64,
}

impl Grid {
    pub fn new(n: usize, box_length: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidArgument(format!("grid n must be even and >= 4, got {n}")));
        }
        if !(box_length > 0.0 && box_length.is_finite()) {
            return Err(Error::InvalidArgument(format!("box_length must be positive, got {box_length}")));
        }
        Ok(Self { n, box_length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn volume(&self) -> f64 {
        self.box_length.powi(3)
    }

    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n + iy) * self.n + iz
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    /// Flat index of the periodic neighbour offset by `d` along `axis`.
    pub fn shifted(&self, idx: usize, axis: usize, d: isize) -> usize {
        let mut c = self.coords(idx);
        let n = self.n as isize;
        c[axis] = ((c[axis] as isize + d).rem_euclid(n)) as usize;
        self.index(c[0], c[1], c[2])
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        self.coords(idx).map(|c| c as f64 * h)
    }

    /// Signed mode for an array index along one axis.
    pub fn signed_mode(&self, j: usize) -> i64 {
        let n = self.n as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    pub fn mode_of(&self, idx: usize) -> [i64; 3] {
        self.coords(idx).map(|c| self.signed_mode(c))
    }

    /// True if any component sits on the unpaired `−n/2` mode.
    pub fn is_nyquist(&self, mode: [i64; 3]) -> bool {
        let h = (self.n / 2) as i64;
        mode.iter().any(|&m| m == -h)
    }

    /// Array index of a signed mode, if representable.
    pub fn index_of_mode(&self, mode: [i64; 3]) -> Option<usize> {
        let h = (self.n / 2) as i64;
        if mode.iter().any(|&m| m < -h || m >= h) {
            return None;
        }
        let n = self.n as i64;
        let c = mode.map(|m| m.rem_euclid(n) as usize);
        Some(self.index(c[0], c[1], c[2]))
    }

    pub fn wavevector(&self, mode: [i64; 3]) -> [f64; 3] {
        let s = 2.0 * PI / self.box_length;
        mode.map(|m| m as f64 * s)
    }
}

//! The photon wave function `ψ = E − iB` on a periodic grid, its mode-space
//! view, helicity bases, initial-condition constructors and diagnostics.
//!
//! Units are Heaviside–Lorentz with `c = 1`, so `|ψ|² = E² + B²` and the
//! source-free dynamics is `∂ψ/∂t = i∇×ψ`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft::fft3_vector;
use crate::grid::Grid;
use crate::reduce::{max_by, sum_by};

pub type CVec3 = [Complex64; 3];

const ZERO3: CVec3 = [Complex64::new(0.0, 0.0); 3];

pub fn cdot(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
}

pub fn rdot(k: &[f64; 3], v: &CVec3) -> Complex64 {
    v[0] * k[0] + v[1] * k[1] + v[2] * k[2]
}

pub fn norm_sqr3(v: &CVec3) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

fn norm3(k: &[f64; 3]) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}

pub fn cross_rc(k: &[f64; 3], v: &CVec3) -> CVec3 {
    [
        v[2] * k[1] - v[1] * k[2],
        v[0] * k[2] - v[2] * k[0],
        v[1] * k[0] - v[0] * k[1],
    ]
}

/// Photon wave function on position space.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVectorField {
    grid: Grid,
    data: Vec<CVec3>,
}

/// Mode-space view of a [`ComplexVectorField`]; array index `i` carries the
/// signed mode `grid.mode_of(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeField {
    grid: Grid,
    data: Vec<CVec3>,
}

macro_rules! vector_field_common {
    ($t:ty) => {
        impl $t {
            pub fn zeros(grid: Grid) -> Self {
                Self {
                    grid,
                    data: vec![ZERO3; grid.len()],
                }
            }

            pub fn from_data(grid: Grid, data: Vec<CVec3>) -> Result<Self> {
                if data.len() != grid.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} points for a grid of {}",
                        data.len(),
                        grid.len()
                    )));
                }
                Ok(Self { grid, data })
            }

            pub fn grid(&self) -> &Grid {
                &self.grid
            }

            pub fn data(&self) -> &[CVec3] {
                &self.data
            }

            pub fn data_mut(&mut self) -> &mut [CVec3] {
                &mut self.data
            }

            pub fn into_data(self) -> Vec<CVec3> {
                self.data
            }
        }
    };
}
vector_field_common!(ComplexVectorField);
vector_field_common!(ModeField);

impl ComplexVectorField {
    pub fn conj(&self) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|v| v.map(|c| c.conj())).collect(),
        }
    }

    /// `Σ|ψ|² · cell volume`.
    pub fn norm_sqr(&self) -> f64 {
        sum_by(&self.data, norm_sqr3) * self.grid.cell_volume()
    }

    /// Volume-weighted L² distance.
    pub fn l2_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "grids differ");
        let pairs: Vec<(CVec3, CVec3)> = self.data.iter().copied().zip(other.data.iter().copied()).collect();
        let s = sum_by(&pairs, |(a, b)| {
            (0..3).map(|c| (a[c] - b[c]).norm_sqr()).sum::<f64>()
        });
        (s * self.grid.cell_volume()).sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs_component(&self) -> f64 {
        max_by(&self.data, |v| v.iter().map(|c| c.norm()).fold(0.0, f64::max))
    }
}

/// Real electric and magnetic fields on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EMField {
    pub grid: Grid,
    pub e: Vec<[f64; 3]>,
    pub b: Vec<[f64; 3]>,
}

impl EMField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            e: vec![[0.0; 3]; grid.len()],
            b: vec![[0.0; 3]; grid.len()],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().chain(&self.b).flatten().all(|x| x.is_finite())
    }
}

/// `ψ_k = E_k − iB_k`.
pub fn psi_from_em(em: &EMField) -> ComplexVectorField {
    let data = em
        .e
        .par_iter()
        .zip(&em.b)
        .map(|(e, b)| std::array::from_fn(|c| Complex64::new(e[c], -b[c])))
        .collect();
    ComplexVectorField { grid: em.grid, data }
}

/// `E = Re ψ`, `B = −Im ψ`.
pub fn em_from_psi(psi: &ComplexVectorField) -> EMField {
    EMField {
        grid: psi.grid,
        e: psi.data.iter().map(|v| v.map(|c| c.re)).collect(),
        b: psi.data.iter().map(|v| v.map(|c| -c.im)).collect(),
    }
}

pub fn dft3(f: &ComplexVectorField) -> ModeField {
    ModeField {
        grid: f.grid,
        data: fft3_vector(&f.grid, &f.data, false),
    }
}

pub fn idft3(f: &ModeField) -> ComplexVectorField {
    ComplexVectorField {
        grid: f.grid,
        data: fft3_vector(&f.grid, &f.data, true),
    }
}

/// Helicity sign `σ = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Helicity {
    Plus,
    Minus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Helicity::Plus => 1,
            Helicity::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            _ => Err(Error::InvalidArgument(format!("helicity must be +1 or -1, got {s}"))),
        }
    }
}

/// Orthonormal basis adapted to a wavevector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityBasis {
    pub plus: CVec3,
    pub minus: CVec3,
    pub long: [f64; 3],
}

impl HelicityBasis {
    pub fn get(&self, h: Helicity) -> &CVec3 {
        match h {
            Helicity::Plus => &self.plus,
            Helicity::Minus => &self.minus,
        }
    }
}

/// Builds `e_±(k)` satisfying `k̂ × e_σ = −iσ e_σ` and `e_long = k̂`.
///
/// `u` is the coordinate axis least aligned with `k̂` (ties go to the earlier
/// axis); `e₁ = normalize(u − (u·k̂)k̂)`, `e₂ = k̂ × e₁`, and
/// `e_± = (e₁ ± i e₂)/√2`.
pub fn helicity_basis(kvec: [f64; 3]) -> Result<HelicityBasis> {
    let kn = norm3(&kvec);
    if !(kn > 0.0) || !kn.is_finite() {
        return Err(Error::InvalidArgument("helicity basis needs a nonzero wavevector".into()));
    }
    let khat = kvec.map(|x| x / kn);
    let mut axis = 0;
    for a in 1..3 {
        if khat[a].abs() < khat[axis].abs() {
            axis = a;
        }
    }
    let mut u = [0.0; 3];
    u[axis] = 1.0;
    let proj = khat[axis];
    let mut e1 = [u[0] - proj * khat[0], u[1] - proj * khat[1], u[2] - proj * khat[2]];
    let n1 = norm3(&e1);
    e1 = e1.map(|x| x / n1);
    let e2 = [
        khat[1] * e1[2] - khat[2] * e1[1],
        khat[2] * e1[0] - khat[0] * e1[2],
        khat[0] * e1[1] - khat[1] * e1[0],
    ];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = std::array::from_fn(|c| Complex64::new(e1[c] * s, e2[c] * s));
    let minus = std::array::from_fn(|c| Complex64::new(e1[c] * s, -e2[c] * s));
    Ok(HelicityBasis { plus, minus, long: khat })
}

/// A single helicity plane wave `amplitude · e_σ(k) · e^{ik·x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveSpec {
    pub mode: [i64; 3],
    pub helicity: Helicity,
    pub amplitude: Complex64,
}

fn check_mode(grid: &Grid, mode: [i64; 3]) -> Result<()> {
    let h = (grid.n() / 2) as i64;
    if mode == [0, 0, 0] {
        return Err(Error::InvalidArgument("helicity is undefined for the k = 0 mode".into()));
    }
    if mode.iter().any(|&m| m <= -h || m >= h) {
        return Err(Error::InvalidArgument(format!(
            "mode {mode:?} is not representable on an n = {} grid (need |m| < {h})",
            grid.n()
        )));
    }
    Ok(())
}

pub fn make_plane_wave(spec: &PlaneWaveSpec, grid: &Grid) -> Result<ComplexVectorField> {
    check_mode(grid, spec.mode)?;
    let k = grid.wavevector(spec.mode);
    let basis = helicity_basis(k)?;
    let pol = basis.get(spec.helicity).map(|c| c * spec.amplitude);
    let data = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let x = grid.position(i);
            let phase = Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
            pol.map(|c| c * phase)
        })
        .collect();
    Ok(ComplexVectorField { grid: *grid, data })
}

/// Mode-space Gaussian packet `√N³ · exp(−|m − m₀|²/(2w²)) · e_σ(k_m)`, so a
/// vanishing width tends to a unit-amplitude plane wave at `m₀`. The `k = 0`
/// and unpaired Nyquist modes are left empty.
pub fn make_gaussian_packet(center_mode: [i64; 3], width: f64, helicity: Helicity, grid: &Grid) -> Result<ComplexVectorField> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidArgument(format!("packet width must be positive, got {width}")));
    }
    let scale = (grid.len() as f64).sqrt();
    let data = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] || grid.is_nyquist(m) {
                return ZERO3;
            }
            let d2: f64 = (0..3).map(|a| ((m[a] - center_mode[a]) as f64).powi(2)).sum();
            let env = scale * (-d2 / (2.0 * width * width)).exp();
            if env == 0.0 {
                return ZERO3;
            }
            let basis = helicity_basis(grid.wavevector(m)).expect("nonzero mode");
            basis.get(helicity).map(|c| c * env)
        })
        .collect();
    Ok(idft3(&ModeField { grid: *grid, data }))
}

/// Random field with every mode of `0 < |m| ≤ cutoff` filled with uniform
/// complex entries in `[−1, 1]²` and its longitudinal part removed. Modes are
/// visited in array order with a ChaCha8 stream, so the output depends only on
/// the seed.
pub fn random_transverse_field(seed: u64, grid: &Grid, spectrum_cutoff: f64) -> Result<ComplexVectorField> {
    if !(spectrum_cutoff >= 1.0) {
        return Err(Error::InvalidArgument(format!("spectrum cutoff must be >= 1, got {spectrum_cutoff}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![ZERO3; grid.len()];
    for (i, slot) in data.iter_mut().enumerate() {
        let m = grid.mode_of(i);
        if m == [0, 0, 0] || grid.is_nyquist(m) {
            continue;
        }
        let mf = m.map(|x| x as f64);
        if norm3(&mf) > spectrum_cutoff {
            continue;
        }
        let mut v: CVec3 = std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)));
        let khat = mf.map(|x| x / norm3(&mf));
        let l = rdot(&khat, &v);
        for c in 0..3 {
            v[c] -= l * khat[c];
        }
        *slot = v;
    }
    Ok(idft3(&ModeField { grid: *grid, data }))
}

/// `(1/2) Σ|ψ|² · cell volume`, equal to `(1/2)∫(E² + B²)`.
pub fn energy(psi: &ComplexVectorField) -> f64 {
    0.5 * psi.norm_sqr()
}

/// Mode-space energy `(1/2) Σ|ψ̂|² · cell volume`.
pub fn mode_energy(hat: &ModeField) -> f64 {
    0.5 * sum_by(&hat.data, norm_sqr3) * hat.grid.cell_volume()
}

/// Longitudinal fraction of a field in mode space:
/// `max_m |k̂·ψ̂(m)| / max_m |ψ̂(m)|` over `m ≠ 0`, or `0` for a field without
/// nonzero modes.
pub fn divergence_residual_modes(hat: &ModeField) -> f64 {
    let grid = hat.grid;
    let (num, den) = hat
        .data
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] {
                return (0.0, 0.0);
            }
            let k = grid.wavevector(m);
            let kn = norm3(&k);
            (rdot(&k, v).norm() / kn, norm_sqr3(v).sqrt())
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn divergence_residual(psi: &ComplexVectorField) -> f64 {
    divergence_residual_modes(&dft3(psi))
}

/// One `(mode, σ)` bin of a helicity spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityBin {
    pub mode: [i64; 3],
    pub helicity: Helicity,
    pub energy: f64,
}

/// Per-mode helicity decomposition of the field energy.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HelicitySpectrum {
    /// Bins above the reporting threshold, in array order of the modes.
    pub bins: Vec<HelicityBin>,
    /// Energy along `k̂` plus the whole `k = 0` mode.
    pub longitudinal: f64,
    /// Transverse energy in bins below the reporting threshold.
    pub negligible: f64,
}

/// Bins holding at most this fraction of the total energy are folded into
/// [`HelicitySpectrum::negligible`].
pub const SPECTRUM_BIN_THRESHOLD: f64 = 1e-24;

impl HelicitySpectrum {
    pub fn total(&self) -> f64 {
        self.bins.iter().map(|b| b.energy).sum::<f64>() + self.longitudinal + self.negligible
    }

    pub fn helicity_total(&self, h: Helicity) -> f64 {
        self.bins.iter().filter(|b| b.helicity == h).map(|b| b.energy).sum()
    }

    pub fn bin(&self, mode: [i64; 3], h: Helicity) -> Option<f64> {
        self.bins.iter().find(|b| b.mode == mode && b.helicity == h).map(|b| b.energy)
    }
}

/// Per-mode energies `(1/2)|⟨e_σ(k), ψ̂(k)⟩|²·ΔV`.
pub fn helicity_spectrum_modes(hat: &ModeField) -> HelicitySpectrum {
    let grid = hat.grid;
    let dv = grid.cell_volume();
    let per_mode: Vec<([i64; 3], f64, f64, f64)> = hat
        .data
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] {
                return (m, 0.0, 0.0, 0.5 * norm_sqr3(v) * dv);
            }
            let b = helicity_basis(grid.wavevector(m)).expect("nonzero mode");
            let p = 0.5 * cdot(&b.plus, v).norm_sqr() * dv;
            let mi = 0.5 * cdot(&b.minus, v).norm_sqr() * dv;
            let l = 0.5 * rdot(&b.long, v).norm_sqr() * dv;
            (m, p, mi, l)
        })
        .collect();
    let total: f64 = per_mode.iter().map(|(_, p, m, l)| p + m + l).sum();
    let cut = SPECTRUM_BIN_THRESHOLD * total;
    let mut spec = HelicitySpectrum::default();
    for (mode, p, mi, l) in per_mode {
        spec.longitudinal += l;
        for (h, e) in [(Helicity::Plus, p), (Helicity::Minus, mi)] {
            if e > cut {
                spec.bins.push(HelicityBin { mode, helicity: h, energy: e });
            } else {
                spec.negligible += e;
            }
        }
    }
    spec
}

pub fn helicity_spectrum(psi: &ComplexVectorField) -> HelicitySpectrum {
    helicity_spectrum_modes(&dft3(psi))
}

/// Total energy per helicity, summed mode by mode. Unlike
/// [`helicity_spectrum`] nothing is thresholded.
pub fn helicity_totals(hat: &ModeField) -> (f64, f64) {
    let grid = hat.grid;
    let dv = grid.cell_volume();
    let per: Vec<(f64, f64)> = hat
        .data
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] {
                return (0.0, 0.0);
            }
            let b = helicity_basis(grid.wavevector(m)).expect("nonzero mode");
            (0.5 * cdot(&b.plus, v).norm_sqr() * dv, 0.5 * cdot(&b.minus, v).norm_sqr() * dv)
        })
        .collect();
    let p = sum_by(&per, |x| x.0);
    let m = sum_by(&per, |x| x.1);
    (p, m)
}

/// Per-mode helicity energies `(E₊(m), E₋(m))` in array order.
pub fn helicity_energies_per_mode(hat: &ModeField) -> Vec<(f64, f64)> {
    let grid = hat.grid;
    let dv = grid.cell_volume();
    hat.data
        .par_iter()
        .enumerate()
        .map(|(i, v)| {
            let m = grid.mode_of(i);
            if m == [0, 0, 0] {
                return (0.0, 0.0);
            }
            let b = helicity_basis(grid.wavevector(m)).expect("nonzero mode");
            (0.5 * cdot(&b.plus, v).norm_sqr() * dv, 0.5 * cdot(&b.minus, v).norm_sqr() * dv)
        })
        .collect()
}

/// Sets every mode with a `−n/2` component to zero.
pub fn zero_nyquist(hat: &mut ModeField) {
    let grid = hat.grid;
    for (i, v) in hat.data.iter_mut().enumerate() {
        if grid.is_nyquist(grid.mode_of(i)) {
            *v = ZERO3;
        }
    }
}

/// Counts modes whose amplitude is above `tol`, in array order.
pub fn occupied_modes(hat: &ModeField, tol: f64) -> BTreeMap<[i64; 3], f64> {
    let grid = hat.grid;
    hat.data
        .iter()
        .enumerate()
        .filter_map(|(i, v)| {
            let a = norm_sqr3(v).sqrt();
            (a > tol).then(|| (grid.mode_of(i), a))
        })
        .collect()
}

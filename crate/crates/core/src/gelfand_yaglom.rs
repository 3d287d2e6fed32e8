//! First-order wave operators `Γ_μ ∂_μ ψ + κψ`, their Lagrangian
//! `ℒ = −½(ψ̄ Γ_μ ∂_μψ − ∂_μψ̄ Γ_μ ψ) − κψ̄ψ`, and the Noether current of the
//! photon field.
//!
//! The repeated index runs over `(t, x, y, z)` with no metric factors. Two
//! instantiations are provided:
//!
//! - [`GYOperatorSpec::majorana_oppenheimer`]: `Γ_μ = α_μ` (with `α₀ = I₃`),
//!   `κ = 0`, `ψ̄ = ψ*`. The equation is then `∂ψ/∂t − i∇×ψ = 0`.
//! - [`GYOperatorSpec::dirac`]: `Γ_μ = −iγ_μ`, `κ = m`, `ψ̄ = ψ†γ₀`, i.e.
//!   `(iγ_μ∂_μ − m)ψ = 0` multiplied through by `−1`.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::exactalg::{alpha_matrix, gamma_matrix};
use crate::fft::spectral_derivative;
use crate::field::ComplexVectorField;
use crate::grid::Grid;
use crate::reduce::sum_by;

type C = Complex64;
const ZERO: C = C::new(0.0, 0.0);
const I: C = C::new(0.0, 1.0);

/// Small dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C>,
}

impl CMatrix {
    pub fn new(n: usize, data: Vec<C>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} entries for {n}x{n}", data.len())));
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r * self.n + c]
    }

    pub fn scale(&self, s: C) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `M v`.
    pub fn apply(&self, v: &[C], out: &mut [C]) {
        for (r, o) in out.iter_mut().enumerate().take(self.n) {
            *o = (0..self.n).map(|c| self.data[r * self.n + c] * v[c]).sum();
        }
    }

    /// Row vector times matrix, `wᵀ M`.
    pub fn apply_left(&self, w: &[C], out: &mut [C]) {
        for (c, o) in out.iter_mut().enumerate().take(self.n) {
            *o = (0..self.n).map(|r| w[r] * self.data[r * self.n + c]).sum();
        }
    }
}

/// How `ψ̄` is formed from `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub enum BarRule {
    /// `ψ̄ = ψ*` componentwise.
    Conjugate,
    /// `ψ̄ = ψ† A` for the given matrix (`A = γ₀` for Dirac).
    Adjoint(CMatrix),
}

/// `Γ₀..Γ₃`, `κ` and the conjugation rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GYOperatorSpec {
    gammas: [CMatrix; 4],
    kappa: f64,
    bar: BarRule,
}

impl GYOperatorSpec {
    pub fn new(gammas: [CMatrix; 4], kappa: f64, bar: BarRule) -> Result<Self> {
        let n = gammas[0].dim();
        if gammas.iter().any(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch("Γ matrices must share one dimension".into()));
        }
        if let BarRule::Adjoint(a) = &bar {
            if a.dim() != n {
                return Err(Error::DimensionMismatch("adjoint matrix dimension".into()));
            }
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidArgument(format!("kappa must be >= 0, got {kappa}")));
        }
        Ok(Self { gammas, kappa, bar })
    }

    pub fn majorana_oppenheimer() -> Self {
        let gammas = [0, 1, 2, 3].map(|i| exact_to_c(&alpha_matrix(i).expect("index in range")));
        Self::new(gammas, 0.0, BarRule::Conjugate).expect("consistent")
    }

    pub fn dirac(mass: f64) -> Result<Self> {
        let gammas = [0, 1, 2, 3].map(|m| exact_to_c(&gamma_matrix(m).expect("index in range")).scale(-I));
        let g0 = exact_to_c(&gamma_matrix(0).expect("index in range"));
        Self::new(gammas, mass, BarRule::Adjoint(g0))
    }

    pub fn dim(&self) -> usize {
        self.gammas[0].dim()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn gamma(&self, mu: usize) -> &CMatrix {
        &self.gammas[mu]
    }

    /// `ψ̄` for one point.
    pub fn bar(&self, psi: &[C]) -> Vec<C> {
        match &self.bar {
            BarRule::Conjugate => psi.iter().map(|c| c.conj()).collect(),
            BarRule::Adjoint(a) => {
                let conj: Vec<C> = psi.iter().map(|c| c.conj()).collect();
                let mut out = vec![ZERO; psi.len()];
                a.apply_left(&conj, &mut out);
                out
            }
        }
    }

    /// Momentum-space symbol for `ψ = u e^{−i(Et − p·x)}`:
    /// `−iE Γ₀ + i pₖ Γₖ + κ`.
    pub fn momentum_symbol(&self, energy: f64, p: [f64; 3]) -> DMatrix<C> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| {
            let mut v = self.gammas[0].get(r, c) * (-I * energy);
            for k in 0..3 {
                v += self.gammas[k + 1].get(r, c) * (I * p[k]);
            }
            if r == c {
                v += self.kappa;
            }
            v
        })
    }

    /// Smallest singular value of [`Self::momentum_symbol`].
    pub fn min_singular_value(&self, energy: f64, p: [f64; 3]) -> f64 {
        self.momentum_symbol(energy, p)
            .singular_values()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

fn exact_to_c(m: &crate::exactalg::ExactMatrix) -> CMatrix {
    CMatrix::new(m.rows(), m.to_complex64()).expect("square")
}

/// `n`-component complex field on the spatial grid, point-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiField {
    grid: Grid,
    ncomp: usize,
    data: Vec<C>,
}

impl MultiField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            grid,
            ncomp,
            data: vec![ZERO; grid.len() * ncomp],
        }
    }

    pub fn from_data(grid: Grid, ncomp: usize, data: Vec<C>) -> Result<Self> {
        if data.len() != grid.len() * ncomp {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} points x {ncomp} components",
                data.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, ncomp, data })
    }

    pub fn from_vector_field(f: &ComplexVectorField) -> Self {
        Self {
            grid: *f.grid(),
            ncomp: 3,
            data: f.data().iter().flatten().copied().collect(),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn data(&self) -> &[C] {
        &self.data
    }

    pub fn point(&self, i: usize) -> &[C] {
        &self.data[i * self.ncomp..(i + 1) * self.ncomp]
    }

    fn component(&self, c: usize) -> Vec<C> {
        self.data.iter().skip(c).step_by(self.ncomp).copied().collect()
    }

    fn from_components(grid: Grid, comps: &[Vec<C>]) -> Self {
        let ncomp = comps.len();
        let data = (0..grid.len()).flat_map(|i| comps.iter().map(move |c| c[i])).collect();
        Self { grid, ncomp, data }
    }

    /// Volume-weighted L² norm.
    pub fn l2_norm(&self) -> f64 {
        (sum_by(&self.data, |c| c.norm_sqr()) * self.grid.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, f: impl Fn(C, C) -> C + Sync) -> Self {
        Self {
            grid: self.grid,
            ncomp: self.ncomp,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

/// Spectral `∂_x, ∂_y, ∂_z` of every component.
pub fn spatial_derivatives(f: &MultiField) -> [MultiField; 3] {
    std::array::from_fn(|axis| {
        let comps: Vec<Vec<C>> = (0..f.ncomp)
            .map(|c| spectral_derivative(&f.grid, &f.component(c), axis))
            .collect();
        MultiField::from_components(f.grid, &comps)
    })
}

/// Pointwise `Γ_μ d_μ + κψ`, where `d = [∂_t ψ, ∂_x ψ, ∂_y ψ, ∂_z ψ]`.
pub fn gy_residual(spec: &GYOperatorSpec, psi: &MultiField, d: &[MultiField; 4]) -> Result<MultiField> {
    let n = spec.dim();
    if psi.ncomp != n || d.iter().any(|x| x.ncomp != n || x.grid != psi.grid) {
        return Err(Error::DimensionMismatch(format!("operator dimension {n}, field has {} components", psi.ncomp)));
    }
    let mut out = vec![ZERO; psi.data.len()];
    out.par_chunks_mut(n).enumerate().for_each(|(i, o)| {
        let mut tmp = vec![ZERO; n];
        for (mu, dm) in d.iter().enumerate() {
            spec.gammas[mu].apply(dm.point(i), &mut tmp);
            for (a, t) in o.iter_mut().zip(&tmp) {
                *a += t;
            }
        }
        for (a, p) in o.iter_mut().zip(psi.point(i)) {
            *a += p * spec.kappa;
        }
    });
    Ok(MultiField {
        grid: psi.grid,
        ncomp: n,
        data: out,
    })
}

/// Second-order finite-difference time derivatives of uniformly spaced
/// samples: centred in the interior, three-point one-sided at the ends.
/// Two samples fall back to a first-order difference; one sample yields
/// `None`.
pub fn time_derivatives(samples: &[MultiField], h: f64) -> Option<Vec<MultiField>> {
    let n = samples.len();
    match n {
        0 | 1 => None,
        2 => {
            let d = samples[1].combine(&samples[0], |a, b| (a - b) / h);
            Some(vec![d.clone(), d])
        }
        _ => Some(
            (0..n)
                .map(|j| {
                    let (a, b, c) = if j == 0 {
                        (&samples[0], &samples[1], &samples[2])
                    } else if j == n - 1 {
                        (&samples[n - 3], &samples[n - 2], &samples[n - 1])
                    } else {
                        (&samples[j - 1], &samples[j], &samples[j + 1])
                    };
                    let data: Vec<C> = (0..a.data.len())
                        .map(|k| {
                            let (x0, x1, x2) = (a.data[k], b.data[k], c.data[k]);
                            if j == 0 {
                                (-3.0 * x0 + 4.0 * x1 - x2) / (2.0 * h)
                            } else if j == n - 1 {
                                (x0 - 4.0 * x1 + 3.0 * x2) / (2.0 * h)
                            } else {
                                (x2 - x0) / (2.0 * h)
                            }
                        })
                        .collect();
                    MultiField {
                        grid: a.grid,
                        ncomp: a.ncomp,
                        data,
                    }
                })
                .collect(),
        ),
    }
}

/// L² norm of the Euler–Lagrange residual `α_μ ∂_μ ψ` along a uniformly
/// sampled trajectory (time derivative by finite differences, space
/// derivatives spectral). Single-sample trajectories give `NaN`.
pub fn el_residual_series(samples: &[ComplexVectorField], h: f64) -> Vec<f64> {
    let fields: Vec<MultiField> = samples.iter().map(MultiField::from_vector_field).collect();
    let Some(dts) = time_derivatives(&fields, h) else {
        return vec![f64::NAN; samples.len()];
    };
    let spec = GYOperatorSpec::majorana_oppenheimer();
    fields
        .iter()
        .zip(dts)
        .map(|(f, dt)| {
            let [dx, dy, dz] = spatial_derivatives(f);
            gy_residual(&spec, f, &[dt, dx, dy, dz]).expect("dimensions agree").l2_norm()
        })
        .collect()
}

fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The printed massless Lagrangian `−½(ψ*α_μ∂_μψ − ∂_μψ* α_μ ψ)`. For
/// `ψ* = conj(ψ)` it is purely imaginary.
pub fn mo_lagrangian_density_printed(psi: &[C; 3], psistar: &[C; 3], dpsi: &[[C; 3]; 4], dpsistar: &[[C; 3]; 4]) -> C {
    let spec = GYOperatorSpec::majorana_oppenheimer();
    let mut a = ZERO;
    let mut b = ZERO;
    let mut tmp = [ZERO; 3];
    for mu in 0..4 {
        spec.gammas[mu].apply(&dpsi[mu], &mut tmp);
        a += dot(psistar, &tmp);
        spec.gammas[mu].apply(psi, &mut tmp);
        b += dot(&dpsistar[mu], &tmp);
    }
    -(a - b) / 2.0
}

/// Real form of the massless Lagrangian density: `i` times the printed
/// expression, which equals `Im(ψ†α_μ∂_μψ)` when `ψ* = conj(ψ)`.
pub fn mo_lagrangian_density(psi: &[C; 3], psistar: &[C; 3], dpsi: &[[C; 3]; 4], dpsistar: &[[C; 3]; 4]) -> f64 {
    (I * mo_lagrangian_density_printed(psi, psistar, dpsi, dpsistar)).re
}

/// `j₀ = ψ*ψ` and `jₖ = ψ* αₖ ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentField {
    pub grid: Grid,
    pub j0: Vec<f64>,
    pub j: Vec<[f64; 3]>,
    /// Largest imaginary part discarded from `j₀, jₖ`.
    pub max_imag: f64,
}

pub fn noether_current(psi: &ComplexVectorField) -> CurrentField {
    let spec = GYOperatorSpec::majorana_oppenheimer();
    let per: Vec<(f64, [f64; 3], f64)> = psi
        .data()
        .par_iter()
        .map(|p| {
            let conj: Vec<C> = p.iter().map(|c| c.conj()).collect();
            let mut tmp = [ZERO; 3];
            let mut j = [0.0; 3];
            let mut imag: f64 = 0.0;
            let j0c = dot(&conj, p);
            imag = imag.max(j0c.im.abs());
            for k in 0..3 {
                spec.gammas[k + 1].apply(p, &mut tmp);
                let v = dot(&conj, &tmp);
                j[k] = v.re;
                imag = imag.max(v.im.abs());
            }
            (j0c.re, j, imag)
        })
        .collect();
    CurrentField {
        grid: *psi.grid(),
        j0: per.iter().map(|x| x.0).collect(),
        j: per.iter().map(|x| x.1).collect(),
        max_imag: per.iter().map(|x| x.2).fold(0.0, f64::max),
    }
}

/// `Q = ∫ j₀ = Σ|ψ|² · cell volume`. Uses the same reduction as
/// [`crate::field::energy`], so `Q = 2·energy` bit for bit.
pub fn charge(psi: &ComplexVectorField) -> f64 {
    psi.norm_sqr()
}

fn divergence(grid: &Grid, j: &[[f64; 3]]) -> Vec<f64> {
    let mut acc = vec![0.0; grid.len()];
    for axis in 0..3 {
        let comp: Vec<C> = j.iter().map(|v| C::new(v[axis], 0.0)).collect();
        let d = spectral_derivative(grid, &comp, axis);
        for (a, x) in acc.iter_mut().zip(d) {
            *a += x.re;
        }
    }
    acc
}

/// Max-norm of `∂_t j₀ + ∇·j` at each sample of a uniformly spaced
/// trajectory. `∂_t` uses the same stencils as [`time_derivatives`].
pub fn continuity_residual(trajectory: &[(ComplexVectorField, f64)]) -> Result<Vec<f64>> {
    let n = trajectory.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("continuity residual needs >= 3 samples, got {n}")));
    }
    let h = trajectory[1].1 - trajectory[0].1;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("sample times must increase".into()));
    }
    for w in trajectory.windows(2) {
        let step = w[1].1 - w[0].1;
        if (step - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(Error::InvalidArgument(format!("irregular sample spacing: {step} vs {h}")));
        }
    }
    let currents: Vec<CurrentField> = trajectory.iter().map(|(p, _)| noether_current(p)).collect();
    let j0s: Vec<MultiField> = currents
        .iter()
        .map(|c| MultiField::from_data(c.grid, 1, c.j0.iter().map(|&x| C::new(x, 0.0)).collect()).expect("sizes"))
        .collect();
    let dj0 = time_derivatives(&j0s, h).expect("n >= 3");
    Ok(currents
        .iter()
        .zip(dj0)
        .map(|(c, d)| {
            let div = divergence(&c.grid, &c.j);
            div.iter().zip(&d.data).map(|(a, b)| (a + b.re).abs()).fold(0.0, f64::max)
        })
        .collect())
}

/// Periodic space-time lattice: `nt` slices over a period `t_length`, each a
/// spatial [`Grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeGrid {
    pub nt: usize,
    pub t_length: f64,
    pub space: Grid,
}

impl SpacetimeGrid {
    pub fn new(nt: usize, t_length: f64, space: Grid) -> Result<Self> {
        if nt < 4 || nt % 2 != 0 {
            return Err(Error::InvalidArgument(format!("nt must be even and >= 4, got {nt}")));
        }
        if !(t_length > 0.0) {
            return Err(Error::InvalidArgument("t_length must be positive".into()));
        }
        Ok(Self { nt, t_length, space })
    }

    pub fn len(&self) -> usize {
        self.nt * self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        self.t_length / self.nt as f64
    }

    pub fn cell(&self) -> f64 {
        self.dt() * self.space.cell_volume()
    }

    /// `(t, x, y, z)` of a flat point index.
    pub fn coords(&self, idx: usize) -> [f64; 4] {
        let it = idx / self.space.len();
        let x = self.space.position(idx % self.space.len());
        [it as f64 * self.dt(), x[0], x[1], x[2]]
    }
}

/// `n`-component field on a [`SpacetimeGrid`], stored
/// `((it·n + ix)·n + iy)·n + iz` then component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeField {
    pub grid: SpacetimeGrid,
    pub ncomp: usize,
    pub data: Vec<C>,
}

impl SpacetimeField {
    pub fn from_fn(grid: SpacetimeGrid, ncomp: usize, f: impl Fn([f64; 4]) -> Vec<C> + Sync) -> Self {
        let data = (0..grid.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let v = f(grid.coords(i));
                assert_eq!(v.len(), ncomp);
                v
            })
            .collect();
        Self { grid, ncomp, data }
    }

    pub fn point(&self, i: usize) -> &[C] {
        &self.data[i * self.ncomp..(i + 1) * self.ncomp]
    }

    fn axpy(&self, other: &Self, a: f64) -> Self {
        Self {
            grid: self.grid,
            ncomp: self.ncomp,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x + y * a).collect(),
        }
    }

    /// Spectral derivative along axis `0 = t`, `1..=3 = x, y, z`.
    pub fn derivative(&self, axis: usize) -> Self {
        let ns = self.grid.space.n();
        let shape = [self.grid.nt, ns, ns, ns];
        let lengths = [self.grid.t_length, self.grid.space.box_length(), self.grid.space.box_length(), self.grid.space.box_length()];
        let n = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product::<usize>() * self.ncomp;
        let mut planner = FftPlanner::new();
        let fwd: Arc<dyn Fft<f64>> = planner.plan_fft_forward(n);
        let inv: Arc<dyn Fft<f64>> = planner.plan_fft_inverse(n);
        let block = stride * n;
        let mut out = self.data.clone();
        let scale = 2.0 * std::f64::consts::PI / lengths[axis];
        out.par_chunks_mut(block).for_each(|chunk| {
            let mut line = vec![ZERO; n];
            for offset in 0..stride {
                for (j, l) in line.iter_mut().enumerate() {
                    *l = chunk[offset + j * stride];
                }
                fwd.process(&mut line);
                for (j, l) in line.iter_mut().enumerate() {
                    let m = if j < n / 2 { j as f64 } else if j == n / 2 { 0.0 } else { j as f64 - n as f64 };
                    *l *= I * (m * scale) / n as f64;
                }
                inv.process(&mut line);
                for (j, l) in line.iter().enumerate() {
                    chunk[offset + j * stride] = *l;
                }
            }
        });
        Self {
            grid: self.grid,
            ncomp: self.ncomp,
            data: out,
        }
    }

    pub fn gradient(&self) -> [Self; 4] {
        std::array::from_fn(|mu| self.derivative(mu))
    }

    /// Divergence-form contraction `Σ_μ ∂_μ v_μ` of four fields.
    fn divergence(v: &[Self; 4]) -> Self {
        let mut acc = v[0].derivative(0);
        for (mu, vm) in v.iter().enumerate().skip(1) {
            acc = acc.axpy(&vm.derivative(mu), 1.0);
        }
        acc
    }
}

/// Everything a Lagrangian density sees at one space-time point.
pub struct PointJet<'a> {
    pub psi: &'a [C],
    pub dpsi: [&'a [C]; 4],
    pub bar: &'a [C],
    pub dbar: [&'a [C]; 4],
}

/// A density `ℒ(ψ, ∂ψ, ψ̄, ∂ψ̄)` with its partial derivatives in `ψ`.
pub trait LagrangianDensity: Sync {
    fn density(&self, p: &PointJet) -> C;

    /// `(∂ℒ/∂ψ_a, [∂ℒ/∂(∂_μ ψ_a)]_μ)`.
    fn partials(&self, p: &PointJet) -> (Vec<C>, [Vec<C>; 4]);
}

impl LagrangianDensity for GYOperatorSpec {
    fn density(&self, p: &PointJet) -> C {
        let n = self.dim();
        let mut tmp = vec![ZERO; n];
        let mut acc = ZERO;
        for mu in 0..4 {
            self.gammas[mu].apply(p.dpsi[mu], &mut tmp);
            acc += dot(p.bar, &tmp);
            self.gammas[mu].apply(p.psi, &mut tmp);
            acc -= dot(p.dbar[mu], &tmp);
        }
        -acc / 2.0 - dot(p.bar, p.psi) * self.kappa
    }

    fn partials(&self, p: &PointJet) -> (Vec<C>, [Vec<C>; 4]) {
        let n = self.dim();
        let mut d_psi: Vec<C> = p.bar.iter().map(|b| -b * self.kappa).collect();
        let mut tmp = vec![ZERO; n];
        for mu in 0..4 {
            self.gammas[mu].apply_left(p.dbar[mu], &mut tmp);
            for (a, t) in d_psi.iter_mut().zip(&tmp) {
                *a += t / 2.0;
            }
        }
        let d_dpsi = std::array::from_fn(|mu| {
            let mut v = vec![ZERO; n];
            self.gammas[mu].apply_left(p.bar, &mut v);
            v.iter_mut().for_each(|x| *x *= -0.5);
            v
        });
        (d_psi, d_dpsi)
    }
}

fn with_jets<R: Send>(
    psi: &SpacetimeField,
    bar: &SpacetimeField,
    f: impl Fn(usize, &PointJet) -> R + Sync,
) -> Vec<R> {
    let dpsi = psi.gradient();
    let dbar = bar.gradient();
    (0..psi.grid.len())
        .into_par_iter()
        .map(|i| {
            let jet = PointJet {
                psi: psi.point(i),
                dpsi: std::array::from_fn(|mu| dpsi[mu].point(i)),
                bar: bar.point(i),
                dbar: std::array::from_fn(|mu| dbar[mu].point(i)),
            };
            f(i, &jet)
        })
        .collect()
}

fn csum(v: &[C]) -> C {
    let re = sum_by(v, |c| c.re);
    let im = sum_by(v, |c| c.im);
    C::new(re, im)
}

/// `S = Σ ℒ · ΔtΔV` over the periodic lattice, with spectral derivatives.
pub fn action<L: LagrangianDensity>(lag: &L, psi: &SpacetimeField, bar: &SpacetimeField) -> C {
    let dens = with_jets(psi, bar, |_, j| lag.density(j));
    csum(&dens) * psi.grid.cell()
}

/// Varies `ψ → ψ ± εδ` with `ψ̄` held fixed. Returns
/// `([S(ψ+εδ) − S(ψ−εδ)]/(2ε), Σ E(ψ)·δ ΔtΔV)` where
/// `E = ∂ℒ/∂ψ − ∂_μ(∂ℒ/∂(∂_μψ))` is the Euler–Lagrange expression.
pub fn variational_check_with<L: LagrangianDensity>(
    lag: &L,
    psi: &SpacetimeField,
    bar: &SpacetimeField,
    delta: &SpacetimeField,
    epsilon: f64,
) -> Result<(C, C)> {
    if !(epsilon > 0.0 && epsilon <= 1e-2) {
        return Err(Error::InvalidArgument(format!("epsilon must be in (0, 1e-2], got {epsilon}")));
    }
    if psi.grid != bar.grid || psi.grid != delta.grid || psi.ncomp != delta.ncomp || psi.ncomp != bar.ncomp {
        return Err(Error::DimensionMismatch("variational_check fields disagree".into()));
    }
    let plus = action(lag, &psi.axpy(delta, epsilon), bar);
    let minus = action(lag, &psi.axpy(delta, -epsilon), bar);
    let numeric = (plus - minus) / (2.0 * epsilon);

    let n = psi.ncomp;
    let parts = with_jets(psi, bar, |_, j| lag.partials(j));
    let mut d_psi = Vec::with_capacity(psi.data.len());
    let mut flux: [Vec<C>; 4] = std::array::from_fn(|_| Vec::with_capacity(psi.data.len()));
    for (a, b) in parts {
        d_psi.extend(a);
        for mu in 0..4 {
            flux[mu].extend_from_slice(&b[mu]);
        }
    }
    let flux = flux.map(|data| SpacetimeField { grid: psi.grid, ncomp: n, data });
    let div = SpacetimeField::divergence(&flux);
    let pairing: Vec<C> = d_psi
        .iter()
        .zip(&div.data)
        .zip(&delta.data)
        .map(|((a, b), d)| (a - b) * d)
        .collect();
    let analytic = csum(&pairing) * psi.grid.cell();
    Ok((numeric, analytic))
}

/// [`variational_check_with`] for a Gel'fand–Yaglom operator, with `ψ̄`
/// formed by the operator's conjugation rule.
pub fn variational_check(spec: &GYOperatorSpec, psi: &SpacetimeField, delta: &SpacetimeField, epsilon: f64) -> Result<(C, C)> {
    if psi.ncomp != spec.dim() {
        return Err(Error::DimensionMismatch(format!("operator dimension {}, field has {}", spec.dim(), psi.ncomp)));
    }
    let bar_data: Vec<C> = psi.data.chunks(psi.ncomp).flat_map(|p| spec.bar(p)).collect();
    let bar = SpacetimeField { grid: psi.grid, ncomp: psi.ncomp, data: bar_data };
    variational_check_with(spec, psi, &bar, delta, epsilon)
}

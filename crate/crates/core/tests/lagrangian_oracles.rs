use std::f64::consts::PI;

use moqed::evolve::{curl_central, step_spectral};
use moqed::field::{energy, make_gaussian_packet, make_plane_wave, random_transverse_field, Helicity, PlaneWaveSpec};
use moqed::gelfand_yaglom::{
    charge, continuity_residual, el_residual_series, gy_residual, noether_current, spatial_derivatives,
    variational_check, variational_check_with, GYOperatorSpec, LagrangianDensity, MultiField, PointJet,
    SpacetimeField, SpacetimeGrid,
};
use moqed::{Complex64, ComplexVectorField, Grid};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

fn box_grid(n: usize) -> Grid {
    Grid::new(n, 2.0 * PI).unwrap()
}

fn packet() -> ComplexVectorField {
    make_gaussian_packet([2, 1, 0], 1.0, Helicity::Plus, &box_grid(16)).unwrap()
}

fn order_of_halving(errs: &[f64]) -> Vec<f64> {
    errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[test]
fn exact_time_derivative_gives_vanishing_gy_residual() {
    // ∂_t ψ = i∇×ψ taken spectrally; the α-operator must cancel it
    let psi = packet();
    let f = MultiField::from_vector_field(&psi);
    let [dx, dy, dz] = spatial_derivatives(&f);
    let i = C::new(0.0, 1.0);
    let dt_data: Vec<C> = (0..psi.grid().len())
        .flat_map(|p| {
            let d = |m: &MultiField, c: usize| m.point(p)[c];
            [
                i * (d(&dy, 2) - d(&dz, 1)),
                i * (d(&dz, 0) - d(&dx, 2)),
                i * (d(&dx, 1) - d(&dy, 0)),
            ]
        })
        .collect();
    let dt = MultiField::from_data(*psi.grid(), 3, dt_data).unwrap();
    let r = gy_residual(&GYOperatorSpec::majorana_oppenheimer(), &f, &[dt, dx, dy, dz]).unwrap();
    assert!(r.l2_norm() <= 1e-12 * f.l2_norm(), "{}", r.l2_norm());
}

#[test]
fn el_residual_is_second_order_in_sampling() {
    let psi = packet();
    let hs = [0.1, 0.05, 0.025, 0.0125];
    let errs: Vec<f64> = hs
        .iter()
        .map(|&h| {
            let s: Vec<_> = (0..3).map(|j| step_spectral(&psi, 0.3 + j as f64 * h)).collect();
            el_residual_series(&s, h)[1]
        })
        .collect();
    for o in order_of_halving(&errs) {
        assert!((o - 2.0).abs() <= 0.3, "{errs:?}");
    }
}

#[test]
fn el_residual_flags_wrong_dynamics() {
    // the central-difference scheme is not an exact trajectory of the
    // continuum equation; its residual stays finite as h shrinks
    let psi = packet();
    let h = 0.01;
    let wrong: Vec<ComplexVectorField> = (0..3)
        .scan(psi.clone(), |p, _| {
            let out = p.clone();
            let c = curl_central(p);
            let data = p.data().iter().zip(&c).map(|(a, b)| std::array::from_fn(|k| a[k] + b[k] * C::new(0.0, h))).collect();
            *p = ComplexVectorField::from_data(*p.grid(), data).unwrap();
            Some(out)
        })
        .collect();
    let right: Vec<_> = (0..3).map(|j| step_spectral(&psi, j as f64 * h)).collect();
    assert!(el_residual_series(&wrong, h)[1] > 100.0 * el_residual_series(&right, h)[1]);
}

#[test]
fn continuity_is_second_order_and_flags_corruption() {
    let psi = packet();
    let hs = [0.1, 0.05, 0.025, 0.0125];
    let traj = |h: f64, n: usize| -> Vec<(ComplexVectorField, f64)> {
        (0..n).map(|j| (step_spectral(&psi, j as f64 * h), j as f64 * h)).collect()
    };
    let errs: Vec<f64> = hs.iter().map(|&h| continuity_residual(&traj(h, 3)).unwrap()[1]).collect();
    for o in order_of_halving(&errs) {
        assert!((o - 2.0).abs() <= 0.3, "{errs:?}");
    }

    let mut t = traj(0.02, 7);
    let clean = continuity_residual(&t).unwrap();
    for p in t[3].0.data_mut() {
        p[1] *= 1.2;
    }
    let bad = continuity_residual(&t).unwrap();
    assert!(bad[2] > 10.0 * clean[2] && bad[4] > 10.0 * clean[4]);
    assert!((bad[0] - clean[0]).abs() < 1e-12 * clean[0].max(1.0));
}

#[test]
fn static_field_has_no_continuity_residual() {
    let g = box_grid(8);
    let mut psi = ComplexVectorField::zeros(g);
    for p in psi.data_mut() {
        *p = [C::new(0.3, 0.1), C::new(-1.0, 0.0), C::new(0.0, 2.0)];
    }
    let traj: Vec<_> = (0..4).map(|j| (step_spectral(&psi, 0.1 * j as f64), 0.1 * j as f64)).collect();
    assert!(continuity_residual(&traj).unwrap().iter().all(|&r| r <= 1e-13));
}

#[test]
fn charge_properties() {
    let g = box_grid(12);
    let psi = random_transverse_field(8, &g, 3.0).unwrap();
    assert_eq!(charge(&psi), 2.0 * energy(&psi));
    let cur = noether_current(&psi);
    assert!(cur.max_imag <= 1e-14);
    assert!(cur.j0.iter().all(|&x| x >= 0.0));
    let q0 = charge(&psi);
    let end = (0..1000).fold(psi, |p, _| step_spectral(&p, 0.01));
    assert!((charge(&end) - q0).abs() <= 1e-12 * q0);
}

fn random_spacetime(st: SpacetimeGrid, ncomp: usize, seed: u64) -> SpacetimeField {
    // a few smooth Fourier components with random amplitudes
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<([f64; 4], Vec<C>)> = (0..4)
        .map(|_| {
            let k = [rng.gen_range(-1i32..=1) as f64, rng.gen_range(-1i32..=1) as f64, rng.gen_range(-1i32..=1) as f64, rng.gen_range(-1i32..=1) as f64];
            (k, (0..ncomp).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        })
        .collect();
    let w = 2.0 * PI / st.t_length;
    let s = 2.0 * PI / st.space.box_length();
    SpacetimeField::from_fn(st, ncomp, |x| {
        let mut v = vec![C::new(0.0, 0.0); ncomp];
        for (k, a) in &terms {
            let ph = C::from_polar(1.0, k[0] * w * x[0] + s * (k[1] * x[1] + k[2] * x[2] + k[3] * x[3]));
            for (vi, ai) in v.iter_mut().zip(a) {
                *vi += ai * ph;
            }
        }
        v
    })
}

fn small_st() -> SpacetimeGrid {
    SpacetimeGrid::new(4, 3.0, Grid::new(4, 2.0 * PI).unwrap()).unwrap()
}

#[test]
fn variational_check_quadratic_action_is_exact() {
    let st = small_st();
    let spec = GYOperatorSpec::majorana_oppenheimer();
    let psi = random_spacetime(st, 3, 1);
    // same seed: δ shares ψ's Fourier content, so the pairing is nonzero
    let delta = random_spacetime(st, 3, 1);
    for eps in [1e-2, 1e-3] {
        let (num, ana) = variational_check(&spec, &psi, &delta, eps).unwrap();
        assert!(ana.norm() > 1.0, "{ana}");
        assert!((num - ana).norm() <= 1e-9 * ana.norm(), "{num} {ana}");
    }
    let zero = SpacetimeField::from_fn(st, 3, |_| vec![C::new(0.0, 0.0); 3]);
    assert_eq!(variational_check(&spec, &psi, &zero, 1e-3).unwrap(), (C::new(0.0, 0.0), C::new(0.0, 0.0)));
}

/// The photon Lagrangian plus `λ(ψ̄·ψ)³`, cubic in `ψ` for fixed `ψ̄`.
struct Cubic {
    base: GYOperatorSpec,
    lambda: f64,
}

impl LagrangianDensity for Cubic {
    fn density(&self, p: &PointJet) -> C {
        let s: C = p.bar.iter().zip(p.psi).map(|(a, b)| a * b).sum();
        self.base.density(p) + s * s * s * self.lambda
    }

    fn partials(&self, p: &PointJet) -> (Vec<C>, [Vec<C>; 4]) {
        let s: C = p.bar.iter().zip(p.psi).map(|(a, b)| a * b).sum();
        let (mut d, dd) = self.base.partials(p);
        for (x, b) in d.iter_mut().zip(p.bar) {
            *x += s * s * b * (3.0 * self.lambda);
        }
        (d, dd)
    }
}

#[test]
fn variational_check_is_second_order_in_epsilon() {
    let st = small_st();
    let lag = Cubic { base: GYOperatorSpec::majorana_oppenheimer(), lambda: 0.3 };
    let psi = random_spacetime(st, 3, 3);
    let bar = random_spacetime(st, 3, 4);
    let delta = random_spacetime(st, 3, 5);
    let errs: Vec<f64> = [8e-3, 4e-3, 2e-3, 1e-3]
        .iter()
        .map(|&e| {
            let (n, a) = variational_check_with(&lag, &psi, &bar, &delta, e).unwrap();
            (n - a).norm()
        })
        .collect();
    for o in order_of_halving(&errs) {
        assert!((o - 2.0).abs() <= 0.05, "{errs:?}");
    }
}

#[test]
fn variation_vanishes_on_photon_solution() {
    let g = box_grid(4);
    let k = 3f64.sqrt();
    let st = SpacetimeGrid::new(6, 2.0 * PI / k, g).unwrap();
    let pw = make_plane_wave(&PlaneWaveSpec { mode: [1, 1, -1], helicity: Helicity::Minus, amplitude: C::new(1.0, 0.0) }, &g).unwrap();
    let psi = SpacetimeField::from_fn(st, 3, |x| {
        let idx = (0..g.len()).find(|&i| g.position(i) == [x[1], x[2], x[3]]).unwrap();
        let ph = C::from_polar(1.0, -k * x[0]);
        pw.data()[idx].iter().map(|c| c * ph).collect()
    });
    let delta = random_spacetime(st, 3, 6);
    let (num, ana) = variational_check(&GYOperatorSpec::majorana_oppenheimer(), &psi, &delta, 1e-3).unwrap();
    assert!(num.norm() < 1e-10 && ana.norm() < 1e-10, "{num} {ana}");
}

fn dirac_null_vector(spec: &GYOperatorSpec, e: f64, p: [f64; 3]) -> Vec<C> {
    let m: DMatrix<C> = spec.momentum_symbol(e, p);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let (imin, _) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &s)| if s < b.1 { (i, s) } else { b });
    (0..4).map(|c| v_t[(imin, c)].conj()).collect()
}

#[test]
fn dirac_plane_wave_is_stationary() {
    let mass = 0.8;
    let spec = GYOperatorSpec::dirac(mass).unwrap();
    let g = box_grid(4);
    let p = [1.0, 0.0, -1.0];
    let e = (2.0 + mass * mass).sqrt();
    let u = dirac_null_vector(&spec, e, p);
    let st = SpacetimeGrid::new(6, 2.0 * PI / e, g).unwrap();
    let psi = SpacetimeField::from_fn(st, 4, |x| {
        let ph = C::from_polar(1.0, -(e * x[0] - p[0] * x[1] - p[1] * x[2] - p[2] * x[3]));
        u.iter().map(|c| c * ph).collect()
    });
    let delta = random_spacetime(st, 4, 7);
    let (num, ana) = variational_check(&spec, &psi, &delta, 1e-3).unwrap();
    assert!(num.norm() < 1e-9 && ana.norm() < 1e-9, "{num} {ana}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dirac_dispersion(px in -3.0..3.0f64, py in -3.0..3.0f64, pz in -3.0..3.0f64, m in 0.2..2.0f64, off in 0.5..3.0f64) {
        let spec = GYOperatorSpec::dirac(m).unwrap();
        let p = [px, py, pz];
        let shell = (px * px + py * py + pz * pz + m * m).sqrt();
        prop_assert!(spec.min_singular_value(shell, p) < 1e-10);
        prop_assert!(spec.min_singular_value(-shell, p) < 1e-10);
        prop_assert!(spec.min_singular_value(shell + off * m, p) >= 0.1 * m);
        let below = shell - off * m;
        if below.abs() < shell - 0.5 * m {
            prop_assert!(spec.min_singular_value(below, p) >= 0.1 * m);
        }
    }

    #[test]
    fn current_is_real_and_charge_doubles_energy(seed in 0u64..500) {
        let psi = random_transverse_field(seed, &box_grid(8), 3.0).unwrap();
        prop_assert!(noether_current(&psi).max_imag <= 1e-14);
        prop_assert!((charge(&psi) - 2.0 * energy(&psi)).abs() <= 1e-14 * charge(&psi));
    }
}

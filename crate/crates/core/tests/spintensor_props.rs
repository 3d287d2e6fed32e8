use moqed::spintensor::{
    clebsch_gordan_join, clebsch_gordan_split, dirac_spinor_residual, em_to_spintensors, from_json,
    maxwell_spinor_residual, rumer_jet, spintensors_to_em, sym_dimension, symmetrize, to_json, SpinTensor,
    SpinorPair, SpinorPairJet, DEFAULT_C_NORM,
};
use moqed::field::Helicity;
use moqed::verify::{enumerated_sym_dimension, plane_wave_spinor_jets};
use moqed::Complex64;
use proptest::prelude::*;

type C = Complex64;
const I: C = C::new(0.0, 1.0);

fn c() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C::new(a, b))
}

fn tensor(k: usize, r: usize) -> impl Strategy<Value = SpinTensor> {
    prop::collection::vec(c(), 1 << (k + r)).prop_map(move |v| SpinTensor::from_components(k, r, v).unwrap())
}

fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `σ·p` applied to a two-spinor.
fn sigma_p(p: [f64; 3], v: [C; 2]) -> [C; 2] {
    [v[0] * p[2] + v[1] * C::new(p[0], -p[1]), v[0] * C::new(p[0], p[1]) - v[1] * p[2]]
}

#[test]
fn sym_dimension_matches_rank_of_symmetrizer() {
    for k in 0..=3 {
        for r in 0..=3 {
            assert_eq!(sym_dimension(k, r), enumerated_sym_dimension(k, r), "({k},{r})");
        }
    }
}

#[test]
fn rumer_identification_on_random_plane_waves() {
    let waves = [
        ([1.0, 0.0, 0.0], Helicity::Plus),
        ([0.3, -1.2, 2.0], Helicity::Minus),
        ([-2.0, 0.5, 0.1], Helicity::Plus),
        ([0.0, 0.0, -1.0], Helicity::Minus),
    ];
    for (k, h) in waves {
        let (f, fd) = plane_wave_spinor_jets(k, h, C::new(0.7, -0.2), [0.4, -1.0, 2.2], 0.9, DEFAULT_C_NORM).unwrap();
        let scale = DEFAULT_C_NORM * 3.0;
        assert!(maxwell_spinor_residual(&f, &fd).iter().all(|z| z.norm() <= 1e-12 * scale));
        assert!(dirac_spinor_residual(&rumer_jet(&f, &fd), 0.0).iter().all(|z| z.norm() <= 1e-12 * scale));
    }
}

#[test]
fn off_shell_wave_is_not_a_solution() {
    // ψ evolving at twice the right frequency: the spinor system must notice
    let (f, fd) = plane_wave_spinor_jets([0.0, 0.0, 1.0], Helicity::Plus, C::new(1.0, 0.0), [0.0; 3], 0.0, 1.0).unwrap();
    let mut f2 = f.clone();
    f2.d[0] = f.d[0].scale(C::new(2.0, 0.0));
    let mut fd2 = fd.clone();
    fd2.d[0] = fd.d[0].scale(C::new(2.0, 0.0));
    assert!(maxwell_spinor_residual(&f2, &fd2).iter().any(|z| z.norm() > 0.1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn em_round_trip(e in prop::array::uniform3(-10.0..10.0f64), b in prop::array::uniform3(-10.0..10.0f64), cn in 0.5..8.0f64) {
        let (f, fd) = em_to_spintensors(e, b, cn).unwrap();
        let (e2, b2) = spintensors_to_em(&f, &fd, cn).unwrap();
        for i in 0..3 {
            prop_assert!((e[i] - e2[i]).abs() <= 1e-12 * 10.0);
            prop_assert!((b[i] - b2[i]).abs() <= 1e-12 * 10.0);
        }
    }

    #[test]
    fn cg_split_reconstructs(t in tensor(2, 0)) {
        let (s, sym) = clebsch_gordan_split(&t).unwrap();
        prop_assert!(sym.is_symmetric(1e-15));
        prop_assert!(max_diff(clebsch_gordan_join(s, &sym).components(), t.components()) <= 1e-14);
    }

    #[test]
    fn cg_scalar_scales_by_determinant(t in tensor(2, 0), u in prop::array::uniform4(c())) {
        let m = [[u[0], u[1]], [u[2], u[3]]];
        let det = u[0] * u[3] - u[1] * u[2];
        let (s, _) = clebsch_gordan_split(&t).unwrap();
        let (s2, _) = clebsch_gordan_split(&t.transform_undotted(&m)).unwrap();
        prop_assert!((s2 - det * s).norm() <= 1e-12 * (1.0 + s.norm()) * 16.0);
    }

    #[test]
    fn symmetrize_is_idempotent_and_covariant(t in tensor(2, 1), u in prop::array::uniform4(c()), v in prop::array::uniform4(c())) {
        let mu = [[u[0], u[1]], [u[2], u[3]]];
        let mv = [[v[0], v[1]], [v[2], v[3]]];
        let s = symmetrize(&t);
        prop_assert!(max_diff(symmetrize(&s).components(), s.components()) <= 1e-14);
        let a = symmetrize(&t.transform_undotted(&mu).transform_dotted(&mv));
        let b = s.transform_undotted(&mu).transform_dotted(&mv);
        prop_assert!(max_diff(a.components(), b.components()) <= 1e-11);
    }

    #[test]
    fn json_dump_round_trip(t in tensor(1, 2)) {
        prop_assert_eq!(from_json(&to_json(&t)).unwrap(), t);
    }

    #[test]
    fn massive_plane_wave_solves_dirac_system(xi in prop::array::uniform2(c()), p in prop::array::uniform3(-2.0..2.0f64), m in 0.1..3.0f64) {
        let e = (p.iter().map(|x| x * x).sum::<f64>() + m * m).sqrt();
        let sp = sigma_p(p, xi);
        let eta = [(xi[0] * e + sp[0]) / m, (xi[1] * e + sp[1]) / m];
        let value = SpinorPair { xi, eta };
        let rate = [-I * e, I * p[0], I * p[1], I * p[2]];
        let jet = SpinorPairJet {
            value,
            d: rate.map(|r| SpinorPair { xi: xi.map(|z| z * r), eta: eta.map(|z| z * r) }),
        };
        let scale = 1.0 + e * (xi[0].norm() + xi[1].norm()) * (1.0 + e / m);
        prop_assert!(dirac_spinor_residual(&jet, m).iter().all(|z| z.norm() <= 1e-12 * scale));
        prop_assert!(dirac_spinor_residual(&jet, 1.5 * m).iter().any(|z| z.norm() > 1e-6));
    }
}

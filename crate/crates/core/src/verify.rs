//! The self-check suite behind `moqed verify`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::verify_identity_suite;
use crate::field::{helicity_basis, Helicity};
use crate::report::{Check, Report};
use crate::spintensor::{
    clebsch_gordan_join, clebsch_gordan_split, dirac_spinor_residual, em_to_spintensors, maxwell_spinor_residual,
    rumer_jet, spintensors_to_em, sym_dimension, symmetrize, triple_to_spintensor, SpinTensor, SpinTensorJet,
    DEFAULT_C_NORM,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SEED: u64 = 20_240_531;

/// Number of linearly independent tensors in the image of [`symmetrize`]
/// for rank `(k, r)`, found as the numerical rank of the symmetrizer.
pub fn enumerated_sym_dimension(k: usize, r: usize) -> usize {
    let size = 1usize << (k + r);
    let mut m = DMatrix::<f64>::zeros(size, size);
    for col in 0..size {
        let mut basis = vec![Complex64::new(0.0, 0.0); size];
        basis[col] = Complex64::new(1.0, 0.0);
        let t = SpinTensor::from_components(k, r, basis).expect("size matches rank");
        for (row, c) in symmetrize(&t).components().iter().enumerate() {
            m[(row, col)] = c.re;
        }
    }
    m.singular_values().iter().filter(|&&s| s > 1e-9).count()
}

/// Field spintensors and their derivatives for the vacuum plane wave
/// `ψ = A e_σ(k) exp(i(k·x + σ|k|t))`, `F = ψ`, `F* = conj ψ`, at one point.
pub fn plane_wave_spinor_jets(
    kvec: [f64; 3],
    helicity: Helicity,
    amplitude: Complex64,
    x: [f64; 3],
    t: f64,
    c_norm: f64,
) -> crate::Result<(SpinTensorJet, SpinTensorJet)> {
    let basis = helicity_basis(kvec)?;
    let kn = kvec.iter().map(|v| v * v).sum::<f64>().sqrt();
    let phase = Complex64::from_polar(1.0, kvec[0] * x[0] + kvec[1] * x[1] + kvec[2] * x[2] + helicity.sign() * kn * t);
    let psi: [Complex64; 3] = basis.get(helicity).map(|e| e * amplitude * phase);
    let rates = [I * helicity.sign() * kn, I * kvec[0], I * kvec[1], I * kvec[2]];
    let conj = |v: [Complex64; 3]| v.map(|z| z.conj());
    let f = SpinTensorJet {
        value: triple_to_spintensor(psi, c_norm, false),
        d: rates.map(|r| triple_to_spintensor(psi.map(|z| z * r), c_norm, false)),
    };
    let fdot = SpinTensorJet {
        value: triple_to_spintensor(conj(psi), c_norm, true),
        d: rates.map(|r| triple_to_spintensor(conj(psi.map(|z| z * r)), c_norm, true)),
    };
    Ok((f, fdot))
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn spintensor_checks(rng: &mut ChaCha8Rng, report: &mut Report) {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let e: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
        let b: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
        let (f, fd) = em_to_spintensors(e, b, DEFAULT_C_NORM).expect("valid norm");
        let (e2, b2) = spintensors_to_em(&f, &fd, DEFAULT_C_NORM).expect("consistent pair");
        for i in 0..3 {
            worst = worst.max((e[i] - e2[i]).abs()).max((b[i] - b2[i]).abs());
        }
    }
    report.push(Check::new("spintensor_em_round_trip", worst <= 1e-12, format!("max error {worst:.3e}")));

    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let comps = (0..4).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let t = SpinTensor::from_components(2, 0, comps).expect("rank (2,0)");
        let (s, sym) = clebsch_gordan_split(&t).expect("rank (2,0)");
        let back = clebsch_gordan_join(s, &sym);
        let diff: Vec<Complex64> = back.components().iter().zip(t.components()).map(|(a, b)| a - b).collect();
        worst = worst.max(max_norm(&diff));
    }
    report.push(Check::new("cg_split_reconstruction", worst <= 1e-14, format!("max error {worst:.3e}")));

    for k in 0..=3 {
        for r in 0..=3 {
            let formula = sym_dimension(k, r);
            let counted = enumerated_sym_dimension(k, r);
            report.push(Check::new(
                format!("sym_dimension_{k}_{r}"),
                formula == counted,
                format!("formula {formula}, enumerated {counted}"),
            ));
        }
    }
}

fn rumer_checks(rng: &mut ChaCha8Rng, report: &mut Report) {
    let mut maxwell: f64 = 0.0;
    let mut dirac: f64 = 0.0;
    for _ in 0..20 {
        let kvec: [f64; 3] = loop {
            let k = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            if k.iter().map(|v: &f64| v * v).sum::<f64>() > 0.25 {
                break k;
            }
        };
        let h = if rng.gen_bool(0.5) { Helicity::Plus } else { Helicity::Minus };
        let amp = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let x = std::array::from_fn(|_| rng.gen_range(-5.0..5.0));
        let t = rng.gen_range(0.0..5.0);
        let (f, fd) = plane_wave_spinor_jets(kvec, h, amp, x, t, DEFAULT_C_NORM).expect("nonzero k");
        let scale = f.d.iter().map(|d| max_norm(d.components())).fold(1.0, f64::max);
        maxwell = maxwell.max(max_norm(&maxwell_spinor_residual(&f, &fd)) / scale);
        dirac = dirac.max(max_norm(&dirac_spinor_residual(&rumer_jet(&f, &fd), 0.0)) / scale);
    }
    report.push(Check::new("maxwell_spinor_plane_waves", maxwell <= 1e-10, format!("max relative residual {maxwell:.3e}")));
    report.push(Check::new("rumer_coincidence", dirac <= 1e-10, format!("max relative residual {dirac:.3e}")));
}

/// Runs every check. The report holds the individual identities plus two
/// roll-ups, `alpha_commutation_rules` and `gamma_clifford_relations`.
pub fn verify_suite() -> Report {
    let algebra = verify_identity_suite();
    let mut report = Report::default();
    let roll_up = |prefix: &str| {
        let group: Vec<&Check> = algebra.checks.iter().filter(|c| c.id.starts_with(prefix)).collect();
        let failed = group.iter().filter(|c| !c.passed).count();
        (failed == 0, format!("{} of {} exact identities hold", group.len() - failed, group.len()))
    };
    let (ok, detail) = roll_up("alpha_commutator_");
    report.push(Check::new("alpha_commutation_rules", ok, detail));
    let (ok, detail) = roll_up("gamma_clifford_");
    report.push(Check::new("gamma_clifford_relations", ok, detail));
    report.extend(algebra);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    spintensor_checks(&mut rng, &mut report);
    rumer_checks(&mut rng, &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = verify_suite();
        let failed: Vec<_> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(r.get("alpha_commutation_rules").is_some());
        assert!(r.get("rumer_coincidence").is_some());
    }

    #[test]
    fn enumeration_small_ranks() {
        assert_eq!(enumerated_sym_dimension(0, 0), 1);
        assert_eq!(enumerated_sym_dimension(2, 0), 3);
        assert_eq!(enumerated_sym_dimension(1, 1), 4);
    }
}

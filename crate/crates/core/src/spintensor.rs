//! Spintensors of rank `(k, r)`: `k` undotted and `r` dotted two-valued
//! indices.
//!
//! Storage: components are flat, row-major over the index tuple with the
//! undotted indices first and the dotted indices after them. Index value `1`
//! maps to bit `0` and `2` to bit `1`, so for rank `(2, 0)` the order is
//! `ξ¹¹, ξ¹², ξ²¹, ξ²²`.
//!
//! Spinor derivatives follow `∂_{λμ̇} = ∂_t·δ_{λμ̇} − (σ·∇)_{λμ̇}` with the
//! standard Pauli set; the raised form `∂^{λμ̇} = ε^{λα} ε^{μ̇β̇} ∂_{αβ̇}` with
//! `ε₁₂ = ε¹² = +1` then contracts to `∂_t + σ·∇`. Lower-index field
//! components are obtained with the same `ε`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default proportionality factor in the field ↔ spintensor map.
pub const DEFAULT_C_NORM: f64 = 4.0;

/// Tolerance used to decide that a pair of spintensors is mutually
/// conjugate, relative to the largest component.
pub const PAIR_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinTensor {
    k: usize,
    r: usize,
    components: Vec<Complex64>,
    symmetric: bool,
}

impl SpinTensor {
    pub fn zeros(k: usize, r: usize) -> Self {
        Self {
            k,
            r,
            components: vec![ZERO; 1 << (k + r)],
            symmetric: false,
        }
    }

    pub fn scalar(value: Complex64) -> Self {
        Self {
            k: 0,
            r: 0,
            components: vec![value],
            symmetric: true,
        }
    }

    pub fn from_components(k: usize, r: usize, components: Vec<Complex64>) -> Result<Self> {
        if components.len() != 1 << (k + r) {
            return Err(Error::DimensionMismatch(format!(
                "rank ({k},{r}) needs {} components, got {}",
                1usize << (k + r),
                components.len()
            )));
        }
        Ok(Self {
            k,
            r,
            components,
            symmetric: false,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    /// True when the tensor was produced by a symmetrizing constructor.
    pub fn is_flagged_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Flat offset of a 1-based index tuple (undotted first).
    pub fn offset(&self, indices: &[u8]) -> usize {
        assert_eq!(indices.len(), self.k + self.r, "index tuple length");
        indices.iter().fold(0, |acc, &i| {
            debug_assert!(i == 1 || i == 2, "spinor index must be 1 or 2");
            (acc << 1) | usize::from(i - 1)
        })
    }

    pub fn get(&self, indices: &[u8]) -> Complex64 {
        self.components[self.offset(indices)]
    }

    pub fn set(&mut self, indices: &[u8], v: Complex64) {
        let o = self.offset(indices);
        self.components[o] = v;
        self.symmetric = false;
    }

    /// 1-based index tuple for a flat offset.
    pub fn indices_of(&self, offset: usize) -> Vec<u8> {
        let n = self.k + self.r;
        (0..n).map(|p| ((offset >> (n - 1 - p)) & 1) as u8 + 1).collect()
    }

    /// Enumerative symmetry test under permutations of undotted and dotted
    /// indices separately.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.components.len()).all(|o| {
            let idx = self.indices_of(o);
            let canon = canonical(&idx, self.k);
            (self.components[o] - self.get(&canon)).norm() <= tol
        })
    }

    fn max_abs(&self) -> f64 {
        self.components.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            components: self.components.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    /// Applies `U` to every undotted index: `ξ'^{a…} = U_{ac}… ξ^{c…}`.
    pub fn transform_undotted(&self, u: &[[Complex64; 2]; 2]) -> Self {
        let mut out = self.clone();
        for slot in 0..self.k {
            out = out.apply_on_slot(slot, u);
        }
        out
    }

    /// Applies `V` to every dotted index.
    pub fn transform_dotted(&self, v: &[[Complex64; 2]; 2]) -> Self {
        let mut out = self.clone();
        for slot in self.k..self.k + self.r {
            out = out.apply_on_slot(slot, v);
        }
        out
    }

    fn apply_on_slot(&self, slot: usize, u: &[[Complex64; 2]; 2]) -> Self {
        let n = self.k + self.r;
        let bit = n - 1 - slot;
        let mut out = vec![ZERO; self.components.len()];
        for (o, slot_out) in out.iter_mut().enumerate() {
            let a = (o >> bit) & 1;
            let base = o & !(1 << bit);
            *slot_out = u[a][0] * self.components[base] + u[a][1] * self.components[base | (1 << bit)];
        }
        Self {
            components: out,
            ..self.clone()
        }
    }
}

/// Sorts the undotted and dotted parts of an index tuple independently.
fn canonical(idx: &[u8], k: usize) -> Vec<u8> {
    let mut c = idx.to_vec();
    c[..k].sort_unstable();
    c[k..].sort_unstable();
    c
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Averages over all permutations of the undotted indices and, independently,
/// of the dotted indices. The result is flagged symmetric.
pub fn symmetrize(t: &SpinTensor) -> SpinTensor {
    let undotted = permutations(t.k);
    let dotted = permutations(t.r);
    let norm = (undotted.len() * dotted.len()) as f64;
    let mut out = SpinTensor::zeros(t.k, t.r);
    let mut permuted = vec![0u8; t.k + t.r];
    for o in 0..t.components.len() {
        let idx = t.indices_of(o);
        let mut acc = ZERO;
        for pu in &undotted {
            for pd in &dotted {
                for (dst, &src) in pu.iter().enumerate() {
                    permuted[dst] = idx[src];
                }
                for (dst, &src) in pd.iter().enumerate() {
                    permuted[t.k + dst] = idx[t.k + src];
                }
                acc += t.get(&permuted);
            }
        }
        out.components[o] = acc / norm;
    }
    out.symmetric = true;
    out
}

/// Dimension of the symmetric subspace of rank `(k, r)`.
pub fn sym_dimension(k: usize, r: usize) -> usize {
    (k + 1) * (r + 1)
}

/// Splits a rank-`(2, 0)` tensor as `ξ^{ab} = s·ε^{ab} + S^{ab}` with `S`
/// symmetric and `ε¹² = +1`. Returns `(s, S)`.
pub fn clebsch_gordan_split(t: &SpinTensor) -> Result<(Complex64, SpinTensor)> {
    if t.k != 2 || t.r != 0 {
        return Err(Error::DimensionMismatch(format!("expected rank (2,0), got ({},{})", t.k, t.r)));
    }
    let scalar = (t.get(&[1, 2]) - t.get(&[2, 1])) / 2.0;
    Ok((scalar, symmetrize(t)))
}

/// Inverse of [`clebsch_gordan_split`].
pub fn clebsch_gordan_join(scalar: Complex64, sym: &SpinTensor) -> SpinTensor {
    let mut out = sym.clone();
    out.components[1] += scalar;
    out.components[2] -= scalar;
    out.symmetric = scalar == ZERO && sym.symmetric;
    out
}

/// `Σ (1/(k! r!)) a^{α…β̇…} z_{α₁}…z_{α_k} z̄_{β̇₁}…z̄_{β̇_r}`.
pub fn evaluate_sym_polynomial(t: &SpinTensor, z: [Complex64; 2], zbar: [Complex64; 2]) -> Complex64 {
    let norm = factorial(t.k) * factorial(t.r);
    let mut acc = ZERO;
    for (o, &a) in t.components.iter().enumerate() {
        if a == ZERO {
            continue;
        }
        let idx = t.indices_of(o);
        let mut term = a;
        for &i in &idx[..t.k] {
            term *= z[usize::from(i - 1)];
        }
        for &i in &idx[t.k..] {
            term *= zbar[usize::from(i - 1)];
        }
        acc += term;
    }
    acc / norm
}

/// Complex coordinates `F = E − iB` and `F* = E + iB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmTriple {
    pub f: [Complex64; 3],
    pub fstar: [Complex64; 3],
}

impl EmTriple {
    pub fn from_em(e: [f64; 3], b: [f64; 3]) -> Self {
        Self {
            f: std::array::from_fn(|i| Complex64::new(e[i], -b[i])),
            fstar: std::array::from_fn(|i| Complex64::new(e[i], b[i])),
        }
    }
}

fn sym2(v11: Complex64, v12: Complex64, v22: Complex64, dotted: bool) -> SpinTensor {
    let (k, r) = if dotted { (0, 2) } else { (2, 0) };
    SpinTensor {
        k,
        r,
        components: vec![v11, v12, v12, v22],
        symmetric: true,
    }
}

fn check_c_norm(c_norm: f64) -> Result<()> {
    if !(c_norm > 0.0 && c_norm.is_finite()) {
        return Err(Error::InvalidArgument(format!("c_norm must be positive, got {c_norm}")));
    }
    Ok(())
}

/// Maps a complex triple onto the upper-index symmetric spintensor
/// `(f¹¹, f¹², f²²) = c·(F₁ + iF₂, F₃, F₁ − iF₂)`.
pub fn triple_to_spintensor(f: [Complex64; 3], c_norm: f64, dotted: bool) -> SpinTensor {
    sym2(
        (f[0] + I * f[1]) * c_norm,
        f[2] * c_norm,
        (f[0] - I * f[1]) * c_norm,
        dotted,
    )
}

/// Inverse of [`triple_to_spintensor`]; reads the symmetric part.
pub fn spintensor_to_triple(t: &SpinTensor, c_norm: f64) -> [Complex64; 3] {
    let c = t.components();
    let f11 = c[0];
    let f12 = (c[1] + c[2]) / 2.0;
    let f22 = c[3];
    [
        (f11 + f22) / (2.0 * c_norm),
        (f11 - f22) / (2.0 * I * c_norm),
        f12 / c_norm,
    ]
}

/// Spinor images `f^{λμ}` (rank (2,0)) and `f^{λ̇μ̇}` (rank (0,2)) of the
/// electromagnetic field.
pub fn em_to_spintensors(e: [f64; 3], b: [f64; 3], c_norm: f64) -> Result<(SpinTensor, SpinTensor)> {
    check_c_norm(c_norm)?;
    let t = EmTriple::from_em(e, b);
    Ok((
        triple_to_spintensor(t.f, c_norm, false),
        triple_to_spintensor(t.fstar, c_norm, true),
    ))
}

/// Recovers `(E, B)` from a mutually conjugate pair of rank-2 spintensors.
pub fn spintensors_to_em(f: &SpinTensor, fdot: &SpinTensor, c_norm: f64) -> Result<([f64; 3], [f64; 3])> {
    check_c_norm(c_norm)?;
    if (f.k, f.r) != (2, 0) || (fdot.k, fdot.r) != (0, 2) {
        return Err(Error::DimensionMismatch("expected ranks (2,0) and (0,2)".into()));
    }
    let scale = f.max_abs().max(fdot.max_abs());
    let tol = PAIR_TOLERANCE * scale.max(f64::MIN_POSITIVE);
    if !f.is_symmetric(tol) || !fdot.is_symmetric(tol) {
        return Err(Error::InvalidArgument("spintensor pair is not symmetric".into()));
    }
    let fv = spintensor_to_triple(f, c_norm);
    let fs = spintensor_to_triple(fdot, c_norm);
    let mismatch = fv
        .iter()
        .zip(&fs)
        .map(|(a, b)| (a.conj() - b).norm())
        .fold(0.0, f64::max);
    if mismatch * c_norm > tol {
        return Err(Error::InconsistentPair { mismatch });
    }
    let e = std::array::from_fn(|i| ((fv[i] + fs[i]) / 2.0).re);
    let b = std::array::from_fn(|i| ((fs[i] - fv[i]) / (2.0 * I)).re);
    Ok((e, b))
}

/// Lowers both indices of a rank-2 spintensor with `ε`:
/// `f_{11} = f^{22}`, `f_{12} = −f^{21}`, `f_{21} = −f^{12}`, `f_{22} = f^{11}`.
pub fn lower_rank2(t: &SpinTensor) -> [Complex64; 4] {
    let c = t.components();
    [c[3], -c[2], -c[1], c[0]]
}

/// Value and spacetime derivatives `(∂_t, ∂_x, ∂_y, ∂_z)` of a spintensor
/// field at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTensorJet {
    pub value: SpinTensor,
    pub d: [SpinTensor; 4],
}

/// Value and derivatives of the Dirac two-spinor pair at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorPair {
    pub xi: [Complex64; 2],
    pub eta: [Complex64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorPairJet {
    pub value: SpinorPair,
    pub d: [SpinorPair; 4],
}

/// Applies `∂_t − σ·∇` (`sign = −1`) or `∂_t + σ·∇` (`sign = +1`) to a
/// two-spinor given its four derivative samples.
fn weyl_operator(d: [[Complex64; 2]; 4], sign: f64) -> [Complex64; 2] {
    let [dt, dx, dy, dz] = d;
    // σ·∇ v = (∂z v₁ + (∂x − i∂y) v₂, (∂x + i∂y) v₁ − ∂z v₂)
    let s0 = dz[0] + dx[1] - I * dy[1];
    let s1 = dx[0] + I * dy[0] - dz[1];
    [dt[0] + sign * s0, dt[1] + sign * s1]
}

/// Residuals of the two-spinor Dirac system
/// `∂_{λμ̇}ξ + imη = 0`, `∂^{λμ̇}η + imξ = 0`, ordered `(ξ-eq₁, ξ-eq₂,
/// η-eq₁, η-eq₂)`.
pub fn dirac_spinor_residual(s: &SpinorPairJet, m: f64) -> [Complex64; 4] {
    let xi_d = s.d.map(|p| p.xi);
    let eta_d = s.d.map(|p| p.eta);
    let a = weyl_operator(xi_d, -1.0);
    let b = weyl_operator(eta_d, 1.0);
    let im = I * m;
    [
        a[0] + im * s.value.eta[0],
        a[1] + im * s.value.eta[1],
        b[0] + im * s.value.xi[0],
        b[1] + im * s.value.xi[1],
    ]
}

/// The Rumer identification `ξ = (f₁₁, f₁₂)`, `η = (f_{1̇1̇}, f_{1̇2̇})`
/// applied to a single sample.
pub fn rumer_pair(f: &SpinTensor, fdot: &SpinTensor) -> SpinorPair {
    let lf = lower_rank2(f);
    let ld = lower_rank2(fdot);
    SpinorPair {
        xi: [lf[0], lf[1]],
        eta: [ld[0], ld[1]],
    }
}

/// Rumer identification applied to value and derivatives.
pub fn rumer_jet(f: &SpinTensorJet, fdot: &SpinTensorJet) -> SpinorPairJet {
    SpinorPairJet {
        value: rumer_pair(&f.value, &fdot.value),
        d: std::array::from_fn(|mu| rumer_pair(&f.d[mu], &fdot.d[mu])),
    }
}

/// Residuals of the massless source-free spinor Maxwell system:
///
/// ```text
/// ∂_{11̇} f₁₁ + ∂_{12̇} f₁₂,   ∂_{21̇} f₁₁ + ∂_{22̇} f₁₂,
/// ∂^{11̇} f_{1̇1̇} + ∂^{21̇} f_{1̇2̇},   ∂^{12̇} f_{1̇1̇} + ∂^{22̇} f_{1̇2̇}
/// ```
///
/// The fourth line uses `∂^{22̇}` in its second term, completing the index
/// pattern of the block.
pub fn maxwell_spinor_residual(f: &SpinTensorJet, fdot: &SpinTensorJet) -> [Complex64; 4] {
    let lf: [[Complex64; 4]; 4] = std::array::from_fn(|mu| lower_rank2(&f.d[mu]));
    let ld: [[Complex64; 4]; 4] = std::array::from_fn(|mu| lower_rank2(&fdot.d[mu]));
    let a = weyl_operator(lf.map(|c| [c[0], c[1]]), -1.0);
    let b = weyl_operator(ld.map(|c| [c[0], c[1]]), 1.0);
    [a[0], a[1], b[0], b[1]]
}

/// Golden-file representation: `{k, r, components: [[re, im], …]}` in the
/// storage order documented at module level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinTensorDump {
    pub k: usize,
    pub r: usize,
    pub components: Vec<[f64; 2]>,
}

impl From<&SpinTensor> for SpinTensorDump {
    fn from(t: &SpinTensor) -> Self {
        Self {
            k: t.k,
            r: t.r,
            components: t.components.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<SpinTensorDump> for SpinTensor {
    type Error = Error;
    fn try_from(d: SpinTensorDump) -> Result<Self> {
        SpinTensor::from_components(d.k, d.r, d.components.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }
}

pub fn to_json(t: &SpinTensor) -> String {
    serde_json::to_string(&SpinTensorDump::from(t)).expect("plain data serializes")
}

pub fn from_json(s: &str) -> Result<SpinTensor> {
    let dump: SpinTensorDump =
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("spintensor json: {e}")))?;
    SpinTensor::try_from(dump)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn storage_order() {
        let t = SpinTensor::zeros(2, 0);
        assert_eq!(t.offset(&[1, 1]), 0);
        assert_eq!(t.offset(&[1, 2]), 1);
        assert_eq!(t.offset(&[2, 1]), 2);
        assert_eq!(t.offset(&[2, 2]), 3);
        let m = SpinTensor::zeros(1, 1);
        assert_eq!(m.offset(&[2, 1]), 2);
        assert_eq!(m.indices_of(1), vec![1, 2]);
        assert!(SpinTensor::from_components(1, 1, vec![ZERO; 3]).is_err());
    }

    #[test]
    fn em_map_x_field() {
        let (f, fdot) = em_to_spintensors([1.0, 0.0, 0.0], [0.0; 3], 4.0).unwrap();
        assert_eq!(f.get(&[1, 1]), c(4.0, 0.0));
        assert_eq!(f.get(&[1, 2]), c(0.0, 0.0));
        assert_eq!(f.get(&[2, 2]), c(4.0, 0.0));
        assert_eq!(fdot.get(&[1, 1]), c(4.0, 0.0));
    }

    #[test]
    fn em_map_z_fields() {
        let (f, fdot) = em_to_spintensors([0.0, 0.0, 1.0], [0.0, 0.0, 1.0], 1.0).unwrap();
        assert_eq!(f.get(&[1, 2]), c(1.0, -1.0));
        assert_eq!(f.get(&[2, 1]), c(1.0, -1.0));
        assert_eq!(f.get(&[1, 1]), ZERO);
        assert_eq!(f.get(&[2, 2]), ZERO);
        assert_eq!(fdot.get(&[1, 2]), c(1.0, 1.0));
    }

    #[test]
    fn em_map_zero_and_bad_norm() {
        let (f, fdot) = em_to_spintensors([0.0; 3], [0.0; 3], 4.0).unwrap();
        assert!(f.components().iter().chain(fdot.components()).all(|z| *z == ZERO));
        assert!(em_to_spintensors([1.0; 3], [0.0; 3], 0.0).is_err());
        assert!(em_to_spintensors([1.0; 3], [0.0; 3], -2.0).is_err());
    }

    #[test]
    fn em_round_trip() {
        let e = [1.0, 2.0, 3.0];
        let b = [-1.0, 0.0, 1.0];
        let (f, fdot) = em_to_spintensors(e, b, 4.0).unwrap();
        let (e2, b2) = spintensors_to_em(&f, &fdot, 4.0).unwrap();
        for i in 0..3 {
            assert!((e[i] - e2[i]).abs() <= 1e-12);
            assert!((b[i] - b2[i]).abs() <= 1e-12);
        }
        let z = SpinTensor::zeros(2, 0);
        let zd = SpinTensor::zeros(0, 2);
        assert_eq!(spintensors_to_em(&z, &zd, 4.0).unwrap(), ([0.0; 3], [0.0; 3]));
    }

    #[test]
    fn non_conjugate_pair_rejected() {
        let (f, mut fdot) = em_to_spintensors([1.0, 2.0, 3.0], [-1.0, 0.0, 1.0], 4.0).unwrap();
        fdot.components[0] += c(0.0, 1.0);
        assert!(matches!(
            spintensors_to_em(&f, &fdot, 4.0),
            Err(Error::InconsistentPair { .. })
        ));
    }

    #[test]
    fn symmetrize_two_index() {
        let mut t = SpinTensor::zeros(2, 0);
        t.set(&[1, 2], c(1.0, 0.0));
        let s = symmetrize(&t);
        assert_eq!(s.get(&[1, 2]), c(0.5, 0.0));
        assert_eq!(s.get(&[2, 1]), c(0.5, 0.0));
        assert!(s.is_flagged_symmetric());
        assert_eq!(symmetrize(&s).components(), s.components());
        let sc = SpinTensor::scalar(c(3.0, -1.0));
        assert_eq!(symmetrize(&sc).components(), sc.components());
    }

    #[test]
    fn cg_split_cases() {
        let mut t = SpinTensor::zeros(2, 0);
        t.set(&[1, 2], c(1.0, 0.0));
        t.set(&[2, 1], c(-1.0, 0.0));
        let (s, sym) = clebsch_gordan_split(&t).unwrap();
        assert_eq!(s, c(1.0, 0.0));
        assert!(sym.components().iter().all(|z| *z == ZERO));

        let (f, _) = em_to_spintensors([0.3, -1.0, 2.0], [0.5, 0.5, 0.0], 4.0).unwrap();
        let (s, sym) = clebsch_gordan_split(&f).unwrap();
        assert_eq!(s, ZERO);
        assert_eq!(sym.components(), f.components());
        assert!(clebsch_gordan_split(&SpinTensor::zeros(1, 1)).is_err());
    }

    #[test]
    fn sym_dimension_values() {
        assert_eq!(sym_dimension(2, 0), 3);
        assert_eq!(sym_dimension(0, 0), 1);
        assert_eq!(sym_dimension(1, 1), 4);
    }

    #[test]
    fn polynomial_examples() {
        let t = SpinTensor::scalar(c(5.0, 0.0));
        assert_eq!(evaluate_sym_polynomial(&t, [c(0.3, 1.0), c(2.0, 0.0)], [ZERO, ZERO]), c(5.0, 0.0));

        let mut t = SpinTensor::zeros(2, 0);
        t.set(&[1, 1], c(2.0, 0.0));
        let v = evaluate_sym_polynomial(&symmetrize(&t), [c(1.0, 0.0), ZERO], [ZERO, ZERO]);
        assert!(close(v, c(1.0, 0.0), 1e-15));

        let mut t = SpinTensor::zeros(1, 1);
        t.set(&[1, 1], c(1.0, 0.0));
        let z = [c(0.7, -0.2), c(1.1, 0.4)];
        let w = [c(-0.3, 0.9), c(0.5, 0.5)];
        assert!(close(evaluate_sym_polynomial(&t, z, w), z[0] * w[0], 1e-15));
    }

    #[test]
    fn lowering_matches_epsilon_contraction() {
        let t = SpinTensor::from_components(2, 0, vec![c(1.0, 0.5), c(2.0, 0.0), c(-3.0, 1.0), c(0.0, 4.0)]).unwrap();
        let eps = [[0.0, 1.0], [-1.0, 0.0]];
        let low = lower_rank2(&t);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = ZERO;
                for p in 0..2 {
                    for q in 0..2 {
                        acc += eps[a][p] * eps[b][q] * t.components()[p * 2 + q];
                    }
                }
                assert_eq!(low[a * 2 + b], acc);
            }
        }
    }

    #[test]
    fn static_field_has_zero_residual() {
        let (f, fdot) = em_to_spintensors([1.0, -2.0, 0.5], [0.1, 0.2, 0.3], 4.0).unwrap();
        let jf = SpinTensorJet {
            value: f,
            d: std::array::from_fn(|_| SpinTensor::zeros(2, 0)),
        };
        let jd = SpinTensorJet {
            value: fdot,
            d: std::array::from_fn(|_| SpinTensor::zeros(0, 2)),
        };
        assert!(maxwell_spinor_residual(&jf, &jd).iter().all(|z| *z == ZERO));
    }

    #[test]
    fn zero_dirac_field_has_zero_residual() {
        let zero = SpinorPair { xi: [ZERO; 2], eta: [ZERO; 2] };
        let jet = SpinorPairJet { value: zero, d: [zero; 4] };
        assert!(dirac_spinor_residual(&jet, 1.3).iter().all(|z| *z == ZERO));
    }

    #[test]
    fn json_dump_round_trip() {
        let (f, _) = em_to_spintensors([1.0, 2.0, 3.0], [-1.0, 0.0, 1.0], 4.0).unwrap();
        let s = to_json(&f);
        assert!(s.starts_with(r#"{"k":2,"r":0,"components":[["#));
        let back = from_json(&s).unwrap();
        assert_eq!(back.components(), f.components());
        assert!(from_json(r#"{"k":1,"r":0,"components":[[1,0]]}"#).is_err());
        assert!(from_json(r#"{"k":0,"r":0,"components":[[1,0]],"x":1}"#).is_err());
    }
}

//! Exact Gaussian-rational matrix arithmetic.
//!
//! Houses the spin-1 matrices `α¹, α², α³` (with `α⁰ = I₃`), the Pauli set and
//! the canonical-basis Dirac matrices, together with an identity suite that
//! checks their commutation and Clifford relations with zero numerical error.
//!
//! Index convention: the API is 0-based. Documentation that quotes a matrix
//! entry as `(row, col)` uses 1-based positions, so `alpha_matrix(3)` entry
//! `(1, 2)` is `m.get(0, 1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::{Check, Report};

/// Complex number with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// `re + i·im` from integers.
    pub fn from_ints(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let d = rhs.norm_sqr();
        if d.is_zero() {
            return None;
        }
        let num = self * &rhs.conj();
        Some(Self {
            re: num.re / &d,
            im: num.im / d,
        })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: Self) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::one()
    }
}

/// Dense row-major matrix of Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Build from integer `(re, im)` pairs given row by row.
    pub fn from_int_pairs<const R: usize, const C: usize>(rows: [[(i64, i64); C]; R]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&(re, im)| GaussianRational::from_ints(re, im)))
            .collect();
        Self {
            rows: R,
            cols: C,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).conj());
            }
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    fn same_shape(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Lossy conversion for use by the floating-point modules.
    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.entries.iter().map(GaussianRational::to_complex64).collect()
    }
}

fn square_pair(a: &ExactMatrix, b: &ExactMatrix, what: &str) -> Result<()> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{what} needs square matrices of equal size, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// `AB − BA`.
pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    square_pair(a, b, "commutator")?;
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// `AB + BA`.
pub fn anticommutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    square_pair(a, b, "anticommutator")?;
    a.try_mul(b)?.try_add(&b.try_mul(a)?)
}

/// Kronecker product; block `(i, j)` of the result is `a[i][j]·B`.
pub fn kronecker(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ExactMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let s = a.get(ar, ac);
            if s.is_zero() {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out.set(ar * b.rows + br, ac * b.cols + bc, s * b.get(br, bc));
                }
            }
        }
    }
    out
}

/// Spin-1 matrices: `alpha_matrix(0)` is `I₃`, and for `i ∈ 1..=3` the
/// entries are `(αⁱ)_{ab} = i·ε_{iab}`, e.g. `α¹ = [[0,0,0],[0,0,i],[0,−i,0]]`.
pub fn alpha_matrix(i: usize) -> Result<ExactMatrix> {
    let m = match i {
        0 => ExactMatrix::identity(3),
        1 => ExactMatrix::from_int_pairs([
            [(0, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 1)],
            [(0, 0), (0, -1), (0, 0)],
        ]),
        2 => ExactMatrix::from_int_pairs([
            [(0, 0), (0, 0), (0, -1)],
            [(0, 0), (0, 0), (0, 0)],
            [(0, 1), (0, 0), (0, 0)],
        ]),
        3 => ExactMatrix::from_int_pairs([
            [(0, 0), (0, 1), (0, 0)],
            [(0, -1), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0)],
        ]),
        _ => return Err(Error::IndexOutOfRange { index: i, max: 3 }),
    };
    Ok(m)
}

/// Pauli matrices with `pauli(0) = I₂`.
pub fn pauli(k: usize) -> Result<ExactMatrix> {
    let m = match k {
        0 => ExactMatrix::identity(2),
        1 => ExactMatrix::from_int_pairs([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
        2 => ExactMatrix::from_int_pairs([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
        3 => ExactMatrix::from_int_pairs([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
        _ => return Err(Error::IndexOutOfRange { index: k, max: 3 }),
    };
    Ok(m)
}

fn block2(tl: &ExactMatrix, tr: &ExactMatrix, bl: &ExactMatrix, br: &ExactMatrix) -> ExactMatrix {
    let n = tl.rows;
    let mut out = ExactMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, tl.get(r, c).clone());
            out.set(r, c + n, tr.get(r, c).clone());
            out.set(r + n, c, bl.get(r, c).clone());
            out.set(r + n, c + n, br.get(r, c).clone());
        }
    }
    out
}

/// Canonical (Dirac) basis: `γ₀ = diag(σ₀, −σ₀)`, `γₖ = [[0, σₖ], [−σₖ, 0]]`.
pub fn gamma_matrix(mu: usize) -> Result<ExactMatrix> {
    if mu > 3 {
        return Err(Error::IndexOutOfRange { index: mu, max: 3 });
    }
    let z = ExactMatrix::zeros(2, 2);
    let s = pauli(mu)?;
    let neg = s.scale(&GaussianRational::from_ints(-1, 0));
    Ok(if mu == 0 {
        block2(&s, &z, &z, &neg)
    } else {
        block2(&z, &s, &neg, &z)
    })
}

/// The block matrix `diag(σ₀, σ₀)` as typeset for `γ₀` in the source
/// display. It is `I₄` and does not anticommute with `γₖ`; kept so the
/// identity suite can demonstrate the failure.
pub fn gamma0_as_printed() -> ExactMatrix {
    ExactMatrix::identity(4)
}

/// Minkowski metric component, signature `(+, −, −, −)`.
pub fn minkowski(mu: usize, nu: usize) -> i64 {
    match (mu, nu) {
        (0, 0) => 1,
        (a, b) if a == b => -1,
        _ => 0,
    }
}

/// Levi-Civita symbol on 0-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `Σₖ nₖ αᵏ` for an integer vector `n`.
pub fn alpha_dot(n: [i64; 3]) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(3, 3);
    for (k, &nk) in n.iter().enumerate() {
        let a = alpha_matrix(k + 1).expect("index in range");
        acc = acc
            .try_add(&a.scale(&GaussianRational::from_ints(nk, 0)))
            .expect("same shape");
    }
    acc
}

/// Runs the identity suite on the built-in matrices.
pub fn verify_identity_suite() -> Report {
    let alphas = [1, 2, 3].map(|i| alpha_matrix(i).expect("index in range"));
    let gammas = [0, 1, 2, 3].map(|m| gamma_matrix(m).expect("index in range"));
    verify_identity_suite_with(&alphas, &gammas)
}

/// Runs the identity suite on caller-supplied `α¹..α³` and `γ₀..γ₃`.
///
/// Checks, in order: the nine commutators `[αᵢ, αₖ] = −i εᵢₖₗ αₗ`, hermiticity
/// of each `αᵢ`, the spin-1 relation `(α·n)³ = α·n` along each axis, and the
/// sixteen anticommutators `{γ_μ, γ_ν} = 2η_{μν} I₄`.
pub fn verify_identity_suite_with(alphas: &[ExactMatrix; 3], gammas: &[ExactMatrix; 4]) -> Report {
    let mut report = Report::default();
    let minus_i = GaussianRational::from_ints(0, -1);

    for i in 0..3 {
        for k in 0..3 {
            let id = format!("alpha_commutator_{}{}", i + 1, k + 1);
            let check = match commutator(&alphas[i], &alphas[k]) {
                Ok(lhs) => {
                    let mut rhs = ExactMatrix::zeros(3, 3);
                    for l in 0..3 {
                        let e = levi_civita(i, k, l);
                        if e != 0 {
                            let term = alphas[l].scale(&(&minus_i * &GaussianRational::from_ints(e, 0)));
                            rhs = rhs.try_add(&term).expect("3x3");
                        }
                    }
                    if lhs == rhs {
                        Check::new(id, true, "exact equality")
                    } else {
                        Check::new(id, false, format!("lhs {lhs:?} != rhs {rhs:?}"))
                    }
                }
                Err(e) => Check::new(id, false, e.to_string()),
            };
            report.push(check);
        }
    }

    for (i, a) in alphas.iter().enumerate() {
        let id = format!("alpha_hermitian_{}", i + 1);
        report.push(Check::new(id, a.is_hermitian(), if a.is_hermitian() { "exact" } else { "not hermitian" }));
    }

    for axis in 0..3 {
        let a = &alphas[axis];
        let cube = a.try_mul(a).and_then(|a2| a2.try_mul(a));
        let id = format!("alpha_spin1_cube_axis_{}", axis + 1);
        let ok = matches!(&cube, Ok(c) if c == a);
        report.push(Check::new(id, ok, if ok { "exact" } else { "(α·n)³ ≠ α·n" }));
    }

    for mu in 0..4 {
        for nu in 0..4 {
            let id = format!("gamma_clifford_{mu}{nu}");
            let expected = ExactMatrix::identity(4).scale(&GaussianRational::from_ints(2 * minkowski(mu, nu), 0));
            let check = match anticommutator(&gammas[mu], &gammas[nu]) {
                Ok(lhs) if lhs == expected => Check::new(id, true, "exact equality"),
                Ok(lhs) => Check::new(id, false, format!("{{γ{mu},γ{nu}}} = {lhs:?}")),
                Err(e) => Check::new(id, false, e.to_string()),
            };
            report.push(check);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn alpha1_matches_display() {
        let a = alpha_matrix(1).unwrap();
        let expected = ExactMatrix::from_int_pairs([
            [(0, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 1)],
            [(0, 0), (0, -1), (0, 0)],
        ]);
        assert_eq!(a, expected);
    }

    #[test]
    fn alpha0_is_identity() {
        assert_eq!(alpha_matrix(0).unwrap(), ExactMatrix::identity(3));
    }

    #[test]
    fn alpha3_entries() {
        let a = alpha_matrix(3).unwrap();
        assert_eq!(*a.get(0, 1), gi(0, 1));
        assert_eq!(*a.get(1, 0), gi(0, -1));
    }

    #[test]
    fn alpha_and_gamma_reject_bad_index() {
        assert!(matches!(alpha_matrix(4), Err(Error::IndexOutOfRange { index: 4, max: 3 })));
        assert!(gamma_matrix(7).is_err());
        assert!(pauli(4).is_err());
    }

    #[test]
    fn alpha_entries_are_i_epsilon() {
        for i in 1..=3 {
            let a = alpha_matrix(i).unwrap();
            for r in 0..3 {
                for c in 0..3 {
                    assert_eq!(*a.get(r, c), gi(0, levi_civita(i - 1, r, c)));
                }
            }
        }
    }

    #[test]
    fn gamma_blocks() {
        let g1 = gamma_matrix(1).unwrap();
        // [[0, σ₁], [−σ₁, 0]]
        assert_eq!(*g1.get(0, 3), gi(1, 0));
        assert_eq!(*g1.get(1, 2), gi(1, 0));
        assert_eq!(*g1.get(2, 1), gi(-1, 0));
        assert_eq!(*g1.get(3, 0), gi(-1, 0));
        assert!(g1.get(0, 0).is_zero());
        let g0 = gamma_matrix(0).unwrap();
        assert_eq!(*g0.get(0, 0), gi(1, 0));
        assert_eq!(*g0.get(3, 3), gi(-1, 0));
    }

    #[test]
    fn gamma2_squared_is_minus_identity() {
        let g2 = gamma_matrix(2).unwrap();
        // Entry-by-entry product written out: γ₂ = [[0, σ₂], [−σ₂, 0]]
        // so γ₂² = diag(−σ₂², −σ₂²) and σ₂² = I.
        let sq = g2.try_mul(&g2).unwrap();
        assert_eq!(sq, ExactMatrix::identity(4).scale(&gi(-1, 0)));
    }

    #[test]
    fn commutator_cases() {
        let a1 = alpha_matrix(1).unwrap();
        let a2 = alpha_matrix(2).unwrap();
        let a3 = alpha_matrix(3).unwrap();
        assert_eq!(commutator(&a1, &a2).unwrap(), a3.scale(&gi(0, -1)));
        assert_eq!(commutator(&a2, &a3).unwrap(), a1.scale(&gi(0, -1)));
        assert!(commutator(&a2, &a2).unwrap().is_zero());
        let g = gamma_matrix(0).unwrap();
        assert!(matches!(commutator(&a1, &g), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn anticommutator_cases() {
        let g0 = gamma_matrix(0).unwrap();
        let g1 = gamma_matrix(1).unwrap();
        let g2 = gamma_matrix(2).unwrap();
        assert!(anticommutator(&g1, &g2).unwrap().is_zero());
        assert_eq!(anticommutator(&g0, &g0).unwrap(), ExactMatrix::identity(4).scale(&gi(2, 0)));
        assert!(anticommutator(&g1, &ExactMatrix::zeros(4, 4)).unwrap().is_zero());
        assert!(anticommutator(&g1, &ExactMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn kronecker_cases() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(kronecker(&i2, &i2), ExactMatrix::identity(4));
        let s1 = pauli(1).unwrap();
        let k = kronecker(&s1, &s1);
        assert_eq!(k.entries().len(), 16);
        let i3 = ExactMatrix::identity(3);
        let x = kronecker(&alpha_matrix(1).unwrap(), &i3);
        let y = kronecker(&i3, &alpha_matrix(2).unwrap());
        assert!(commutator(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn printed_gamma0_breaks_clifford_relations() {
        let mut gammas = [0, 1, 2, 3].map(|m| gamma_matrix(m).unwrap());
        gammas[0] = gamma0_as_printed();
        let alphas = [1, 2, 3].map(|i| alpha_matrix(i).unwrap());
        let report = verify_identity_suite_with(&alphas, &gammas);
        let failed: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        assert_eq!(
            failed,
            ["gamma_clifford_01", "gamma_clifford_02", "gamma_clifford_03", "gamma_clifford_10", "gamma_clifford_20", "gamma_clifford_30"]
        );
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let r1 = verify_identity_suite();
        assert!(r1.all_passed(), "{:?}", r1.failures().collect::<Vec<_>>());
        assert_eq!(r1.checks.len(), 9 + 3 + 3 + 16);
        assert_eq!(r1, verify_identity_suite());
    }

    #[test]
    fn transposed_alpha1_fails_commutation() {
        let mut alphas = [1, 2, 3].map(|i| alpha_matrix(i).unwrap());
        alphas[0] = alphas[0].transpose();
        let gammas = [0, 1, 2, 3].map(|m| gamma_matrix(m).unwrap());
        let report = verify_identity_suite_with(&alphas, &gammas);
        // αᵀ = −α for these antisymmetric imaginary matrices, so every
        // commutator with exactly one α₁ factor on either side flips sign.
        for id in ["alpha_commutator_12", "alpha_commutator_21", "alpha_commutator_23", "alpha_commutator_31"] {
            assert!(!report.get(id).unwrap().passed, "{id}");
        }
        assert!(report.get("alpha_commutator_11").unwrap().passed);
    }

    #[test]
    fn gaussian_rational_division() {
        let a = gi(3, 4);
        let b = gi(1, -2);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(a.checked_div(&GaussianRational::zero()).is_none());
    }

    #[test]
    fn spin1_cube_for_signed_axes() {
        for axis in 0..3 {
            for s in [-1, 1] {
                let mut n = [0; 3];
                n[axis] = s;
                let a = alpha_dot(n);
                let cube = a.try_mul(&a).unwrap().try_mul(&a).unwrap();
                assert_eq!(cube, a);
            }
        }
    }
}

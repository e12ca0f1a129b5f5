//! Dense complex vectors, square matrices and rank-4 tensors.
//!
//! Everything here is small and dense: the model is meant for a handful of
//! levels, and the brute-force checks work on `n² × n²` matrices.

mod expm;
mod linalg;
mod rank4;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::{Error, Result, C64};

pub use expm::mat_exp;
pub use linalg::{hermitian_eigenvalues, symmetric_eigenvalues};
pub use rank4::{apply4, flatten4, unflatten4, Rank4};

/// Complex column vector `ψᵃ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector(Vec<C64>);

impl CVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); n])
    }

    pub fn from_vec(v: Vec<C64>) -> Self {
        Self(v)
    }

    pub fn from_real(v: &[f64]) -> Self {
        Self(v.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, C64> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.0
    }

    /// Entry-wise complex conjugate, i.e. the components `ψ̄ᵃ`.
    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|z| z.conj()).collect())
    }

    /// Sesquilinear product `Σ_a conj(selfᵃ) otherᵃ`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self(self.0.iter().map(|z| z * k).collect())
    }

    /// Outer product `self · other†`.
    pub fn outer(&self, other: &Self) -> CMatrix {
        let n = self.len();
        CMatrix::from_fn(n, |i, j| self.0[i] * other.0[j].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for &CVector {
    type Output = CVector;
    fn add(self, rhs: &CVector) -> CVector {
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CVector {
    type Output = CVector;
    fn sub(self, rhs: &CVector) -> CVector {
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&CVector> for CVector {
    fn add_assign(&mut self, rhs: &CVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Mul<C64> for &CVector {
    type Output = CVector;
    fn mul(self, k: C64) -> CVector {
        self.scale(k)
    }
}

impl Mul<f64> for &CVector {
    type Output = CVector;
    fn mul(self, k: f64) -> CVector {
        self.scale(C64::new(k, 0.0))
    }
}

/// Square complex matrix, row-major.
///
/// Used for covariant forms (`G_{āb}` as `M[a][b]`), contravariant forms
/// (`G^{bā}` as `M[b][a]`) and mixed operators alike; which one a value
/// represents is documented where it is produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from rows, rejecting ragged or non-square input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    /// Row-major data of length `n²`.
    pub fn from_data(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Shape { expected: n * n, found: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { C64::new(d[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * k).collect() }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * k).collect() }
    }

    pub fn mul_vec(&self, v: &CVector) -> CVector {
        let n = self.n;
        CVector::from_vec((0..n).map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect())
    }

    /// Row vector times matrix: `(vᵀ M)_j = Σ_i v_i M[i][j]`.
    pub fn vec_mul(&self, v: &CVector) -> CVector {
        let n = self.n;
        CVector::from_vec((0..n).map(|j| (0..n).map(|i| v[i] * self[(i, j)]).sum()).collect())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// `‖M − M†‖_∞` taken entry-wise.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0_f64;
        for i in 0..self.n {
            for j in i..self.n {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Entry-wise contraction `Σ_ij self[i][j] other[i][j]` (no conjugation).
    pub fn contract(&self, other: &Self) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn inverse(&self) -> Result<Self> {
        linalg::inverse(self)
    }

    /// `‖M‖₁ ‖M⁻¹‖₁`.
    pub fn condition_number(&self) -> Result<f64> {
        Ok(self.norm1() * self.inverse()?.norm1())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, k: C64) -> CMatrix {
        self.scale(k)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, k: f64) -> CMatrix {
        self.scale_re(k)
    }
}

/// Returns `((M + M†)/2, ‖M − M†‖_∞)`.
pub fn hermitize(m: &CMatrix) -> (CMatrix, f64) {
    let defect = m.hermiticity_defect();
    let h = CMatrix::from_fn(m.dim(), |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    (h, defect)
}

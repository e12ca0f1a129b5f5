use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use super::CMatrix;
use crate::{Error, Result, C64};

/// Rank-4 tensor viewed as a linear map between two-index objects.
///
/// `T[a][b][c][d]` holds `T^{b ā d c̄}`: the output pair is `(a, b)` and the
/// input pair is `(c, d)`. Storage is the row-major flattening, so
/// [`flatten4`] and [`unflatten4`] are copies of the same buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank4 {
    n: usize,
    data: Vec<C64>,
}

impl Rank4 {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C64::new(0.0, 0.0); n * n * n * n] }
    }

    /// The identity map `δ_ac δ_bd`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b, c, d| if a == c && b == d { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        data.push(f(a, b, c, d));
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest violation of `T[a][b][c][d] = T[c][d][a][b]`.
    pub fn pair_exchange_defect(&self) -> f64 {
        let n = self.n;
        let mut d = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        d = d.max((self[(a, b, c, e)] - self[(c, e, a, b)]).norm());
                    }
                }
            }
        }
        d
    }

    fn offset(&self, (a, b, c, d): (usize, usize, usize, usize)) -> usize {
        let n = self.n;
        ((a * n + b) * n + c) * n + d
    }
}

impl Index<(usize, usize, usize, usize)> for Rank4 {
    type Output = C64;
    fn index(&self, idx: (usize, usize, usize, usize)) -> &C64 {
        &self.data[self.offset(idx)]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for Rank4 {
    fn index_mut(&mut self, idx: (usize, usize, usize, usize)) -> &mut C64 {
        let o = self.offset(idx);
        &mut self.data[o]
    }
}

/// `Y[a][b] = Σ_{c,d} T[a][b][c][d] X[c][d]`.
pub fn apply4(t: &Rank4, x: &CMatrix) -> Result<CMatrix> {
    let n = t.dim();
    if x.dim() != n {
        return Err(Error::Shape { expected: n, found: x.dim() });
    }
    let nn = n * n;
    let xs = x.as_slice();
    let data = t.data.chunks_exact(nn).map(|row| row.iter().zip(xs).map(|(a, b)| a * b).sum()).collect();
    CMatrix::from_data(n, data)
}

/// Row index `a·n + b`, column index `c·n + d`.
pub fn flatten4(t: &Rank4) -> CMatrix {
    CMatrix::from_data(t.n * t.n, t.data.clone()).expect("n⁴ entries")
}

pub fn unflatten4(m: &CMatrix) -> Result<Rank4> {
    let nn = m.dim();
    let n = libm::round(libm::sqrt(nn as f64)) as usize;
    if n * n != nn {
        return Err(Error::NotPerfectSquare(nn));
    }
    Ok(Rank4 { n, data: m.as_slice().to_vec() })
}

use alloc::vec;
use alloc::vec::Vec;

use super::CMatrix;
use crate::{Error, Result, C64};

/// Gauss–Jordan inversion with partial pivoting.
pub(crate) fn inverse(m: &CMatrix) -> Result<CMatrix> {
    let n = m.dim();
    let scale = m.max_abs();
    if n == 0 {
        return Ok(CMatrix::zeros(0));
    }
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Singular("matrix"));
    }
    let tiny = scale * f64::EPSILON * n as f64;
    let mut a = m.as_slice().to_vec();
    let mut inv = CMatrix::identity(n).as_slice().to_vec();

    for col in 0..n {
        let (piv, piv_abs) =
            (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= tiny {
            return Err(Error::Singular("matrix"));
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
                inv.swap(col * n + j, piv * n + j);
            }
        }
        let d = C64::new(1.0, 0.0) / a[col * n + col];
        for j in 0..n {
            a[col * n + j] *= d;
            inv[col * n + j] *= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let (ac, ic) = (a[col * n + j], inv[col * n + j]);
                a[r * n + j] -= f * ac;
                inv[r * n + j] -= f * ic;
            }
        }
    }
    CMatrix::from_data(n, inv)
}

/// Eigenvalues of a real symmetric matrix (row-major, `m × m`), ascending.
///
/// Cyclic Jacobi rotations; adequate for the small matrices used here.
pub fn symmetric_eigenvalues(m: usize, data: &[f64]) -> Vec<f64> {
    let mut a = data.to_vec();
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    s += a[i * m + j] * a[i * m + j];
                }
            }
        }
        s
    };
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        if off(&a) <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Eigenvalues of a hermitian matrix, ascending.
///
/// Uses the real embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is that of
/// the hermitian matrix with every eigenvalue doubled.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.dim();
    let m = 2 * n;
    let mut e = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize explicitly so small hermiticity drift is ignored
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            e[i * m + j] = z.re;
            e[(i + n) * m + (j + n)] = z.re;
            e[i * m + (j + n)] = -z.im;
            e[(i + n) * m + j] = z.im;
        }
    }
    let ev = symmetric_eigenvalues(m, &e);
    ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

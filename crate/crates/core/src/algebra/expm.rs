use super::CMatrix;

const TAYLOR_DEGREE: usize = 18;

/// `exp(A t)` by scaling and squaring with a truncated Taylor core.
///
/// The argument is scaled until its 1-norm is at most 1/2; the degree-18
/// remainder is then below `0.5¹⁹/19! ≈ 2e-23` relative, so the result is
/// limited by rounding in the squaring phase.
pub fn mat_exp(a: &CMatrix, t: f64) -> CMatrix {
    let n = a.dim();
    let at = a.scale_re(t);
    let norm = at.norm1();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = libm::ceil(libm::log2(norm / 0.5)) as u32;
    }
    let b = at.scale_re(libm::ldexp(1.0, -(squarings as i32)));

    // Horner form: I + B(I + B/2(I + B/3(...)))
    let id = CMatrix::identity(n);
    let mut acc = id.clone();
    for k in (1..=TAYLOR_DEGREE).rev() {
        acc = &id + &(&b * &acc).scale_re(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn zero_gives_identity() {
        for t in [0.0, 1.0, -3.5] {
            assert_eq!(mat_exp(&CMatrix::zeros(3), t), CMatrix::identity(3));
        }
    }

    #[test]
    fn diagonal() {
        let a = CMatrix::from_real_diag(&[1.0, -1.0]);
        let e = mat_exp(&a, 1.0);
        let want = [core::f64::consts::E, 1.0 / core::f64::consts::E];
        for i in 0..2 {
            assert!((e[(i, i)] - C64::new(want[i], 0.0)).norm() < 1e-15 * want[i].max(1.0));
        }
        assert_eq!(e[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn rotation_generator() {
        // exp(θ [[0, -1], [1, 0]]) is a rotation by θ
        let a = CMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => C64::new(-1.0, 0.0),
            (1, 0) => C64::new(1.0, 0.0),
            _ => C64::new(0.0, 0.0),
        });
        let th = 7.3;
        let e = mat_exp(&a, th);
        assert!((e[(0, 0)].re - libm::cos(th)).abs() < 1e-13);
        assert!((e[(1, 0)].re - libm::sin(th)).abs() < 1e-13);
    }
}

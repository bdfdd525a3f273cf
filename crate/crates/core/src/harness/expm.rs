//! Matrix exponential by scaling and squaring with a diagonal Padé
//! approximant of degree 8.

use nalgebra::DMatrix;

const PADE_DEGREE: usize = 8;
/// `‖A‖₁` threshold after scaling; the [8/8] approximant error is far below
/// machine precision there.
const SCALED_NORM: f64 = 0.5;

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade_coefficients() -> [f64; PADE_DEGREE + 1] {
    let q = PADE_DEGREE as f64;
    let mut c = [1.0; PADE_DEGREE + 1];
    for k in 1..=PADE_DEGREE {
        let kf = k as f64;
        c[k] = c[k - 1] * (q - kf + 1.0) / (kf * (2.0 * q - kf + 1.0));
    }
    c
}

/// `exp(A)` for a square matrix.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings);
    let c = pade_coefficients();
    let mut numerator = DMatrix::identity(n, n);
    let mut denominator = DMatrix::identity(n, n);
    let mut power = DMatrix::identity(n, n);
    for (k, ck) in c.iter().enumerate().skip(1) {
        power = &power * &scaled;
        numerator += &power * *ck;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        denominator += &power * (sign * ck);
    }
    let mut result = denominator
        .lu()
        .solve(&numerator)
        .expect("Padé denominator is invertible for ‖A‖ ≤ 1/2");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn taylor(a: &DMatrix<f64>, terms: usize) -> DMatrix<f64> {
        let n = a.nrows();
        let mut sum = DMatrix::identity(n, n);
        let mut term = DMatrix::identity(n, n);
        for k in 1..terms {
            term = &term * a / k as f64;
            sum += &term;
        }
        sum
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(expm(&DMatrix::zeros(3, 3)), DMatrix::identity(3, 3));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -2.0, 3.5]));
        let e = expm(&d);
        for (i, x) in [1.0f64, -2.0, 3.5].iter().enumerate() {
            assert!((e[(i, i)] - x.exp()).abs() <= 1e-12 * x.exp());
        }
    }

    #[test]
    fn rotation_closed_form() {
        for theta in [0.1, 1.0, 2.5, 7.0, -3.0] {
            let k = DMatrix::from_row_slice(3, 3, &[0.0, -theta, 0.0, theta, 0.0, 0.0, 0.0, 0.0, 0.0]);
            let (s, c) = f64::sin_cos(theta);
            let expected = DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]);
            assert!(max_abs(&(expm(&k) - expected)) <= 1e-13);
        }
    }

    proptest! {
        #[test]
        fn matches_taylor_series(entries in prop::collection::vec(-1.5f64..1.5, 16)) {
            let a = DMatrix::from_row_slice(4, 4, &entries);
            let e = expm(&a);
            prop_assert!(max_abs(&(&e - taylor(&a, 60))) <= 1e-12 * max_abs(&e).max(1.0));
            let inverse = expm(&(-&a));
            prop_assert!(max_abs(&(&e * inverse - DMatrix::identity(4, 4))) <= 1e-12);
        }
    }
}

//! Independent eigenvalue oracle for the counterexample matrices.
//!
//! The verification suites must not test the QR eigensolver against itself,
//! so the counterexample spectra are re-derived along a second route:
//! characteristic polynomial by Faddeev-LeVerrier, deflation of the known
//! eigenvalue 1, then the cubic formula (4x4 case) or sign-change bisection
//! plus the quadratic formula (5x5 case). Nothing here touches Hessenberg
//! or QR code.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Error)]
pub enum OracleError {
    #[error("matrix is not real: entry ({row}, {col}) has imaginary part {imag:.3e}")]
    NotReal { row: usize, col: usize, imag: f64 },
    #[error("root isolation failed: {detail}")]
    IsolationFailed { detail: String },
}

/// Characteristic polynomial of a real matrix, coefficients in descending
/// powers with leading coefficient 1: `p(x) = Σ coeffs[i] · x^{n-i}`.
pub fn real_characteristic_polynomial(m: &ComplexMatrix) -> Result<Vec<f64>, OracleError> {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let imag = m.entry(i, j).im;
            if imag.abs() > 1e-12 {
                return Err(OracleError::NotReal {
                    row: i,
                    col: j,
                    imag,
                });
            }
        }
    }
    let a: Vec<f64> = m.entries().iter().map(|e| e.re).collect();
    let trace = |mat: &[f64]| -> f64 { (0..n).map(|i| mat[i * n + i]).sum() };
    let matmul = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = x[i * n + k];
                if v == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += v * y[k * n + j];
                }
            }
        }
        out
    };

    // Faddeev-LeVerrier recurrence.
    let mut coeffs = vec![0.0; n + 1];
    coeffs[0] = 1.0;
    let mut work = a.clone();
    for k in 1..=n {
        let c = -trace(&work) / k as f64;
        coeffs[k] = c;
        if k < n {
            for i in 0..n {
                work[i * n + i] += c;
            }
            work = matmul(&a, &work);
        }
    }
    Ok(coeffs)
}

/// Synthetic division by `(x - root)`. Returns the quotient (one degree
/// lower, descending coefficients) and the remainder `p(root)`.
pub fn deflate_root(coeffs: &[f64], root: f64) -> (Vec<f64>, f64) {
    assert!(coeffs.len() >= 2, "cannot deflate a constant");
    let mut quotient = Vec::with_capacity(coeffs.len() - 1);
    let mut carry = 0.0;
    for &c in &coeffs[..coeffs.len() - 1] {
        carry = carry * root + c;
        quotient.push(carry);
    }
    let remainder = carry * root + coeffs[coeffs.len() - 1];
    (quotient, remainder)
}

/// Evaluate a descending-coefficient polynomial by Horner's rule.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn eval_poly_deriv(coeffs: &[f64], x: f64) -> f64 {
    let degree = coeffs.len() - 1;
    coeffs[..degree]
        .iter()
        .enumerate()
        .fold(0.0, |acc, (i, &c)| acc * x + c * (degree - i) as f64)
}

fn newton_polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..3 {
        let d = eval_poly_deriv(coeffs, x);
        if d == 0.0 {
            break;
        }
        x -= eval_poly(coeffs, x) / d;
    }
    x
}

/// Roots of `ax² + bx + c` with real coefficients.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    debug_assert!(a != 0.0);
    let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    let two_a = 2.0 * a;
    [(-b + disc) / two_a, (-b - disc) / two_a]
}

/// All three roots of a monic-izable real cubic by Cardano's formula,
/// polished with a few Newton steps.
pub fn solve_cubic(coeffs: &[f64; 4]) -> [Complex64; 3] {
    let a = coeffs[0];
    debug_assert!(a != 0.0);
    let b = coeffs[1] / a;
    let c = coeffs[2] / a;
    let d = coeffs[3] / a;

    // depressed cubic t³ + pt + q with x = t - b/3
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    let half_q = Complex64::new(q / 2.0, 0.0);
    let disc = Complex64::new(q * q / 4.0 + p * p * p / 27.0, 0.0).sqrt();
    let mut u_cubed = -half_q + disc;
    if u_cubed.norm() < 1e-300 {
        u_cubed = -half_q - disc;
    }
    let u = u_cubed.powf(1.0 / 3.0);
    let v = if u.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(-p / 3.0, 0.0) / u
    };

    let omega = Complex64::new(-0.5, 0.75f64.sqrt());
    let mut roots = [
        u + v - shift,
        u * omega + v * omega.conj() - shift,
        u * omega.conj() + v * omega - shift,
    ];

    // polish: real roots with Newton on the real line, conjugate pairs by
    // pairing symmetry
    let monic = [1.0, b, c, d];
    for r in &mut roots {
        if r.im.abs() <= 1e-8 {
            *r = Complex64::new(newton_polish(&monic, r.re), 0.0);
        }
    }
    roots
}

/// Root isolation for low-degree real polynomials by sign-change bisection
/// on the real axis, root deflation, and the quadratic/cubic formulas for
/// whatever remains. Supports the degrees the verification suites need
/// (≤ 4 with at least `degree - 2` real roots after pairing).
pub fn isolate_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, OracleError> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    if coeffs[0] == 0.0 {
        return Err(OracleError::IsolationFailed {
            detail: "leading coefficient is zero".into(),
        });
    }

    let mut work: Vec<f64> = coeffs.iter().map(|c| c / coeffs[0]).collect();
    let mut roots = Vec::with_capacity(degree);

    // Peel off real roots found by bisection until a formula applies.
    while work.len() > 3 {
        match find_real_root_bisection(&work) {
            Some(root) => {
                let root = newton_polish(&work, root);
                roots.push(Complex64::new(root, 0.0));
                let (quotient, _remainder) = deflate_root(&work, root);
                work = quotient;
            }
            None => {
                return Err(OracleError::IsolationFailed {
                    detail: format!(
                        "degree-{} factor has no sign change on the scan interval",
                        work.len() - 1
                    ),
                });
            }
        }
    }

    match work.len() {
        2 => roots.push(Complex64::new(-work[1], 0.0)),
        3 => roots.extend(solve_quadratic(work[0], work[1], work[2])),
        _ => {}
    }
    Ok(roots)
}

/// Leftmost sign change of a monic real polynomial inside the Cauchy root
/// bound, bisected to full precision.
fn find_real_root_bisection(coeffs: &[f64]) -> Option<f64> {
    let bound = 1.0 + coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let steps = 4096usize;
    let width = 2.0 * bound / steps as f64;
    let mut prev_x = -bound;
    let mut prev_f = eval_poly(coeffs, prev_x);
    for i in 1..=steps {
        let x = -bound + i as f64 * width;
        let f = eval_poly(coeffs, x);
        if prev_f == 0.0 {
            return Some(prev_x);
        }
        if prev_f * f < 0.0 {
            let (mut lo, mut hi) = (prev_x, x);
            let mut f_lo = prev_f;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let f_mid = eval_poly(coeffs, mid);
                if f_mid == 0.0 {
                    return Some(mid);
                }
                if f_lo * f_mid < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
                if hi - lo <= f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    if prev_f == 0.0 {
        return Some(prev_x);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spectra_equal;

    fn a4_combination(t: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0, 0.0],
            vec![t, 0.0, 1.0 - t, 0.0],
            vec![1.0 - t, 0.0, 0.0, t],
            vec![0.0, 0.0, t, 1.0 - t],
        ])
        .unwrap()
    }

    #[test]
    fn characteristic_polynomial_of_known_matrices() {
        let identity = ComplexMatrix::identity(3);
        let coeffs = real_characteristic_polynomial(&identity).unwrap();
        // (x-1)³ = x³ - 3x² + 3x - 1
        for (got, want) in coeffs.iter().zip(&[1.0, -3.0, 3.0, -1.0]) {
            assert!((got - want).abs() <= 1e-12);
        }

        // (x-1)(x³ + tx² - t²x + (3t - 3t² - 1)) at t = 1/2
        let coeffs = real_characteristic_polynomial(&a4_combination(0.5)).unwrap();
        for (got, want) in coeffs.iter().zip(&[1.0, -0.5, -0.75, 0.0, 0.25]) {
            assert!((got - want).abs() <= 1e-12, "{coeffs:?}");
        }

        let complex_entry =
            ComplexMatrix::new(1, vec![num_complex::Complex64::new(0.0, 1.0)]).unwrap();
        assert!(matches!(
            real_characteristic_polynomial(&complex_entry),
            Err(OracleError::NotReal { .. })
        ));
    }

    #[test]
    fn deflation_keeps_remainder_small() {
        let coeffs = real_characteristic_polynomial(&a4_combination(0.5)).unwrap();
        let (cubic, remainder) = deflate_root(&coeffs, 1.0);
        assert!(remainder.abs() <= 1e-12);
        // cubic factor: x³ + 0.5x² - 0.25x - 0.25
        for (got, want) in cubic.iter().zip(&[1.0, 0.5, -0.25, -0.25]) {
            assert!((got - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn cardano_matches_frozen_a4_midpoint_roots() {
        let cubic = [1.0, 0.5, -0.25, -0.25];
        let roots = solve_cubic(&cubic);
        let expected = [
            Complex64::new(0.60278471520029497, 0.0),
            Complex64::new(-0.55139235760014738, 0.33272847557640678),
            Complex64::new(-0.55139235760014738, -0.33272847557640678),
        ];
        assert!(spectra_equal(&roots, &expected, 1e-12), "{roots:?}");
    }

    #[test]
    fn cardano_handles_three_real_roots() {
        // (x-1)(x-2)(x+3) = x³ - 7x + 6
        let roots = solve_cubic(&[1.0, 0.0, -7.0, 6.0]);
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-3.0, 0.0),
        ];
        assert!(spectra_equal(&roots, &expected, 1e-10), "{roots:?}");
    }

    #[test]
    fn bisection_isolates_frozen_ds5_quartic() {
        // quartic factor of the 5x5 counterexample at t = 1/2:
        // x⁴ + 0.5x³ + 0.25x² - 0.25x - 0.25
        let roots = isolate_roots(&[1.0, 0.5, 0.25, -0.25, -0.25]).unwrap();
        let expected = [
            Complex64::new(0.64499937107306075, 0.0),
            Complex64::new(-0.58641421542151116, 0.0),
            Complex64::new(-0.27929257782577463, 0.76351637467385147),
            Complex64::new(-0.27929257782577463, -0.76351637467385147),
        ];
        assert!(spectra_equal(&roots, &expected, 1e-10), "{roots:?}");
    }

    #[test]
    fn bisection_handles_pure_real_quartics() {
        // (x-1)(x+1)(x-2)(x+2) = x⁴ - 5x² + 4
        let roots = isolate_roots(&[1.0, 0.0, -5.0, 0.0, 4.0]).unwrap();
        let expected = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-2.0, 0.0),
        ];
        assert!(spectra_equal(&roots, &expected, 1e-10), "{roots:?}");
    }
}

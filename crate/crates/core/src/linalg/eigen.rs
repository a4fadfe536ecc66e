//! Non-symmetric complex eigensolver.
//!
//! Householder reduction to upper Hessenberg form followed by an implicitly
//! single-shifted QR iteration with Wilkinson shifts. Working in complex
//! arithmetic keeps the shift strategy simple (no Francis double shift), and
//! the matrices this crate produces are small, so no balancing or blocking
//! is attempted.
//!
//! Accuracy contract: a subdiagonal entry is only discarded when it is
//! negligible relative to its diagonal neighbours, and the largest discarded
//! magnitude is folded into the reported backward error. Every returned
//! eigenvalue is exact for some `m + E` with `‖E‖ ≤ backward_error · ‖m‖`.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, TOL_EIG};

/// Sweep cap, in units of `dim` (one sweep = one implicit QR step).
const MAX_SWEEPS_PER_DIM: usize = 100;
/// Apply an exceptional shift every this many stalled sweeps on one window.
const EXCEPTIONAL_EVERY: usize = 10;

/// Eigenvalue multiset with an accuracy certificate.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<Complex64>,
    backward_error: f64,
}

impl Spectrum {
    /// All `dim` eigenvalues, multiplicity included, in deflation order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Relative backward-error estimate for the whole multiset.
    pub fn backward_error(&self) -> f64 {
        self.backward_error
    }
}

/// Eigenvalues of `m` with the default accuracy bound [`TOL_EIG`].
pub fn spectrum(m: &ComplexMatrix) -> Result<Spectrum, LinalgError> {
    spectrum_with_tol(m, TOL_EIG)
}

/// Eigenvalues of `m`, failing if the backward-error estimate exceeds `tol_eig`.
pub fn spectrum_with_tol(m: &ComplexMatrix, tol_eig: f64) -> Result<Spectrum, LinalgError> {
    let n = m.dim();
    let scale = m.max_norm();
    let base_error = n as f64 * f64::EPSILON;

    if scale == 0.0 {
        return Ok(Spectrum {
            values: vec![Complex64::new(0.0, 0.0); n],
            backward_error: 0.0,
        });
    }
    if n == 1 {
        return Ok(Spectrum {
            values: vec![m.entry(0, 0)],
            backward_error: base_error,
        });
    }
    if n == 2 {
        let (l1, l2) = eig_2x2(m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1));
        return Ok(Spectrum {
            values: vec![l1, l2],
            backward_error: base_error,
        });
    }

    let mut h = m.entries().to_vec();
    hessenberg(&mut h, n);
    let (values, neglected) = qr_eigenvalues(&mut h, n, scale)?;
    let backward_error = neglected / scale + base_error;
    if backward_error > tol_eig {
        return Err(LinalgError::AccuracyExceeded {
            backward_error,
            tol: tol_eig,
        });
    }
    Ok(Spectrum {
        values,
        backward_error,
    })
}

/// Eigenvalues of `[[a, b], [c, d]]` by the quadratic formula.
fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    (mean + disc, mean - disc)
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut [Complex64], n: usize) {
    for k in 0..n.saturating_sub(2) {
        let norm_sqr: f64 = (k + 1..n).map(|i| h[i * n + k].norm_sqr()).sum();
        let norm = norm_sqr.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i * n + k]).collect();
        v[0] -= alpha;
        let v_norm_sqr: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if v_norm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / v_norm_sqr;

        // rows k+1.. : H <- (I - beta v v*) H
        for col in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + off) * n + col];
            }
            s *= beta;
            for (off, vi) in v.iter().enumerate() {
                h[(k + 1 + off) * n + col] -= s * vi;
            }
        }
        // cols k+1.. : H <- H (I - beta v v*)
        for row in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                s += h[row * n + (k + 1 + off)] * vi;
            }
            s *= beta;
            for (off, vi) in v.iter().enumerate() {
                h[row * n + (k + 1 + off)] -= s * vi.conj();
            }
        }

        h[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            h[i * n + k] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Complex Givens rotation `[[c, s], [-s̄, c]]` (c real) zeroing `y` against `x`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let xn = x.norm();
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if xn == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    (xn / r, (x / xn) * y.conj() / r)
}

/// Shifted QR iteration on an upper Hessenberg matrix; eigenvalues only.
///
/// Returns the eigenvalues and the largest subdiagonal magnitude discarded
/// during deflation.
fn qr_eigenvalues(
    h: &mut [Complex64],
    n: usize,
    scale: f64,
) -> Result<(Vec<Complex64>, f64), LinalgError> {
    let eps = f64::EPSILON;
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut neglected: f64 = 0.0;
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut window_iters = 0usize;
    let max_sweeps = MAX_SWEEPS_PER_DIM * n;

    loop {
        // Deflation scan: find the start of the trailing unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let local = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            let thresh = if local > 0.0 {
                eps * local
            } else {
                eps * scale
            };
            if sub <= thresh {
                neglected = neglected.max(sub);
                h[lo * n + lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            values[hi] = h[hi * n + hi];
            if hi == 0 {
                return Ok((values, neglected));
            }
            hi -= 1;
            window_iters = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig_2x2(
                h[lo * n + lo],
                h[lo * n + hi],
                h[hi * n + lo],
                h[hi * n + hi],
            );
            values[lo] = l1;
            values[hi] = l2;
            if lo == 0 {
                return Ok((values, neglected));
            }
            hi = lo - 1;
            window_iters = 0;
            continue;
        }

        sweeps += 1;
        window_iters += 1;
        if sweeps > max_sweeps {
            let residual = (lo + 1..=hi)
                .map(|i| h[i * n + i - 1].norm())
                .fold(0.0, f64::max)
                / scale;
            return Err(LinalgError::NoConvergence { sweeps, residual });
        }

        let shift = if window_iters % EXCEPTIONAL_EVERY == 0 {
            // Exceptional shift to break symmetric stalls (ala LAPACK zlahqr).
            h[hi * n + hi] + 0.75 * h[hi * n + hi - 1].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1) * n + hi - 1],
                h[(hi - 1) * n + hi],
                h[hi * n + hi - 1],
                h[hi * n + hi],
            )
        };

        // Implicit single-shift sweep: create the bulge at the top of the
        // window and chase it off the bottom.
        let mut x = h[lo * n + lo] - shift;
        let mut y = h[(lo + 1) * n + lo];
        for i in lo..hi {
            let (c, s) = givens(x, y);
            let col0 = if i == lo { lo } else { i - 1 };
            for col in col0..=hi {
                let t1 = h[i * n + col];
                let t2 = h[(i + 1) * n + col];
                h[i * n + col] = c * t1 + s * t2;
                h[(i + 1) * n + col] = -s.conj() * t1 + c * t2;
            }
            let row_end = (i + 2).min(hi);
            for row in lo..=row_end {
                let t1 = h[row * n + i];
                let t2 = h[row * n + i + 1];
                h[row * n + i] = c * t1 + s.conj() * t2;
                h[row * n + i + 1] = -s * t1 + c * t2;
            }
            if i + 1 < hi {
                x = h[(i + 1) * n + i];
                y = h[(i + 2) * n + i];
            }
        }
    }
}

/// Eigenvalue of the trailing 2x2 closest to its bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let (l1, l2) = eig_2x2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{match_spectra, spectra_equal};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Conjugate a known diagonal by a deterministic product of Givens-like
    // unitaries; the spectrum must survive untouched.
    fn unitary_conjugation_case(diag: &[Complex64], angles: &[(usize, usize, f64, f64)]) {
        let n = diag.len();
        let mut m = ComplexMatrix::from_fn(n, |i, j| if i == j { diag[i] } else { c(0.0, 0.0) });
        for &(p, q, theta, phi) in angles {
            let (cs, sn) = (theta.cos(), theta.sin());
            let phase = Complex64::from_polar(1.0, phi);
            let u = ComplexMatrix::from_fn(n, |i, j| {
                if i == p && j == p {
                    c(cs, 0.0)
                } else if i == p && j == q {
                    sn * phase
                } else if i == q && j == p {
                    -sn * phase.conj()
                } else if i == q && j == q {
                    c(cs, 0.0)
                } else if i == j {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            m = u.mul(&m).unwrap().mul(&u.adjoint()).unwrap();
        }
        let spec = spectrum(&m).unwrap();
        assert!(
            spectra_equal(spec.values(), diag, 1e-9),
            "spectrum drifted: {:?} vs {:?}",
            spec.values(),
            diag
        );
    }

    #[test]
    fn recovers_known_spectra_under_unitary_conjugation() {
        unitary_conjugation_case(
            &[c(1.0, 0.0), c(-0.5, 0.25), c(0.0, -1.0), c(0.3, 0.0)],
            &[
                (0, 1, 0.7, 1.1),
                (1, 2, 1.9, -0.4),
                (2, 3, 0.35, 2.0),
                (0, 3, 2.4, 0.8),
                (1, 3, 1.2, -2.2),
            ],
        );
        unitary_conjugation_case(
            &[
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.7),
                c(0.0, -0.7),
                c(0.2, 0.2),
            ],
            &[
                (0, 2, 0.3, 0.0),
                (1, 4, 1.1, 0.5),
                (2, 5, 2.2, -1.3),
                (3, 4, 0.9, 0.9),
                (0, 5, 1.7, 2.8),
                (1, 3, 0.45, -0.6),
            ],
        );
    }

    #[test]
    fn handles_rings_of_roots_of_unity() {
        // Full n-cycle permutation matrices stress the shift strategy with
        // perfectly symmetric spectra.
        for n in 2..=9usize {
            let m = ComplexMatrix::from_fn(n, |i, j| {
                if j == (i + 1) % n {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            let spec = spectrum(&m).unwrap();
            let expected: Vec<Complex64> = (0..n)
                .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
                .collect();
            assert!(
                spectra_equal(spec.values(), &expected, 1e-9),
                "cycle length {n}"
            );
        }
    }

    #[test]
    fn nilpotent_jordan_block() {
        let m =
            ComplexMatrix::from_fn(5, |i, j| if j == i + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let spec = spectrum(&m).unwrap();
        for v in spec.values() {
            assert!(v.norm() <= 1e-7, "jordan eigenvalue {v}");
        }
    }

    #[test]
    fn backward_error_is_reported_small() {
        let m = ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.5, 0.0, 0.5],
            vec![0.0, 0.5, 0.5, 0.0, 0.0],
            vec![0.0, 0.5, 0.0, 0.0, 0.5],
            vec![1.0, 0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let spec = spectrum(&m).unwrap();
        assert!(spec.backward_error() <= 1e-12);
        assert_eq!(spec.values().len(), 5);
    }

    #[test]
    fn matching_against_permuted_copy() {
        let m = ComplexMatrix::from_real_rows(&[
            vec![0.1, 0.9, 0.0],
            vec![0.0, 0.2, 0.8],
            vec![0.7, 0.0, 0.3],
        ])
        .unwrap();
        // PᵀMP for the 3-cycle permutation P.
        let p = ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let conj = p.adjoint().mul(&m).unwrap().mul(&p).unwrap();
        let s1 = spectrum(&m).unwrap();
        let s2 = spectrum(&conj).unwrap();
        let mm = match_spectra(s1.values(), s2.values()).unwrap();
        assert!(mm.max_distance <= 1e-10);
    }
}

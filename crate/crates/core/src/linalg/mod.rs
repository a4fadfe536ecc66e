//! Dense complex matrices and spectral queries.
//!
//! Everything here is sized for the groups this crate builds: dense square
//! matrices up to a few hundred rows, double precision throughout. The
//! eigensolver (Hessenberg reduction plus implicitly shifted QR, see
//! [`eigen`]) reports a backward-error estimate with every spectrum and
//! refuses to return silently inaccurate results.

mod eigen;

use num_complex::Complex64;
use thiserror::Error;

pub use eigen::{spectrum, spectrum_with_tol, Spectrum};

/// Default relative backward-error bound accepted from the eigensolver.
pub const TOL_EIG: f64 = 1e-10;

#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    #[error("expected {dim}x{dim} = {expected} entries, got {actual}")]
    BadShape {
        dim: usize,
        expected: usize,
        actual: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("eigensolver did not converge after {sweeps} sweeps (residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("eigensolver backward error {backward_error:.3e} exceeds tolerance {tol:.3e}")]
    AccuracyExceeded { backward_error: f64, tol: f64 },
}

/// Dense square matrix of complex scalars, row-major storage.
///
/// All constructors reject non-square data and non-finite entries, so a
/// value of this type always satisfies both invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::BadShape {
                dim,
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        for (pos, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: pos / dim,
                    col: pos % dim,
                });
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::BadShape {
                    dim,
                    expected: dim * dim,
                    actual: row.len() * dim,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    /// Real-valued rows, for permutation matrices and convex combinations
    /// that never leave the reals.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let complex_rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex_rows)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Ok(Self {
            dim: n,
            entries: out,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim != rhs.dim {
            return Err(LinalgError::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.entry(j, i).conj())
    }

    /// True when every entry is finite. Arithmetic on constructed matrices
    /// can overflow (e.g. closing an unbounded generator), so consumers that
    /// feed products back in must re-check.
    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }

    /// Largest entry modulus (the max norm used for element identity).
    /// NaN entries poison the result to infinity rather than vanishing.
    pub fn max_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm())
            .fold(0.0, nan_poisoning_max)
    }

    /// Max-norm distance to `other`. NaN distances (from non-finite entries)
    /// poison the result to infinity so garbage never compares equal.
    pub fn max_norm_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_norm_distance on mismatched dims");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, nan_poisoning_max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_norm_distance(other) <= tol
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut lu = self.entries.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = lu[col * n + col].norm();
            for row in col + 1..n {
                let mag = lu[row * n + col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_mag == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = lu[col * n + col];
            det *= pivot;
            for row in col + 1..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = factor;
                for j in col + 1..n {
                    let sub = factor * lu[col * n + j];
                    lu[row * n + j] -= sub;
                }
            }
        }
        det
    }
}

fn nan_poisoning_max(acc: f64, d: f64) -> f64 {
    if d.is_nan() {
        f64::INFINITY
    } else {
        acc.max(d)
    }
}

/// `B = (C - C*) / 2i`, the Hermitian part of the skew component.
///
/// Imaginary parts of the eigenvalues of `C` are pinched between the extreme
/// eigenvalues of `B` (a Bendixson-type bound), which is what the dihedral
/// region checks lean on.
pub fn hermitian_imag_part(c: &ComplexMatrix) -> ComplexMatrix {
    let adj = c.adjoint();
    let diff = c.sub(&adj).expect("adjoint preserves dimension");
    // 1/(2i) = -i/2
    diff.scale(Complex64::new(0.0, -0.5))
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &ComplexMatrix) -> Result<f64, LinalgError> {
    let spec = spectrum(m)?;
    Ok(spec.values().iter().map(|l| l.norm()).fold(0.0, f64::max))
}

/// True iff `‖m* m − I‖_max ≤ tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    let product = m.adjoint().mul(m).expect("square by construction");
    product.max_norm_distance(&ComplexMatrix::identity(m.dim())) <= tol
}

/// Greedy minimal-distance pairing between two equal-cardinality multisets.
#[derive(Debug, Clone)]
pub struct SpectrumMatch {
    /// `pairing[i]` is the index in `b` matched to `a[i]`.
    pub pairing: Vec<usize>,
    /// Distance of each matched pair, indexed like `a`.
    pub distances: Vec<f64>,
    /// Worst matched-pair distance (the matching cost per eigenvalue).
    pub max_distance: f64,
}

/// Match two eigenvalue multisets by repeatedly pairing the globally closest
/// unmatched values. Returns `None` when the cardinalities differ.
pub fn match_spectra(a: &[Complex64], b: &[Complex64]) -> Option<SpectrumMatch> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut pairing = vec![usize::MAX; n];
    let mut distances = vec![0.0; n];
    let mut a_used = vec![false; n];
    let mut b_used = vec![false; n];
    for _ in 0..n {
        let mut best = (usize::MAX, usize::MAX, f64::INFINITY);
        for i in 0..n {
            if a_used[i] {
                continue;
            }
            for j in 0..n {
                if b_used[j] {
                    continue;
                }
                let d = (a[i] - b[j]).norm();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        let (i, j, d) = best;
        pairing[i] = j;
        distances[i] = d;
        a_used[i] = true;
        b_used[j] = true;
    }
    let max_distance = distances.iter().copied().fold(0.0, f64::max);
    Some(SpectrumMatch {
        pairing,
        distances,
        max_distance,
    })
}

/// Multiset equality under the greedy matching: every matched pair within `tol`.
pub fn spectra_equal(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    match_spectra(a, b).is_some_and(|m| m.max_distance <= tol)
}

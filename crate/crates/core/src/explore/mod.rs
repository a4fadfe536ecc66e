//! Sampling the convex hull of a matrix group.
//!
//! A [`ConvexCombination`] names a point of `Co(G)` by weights on element
//! indices; [`sample_cloud`](sample::sample_cloud) harvests eigenvalue
//! clouds from deterministically derived combinations, and the structural
//! checks here exercise the star-segment and extremal-eigenvalue properties
//! that every hull spectrum must satisfy.

mod raster;
mod sample;

pub use raster::{cloud_to_csv, rasterize, RasterGrid, Window};
pub use sample::{
    derive_combination, sample_cloud, sample_cloud_with_workers, CloudPoint, SampleFailure,
    SampleStrategy, SpectrumCloud,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::groups::MatrixGroup;
use crate::linalg::{match_spectra, spectrum, ComplexMatrix, LinalgError};

/// Matching tolerance for the star-segment check.
pub const SEGMENT_TOL: f64 = 1e-9;
/// Weight-sum tolerance for convex combinations.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error)]
pub enum ExploreError {
    #[error("weights sum to {sum}, expected 1 within {WEIGHT_SUM_TOL}")]
    WeightsNotNormalized { sum: f64 },
    #[error("weight {index} is negative ({weight})")]
    NegativeWeight { index: usize, weight: f64 },
    #[error("{indices} indices but {weights} weights")]
    LengthMismatch { indices: usize, weights: usize },
    #[error("duplicate element index {index}")]
    DuplicateIndex { index: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("support size {support} exceeds group order {order}")]
    SupportTooLarge { support: usize, order: usize },
    #[error("{what}")]
    BadParameter { what: String },
    #[error("property violation: {what}")]
    PropertyViolation { what: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A point of `Co(G)`: nonnegative weights summing to one on distinct
/// element indices of a group.
#[derive(Debug, Clone)]
pub struct ConvexCombination<'g> {
    group: &'g MatrixGroup,
    indices: Vec<usize>,
    weights: Vec<f64>,
}

impl<'g> ConvexCombination<'g> {
    pub fn new(
        group: &'g MatrixGroup,
        indices: Vec<usize>,
        weights: Vec<f64>,
    ) -> Result<Self, ExploreError> {
        if indices.len() != weights.len() {
            return Err(ExploreError::LengthMismatch {
                indices: indices.len(),
                weights: weights.len(),
            });
        }
        if indices.is_empty() {
            return Err(ExploreError::BadParameter {
                what: "combination must touch at least one element".into(),
            });
        }
        let order = group.order();
        let mut seen = vec![false; order];
        for &i in &indices {
            if i >= order {
                return Err(ExploreError::IndexOutOfRange { index: i, order });
            }
            if seen[i] {
                return Err(ExploreError::DuplicateIndex { index: i });
            }
            seen[i] = true;
        }
        let mut sum = 0.0;
        for (pos, &w) in weights.iter().enumerate() {
            if w < 0.0 {
                return Err(ExploreError::NegativeWeight {
                    index: pos,
                    weight: w,
                });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(ExploreError::WeightsNotNormalized { sum });
        }
        Ok(Self {
            group,
            indices,
            weights,
        })
    }

    /// Weight 1 on a single element.
    pub fn pure(group: &'g MatrixGroup, index: usize) -> Result<Self, ExploreError> {
        Self::new(group, vec![index], vec![1.0])
    }

    /// `(1-t)·element(i) + t·element(j)`.
    pub fn pair(group: &'g MatrixGroup, i: usize, j: usize, t: f64) -> Result<Self, ExploreError> {
        Self::new(group, vec![i, j], vec![1.0 - t, t])
    }

    pub fn group(&self) -> &'g MatrixGroup {
        self.group
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The matrix `Σ weights[j] · elements[indices[j]]`.
    pub fn realize(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.group.dim());
        for (&idx, &w) in self.indices.iter().zip(&self.weights) {
            acc = acc
                .add(&self.group.element(idx).scale_real(w))
                .expect("uniform dimension");
        }
        acc
    }
}

/// Free-function spelling of [`ConvexCombination::realize`].
pub fn realize(c: &ConvexCombination<'_>) -> ComplexMatrix {
    c.realize()
}

/// Matched eigenvalue pair from the star-segment check: `mu` is the
/// eigenvalue of the contracted matrix matched to `lambda`.
#[derive(Debug, Clone, Copy)]
pub struct SegmentPair {
    pub lambda: Complex64,
    pub mu: Complex64,
}

/// Verify the star-segment identity: the eigenvalues of
/// `(1-α)·C + α·η·I` are exactly `(1-α)·λ + α·η` over the eigenvalues `λ`
/// of `C`. A matching cost above [`SEGMENT_TOL`] would falsify the
/// star-shape property and is reported as a violation (in practice it
/// signals an eigensolver bug).
pub fn segment_check(
    c: &ConvexCombination<'_>,
    eta: f64,
    alpha: f64,
) -> Result<Vec<SegmentPair>, ExploreError> {
    for (name, value) in [("eta", eta), ("alpha", alpha)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(ExploreError::BadParameter {
                what: format!("{name} must lie in [0, 1], got {value}"),
            });
        }
    }
    let matrix = c.realize();
    let base = spectrum(&matrix)?;
    let contracted_matrix = matrix
        .scale_real(1.0 - alpha)
        .add(&ComplexMatrix::identity(matrix.dim()).scale_real(alpha * eta))
        .expect("uniform dimension");
    let contracted = spectrum(&contracted_matrix)?;

    let predicted: Vec<Complex64> = base
        .values()
        .iter()
        .map(|l| l * (1.0 - alpha) + alpha * eta)
        .collect();
    let matching =
        match_spectra(&predicted, contracted.values()).expect("spectra of same-dimension matrices");
    if matching.max_distance > SEGMENT_TOL {
        return Err(ExploreError::PropertyViolation {
            what: format!(
                "segment eigenvalues drifted by {:.3e} (eta={eta}, alpha={alpha})",
                matching.max_distance
            ),
        });
    }
    Ok(base
        .values()
        .iter()
        .enumerate()
        .map(|(i, &lambda)| SegmentPair {
            lambda,
            mu: contracted.values()[matching.pairing[i]],
        })
        .collect())
}

/// Outcome of the extremal-eigenvalue test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extremality {
    /// All eigenvalues on the unit circle: the combination collapses to this
    /// group element.
    IsGroupElement(usize),
    /// At least one eigenvalue strictly inside; carries the smallest deficit
    /// `1 - |λ|` among the strictly interior eigenvalues.
    StrictlyInterior { min_deficit: f64 },
}

/// Decide whether a combination realizes a group element by looking at its
/// eigenvalue moduli. All moduli within `tol` of 1 forces the combination
/// to be one of the group elements; anything else leaves a positive deficit.
pub fn extremality_check(c: &ConvexCombination<'_>, tol: f64) -> Result<Extremality, ExploreError> {
    let matrix = c.realize();
    let spec = spectrum(&matrix)?;
    let all_extremal = spec.values().iter().all(|l| l.norm() >= 1.0 - tol);
    if all_extremal {
        match c.group().find_element(&matrix) {
            Some(index) => Ok(Extremality::IsGroupElement(index)),
            None => Err(ExploreError::PropertyViolation {
                what: "all eigenvalues extremal but no group element matches".into(),
            }),
        }
    } else {
        let min_deficit = spec
            .values()
            .iter()
            .map(|l| 1.0 - l.norm())
            .filter(|d| *d > tol)
            .fold(f64::INFINITY, f64::min);
        Ok(Extremality::StrictlyInterior { min_deficit })
    }
}

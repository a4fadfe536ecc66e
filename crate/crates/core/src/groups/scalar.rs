//! Classification of nonzero complex scalars by the hull spectrum of the
//! cyclic group they generate.
//!
//! Five mutually exclusive types: a primitive n-th root of unity generates
//! the polygon `Π_n`; an irrational rotation fills the open disc plus a
//! dense rim orbit; a positive real (≠ 1) generates the positive axis; a
//! negative real (≠ -1) the whole real axis; anything else the whole plane.
//!
//! Whether `arg(λ)/2π` is rational is undecidable in floating point, so the
//! call is made explicit: a continued-fraction search for a denominator up
//! to a caller-supplied cap, accepting residuals below 1e-12.

use num_complex::Complex64;

use super::GroupError;
use crate::regions::{Region, SymbolicRegion};

/// Default denominator cap for rationality detection.
pub const DEFAULT_DENOMINATOR_CAP: u64 = 1_000_000;

/// Residual below which `arg/2π` is accepted as the rational `p/q`.
const RATIONALITY_TOL: f64 = 1e-12;
/// Tolerance for `|λ| = 1` and for `Im λ = 0`.
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarTag {
    /// Primitive n-th root of unity.
    RootOfUnity(u32),
    /// On the unit circle with irrational angle.
    IrrationalRotation,
    /// Positive real, not 1.
    PositiveReal,
    /// Negative real, not -1.
    NegativeReal,
    /// Off the circle and off the real axis.
    GeneralComplex,
}

/// A scalar's type together with the hull spectrum of the group it generates.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarType {
    pub tag: ScalarTag,
    pub region: Region,
}

/// Classify a nonzero scalar. `denominator_cap` bounds the rationality
/// search for angles on the unit circle.
pub fn classify_scalar(lambda: Complex64, denominator_cap: u64) -> Result<ScalarType, GroupError> {
    let modulus = lambda.norm();
    if modulus == 0.0 {
        return Err(GroupError::ZeroScalar);
    }

    if (modulus - 1.0).abs() <= UNIT_TOL {
        let mut frac = lambda.arg() / (2.0 * std::f64::consts::PI);
        if frac < 0.0 {
            frac += 1.0;
        }
        if let Some((_, q)) = rational_approx(frac, denominator_cap, RATIONALITY_TOL) {
            let n = u32::try_from(q).map_err(|_| GroupError::BadParameter {
                what: format!("root-of-unity order {q} exceeds u32"),
            })?;
            return Ok(ScalarType {
                tag: ScalarTag::RootOfUnity(n),
                region: Region::Polygon(n),
            });
        }
        return Ok(ScalarType {
            tag: ScalarTag::IrrationalRotation,
            region: Region::Symbolic(SymbolicRegion::DiscWithDenseRim { alpha: frac }),
        });
    }

    if lambda.im.abs() <= UNIT_TOL {
        if lambda.re > 0.0 {
            return Ok(ScalarType {
                tag: ScalarTag::PositiveReal,
                region: Region::Symbolic(SymbolicRegion::PositiveReals),
            });
        }
        return Ok(ScalarType {
            tag: ScalarTag::NegativeReal,
            region: Region::Symbolic(SymbolicRegion::Reals),
        });
    }

    Ok(ScalarType {
        tag: ScalarTag::GeneralComplex,
        region: Region::Symbolic(SymbolicRegion::AllComplex),
    })
}

/// Best rational approximation `p/q` of `x ∈ [0, 1)` with `q ≤ cap` and
/// `|x - p/q| ≤ tol`, via continued-fraction convergents.
fn rational_approx(x: f64, cap: u64, tol: f64) -> Option<(u64, u64)> {
    debug_assert!((0.0..1.0 + 1e-9).contains(&x));
    let mut h_prev: u64 = 1;
    let mut k_prev: u64 = 0;
    let mut h: u64 = 0; // first convergent: floor(x) = 0 for x in [0, 1)
    let mut k: u64 = 1;
    let mut frac = x;
    for _ in 0..64 {
        if (x - h as f64 / k as f64).abs() <= tol {
            return Some((h, k));
        }
        if frac.abs() < 1e-18 {
            return None;
        }
        let recip = 1.0 / frac;
        let a = recip.floor();
        frac = recip - a;
        if a < 0.0 || a >= u64::MAX as f64 {
            return None;
        }
        let a = a as u64;
        let h_new = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_new = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_new > cap {
            return None;
        }
        h_prev = h;
        k_prev = k;
        h = h_new;
        k = k_new;
    }
    None
}

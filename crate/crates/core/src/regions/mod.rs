//! Eigenvalue regions of the complex plane.
//!
//! The regions that matter here are the polygons `Π_k` (convex hulls of the
//! k-th roots of unity), the closed unit disc, convex hulls of unions of
//! root sets, finite unions of those, and a handful of symbolic tags for
//! unbounded sets that are classified but never sampled.
//!
//! Membership tests return a signed margin: the Euclidean distance to the
//! region boundary, positive inside. Callers assert "inside within 1e-9" or
//! "outside by at least 1e-6" against the margin instead of trusting a bare
//! boolean near the boundary.

mod parse;

pub use parse::RegionParseError;

use num_complex::Complex64;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Tolerance for the exact-predicate membership of symbolic line regions.
pub const SYMBOLIC_AXIS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error)]
pub enum RegionError {
    #[error("union members must be numeric regions, found symbolic {0}")]
    SymbolicUnionMember(String),
    #[error("union must have at least one member")]
    EmptyUnion,
    #[error("hull root set must be nonempty")]
    EmptyHull,
    #[error("polygon index must be at least 1")]
    ZeroPolygon,
}

/// A subset of the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// `Π_k`: convex hull of the k-th roots of unity. `Π_1` is the point
    /// `{1}` and `Π_2` the segment `[-1, 1]`.
    Polygon(u32),
    /// Closed unit disc.
    Disc,
    /// Convex hull of all k-th roots of unity over `k` in the set.
    HullOfRoots(BTreeSet<u32>),
    /// Finite union of regions.
    Union(Vec<Region>),
    /// Unbounded or non-closed sets, classified but never sampled.
    Symbolic(SymbolicRegion),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicRegion {
    /// Strictly positive real axis.
    PositiveReals,
    /// Real axis.
    Reals,
    /// All of the complex plane.
    AllComplex,
    /// Open unit disc plus the dense rim orbit `{e^{2πiαn}}` for irrational α.
    DiscWithDenseRim { alpha: f64 },
}

/// Membership verdict with signed distance to the region boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipResult {
    pub inside: bool,
    /// Positive inside, negative outside; `|margin|` is the Euclidean
    /// distance to the boundary for polygon/disc/hull regions.
    pub margin: f64,
}

/// Outcome of a membership query that may hit an undecidable symbolic set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionAnswer {
    Decided(MembershipResult),
    /// Point on the unit circle queried against a dense rim orbit: membership
    /// depends on whether the point is in the countable orbit, which is not
    /// decidable in floating point.
    BoundaryDense,
}

impl Region {
    pub fn union_of_polygons(ks: impl IntoIterator<Item = u32>) -> Region {
        Region::Union(ks.into_iter().map(Region::Polygon).collect())
    }

    /// Membership with signed margin. Fails only on symbolic members inside
    /// unions; `B'_α` on-circle queries answer [`RegionAnswer::BoundaryDense`].
    pub fn contains(&self, z: Complex64) -> Result<RegionAnswer, RegionError> {
        match self {
            Region::Polygon(k) => Ok(RegionAnswer::Decided(polygon_contains(*k, z))),
            Region::Disc => Ok(RegionAnswer::Decided(disc_contains(z))),
            Region::HullOfRoots(ks) => Ok(RegionAnswer::Decided(hull_of_roots_contains(ks, z))),
            Region::Union(members) => Ok(RegionAnswer::Decided(union_contains(members, z)?)),
            Region::Symbolic(s) => Ok(symbolic_contains(s, z)),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Polygon(k) => write!(f, "pi:{k}"),
            Region::Disc => write!(f, "disc"),
            Region::HullOfRoots(ks) => {
                let list: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "hull:{}", list.join(","))
            }
            Region::Union(members) => {
                let list: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                write!(f, "union:({})", list.join(","))
            }
            Region::Symbolic(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for SymbolicRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicRegion::PositiveReals => write!(f, "R+"),
            SymbolicRegion::Reals => write!(f, "R"),
            SymbolicRegion::AllComplex => write!(f, "C"),
            SymbolicRegion::DiscWithDenseRim { alpha } => write!(f, "B'(alpha={alpha})"),
        }
    }
}

/// The j-th of the k-th roots of unity, canonicalized so that equal
/// rationals j/k produce bit-identical values across different k.
pub fn root_of_unity(j: u32, k: u32) -> Complex64 {
    assert!(k >= 1);
    let j = j % k;
    let g = gcd(j, k);
    let (p, q) = if j == 0 { (0, 1) } else { (j / g, k / g) };
    match (p, q) {
        (0, 1) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * p as f64 / q as f64),
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Membership in `Π_k` with signed distance; `k = 1, 2` degenerate to
/// point/segment tests where "inside" means lying exactly on the set.
pub fn polygon_contains(k: u32, z: Complex64) -> MembershipResult {
    assert!(k >= 1, "polygon index must be at least 1");
    match k {
        1 => point_membership(Complex64::new(1.0, 0.0), z),
        2 => segment_membership(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), z),
        _ => {
            let vertices: Vec<Complex64> = (0..k).map(|j| root_of_unity(j, k)).collect();
            convex_polygon_membership(&vertices, z)
        }
    }
}

/// Membership in the closed unit disc; margin is `1 - |z|`.
pub fn disc_contains(z: Complex64) -> MembershipResult {
    let margin = 1.0 - z.norm();
    MembershipResult {
        inside: margin >= 0.0,
        margin,
    }
}

/// Membership in the convex hull of all k-th roots of unity for `k ∈ ks`.
pub fn hull_of_roots_contains(ks: &BTreeSet<u32>, z: Complex64) -> MembershipResult {
    assert!(!ks.is_empty(), "hull root set must be nonempty");
    let mut points = Vec::new();
    for &k in ks {
        for j in 0..k {
            points.push(root_of_unity(j, k));
        }
    }
    let hull = convex_hull(points);
    match hull.len() {
        1 => point_membership(hull[0], z),
        2 => segment_membership(hull[0], hull[1], z),
        _ => convex_polygon_membership(&hull, z),
    }
}

/// Union membership: inside any member; margin is the max member margin.
pub fn union_contains(members: &[Region], z: Complex64) -> Result<MembershipResult, RegionError> {
    if members.is_empty() {
        return Err(RegionError::EmptyUnion);
    }
    let mut inside = false;
    let mut margin = f64::NEG_INFINITY;
    for member in members {
        if let Region::Symbolic(s) = member {
            return Err(RegionError::SymbolicUnionMember(s.to_string()));
        }
        let r = match member.contains(z)? {
            RegionAnswer::Decided(r) => r,
            RegionAnswer::BoundaryDense => unreachable!("symbolic members rejected above"),
        };
        inside |= r.inside;
        margin = margin.max(r.margin);
    }
    Ok(MembershipResult { inside, margin })
}

fn symbolic_contains(s: &SymbolicRegion, z: Complex64) -> RegionAnswer {
    match s {
        SymbolicRegion::AllComplex => RegionAnswer::Decided(MembershipResult {
            inside: true,
            margin: f64::INFINITY,
        }),
        SymbolicRegion::Reals => {
            let dist = z.im.abs();
            if dist <= SYMBOLIC_AXIS_TOL {
                RegionAnswer::Decided(MembershipResult {
                    inside: true,
                    margin: 0.0,
                })
            } else {
                RegionAnswer::Decided(MembershipResult {
                    inside: false,
                    margin: -dist,
                })
            }
        }
        SymbolicRegion::PositiveReals => {
            if z.im.abs() <= SYMBOLIC_AXIS_TOL && z.re > 0.0 {
                RegionAnswer::Decided(MembershipResult {
                    inside: true,
                    margin: 0.0,
                })
            } else {
                let dist = Complex64::new(z.re.min(0.0), z.im).norm().max(z.im.abs());
                RegionAnswer::Decided(MembershipResult {
                    inside: false,
                    margin: -dist,
                })
            }
        }
        SymbolicRegion::DiscWithDenseRim { .. } => {
            let margin = 1.0 - z.norm();
            if margin > SYMBOLIC_AXIS_TOL {
                RegionAnswer::Decided(MembershipResult {
                    inside: true,
                    margin,
                })
            } else if margin < -SYMBOLIC_AXIS_TOL {
                RegionAnswer::Decided(MembershipResult {
                    inside: false,
                    margin,
                })
            } else {
                RegionAnswer::BoundaryDense
            }
        }
    }
}

fn point_membership(p: Complex64, z: Complex64) -> MembershipResult {
    let dist = (z - p).norm();
    MembershipResult {
        inside: dist == 0.0,
        margin: -dist,
    }
}

fn segment_membership(a: Complex64, b: Complex64, z: Complex64) -> MembershipResult {
    let dist = point_segment_distance(a, b, z);
    MembershipResult {
        inside: dist == 0.0,
        margin: -dist,
    }
}

fn point_segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len_sqr = ab.norm_sqr();
    if len_sqr == 0.0 {
        return (z - a).norm();
    }
    let az = z - a;
    let t = ((az.re * ab.re + az.im * ab.im) / len_sqr).clamp(0.0, 1.0);
    (a + ab * t - z).norm()
}

/// Signed membership for a CCW convex polygon with at least 3 vertices.
fn convex_polygon_membership(vertices: &[Complex64], z: Complex64) -> MembershipResult {
    let n = vertices.len();
    let mut inside = true;
    let mut boundary_dist = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let cross = (b.re - a.re) * (z.im - a.im) - (b.im - a.im) * (z.re - a.re);
        if cross < 0.0 {
            inside = false;
        }
        boundary_dist = boundary_dist.min(point_segment_distance(a, b, z));
    }
    MembershipResult {
        inside,
        margin: if inside {
            boundary_dist
        } else {
            -boundary_dist
        },
    }
}

/// Monotone-chain convex hull in CCW order, collinear points dropped.
/// Points closer than 1e-12 are treated as duplicates.
fn convex_hull(mut points: Vec<Complex64>) -> Vec<Complex64> {
    points.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    points.dedup_by(|a, b| (*a - *b).norm() <= 1e-12);
    if points.len() <= 2 {
        return points;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| -> f64 {
        (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
    };
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &points {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // Degenerate all-collinear input collapses to the two extremes.
    if lower.len() < 2 {
        let first = *points.first().unwrap();
        let last = *points.last().unwrap();
        return if (first - last).norm() <= 1e-12 {
            vec![first]
        } else {
            vec![first, last]
        };
    }
    lower
}

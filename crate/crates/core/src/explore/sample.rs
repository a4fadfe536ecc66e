//! Deterministic cloud sampling.
//!
//! Every sample id maps to a combination through a counter-based generator
//! keyed by `(seed, sample id)`, so partitioning the id range over any
//! number of workers reproduces the identical cloud: merge order is always
//! ascending id, and no worker consumes randomness meant for another.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ConvexCombination, ExploreError};
use crate::groups::MatrixGroup;
use crate::linalg::spectrum;

/// Weight grid resolution for the vertex sweep strategies.
const GRID_STEPS: u64 = 64;

/// How combination weights are derived from sample ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStrategy {
    /// Dirichlet(1,...,1) weights on a per-sample random support: uniform on
    /// the simplex via normalized exponential draws.
    UniformSimplex,
    /// Deterministic sweep of two-element faces: all index pairs, weight
    /// grid of step 1/64. Ignores the support-size parameter.
    VertexPairs,
    /// Deterministic sweep of three-element faces with the same grid step.
    VertexTriples,
}

impl SampleStrategy {
    pub fn label(&self) -> &'static str {
        match self {
            SampleStrategy::UniformSimplex => "uniform-simplex",
            SampleStrategy::VertexPairs => "vertex-pairs",
            SampleStrategy::VertexTriples => "vertex-triples",
        }
    }

    /// Total enumerable samples for sweep strategies, `None` when unbounded.
    fn enumeration_total(&self, order: usize) -> Option<u64> {
        let n = order as u64;
        match self {
            SampleStrategy::UniformSimplex => None,
            SampleStrategy::VertexPairs => Some(n * (n - 1) / 2 * (GRID_STEPS + 1)),
            SampleStrategy::VertexTriples => {
                let triples = n * (n.saturating_sub(1)) * (n.saturating_sub(2)) / 6;
                let grid = (GRID_STEPS + 1) * (GRID_STEPS + 2) / 2;
                Some(triples * grid)
            }
        }
    }
}

impl std::str::FromStr for SampleStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-simplex" => Ok(SampleStrategy::UniformSimplex),
            "vertex-pairs" => Ok(SampleStrategy::VertexPairs),
            "vertex-triples" => Ok(SampleStrategy::VertexTriples),
            other => Err(format!(
                "unknown strategy '{other}' (expected uniform-simplex, vertex-pairs or vertex-triples)"
            )),
        }
    }
}

/// One harvested eigenvalue and the sample that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudPoint {
    pub value: Complex64,
    pub sample_id: u64,
}

/// A sample whose eigensolve failed; retained so that acceptance suites can
/// insist on zero failures instead of silently losing region violations.
#[derive(Debug, Clone)]
pub struct SampleFailure {
    pub sample_id: u64,
    pub error: String,
}

/// Multiset of eigenvalue samples with provenance.
#[derive(Debug, Clone)]
pub struct SpectrumCloud {
    pub points: Vec<CloudPoint>,
    pub failures: Vec<SampleFailure>,
    pub seed: u64,
    pub group_name: String,
    pub strategy: &'static str,
    pub samples_requested: u64,
    pub samples_run: u64,
}

/// Sequential [`sample_cloud_with_workers`].
pub fn sample_cloud(
    group: &MatrixGroup,
    n_samples: u64,
    support_size: usize,
    seed: u64,
    strategy: SampleStrategy,
) -> Result<SpectrumCloud, ExploreError> {
    sample_cloud_with_workers(group, n_samples, support_size, seed, strategy, 1)
}

/// Harvest all eigenvalues of `n_samples` deterministically derived convex
/// combinations. The result is bit-identical for any worker count.
pub fn sample_cloud_with_workers(
    group: &MatrixGroup,
    n_samples: u64,
    support_size: usize,
    seed: u64,
    strategy: SampleStrategy,
    workers: usize,
) -> Result<SpectrumCloud, ExploreError> {
    if n_samples == 0 {
        return Err(ExploreError::BadParameter {
            what: "n_samples must be at least 1".into(),
        });
    }
    if support_size == 0 || support_size > group.order() {
        return Err(ExploreError::SupportTooLarge {
            support: support_size,
            order: group.order(),
        });
    }
    if workers == 0 {
        return Err(ExploreError::BadParameter {
            what: "worker count must be at least 1".into(),
        });
    }

    let samples_run = match strategy.enumeration_total(group.order()) {
        Some(total) => n_samples.min(total),
        None => n_samples,
    };

    let run_sample = |id: u64| -> Result<Vec<Complex64>, String> {
        let comb = derive_combination(group, id, support_size, seed, strategy)
            .expect("id below enumeration total");
        match spectrum(&comb.realize()) {
            Ok(spec) => Ok(spec.values().to_vec()),
            Err(e) => Err(e.to_string()),
        }
    };

    let outcomes: Vec<Result<Vec<Complex64>, String>> = if workers == 1 {
        (0..samples_run).map(run_sample).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| ExploreError::BadParameter {
                what: format!("worker pool: {e}"),
            })?;
        pool.install(|| (0..samples_run).into_par_iter().map(run_sample).collect())
    };

    let mut points = Vec::with_capacity(samples_run as usize * group.dim());
    let mut failures = Vec::new();
    for (id, outcome) in outcomes.into_iter().enumerate() {
        let sample_id = id as u64;
        match outcome {
            Ok(values) => points.extend(
                values
                    .into_iter()
                    .map(|value| CloudPoint { value, sample_id }),
            ),
            Err(error) => failures.push(SampleFailure { sample_id, error }),
        }
    }

    Ok(SpectrumCloud {
        points,
        failures,
        seed,
        group_name: group.name().to_string(),
        strategy: strategy.label(),
        samples_requested: n_samples,
        samples_run,
    })
}

/// The combination for one sample id; `None` once a sweep strategy is
/// exhausted.
pub fn derive_combination<'g>(
    group: &'g MatrixGroup,
    sample_id: u64,
    support_size: usize,
    seed: u64,
    strategy: SampleStrategy,
) -> Option<ConvexCombination<'g>> {
    match strategy {
        SampleStrategy::UniformSimplex => {
            Some(uniform_simplex_sample(group, sample_id, support_size, seed))
        }
        SampleStrategy::VertexPairs => vertex_pair_sample(group, sample_id),
        SampleStrategy::VertexTriples => vertex_triple_sample(group, sample_id),
    }
}

fn per_sample_rng(seed: u64, sample_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_id);
    rng
}

fn uniform_simplex_sample<'g>(
    group: &'g MatrixGroup,
    sample_id: u64,
    support_size: usize,
    seed: u64,
) -> ConvexCombination<'g> {
    let mut rng = per_sample_rng(seed, sample_id);
    let order = group.order();

    // partial Fisher-Yates for a uniform distinct support
    let mut pool: Vec<usize> = (0..order).collect();
    for j in 0..support_size {
        let pick = rng.gen_range(j..order);
        pool.swap(j, pick);
    }
    let indices = pool[..support_size].to_vec();

    let mut weights: Vec<f64> = (0..support_size)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let sum: f64 = weights.iter().sum();
    if sum > 0.0 {
        for w in &mut weights {
            *w /= sum;
        }
    } else {
        weights.fill(1.0 / support_size as f64);
    }
    // normalization leaves the sum a few ulps off 1; pin it on the largest weight
    let drift: f64 = weights.iter().sum::<f64>() - 1.0;
    if drift != 0.0 {
        let argmax = weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        weights[argmax] -= drift;
    }

    ConvexCombination::new(group, indices, weights).expect("constructed on the simplex")
}

fn vertex_pair_sample<'g>(group: &'g MatrixGroup, sample_id: u64) -> Option<ConvexCombination<'g>> {
    let order = group.order() as u64;
    let grid = GRID_STEPS + 1;
    let pair_index = sample_id / grid;
    let step = sample_id % grid;
    let (a, b) = unrank_pair(pair_index, order)?;
    let t = step as f64 / GRID_STEPS as f64;
    Some(
        ConvexCombination::pair(group, a as usize, b as usize, t)
            .expect("grid weights are on the simplex"),
    )
}

fn vertex_triple_sample<'g>(
    group: &'g MatrixGroup,
    sample_id: u64,
) -> Option<ConvexCombination<'g>> {
    let order = group.order() as u64;
    let grid_total = (GRID_STEPS + 1) * (GRID_STEPS + 2) / 2;
    let triple_index = sample_id / grid_total;
    let grid_index = sample_id % grid_total;
    let (a, b, c) = unrank_triple(triple_index, order)?;
    let (i, j) = unrank_grid_point(grid_index);
    let wa = i as f64 / GRID_STEPS as f64;
    let wb = j as f64 / GRID_STEPS as f64;
    let wc = 1.0 - wa - wb;
    Some(
        ConvexCombination::new(
            group,
            vec![a as usize, b as usize, c as usize],
            vec![wa, wb, wc],
        )
        .expect("grid weights are on the simplex"),
    )
}

/// Lexicographic pair (a < b) from its rank.
fn unrank_pair(rank: u64, n: u64) -> Option<(u64, u64)> {
    if n < 2 {
        return None;
    }
    let mut remaining = rank;
    for a in 0..n - 1 {
        let count = n - 1 - a;
        if remaining < count {
            return Some((a, a + 1 + remaining));
        }
        remaining -= count;
    }
    None
}

/// Lexicographic triple (a < b < c) from its rank.
fn unrank_triple(rank: u64, n: u64) -> Option<(u64, u64, u64)> {
    if n < 3 {
        return None;
    }
    let mut remaining = rank;
    for a in 0..n - 2 {
        let after = n - 1 - a;
        let count = after * (after - 1) / 2;
        if remaining < count {
            let (b_off, c_off) = unrank_pair(remaining, after)?;
            return Some((a, a + 1 + b_off, a + 1 + c_off));
        }
        remaining -= count;
    }
    None
}

/// Barycentric grid point (i, j) with i + j ≤ GRID_STEPS, ranked row-major.
fn unrank_grid_point(rank: u64) -> (u64, u64) {
    let mut remaining = rank;
    for i in 0..=GRID_STEPS {
        let row = GRID_STEPS - i + 1;
        if remaining < row {
            return (i, remaining);
        }
        remaining -= row;
    }
    unreachable!("rank below grid total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{permutation_group, quaternion_irrep, PermutationKind};
    use crate::regions::{polygon_contains, union_contains, Region};

    #[test]
    fn cloud_is_deterministic_across_runs_and_workers() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        let a = sample_cloud(&g, 500, 6, 42, SampleStrategy::UniformSimplex).unwrap();
        let b = sample_cloud(&g, 500, 6, 42, SampleStrategy::UniformSimplex).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert_eq!(pa.sample_id, pb.sample_id);
            assert_eq!(pa.value, pb.value, "bitwise determinism violated");
        }

        for workers in [2usize, 4] {
            let c =
                sample_cloud_with_workers(&g, 500, 6, 42, SampleStrategy::UniformSimplex, workers)
                    .unwrap();
            assert_eq!(a.points.len(), c.points.len());
            for (pa, pc) in a.points.iter().zip(&c.points) {
                assert_eq!(pa.value, pc.value, "workers={workers}");
            }
        }

        let other_seed = sample_cloud(&g, 500, 6, 43, SampleStrategy::UniformSimplex).unwrap();
        assert!(a
            .points
            .iter()
            .zip(&other_seed.points)
            .any(|(x, y)| x.value != y.value));
    }

    #[test]
    fn single_support_sample_lies_on_unit_circle() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        let cloud = sample_cloud(&g, 1, 1, 7, SampleStrategy::UniformSimplex).unwrap();
        assert_eq!(cloud.points.len(), 3);
        for p in &cloud.points {
            assert!((p.value.norm() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn s3_cloud_stays_in_segment_union_triangle() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        let region = [Region::Polygon(2), Region::Polygon(3)];
        let cloud = sample_cloud(&g, 2000, 6, 0, SampleStrategy::UniformSimplex).unwrap();
        assert!(cloud.failures.is_empty());
        for p in &cloud.points {
            let m = union_contains(&region, p.value).unwrap();
            assert!(m.margin >= -1e-9, "point {} escaped: {}", p.value, m.margin);
        }
    }

    #[test]
    fn quaternion_cloud_satisfies_diamond_bound() {
        let g = quaternion_irrep();
        let cloud = sample_cloud(&g, 2000, 8, 1, SampleStrategy::UniformSimplex).unwrap();
        for p in &cloud.points {
            assert!(p.value.re.abs() + p.value.im.abs() <= 1.0 + 1e-9);
            assert!(polygon_contains(4, p.value).margin >= -1e-9);
        }
    }

    #[test]
    fn vertex_pair_sweep_enumerates_and_truncates() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        // C(6,2) = 15 pairs, 65 grid points each
        let total = 15 * 65;
        let cloud = sample_cloud(&g, 10_000, 2, 0, SampleStrategy::VertexPairs).unwrap();
        assert_eq!(cloud.samples_run, total);
        assert_eq!(cloud.points.len() as u64, total * 3);

        let partial = sample_cloud(&g, 100, 2, 0, SampleStrategy::VertexPairs).unwrap();
        assert_eq!(partial.samples_run, 100);

        // endpoints of the sweep realize pure elements
        let first = derive_combination(&g, 0, 2, 0, SampleStrategy::VertexPairs).unwrap();
        assert_eq!(first.indices(), &[0, 1]);
        assert_eq!(first.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn vertex_triples_cover_interior_faces() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        let cloud = sample_cloud(&g, 3000, 3, 0, SampleStrategy::VertexTriples).unwrap();
        assert!(cloud.failures.is_empty());
        assert_eq!(cloud.points.len(), cloud.samples_run as usize * 3);
        let region = [Region::Polygon(2), Region::Polygon(3)];
        for p in &cloud.points {
            assert!(union_contains(&region, p.value).unwrap().margin >= -1e-9);
        }
    }

    #[test]
    fn unranking_is_bijective() {
        let n = 7u64;
        let mut seen_pairs = std::collections::BTreeSet::new();
        let mut rank = 0;
        while let Some((a, b)) = unrank_pair(rank, n) {
            assert!(a < b && b < n);
            assert!(seen_pairs.insert((a, b)));
            rank += 1;
        }
        assert_eq!(seen_pairs.len() as u64, n * (n - 1) / 2);

        let mut seen_triples = std::collections::BTreeSet::new();
        let mut rank = 0;
        while let Some(t) = unrank_triple(rank, n) {
            assert!(t.0 < t.1 && t.1 < t.2 && t.2 < n);
            assert!(seen_triples.insert(t));
            rank += 1;
        }
        assert_eq!(seen_triples.len() as u64, n * (n - 1) * (n - 2) / 6);

        let grid_total = (GRID_STEPS + 1) * (GRID_STEPS + 2) / 2;
        let mut seen_grid = std::collections::BTreeSet::new();
        for rank in 0..grid_total {
            let (i, j) = unrank_grid_point(rank);
            assert!(i + j <= GRID_STEPS);
            assert!(seen_grid.insert((i, j)));
        }
        assert_eq!(seen_grid.len() as u64, grid_total);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = permutation_group(3, PermutationKind::Symmetric).unwrap();
        assert!(matches!(
            sample_cloud(&g, 10, 7, 0, SampleStrategy::UniformSimplex),
            Err(ExploreError::SupportTooLarge { .. })
        ));
        assert!(sample_cloud(&g, 0, 3, 0, SampleStrategy::UniformSimplex).is_err());
        assert!(
            sample_cloud_with_workers(&g, 10, 3, 0, SampleStrategy::UniformSimplex, 0).is_err()
        );
    }
}

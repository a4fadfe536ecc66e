//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime against the stated budget. Run with
//! `cargo test -p hullspectra-cli --test acceptance -- --nocapture`.

use std::fs;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;

use hullspectra::explore::{
    derive_combination, extremality_check, segment_check, ConvexCombination, Extremality,
    SampleStrategy,
};
use hullspectra::groups::{
    classify_scalar, dihedral_irrep, group_average, quaternion_irrep, regular_representation,
    CayleyTable, MatrixGroup, ScalarTag, DEFAULT_DENOMINATOR_CAP,
};
use hullspectra::linalg::{hermitian_imag_part, spectrum};
use hullspectra::paperchecks::{
    check_a4_counterexample, check_abelian, check_dihedral, check_ds3, check_ds5_counterexample,
    check_quaternion, CheckConfig,
};
use hullspectra::regions::root_of_unity;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn conclude(number: u32, name: &str, budget_s: f64, started: Instant, failure: Option<String>) {
    let elapsed = started.elapsed().as_secs_f64();
    let status = if failure.is_none() && elapsed < budget_s {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "acceptance criterion {number} ({name}): {status} in {elapsed:.2}s (budget {budget_s}s)"
    );
    if let Some(detail) = failure {
        panic!("criterion {number} failed:\n{detail}");
    }
    assert!(
        elapsed < budget_s,
        "criterion {number} exceeded its {budget_s}s budget ({elapsed:.2}s)"
    );
}

#[test]
fn criterion_1_ds3_containment() {
    let started = Instant::now();
    let report = check_ds3();
    let failure = (!report.passed).then(|| report.text_summary());
    conclude(1, "ds3 containment and witnesses", 30.0, started, failure);
}

#[test]
fn criterion_2_dihedral_theorem() {
    let started = Instant::now();
    let mut failure = None;
    'outer: for n in 3..=12u32 {
        for k in 1..n {
            let report = check_dihedral(n, k, 10_000);
            if !report.passed {
                failure = Some(report.text_summary());
                break 'outer;
            }
        }
    }
    conclude(
        2,
        "dihedral regions for 3 ≤ n ≤ 12",
        120.0,
        started,
        failure,
    );
}

#[test]
fn criterion_3_quaternion_theorem() {
    let started = Instant::now();
    let report = check_quaternion(100_000);
    let failure = (!report.passed).then(|| report.text_summary());
    conclude(3, "quaternion diamond and formula", 30.0, started, failure);
}

#[test]
fn criterion_4_a4_counterexample() {
    let started = Instant::now();
    let report = check_a4_counterexample();
    let failure = (!report.passed).then(|| report.text_summary());
    conclude(4, "a4 counterexample escape", 5.0, started, failure);
}

#[test]
fn criterion_5_ds5_counterexample() {
    let started = Instant::now();
    let report = check_ds5_counterexample();
    let failure = (!report.passed).then(|| report.text_summary());
    conclude(5, "ds5 escape and order-6 bound", 5.0, started, failure);
}

fn structural_groups() -> Vec<MatrixGroup> {
    let mut groups = Vec::new();
    for n in 3..=12u32 {
        for k in 1..=(n - 1) / 2 {
            groups.push(dihedral_irrep(n, k).unwrap());
        }
    }
    groups.push(quaternion_irrep());
    groups
}

#[test]
fn criterion_6_structural_lemmas() {
    let started = Instant::now();
    let mut failure: Option<String> = None;
    let groups = structural_groups();

    'groups: for group in &groups {
        // (a) nontrivial irreducibles average to zero
        let avg = group_average(group);
        if avg.max_norm() > 1e-12 {
            failure = Some(format!(
                "{}: group average has norm {:.3e}",
                group.name(),
                avg.max_norm()
            ));
            break 'groups;
        }

        // (b) unit-ball bound and (e) imaginary-part pinch on 10^4 samples
        for draw in 0..10_000u64 {
            let comb = derive_combination(
                group,
                draw,
                group.order(),
                6,
                SampleStrategy::UniformSimplex,
            )
            .unwrap();
            let matrix = comb.realize();
            let spec = match spectrum(&matrix) {
                Ok(s) => s,
                Err(e) => {
                    failure = Some(format!("{}: draw {draw}: {e}", group.name()));
                    break 'groups;
                }
            };
            let radius = spec.values().iter().map(|l| l.norm()).fold(0.0, f64::max);
            if radius > 1.0 + 1e-9 {
                failure = Some(format!(
                    "{}: draw {draw}: spectral radius {radius}",
                    group.name()
                ));
                break 'groups;
            }

            let pinch = hermitian_imag_part(&matrix);
            let pinch_spec = match spectrum(&pinch) {
                Ok(s) => s,
                Err(e) => {
                    failure = Some(format!("{}: draw {draw}: pinch: {e}", group.name()));
                    break 'groups;
                }
            };
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for b in pinch_spec.values() {
                lo = lo.min(b.re);
                hi = hi.max(b.re);
            }
            for l in spec.values() {
                if l.im < lo - 1e-9 || l.im > hi + 1e-9 {
                    failure = Some(format!(
                        "{}: draw {draw}: Im {} outside [{lo}, {hi}]",
                        group.name(),
                        l.im
                    ));
                    break 'groups;
                }
            }
        }

        // (c) star segments on 10^4 random (combination, eta, alpha) draws
        for draw in 0..10_000u64 {
            let comb = derive_combination(
                group,
                draw,
                group.order(),
                7,
                SampleStrategy::UniformSimplex,
            )
            .unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            rng.set_stream(draw);
            let eta: f64 = rng.gen();
            let alpha: f64 = rng.gen();
            if let Err(e) = segment_check(&comb, eta, alpha) {
                failure = Some(format!("{}: segment draw {draw}: {e}", group.name()));
                break 'groups;
            }
        }

        // (d) extremality: every pure element is recovered, every strict
        // two-element mixture is strictly interior
        for index in 0..group.order() {
            let comb = ConvexCombination::pure(group, index).unwrap();
            match extremality_check(&comb, 1e-9) {
                Ok(Extremality::IsGroupElement(found)) if found == index => {}
                other => {
                    failure = Some(format!(
                        "{}: pure element {index} classified as {other:?}",
                        group.name()
                    ));
                    break 'groups;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for draw in 0..1_000u64 {
            rng.set_stream(draw);
            let a = rng.gen_range(0..group.order());
            let mut b = rng.gen_range(0..group.order() - 1);
            if b >= a {
                b += 1;
            }
            let t: f64 = rng.gen_range(0.05..0.95);
            let comb = ConvexCombination::pair(group, a, b, t).unwrap();
            match extremality_check(&comb, 1e-9) {
                Ok(Extremality::StrictlyInterior { min_deficit }) if min_deficit > 0.0 => {}
                other => {
                    failure = Some(format!(
                        "{}: strict pair ({a}, {b}, {t}) classified as {other:?}",
                        group.name()
                    ));
                    break 'groups;
                }
            }
        }
    }

    conclude(6, "structural lemma suite", 180.0, started, failure);
}

#[test]
fn criterion_7_regular_representation_lower_bound() {
    let started = Instant::now();
    let mut failure = None;

    let mut tables: Vec<CayleyTable> = (1..=12).map(CayleyTable::cyclic).collect();
    tables.extend((1..=6).map(CayleyTable::dihedral));
    tables.push(CayleyTable::quaternion());

    'outer: for table in &tables {
        let rep = regular_representation(table);
        for (g, &k) in table.element_orders().iter().enumerate() {
            let spec = match spectrum(rep.element(g)) {
                Ok(s) => s,
                Err(e) => {
                    failure = Some(format!("{}: element {g}: {e}", table.label()));
                    break 'outer;
                }
            };
            let target = root_of_unity(1, k as u32);
            let dist = spec
                .values()
                .iter()
                .map(|v| (v - target).norm())
                .fold(f64::INFINITY, f64::min);
            if dist > 1e-9 {
                failure = Some(format!(
                    "{}: element {g} of order {k} misses its primitive root by {dist:.3e}",
                    table.label()
                ));
                break 'outer;
            }
        }
    }

    conclude(
        7,
        "regular representation lower bound",
        10.0,
        started,
        failure,
    );
}

#[test]
fn criterion_8_abelian_classification() {
    let started = Instant::now();
    let mut failure = None;

    // 30 classification cases spanning the five types; per-case caps where
    // the default one would (correctly) absorb a well-approximated angle.
    let root = root_of_unity;
    let cap = DEFAULT_DENOMINATOR_CAP;
    let rot = |alpha: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * alpha);
    let fixture: Vec<(Complex64, u64, ScalarTag)> = vec![
        (root(0, 1), cap, ScalarTag::RootOfUnity(1)),
        (root(1, 2), cap, ScalarTag::RootOfUnity(2)),
        (root(1, 3), cap, ScalarTag::RootOfUnity(3)),
        (root(2, 3), cap, ScalarTag::RootOfUnity(3)),
        (root(1, 4), cap, ScalarTag::RootOfUnity(4)),
        (root(3, 4), cap, ScalarTag::RootOfUnity(4)),
        (root(1, 5), cap, ScalarTag::RootOfUnity(5)),
        (root(1, 6), cap, ScalarTag::RootOfUnity(6)),
        (root(1, 7), cap, ScalarTag::RootOfUnity(7)),
        (root(5, 12), cap, ScalarTag::RootOfUnity(12)),
        (root(1, 360), cap, ScalarTag::RootOfUnity(360)),
        (
            rot(std::f64::consts::PI - 3.0),
            cap,
            ScalarTag::IrrationalRotation,
        ),
        (
            rot(std::f64::consts::SQRT_2 / 2.0),
            1_000,
            ScalarTag::IrrationalRotation,
        ),
        (
            rot((5f64.sqrt() - 1.0) / 2.0),
            1_000,
            ScalarTag::IrrationalRotation,
        ),
        (
            rot(std::f64::consts::E - 2.0),
            500,
            ScalarTag::IrrationalRotation,
        ),
        (rot(3f64.sqrt() - 1.0), 1_000, ScalarTag::IrrationalRotation),
        (Complex64::new(2.0, 0.0), cap, ScalarTag::PositiveReal),
        (Complex64::new(0.5, 0.0), cap, ScalarTag::PositiveReal),
        (Complex64::new(3.7, 0.0), cap, ScalarTag::PositiveReal),
        (Complex64::new(1.000001, 0.0), cap, ScalarTag::PositiveReal),
        (Complex64::new(1e6, 0.0), cap, ScalarTag::PositiveReal),
        (Complex64::new(-2.0, 0.0), cap, ScalarTag::NegativeReal),
        (Complex64::new(-0.5, 0.0), cap, ScalarTag::NegativeReal),
        (Complex64::new(-1.000001, 0.0), cap, ScalarTag::NegativeReal),
        (Complex64::new(-3.7, 0.0), cap, ScalarTag::NegativeReal),
        (Complex64::new(1.0, 1.0), cap, ScalarTag::GeneralComplex),
        (Complex64::new(-2.0, 3.0), cap, ScalarTag::GeneralComplex),
        (Complex64::new(0.5, -0.5), cap, ScalarTag::GeneralComplex),
        (Complex64::new(0.0, 2.0), cap, ScalarTag::GeneralComplex),
        (Complex64::new(-1000.0, 1.0), cap, ScalarTag::GeneralComplex),
    ];
    assert_eq!(fixture.len(), 30);
    for (z, denominator_cap, expected) in &fixture {
        match classify_scalar(*z, *denominator_cap) {
            Ok(t) if t.tag == *expected => {}
            Ok(t) => {
                failure = Some(format!(
                    "{z}: classified {:?}, expected {expected:?}",
                    t.tag
                ));
                break;
            }
            Err(e) => {
                failure = Some(format!("{z}: {e}"));
                break;
            }
        }
    }

    if failure.is_none() {
        // finite numeric cases plus the symbolic branches
        let cases: Vec<Vec<Complex64>> = vec![
            vec![root(1, 4)],
            vec![Complex64::new(-1.0, 0.0), root(1, 3)],
            vec![root(1, 6), root(1, 4)],
            vec![Complex64::new(2.0, 0.0)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)],
            vec![Complex64::new(-2.0, 0.0)],
            vec![Complex64::new(1.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
            vec![rot(std::f64::consts::PI - 3.0)],
        ];
        for generators in &cases {
            let cfg = CheckConfig {
                samples: Some(5_000),
                ..CheckConfig::default()
            };
            let report = hullspectra::paperchecks::check_abelian_with(generators, &cfg);
            if !report.passed {
                failure = Some(report.text_summary());
                break;
            }
        }
        // expected symbolic tags, per branch
        use hullspectra::paperchecks::{abelian_prediction, AbelianBranch};
        let expectations: Vec<(Vec<Complex64>, AbelianBranch)> = vec![
            (vec![Complex64::new(2.0, 0.0)], AbelianBranch::PositiveAxis),
            (
                vec![Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)],
                AbelianBranch::RealAxis,
            ),
            (vec![Complex64::new(1.0, 1.0)], AbelianBranch::WholePlane),
            (
                vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
                AbelianBranch::WholePlane,
            ),
        ];
        for (generators, expected) in &expectations {
            match abelian_prediction(generators) {
                Ok(p) if p.branch == *expected => {}
                Ok(p) => {
                    failure = Some(format!(
                        "{generators:?}: branch {:?}, expected {expected:?}",
                        p.branch
                    ));
                    break;
                }
                Err(e) => {
                    failure = Some(format!("{generators:?}: {e}"));
                    break;
                }
            }
        }
        let _ = check_abelian(&[root(1, 4)]); // spec-named zero-argument form
    }

    conclude(8, "abelian classification fixture", 5.0, started, failure);
}

#[test]
fn criterion_9_determinism() {
    let started = Instant::now();
    let mut failure = None;
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_hullspectra");

    // identical `verify --suite all --seed 42` runs must be byte-identical
    for name in ["r1.jsonl", "r2.jsonl"] {
        let out = Command::new(bin)
            .current_dir(dir.path())
            .args(["verify", "--suite", "all", "--seed", "42", "--out", name])
            .output()
            .expect("binary runs");
        if out.status.code() != Some(0) {
            failure = Some(format!(
                "verify run for {name} exited {:?}:\n{}",
                out.status.code(),
                String::from_utf8_lossy(&out.stdout)
            ));
        }
    }
    if failure.is_none() {
        let r1 = fs::read(dir.path().join("r1.jsonl")).unwrap();
        let r2 = fs::read(dir.path().join("r2.jsonl")).unwrap();
        if r1 != r2 {
            failure = Some("verify reports differ between identical runs".into());
        }
    }

    // sampling must not depend on the worker count
    if failure.is_none() {
        for (group, samples) in [("sym:3", "20000"), ("quaternion", "20000")] {
            for (workers, name) in [("1", "w1.csv"), ("4", "w4.csv")] {
                let out = Command::new(bin)
                    .current_dir(dir.path())
                    .args([
                        "sample",
                        "--group",
                        group,
                        "--samples",
                        samples,
                        "--seed",
                        "9",
                        "--workers",
                        workers,
                        "--out",
                        name,
                    ])
                    .output()
                    .expect("binary runs");
                assert_eq!(out.status.code(), Some(0));
            }
            let w1 = fs::read(dir.path().join("w1.csv")).unwrap();
            let w4 = fs::read(dir.path().join("w4.csv")).unwrap();
            if w1 != w4 {
                failure = Some(format!("{group}: CSVs differ between 1 and 4 workers"));
                break;
            }
        }
    }

    conclude(
        9,
        "byte-identical reports and clouds",
        600.0,
        started,
        failure,
    );
}

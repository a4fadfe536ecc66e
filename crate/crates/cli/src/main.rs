//! Command-line surface: sampling, region queries and verification suites.
//!
//! Exit codes are a stable contract:
//!   0  success (or point inside the region)
//!   1  failed check (or point outside the region)
//!   2  usage error (bad flags, specs, files)
//!   3  numerical failure (eigensolver or group closure)

mod spec;

use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use hullspectra::explore::{
    cloud_to_csv, rasterize, sample_cloud_with_workers, ExploreError, SampleStrategy, Window,
};
use hullspectra::paperchecks::{
    check_a4_counterexample_with, check_abelian_with, check_alternating_lower_bound_with,
    check_dihedral_with, check_ds3_with, check_ds4_with, check_ds5_counterexample_with,
    check_quaternion_with, CheckConfig, CheckReport,
};
use hullspectra::regions::{Region, RegionAnswer};
use hullspectra::Complex64;
use spec::{parse_complex, parse_group_spec, SpecError};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hullspectra",
    version,
    about = "Eigenvalue clouds of convex combinations of matrix groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a spectrum cloud and write it as CSV (optionally a PGM raster)
    Sample {
        /// Group spec: sym:N, alt:N, dihedral:N:K, quaternion, cyclic:N,
        /// regrep:<cayley-file>, scalars:a+bi,..., gens:<matrix-file>
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Support size per sample; 0 means the full group
        #[arg(long, default_value_t = 0)]
        support: usize,
        /// uniform-simplex, vertex-pairs or vertex-triples
        #[arg(long, default_value = "uniform-simplex")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Also write a PGM raster at this resolution (e.g. 256)
        #[arg(long)]
        raster: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Test a point against a region spec (pi:K, disc, hull:…, union:(…))
    Region {
        #[arg(long)]
        spec: String,
        /// Complex literal, e.g. "0.5-0.25i"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Run verification suites and write a JSON-lines report
    Verify {
        /// ds3, ds4, ds5, dihedral, quaternion, a4, alternating, abelian, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "report.jsonl")]
        out: PathBuf,
        /// Override the per-check default sample counts
        #[arg(long)]
        samples: Option<u64>,
        /// Override the membership tolerance (default 1e-9)
        #[arg(long)]
        tol_membership: Option<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Sample {
            group,
            samples,
            support,
            strategy,
            seed,
            out,
            raster,
            workers,
        } => run_sample(
            &group, samples, support, &strategy, seed, &out, raster, workers,
        ),
        Command::Region { spec, point } => run_region(&spec, &point),
        Command::Verify {
            suite,
            seed,
            out,
            samples,
            tol_membership,
            workers,
        } => run_verify(&suite, seed, &out, samples, tol_membership, workers),
    };
    ExitCode::from(code)
}

#[allow(clippy::too_many_arguments)]
fn run_sample(
    group_spec: &str,
    samples: u64,
    support: usize,
    strategy: &str,
    seed: u64,
    out: &Path,
    raster: Option<usize>,
    workers: usize,
) -> u8 {
    let group = match parse_group_spec(group_spec) {
        Ok(g) => g,
        Err(SpecError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(SpecError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_NUMERICAL;
        }
    };
    let strategy: SampleStrategy = match strategy.parse() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let support = if support == 0 { group.order() } else { support };

    println!(
        "sample: group={} (order {}, dim {}) samples={} support={} strategy={} seed={} workers={}",
        group.name(),
        group.order(),
        group.dim(),
        samples,
        support,
        strategy.label(),
        seed,
        workers
    );

    let cloud = match sample_cloud_with_workers(&group, samples, support, seed, strategy, workers) {
        Ok(c) => c,
        Err(ExploreError::Linalg(e)) => {
            eprintln!("error: {e}");
            return EXIT_NUMERICAL;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if !cloud.failures.is_empty() {
        eprintln!(
            "error: {} of {} samples failed to eigensolve (first: sample {} — {})",
            cloud.failures.len(),
            cloud.samples_run,
            cloud.failures[0].sample_id,
            cloud.failures[0].error
        );
        return EXIT_NUMERICAL;
    }

    if let Err(e) = std::fs::write(out, cloud_to_csv(&cloud)) {
        eprintln!("error: cannot write '{}': {e}", out.display());
        return EXIT_USAGE;
    }
    println!(
        "wrote {} eigenvalue rows ({} samples run) to {}",
        cloud.points.len(),
        cloud.samples_run,
        out.display()
    );

    if let Some(resolution) = raster {
        let window = Window::default();
        let grid = match rasterize(&cloud, resolution, window) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let pgm_path = out.with_extension("pgm");
        if let Err(e) = std::fs::write(&pgm_path, grid.to_pgm()) {
            eprintln!("error: cannot write '{}': {e}", pgm_path.display());
            return EXIT_USAGE;
        }
        println!(
            "wrote {}x{} raster over [{}, {}]x[{}, {}] to {} ({} points in window)",
            resolution,
            resolution,
            window.re_min,
            window.re_max,
            window.im_min,
            window.im_max,
            pgm_path.display(),
            grid.total_in_window()
        );
    }
    0
}

fn run_region(spec_text: &str, point_text: &str) -> u8 {
    let region = match Region::parse(spec_text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let point = match parse_complex(point_text) {
        Ok(z) => z,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match region.contains(point) {
        Ok(RegionAnswer::Decided(m)) => {
            println!(
                "{} margin={:.17e}",
                if m.inside { "inside" } else { "outside" },
                m.margin
            );
            if m.inside {
                0
            } else {
                EXIT_FAILED_CHECK
            }
        }
        Ok(RegionAnswer::BoundaryDense) => {
            println!("boundary-dense (membership undecidable on the rim orbit)");
            EXIT_FAILED_CHECK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn abelian_fixture() -> Vec<Vec<Complex64>> {
    let root = |j: u32, k: u32| hullspectra::regions::root_of_unity(j, k);
    vec![
        vec![root(1, 4)],
        vec![root(1, 3)],
        vec![Complex64::new(-1.0, 0.0), root(1, 3)],
        vec![root(1, 5)],
        vec![root(1, 6), root(1, 4)],
        vec![Complex64::new(2.0, 0.0)],
        vec![Complex64::new(0.5, 0.0)],
        vec![Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0)],
        vec![Complex64::new(-2.0, 0.0)],
        vec![Complex64::new(1.0, 1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
        vec![Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * (std::f64::consts::PI - 3.0),
        )],
    ]
}

fn run_suite(suite: &str, cfg: &CheckConfig) -> Option<Vec<CheckReport>> {
    let reports = match suite {
        "ds3" => vec![check_ds3_with(cfg)],
        "ds4" => vec![check_ds4_with(cfg)],
        "ds5" => vec![check_ds5_counterexample_with(cfg)],
        "dihedral" => {
            let mut out = Vec::new();
            for n in 3..=12u32 {
                for k in 1..n {
                    out.push(check_dihedral_with(n, k, cfg));
                }
            }
            out
        }
        "quaternion" => vec![check_quaternion_with(cfg)],
        "a4" => vec![check_a4_counterexample_with(cfg)],
        "alternating" => (4..=7)
            .map(|n| check_alternating_lower_bound_with(n, cfg))
            .collect(),
        "abelian" => abelian_fixture()
            .iter()
            .map(|gens| check_abelian_with(gens, cfg))
            .collect(),
        "all" => {
            let mut out = Vec::new();
            for sub in [
                "ds3",
                "ds4",
                "ds5",
                "dihedral",
                "quaternion",
                "a4",
                "alternating",
                "abelian",
            ] {
                out.extend(run_suite(sub, cfg).expect("known sub-suite"));
            }
            out
        }
        _ => return None,
    };
    Some(reports)
}

fn run_verify(
    suite: &str,
    seed: u64,
    out: &Path,
    samples: Option<u64>,
    tol_membership: Option<f64>,
    workers: usize,
) -> u8 {
    let cfg = CheckConfig {
        seed,
        samples,
        membership_tol: tol_membership.unwrap_or(1e-9),
        workers,
        ..CheckConfig::default()
    };
    println!(
        "verify: suite={suite} seed={seed} samples={} tol-membership={:.1e} escape-tol={:.1e} \
         workers={workers} (defaults: ds3/ds4/quaternion 100000 samples, dihedral/abelian 10000)",
        samples.map_or_else(|| "default".to_string(), |s| s.to_string()),
        cfg.membership_tol,
        cfg.escape_tol
    );

    let reports = match run_suite(suite, &cfg) {
        Some(r) => r,
        None => {
            eprintln!(
                "error: unknown suite '{suite}' (expected ds3, ds4, ds5, dihedral, quaternion, \
                 a4, alternating, abelian or all)"
            );
            return EXIT_USAGE;
        }
    };

    let mut lines = String::new();
    for report in &reports {
        print!("{}", report.text_summary());
        lines.push_str(&report.to_json_line());
        lines.push('\n');
    }
    if let Err(e) = std::fs::write(out, lines) {
        eprintln!("error: cannot write '{}': {e}", out.display());
        return EXIT_USAGE;
    }

    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "{} of {} checks passed; report written to {}",
        reports.len() - failed,
        reports.len(),
        out.display()
    );
    if failed == 0 {
        0
    } else {
        EXIT_FAILED_CHECK
    }
}

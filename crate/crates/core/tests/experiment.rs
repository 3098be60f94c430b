//! Ingestion, instance generation, the experiment runner and its output files.

mod common;

use std::path::Path;

use common::{count_sort_selection, summary_schema_violations};
use submodular_minimax::evaluation::certificate_from;
use submodular_minimax::experiment::{
    generate_synthetic_case, ingest_movielens, parse_ratings, parse_series_csv, run_experiment, select_and_complete,
    series_csv, synthetic_ratings, ExperimentConfig, ExperimentKind, SeriesRow, StepPolicy, Summary,
    SyntheticRatings,
};
use submodular_minimax::evaluation::MetricPoint;
use submodular_minimax::continuous::StepSchedule;
use submodular_minimax::solvers::{Algorithm, SolverConfig, ONE_MINUS_INV_E};
use submodular_minimax::{Error, Objective};

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn full_toy_file_is_copied_verbatim() {
    let dir = tempfile::tempdir().unwrap();
    let text = "userId,movieId,rating,timestamp\n\
                1,10,4.0,0\n1,20,3.5,0\n1,30,5.0,0\n\
                2,10,2.0,0\n2,20,1.0,0\n2,30,0.5,0\n\
                3,10,3.0,0\n3,20,4.5,0\n3,30,2.5,0\n";
    let m = ingest_movielens(&write(dir.path(), "r.csv", text), 3, 3).unwrap();
    assert_eq!(m.users, vec![1, 2, 3]);
    assert_eq!(m.movies, vec![10, 20, 30]);
    assert_eq!(m.values, vec![4.0, 3.5, 5.0, 2.0, 1.0, 0.5, 3.0, 4.5, 2.5]);
    assert!(m.observed.iter().all(|&o| o));
}

#[test]
fn missing_cell_takes_its_row_mean() {
    let text = "userId,movieId,rating,timestamp\n\
                1,10,4.0,0\n1,20,3.0,0\n1,30,5.0,0\n\
                2,10,2.0,0\n2,20,1.0,0\n\
                3,10,3.0,0\n3,20,4.5,0\n3,30,2.5,0\n";
    let m = select_and_complete(&parse_ratings(text).unwrap(), 3, 3).unwrap();
    // Movie 30 has two ratings, so it comes last; user 2 has two, so last too.
    assert_eq!(m.movies, vec![10, 20, 30]);
    assert_eq!(m.users, vec![1, 3, 2]);
    assert_eq!(m.get(2, 2), 1.5);
    assert!(!m.observed[2 * 3 + 2]);
    assert_eq!(m.observed_count(), 8);
}

#[test]
fn ingestion_errors_carry_line_numbers_and_sizes() {
    let bad = "userId,movieId,rating,timestamp\n1,10,4.0,0\n1,x,3.0,0\n";
    assert!(matches!(parse_ratings(bad), Err(Error::Malformed { line: 3, .. })));
    let out_of_range = "userId,movieId,rating,timestamp\n1,10,7.0,0\n";
    assert!(matches!(parse_ratings(out_of_range), Err(Error::Malformed { line: 2, .. })));
    assert!(matches!(parse_ratings("user,movie\n1,2\n"), Err(Error::Malformed { line: 1, .. })));

    let dir = tempfile::tempdir().unwrap();
    let small = write(dir.path(), "s.csv", "userId,movieId,rating,timestamp\n1,10,4.0,0\n2,10,3.0,0\n");
    let err = ingest_movielens(&small, 3, 1).unwrap_err();
    assert!(matches!(err, Error::Data { .. }), "{err}");
    assert_eq!(err.exit_code(), 2);
    assert!(matches!(ingest_movielens(&small, 1, 2), Err(Error::Data { .. })));
    assert!(matches!(ingest_movielens(&dir.path().join("absent.csv"), 1, 1), Err(Error::Io { .. })));
}

#[test]
fn selection_matches_a_count_sort_recount() {
    let text = synthetic_ratings(&SyntheticRatings::new(300, 800, 5)).unwrap();
    let m = select_and_complete(&parse_ratings(&text).unwrap(), 50, 200).unwrap();
    let (users, movies) = count_sort_selection(&text, 50, 200);
    assert_eq!(m.movies, movies);
    assert_eq!(m.users, users);
    assert!(m.values.iter().all(|v| (0.0..=5.0).contains(v)));
}

#[test]
fn synthetic_instances_have_positive_symmetric_blocks() {
    let (obj, c, region) = generate_synthetic_case(10, 30, 5, 1.0, 0).unwrap();
    assert_eq!(obj.dim(), 300);
    assert_eq!(region.dim(), 300);
    assert_eq!(c.rank(), 5);
    let (m, n) = (10, 30);
    for b in obj.spec().q.chunks_exact(m * m).take(n * n) {
        for r in 0..m {
            assert!(b[r * m + r] >= 0.1);
            for col in 0..m {
                assert!(b[r * m + col] > 0.0);
                assert_eq!(b[r * m + col], b[col * m + r]);
            }
        }
        // AᵀA + 0.1·I: xᵀQx ≥ 0.1‖x‖² for a few probe vectors.
        for probe in 0..m {
            let x: Vec<f64> = (0..m).map(|i| if (i + probe) % 3 == 0 { 1.0 } else { -0.7 }).collect();
            let quad: f64 = (0..m).map(|r| (0..m).map(|s| x[r] * b[r * m + s] * x[s]).sum::<f64>()).sum();
            assert!(quad >= 0.1 * x.iter().map(|v| v * v).sum::<f64>() - 1e-9);
        }
    }
}

fn case_one(out: &Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(ExperimentKind::SyntheticCase {
        m: 4,
        n: 8,
        k: 3,
        lambda: 1.0,
        seed: 0,
    });
    cfg.solver = SolverConfig::new(60);
    cfg.output_dir = out.to_path_buf();
    cfg
}

#[test]
fn case_one_runs_every_algorithm_and_certifies_greedy_methods() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_experiment(&case_one(dir.path())).unwrap();
    let s = &report.summary;
    assert_eq!(s.runs.len(), 5);
    let opt = s.opt_reference.as_ref().unwrap().value;
    for run in &s.runs {
        assert!(run.phi.is_finite() && run.phi >= opt - 1e-6, "{:?}", run.algorithm);
        let cert = run.certificate.as_ref().unwrap();
        if matches!(run.algorithm, Algorithm::Gg | Algorithm::Egg) {
            assert_eq!(run.alpha, ONE_MINUS_INV_E);
            let at_observed = certificate_from(run.alpha, run.phi, run.phi_provenance, opt, cert.eps_observed.max(0.0));
            assert!(at_observed.verdict);
        }
        assert!(dir.path().join(run.csv.as_ref().unwrap()).exists());
    }
    assert!(dir.path().join("summary.json").exists());
    assert_eq!(report.files.len(), 6);
}

#[test]
fn summary_follows_the_schema_and_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = case_one(dir.path());
    cfg.algorithms = vec![Algorithm::Gg, Algorithm::Egce];
    let report = run_experiment(&cfg).unwrap();
    let path = dir.path().join("summary.json");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(summary_schema_violations(&doc), Vec::<String>::new());
    assert_eq!(Summary::load(&path).unwrap(), report.summary);

    let mut broken = doc.clone();
    broken["runs"][0]["x_sol_digest"] = serde_json::json!("not hex");
    broken["schema"] = serde_json::json!(2);
    assert_eq!(summary_schema_violations(&broken).len(), 2);
}

#[test]
fn series_csv_round_trips_and_empty_is_header_only() {
    let rows: Vec<SeriesRow> = (1..=5)
        .map(|t| SeriesRow {
            point: MetricPoint {
                t,
                gamma: 0.1 / 3.0,
                phi: std::f64::consts::PI * t as f64,
                error_vs_final: 1.0 / 7.0,
                error_vs_opt: Some(-1e-300 * t as f64),
            },
            wall_ms: 0.0,
        })
        .collect();
    let text = series_csv(&rows, true);
    assert_eq!(parse_series_csv(&text).unwrap(), rows);
    assert!(text.lines().next().unwrap() == "t,gamma_t,phi,error_vs_final,error_vs_opt,wall_ms");
    assert!(!text.contains('\r'));

    let without: Vec<SeriesRow> = rows
        .iter()
        .map(|r| SeriesRow {
            point: MetricPoint { error_vs_opt: None, ..r.point },
            ..*r
        })
        .collect();
    assert_eq!(parse_series_csv(&series_csv(&without, false)).unwrap(), without);
    assert_eq!(series_csv(&[], false), "t,gamma_t,phi,error_vs_final,wall_ms\n");
}

#[test]
fn identical_configs_write_identical_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ra = run_experiment(&case_one(a.path())).unwrap();
    run_experiment(&case_one(b.path())).unwrap();
    for f in &ra.files {
        let name = f.file_name().unwrap();
        let (x, y) = (std::fs::read(f).unwrap(), std::fs::read(b.path().join(name)).unwrap());
        if name == "summary.json" {
            // The config echo names each output directory.
            let strip = |bytes: &[u8]| {
                let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
                v["config"]["output_dir"] = serde_json::Value::Null;
                v.to_string()
            };
            assert_eq!(strip(&x), strip(&y));
        } else {
            assert_eq!(x, y, "{name:?}");
        }
    }
}

#[test]
fn zero_budget_attack_keeps_the_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let text = "userId,movieId,rating,timestamp\n\
                1,10,4.0,0\n1,20,1.0,0\n1,30,2.0,0\n\
                2,10,1.0,0\n2,20,5.0,0\n2,30,2.0,0\n\
                3,10,3.0,0\n3,20,2.0,0\n3,30,4.5,0\n";
    let mut cfg = ExperimentConfig::new(ExperimentKind::MovielensAttack {
        ratings: write(dir.path(), "r.csv", text),
        users: 3,
        movies: 3,
        k: 2,
        budget_fraction: 0.0,
    });
    cfg.algorithms = vec![Algorithm::Gg, Algorithm::Egg];
    cfg.solver = SolverConfig::new(20);
    cfg.output_dir = dir.path().join("out");
    let s = run_experiment(&cfg).unwrap().summary;
    let baseline = s.baseline_utility.unwrap();
    // Greedy takes movie 30 (column sum 8.5), then 20: (2 + 5 + 4.5) / 3.
    // The best pair {10, 20} would reach 4.
    assert!((baseline - 11.5 / 3.0).abs() < 1e-12);
    for run in &s.runs {
        // x_sol is a weighted average of identical iterates, equal up to rounding.
        assert!((run.attacked_utility.unwrap() - baseline).abs() < 1e-12);
        // The reported worst case is exact at this size.
        assert!((run.phi - 4.0).abs() < 1e-12);
    }
}

#[test]
fn failed_runs_remove_their_partial_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = case_one(dir.path());
    cfg.algorithms = vec![Algorithm::Gg, Algorithm::Egce];
    cfg.step_policy = StepPolicy::Configured;
    cfg.per_algorithm.insert(
        Algorithm::Egce,
        SolverConfig::new(10).with_schedule(StepSchedule::Constant { gamma: 10.0 }),
    );
    let Err(err) = run_experiment(&cfg) else {
        panic!("oversized step accepted");
    };
    assert!(matches!(err, Error::StepTooLarge { .. }), "{err}");
    assert_eq!(err.exit_code(), 1);
    let left: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(left.is_empty(), "{left:?}");
}

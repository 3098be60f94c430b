use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use submodular_minimax::evaluation::certificate_from;
use submodular_minimax::experiment::{
    ingest_movielens, parse_algorithms, run_experiment, ExperimentConfig, ExperimentKind, RunOverrides, Summary,
};
use submodular_minimax::{Error, Result};

/// Convex-submodular minimax experiments.
#[derive(Parser)]
#[command(name = "csmm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the instance and every solver.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated subset of gg,egg,grg,egrg,egce.
        #[arg(long)]
        algos: Option<String>,
    },
    /// Build a completed ratings matrix from a MovieLens ratings CSV.
    Ingest {
        #[arg(long)]
        ratings: PathBuf,
        #[arg(long)]
        users: usize,
        #[arg(long)]
        movies: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recheck `α·φ̄(x_sol) ≤ OPT + ε` for every run in a summary.
    Certify {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        eps: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run {
            config,
            out,
            seed,
            algos,
        } => run(&config, out, seed, algos.as_deref()),
        Command::Ingest {
            ratings,
            users,
            movies,
            out,
        } => ingest(&ratings, users, movies, &out),
        Command::Certify { result, alpha, eps } => certify(&result, alpha, eps),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(config: &Path, out: Option<PathBuf>, seed: Option<u64>, algos: Option<&str>) -> Result<()> {
    let mut cfg = ExperimentConfig::load(config)?;
    // Relative ratings paths are read next to the config file.
    if let ExperimentKind::MovielensAttack { ratings, .. } = &mut cfg.experiment {
        if ratings.is_relative() {
            if let Some(dir) = config.parent() {
                *ratings = dir.join(&*ratings);
            }
        }
    }
    let overrides = RunOverrides {
        output_dir: out,
        seed,
        algorithms: algos.map(parse_algorithms).transpose()?,
    };
    let cfg = overrides.apply(&cfg)?;
    let report = run_experiment(&cfg)?;
    if let Some(b) = report.summary.baseline_utility {
        println!("no-attack utility {b:.6}");
    }
    if let Some(o) = &report.summary.opt_reference {
        println!("OPT reference {:.6}", o.value);
    }
    for r in &report.summary.runs {
        let mut line = format!("{:<5} phi(x_sol) {:.6}", r.algorithm.as_str(), r.phi);
        if let Some(c) = &r.certificate {
            line.push_str(&format!("  alpha {:.4} certificate {}", c.alpha, if c.verdict { "holds" } else { "fails" }));
        }
        if let Some(u) = r.attacked_utility {
            line.push_str(&format!("  attacked utility {u:.6}"));
        }
        println!("{line}");
    }
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn ingest(ratings: &Path, users: usize, movies: usize, out: &Path) -> Result<()> {
    if users == 0 || movies == 0 {
        return Err(Error::Config("users and movies must be positive".into()));
    }
    let m = ingest_movielens(ratings, users, movies)?;
    let text = serde_json::to_string(&m)?;
    std::fs::write(out, text).map_err(|e| Error::Io {
        path: out.to_path_buf(),
        source: e,
    })?;
    println!(
        "{} users x {} movies, {} observed cells, wrote {}",
        m.rows(),
        m.cols(),
        m.observed_count(),
        out.display()
    );
    Ok(())
}

/// Prints one verdict per run; the exit status reports errors, not verdicts.
fn certify(result: &Path, alpha: f64, eps: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0 && eps >= 0.0) {
        return Err(Error::Config(format!("need 0 < alpha <= 1 and eps >= 0, got {alpha}, {eps}")));
    }
    let summary = Summary::load(result)?;
    let opt = summary.opt_reference.as_ref().ok_or_else(|| Error::Data {
        path: result.to_path_buf(),
        message: "summary has no OPT reference".into(),
    })?;
    for r in &summary.runs {
        let c = certificate_from(alpha, r.phi, r.phi_provenance, opt.value, eps);
        println!(
            "{:<5} {:.6e} <= {:.6e}  {}",
            r.algorithm.as_str(),
            c.lhs,
            c.rhs,
            if c.verdict { "holds" } else { "fails" }
        );
    }
    Ok(())
}

//! Experiment runners: configuration, instance construction, MovieLens
//! ingestion, and result files.

mod config;
mod emit;
mod movielens;
mod run;
mod synthetic;

pub use config::{parse_algorithms, EmitFormat, ExperimentConfig, ExperimentKind, OptPolicy, StepPolicy};
pub use emit::{
    parse_series_csv, rows_from, series_csv, write_series_csv, InstanceSummary, OptSummary, RunSummary, SeriesRow,
    Summary, SCHEMA_VERSION,
};
pub use movielens::{
    ingest_movielens, parse_ratings, select_and_complete, synthetic_ratings, Rating, RatingsMatrix, SyntheticRatings,
    HEADER as RATINGS_HEADER,
};
pub use run::{build_instance, effective_solver_config, run_experiment, ExperimentReport, Instance, RunOverrides};
pub use synthetic::generate_synthetic_case;

//! Config-driven runs, canned examples with golden expectations, and the selftest sweep.

pub mod config;
pub mod golden;
pub mod report;
pub mod selftest;

pub use config::{env_rank_cap, CheckKind, Coord, JobConfig, RANK_CAP_ENV};
pub use golden::{example, ExampleOutcome, EXAMPLE_NAMES};
pub use report::{execute, run, Artifacts, Report, RunOptions, ENGINE_VERSION};
pub use selftest::{selftest, SelftestOptions, SelftestSummary};

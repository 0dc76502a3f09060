//! File formats, command dispatch and the benchmark harness behind the
//! `helly` binary.

pub mod app;
pub mod bench;
pub mod error;
pub mod io;

pub use app::{main_with, run, Cli, DEFAULT_SEED};
pub use bench::{run_bench, BenchConfig, RunRecord};
pub use error::CliError;
pub use io::{parse_cost_file, parse_graph_file, write_graph};

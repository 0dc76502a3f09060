//! Seeded benchmark runs emitted as CSV rows.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use helly_core::facility::{find_center, find_medians};
use helly_core::generators::{generate, Family, GenSpec};
use helly_core::khelly::{radius_with, DecisionOptions};
use helly_core::oracle::{apsp_summary, apsp_summary_with_limit};
use helly_core::{CostFn, Error, Graph};

use crate::error::CliError;

/// One benchmark run. Every field except `wallclock_ms` is reproducible
/// from the command, family, size and seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Descent moves for center/median, decision calls for radius.
    pub steps: usize,
    pub bfs_count: usize,
    pub wallclock_ms: f64,
    pub vertex: Option<usize>,
    pub value: Option<u128>,
    #[serde(rename = "R")]
    pub r: Option<u32>,
    pub verdict: String,
}

pub const CSV_HEADER: &str = "command,family,n,m,seed,steps,bfs_count,wallclock_ms,vertex,value,R,verdict";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchCommand {
    Center,
    Median,
    Radius,
    /// All-pairs BFS summary, for comparison.
    Oracle,
}

impl BenchCommand {
    pub fn name(self) -> &'static str {
        match self {
            BenchCommand::Center => "center",
            BenchCommand::Median => "median",
            BenchCommand::Radius => "radius",
            BenchCommand::Oracle => "oracle",
        }
    }
}

impl FromStr for BenchCommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [BenchCommand::Center, BenchCommand::Median, BenchCommand::Radius, BenchCommand::Oracle]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown bench command {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub commands: Vec<BenchCommand>,
    /// Compare each result with the all-pairs oracle when `n` allows it.
    pub verify: bool,
    pub k: usize,
    pub alpha: u32,
    pub decision: DecisionOptions,
}

impl BenchConfig {
    pub fn new(family: Family, sizes: Vec<usize>, seeds: Vec<u64>) -> Self {
        Self {
            family,
            sizes,
            seeds,
            commands: vec![BenchCommand::Center],
            verify: false,
            k: 2,
            alpha: 0,
            decision: DecisionOptions::default(),
        }
    }
}

/// Runs every (size, seed, command) combination in order. Graphs come from
/// the family generator with the run's seed; costs are unit.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<RunRecord>, CliError> {
    let mut records = Vec::new();
    for &n in &config.sizes {
        for &seed in &config.seeds {
            let g = generate(&GenSpec::for_family(config.family, n, seed))?;
            for &command in &config.commands {
                records.push(run_one(config, command, &g, seed)?);
            }
        }
    }
    Ok(records)
}

fn is_algorithmic(e: &Error) -> bool {
    matches!(
        e,
        Error::GateNotFound { .. }
            | Error::PseudoGateNotFound { .. }
            | Error::StepBudgetExceeded { .. }
            | Error::SamplingFailure { .. }
    )
}

fn run_one(config: &BenchConfig, command: BenchCommand, g: &Graph, seed: u64) -> Result<RunRecord, CliError> {
    let c = CostFn::unit(g.n());
    let mut record = RunRecord {
        command: command.name().into(),
        family: config.family.name().into(),
        n: g.n(),
        m: g.m(),
        seed,
        steps: 0,
        bfs_count: 0,
        wallclock_ms: 0.0,
        vertex: None,
        value: None,
        r: None,
        verdict: "ok".into(),
    };
    let start = Instant::now();
    let outcome = match command {
        BenchCommand::Center => find_center(g, &c, seed).map(|res| {
            record.steps = res.trace.steps();
            record.bfs_count = res.trace.bfs_calls;
            record.vertex = Some(res.vertex);
            record.value = Some(res.value);
        }),
        BenchCommand::Median => find_medians(g, &c, seed).map(|res| {
            record.steps = res.trace.steps();
            record.bfs_count = res.trace.bfs_calls;
            record.vertex = Some(res.medians[0]);
            record.value = Some(res.value);
        }),
        BenchCommand::Radius => radius_with(g, config.k, config.alpha, seed, &config.decision).map(|res| {
            record.steps = res.decisions;
            record.bfs_count = res.bfs_calls;
            record.r = Some(res.radius);
        }),
        BenchCommand::Oracle => apsp_summary_with_limit(g, &c, usize::MAX).map(|s| {
            record.bfs_count = g.n();
            record.vertex = Some(s.center[0]);
            record.value = Some(s.radius);
        }),
    };
    record.wallclock_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    match outcome {
        Ok(()) => {}
        Err(e) if is_algorithmic(&e) => {
            record.verdict = format!("failed: {e}");
            return Ok(record);
        }
        Err(e) => return Err(e.into()),
    }
    if config.verify && command != BenchCommand::Oracle {
        record.verdict = match apsp_summary(g, &c) {
            Ok(s) => {
                let agree = match command {
                    BenchCommand::Center => record.value == Some(s.radius),
                    BenchCommand::Median => record.value == Some(s.median_value()),
                    _ => {
                        let r = record.r.unwrap_or(0);
                        let rad = s.unit_radius();
                        r <= rad && rad <= r + config.alpha
                    }
                };
                if agree { "agree" } else { "disagree" }.into()
            }
            Err(Error::OracleTooLarge { .. }) => "unverified".into(),
            Err(e) => return Err(e.into()),
        };
    }
    Ok(record)
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>, CliError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(CliError::from)
}

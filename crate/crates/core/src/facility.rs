//! Cost-weighted center and median by randomized seeding plus local search.
//!
//! Both objectives are unimodal on Helly graphs, so a vertex with no
//! improving neighbor is a global minimum. The search starts from the best
//! vertex of a random sample in which each vertex appears with probability
//! `n^(-1/2)`; that start point keeps the descent short with high
//! probability. Each descent step costs one BFS plus one gate-table build,
//! and compares the current vertex with all of its neighbors at once via
//! [`q_values`].

use rand::Rng;
use rayon::prelude::*;

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};
use crate::gates::{q_values, GateTables};
use crate::graph::{Bfs, Graph};
use crate::objective::{eccentricity_from_row, total_distance_from_row, CostFn, Objective};
use crate::{seeded_rng, SeededRng};

/// The descent path of one local search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTrace {
    pub objective: Objective,
    /// Visited vertices; the first is the sampled start.
    pub vertices: Vec<usize>,
    /// Objective value of each visited vertex, strictly decreasing.
    pub values: Vec<u128>,
    /// Size of the random start sample.
    pub sample_size: usize,
    pub bfs_calls: usize,
    pub gate_builds: usize,
    /// Gates that needed the exhaustive fallback, summed over all builds.
    pub gate_fallbacks: usize,
}

impl SearchTrace {
    fn new(objective: Objective) -> Self {
        Self {
            objective,
            vertices: Vec::new(),
            values: Vec::new(),
            sample_size: 0,
            bfs_calls: 0,
            gate_builds: 0,
            gate_fallbacks: 0,
        }
    }

    /// Number of descent moves (edges of the monotone path).
    pub fn steps(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    fn push(&mut self, v: usize, value: u128) {
        self.vertices.push(v);
        self.values.push(value);
    }

    fn record_build(&mut self, tables: &GateTables) {
        self.bfs_calls += 1;
        self.gate_builds += 1;
        self.gate_fallbacks += tables.stats().gate_fallbacks;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchOptions {
    /// Sampling probability for the start sample; `None` means `n^(-1/2)`.
    pub sample_probability: Option<f64>,
    /// Maximum descent moves; `None` means [`default_step_budget`].
    pub step_budget: Option<usize>,
}

/// `ceil(10·sqrt(n)·ln n)`, with `ln` evaluated at `max(n, 2)`.
pub fn default_step_budget(n: usize) -> usize {
    let nf = n.max(2) as f64;
    (10.0 * (n as f64).sqrt() * nf.ln()).ceil() as usize
}

/// Bound on the descent length that holds with high probability when the
/// start is the best of an `n^(-1/2)` sample: `1 + 2·sqrt(n)·ln n`.
pub fn descent_length_bound(n: usize) -> f64 {
    1.0 + 2.0 * (n as f64).sqrt() * (n.max(1) as f64).ln()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterResult {
    pub vertex: usize,
    pub value: u128,
    pub trace: SearchTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedianResult {
    /// The complete median set, ascending.
    pub medians: Vec<usize>,
    pub value: u128,
    pub trace: SearchTrace,
}

/// Draws the random start sample, evaluates the objective on each sampled
/// vertex and returns the best one (lowest index on ties). An empty sample
/// is replaced by one uniformly random vertex.
pub fn sample_start<R: Rng>(
    g: &Graph,
    c: &CostFn,
    objective: Objective,
    rng: &mut R,
    options: &SearchOptions,
) -> Result<(usize, SearchTrace)> {
    c.check_len(g)?;
    let n = g.n();
    let p = options
        .sample_probability
        .unwrap_or_else(|| 1.0 / (n as f64).sqrt());
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("sample probability {p} outside [0, 1]")));
    }
    let mut sample: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if sample.is_empty() {
        sample.push(rng.gen_range(0..n));
    }
    let evaluated: Vec<(u128, usize)> = sample
        .par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, &v| Ok((objective.evaluate(c, bfs.run(g, v))?, v)),
        )
        .collect::<Result<_>>()?;
    let (value, start) = *evaluated.iter().min().expect("sample is non-empty");

    let mut trace = SearchTrace::new(objective);
    trace.sample_size = sample.len();
    trace.bfs_calls = sample.len();
    trace.push(start, value);
    Ok((start, trace))
}

/// Returns the lowest-index neighbor of `u` with strictly smaller
/// cost-weighted eccentricity, or `None` if `u` is a local minimum.
pub fn center_step(g: &Graph, c: &CostFn, u: usize) -> Result<Option<usize>> {
    c.check_len(g)?;
    let tables = GateTables::build(g, u)?;
    let value = eccentricity_from_row(c, tables.dist());
    Ok(center_step_with(g, c, &tables, value))
}

/// With `e = e_c(u)`, `A = {w : c(w)·d(u,w) = e}` and
/// `B = {w : c(w)·(d(u,w)+1) >= e}`, a neighbor `v` improves on `u` iff no
/// vertex of `A` fails to get closer and no vertex of `B` gets farther.
fn center_step_with(g: &Graph, c: &CostFn, tables: &GateTables, value: u128) -> Option<usize> {
    if value == 0 {
        return None;
    }
    let n = g.n();
    let dist = tables.dist();
    let mut extreme = CandidateSet::empty(n);
    let mut critical = CandidateSet::empty(n);
    for w in 0..n {
        let cw = c.get(w) as u128;
        let d = dist[w] as u128;
        if cw * d == value {
            extreme.insert(w);
        }
        if cw * (d + 1) >= value {
            critical.insert(w);
        }
    }
    let qa = q_values(g, tables, &extreme, c);
    let qb = q_values(g, tables, &critical, c);
    qa.entries
        .iter()
        .zip(&qb.entries)
        .find(|(a, b)| a.plus == 0 && a.eq == 0 && b.plus == 0)
        .map(|(a, _)| a.neighbor)
}

/// Returns the lowest-index neighbor of `u` with strictly smaller
/// cost-weighted total distance, or `None` if `u` is a local minimum.
pub fn median_step(g: &Graph, c: &CostFn, u: usize) -> Result<Option<usize>> {
    c.check_len(g)?;
    let tables = GateTables::build(g, u)?;
    Ok(median_step_with(g, c, &tables))
}

fn median_step_with(g: &Graph, c: &CostFn, tables: &GateTables) -> Option<usize> {
    let q = q_values(g, tables, &CandidateSet::full(g.n()), c);
    q.entries.iter().find(|e| e.minus > e.plus).map(|e| e.neighbor)
}

pub fn find_center(g: &Graph, c: &CostFn, seed: u64) -> Result<CenterResult> {
    find_center_with(g, c, &mut seeded_rng(seed), &SearchOptions::default())
}

pub fn find_center_with(
    g: &Graph,
    c: &CostFn,
    rng: &mut SeededRng,
    options: &SearchOptions,
) -> Result<CenterResult> {
    c.check_len(g)?;
    if c.is_zero() {
        let mut trace = SearchTrace::new(Objective::Eccentricity);
        trace.push(0, 0);
        return Ok(CenterResult { vertex: 0, value: 0, trace });
    }
    let (start, mut trace) = sample_start(g, c, Objective::Eccentricity, rng, options)?;
    let budget = options.step_budget.unwrap_or_else(|| default_step_budget(g.n()));
    let mut u = start;
    let mut value = trace.values[0];
    if value > 0 {
        let mut tables = GateTables::build(g, u)?;
        trace.record_build(&tables);
        while let Some(v) = center_step_with(g, c, &tables, value) {
            if trace.steps() >= budget {
                return Err(Error::StepBudgetExceeded { budget });
            }
            tables = GateTables::build(g, v)?;
            trace.record_build(&tables);
            u = v;
            value = eccentricity_from_row(c, tables.dist());
            trace.push(u, value);
        }
    }
    Ok(CenterResult { vertex: u, value, trace })
}

pub fn find_medians(g: &Graph, c: &CostFn, seed: u64) -> Result<MedianResult> {
    find_medians_with(g, c, &mut seeded_rng(seed), &SearchOptions::default())
}

/// Local search on total distance, then one more aggregation at the final
/// median to collect every neighbor tying with it. With strictly positive
/// costs the medians of a Helly graph form a clique, so this yields the
/// whole median set; with zero costs the ties are followed further, at one
/// more gate build per median.
pub fn find_medians_with(
    g: &Graph,
    c: &CostFn,
    rng: &mut SeededRng,
    options: &SearchOptions,
) -> Result<MedianResult> {
    c.check_len(g)?;
    if c.is_zero() {
        let mut trace = SearchTrace::new(Objective::TotalDistance);
        trace.push(0, 0);
        return Ok(MedianResult {
            medians: (0..g.n()).collect(),
            value: 0,
            trace,
        });
    }
    let (start, mut trace) = sample_start(g, c, Objective::TotalDistance, rng, options)?;
    let budget = options.step_budget.unwrap_or_else(|| default_step_budget(g.n()));
    let mut u = start;
    let mut value = trace.values[0];
    if value == 0 {
        // Only `u` carries cost; every other vertex is strictly worse.
        return Ok(MedianResult { medians: vec![u], value, trace });
    }
    let mut tables = GateTables::build(g, u)?;
    trace.record_build(&tables);
    while let Some(v) = median_step_with(g, c, &tables) {
        if trace.steps() >= budget {
            return Err(Error::StepBudgetExceeded { budget });
        }
        tables = GateTables::build(g, v)?;
        trace.record_build(&tables);
        u = v;
        value = total_distance_from_row(c, tables.dist())?;
        trace.push(u, value);
    }
    let medians = collect_ties(g, c, tables, &mut trace)?;
    Ok(MedianResult { medians, value, trace })
}

/// Median set around the median `tables.pivot()`. With positive costs the
/// medians form a clique, so the tied neighbors of the pivot are all of
/// them. Zero costs can break the clique shape (two unit costs at distance
/// two tie along their whole interval) but medians stay connected, so ties
/// are then followed from every median found.
fn collect_ties(g: &Graph, c: &CostFn, tables: GateTables, trace: &mut SearchTrace) -> Result<Vec<usize>> {
    let full = CandidateSet::full(g.n());
    let follow = c.as_slice().contains(&0);
    let mut found = CandidateSet::from_vertices(g.n(), [tables.pivot()]);
    let mut queue = vec![tables.pivot()];
    let mut next_tables = Some(tables);
    while let Some(x) = queue.pop() {
        let t = match next_tables.take() {
            Some(t) => t,
            None => {
                let t = GateTables::build(g, x)?;
                trace.record_build(&t);
                t
            }
        };
        for e in q_values(g, &t, &full, c).entries {
            if e.minus == e.plus && !found.contains(e.neighbor) {
                found.insert(e.neighbor);
                if follow {
                    queue.push(e.neighbor);
                }
            }
        }
    }
    Ok(found.to_vec())
}

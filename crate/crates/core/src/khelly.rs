//! Radius of k-Helly graphs (exact) and (k, alpha)-Helly graphs (additive
//! `+alpha`), by binary search over a randomized decision procedure.
//!
//! The decision procedure for radius `r`:
//!
//! 1. `C_0` is the set of vertices within distance `r` of every vertex in a
//!    random sample of `ceil(3·ln n / eps)` vertices. Every vertex of
//!    eccentricity at most `r` is in `C_0`; every member of `C_0` covers
//!    all but an `eps` fraction of the graph with high probability.
//! 2. For `k` rounds, take the smallest member `v` of the current candidate
//!    set. Accept if `e(v) <= r`. Otherwise intersect the candidates with
//!    the radius-`r` balls around every vertex `v` misses, and reject if
//!    nothing is left.
//! 3. Accept if candidates survive all `k` rounds.
//!
//! A rejection always proves `rad(G) > r`. An acceptance proves
//! `rad(G) <= r + alpha` on (k, alpha)-Helly graphs, up to the sampling
//! failure probability.

use rand::Rng;
use rayon::prelude::*;

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};
use crate::seeded_rng;

/// `ceil(3·ln(max(n, 2)) / eps)`.
pub fn sample_count(n: usize, eps: f64) -> usize {
    (3.0 * (n.max(2) as f64).ln() / eps).ceil() as usize
}

/// `min(1/2, scale·sqrt(3·ln(max(n, 2)) / (k·n)))`.
pub fn default_epsilon(n: usize, k: usize, scale: f64) -> f64 {
    let ln = (n.max(2) as f64).ln();
    (scale * (3.0 * ln / (k as f64 * n as f64)).sqrt()).min(0.5)
}

/// `acc` intersected with the radius-`r` balls around every vertex of `centers`.
fn intersect_balls(g: &Graph, r: u32, centers: &[usize], mut acc: CandidateSet) -> CandidateSet {
    let n = g.n();
    let balls = centers
        .par_iter()
        .fold(
            || (Bfs::new(n), CandidateSet::full(n)),
            |(mut bfs, mut inter), &s| {
                bfs.run_bounded(g, s, r);
                inter.intersect_with(&CandidateSet::from_vertices(n, bfs.order().iter().copied()));
                (bfs, inter)
            },
        )
        .map(|(_, inter)| inter)
        .reduce(
            || CandidateSet::full(n),
            |mut a, b| {
                a.intersect_with(&b);
                a
            },
        );
    acc.intersect_with(&balls);
    acc
}

/// Dominating candidates with their sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingCandidates {
    pub set: CandidateSet,
    /// Sampled vertices, with repetition, in draw order.
    pub samples: Vec<usize>,
    /// One BFS per distinct sample.
    pub bfs_calls: usize,
}

/// Vertices within distance `r` of all of `ceil(3·ln n / eps)` uniformly
/// sampled vertices.
pub fn dominating_candidates<R: Rng>(g: &Graph, r: u32, eps: f64, rng: &mut R) -> Result<DominatingCandidates> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let n = g.n();
    let samples: Vec<usize> = (0..sample_count(n, eps)).map(|_| rng.gen_range(0..n)).collect();
    let mut distinct = samples.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let set = intersect_balls(g, r, &distinct, CandidateSet::full(n));
    Ok(DominatingCandidates {
        set,
        samples,
        bfs_calls: distinct.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

/// One round of the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    /// Smallest member of the candidate set entering the round.
    pub pivot: usize,
    /// Vertices farther than `r` from the pivot; empty when the pivot's
    /// eccentricity is at most `r`.
    pub far: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub r: u32,
    pub verdict: Verdict,
    /// A vertex of eccentricity at most `r`, when the acceptance came from
    /// finding one directly.
    pub witness: Option<usize>,
    pub eps: f64,
    pub rounds: Vec<Round>,
    /// `C_0, C_1, ...` as computed by the final attempt.
    pub candidates: Vec<CandidateSet>,
    pub bfs_calls: usize,
    /// Fresh restarts after a candidate missed more than `eps·n` vertices.
    pub restarts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecisionOptions {
    /// Multiplier on the default `sqrt(3·ln n / (k·n))` choice of `eps`.
    pub eps_scale: f64,
    /// Explicit `eps`, overriding `eps_scale`.
    pub eps: Option<f64>,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        Self {
            eps_scale: 1.0,
            eps: None,
        }
    }
}

impl DecisionOptions {
    fn epsilon(&self, n: usize, k: usize) -> f64 {
        self.eps.unwrap_or_else(|| default_epsilon(n, k, self.eps_scale))
    }
}

enum Attempt {
    Done(Decision),
    TooFar { far: usize, limit: usize, bfs_calls: usize },
}

/// Decides whether `rad(G) <= r` (reject is always correct; accept means
/// `rad(G) <= r + alpha` on a (k, alpha)-Helly graph).
pub fn decide_radius<R: Rng>(g: &Graph, r: u32, k: usize, rng: &mut R, options: &DecisionOptions) -> Result<Decision> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let eps = options.epsilon(g.n(), k);
    let spent = match attempt(g, r, k, eps, rng)? {
        Attempt::Done(d) => return Ok(d),
        Attempt::TooFar { bfs_calls, .. } => bfs_calls,
    };
    match attempt(g, r, k, eps, rng)? {
        Attempt::Done(mut d) => {
            d.restarts = 1;
            d.bfs_calls += spent;
            Ok(d)
        }
        Attempt::TooFar { far, limit, .. } => Err(Error::SamplingFailure { r, far, limit }),
    }
}

fn attempt<R: Rng>(g: &Graph, r: u32, k: usize, eps: f64, rng: &mut R) -> Result<Attempt> {
    let n = g.n();
    let start = dominating_candidates(g, r, eps, rng)?;
    let mut bfs_calls = start.bfs_calls;
    let mut current = start.set;
    let mut decision = Decision {
        r,
        verdict: Verdict::Reject,
        witness: None,
        eps,
        rounds: Vec::new(),
        candidates: vec![current.clone()],
        bfs_calls: 0,
        restarts: 0,
    };
    let limit = (eps * n as f64).floor() as usize;
    let mut bfs = Bfs::new(n);

    for _ in 0..k {
        let Some(pivot) = current.first() else {
            decision.bfs_calls = bfs_calls;
            return Ok(Attempt::Done(decision));
        };
        let dist = bfs.run(g, pivot);
        bfs_calls += 1;
        let far: Vec<usize> = (0..n).filter(|&x| dist[x] > r).collect();
        if far.is_empty() {
            decision.rounds.push(Round { pivot, far });
            decision.verdict = Verdict::Accept;
            decision.witness = Some(pivot);
            decision.bfs_calls = bfs_calls;
            return Ok(Attempt::Done(decision));
        }
        if far.len() > limit {
            return Ok(Attempt::TooFar {
                far: far.len(),
                limit,
                bfs_calls,
            });
        }
        current = intersect_balls(g, r, &far, current);
        bfs_calls += far.len();
        decision.rounds.push(Round { pivot, far });
        decision.candidates.push(current.clone());
    }
    if !current.is_empty() {
        decision.verdict = Verdict::Accept;
    }
    decision.bfs_calls = bfs_calls;
    Ok(Attempt::Done(decision))
}

/// Radius estimate `R` with `R <= rad(G) <= R + alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusResult {
    pub radius: u32,
    pub alpha: u32,
    /// Number of decision calls made by the binary search.
    pub decisions: usize,
    pub bfs_calls: usize,
    /// A vertex of eccentricity at most `radius`, if the accepting decision
    /// at `radius` happened to find one.
    pub witness: Option<usize>,
}

impl RadiusResult {
    pub fn upper(&self) -> u32 {
        self.radius + self.alpha
    }
}

pub fn radius(g: &Graph, k: usize, alpha: u32, seed: u64) -> Result<RadiusResult> {
    radius_with(g, k, alpha, seed, &DecisionOptions::default())
}

/// Binary search on `[0, n - 1]` keeping `lo <= rad(G) <= hi + alpha`.
pub fn radius_with(g: &Graph, k: usize, alpha: u32, seed: u64, options: &DecisionOptions) -> Result<RadiusResult> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let mut rng = seeded_rng(seed);
    let (mut lo, mut hi) = (0u32, (g.n() - 1) as u32);
    let mut decisions = 0;
    let mut bfs_calls = 0;
    let mut witness = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let d = decide_radius(g, mid, k, &mut rng, options)?;
        decisions += 1;
        bfs_calls += d.bfs_calls;
        match d.verdict {
            Verdict::Accept => {
                hi = mid;
                witness = d.witness;
            }
            Verdict::Reject => lo = mid + 1,
        }
    }
    Ok(RadiusResult {
        radius: lo,
        alpha,
        decisions,
        bfs_calls,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn dominating_examples() {
        let g = path(4);
        for seed in 0..20 {
            let d = dominating_candidates(&g, 3, 0.3, &mut seeded_rng(seed)).unwrap();
            assert_eq!(d.set.len(), 4);
            let d = dominating_candidates(&g, 0, 0.3, &mut seeded_rng(seed)).unwrap();
            assert!(d.set.is_empty());
        }
        assert!(dominating_candidates(&g, 1, 1.0, &mut seeded_rng(0)).is_err());
    }

    #[test]
    fn star_decisions() {
        let g = star(3);
        for seed in 0..100 {
            let d = decide_radius(&g, 1, 2, &mut seeded_rng(seed), &DecisionOptions::default()).unwrap();
            assert_eq!(d.verdict, Verdict::Accept);
            let d = decide_radius(&g, 0, 2, &mut seeded_rng(seed), &DecisionOptions::default()).unwrap();
            assert_eq!(d.verdict, Verdict::Reject);
        }
    }

    #[test]
    fn p4_rejects_radius_one() {
        for seed in 0..50 {
            let d = decide_radius(&path(4), 1, 2, &mut seeded_rng(seed), &DecisionOptions::default()).unwrap();
            assert_eq!(d.verdict, Verdict::Reject);
        }
    }

    #[test]
    fn small_radii() {
        let single = Graph::from_edge_list(1, &[]).unwrap();
        let r = radius(&single, 2, 0, 0).unwrap();
        assert_eq!((r.radius, r.decisions), (0, 0));
        for seed in 0..10 {
            assert_eq!(radius(&complete(4), 2, 0, seed).unwrap().radius, 1);
            assert_eq!(radius(&path(4), 2, 0, seed).unwrap().radius, 2);
        }
        assert!(radius(&path(4), 1, 0, 0).is_err());
    }

    #[test]
    fn epsilon_choice() {
        assert_eq!(default_epsilon(4, 2, 1.0), 0.5);
        let e = default_epsilon(10_000, 2, 1.0);
        assert!((e - (3.0 * 10_000f64.ln() / 20_000.0).sqrt()).abs() < 1e-12);
        assert_eq!(sample_count(4, 0.5), 9);
    }
}

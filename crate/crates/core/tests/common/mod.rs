#![allow(dead_code)]

use rand::Rng;

use helly_core::generators::{gen_helly, helly_corpus};
use helly_core::{seeded_rng, CostFn, Graph};

pub fn corpus() -> Vec<Graph> {
    helly_corpus().iter().map(|s| gen_helly(s).unwrap()).collect()
}

/// Every `step`-th corpus graph, for tests that do not need all of them.
pub fn corpus_sample(step: usize) -> Vec<Graph> {
    helly_corpus()
        .iter()
        .step_by(step)
        .map(|s| gen_helly(s).unwrap())
        .collect()
}

/// Three cost shapes: moderate, tiny with many zeros and ties, and wide.
pub fn random_costs(n: usize, kind: usize, seed: u64) -> CostFn {
    let mut rng = seeded_rng(seed);
    let costs = (0..n)
        .map(|_| match kind % 3 {
            0 => rng.gen_range(1..=100),
            1 => rng.gen_range(0..=3),
            _ => rng.gen_range(1..=1_000_000),
        })
        .collect();
    CostFn::new(costs, n).unwrap()
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

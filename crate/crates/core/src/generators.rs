//! Seeded generators for graph families with known or checkable Helly-type
//! behavior: random trees, random interval graphs, king grids (strong
//! products of two paths) and random chordal graphs.
//!
//! Identical specifications always produce identical graphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{seeded_rng, SeededRng};

/// Draws allowed before a connectivity-constrained generator gives up.
pub const MAX_ATTEMPTS: usize = 100;

/// Largest clique of a chordal graph unless overridden.
pub const DEFAULT_MAX_CLIQUE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tree,
    Interval,
    KingGrid,
    Chordal,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Tree, Family::Interval, Family::KingGrid, Family::Chordal];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tree => "tree",
            Family::Interval => "interval",
            Family::KingGrid => "king-grid",
            Family::Chordal => "chordal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Tree { n: usize, seed: u64 },
    Interval { n: usize, seed: u64 },
    KingGrid { rows: usize, cols: usize },
    Chordal { n: usize, max_clique: usize, seed: u64 },
}

impl GenSpec {
    /// Spec with roughly `n` vertices. King grids are square with side
    /// `round(sqrt(n))`; chordal graphs use [`DEFAULT_MAX_CLIQUE`].
    pub fn for_family(family: Family, n: usize, seed: u64) -> Self {
        match family {
            Family::Tree => GenSpec::Tree { n, seed },
            Family::Interval => GenSpec::Interval { n, seed },
            Family::KingGrid => {
                let side = (n as f64).sqrt().round() as usize;
                GenSpec::KingGrid { rows: side, cols: side }
            }
            Family::Chordal => GenSpec::Chordal {
                n,
                max_clique: DEFAULT_MAX_CLIQUE,
                seed,
            },
        }
    }

    pub fn family(&self) -> Family {
        match self {
            GenSpec::Tree { .. } => Family::Tree,
            GenSpec::Interval { .. } => Family::Interval,
            GenSpec::KingGrid { .. } => Family::KingGrid,
            GenSpec::Chordal { .. } => Family::Chordal,
        }
    }
}

/// Generates a graph from one of the Helly families (tree, interval, king grid).
pub fn gen_helly(spec: &GenSpec) -> Result<Graph> {
    match *spec {
        GenSpec::Tree { n, seed } => random_tree(n, &mut seeded_rng(seed)),
        GenSpec::Interval { n, seed } => random_interval_graph(n, &mut seeded_rng(seed)),
        GenSpec::KingGrid { rows, cols } => king_grid(rows, cols),
        GenSpec::Chordal { .. } => Err(Error::InvalidParameter(
            "chordal graphs are not a Helly family; use gen_chordal".into(),
        )),
    }
}

/// Generates a graph of any family.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match *spec {
        GenSpec::Chordal { n, max_clique, seed } => gen_chordal(n, max_clique, seed),
        _ => gen_helly(spec),
    }
}

pub fn gen_chordal(n: usize, max_clique: usize, seed: u64) -> Result<Graph> {
    random_chordal(n, max_clique, &mut seeded_rng(seed))
}

/// Fixed corpus of Helly graphs with 2 to 200 vertices: 100 trees and 100
/// interval graphs with sizes spread evenly over the range, and every king
/// grid with `3 <= rows <= cols <= 20` and at most 200 vertices.
pub fn helly_corpus() -> Vec<GenSpec> {
    let size = |i: usize| 2 + i * 198 / 99;
    let mut specs: Vec<GenSpec> = (0..100)
        .map(|i| GenSpec::Tree {
            n: size(i),
            seed: 1000 + i as u64,
        })
        .collect();
    specs.extend((0..100).map(|i| GenSpec::Interval {
        n: size(i),
        seed: 2000 + i as u64,
    }));
    for rows in 3..=20 {
        for cols in rows..=20 {
            if rows * cols <= 200 {
                specs.push(GenSpec::KingGrid { rows, cols });
            }
        }
    }
    specs
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter("graph size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Uniform random labeled tree, decoded from a random Prüfer sequence.
pub fn random_tree(n: usize, rng: &mut SeededRng) -> Result<Graph> {
    check_size(n)?;
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        return Graph::from_edge_list(n, &edges);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::from_edge_list(n, &edges)
}

/// Intersection graph of `n` random integer intervals inside `[0, 4n]`,
/// redrawn until connected. Lengths are uniform in `[1, L]` with
/// `L = 8·(ln(4n) + 2)`, which keeps the expected number of uncovered
/// points below one.
pub fn random_interval_graph(n: usize, rng: &mut SeededRng) -> Result<Graph> {
    check_size(n)?;
    let span = 4 * n as u64;
    let max_len = (8.0 * ((span as f64).ln() + 2.0)).ceil() as u64;
    for _ in 0..MAX_ATTEMPTS {
        let mut intervals: Vec<(u64, u64, usize)> = (0..n)
            .map(|v| {
                let left = rng.gen_range(0..=span);
                let right = (left + rng.gen_range(1..=max_len)).min(span);
                (left, right, v)
            })
            .collect();
        intervals.sort_unstable();
        let mut edges = Vec::new();
        for (i, &(_, right, u)) in intervals.iter().enumerate() {
            for &(left, _, v) in &intervals[i + 1..] {
                if left > right {
                    break;
                }
                edges.push((u, v));
            }
        }
        match Graph::from_edge_list(n, &edges) {
            Err(Error::NotConnected(_)) => continue,
            other => return other,
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected interval graph on {n} vertices after {MAX_ATTEMPTS} draws"
    )))
}

/// Strong product of paths `P_rows` and `P_cols`; vertex `(r, c)` is `r·cols + c`.
pub fn king_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!("king grid {rows}x{cols} is empty")));
    }
    let mut edges = Vec::with_capacity(4 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
                if c + 1 < cols {
                    edges.push((v, v + cols + 1));
                }
                if c > 0 {
                    edges.push((v, v + cols - 1));
                }
            }
        }
    }
    Graph::from_edge_list(rows * cols, &edges)
}

/// Random chordal graph grown as a clique tree: each new bag shares a random
/// non-empty subset of an existing bag and adds fresh vertices, with bag
/// sizes capped at `max_clique`. Creation order is the reverse of a perfect
/// elimination ordering.
pub fn random_chordal(n: usize, max_clique: usize, rng: &mut SeededRng) -> Result<Graph> {
    check_size(n)?;
    if max_clique < 2 && n > 1 {
        return Err(Error::InvalidParameter(format!(
            "max_clique must be at least 2 for n > 1, got {max_clique}"
        )));
    }
    let first = rng.gen_range(2..=max_clique.max(2)).min(n);
    let mut bags: Vec<Vec<usize>> = vec![(0..first).collect()];
    let mut edges = Vec::new();
    clique_edges(&bags[0], &mut edges);
    let mut next = first;
    while next < n {
        let parent = &bags[rng.gen_range(0..bags.len())];
        let shared_len = rng.gen_range(1..=parent.len().min(max_clique - 1));
        let mut bag: Vec<usize> = parent.choose_multiple(rng, shared_len).copied().collect();
        let fresh = rng.gen_range(1..=max_clique - shared_len).min(n - next);
        bag.extend(next..next + fresh);
        next += fresh;
        clique_edges(&bag, &mut edges);
        bags.push(bag);
    }
    Graph::from_edge_list(n, &edges)
}

fn clique_edges(bag: &[usize], edges: &mut Vec<(usize, usize)>) {
    for (i, &u) in bag.iter().enumerate() {
        for &v in &bag[i + 1..] {
            edges.push((u, v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::{is_k_helly, perfect_elimination_order};

    #[test]
    fn tree_shape() {
        for seed in 0..20 {
            let g = gen_helly(&GenSpec::Tree { n: 5, seed }).unwrap();
            assert_eq!((g.n(), g.m()), (5, 4));
        }
        assert_eq!(gen_helly(&GenSpec::Tree { n: 1, seed: 0 }).unwrap().n(), 1);
        assert_eq!(gen_helly(&GenSpec::Tree { n: 2, seed: 0 }).unwrap().m(), 1);
    }

    #[test]
    fn reproducible() {
        for family in Family::ALL {
            let spec = GenSpec::for_family(family, 30, 7);
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn interval_graph_is_helly() {
        let g = gen_helly(&GenSpec::Interval { n: 12, seed: 3 }).unwrap();
        assert!(is_k_helly(&g, 2).unwrap().holds);
    }

    #[test]
    fn small_king_grid_is_helly() {
        let g = king_grid(3, 3).unwrap();
        assert_eq!(g.m(), 20);
        assert!(is_k_helly(&g, 2).unwrap().holds);
    }

    #[test]
    fn chordal_has_elimination_order() {
        assert_eq!(gen_chordal(1, 4, 0).unwrap().n(), 1);
        for seed in 0..10 {
            let g = gen_chordal(25, 5, seed).unwrap();
            assert!(perfect_elimination_order(&g).is_some());
        }
    }

    #[test]
    fn corpus_shape() {
        let corpus = helly_corpus();
        assert_eq!(corpus.len(), 333);
        let graphs: Vec<Graph> = corpus.iter().map(|s| gen_helly(s).unwrap()).collect();
        assert!(graphs.iter().all(|g| (2..=200).contains(&g.n())));
        assert_eq!(graphs.iter().map(Graph::n).min(), Some(2));
        assert_eq!(graphs.iter().map(Graph::n).max(), Some(200));
    }

    #[test]
    fn invalid_parameters() {
        assert!(gen_helly(&GenSpec::Tree { n: 0, seed: 0 }).is_err());
        assert!(king_grid(0, 3).is_err());
        assert!(gen_chordal(5, 1, 0).is_err());
        assert!(gen_helly(&GenSpec::Chordal { n: 5, max_clique: 3, seed: 0 }).is_err());
        assert_eq!("king-grid".parse::<Family>().unwrap(), Family::KingGrid);
        assert!("grid".parse::<Family>().is_err());
    }
}

//! Exhaustive certification of Helly-type properties on small graphs, the
//! unimodality audit for vertex functions, and chordality via perfect
//! elimination orderings.
//!
//! A graph is k-Helly iff for every (k+1)-subset `S` of vertices, the balls
//! containing at least `k` vertices of `S` have a common vertex. Balls around
//! one center are nested, so only the smallest qualifying ball per center
//! matters: its radius is the k-th smallest distance from the center to `S`.
//! The (k, alpha) test inflates each of these radii by `alpha`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};
use crate::oracle::DistanceMatrix;

/// Outcome of an exhaustive Helly-type check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyReport {
    pub k: usize,
    pub alpha: u32,
    pub holds: bool,
    /// Present exactly when `holds` is false.
    pub witness: Option<HellyWitness>,
}

/// A (k+1)-subset whose minimal qualifying balls, inflated by `alpha`, have
/// empty intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyWitness {
    pub subset: Vec<usize>,
    /// Minimal qualifying radius for every center `z`, before inflation.
    pub radii: Vec<u32>,
}

impl HellyWitness {
    /// Re-derives the radii with fresh BFS runs and confirms the inflated
    /// balls share no vertex.
    pub fn recheck(&self, g: &Graph, k: usize, alpha: u32) -> bool {
        let n = g.n();
        if self.subset.len() != k + 1 || self.radii.len() != n {
            return false;
        }
        let mut bfs = Bfs::new(n);
        let mut common = vec![true; n];
        for z in 0..n {
            let dist = bfs.run(g, z);
            let mut to_subset: Vec<u32> = self.subset.iter().map(|&s| dist[s]).collect();
            to_subset.sort_unstable();
            if to_subset[k - 1] != self.radii[z] {
                return false;
            }
            let r = self.radii[z] + alpha;
            for (x, keep) in common.iter_mut().enumerate() {
                *keep &= dist[x] <= r;
            }
        }
        !common.contains(&true)
    }
}

/// Default vertex limit for the exhaustive check with Helly number `k`:
/// 60 for `k = 2`, 28 for `k = 3`, and for larger `k` the largest `n` with
/// `n^(k+3) <= 28^6`.
pub fn default_vertex_limit(k: usize) -> usize {
    match k {
        0..=2 => 60,
        3 => 28,
        _ => {
            let budget = 28f64.powi(6);
            budget.powf(1.0 / (k as f64 + 3.0)).floor() as usize
        }
    }
}

pub fn is_k_helly(g: &Graph, k: usize) -> Result<HellyReport> {
    is_k_alpha_helly(g, k, 0)
}

pub fn is_k_alpha_helly(g: &Graph, k: usize, alpha: u32) -> Result<HellyReport> {
    is_k_alpha_helly_with_limit(g, k, alpha, default_vertex_limit(k))
}

/// Exhaustive (k, alpha)-Helly check over all (k+1)-subsets, rejecting
/// graphs with more than `max_vertices` vertices.
pub fn is_k_alpha_helly_with_limit(
    g: &Graph,
    k: usize,
    alpha: u32,
    max_vertices: usize,
) -> Result<HellyReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("Helly number must be at least 2, got {k}")));
    }
    let n = g.n();
    if n > max_vertices {
        return Err(Error::RecognitionTooLarge {
            n,
            k,
            limit: max_vertices,
        });
    }
    let report = |witness: Option<HellyWitness>| HellyReport {
        k,
        alpha,
        holds: witness.is_none(),
        witness,
    };
    if n < k + 1 {
        return Ok(report(None));
    }

    let matrix = DistanceMatrix::new(g);
    let balls = BallTable::new(&matrix);
    let witness = (0..n).into_par_iter().find_map_first(|first| {
        let mut subset: Vec<usize> = (first..first + k + 1).collect();
        if subset[k] >= n {
            return None;
        }
        let mut scratch = Vec::with_capacity(k + 1);
        let mut common = vec![0u64; balls.words];
        loop {
            if !balls.intersects(&matrix, &subset, k, alpha, &mut scratch, &mut common) {
                let radii = (0..n)
                    .map(|z| kth_distance(&matrix, z, &subset, k, &mut scratch))
                    .collect();
                return Some(HellyWitness {
                    subset: subset.clone(),
                    radii,
                });
            }
            if !next_tail_combination(&mut subset, n) {
                return None;
            }
        }
    });
    Ok(report(witness))
}

fn kth_distance(matrix: &DistanceMatrix, z: usize, subset: &[usize], k: usize, scratch: &mut Vec<u32>) -> u32 {
    scratch.clear();
    scratch.extend(subset.iter().map(|&s| matrix.get(z, s)));
    scratch.sort_unstable();
    scratch[k - 1]
}

/// Advances `subset[1..]` to the next combination of indices above
/// `subset[0]`, keeping the first element fixed.
fn next_tail_combination(subset: &mut [usize], n: usize) -> bool {
    let len = subset.len();
    let mut i = len - 1;
    loop {
        if i == 0 {
            return false;
        }
        if subset[i] < n - (len - i) {
            subset[i] += 1;
            for j in i + 1..len {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
        i -= 1;
    }
}

/// Bit sets for every ball `N^r[z]`, `0 <= r <= e(z)`.
struct BallTable {
    words: usize,
    bits: Vec<u64>,
    start: Vec<usize>,
    ecc: Vec<u32>,
}

impl BallTable {
    fn new(matrix: &DistanceMatrix) -> Self {
        let n = matrix.n();
        let words = n.div_ceil(64);
        let ecc: Vec<u32> = (0..n).map(|z| *matrix.row(z).iter().max().unwrap()).collect();
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for &e in &ecc {
            start.push(start.last().unwrap() + (e as usize + 1) * words);
        }
        let mut bits = vec![0u64; *start.last().unwrap()];
        for z in 0..n {
            for (x, &d) in matrix.row(z).iter().enumerate() {
                for r in d..=ecc[z] {
                    bits[start[z] + r as usize * words + x / 64] |= 1 << (x % 64);
                }
            }
        }
        Self {
            words,
            bits,
            start,
            ecc,
        }
    }

    /// Whether the inflated minimal qualifying balls of `subset` share a vertex.
    fn intersects(
        &self,
        matrix: &DistanceMatrix,
        subset: &[usize],
        k: usize,
        alpha: u32,
        scratch: &mut Vec<u32>,
        common: &mut [u64],
    ) -> bool {
        let n = matrix.n();
        common.fill(!0);
        if !n.is_multiple_of(64) {
            common[self.words - 1] = (1 << (n % 64)) - 1;
        }
        // Centers in the subset first: their balls prune fastest.
        let centers = subset.iter().copied().chain((0..n).filter(|z| !subset.contains(z)));
        for z in centers {
            let r = kth_distance(matrix, z, subset, k, scratch).saturating_add(alpha);
            if r >= self.ecc[z] {
                continue;
            }
            let ball = &self.bits[self.start[z] + r as usize * self.words..][..self.words];
            let mut any = 0;
            for (c, b) in common.iter_mut().zip(ball) {
                *c &= b;
                any |= *c;
            }
            if any == 0 {
                return false;
            }
        }
        true
    }
}

/// Result of [`check_unimodal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnimodalReport {
    pub unimodal: bool,
    /// Lowest-index local minimum that is not a global minimum.
    pub witness: Option<usize>,
}

/// A function is unimodal when every local minimum over the adjacency of
/// `g` is a global minimum.
pub fn check_unimodal<T: Ord>(g: &Graph, f: &[T]) -> Result<UnimodalReport> {
    if f.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "function has {} values, graph has {} vertices",
            f.len(),
            g.n()
        )));
    }
    let min = f.iter().min().expect("graphs are non-empty");
    let witness = (0..g.n())
        .find(|&v| f[v] != *min && g.neighbors(v).iter().all(|&u| f[u] >= f[v]));
    Ok(UnimodalReport {
        unimodal: witness.is_none(),
        witness,
    })
}

/// Maximum cardinality search followed by a validity check; `Some(order)`
/// iff the graph is chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !numbered[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    is_perfect_elimination_order(g, &visit).then_some(visit)
}

/// Checks that every vertex's later neighbors in `order` form a clique.
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) else {
            return true;
        };
        later.iter().all(|&u| u == parent || g.has_edge(parent, u))
    })
}

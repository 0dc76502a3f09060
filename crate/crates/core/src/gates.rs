//! Gates and pseudo-gates of the closed neighborhood `S = N[v]` of a pivot
//! `v`, and the linear-time aggregation of the three comparison sums
//! `q-`, `q=`, `q+` for every neighbor of the pivot.
//!
//! For a vertex `w` at distance `d >= 2` from the pivot, `dist(w, S) = d - 1`
//! and the projection `Pr(w, S)` is the set of pivot neighbors at distance
//! `d - 1` from `w`.
//!
//! * A gate `g(w)` is at distance `<= d - 2` from `w` and adjacent to every
//!   vertex of `Pr(w, S)`. It always sits at distance exactly 2 from the pivot.
//! * A pseudo-gate `pg(w)` is at distance `<= d - 1` from `w` and its closed
//!   neighborhood contains every `x` in `S` with `dist(x, w) <= d`. Since the
//!   pivot itself is such an `x`, a pseudo-gate is always a member of
//!   `Pr(w, S)`.
//!
//! Construction works layer by layer over the BFS from the pivot, carrying
//! two bit sets per far vertex, indexed by position in `N(v)`:
//! `Pr(w, S)` and `Q(w) = {x in N(v) : dist(x, w) <= d}`. Both are unions
//! over neighbors one layer down (plus same-layer projections for `Q`).
//! Gates are inherited from a parent whose projection equals the projection
//! of `w`; pseudo-gates are inherited from a parent when they still cover
//! `Q(w)`. When inheritance fails an exhaustive search runs instead, and its
//! use is counted in [`GateStats`].

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};
use crate::objective::CostFn;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateStats {
    /// Vertices at distance at least 2 from the pivot.
    pub far_vertices: usize,
    /// Gates that could not be inherited from a BFS parent.
    pub gate_fallbacks: usize,
    /// Pseudo-gates (at distance at least 3) not inherited from a BFS parent.
    pub pseudo_gate_fallbacks: usize,
}

/// Distances from a pivot together with a fixed gate and pseudo-gate for
/// every vertex at distance at least 2.
#[derive(Clone, Debug)]
pub struct GateTables {
    pivot: usize,
    dist: Vec<u32>,
    gate: Vec<usize>,
    pseudo_gate: Vec<usize>,
    stats: GateStats,
}

/// Row-major bit matrix: one row of `words` words per item.
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(rows: usize, words: usize) -> Self {
        Self {
            words,
            bits: vec![0; rows * words],
        }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, i: usize, bit: usize) {
        self.bits[i * self.words + bit / 64] |= 1 << (bit % 64);
    }

    /// `row(dst) |= other.row(src)`.
    #[inline]
    fn or_from(&mut self, dst: usize, other: &BitRows, src: usize) {
        let w = self.words;
        let from = &other.bits[src * w..(src + 1) * w];
        for (a, b) in self.bits[dst * w..(dst + 1) * w].iter_mut().zip(from) {
            *a |= *b;
        }
    }

    /// `row(dst) |= row(src)` within the same matrix.
    #[inline]
    fn or_within(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            self.bits[dst * w + k] |= self.bits[src * w + k];
        }
    }

    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(k, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + b)
            })
        })
    }
}

#[inline]
fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl GateTables {
    /// Builds the tables for pivot `v`.
    ///
    /// Fails with [`Error::GateNotFound`] or [`Error::PseudoGateNotFound`]
    /// when some far vertex has no vertex satisfying the corresponding
    /// contract, which certifies that `g` is not Helly.
    pub fn build(g: &Graph, v: usize) -> Result<Self> {
        g.check_vertex(v)?;
        let n = g.n();
        let mut bfs = Bfs::new(n);
        bfs.run(g, v);
        let dist = bfs.distances().to_vec();
        let order = bfs.order();

        let nbrs = g.neighbors(v);
        let deg = nbrs.len();
        let words = deg.div_ceil(64).max(1);
        let mut slot = vec![NONE; n];
        for (i, &x) in nbrs.iter().enumerate() {
            slot[x] = i;
        }

        // Closed neighborhoods of pivot neighbors, restricted to N(v).
        let mut near = BitRows::new(deg, words);
        for (i, &x) in nbrs.iter().enumerate() {
            near.set(i, i);
            for &y in g.neighbors(x) {
                if slot[y] != NONE {
                    near.set(i, slot[y]);
                }
            }
        }

        let far = &order[(1 + deg).min(order.len())..];
        let mut rank = vec![NONE; n];
        for (i, &w) in far.iter().enumerate() {
            rank[w] = i;
        }
        let mut proj = BitRows::new(far.len(), words);
        let mut reach = BitRows::new(far.len(), words);
        let mut gate = vec![NONE; n];
        let mut pseudo_gate = vec![NONE; n];
        let mut stats = GateStats {
            far_vertices: far.len(),
            ..GateStats::default()
        };
        let mut search = DescentSearch::new(n);

        let mut start = 0;
        while start < far.len() {
            let d = dist[far[start]];
            let end = start + far[start..].iter().take_while(|&&w| dist[w] == d).count();
            let layer = &far[start..end];

            for &w in layer {
                let i = rank[w];
                for &p in g.neighbors(w) {
                    if dist[p] + 1 != d {
                        continue;
                    }
                    if d == 2 {
                        proj.set(i, slot[p]);
                    } else {
                        proj.or_within(i, rank[p]);
                    }
                }
            }
            for &w in layer {
                let i = rank[w];
                for &y in g.neighbors(w) {
                    if dist[y] + 1 == d {
                        if d == 2 {
                            reach.or_from(i, &near, slot[y]);
                        } else {
                            reach.or_within(i, rank[y]);
                        }
                    } else if dist[y] == d {
                        reach.or_from(i, &proj, rank[y]);
                    }
                }
            }

            for &w in layer {
                let i = rank[w];
                let parents = || g.neighbors(w).iter().copied().filter(|&p| dist[p] + 1 == d);

                gate[w] = if d == 2 {
                    w
                } else if let Some(p) = parents().find(|&p| proj.row(rank[p]) == proj.row(i)) {
                    gate[p]
                } else {
                    stats.gate_fallbacks += 1;
                    search
                        .find_gate(g, &dist, w, |z| subset(proj.row(i), proj.row(rank[z])))
                        .ok_or(Error::GateNotFound { pivot: v, vertex: w })?
                };

                let covers = |x: usize| subset(reach.row(i), near.row(slot[x]));
                let inherited = if d >= 3 {
                    parents().map(|p| pseudo_gate[p]).find(|&x| covers(x))
                } else {
                    None
                };
                pseudo_gate[w] = match inherited {
                    Some(x) => x,
                    None => {
                        if d >= 3 {
                            stats.pseudo_gate_fallbacks += 1;
                        }
                        proj.ones(i)
                            .map(|s| nbrs[s])
                            .find(|&x| covers(x))
                            .ok_or(Error::PseudoGateNotFound { pivot: v, vertex: w })?
                    }
                };
            }
            start = end;
        }

        Ok(Self {
            pivot: v,
            dist,
            gate,
            pseudo_gate,
            stats,
        })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Distances from the pivot.
    pub fn dist(&self) -> &[u32] {
        &self.dist
    }

    /// `g(w)`; `None` for vertices within distance 1 of the pivot.
    pub fn gate(&self, w: usize) -> Option<usize> {
        Some(self.gate[w]).filter(|&z| z != NONE)
    }

    /// `pg(w)`; `None` for vertices within distance 1 of the pivot.
    pub fn pseudo_gate(&self, w: usize) -> Option<usize> {
        Some(self.pseudo_gate[w]).filter(|&z| z != NONE)
    }

    pub fn stats(&self) -> GateStats {
        self.stats
    }

    /// Replaces one gate entry. Used to inject faults when testing verifiers.
    pub fn with_gate(mut self, w: usize, z: usize) -> Self {
        self.gate[w] = z;
        self
    }

    /// Replaces one pseudo-gate entry. Used to inject faults when testing verifiers.
    pub fn with_pseudo_gate(mut self, w: usize, z: usize) -> Self {
        self.pseudo_gate[w] = z;
        self
    }
}

/// Walks from `w` down the BFS layers of the pivot; the distance-2 vertices
/// reached are exactly those at distance `d - 2` from `w`.
struct DescentSearch {
    stamp: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

impl DescentSearch {
    fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            epoch: 0,
            stack: Vec::new(),
        }
    }

    fn find_gate(
        &mut self,
        g: &Graph,
        dist: &[u32],
        w: usize,
        covers: impl Fn(usize) -> bool,
    ) -> Option<usize> {
        self.epoch += 1;
        self.stack.clear();
        self.stack.push(w);
        self.stamp[w] = self.epoch;
        let mut best: Option<usize> = None;
        while let Some(x) = self.stack.pop() {
            if dist[x] == 2 {
                if covers(x) && best.is_none_or(|b| x < b) {
                    best = Some(x);
                }
                continue;
            }
            for &y in g.neighbors(x) {
                if dist[y] + 1 == dist[x] && self.stamp[y] != self.epoch {
                    self.stamp[y] = self.epoch;
                    self.stack.push(y);
                }
            }
        }
        best
    }
}

/// The three comparison sums for one neighbor `u` of the pivot `v`, over a
/// weighted set `A`:
/// `minus = sum c(w)·[dist(u,w) < dist(v,w)]`, `eq` for `=`, `plus` for `>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QEntry {
    pub neighbor: usize,
    pub minus: u128,
    pub eq: u128,
    pub plus: u128,
}

/// One [`QEntry`] per pivot neighbor, in ascending neighbor order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QValues {
    pub pivot: usize,
    pub entries: Vec<QEntry>,
}

impl QValues {
    pub fn get(&self, u: usize) -> Option<&QEntry> {
        self.entries
            .binary_search_by_key(&u, |e| e.neighbor)
            .ok()
            .map(|i| &self.entries[i])
    }
}

/// Aggregates `q-`, `q=`, `q+` for every neighbor of the tables' pivot in
/// `O(n + m)` time, using the gates to detect strict improvements and the
/// pseudo-gates to detect non-increases.
pub fn q_values(g: &Graph, tables: &GateTables, a: &CandidateSet, c: &CostFn) -> QValues {
    let n = g.n();
    let dist = &tables.dist;
    let mut via_gate = vec![0u128; n];
    let mut via_pseudo_gate = vec![0u128; n];
    let mut total = 0u128;
    for w in a.iter() {
        let cw = c.get(w) as u128;
        total += cw;
        if dist[w] >= 2 {
            via_gate[tables.gate[w]] += cw;
            via_pseudo_gate[tables.pseudo_gate[w]] += cw;
        }
    }

    let entries = g
        .neighbors(tables.pivot)
        .iter()
        .map(|&u| {
            let mut minus = if a.contains(u) { c.get(u) as u128 } else { 0 };
            let mut not_worse = 0u128;
            let closed = std::iter::once(u).chain(g.neighbors(u).iter().copied());
            for z in closed {
                match dist[z] {
                    1 => {
                        if a.contains(z) {
                            not_worse += c.get(z) as u128;
                        }
                        not_worse += via_pseudo_gate[z];
                    }
                    2 => minus += via_gate[z],
                    _ => {}
                }
            }
            QEntry {
                neighbor: u,
                minus,
                eq: not_worse - minus,
                plus: total - not_worse,
            }
        })
        .collect();
    QValues {
        pivot: tables.pivot,
        entries,
    }
}

/// Direct evaluation of the same sums with one BFS per pivot neighbor.
/// Valid on any connected graph.
pub fn q_values_baseline(g: &Graph, v: usize, a: &CandidateSet, c: &CostFn) -> QValues {
    let mut bfs = Bfs::new(g.n());
    let dist_v = bfs.run(g, v).to_vec();
    let entries = g
        .neighbors(v)
        .iter()
        .map(|&u| {
            let dist_u = bfs.run(g, u);
            let mut e = QEntry {
                neighbor: u,
                minus: 0,
                eq: 0,
                plus: 0,
            };
            for w in a.iter() {
                let cw = c.get(w) as u128;
                match dist_u[w].cmp(&dist_v[w]) {
                    std::cmp::Ordering::Less => e.minus += cw,
                    std::cmp::Ordering::Equal => e.eq += cw,
                    std::cmp::Ordering::Greater => e.plus += cw,
                }
            }
            e
        })
        .collect();
    QValues { pivot: v, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs;
    use crate::graph::fixtures::*;

    #[test]
    fn path_p5_tables() {
        let g = path(5);
        let t = GateTables::build(&g, 0).unwrap();
        assert_eq!(t.gate(0), None);
        assert_eq!(t.gate(1), None);
        assert_eq!(t.gate(2), Some(2));
        assert_eq!(t.gate(3), Some(2));
        assert_eq!(t.gate(4), Some(2));
        for w in 2..5 {
            assert_eq!(t.pseudo_gate(w), Some(1));
        }
        assert_eq!(t.stats().gate_fallbacks, 0);
    }

    #[test]
    fn star_leaf_pivot_gates_are_identity() {
        let g = star(3);
        let t = GateTables::build(&g, 1).unwrap();
        for w in [2, 3] {
            assert_eq!(t.gate(w), Some(w));
            assert_eq!(t.pseudo_gate(w), Some(0));
        }
    }

    #[test]
    fn long_cycle_has_no_gate() {
        // In C6 the antipode of 0 projects onto both neighbors of 0, and no
        // vertex at distance 1 from it is adjacent to both.
        let g = cycle(6);
        assert_eq!(
            GateTables::build(&g, 0).unwrap_err(),
            Error::GateNotFound { pivot: 0, vertex: 3 }
        );
    }

    #[test]
    fn p4_q_values() {
        let g = path(4);
        let all = CandidateSet::full(4);
        let unit = CostFn::unit(4);
        let t = GateTables::build(&g, 1).unwrap();
        let q = q_values(&g, &t, &all, &unit);
        let e0 = q.get(0).unwrap();
        assert_eq!((e0.minus, e0.eq, e0.plus), (1, 0, 3));
        let e2 = q.get(2).unwrap();
        assert_eq!((e2.minus, e2.eq, e2.plus), (2, 0, 2));
        assert_eq!(q, q_values_baseline(&g, 1, &all, &unit));
    }

    #[test]
    fn empty_set_gives_zeros() {
        let g = path(6);
        let t = GateTables::build(&g, 2).unwrap();
        let q = q_values(&g, &t, &CandidateSet::empty(6), &CostFn::unit(6));
        assert!(q.entries.iter().all(|e| e.minus == 0 && e.eq == 0 && e.plus == 0));
    }

    #[test]
    fn pivot_alone_counts_as_worse() {
        let g = star(4);
        let c = CostFn::new(vec![7, 1, 1, 1, 1], 5).unwrap();
        let a = CandidateSet::from_vertices(5, [0]);
        let q = q_values_baseline(&g, 0, &a, &c);
        assert!(q.entries.iter().all(|e| (e.minus, e.eq, e.plus) == (0, 0, 7)));
        let t = GateTables::build(&g, 0).unwrap();
        assert_eq!(q_values(&g, &t, &a, &c), q);
    }

    #[test]
    fn baseline_on_c4() {
        // C4 is not Helly; the baseline still evaluates the sums directly.
        let g = cycle(4);
        let q = q_values_baseline(&g, 0, &CandidateSet::full(4), &CostFn::unit(4));
        // u = 1 is closer to 1 and 2, farther from 0 and 3.
        assert_eq!(q.get(1).map(|e| (e.minus, e.eq, e.plus)), Some((2, 0, 2)));
        assert_eq!(q.get(3).map(|e| (e.minus, e.eq, e.plus)), Some((2, 0, 2)));
    }

    #[test]
    fn gate_and_pseudo_gate_soundness_on_king_grid() {
        let side = 6usize;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    edges.push((v, v + 1));
                }
                if r + 1 < side {
                    edges.push((v, v + side));
                    if c + 1 < side {
                        edges.push((v, v + side + 1));
                    }
                    if c > 0 {
                        edges.push((v, v + side - 1));
                    }
                }
            }
        }
        let g = Graph::from_edge_list(side * side, &edges).unwrap();
        let rows: Vec<_> = (0..g.n()).map(|s| bfs(&g, s).dist).collect();
        for v in 0..g.n() {
            let t = GateTables::build(&g, v).unwrap();
            for &u in g.neighbors(v) {
                for w in 0..g.n() {
                    let dvw = rows[v][w];
                    if dvw < 2 {
                        continue;
                    }
                    let gw = t.gate(w).unwrap();
                    let pg = t.pseudo_gate(w).unwrap();
                    assert_eq!(rows[u][w] < dvw, g.has_edge(u, gw));
                    if !g.has_edge(u, gw) {
                        assert_eq!(g.in_closed_neighborhood(u, pg), rows[u][w] == dvw);
                    }
                }
            }
        }
    }
}

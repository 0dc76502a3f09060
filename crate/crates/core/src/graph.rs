//! Immutable simple connected undirected graphs in compressed adjacency form,
//! plus breadth-first distance kernels.

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};

/// Marker for vertices not yet reached by a BFS.
pub const UNREACHED: u32 = u32::MAX;

/// Simple, connected, undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending and stored back to back; the
/// neighbors of `v` live in `targets[offsets[v]..offsets[v + 1]]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds the canonical graph from an edge list.
    ///
    /// Duplicate edges (in either orientation) are collapsed. Self-loops,
    /// out-of-range endpoints and disconnected inputs are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }

        // Sort and deduplicate each list, then compact.
        let mut compact_offsets = Vec::with_capacity(n + 1);
        compact_offsets.push(0);
        let mut write = 0;
        for v in 0..n {
            let list = &mut targets[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let mut last = None;
            for i in offsets[v]..offsets[v + 1] {
                let x = targets[i];
                if last != Some(x) {
                    targets[write] = x;
                    write += 1;
                    last = Some(x);
                }
            }
            compact_offsets.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        let g = Self {
            offsets: compact_offsets,
            targets,
        };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<()> {
        let dist = Bfs::new(self.n()).run(self, 0).to_vec();
        match dist.iter().position(|&d| d == UNREACHED) {
            Some(v) => Err(Error::NotConnected(v)),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// `v` lies in the closed neighborhood of `u`.
    #[inline]
    pub fn in_closed_neighborhood(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

/// Hop distances from a single source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn max(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// Reusable BFS scratch space: one distance array and one queue.
///
/// Independent `Bfs` values can run concurrently on a shared graph.
#[derive(Clone, Debug)]
pub struct Bfs {
    dist: Vec<u32>,
    queue: Vec<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Full BFS from `source`. The returned slice is valid until the next run.
    pub fn run(&mut self, g: &Graph, source: usize) -> &[u32] {
        self.run_bounded(g, source, UNREACHED)
    }

    /// BFS that stops expanding at depth `limit`; vertices farther away keep
    /// [`UNREACHED`].
    pub fn run_bounded(&mut self, g: &Graph, source: usize, limit: u32) -> &[u32] {
        if self.dist.len() != g.n() {
            self.dist = vec![UNREACHED; g.n()];
        } else {
            self.dist.fill(UNREACHED);
        }
        self.queue.clear();
        self.dist[source] = 0;
        self.queue.push(source);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            let dx = self.dist[x];
            if dx >= limit {
                continue;
            }
            for &y in g.neighbors(x) {
                if self.dist[y] == UNREACHED {
                    self.dist[y] = dx + 1;
                    self.queue.push(y);
                }
            }
        }
        &self.dist
    }

    /// Vertices of the last run in visiting (non-decreasing distance) order.
    pub fn order(&self) -> &[usize] {
        &self.queue
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }
}

/// Exact hop distances from `source`.
pub fn bfs(g: &Graph, source: usize) -> DistanceRow {
    let dist = Bfs::new(g.n()).run(g, source).to_vec();
    DistanceRow { source, dist }
}

/// The ball `{u : dist(u, v) <= r}`.
pub fn ball(g: &Graph, v: usize, r: u32) -> CandidateSet {
    let mut bfs = Bfs::new(g.n());
    bfs.run_bounded(g, v, r);
    CandidateSet::from_vertices(g.n(), bfs.order().iter().copied())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    /// Star with hub 0.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }
}

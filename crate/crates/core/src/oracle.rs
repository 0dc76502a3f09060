//! Brute-force ground truth built on all-pairs BFS.
//!
//! Nothing here assumes the Helly property, so the same routines also
//! describe non-Helly inputs in negative tests.

use rayon::prelude::*;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::gates::GateTables;
use crate::graph::{Bfs, Graph};
use crate::objective::{eccentricity_from_row, total_distance_from_row, CostFn};

/// Largest graph [`apsp_summary`] accepts unless a larger limit is passed.
pub const DEFAULT_MAX_VERTICES: usize = 5000;

/// Row-major `n x n` hop-distance matrix.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map_init(|| Bfs::new(n), |bfs, s| bfs.run(g, s).to_vec())
            .collect();
        Self {
            n,
            dist: rows.concat(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, s: usize) -> &[u32] {
        &self.dist[s * self.n..(s + 1) * self.n]
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }
}

/// Exact per-vertex objectives and the derived extremal sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApspSummary {
    /// Cost-weighted eccentricity of every vertex.
    pub ecc: Vec<u128>,
    /// Cost-weighted total distance of every vertex.
    pub total: Vec<u128>,
    /// Unweighted eccentricity of every vertex.
    pub unit_ecc: Vec<u32>,
    /// Minimum cost-weighted eccentricity.
    pub radius: u128,
    /// Maximum unweighted eccentricity.
    pub diameter: u32,
    /// All minimizers of `ecc`, ascending.
    pub center: Vec<usize>,
    /// All minimizers of `total`, ascending.
    pub median: Vec<usize>,
}

impl ApspSummary {
    pub fn median_value(&self) -> u128 {
        self.total[self.median[0]]
    }

    /// Minimum unweighted eccentricity.
    pub fn unit_radius(&self) -> u32 {
        self.unit_ecc.iter().copied().min().unwrap_or(0)
    }
}

pub fn apsp_summary(g: &Graph, c: &CostFn) -> Result<ApspSummary> {
    apsp_summary_with_limit(g, c, DEFAULT_MAX_VERTICES)
}

/// [`apsp_summary`] with an explicit vertex-count limit.
pub fn apsp_summary_with_limit(g: &Graph, c: &CostFn, max_vertices: usize) -> Result<ApspSummary> {
    let n = g.n();
    if n > max_vertices {
        return Err(Error::OracleTooLarge {
            n,
            limit: max_vertices,
        });
    }
    c.check_len(g)?;
    let rows: Vec<(u128, u128, u32)> = (0..n)
        .into_par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, s| {
                let dist = bfs.run(g, s);
                let unit = dist.iter().copied().max().unwrap_or(0);
                Ok((eccentricity_from_row(c, dist), total_distance_from_row(c, dist)?, unit))
            },
        )
        .collect::<Result<_>>()?;

    let ecc: Vec<u128> = rows.iter().map(|r| r.0).collect();
    let total: Vec<u128> = rows.iter().map(|r| r.1).collect();
    let unit_ecc: Vec<u32> = rows.iter().map(|r| r.2).collect();
    let radius = *ecc.iter().min().unwrap();
    let best_total = *total.iter().min().unwrap();
    Ok(ApspSummary {
        center: (0..n).filter(|&v| ecc[v] == radius).collect(),
        median: (0..n).filter(|&v| total[v] == best_total).collect(),
        diameter: *unit_ecc.iter().max().unwrap(),
        radius,
        ecc,
        total,
        unit_ecc,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GateClause {
    #[error("stored pivot distance {stored} differs from BFS distance {actual}")]
    PivotDistance { stored: u32, actual: u32 },
    #[error("missing gate or pseudo-gate entry")]
    MissingEntry,
    #[error("entry present for a vertex within distance 1 of the pivot")]
    UnexpectedEntry,
    #[error("gate {gate} is at distance {dist} from the vertex, above the allowed {limit}")]
    GateTooFar { gate: usize, dist: u32, limit: u32 },
    #[error("gate {gate} is not adjacent to projection vertex {x}")]
    GateMissesProjection { gate: usize, x: usize },
    #[error("gate {gate} is at distance {dist} from the pivot instead of 2")]
    GateNotAtDistanceTwo { gate: usize, dist: u32 },
    #[error("pseudo-gate {pseudo_gate} is at distance {dist} from the vertex, above the allowed {limit}")]
    PseudoGateTooFar { pseudo_gate: usize, dist: u32, limit: u32 },
    #[error("closed neighborhood of pseudo-gate {pseudo_gate} misses {x}")]
    PseudoGateMissesBall { pseudo_gate: usize, x: usize },
    #[error("pseudo-gate {pseudo_gate} is not in the closed neighborhood of any gate")]
    PseudoGateAwayFromGates { pseudo_gate: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("gate tables of pivot {pivot} violate their contract at vertex {vertex}: {clause}")]
pub struct GateViolation {
    pub pivot: usize,
    pub vertex: usize,
    pub clause: GateClause,
}

/// Checks every gate and pseudo-gate contract clause literally, with one
/// BFS per vertex at distance at least 2 from the pivot.
pub fn verify_gate_tables(g: &Graph, tables: &GateTables) -> Result<(), GateViolation> {
    let mut bfs = Bfs::new(g.n());
    verify_with(g, tables, |w| bfs.run(g, w).to_vec())
}

/// [`verify_gate_tables`] reading distances from a precomputed matrix.
pub fn verify_gate_tables_with(
    g: &Graph,
    tables: &GateTables,
    matrix: &DistanceMatrix,
) -> Result<(), GateViolation> {
    verify_with(g, tables, |w| matrix.row(w).to_vec())
}

fn verify_with(
    g: &Graph,
    tables: &GateTables,
    mut row_of: impl FnMut(usize) -> Vec<u32>,
) -> Result<(), GateViolation> {
    let v = tables.pivot();
    let fail = |vertex, clause| GateViolation {
        pivot: v,
        vertex,
        clause,
    };
    let dist_v = row_of(v);
    for (w, (&stored, &actual)) in tables.dist().iter().zip(&dist_v).enumerate() {
        if stored != actual {
            return Err(fail(w, GateClause::PivotDistance { stored, actual }));
        }
    }
    let closed: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).collect();

    for w in 0..g.n() {
        let d = dist_v[w];
        let (gate, pseudo_gate) = (tables.gate(w), tables.pseudo_gate(w));
        if d < 2 {
            if gate.is_some() || pseudo_gate.is_some() {
                return Err(fail(w, GateClause::UnexpectedEntry));
            }
            continue;
        }
        let (Some(z), Some(pg)) = (gate, pseudo_gate) else {
            return Err(fail(w, GateClause::MissingEntry));
        };
        let dw = row_of(w);
        let projection: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| dw[x] == d - 1).collect();

        if dw[z] > d - 2 {
            return Err(fail(w, GateClause::GateTooFar { gate: z, dist: dw[z], limit: d - 2 }));
        }
        if let Some(&x) = projection.iter().find(|&&x| !g.has_edge(z, x)) {
            return Err(fail(w, GateClause::GateMissesProjection { gate: z, x }));
        }
        if dist_v[z] != 2 {
            return Err(fail(w, GateClause::GateNotAtDistanceTwo { gate: z, dist: dist_v[z] }));
        }

        if dw[pg] > d - 1 {
            return Err(fail(
                w,
                GateClause::PseudoGateTooFar {
                    pseudo_gate: pg,
                    dist: dw[pg],
                    limit: d - 1,
                },
            ));
        }
        if let Some(&x) = closed
            .iter()
            .find(|&&x| dw[x] <= d && !g.in_closed_neighborhood(pg, x))
        {
            return Err(fail(w, GateClause::PseudoGateMissesBall { pseudo_gate: pg, x }));
        }
        let is_gate = |y: usize| dw[y] <= d - 2 && projection.iter().all(|&x| g.has_edge(y, x));
        let near_gate = is_gate(pg) || g.neighbors(pg).iter().any(|&y| is_gate(y));
        if !near_gate {
            return Err(fail(w, GateClause::PseudoGateAwayFromGates { pseudo_gate: pg }));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn p4_summary() {
        let s = apsp_summary(&path(4), &CostFn::unit(4)).unwrap();
        assert_eq!((s.radius, s.diameter), (2, 3));
        assert_eq!(s.center, vec![1, 2]);
        assert_eq!(s.median, vec![1, 2]);
        assert_eq!(s.median_value(), 4);
    }

    #[test]
    fn star_summary() {
        let s = apsp_summary(&star(3), &CostFn::unit(4)).unwrap();
        assert_eq!((s.radius, s.diameter), (1, 2));
        assert_eq!(s.center, vec![0]);
        assert_eq!(s.median, vec![0]);
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(
            apsp_summary_with_limit(&path(10), &CostFn::unit(10), 9),
            Err(Error::OracleTooLarge { n: 10, limit: 9 })
        );
    }

    #[test]
    fn p5_tables_verify_and_corruption_is_caught() {
        let g = path(5);
        let t = GateTables::build(&g, 0).unwrap();
        assert_eq!(verify_gate_tables(&g, &t), Ok(()));
        // Vertex 4 is at distance 3 from the pivot; 4 itself is no gate of it.
        let bad = t.clone().with_gate(4, 3);
        let err = verify_gate_tables(&g, &bad).unwrap_err();
        assert_eq!(err.vertex, 4);
        let bad = t.with_pseudo_gate(3, 2);
        assert_eq!(verify_gate_tables(&g, &bad).unwrap_err().vertex, 3);
    }

    #[test]
    fn corrupted_gate_at_distance_three() {
        // Path 0..6, pivot 0: gate of 5 must be 2; vertex 3 sits at distance 3.
        let g = path(7);
        let t = GateTables::build(&g, 0).unwrap();
        let matrix = DistanceMatrix::new(&g);
        assert_eq!(verify_gate_tables_with(&g, &t, &matrix), Ok(()));
        let err = verify_gate_tables_with(&g, &t.with_gate(5, 3), &matrix).unwrap_err();
        assert_eq!(err.vertex, 5);
        assert_eq!(
            err.clause,
            GateClause::GateMissesProjection { gate: 3, x: 1 }
        );
    }
}

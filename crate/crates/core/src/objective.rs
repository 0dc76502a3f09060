//! Vertex costs and the two cost-weighted objectives: eccentricity
//! `max_u c(u)·dist(u, v)` and total distance `sum_u c(u)·dist(u, v)`.
//!
//! Costs are non-negative integers so that every comparison made by the
//! local searches is exact. Objective values are `u128`.

use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFn {
    costs: Vec<u64>,
}

impl CostFn {
    pub fn new(costs: Vec<u64>, n: usize) -> Result<Self> {
        if costs.len() != n {
            return Err(Error::CostLength {
                expected: n,
                got: costs.len(),
            });
        }
        Ok(Self { costs })
    }

    pub fn unit(n: usize) -> Self {
        Self { costs: vec![1; n] }
    }

    #[inline]
    pub fn get(&self, v: usize) -> u64 {
        self.costs[v]
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.costs
    }

    pub fn is_zero(&self) -> bool {
        self.costs.iter().all(|&c| c == 0)
    }

    pub(crate) fn check_len(&self, g: &Graph) -> Result<()> {
        if self.costs.len() == g.n() {
            Ok(())
        } else {
            Err(Error::CostLength {
                expected: g.n(),
                got: self.costs.len(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Eccentricity,
    TotalDistance,
}

impl Objective {
    /// Objective value of the BFS source of `dist`.
    pub fn evaluate(self, c: &CostFn, dist: &[u32]) -> Result<u128> {
        match self {
            Objective::Eccentricity => Ok(eccentricity_from_row(c, dist)),
            Objective::TotalDistance => total_distance_from_row(c, dist),
        }
    }
}

pub fn eccentricity_from_row(c: &CostFn, dist: &[u32]) -> u128 {
    c.costs
        .iter()
        .zip(dist)
        .map(|(&cost, &d)| cost as u128 * d as u128)
        .max()
        .unwrap_or(0)
}

pub fn total_distance_from_row(c: &CostFn, dist: &[u32]) -> Result<u128> {
    c.costs.iter().zip(dist).try_fold(0u128, |acc, (&cost, &d)| {
        acc.checked_add(cost as u128 * d as u128)
            .ok_or(Error::Overflow)
    })
}

/// Cost-weighted eccentricity of `v` (one BFS).
pub fn eccentricity(g: &Graph, c: &CostFn, v: usize) -> Result<u128> {
    g.check_vertex(v)?;
    c.check_len(g)?;
    Ok(eccentricity_from_row(c, Bfs::new(g.n()).run(g, v)))
}

/// Cost-weighted total distance of `v` (one BFS).
pub fn total_distance(g: &Graph, c: &CostFn, v: usize) -> Result<u128> {
    g.check_vertex(v)?;
    c.check_len(g)?;
    total_distance_from_row(c, Bfs::new(g.n()).run(g, v))
}

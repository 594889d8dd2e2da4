//! Brute-force exact solvers.
//!
//! These enumerate candidate deletion sets by ascending cardinality, in
//! lexicographic combination order, and test the target predicate directly.
//! They share nothing with the search code beyond the graph type and the
//! P4/C4 scans, and are the ground truth for every optimality test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::target::{DeletionMode, DeletionTarget, Deletions};

pub const MAX_ORACLE_N_ENV: &str = "P4TRACT_MAX_ORACLE_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 14,
            max_edges: 40,
        }
    }
}

impl OracleLimits {
    /// Defaults, with the vertex bound overridden by `P4TRACT_MAX_ORACLE_N`.
    pub fn from_env() -> Self {
        let mut l = OracleLimits::default();
        if let Some(n) = std::env::var(MAX_ORACLE_N_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            l.max_vertices = n;
        }
        l
    }

    fn check(&self, g: &Graph, mode: DeletionMode) -> Result<()> {
        if g.n() > self.max_vertices {
            return Err(Error::OracleTooLarge {
                what: "vertices",
                value: g.n(),
                limit: self.max_vertices,
            });
        }
        if mode == DeletionMode::Edge && g.m() > self.max_edges {
            return Err(Error::OracleTooLarge {
                what: "edges",
                value: g.m(),
                limit: self.max_edges,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub minimum: usize,
    pub witness: Deletions,
    /// Number of candidate sets tested.
    pub explored: u64,
}

/// Calls `f` with every `k`-combination of `0..n` in lexicographic order
/// until it returns `true`. Returns whether it stopped early.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum edge deletion avoiding `forbidden` that makes `g` satisfy
/// `target`. Fails with `None` inside `Ok` only if no such set exists.
pub fn oracle_min_edge_deletion(
    g: &Graph,
    target: DeletionTarget,
    forbidden: &[Edge],
    limits: &OracleLimits,
) -> Result<Option<OracleResult>> {
    limits.check(g, DeletionMode::Edge)?;
    let candidates: Vec<Edge> = g.edges().into_iter().filter(|e| !forbidden.contains(e)).collect();
    let mut explored = 0u64;
    let mut work = g.clone();
    for k in 0..=candidates.len() {
        let mut found = None;
        for_each_combination(candidates.len(), k, |idx| {
            explored += 1;
            for &i in idx {
                work.remove_edge(candidates[i].u, candidates[i].v);
            }
            let ok = target.is_satisfied(&work);
            for &i in idx {
                work.add_edge(candidates[i].u, candidates[i].v);
            }
            if ok {
                found = Some(idx.iter().map(|&i| candidates[i]).collect::<Vec<_>>());
            }
            ok
        });
        if let Some(es) = found {
            return Ok(Some(OracleResult {
                minimum: k,
                witness: Deletions::Edges(es),
                explored,
            }));
        }
    }
    Ok(None)
}

/// Minimum vertex deletion avoiding `forbidden` that makes `g` satisfy
/// `target`.
pub fn oracle_min_vertex_deletion(
    g: &Graph,
    target: DeletionTarget,
    forbidden: &[usize],
    limits: &OracleLimits,
) -> Result<Option<OracleResult>> {
    limits.check(g, DeletionMode::Vertex)?;
    let candidates: Vec<usize> = (0..g.n()).filter(|v| !forbidden.contains(v)).collect();
    let mut explored = 0u64;
    for k in 0..=candidates.len() {
        let mut found = None;
        for_each_combination(candidates.len(), k, |idx| {
            explored += 1;
            let del: Vec<usize> = idx.iter().map(|&i| candidates[i]).collect();
            let (h, _) = g.delete_vertices(&del).expect("candidates are in range");
            let ok = target.is_satisfied(&h);
            if ok {
                found = Some(del);
            }
            ok
        });
        if let Some(vs) = found {
            return Ok(Some(OracleResult {
                minimum: k,
                witness: Deletions::Vertices(vs),
                explored,
            }));
        }
    }
    Ok(None)
}

/// Unconstrained minimum for the given mode. Always exists: deleting every
/// edge, or every vertex, satisfies both targets.
pub fn oracle_minimum(
    g: &Graph,
    mode: DeletionMode,
    target: DeletionTarget,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    let r = match mode {
        DeletionMode::Edge => oracle_min_edge_deletion(g, target, &[], limits)?,
        DeletionMode::Vertex => oracle_min_vertex_deletion(g, target, &[], limits)?,
    };
    Ok(r.expect("full deletion always satisfies the target"))
}

/// Every inclusion-minimal deletion set establishing `target` on `pattern`,
/// ordered by size and then lexicographically.
pub fn enumerate_minimal_local_solutions(
    pattern: &Graph,
    mode: DeletionMode,
    target: DeletionTarget,
) -> Result<Vec<Deletions>> {
    if pattern.n() > 5 {
        return Err(Error::OracleTooLarge {
            what: "pattern vertices",
            value: pattern.n(),
            limit: 5,
        });
    }
    let edges = pattern.edges();
    let universe = match mode {
        DeletionMode::Edge => edges.len(),
        DeletionMode::Vertex => pattern.n(),
    };
    let mut family: Vec<Deletions> = Vec::new();
    for k in 0..=universe {
        for_each_combination(universe, k, |idx| {
            let cand = match mode {
                DeletionMode::Edge => Deletions::Edges(idx.iter().map(|&i| edges[i]).collect()),
                DeletionMode::Vertex => Deletions::Vertices(idx.to_vec()),
            };
            if family.iter().any(|r| r.is_subset_of(&cand)) {
                return false;
            }
            let rest = cand.apply(pattern).expect("pattern members");
            if target.is_satisfied(&rest) {
                family.push(cand);
            }
            false
        });
    }
    Ok(family)
}

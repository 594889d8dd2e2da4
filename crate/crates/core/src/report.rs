//! JSON run reports.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::search::{minimize, solve, verify_solution, Problem, SearchOptions, SearchStats};
use crate::target::Deletions;

pub const SCHEMA_VERSION: u32 = 1;

/// Requested budget: a number, or `"min"` for minimization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Budget {
    Fixed(i64),
    Min(String),
}

impl Budget {
    pub fn min() -> Self {
        Budget::Min("min".to_string())
    }
}

/// Leaves of the run at the reported `k` against `ceil(c^k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub constant: f64,
    pub k: usize,
    pub bound: u64,
    pub leaves: u64,
    pub ratio: f64,
    pub within: bool,
}

impl BoundCheck {
    pub fn new(problem: Problem, k: usize, leaves: u64) -> Self {
        let bound = problem.leaf_bound(k);
        BoundCheck {
            constant: problem.branching_number(),
            k,
            bound,
            leaves,
            ratio: leaves as f64 / bound as f64,
            within: leaves <= bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub problem: Problem,
    pub input_digest: String,
    pub n: usize,
    pub m: usize,
    pub k: Budget,
    /// Smallest feasible budget, for minimization runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimum: Option<usize>,
    pub feasible: bool,
    pub deletions: Deletions,
    pub stats: SearchStats,
    /// Summed over all budgets tried, for minimization runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_stats: Option<SearchStats>,
    pub bound_check: BoundCheck,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Solves and builds a report. Panics if a feasible answer fails to
/// re-validate against `g`, since that is a solver bug.
pub fn run(
    g: &Graph,
    input: &[u8],
    problem: Problem,
    k: Budget,
    opts: SearchOptions,
    seed: Option<u64>,
) -> Result<RunReport> {
    let (solution, stats, total, minimum, k_used) = match &k {
        Budget::Fixed(k) => {
            let (sol, st) = solve(g, *k, problem, opts)?;
            (sol, st, None, None, (*k).max(0) as usize)
        }
        Budget::Min(_) => {
            let m = minimize(g, problem, opts)?;
            (m.solution, m.stats, Some(m.total), Some(m.k), m.k)
        }
    };
    assert!(
        verify_solution(g, problem, &solution),
        "solver returned an invalid deletion set"
    );
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        problem,
        input_digest: crate::io::input_digest(input),
        n: g.n(),
        m: g.m(),
        k,
        minimum,
        feasible: solution.feasible,
        deletions: solution.deletions,
        bound_check: BoundCheck::new(problem, k_used, stats.leaves),
        stats,
        total_stats: total,
        threads: opts.threads,
        seed,
        elapsed_ms: None,
    })
}

//! Bounded search tree solvers.
//!
//! Each solver branches over the complete family of minimal local deletions
//! of an obstruction until the graph is P4-sparse, then hands the rest to an
//! exact routine from [`crate::spider_solvers`]. Rules larger than the
//! remaining budget are skipped, so the deletions along any root-to-leaf path
//! never exceed `k`.

pub(crate) mod engine;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::obstructions::{find_c4, find_p4, find_p4_sparse_obstruction, synthesize_rules, ObstructionKind};
use crate::spider_solvers::{spider_edge_deletion, spider_vertex_deletion, tp_edge_final, tp_vertex_final};
use crate::target::{DeletionMode, DeletionTarget, Deletions};
use engine::{drive, Expansion, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    CographEdge,
    TpEdge,
    CographVertex,
    CographVertexHs,
    TpVertex,
    CographEdgeNaive,
    TpEdgeNaive,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::CographEdge,
        Problem::TpEdge,
        Problem::CographVertex,
        Problem::CographVertexHs,
        Problem::TpVertex,
        Problem::CographEdgeNaive,
        Problem::TpEdgeNaive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::CographEdge => "cograph-edge",
            Problem::TpEdge => "tp-edge",
            Problem::CographVertex => "cograph-vertex",
            Problem::CographVertexHs => "cograph-vertex-hs",
            Problem::TpVertex => "tp-vertex",
            Problem::CographEdgeNaive => "cograph-edge-naive",
            Problem::TpEdgeNaive => "tp-edge-naive",
        }
    }

    pub fn mode(self) -> DeletionMode {
        match self {
            Problem::CographVertex | Problem::CographVertexHs | Problem::TpVertex => DeletionMode::Vertex,
            _ => DeletionMode::Edge,
        }
    }

    pub fn target(self) -> DeletionTarget {
        match self {
            Problem::TpEdge | Problem::TpVertex | Problem::TpEdgeNaive => DeletionTarget::P4AndC4Free,
            _ => DeletionTarget::P4Free,
        }
    }

    /// Branching number `c` of the leaf bound `c^k`.
    pub fn branching_number(self) -> f64 {
        match self {
            Problem::CographEdge => 2.562,
            Problem::TpEdge => 2.450,
            Problem::CographVertex | Problem::TpVertex => 3.303,
            Problem::CographVertexHs => 3.115,
            Problem::CographEdgeNaive | Problem::TpEdgeNaive => 3.0,
        }
    }

    /// `ceil(c^k)`.
    pub fn leaf_bound(self, k: usize) -> u64 {
        self.branching_number().powi(k as i32).ceil() as u64
    }

    /// The naive baseline solving the same problem, if any.
    pub fn baseline(self) -> Option<Problem> {
        match self {
            Problem::CographEdge => Some(Problem::CographEdgeNaive),
            Problem::TpEdge => Some(Problem::TpEdgeNaive),
            _ => None,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub feasible: bool,
    /// Sorted, in ids of the input graph.
    pub deletions: Deletions,
    pub budget_used: usize,
}

impl Solution {
    fn from_search(mode: DeletionMode, found: Option<Deletions>) -> Self {
        match found {
            Some(d) => Solution {
                feasible: true,
                budget_used: d.len(),
                deletions: d,
            },
            None => Solution {
                feasible: false,
                deletions: Deletions::empty(mode),
                budget_used: 0,
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: u64,
    /// Branching nodes per obstruction label.
    pub branch_histogram: BTreeMap<String, u64>,
    /// Calls to a polynomial finishing routine.
    pub subroutine_calls: u64,
}

impl SearchStats {
    /// Associative and commutative.
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.subroutine_calls += other.subroutine_calls;
        for (k, v) in &other.branch_histogram {
            *self.branch_histogram.entry(k.clone()).or_default() += v;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Workers for the root's children; 1 is fully sequential.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

fn rule_moves(kind: ObstructionKind, mode: DeletionMode, target: DeletionTarget, emb: &[usize], k: i64) -> Vec<Deletions> {
    let rules = synthesize_rules(kind, mode, target).expect("rules exist for every obstruction met during search");
    rules
        .rules
        .iter()
        .filter(|r| r.len() as i64 <= k)
        .map(|r| r.map(|p| emb[p]))
        .collect()
}

/// Search node: a graph whose `origin` maps back to the input, the
/// remaining budget, and what was deleted so far in input ids.
struct DeletionNode {
    problem: Problem,
    g: Graph,
    k: i64,
    deleted: Vec<usize>,
    deleted_edges: Vec<Edge>,
}

impl DeletionNode {
    fn solution_with(&self, extra: &Deletions) -> Deletions {
        match extra {
            Deletions::Edges(es) => {
                let mut all = self.deleted_edges.clone();
                all.extend(es);
                all.sort_unstable();
                Deletions::Edges(all)
            }
            Deletions::Vertices(vs) => {
                let mut all = self.deleted.clone();
                all.extend(vs);
                all.sort_unstable();
                Deletions::Vertices(all)
            }
        }
    }

    fn finish(&self, stats: &mut SearchStats) -> Option<Deletions> {
        stats.subroutine_calls += 1;
        let sol = match self.problem {
            Problem::CographEdge => spider_edge_deletion(&self.g),
            Problem::TpEdge => tp_edge_final(&self.g),
            Problem::CographVertex => spider_vertex_deletion(&self.g),
            Problem::TpVertex => tp_vertex_final(&self.g),
            Problem::CographVertexHs | Problem::CographEdgeNaive | Problem::TpEdgeNaive => {
                unreachable!("no structural finish for {}", self.problem)
            }
        }
        .expect("finishing routines only run on P4-sparse graphs of the right shape");
        (sol.cost as i64 <= self.k).then(|| self.solution_with(&sol.deletions))
    }

    fn obstruction_moves(&self, target: DeletionTarget) -> Option<(&'static str, Vec<Deletions>)> {
        let inst = find_p4_sparse_obstruction(&self.g)?;
        let moves = rule_moves(inst.kind, self.problem.mode(), target, &inst.embedding, self.k);
        Some((inst.kind.name(), moves))
    }
}

impl Node for DeletionNode {
    type Move = Deletions;
    type Output = Deletions;

    fn expand(&mut self, stats: &mut SearchStats) -> Expansion<Deletions, Deletions> {
        let target = self.problem.target();
        if target.is_satisfied(&self.g) {
            return Expansion::Leaf(Some(self.solution_with(&Deletions::empty(self.problem.mode()))));
        }
        if self.k <= 0 {
            return Expansion::Leaf(None);
        }
        let branch = |(label, moves)| Expansion::Branch { label, moves };
        match self.problem {
            Problem::CographEdge | Problem::CographVertex => match self.obstruction_moves(DeletionTarget::P4Free) {
                Some(b) => branch(b),
                None => Expansion::Leaf(self.finish(stats)),
            },
            Problem::TpEdge => {
                if let Some(c4) = find_c4(&self.g) {
                    let moves = rule_moves(ObstructionKind::C4, DeletionMode::Edge, target, &c4.embedding, self.k);
                    return branch(("C4", moves));
                }
                // once C4-free, P4-free local rules are the complete family
                match self.obstruction_moves(DeletionTarget::P4Free) {
                    Some(b) => branch(b),
                    None => Expansion::Leaf(self.finish(stats)),
                }
            }
            Problem::TpVertex => match self.obstruction_moves(DeletionTarget::P4AndC4Free) {
                Some(b) => branch(b),
                None => Expansion::Leaf(self.finish(stats)),
            },
            Problem::CographVertexHs => unreachable!("handled by the hitting-set solver"),
            Problem::CographEdgeNaive | Problem::TpEdgeNaive => {
                if self.problem == Problem::TpEdgeNaive {
                    if let Some(c4) = find_c4(&self.g) {
                        let moves = rule_moves(ObstructionKind::C4, DeletionMode::Edge, target, &c4.embedding, self.k);
                        return branch(("C4", moves));
                    }
                }
                let p4 = find_p4(&self.g).expect("target fails without a C4, so a P4 exists");
                let e = &p4.embedding;
                let moves = (0..3).map(|i| Deletions::Edges(vec![Edge::new(e[i], e[i + 1])])).collect();
                branch(("P4", moves))
            }
        }
    }

    fn child(&self, m: &Deletions) -> Self {
        let mut c = DeletionNode {
            problem: self.problem,
            g: self.g.clone(),
            k: self.k - m.len() as i64,
            deleted: self.deleted.clone(),
            deleted_edges: self.deleted_edges.clone(),
        };
        match m {
            Deletions::Edges(es) => {
                c.deleted_edges.extend(es.iter().map(|&e| self.g.original_edge(e)));
                c.g = self.g.delete_edges(es).expect("rule edges exist");
            }
            Deletions::Vertices(vs) => {
                c.deleted.extend(vs.iter().map(|&v| self.g.original_id(v)));
                c.g = self.g.delete_vertices(vs).expect("rule vertices exist").0;
            }
        }
        c
    }
}

fn check_budget(k: i64) -> Result<()> {
    if k < 0 {
        Err(Error::NegativeBudget(k))
    } else {
        Ok(())
    }
}

fn run_search(g: &Graph, k: i64, problem: Problem, opts: SearchOptions) -> Result<(Solution, SearchStats)> {
    check_budget(k)?;
    let root = DeletionNode {
        problem,
        g: g.clone(),
        k,
        deleted: Vec::new(),
        deleted_edges: Vec::new(),
    };
    let (found, stats) = drive(root, opts.threads);
    Ok((Solution::from_search(problem.mode(), found), stats))
}

pub fn solve_cograph_edge(g: &Graph, k: i64) -> Result<(Solution, SearchStats)> {
    run_search(g, k, Problem::CographEdge, SearchOptions::default())
}

pub fn solve_tp_edge(g: &Graph, k: i64) -> Result<(Solution, SearchStats)> {
    run_search(g, k, Problem::TpEdge, SearchOptions::default())
}

pub fn solve_cograph_vertex(g: &Graph, k: i64) -> Result<(Solution, SearchStats)> {
    run_search(g, k, Problem::CographVertex, SearchOptions::default())
}

pub fn solve_tp_vertex(g: &Graph, k: i64) -> Result<(Solution, SearchStats)> {
    run_search(g, k, Problem::TpVertex, SearchOptions::default())
}

/// Three-way P4 edge branching, preceded by C4 pair branching for the
/// trivially perfect baseline.
pub fn solve_naive(g: &Graph, k: i64, problem: Problem) -> Result<(Solution, SearchStats)> {
    match problem {
        Problem::CographEdgeNaive | Problem::TpEdgeNaive => run_search(g, k, problem, SearchOptions::default()),
        other => Err(Error::UnsupportedProblem(other.name().to_string())),
    }
}

/// Decision version of `problem` with budget `k`.
pub fn solve(g: &Graph, k: i64, problem: Problem, opts: SearchOptions) -> Result<(Solution, SearchStats)> {
    match problem {
        Problem::CographVertexHs => crate::hitting_set::solve_with(g, k, opts),
        _ => run_search(g, k, problem, opts),
    }
}

/// True if `sol` is a valid certificate for `problem` on `g`: the deletions
/// exist and leave a graph in the target class.
pub fn verify_solution(g: &Graph, problem: Problem, sol: &Solution) -> bool {
    if !sol.feasible {
        return true;
    }
    sol.deletions.mode() == problem.mode()
        && sol.deletions.len() == sol.budget_used
        && sol
            .deletions
            .apply(g)
            .is_ok_and(|h| problem.target().is_satisfied(&h))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minimum {
    pub k: usize,
    pub solution: Solution,
    /// Statistics of the run at `k` only.
    pub stats: SearchStats,
    /// Statistics summed over every budget tried.
    pub total: SearchStats,
}

/// Smallest feasible budget, by trying `k = 0, 1, 2, ...`.
pub fn minimize(g: &Graph, problem: Problem, opts: SearchOptions) -> Result<Minimum> {
    let mut total = SearchStats::default();
    let cap = match problem.mode() {
        DeletionMode::Edge => g.m(),
        DeletionMode::Vertex => g.n(),
    };
    for k in 0..=cap {
        let (solution, stats) = solve(g, k as i64, problem, opts)?;
        total.merge(&stats);
        if solution.feasible {
            return Ok(Minimum { k, solution, stats, total });
        }
    }
    unreachable!("deleting everything always reaches the target")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_k2_join() -> Graph {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        two_k2.join(&two_k2)
    }

    fn thick4() -> Graph {
        let mut g = Graph::complete(4).disjoint_union(&Graph::new(4));
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    g.add_edge(j, 4 + i);
                }
            }
        }
        g
    }

    fn feasible(r: Result<(Solution, SearchStats)>) -> bool {
        r.unwrap().0.feasible
    }

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert!("cograph".parse::<Problem>().is_err());
        assert_eq!(Problem::CographEdge.leaf_bound(2), 7);
        assert_eq!(Problem::TpVertex.leaf_bound(0), 1);
    }

    #[test]
    fn cograph_edge_examples() {
        let (s, _) = solve_cograph_edge(&Graph::path(5), 1).unwrap();
        assert!(s.feasible);
        let Deletions::Edges(es) = &s.deletions else { panic!() };
        assert!(es == &[Edge::new(1, 2)] || es == &[Edge::new(2, 3)]);
        assert!(!feasible(solve_cograph_edge(&Graph::cycle(5), 1)));
        assert!(feasible(solve_cograph_edge(&Graph::cycle(5), 2)));
        let (s, st) = solve_cograph_edge(&Graph::complete(4), 0).unwrap();
        assert!(s.feasible && s.deletions.is_empty());
        assert_eq!(st.nodes, 1);
        assert!(!feasible(solve_cograph_edge(&thick4(), 5)));
        assert!(feasible(solve_cograph_edge(&thick4(), 6)));
        assert!(matches!(solve_cograph_edge(&Graph::path(4), -1), Err(Error::NegativeBudget(-1))));
    }

    #[test]
    fn tp_edge_examples() {
        assert!(!feasible(solve_tp_edge(&Graph::cycle(4), 1)));
        assert!(feasible(solve_tp_edge(&Graph::cycle(4), 2)));
        assert!(feasible(solve_tp_edge(&Graph::path(5), 1)));
        assert!(feasible(solve_tp_edge(&Graph::complete(3), 0)));
    }

    #[test]
    fn vertex_examples() {
        let p4k1 = Graph::path(4).disjoint_union(&Graph::new(1));
        assert!(feasible(solve_cograph_vertex(&p4k1, 1)));
        assert!(!feasible(solve_cograph_vertex(&Graph::cycle(5), 1)));
        assert!(feasible(solve_cograph_vertex(&Graph::cycle(5), 2)));
        let kite = ObstructionKind::Kite.pattern();
        assert!(feasible(solve_cograph_vertex(kite, 1)));
        assert!(feasible(solve_tp_vertex(&Graph::cycle(4), 1)));
        assert!(!feasible(solve_tp_vertex(&two_k2_join(), 1)));
        assert!(feasible(solve_tp_vertex(&two_k2_join(), 2)));
        assert!(feasible(solve_tp_vertex(ObstructionKind::Pan4.pattern(), 1)));
    }

    #[test]
    fn naive_examples() {
        assert!(feasible(solve_naive(&Graph::path(4), 1, Problem::CographEdgeNaive)));
        assert!(feasible(solve_naive(&Graph::complete(4), 0, Problem::CographEdgeNaive)));
        assert!(!feasible(solve_naive(&Graph::cycle(5), 1, Problem::CographEdgeNaive)));
        assert!(!feasible(solve_naive(&Graph::cycle(4), 1, Problem::TpEdgeNaive)));
        assert!(matches!(
            solve_naive(&Graph::path(4), 1, Problem::CographEdge),
            Err(Error::UnsupportedProblem(_))
        ));
    }

    #[test]
    fn minimize_examples() {
        let opts = SearchOptions::default();
        assert_eq!(minimize(&Graph::cycle(5), Problem::CographEdge, opts).unwrap().k, 2);
        assert_eq!(minimize(&Graph::complete(5), Problem::CographEdge, opts).unwrap().k, 0);
        let m = minimize(&Graph::path(5), Problem::CographVertexHs, opts).unwrap();
        assert_eq!(m.k, 1);
        assert!(verify_solution(&Graph::path(5), Problem::CographVertexHs, &m.solution));
    }

    #[test]
    fn threads_agree_with_sequential() {
        let g = thick4().disjoint_union(&Graph::cycle(5));
        for p in [Problem::CographEdge, Problem::TpVertex, Problem::CographVertexHs] {
            let a = minimize(&g, p, SearchOptions { threads: 1 }).unwrap();
            let b = minimize(&g, p, SearchOptions { threads: 4 }).unwrap();
            assert_eq!(a.k, b.k);
            assert_eq!(a.solution, b.solution);
        }
    }

    #[test]
    fn stats_merge_is_additive() {
        let (_, a) = solve_cograph_edge(&Graph::cycle(5), 2).unwrap();
        let (_, b) = solve_cograph_edge(&Graph::path(5), 1).unwrap();
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.nodes, a.nodes + b.nodes);
        assert!(ab.leaves <= ab.nodes);
    }
}

//! Cograph vertex deletion as an implicit 4-hitting-set instance.
//!
//! The vertex sets of induced P4s are the sets to hit. Marked vertices are
//! excluded from the solution, which shrinks sets to fewer candidates.
//! Small sets are branched on first, then P4-dominance marks vertices, then
//! the extended P4-sparse obstructions are branched through their breaking
//! vertices. What is left is extended P4-sparse: isolated 5-cycles get two
//! deletions each and the rest is solved on the spider decomposition,
//! respecting the marks.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::obstructions::{breaking_vertices, find_extended_obstruction, induced_c5s, p4_vertex_sets, ObstructionInstance};
use crate::search::engine::{drive, Expansion, Node};
use crate::search::{SearchOptions, SearchStats, Solution};
use crate::spider_solvers::constrained_spider_vertex_deletion;
use crate::target::{DeletionMode, Deletions};

/// Search state. Vertex ids are local to `graph`; `chosen` holds input ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingState {
    pub graph: Graph,
    pub marked: Vec<bool>,
    /// Vertex sets of the induced P4s of `graph`, sorted.
    pub p4_sets: Vec<[usize; 4]>,
    pub budget: i64,
    pub chosen: VertexSet,
}

/// One branch: mark `mark`, then delete `include` (local ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsMove {
    pub mark: Vec<usize>,
    pub include: Vec<usize>,
}

impl HittingState {
    pub fn new(g: &Graph, k: i64) -> Self {
        HittingState {
            graph: g.clone(),
            marked: vec![false; g.n()],
            p4_sets: p4_vertex_sets(g),
            budget: k,
            chosen: Vec::new(),
        }
    }

    /// True if `p4_sets` matches a fresh enumeration of the current graph.
    pub fn is_consistent(&self) -> bool {
        self.p4_sets == p4_vertex_sets(&self.graph) && self.marked.len() == self.graph.n()
    }

    /// Marked vertices in input ids.
    pub fn marks(&self) -> VertexSet {
        (0..self.graph.n())
            .filter(|&v| self.marked[v])
            .map(|v| self.graph.original_id(v))
            .collect()
    }

    pub fn effective_size(&self, set: &[usize; 4]) -> usize {
        set.iter().filter(|&&v| !self.marked[v]).count()
    }

    fn unmarked(&self, set: &[usize; 4]) -> Vec<usize> {
        set.iter().copied().filter(|&v| !self.marked[v]).collect()
    }

    pub fn mark(&mut self, v: usize) {
        self.marked[v] = true;
    }

    /// Deletes local vertices `vs`, charging the budget.
    pub fn include(&mut self, vs: &[usize]) {
        debug_assert!(vs.iter().all(|&v| !self.marked[v]));
        self.chosen.extend(vs.iter().map(|&v| self.graph.original_id(v)));
        let (g, map) = self.graph.delete_vertices(vs).expect("vertices of the current graph");
        self.marked = map.iter().map(|&old| self.marked[old]).collect();
        self.graph = g;
        self.budget -= vs.len() as i64;
        self.p4_sets = p4_vertex_sets(&self.graph);
    }

    pub fn apply(&self, m: &HsMove) -> HittingState {
        let mut s = self.clone();
        for &v in &m.mark {
            s.mark(v);
        }
        s.include(&m.include);
        s
    }

    /// First set (in sorted order) with the given effective size.
    pub fn first_set_of_size(&self, size: usize) -> Option<[usize; 4]> {
        self.p4_sets.iter().copied().find(|s| self.effective_size(s) == size)
    }

    /// Hit `set` by its first unmarked vertex, or mark it and take the next.
    pub fn set_moves(&self, set: &[usize; 4]) -> Vec<HsMove> {
        let free = self.unmarked(set);
        (0..free.len())
            .map(|i| HsMove {
                mark: free[..i].to_vec(),
                include: vec![free[i]],
            })
            .collect()
    }

    /// Children of the first set with effective size 3.
    pub fn branch_3set(&self) -> Vec<HittingState> {
        match self.first_set_of_size(3) {
            Some(s) => self.set_moves(&s).iter().map(|m| self.apply(m)).collect(),
            None => Vec::new(),
        }
    }

    /// A pair `(u, v)` of local ids where `u` is unmarked and lies in some
    /// P4, and the unmarked `v` lies in every P4 containing `u`. Smallest `u`
    /// first, then smallest `v`.
    pub fn find_dominated(&self) -> Option<(usize, usize)> {
        let n = self.graph.n();
        let mut common: Vec<Option<Vec<bool>>> = vec![None; n];
        for set in &self.p4_sets {
            for &u in set {
                let entry = common[u].get_or_insert_with(|| vec![true; n]);
                for (w, keep) in entry.iter_mut().enumerate() {
                    if !set.contains(&w) {
                        *keep = false;
                    }
                }
            }
        }
        (0..n).filter(|&u| !self.marked[u]).find_map(|u| {
            let c = common[u].as_ref()?;
            (0..n).find(|&v| v != u && c[v] && !self.marked[v]).map(|v| (u, v))
        })
    }

    /// Sequential branching over the unmarked breaking vertices of a non-C5
    /// obstruction, then one child deleting the obstruction's pair.
    pub fn obstruction_moves(&self, inst: &ObstructionInstance) -> Result<Vec<HsMove>> {
        let (breaking, pair) = breaking_vertices(inst.kind)?;
        let free: Vec<usize> = breaking
            .iter()
            .map(|&p| inst.embedding[p])
            .filter(|&v| !self.marked[v])
            .collect();
        let mut moves: Vec<HsMove> = (0..free.len())
            .map(|i| HsMove {
                mark: free[..i].to_vec(),
                include: vec![free[i]],
            })
            .collect();
        let (a, b) = (inst.embedding[pair[0]], inst.embedding[pair[1]]);
        if !self.marked[a] && !self.marked[b] && self.budget >= 2 {
            moves.push(HsMove {
                mark: free,
                include: vec![a.min(b), a.max(b)],
            });
        }
        Ok(moves)
    }

    pub fn branch_obstruction(&self, inst: &ObstructionInstance) -> Result<Vec<HittingState>> {
        Ok(self.obstruction_moves(inst)?.iter().map(|m| self.apply(m)).collect())
    }

    /// Deletes two unmarked vertices of every induced C5. Returns `false`
    /// when some C5 has four or more marked vertices. Only valid on an
    /// extended P4-sparse graph, where every C5 is isolated from the other
    /// P4s.
    pub fn c5_cleanup(&mut self) -> bool {
        while let Some(c5) = induced_c5s(&self.graph).first().copied() {
            assert!(
                self.p4_sets
                    .iter()
                    .all(|s| s.iter().all(|v| c5.contains(v)) || !s.iter().any(|v| c5.contains(v))),
                "a 5-cycle shares a P4 with the rest of the graph"
            );
            let free: Vec<usize> = c5.iter().copied().filter(|&v| !self.marked[v]).collect();
            if free.len() < 2 {
                return false;
            }
            self.include(&free[..2]);
        }
        true
    }

    /// Deletion set for a P4-sparse remainder avoiding the marks, if one
    /// fits the budget.
    fn finish(&self, stats: &mut SearchStats) -> Option<Deletions> {
        stats.subroutine_calls += 1;
        let forbidden: Vec<usize> = (0..self.graph.n()).filter(|&v| self.marked[v]).collect();
        let sol = constrained_spider_vertex_deletion(&self.graph, &forbidden).expect("remainder is P4-sparse");
        if !sol.feasible || sol.cost as i64 > self.budget {
            return None;
        }
        let Deletions::Vertices(vs) = sol.deletions else { unreachable!() };
        let mut all = self.chosen.clone();
        all.extend(vs);
        all.sort_unstable();
        Some(Deletions::Vertices(all))
    }
}

impl Node for HittingState {
    type Move = HsMove;
    type Output = (Deletions, VertexSet);

    fn expand(&mut self, stats: &mut SearchStats) -> Expansion<HsMove, (Deletions, VertexSet)> {
        loop {
            if self.p4_sets.is_empty() {
                let mut all = self.chosen.clone();
                all.sort_unstable();
                return Expansion::Leaf(Some((Deletions::Vertices(all), self.marks())));
            }
            if self.first_set_of_size(0).is_some() || self.budget <= 0 {
                return Expansion::Leaf(None);
            }
            if let Some(s) = self.first_set_of_size(1) {
                let v = self.unmarked(&s);
                self.include(&v);
                continue;
            }
            for (size, label) in [(2, "2-set"), (3, "3-set")] {
                if let Some(s) = self.first_set_of_size(size) {
                    return Expansion::Branch {
                        label,
                        moves: self.set_moves(&s),
                    };
                }
            }
            if let Some((u, _)) = self.find_dominated() {
                self.mark(u);
                continue;
            }
            if let Some(inst) = find_extended_obstruction(&self.graph) {
                let moves = self.obstruction_moves(&inst).expect("non-C5 obstructions have breaking vertices");
                return Expansion::Branch {
                    label: inst.kind.name(),
                    moves,
                };
            }
            if !self.c5_cleanup() || self.budget < 0 {
                return Expansion::Leaf(None);
            }
            return Expansion::Leaf(self.finish(stats).map(|d| (d, self.marks())));
        }
    }

    fn child(&self, m: &HsMove) -> Self {
        self.apply(m)
    }
}

/// Like [`solve_cograph_vertex_hs`], also returning the marked vertices
/// (input ids) of the successful leaf.
pub fn solve_traced(g: &Graph, k: i64, opts: SearchOptions) -> Result<(Solution, SearchStats, VertexSet)> {
    if k < 0 {
        return Err(Error::NegativeBudget(k));
    }
    let (found, stats) = drive(HittingState::new(g, k), opts.threads);
    let marks = found.as_ref().map(|(_, m)| m.clone()).unwrap_or_default();
    let solution = match found.map(|(d, _)| d) {
        Some(d) => Solution {
            feasible: true,
            budget_used: d.len(),
            deletions: d,
        },
        None => Solution {
            feasible: false,
            deletions: Deletions::empty(DeletionMode::Vertex),
            budget_used: 0,
        },
    };
    Ok((solution, stats, marks))
}

pub(crate) fn solve_with(g: &Graph, k: i64, opts: SearchOptions) -> Result<(Solution, SearchStats)> {
    solve_traced(g, k, opts).map(|(s, st, _)| (s, st))
}

pub fn solve_cograph_vertex_hs(g: &Graph, k: i64) -> Result<(Solution, SearchStats)> {
    solve_with(g, k, SearchOptions::default())
}

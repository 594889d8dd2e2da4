//! Generic depth-first driver shared by every branching solver.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::SearchStats;

pub(crate) enum Expansion<M, O> {
    /// Terminal node: a full solution, or a dead end.
    Leaf(Option<O>),
    Branch { label: &'static str, moves: Vec<M> },
}

pub(crate) trait Node: Sized + Send {
    type Move: Send + Sync;
    type Output: Send;

    /// May mutate the node in place (forced steps) before deciding.
    fn expand(&mut self, stats: &mut SearchStats) -> Expansion<Self::Move, Self::Output>;

    fn child(&self, m: &Self::Move) -> Self;
}

fn run<N: Node>(mut node: N, depth: u64, stats: &mut SearchStats) -> Option<N::Output> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(depth);
    match node.expand(stats) {
        Expansion::Leaf(r) => {
            stats.leaves += 1;
            r
        }
        Expansion::Branch { label, moves } => {
            if moves.is_empty() {
                stats.leaves += 1;
                return None;
            }
            *stats.branch_histogram.entry(label.to_string()).or_default() += 1;
            moves.iter().find_map(|m| run(node.child(m), depth + 1, stats))
        }
    }
}

/// Runs the search. With more than one thread the root's children are
/// explored concurrently; the result is still the one the sequential order
/// would return.
pub(crate) fn drive<N: Node + Sync>(mut root: N, threads: usize) -> (Option<N::Output>, SearchStats) {
    let mut stats = SearchStats::default();
    if threads <= 1 {
        let r = run(root, 0, &mut stats);
        return (r, stats);
    }
    stats.nodes += 1;
    let moves = match root.expand(&mut stats) {
        Expansion::Leaf(r) => {
            stats.leaves += 1;
            return (r, stats);
        }
        Expansion::Branch { moves, .. } if moves.is_empty() => {
            stats.leaves += 1;
            return (None, stats);
        }
        Expansion::Branch { label, moves } => {
            *stats.branch_histogram.entry(label.to_string()).or_default() += 1;
            moves
        }
    };
    let best = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let results: Vec<(Option<N::Output>, SearchStats)> = pool.install(|| {
        moves
            .par_iter()
            .enumerate()
            .map(|(i, m)| {
                let mut s = SearchStats::default();
                if best.load(Ordering::Relaxed) < i {
                    return (None, s);
                }
                let r = run(root.child(m), 1, &mut s);
                if r.is_some() {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                (r, s)
            })
            .collect()
    });
    let mut found = None;
    for (r, s) in results {
        stats.merge(&s);
        if found.is_none() {
            found = r;
        }
    }
    (found, stats)
}

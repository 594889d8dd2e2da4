//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Renames vertex `v` to `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.n());
    for e in g.edges() {
        h.add_edge(perm[e.u], perm[e.v]);
    }
    h
}

fn shuffled(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    relabel(g, &perm)
}

/// Random cotree: single vertices are merged pairwise at random, each merge
/// a disjoint union or a join with equal probability.
pub fn random_cograph(n: usize, rng: &mut impl Rng) -> Graph {
    if n == 0 {
        return Graph::new(0);
    }
    let mut parts: Vec<Graph> = (0..n).map(|_| Graph::new(1)).collect();
    while parts.len() > 1 {
        let i = rng.gen_range(0..parts.len());
        let a = parts.swap_remove(i);
        let j = rng.gen_range(0..parts.len());
        let b = parts.swap_remove(j);
        parts.push(if rng.gen_bool(0.5) { a.disjoint_union(&b) } else { a.join(&b) });
    }
    shuffled(&parts[0], rng)
}

/// Spider with body `0..t`, feet `t..2t` (foot `t+i` belongs to body `i`)
/// and head `2t..2t+|head|`.
pub fn spider_from_parts(t: usize, thin: bool, head: &Graph) -> Result<Graph> {
    if t < 2 {
        return Err(Error::InvalidParameters(format!("spider needs at least 2 legs, got {t}")));
    }
    let mut g = Graph::complete(t).disjoint_union(&Graph::new(t)).disjoint_union(head);
    for i in 0..t {
        for j in 0..t {
            if (i == j) == thin {
                g.add_edge(i, t + j);
            }
        }
        for r in 0..head.n() {
            g.add_edge(i, 2 * t + r);
        }
    }
    Ok(g)
}

/// Spider on `n` vertices with a head of at most three vertices (a random
/// cograph), vertex ids shuffled.
pub fn random_spider(n: usize, thin: bool, rng: &mut impl Rng) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("spider needs n >= 4, got {n}")));
    }
    let lo = n.saturating_sub(3).div_ceil(2);
    let t = rng.gen_range(lo.max(2)..=n / 2);
    let head = random_cograph(n - 2 * t, rng);
    Ok(shuffled(&spider_from_parts(t, thin, &head)?, rng))
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Random cograph plus `k` distinct added edges, so deleting those `k`
/// edges gives a cograph back.
pub fn planted_edge(n: usize, k: usize, rng: &mut impl Rng) -> Result<Graph> {
    let mut g = random_cograph(n, rng);
    let mut non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    if non_edges.len() < k {
        return Err(Error::InvalidParameters(format!(
            "cannot add {k} edges, only {} non-edges",
            non_edges.len()
        )));
    }
    let (picked, _) = non_edges.partial_shuffle(rng, k);
    for &(u, v) in picked.iter() {
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Random cograph on `n - k` vertices plus `k` vertices with random
/// adjacency, ids shuffled; deleting the extra vertices gives a cograph.
pub fn planted_vertex(n: usize, k: usize, rng: &mut impl Rng) -> Result<Graph> {
    if k > n {
        return Err(Error::InvalidParameters(format!("cannot plant {k} vertices in {n}")));
    }
    let mut g = random_cograph(n - k, rng).disjoint_union(&Graph::new(k));
    for x in n - k..n {
        for v in 0..x {
            if rng.gen_bool(0.5) {
                g.add_edge(x, v);
            }
        }
    }
    Ok(shuffled(&g, rng))
}

fn p4_sparse_tree(n: usize, rng: &mut impl Rng) -> Graph {
    if n == 1 {
        return Graph::new(1);
    }
    let choice = if n >= 4 { rng.gen_range(0..3) } else { rng.gen_range(0..2) };
    if choice == 2 {
        let t = rng.gen_range(2..=n / 2);
        let head = if n > 2 * t { p4_sparse_tree(n - 2 * t, rng) } else { Graph::new(0) };
        return spider_from_parts(t, rng.gen_bool(0.5), &head).expect("t >= 2");
    }
    let split = rng.gen_range(1..n);
    let (a, b) = (p4_sparse_tree(split, rng), p4_sparse_tree(n - split, rng));
    if choice == 0 {
        a.disjoint_union(&b)
    } else {
        a.join(&b)
    }
}

/// Random P4-sparse graph built from a decomposition tree with union, join
/// and spider nodes, ids shuffled.
pub fn random_p4_sparse(n: usize, rng: &mut impl Rng) -> Graph {
    if n == 0 {
        return Graph::new(0);
    }
    let g = p4_sparse_tree(n, rng);
    shuffled(&g, rng)
}

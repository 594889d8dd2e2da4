//! Undirected simple graphs over dense vertex ids.
//!
//! Adjacency is stored as word-packed bitset rows so that adjacency tests are
//! a shift and a mask. Every graph also carries an `origin` table mapping its
//! dense ids back to the ids of the graph it was ultimately derived from, so
//! that solvers working on repeatedly shrunk subgraphs can still report
//! deletions in the ids of the input instance.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Sorted, duplicate-free list of vertex ids.
pub type VertexSet = Vec<usize>;
/// Sorted, duplicate-free list of normalized edges.
pub type EdgeSet = Vec<Edge>;

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the normalized edge between `a` and `b`.
    ///
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a} is not an edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        Edge::new(f(self.u), f(self.v))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    origin: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            origin: (0..n).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n).complement()
    }

    /// Path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.rows[a * self.words + b / 64] >> (b % 64)) & 1 == 1
    }

    /// Inserts the edge `a-b`. Panics on out-of-range ids or self-loops.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n && a != b, "invalid edge {a}-{b}");
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "invalid edge {a}-{b}");
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> EdgeSet {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    /// Ids of the root graph this graph was derived from, indexed by local id.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn original_id(&self, v: usize) -> usize {
        self.origin[v]
    }

    /// Replaces the origin table. Panics if its length differs from `n`.
    pub fn with_origin(mut self, origin: Vec<usize>) -> Self {
        assert_eq!(origin.len(), self.n);
        self.origin = origin;
        self
    }

    pub fn original_edge(&self, e: Edge) -> Edge {
        e.map(|v| self.origin[v])
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            n: self.n,
            words: self.words,
            rows: self.rows.iter().map(|w| !w).collect(),
            origin: self.origin.clone(),
        };
        // clear padding bits and the diagonal
        let tail = self.n % 64;
        for v in 0..self.n {
            if tail != 0 {
                g.rows[v * self.words + self.words - 1] &= (1u64 << tail) - 1;
            }
            g.rows[v * self.words + v / 64] &= !(1 << (v % 64));
        }
        g
    }

    /// Subgraph induced by `vs`, with the map from new ids to ids of `self`.
    ///
    /// The new ids follow the sorted order of `vs`.
    pub fn induced(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut map: Vec<usize> = vs.to_vec();
        map.sort_unstable();
        map.dedup();
        for &v in &map {
            self.check_vertex(v)?;
        }
        let mut g = Graph::new(map.len());
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g.origin = map.iter().map(|&v| self.origin[v]).collect();
        Ok((g, map))
    }

    pub fn delete_edges(&self, es: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for e in es {
            self.check_vertex(e.v)?;
            if !self.has_edge(e.u, e.v) {
                return Err(Error::MissingEdge(*e));
            }
            g.remove_edge(e.u, e.v);
        }
        Ok(g)
    }

    /// Removes `vs`, compacting the remaining ids. Returns the new graph and
    /// the map from new ids to ids of `self`.
    pub fn delete_vertices(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut gone = vec![false; self.n];
        for &v in vs {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }

    pub fn is_stable(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_within(&all)
    }

    pub fn co_components(&self) -> Vec<VertexSet> {
        let all: Vec<usize> = (0..self.n).collect();
        self.co_components_within(&all)
    }

    /// Connected components of the subgraph induced by `vs`, in ids of
    /// `self`, each sorted and ordered by smallest member.
    pub fn components_within(&self, vs: &[usize]) -> Vec<VertexSet> {
        self.split_within(vs, true)
    }

    /// Co-components of the subgraph induced by `vs`.
    pub fn co_components_within(&self, vs: &[usize]) -> Vec<VertexSet> {
        self.split_within(vs, false)
    }

    fn split_within(&self, vs: &[usize], adjacent: bool) -> Vec<VertexSet> {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &sorted {
                    if !seen[y] && y != x && self.has_edge(x, y) == adjacent {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Disjoint union of `self` followed by `other`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::new(n);
        for e in self.edges() {
            g.add_edge(e.u, e.v);
        }
        for e in other.edges() {
            g.add_edge(e.u + self.n, e.v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for a in 0..self.n {
            for b in 0..other.n {
                g.add_edge(a, self.n + b);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Graph {
        Graph::path(5)
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::new(3));
        let p4 = Graph::path(4);
        let c = p4.complement();
        assert_eq!(c.m(), 3);
        // P4 complement is the path 1-3-0-2
        assert!(c.has_edge(1, 3) && c.has_edge(3, 0) && c.has_edge(0, 2));
        let c5 = Graph::cycle(5).complement();
        assert_eq!(c5.m(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(Graph::new(0).complement(), Graph::new(0));
    }

    #[test]
    fn complement_handles_word_boundaries() {
        for n in [63, 64, 65, 130] {
            let g = Graph::new(n).complement();
            assert_eq!(g.m(), n * (n - 1) / 2);
            assert_eq!(g.complement(), Graph::new(n));
        }
    }

    #[test]
    fn induced_examples() {
        let c5 = Graph::cycle(5);
        for skip in 0..5 {
            let vs: Vec<usize> = (0..5).filter(|&v| v != skip).collect();
            let (h, map) = c5.induced(&vs).unwrap();
            assert_eq!(h.m(), 3);
            assert_eq!(map, vs);
        }
        let (e, map) = c5.induced(&[]).unwrap();
        assert_eq!(e.n(), 0);
        assert!(map.is_empty());
        assert!(matches!(
            c5.induced(&[7]),
            Err(Error::VertexOutOfRange { vertex: 7, n: 5 })
        ));
    }

    #[test]
    fn components_examples() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(p5().components().len(), 1);
        assert_eq!(Graph::new(4).components().len(), 4);
    }

    #[test]
    fn co_components_examples() {
        assert_eq!(Graph::cycle(4).co_components(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(Graph::complete(4).co_components().len(), 4);
        assert_eq!(Graph::path(4).co_components(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn deletions() {
        let c4 = Graph::cycle(4);
        let p = c4.delete_edges(&[Edge::new(3, 0)]).unwrap();
        assert_eq!(p, Graph::path(4));
        assert_eq!(c4.delete_edges(&[]).unwrap(), c4);
        assert!(matches!(
            c4.delete_edges(&[Edge::new(0, 2)]),
            Err(Error::MissingEdge(_))
        ));
        let (h, map) = p5().delete_vertices(&[2]).unwrap();
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(h.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(h.origin(), &[0, 1, 3, 4]);
    }

    #[test]
    fn origin_composes() {
        let g = Graph::path(6);
        let (h, _) = g.delete_vertices(&[0]).unwrap();
        let (h2, _) = h.delete_vertices(&[1]).unwrap();
        assert_eq!(h2.origin(), &[1, 3, 4, 5]);
        assert_eq!(h2.original_edge(Edge::new(1, 2)), Edge::new(3, 4));
    }

    #[test]
    fn clique_and_stable() {
        let k3 = Graph::complete(3);
        assert!(k3.is_clique(&[0, 1, 2]));
        assert!(!k3.is_stable(&[0, 1, 2]));
        assert!(p5().is_clique(&[3]));
        assert!(p5().is_stable(&[0, 2, 4]));
    }

    #[test]
    fn join_and_union() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let j = two_k2.join(&two_k2);
        assert_eq!(j.n(), 8);
        assert_eq!(j.m(), 2 + 2 + 16);
        assert_eq!(j.co_components().len(), 2);
    }
}

//! Cograph recognition and the union / join / spider decomposition of
//! P4-sparse graphs.
//!
//! A P4-sparse graph on at least two vertices is disconnected,
//! co-disconnected, or a spider. Splitting recursively on components and
//! co-components and peeling spiders therefore either decomposes the whole
//! graph or stalls on a vertex set that is neither, in which case that set
//! contains an obstruction.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::obstructions::{find_p4, find_p4_sparse_obstruction, ObstructionInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpiderKind {
    Thin,
    Thick,
}

/// Body, feet and head of a spider, with the leg bijection.
///
/// `legs` holds `(foot, body)` pairs sorted by foot. In a thin spider a foot
/// is adjacent to its paired body vertex only; in a thick spider it is
/// adjacent to every body vertex except its paired one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiderPartition {
    pub kind: SpiderKind,
    pub body: VertexSet,
    pub feet: VertexSet,
    pub head: VertexSet,
    pub legs: Vec<(usize, usize)>,
}

impl SpiderPartition {
    pub fn size(&self) -> usize {
        self.body.len()
    }

    pub fn leg(&self, foot: usize) -> Option<usize> {
        self.legs.iter().find(|&&(s, _)| s == foot).map(|&(_, k)| k)
    }

    /// Checks every defining condition against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let t = self.body.len();
        if t < 2 || self.feet.len() != t || self.legs.len() != t {
            return false;
        }
        let mut all: Vec<usize> = self.body.iter().chain(&self.feet).chain(&self.head).copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total || all.last().is_some_and(|&v| v >= g.n()) {
            return false;
        }
        let mut legs_feet: Vec<usize> = self.legs.iter().map(|l| l.0).collect();
        let mut legs_body: Vec<usize> = self.legs.iter().map(|l| l.1).collect();
        legs_feet.sort_unstable();
        legs_body.sort_unstable();
        if legs_feet != self.feet || legs_body != self.body {
            return false;
        }
        if !g.is_clique(&self.body) || !g.is_stable(&self.feet) {
            return false;
        }
        let head_ok = self.head.iter().all(|&r| {
            self.body.iter().all(|&k| g.has_edge(r, k)) && self.feet.iter().all(|&s| !g.has_edge(r, s))
        });
        let legs_ok = self.legs.iter().all(|&(s, partner)| {
            self.body.iter().all(|&k| {
                let expect = match self.kind {
                    SpiderKind::Thin => k == partner,
                    SpiderKind::Thick => k != partner,
                };
                g.has_edge(s, k) == expect
            })
        });
        head_ok && legs_ok
    }
}

/// Tries the thin layout on a graph: feet are the degree-one vertices and the
/// body their neighbours.
fn thin_partition(h: &Graph) -> Option<SpiderPartition> {
    let n = h.n();
    if n < 4 {
        return None;
    }
    let feet: Vec<usize> = (0..n).filter(|&v| h.degree(v) == 1).collect();
    if feet.len() < 2 {
        return None;
    }
    let legs: Vec<(usize, usize)> = feet.iter().map(|&s| (s, h.neighbors(s).next().unwrap())).collect();
    let mut body: Vec<usize> = legs.iter().map(|l| l.1).collect();
    body.sort_unstable();
    body.dedup();
    if body.len() != feet.len() {
        return None;
    }
    let head: Vec<usize> = (0..n).filter(|v| !feet.contains(v) && !body.contains(v)).collect();
    let p = SpiderPartition {
        kind: SpiderKind::Thin,
        body,
        feet,
        head,
        legs,
    };
    p.verify(h).then_some(p)
}

/// Spider structure of `g`, if `g` is a spider.
pub fn extract_spider(g: &Graph) -> Option<SpiderPartition> {
    let all: Vec<usize> = (0..g.n()).collect();
    extract_spider_in(g, &all)
}

/// Spider structure of the subgraph induced by `verts`, in ids of `g`.
pub fn extract_spider_in(g: &Graph, verts: &[usize]) -> Option<SpiderPartition> {
    let (h, map) = g.induced(verts).ok()?;
    let lift = |vs: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = vs.iter().map(|&v| map[v]).collect();
        out.sort_unstable();
        out
    };
    let found = if let Some(p) = thin_partition(&h) {
        Some(SpiderPartition {
            kind: SpiderKind::Thin,
            body: lift(&p.body),
            feet: lift(&p.feet),
            head: lift(&p.head),
            legs: p.legs.iter().map(|&(s, k)| (map[s], map[k])).collect(),
        })
    } else if let Some(p) = thin_partition(&h.complement()) {
        // body and feet swap roles under complementation
        let mut legs: Vec<(usize, usize)> = p.legs.iter().map(|&(s, k)| (map[k], map[s])).collect();
        legs.sort_unstable();
        Some(SpiderPartition {
            kind: SpiderKind::Thick,
            body: lift(&p.feet),
            feet: lift(&p.body),
            head: lift(&p.head),
            legs,
        })
    } else {
        None
    };
    let p = found?;
    debug_assert!(p.verify(g));
    Some(p)
}

/// Decomposition tree over vertex ids of the decomposed graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompTree {
    Leaf(usize),
    /// Children are the connected components.
    Union(Vec<DecompTree>),
    /// Children are the co-components.
    Join(Vec<DecompTree>),
    Spider {
        spider: SpiderPartition,
        head: Option<Box<DecompTree>>,
    },
}

impl DecompTree {
    /// All vertices below this node, sorted.
    pub fn vertices(&self) -> VertexSet {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            DecompTree::Leaf(v) => out.push(*v),
            DecompTree::Union(cs) | DecompTree::Join(cs) => cs.iter().for_each(|c| c.collect(out)),
            DecompTree::Spider { spider, head } => {
                out.extend(&spider.body);
                out.extend(&spider.feet);
                if let Some(h) = head {
                    h.collect(out);
                }
            }
        }
    }

    pub fn spiders(&self) -> Vec<&SpiderPartition> {
        let mut out = Vec::new();
        self.collect_spiders(&mut out);
        out
    }

    fn collect_spiders<'a>(&'a self, out: &mut Vec<&'a SpiderPartition>) {
        match self {
            DecompTree::Leaf(_) => {}
            DecompTree::Union(cs) | DecompTree::Join(cs) => cs.iter().for_each(|c| c.collect_spiders(out)),
            DecompTree::Spider { spider, head } => {
                out.push(spider);
                if let Some(h) = head {
                    h.collect_spiders(out);
                }
            }
        }
    }

    pub fn has_spider(&self) -> bool {
        !self.spiders().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CographCheck {
    /// Union/join tree witnessing P4-freeness.
    Cograph(DecompTree),
    /// Four vertices inducing a P4, in path order.
    P4Witness([usize; 4]),
}

enum Stall {
    At(VertexSet),
}

fn split(g: &Graph, verts: &[usize], spiders: bool) -> Result<DecompTree, Stall> {
    if verts.len() == 1 {
        return Ok(DecompTree::Leaf(verts[0]));
    }
    let comps = g.components_within(verts);
    if comps.len() > 1 {
        return comps
            .iter()
            .map(|c| split(g, c, spiders))
            .collect::<Result<Vec<_>, _>>()
            .map(DecompTree::Union);
    }
    let cocomps = g.co_components_within(verts);
    if cocomps.len() > 1 {
        return cocomps
            .iter()
            .map(|c| split(g, c, spiders))
            .collect::<Result<Vec<_>, _>>()
            .map(DecompTree::Join);
    }
    if spiders {
        if let Some(spider) = extract_spider_in(g, verts) {
            let head = if spider.head.is_empty() {
                None
            } else {
                Some(Box::new(split(g, &spider.head, spiders)?))
            };
            return Ok(DecompTree::Spider { spider, head });
        }
    }
    Err(Stall::At(verts.to_vec()))
}

pub fn is_cograph(g: &Graph) -> CographCheck {
    let all: Vec<usize> = (0..g.n()).collect();
    if all.is_empty() {
        return CographCheck::Cograph(DecompTree::Union(Vec::new()));
    }
    match split(g, &all, false) {
        Ok(t) => CographCheck::Cograph(t),
        Err(Stall::At(vs)) => {
            let (h, map) = g.induced(&vs).expect("subset of g");
            let p = find_p4(&h).expect("a connected, co-connected graph on two or more vertices contains a P4");
            let e = &p.embedding;
            CographCheck::P4Witness([map[e[0]], map[e[1]], map[e[2]], map[e[3]]])
        }
    }
}

/// Full decomposition of a P4-sparse graph, or five vertices of `g`
/// inducing an obstruction.
pub fn p4_sparse_decompose(g: &Graph) -> Result<DecompTree, ObstructionInstance> {
    let all: Vec<usize> = (0..g.n()).collect();
    if all.is_empty() {
        return Ok(DecompTree::Union(Vec::new()));
    }
    split(g, &all, true).map_err(|Stall::At(vs)| {
        let (h, map) = g.induced(&vs).expect("subset of g");
        let inst = find_p4_sparse_obstruction(&h).expect("a stalled vertex set is not P4-sparse");
        ObstructionInstance {
            kind: inst.kind,
            embedding: inst.embedding.iter().map(|&v| map[v]).collect(),
        }
    })
}

/// Clique number of the graph a decomposition tree describes.
pub fn max_clique_p4_sparse(tree: &DecompTree) -> usize {
    max_clique_vertices(tree).len()
}

/// Lexicographically smallest maximum clique.
pub fn max_clique_vertices(tree: &DecompTree) -> VertexSet {
    match tree {
        DecompTree::Leaf(v) => vec![*v],
        DecompTree::Union(cs) => cs
            .iter()
            .map(max_clique_vertices)
            .min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)))
            .unwrap_or_default(),
        DecompTree::Join(cs) => {
            let mut out: Vec<usize> = cs.iter().flat_map(max_clique_vertices).collect();
            out.sort_unstable();
            out
        }
        DecompTree::Spider { spider, head } => match head {
            Some(h) => {
                let mut out = spider.body.clone();
                out.extend(max_clique_vertices(h));
                out.sort_unstable();
                out
            }
            None => {
                let mut candidates = vec![spider.body.clone()];
                for &(s, k) in &spider.legs {
                    let c: Vec<usize> = match spider.kind {
                        SpiderKind::Thin => vec![s, k],
                        SpiderKind::Thick => spider.body.iter().copied().filter(|&b| b != k).chain([s]).collect(),
                    };
                    if c.len() == spider.body.len() {
                        let mut c = c;
                        c.sort_unstable();
                        candidates.push(c);
                    }
                }
                candidates.into_iter().min().unwrap()
            }
        },
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::obstructions::ObstructionKind;

    /// Thin spider with body 0..t, feet t..2t (foot t+i on body i), head
    /// 2t..2t+r forming a clique.
    pub(crate) fn thin_spider(t: usize, r: usize) -> Graph {
        let mut g = Graph::new(2 * t + r);
        for i in 0..t {
            for j in i + 1..t {
                g.add_edge(i, j);
            }
            g.add_edge(i, t + i);
            for h in 0..r {
                g.add_edge(i, 2 * t + h);
            }
        }
        for a in 0..r {
            for b in a + 1..r {
                g.add_edge(2 * t + a, 2 * t + b);
            }
        }
        g
    }

    pub(crate) fn thick_spider(t: usize, r: usize) -> Graph {
        let mut g = thin_spider(t, r);
        for i in 0..t {
            for j in 0..t {
                if i == j {
                    g.remove_edge(i, t + i);
                } else {
                    g.add_edge(j, t + i);
                }
            }
        }
        g
    }

    #[test]
    fn cograph_examples() {
        assert!(matches!(is_cograph(&Graph::complete(3)), CographCheck::Cograph(_)));
        match is_cograph(&Graph::path(4)) {
            CographCheck::P4Witness(w) => assert_eq!(w, [0, 1, 2, 3]),
            _ => panic!("P4 is not a cograph"),
        }
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        match is_cograph(&two_k2.join(&two_k2)) {
            CographCheck::Cograph(t) => {
                assert!(!t.has_spider());
                assert_eq!(t.vertices(), (0..8).collect::<Vec<_>>());
            }
            _ => panic!("join of cographs is a cograph"),
        }
    }

    #[test]
    fn witness_vertices_map_to_host() {
        let g = Graph::complete(3).disjoint_union(&Graph::path(4));
        match is_cograph(&g) {
            CographCheck::P4Witness(w) => assert_eq!(w, [3, 4, 5, 6]),
            _ => panic!(),
        }
    }

    #[test]
    fn spider_extraction() {
        let thin = thin_spider(3, 0);
        let p = extract_spider(&thin).unwrap();
        assert_eq!(p.kind, SpiderKind::Thin);
        assert_eq!(p.body, vec![0, 1, 2]);
        assert_eq!(p.feet, vec![3, 4, 5]);
        assert!(p.head.is_empty());
        let thick = thick_spider(3, 0);
        let p = extract_spider(&thick).unwrap();
        assert_eq!(p.kind, SpiderKind::Thick);
        assert_eq!(p.body, vec![0, 1, 2]);
        assert_eq!(p.feet, vec![3, 4, 5]);
        assert_eq!(p.legs, vec![(3, 0), (4, 1), (5, 2)]);
        assert!(p.verify(&thick));
        assert!(extract_spider(&Graph::cycle(5)).is_none());
        // P4 is both; thin is found first
        assert_eq!(extract_spider(&Graph::path(4)).unwrap().kind, SpiderKind::Thin);
    }

    #[test]
    fn c5_admits_no_spider_partition() {
        // exhaustive: every assignment of the five vertices to body/feet/head
        // and every leg bijection for both kinds fails
        let c5 = Graph::cycle(5);
        let mut assign = [0usize; 5];
        let mut found = false;
        for code in 0..3usize.pow(5) {
            let mut c = code;
            for a in assign.iter_mut() {
                *a = c % 3;
                c /= 3;
            }
            let body: Vec<usize> = (0..5).filter(|&v| assign[v] == 0).collect();
            let feet: Vec<usize> = (0..5).filter(|&v| assign[v] == 1).collect();
            let head: Vec<usize> = (0..5).filter(|&v| assign[v] == 2).collect();
            if body.len() != feet.len() || body.len() < 2 {
                continue;
            }
            let perms: Vec<Vec<usize>> = if body.len() == 2 {
                vec![vec![0, 1], vec![1, 0]]
            } else {
                continue;
            };
            for perm in perms {
                for kind in [SpiderKind::Thin, SpiderKind::Thick] {
                    let p = SpiderPartition {
                        kind,
                        body: body.clone(),
                        feet: feet.clone(),
                        head: head.clone(),
                        legs: feet.iter().enumerate().map(|(i, &s)| (s, body[perm[i]])).collect(),
                    };
                    found |= p.verify(&c5);
                }
            }
        }
        assert!(!found);
    }

    #[test]
    fn decompose_spider_with_head() {
        // five-legged spider with a two-vertex head
        for g in [thin_spider(5, 2), thick_spider(5, 2)] {
            let t = p4_sparse_decompose(&g).unwrap();
            match &t {
                DecompTree::Spider { spider, head } => {
                    assert_eq!(spider.body, vec![0, 1, 2, 3, 4]);
                    assert_eq!(spider.feet, vec![5, 6, 7, 8, 9]);
                    assert_eq!(spider.head, vec![10, 11]);
                    assert!(head.is_some());
                }
                other => panic!("expected spider, got {other:?}"),
            }
            assert_eq!(t.vertices(), (0..12).collect::<Vec<_>>());
        }
    }

    #[test]
    fn decompose_rejects_p5() {
        let w = p4_sparse_decompose(&Graph::path(5)).unwrap_err();
        assert_eq!(w.kind, ObstructionKind::P5);
        let mut vs = w.embedding.clone();
        vs.sort_unstable();
        assert_eq!(vs, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn clique_numbers() {
        let tree = |g: &Graph| p4_sparse_decompose(g).unwrap();
        assert_eq!(max_clique_p4_sparse(&tree(&Graph::complete(4))), 4);
        assert_eq!(max_clique_p4_sparse(&tree(&thin_spider(3, 1))), 4);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_clique_p4_sparse(&tree(&two_k2)), 2);
        assert_eq!(max_clique_vertices(&tree(&two_k2)), vec![0, 1]);
        // thick spider without head: {foot} + body minus its partner
        assert_eq!(max_clique_p4_sparse(&tree(&thick_spider(3, 0))), 3);
        assert_eq!(max_clique_vertices(&tree(&thick_spider(3, 0))), vec![0, 1, 2]);
    }
}

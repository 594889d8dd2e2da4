//! Exact polynomial deletion solvers on P4-sparse graphs.
//!
//! All of them walk the union / join / spider tree from
//! [`p4_sparse_decompose`]. P4s never cross a union or join node and never
//! use an edge between a spider's body and its head, so each solver combines
//! independent answers for the children. Inside a spider, the P4s on body
//! and feet are exactly the sets `{s_i, k_i, s_j, k_j}` over leg pairs.

use serde::{Deserialize, Serialize};

use crate::decomposition::{max_clique_vertices, p4_sparse_decompose, DecompTree, SpiderKind, SpiderPartition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::obstructions::find_c4;
use crate::target::Deletions;

/// Deletion set in ids of the input graph's origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredSolution {
    pub deletions: Deletions,
    pub cost: usize,
    pub feasible: bool,
}

impl StructuredSolution {
    fn edges(g: &Graph, local: Vec<Edge>) -> Self {
        let mut es: Vec<Edge> = local.into_iter().map(|e| g.original_edge(e)).collect();
        es.sort_unstable();
        StructuredSolution {
            cost: es.len(),
            deletions: Deletions::Edges(es),
            feasible: true,
        }
    }

    fn vertices(g: &Graph, local: Vec<usize>) -> Self {
        let mut vs: Vec<usize> = local.into_iter().map(|v| g.original_id(v)).collect();
        vs.sort_unstable();
        StructuredSolution {
            cost: vs.len(),
            deletions: Deletions::Vertices(vs),
            feasible: true,
        }
    }

    fn infeasible() -> Self {
        StructuredSolution {
            deletions: Deletions::Vertices(Vec::new()),
            cost: 0,
            feasible: false,
        }
    }
}

/// Per co-component data used by the trivially perfect vertex solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoComponentSummary {
    pub vertices: VertexSet,
    pub size: usize,
    /// Clique number.
    pub omega: usize,
    /// Trivially perfect vertex-deletion number of the co-component.
    pub eta: usize,
}

fn decompose(g: &Graph) -> Result<DecompTree> {
    p4_sparse_decompose(g).map_err(|w| Error::NotP4Sparse(w.sorted_vertices()))
}

fn sorted_legs(sp: &SpiderPartition) -> Vec<(usize, usize)> {
    let mut legs = sp.legs.clone();
    legs.sort_unstable();
    legs
}

/// Minimum edge set destroying every P4 on body and feet: all but one thin
/// leg, or `{k_i s_j : i < j}` for a thick spider.
fn spider_body_edges(sp: &SpiderPartition, out: &mut Vec<Edge>) {
    let legs = sorted_legs(sp);
    match sp.kind {
        SpiderKind::Thin => {
            for &(s, k) in &legs[..legs.len() - 1] {
                out.push(Edge::new(s, k));
            }
        }
        SpiderKind::Thick => {
            for (i, &(_, k)) in legs.iter().enumerate() {
                for &(s, _) in &legs[i + 1..] {
                    out.push(Edge::new(k, s));
                }
            }
        }
    }
}

fn cograph_edges(t: &DecompTree, out: &mut Vec<Edge>) {
    match t {
        DecompTree::Leaf(_) => {}
        DecompTree::Union(cs) | DecompTree::Join(cs) => cs.iter().for_each(|c| cograph_edges(c, out)),
        DecompTree::Spider { spider, head } => {
            spider_body_edges(spider, out);
            if let Some(h) = head {
                cograph_edges(h, out);
            }
        }
    }
}

/// Minimum edge deletion to a cograph for a P4-sparse graph.
pub fn spider_edge_deletion(g: &Graph) -> Result<StructuredSolution> {
    let t = decompose(g)?;
    let mut out = Vec::new();
    cograph_edges(&t, &mut out);
    Ok(StructuredSolution::edges(g, out))
}

/// Hits every leg pair but one. The survivor is the first fully forbidden
/// pair if there is one, else the last pair. Within a pair the preferred
/// side is deleted unless it is forbidden. `None` if two pairs are fully
/// forbidden.
fn pair_cover(sp: &SpiderPartition, forbidden: &[bool], prefer_feet: bool) -> Option<Vec<usize>> {
    let legs = sorted_legs(sp);
    let locked: Vec<usize> = (0..legs.len())
        .filter(|&i| forbidden[legs[i].0] && forbidden[legs[i].1])
        .collect();
    if locked.len() > 1 {
        return None;
    }
    let survivor = locked.first().copied().unwrap_or(legs.len() - 1);
    let mut out = Vec::with_capacity(legs.len() - 1);
    for (i, &(s, k)) in legs.iter().enumerate() {
        if i == survivor {
            continue;
        }
        let (first, second) = if prefer_feet { (s, k) } else { (k, s) };
        out.push(if forbidden[first] { second } else { first });
    }
    Some(out)
}

fn cograph_vertices(t: &DecompTree, forbidden: &[bool], constrained: bool, out: &mut Vec<usize>) -> bool {
    match t {
        DecompTree::Leaf(_) => true,
        DecompTree::Union(cs) | DecompTree::Join(cs) => {
            cs.iter().all(|c| cograph_vertices(c, forbidden, constrained, out))
        }
        DecompTree::Spider { spider, head } => {
            // thin: drop feet; thick: drop body vertices, unless constrained,
            // where feet are tried first in both cases
            let prefer_feet = constrained || spider.kind == SpiderKind::Thin;
            match pair_cover(spider, forbidden, prefer_feet) {
                Some(vs) => out.extend(vs),
                None => return false,
            }
            head.as_ref()
                .is_none_or(|h| cograph_vertices(h, forbidden, constrained, out))
        }
    }
}

/// Minimum vertex deletion to a cograph for a P4-sparse graph.
pub fn spider_vertex_deletion(g: &Graph) -> Result<StructuredSolution> {
    let t = decompose(g)?;
    let mut out = Vec::new();
    let free = vec![false; g.n()];
    cograph_vertices(&t, &free, false, &mut out);
    Ok(StructuredSolution::vertices(g, out))
}

/// Minimum vertex deletion to a cograph that avoids `forbidden` (local ids
/// of `g`). Reports `feasible: false` when every such deletion fails, which
/// happens exactly when some spider has two leg pairs that are entirely
/// forbidden.
pub fn constrained_spider_vertex_deletion(g: &Graph, forbidden: &[usize]) -> Result<StructuredSolution> {
    let t = decompose(g)?;
    let mut mask = vec![false; g.n()];
    for &v in forbidden {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        mask[v] = true;
    }
    let mut out = Vec::new();
    if cograph_vertices(&t, &mask, true, &mut out) {
        Ok(StructuredSolution::vertices(g, out))
    } else {
        Ok(StructuredSolution::infeasible())
    }
}

fn tp_edges(t: &DecompTree, out: &mut Vec<Edge>) -> Result<()> {
    match t {
        DecompTree::Leaf(_) => Ok(()),
        DecompTree::Union(cs) => cs.iter().try_for_each(|c| tp_edges(c, out)),
        DecompTree::Join(cs) => {
            // C4-free: every co-component but one is a single vertex
            let big: Vec<&DecompTree> = cs.iter().filter(|c| !matches!(c, DecompTree::Leaf(_))).collect();
            match big.as_slice() {
                [] => Ok(()),
                [h] => tp_edges(h, out),
                [a, b, ..] => {
                    let (x, y) = (a.vertices(), b.vertices());
                    Err(Error::ContainsC4([x[0], y[0], x[1], y[1]]))
                }
            }
        }
        DecompTree::Spider { spider, head } => {
            spider_body_edges(spider, out);
            match head {
                Some(h) => tp_edges(h, out),
                None => Ok(()),
            }
        }
    }
}

/// Minimum edge deletion to a trivially perfect graph for a C4-free
/// P4-sparse graph.
pub fn tp_edge_final(g: &Graph) -> Result<StructuredSolution> {
    if let Some(c4) = find_c4(g) {
        let e = &c4.embedding;
        return Err(Error::ContainsC4([e[0], e[1], e[2], e[3]]));
    }
    let t = decompose(g)?;
    let mut out = Vec::new();
    tp_edges(&t, &mut out)?;
    Ok(StructuredSolution::edges(g, out))
}

fn tp_vertices(t: &DecompTree) -> Vec<usize> {
    match t {
        DecompTree::Leaf(_) => Vec::new(),
        DecompTree::Union(cs) => cs.iter().flat_map(tp_vertices).collect(),
        DecompTree::Join(cs) => {
            let (keep, summaries, kept_solution) = choose_kept_co_component(cs);
            let mut out = kept_solution;
            for (j, (c, s)) in cs.iter().zip(&summaries).enumerate() {
                if j != keep {
                    let clique = max_clique_vertices(c);
                    out.extend(s.vertices.iter().copied().filter(|v| !clique.contains(v)));
                }
            }
            out
        }
        DecompTree::Spider { spider, head } => {
            let free = vec![false; spider.body.iter().chain(&spider.feet).max().map_or(0, |&m| m + 1)];
            let mut out = pair_cover(spider, &free, true).expect("no forbidden vertices");
            if let Some(h) = head {
                out.extend(tp_vertices(h));
            }
            out
        }
    }
}

/// Picks the co-component left intact (lowest index maximizing
/// `size - omega - eta`); every other one is reduced to a maximum clique.
fn choose_kept_co_component(cs: &[DecompTree]) -> (usize, Vec<CoComponentSummary>, Vec<usize>) {
    let mut summaries = Vec::with_capacity(cs.len());
    let mut solutions = Vec::with_capacity(cs.len());
    for c in cs {
        let sol = tp_vertices(c);
        let vertices = c.vertices();
        summaries.push(CoComponentSummary {
            size: vertices.len(),
            omega: max_clique_vertices(c).len(),
            eta: sol.len(),
            vertices,
        });
        solutions.push(sol);
    }
    let gain = |s: &CoComponentSummary| (s.size - s.omega) as i64 - s.eta as i64;
    let mut keep = 0;
    for (i, s) in summaries.iter().enumerate() {
        if gain(s) > gain(&summaries[keep]) {
            keep = i;
        }
    }
    let kept = std::mem::take(&mut solutions[keep]);
    (keep, summaries, kept)
}

/// Minimum vertex deletion to a trivially perfect graph for a P4-sparse
/// graph.
pub fn tp_vertex_final(g: &Graph) -> Result<StructuredSolution> {
    let t = decompose(g)?;
    Ok(StructuredSolution::vertices(g, tp_vertices(&t)))
}

/// Co-component summaries of a P4-sparse graph (a single entry when `g` is
/// co-connected).
pub fn co_component_summaries(g: &Graph) -> Result<Vec<CoComponentSummary>> {
    let t = decompose(g)?;
    Ok(match &t {
        DecompTree::Join(cs) => choose_kept_co_component(cs).1,
        other => {
            let vertices = other.vertices();
            vec![CoComponentSummary {
                size: vertices.len(),
                omega: max_clique_vertices(other).len(),
                eta: tp_vertices(other).len(),
                vertices,
            }]
        }
    })
}

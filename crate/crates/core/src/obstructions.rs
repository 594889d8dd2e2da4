//! Forbidden induced subgraphs and the local deletion families used for
//! branching.
//!
//! Branching rules are not transcribed from a table. For each obstruction
//! kind the canonical pattern below is fed to the brute-force enumerator in
//! [`crate::oracle`], which returns every inclusion-minimal deletion set that
//! establishes the target on the pattern. Completeness of that family is what
//! makes branching on it exhaustive.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::oracle::enumerate_minimal_local_solutions;
use crate::target::{DeletionMode, DeletionTarget, Deletions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ObstructionKind {
    P4,
    C4,
    C5,
    P5,
    CoP5,
    Fork,
    Kite,
    Pan4,
    CoPan4,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 9] = [
        ObstructionKind::P4,
        ObstructionKind::C4,
        ObstructionKind::C5,
        ObstructionKind::P5,
        ObstructionKind::CoP5,
        ObstructionKind::Fork,
        ObstructionKind::Kite,
        ObstructionKind::Pan4,
        ObstructionKind::CoPan4,
    ];

    /// The seven 5-vertex graphs with at least two induced P4s, in the order
    /// used by classification.
    pub const FIVE_VERTEX: [ObstructionKind; 7] = [
        ObstructionKind::C5,
        ObstructionKind::P5,
        ObstructionKind::CoP5,
        ObstructionKind::Fork,
        ObstructionKind::Kite,
        ObstructionKind::Pan4,
        ObstructionKind::CoPan4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObstructionKind::P4 => "P4",
            ObstructionKind::C4 => "C4",
            ObstructionKind::C5 => "C5",
            ObstructionKind::P5 => "P5",
            ObstructionKind::CoP5 => "co-P5",
            ObstructionKind::Fork => "fork",
            ObstructionKind::Kite => "kite",
            ObstructionKind::Pan4 => "4-pan",
            ObstructionKind::CoPan4 => "co-4-pan",
        }
    }

    pub fn order(self) -> usize {
        match self {
            ObstructionKind::P4 | ObstructionKind::C4 => 4,
            _ => 5,
        }
    }

    /// Canonical adjacency pattern on positions `0..order()`.
    pub fn pattern(self) -> &'static Graph {
        static PATTERNS: OnceLock<HashMap<ObstructionKind, Graph>> = OnceLock::new();
        &PATTERNS.get_or_init(|| {
            let e = |n: usize, es: &[(usize, usize)]| Graph::from_edges(n, es).unwrap();
            let pan4 = e(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
            let mut m = HashMap::new();
            m.insert(ObstructionKind::P4, Graph::path(4));
            m.insert(ObstructionKind::C4, Graph::cycle(4));
            m.insert(ObstructionKind::C5, Graph::cycle(5));
            m.insert(ObstructionKind::P5, Graph::path(5));
            m.insert(ObstructionKind::CoP5, Graph::path(5).complement());
            m.insert(ObstructionKind::Fork, e(5, &[(0, 2), (1, 2), (2, 3), (3, 4)]));
            m.insert(
                ObstructionKind::Kite,
                e(5, &[(0, 1), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)]),
            );
            m.insert(ObstructionKind::CoPan4, pan4.complement());
            m.insert(ObstructionKind::Pan4, pan4);
            m
        })[&self]
    }
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A located obstruction: `embedding[p]` is the graph vertex playing
/// canonical position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionInstance {
    pub kind: ObstructionKind,
    pub embedding: Vec<usize>,
}

impl ObstructionInstance {
    /// Checks the embedding against the canonical pattern.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let pat = self.kind.pattern();
        let emb = &self.embedding;
        emb.len() == pat.n()
            && (0..pat.n()).all(|p| {
                (p + 1..pat.n()).all(|q| pat.has_edge(p, q) == g.has_edge(emb[p], emb[q]))
            })
    }

    /// Translates a rule in canonical positions into graph ids.
    pub fn map_rule(&self, rule: &Deletions) -> Deletions {
        rule.map(|p| self.embedding[p])
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut vs = self.embedding.clone();
        vs.sort_unstable();
        vs
    }
}

fn triple_edges(g: &Graph, a: usize, b: usize, c: usize) -> u8 {
    g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8
}

/// Vertices of `q` in path order if they induce a P4, starting from the
/// smaller endpoint.
pub fn p4_order(g: &Graph, q: [usize; 4]) -> Option<[usize; 4]> {
    let mut deg = [0u8; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    if edges != 3 || deg.iter().filter(|&&d| d == 1).count() != 2 || deg.contains(&0) {
        return None;
    }
    let start = (0..4).filter(|&i| deg[i] == 1).min_by_key(|&i| q[i]).unwrap();
    walk(g, q, start)
}

/// Vertices of `q` in cycle order if they induce a C4, starting from the
/// smallest vertex towards its smaller neighbour.
pub fn c4_order(g: &Graph, q: [usize; 4]) -> Option<[usize; 4]> {
    let mut deg = [0u8; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    if deg != [2, 2, 2, 2] {
        return None;
    }
    let start = (0..4).min_by_key(|&i| q[i]).unwrap();
    walk(g, q, start)
}

fn walk(g: &Graph, q: [usize; 4], start: usize) -> Option<[usize; 4]> {
    let mut out = [q[start]; 4];
    let mut used = [false; 4];
    used[start] = true;
    for slot in 1..4 {
        let prev = out[slot - 1];
        let next = (0..4)
            .filter(|&i| !used[i] && g.has_edge(prev, q[i]))
            .min_by_key(|&i| q[i])?;
        used[next] = true;
        out[slot] = q[next];
    }
    Some(out)
}

/// Visits sorted quartets whose triples all have one or two edges (the only
/// quartets that can induce a P4 or a C4) in lexicographic order. Stops when
/// `f` returns `Some`.
fn scan_quartets<T>(g: &Graph, mut f: impl FnMut([usize; 4]) -> Option<T>) -> Option<T> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let e = triple_edges(g, a, b, c);
                if e == 0 || e == 3 {
                    continue;
                }
                for d in c + 1..n {
                    if let Some(t) = f([a, b, c, d]) {
                        return Some(t);
                    }
                }
            }
        }
    }
    None
}

/// Lexicographically first induced P4, embedded in path order.
pub fn find_p4(g: &Graph) -> Option<ObstructionInstance> {
    scan_quartets(g, |q| p4_order(g, q)).map(|p| ObstructionInstance {
        kind: ObstructionKind::P4,
        embedding: p.to_vec(),
    })
}

/// Lexicographically first induced C4, embedded in cycle order.
pub fn find_c4(g: &Graph) -> Option<ObstructionInstance> {
    scan_quartets(g, |q| c4_order(g, q)).map(|c| ObstructionInstance {
        kind: ObstructionKind::C4,
        embedding: c.to_vec(),
    })
}

/// Sorted vertex sets of all induced P4s, in lexicographic order.
pub fn p4_vertex_sets(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    scan_quartets::<()>(g, |q| {
        if p4_order(g, q).is_some() {
            out.push(q);
        }
        None
    });
    out
}

pub fn is_p4_free(g: &Graph) -> bool {
    find_p4(g).is_none()
}

pub fn is_trivially_perfect(g: &Graph) -> bool {
    DeletionTarget::P4AndC4Free.is_satisfied(g)
}

fn count_p4s_in_five(g: &Graph, five: &[usize; 5]) -> usize {
    (0..5)
        .filter(|&skip| {
            let mut q = [0; 4];
            let mut j = 0;
            for (i, &v) in five.iter().enumerate() {
                if i != skip {
                    q[j] = v;
                    j += 1;
                }
            }
            p4_order(g, q).is_some()
        })
        .count()
}

fn permutations5() -> &'static [[usize; 5]] {
    static PERMS: OnceLock<Vec<[usize; 5]>> = OnceLock::new();
    PERMS.get_or_init(|| {
        let mut out = Vec::with_capacity(120);
        let mut p = [0usize; 5];
        fn rec(depth: usize, used: &mut [bool; 5], p: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
            if depth == 5 {
                out.push(*p);
                return;
            }
            for i in 0..5 {
                if !used[i] {
                    used[i] = true;
                    p[depth] = i;
                    rec(depth + 1, used, p, out);
                    used[i] = false;
                }
            }
        }
        rec(0, &mut [false; 5], &mut p, &mut out);
        out
    })
}

/// Identifies which 5-vertex obstruction (if any) the vertices `five` of `g`
/// induce, with the lexicographically first position map.
pub fn classify_in(g: &Graph, five: &[usize; 5]) -> Option<ObstructionInstance> {
    let mut m = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            m += g.has_edge(five[i], five[j]) as usize;
        }
    }
    for kind in ObstructionKind::FIVE_VERTEX {
        let pat = kind.pattern();
        if pat.m() != m {
            continue;
        }
        for perm in permutations5() {
            let emb: Vec<usize> = perm.iter().map(|&i| five[i]).collect();
            let ok = (0..5).all(|p| (p + 1..5).all(|q| pat.has_edge(p, q) == g.has_edge(emb[p], emb[q])));
            if ok {
                return Some(ObstructionInstance { kind, embedding: emb });
            }
        }
    }
    None
}

/// Classifies a graph on exactly five vertices.
pub fn classify_5graph(g5: &Graph) -> Result<Option<ObstructionInstance>> {
    if g5.n() != 5 {
        return Err(Error::WrongVertexCount {
            expected: 5,
            got: g5.n(),
        });
    }
    Ok(classify_in(g5, &[0, 1, 2, 3, 4]))
}

fn find_five_vertex(g: &Graph, allow_c5: bool) -> Option<ObstructionInstance> {
    let n = g.n();
    scan_quartets(g, |q| {
        p4_order(g, q)?;
        for x in (0..n).filter(|x| !q.contains(x)) {
            let mut five = [q[0], q[1], q[2], q[3], x];
            five.sort_unstable();
            if count_p4s_in_five(g, &five) >= 2 {
                let inst = classify_in(g, &five).expect("five vertices with two P4s must be an obstruction");
                if allow_c5 || inst.kind != ObstructionKind::C5 {
                    return Some(inst);
                }
            }
        }
        None
    })
}

/// Five vertices inducing at least two P4s, or `None` if `g` is P4-sparse.
///
/// Search order: induced P4s in lexicographic order of their vertex sets,
/// then the smallest fifth vertex completing an obstruction.
pub fn find_p4_sparse_obstruction(g: &Graph) -> Option<ObstructionInstance> {
    find_five_vertex(g, true)
}

/// Like [`find_p4_sparse_obstruction`] but never reports a C5.
pub fn find_extended_obstruction(g: &Graph) -> Option<ObstructionInstance> {
    find_five_vertex(g, false)
}

pub fn is_p4_sparse(g: &Graph) -> bool {
    find_p4_sparse_obstruction(g).is_none()
}

pub fn is_extended_p4_sparse(g: &Graph) -> bool {
    find_extended_obstruction(g).is_none()
}

/// Sorted vertex sets of all induced 5-cycles.
pub fn induced_c5s(g: &Graph) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let n = g.n();
    scan_quartets::<()>(g, |q| {
        if p4_order(g, q).is_some() {
            for x in q[3] + 1..n {
                let five = [q[0], q[1], q[2], q[3], x];
                if (0..5).all(|i| five.iter().filter(|&&y| y != five[i] && g.has_edge(five[i], y)).count() == 2)
                    && count_p4s_in_five(g, &five) == 5
                {
                    out.push(five);
                }
            }
        }
        None
    });
    out
}

/// Complete family of inclusion-minimal local deletion sets for one
/// obstruction kind, in canonical positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRuleSet {
    pub kind: ObstructionKind,
    pub mode: DeletionMode,
    pub target: DeletionTarget,
    pub rules: Vec<Deletions>,
}

impl BranchRuleSet {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.rules.iter().map(Deletions::len).collect();
        s.sort_unstable();
        s
    }
}

fn supported(kind: ObstructionKind, mode: DeletionMode, target: DeletionTarget) -> bool {
    match kind {
        ObstructionKind::C4 => mode == DeletionMode::Edge && target == DeletionTarget::P4AndC4Free,
        _ => true,
    }
}

type RuleKey = (ObstructionKind, DeletionMode, DeletionTarget);

fn rule_cache() -> &'static HashMap<RuleKey, BranchRuleSet> {
    static CACHE: OnceLock<HashMap<RuleKey, BranchRuleSet>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut m = HashMap::new();
        for kind in ObstructionKind::ALL {
            for mode in [DeletionMode::Edge, DeletionMode::Vertex] {
                for target in [DeletionTarget::P4Free, DeletionTarget::P4AndC4Free] {
                    if !supported(kind, mode, target) {
                        continue;
                    }
                    let rules = enumerate_minimal_local_solutions(kind.pattern(), mode, target)
                        .expect("canonical patterns have at most five vertices");
                    m.insert((kind, mode, target), BranchRuleSet { kind, mode, target, rules });
                }
            }
        }
        m
    })
}

/// The branching family for `(kind, mode, target)`, ordered by size and then
/// lexicographically.
pub fn synthesize_rules(
    kind: ObstructionKind,
    mode: DeletionMode,
    target: DeletionTarget,
) -> Result<&'static BranchRuleSet> {
    rule_cache()
        .get(&(kind, mode, target))
        .ok_or_else(|| Error::UnsupportedRules(format!("{kind} / {mode} / {target}")))
}

/// Every supported rule family, in a stable order.
pub fn all_rule_sets() -> Vec<&'static BranchRuleSet> {
    let mut v: Vec<_> = rule_cache().values().collect();
    v.sort_by_key(|r| (r.kind, r.mode, r.target));
    v
}

/// The three singleton positions and the pair position of the
/// cograph vertex-deletion family of a non-C5 five-vertex obstruction.
pub fn breaking_vertices(kind: ObstructionKind) -> Result<([usize; 3], [usize; 2])> {
    let bad = || Error::NoBreakingVertices {
        kind: kind.name().to_string(),
    };
    if kind.order() != 5 {
        return Err(bad());
    }
    let rules = synthesize_rules(kind, DeletionMode::Vertex, DeletionTarget::P4Free)?;
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    for r in &rules.rules {
        match r {
            Deletions::Vertices(vs) if vs.len() == 1 => singles.push(vs[0]),
            Deletions::Vertices(vs) if vs.len() == 2 => pairs.push([vs[0], vs[1]]),
            _ => return Err(bad()),
        }
    }
    if singles.len() != 3 || pairs.len() != 1 {
        return Err(bad());
    }
    Ok(([singles[0], singles[1], singles[2]], pairs[0]))
}

/// Maps canonical edges of `kind` to edges of the host graph.
pub fn canonical_edges(kind: ObstructionKind) -> Vec<Edge> {
    kind.pattern().edges()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(g: &Graph) -> ObstructionInstance {
        find_p4_sparse_obstruction(g).unwrap()
    }

    #[test]
    fn patterns_have_two_p4s_and_are_distinct() {
        for kind in ObstructionKind::FIVE_VERTEX {
            let p = kind.pattern();
            assert!(count_p4s_in_five(p, &[0, 1, 2, 3, 4]) >= 2, "{kind}");
            assert_eq!(classify_5graph(p).unwrap().unwrap().kind, kind);
        }
        assert_eq!(
            ObstructionKind::CoP5.pattern(),
            &ObstructionKind::P5.pattern().complement()
        );
        assert_eq!(
            ObstructionKind::CoPan4.pattern(),
            &ObstructionKind::Pan4.pattern().complement()
        );
    }

    #[test]
    fn find_p4_examples() {
        let p4 = find_p4(&Graph::path(4)).unwrap();
        assert_eq!(p4.embedding, vec![0, 1, 2, 3]);
        assert!(find_c4(&Graph::complete(4)).is_none());
        // lexicographically first quartet of C5 is {0,1,2,3}
        let c5 = find_p4(&Graph::cycle(5)).unwrap();
        assert_eq!(c5.embedding, vec![0, 1, 2, 3]);
        let c4 = find_c4(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.embedding, vec![0, 1, 2, 3]);
    }

    #[test]
    fn p4_sparse_obstruction_examples() {
        let p5_plus = Graph::path(5).disjoint_union(&Graph::new(3));
        let i = inst(&p5_plus);
        assert_eq!(i.kind, ObstructionKind::P5);
        assert_eq!(i.sorted_vertices(), vec![0, 1, 2, 3, 4]);
        assert!(i.is_valid_in(&p5_plus));
        assert_eq!(inst(&Graph::cycle(5)).kind, ObstructionKind::C5);
        // thin spider |K| = 3: body 0,1,2 feet 3,4,5
        let thin = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(find_p4_sparse_obstruction(&thin).is_none());
    }

    #[test]
    fn extended_obstruction_skips_c5() {
        assert!(find_extended_obstruction(&Graph::cycle(5)).is_none());
        assert_eq!(
            find_extended_obstruction(&Graph::path(5)).unwrap().kind,
            ObstructionKind::P5
        );
        let fork = ObstructionKind::Fork.pattern();
        assert_eq!(find_extended_obstruction(fork).unwrap().kind, ObstructionKind::Fork);
    }

    #[test]
    fn classify_examples() {
        let house = Graph::path(5).complement();
        assert_eq!(classify_5graph(&house).unwrap().unwrap().kind, ObstructionKind::CoP5);
        assert_eq!(classify_5graph(&Graph::cycle(5)).unwrap().unwrap().kind, ObstructionKind::C5);
        assert!(classify_5graph(&Graph::complete(5)).unwrap().is_none());
        assert!(matches!(
            classify_5graph(&Graph::path(4)),
            Err(Error::WrongVertexCount { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn rule_examples() {
        let e = |a, b| Edge::new(a, b);
        let p5 = synthesize_rules(ObstructionKind::P5, DeletionMode::Edge, DeletionTarget::P4Free).unwrap();
        assert_eq!(
            p5.rules,
            vec![
                Deletions::Edges(vec![e(1, 2)]),
                Deletions::Edges(vec![e(2, 3)]),
                Deletions::Edges(vec![e(0, 1), e(3, 4)]),
            ]
        );
        let c4 = synthesize_rules(ObstructionKind::C4, DeletionMode::Edge, DeletionTarget::P4AndC4Free).unwrap();
        assert_eq!(c4.sizes(), vec![2; 6]);
        let c5 = synthesize_rules(ObstructionKind::C5, DeletionMode::Vertex, DeletionTarget::P4Free).unwrap();
        assert_eq!(c5.sizes(), vec![2; 10]);
        let pan = synthesize_rules(ObstructionKind::Pan4, DeletionMode::Vertex, DeletionTarget::P4AndC4Free).unwrap();
        assert_eq!(pan.sizes(), vec![1, 1, 2, 2, 2]);
        assert!(synthesize_rules(ObstructionKind::C4, DeletionMode::Vertex, DeletionTarget::P4Free).is_err());
    }

    #[test]
    fn breaking_vertex_examples() {
        assert_eq!(breaking_vertices(ObstructionKind::P5).unwrap(), ([1, 2, 3], [0, 4]));
        assert!(breaking_vertices(ObstructionKind::Fork).is_ok());
        assert!(breaking_vertices(ObstructionKind::Kite).is_ok());
        assert!(breaking_vertices(ObstructionKind::C5).is_err());
        assert!(breaking_vertices(ObstructionKind::P4).is_err());
    }

    #[test]
    fn c5_listing() {
        assert_eq!(induced_c5s(&Graph::cycle(5)), vec![[0, 1, 2, 3, 4]]);
        assert!(induced_c5s(&Graph::path(5)).is_empty());
        let two = Graph::cycle(5).disjoint_union(&Graph::cycle(5));
        assert_eq!(induced_c5s(&two).len(), 2);
    }
}

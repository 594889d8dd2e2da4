use proptest::prelude::*;

use p4tract::decomposition::{max_clique_vertices, p4_sparse_decompose};
use p4tract::generate::{random_p4_sparse, rng_from_seed};
use p4tract::graph::{Edge, Graph};
use p4tract::hitting_set::HittingState;
use p4tract::io::{parse_instance, write_instance};
use p4tract::obstructions::{find_p4_sparse_obstruction, is_p4_free};
use p4tract::oracle::{for_each_combination, oracle_min_edge_deletion, oracle_min_vertex_deletion, oracle_minimum, OracleLimits};
use p4tract::search::{minimize, solve, verify_solution, Problem, SearchOptions};
use p4tract::spider_solvers::constrained_spider_vertex_deletion;
use p4tract::{DeletionMode, DeletionTarget, Deletions};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn p4_sparse(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_p4_sparse(n, &mut rng_from_seed(seed)))
}

fn lim() -> OracleLimits {
    OracleLimits::default()
}

fn brute_clique(g: &Graph) -> usize {
    (0..=g.n())
        .rev()
        .find(|&k| for_each_combination(g.n(), k, |c| g.is_clique(c)))
        .unwrap_or(0)
}

fn is_partition(parts: &[Vec<usize>], n: usize) -> bool {
    let mut all: Vec<usize> = parts.concat();
    all.sort_unstable();
    all == (0..n).collect::<Vec<_>>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in graph(10)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn components_partition_vertices(g in graph(10)) {
        prop_assert!(is_partition(&g.components(), g.n()));
        prop_assert!(is_partition(&g.co_components(), g.n()));
        prop_assert_eq!(g.co_components(), g.complement().components());
        for comp in g.components() {
            for other in g.components().iter().filter(|o| *o != &comp) {
                prop_assert!(comp.iter().all(|&u| other.iter().all(|&v| !g.has_edge(u, v))));
            }
        }
    }

    #[test]
    fn deleting_vertices_is_inducing_the_rest(g in graph(9), mask in any::<u16>()) {
        let del: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let keep: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 0).collect();
        let (a, amap) = g.delete_vertices(&del).unwrap();
        let (b, bmap) = g.induced(&keep).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&amap, &keep);
        prop_assert_eq!(bmap, keep.clone());
        for (i, &v) in keep.iter().enumerate() {
            prop_assert_eq!(a.original_id(i), v);
        }
    }

    #[test]
    fn deleting_edges_removes_exactly_them(g in graph(8), pick in any::<u32>()) {
        let es: Vec<Edge> = g.edges().into_iter().enumerate().filter(|(i, _)| pick >> (i % 32) & 1 == 1).map(|(_, e)| e).collect();
        let h = g.delete_edges(&es).unwrap();
        prop_assert_eq!(h.m(), g.m() - es.len());
        prop_assert!(es.iter().all(|e| !h.has_edge(e.u, e.v)));
    }

    #[test]
    fn decomposition_iff_no_obstruction(g in graph(7)) {
        prop_assert_eq!(find_p4_sparse_obstruction(&g).is_none(), p4_sparse_decompose(&g).is_ok());
        if let Err(w) = p4_sparse_decompose(&g) {
            prop_assert!(w.is_valid_in(&g));
        }
    }

    #[test]
    fn max_clique_matches_brute_force(g in p4_sparse(10)) {
        let t = p4_sparse_decompose(&g).unwrap();
        let c = max_clique_vertices(&t);
        prop_assert!(g.is_clique(&c));
        prop_assert_eq!(c.len(), brute_clique(&g));
    }

    #[test]
    fn instance_round_trip(g in graph(12)) {
        let text = write_instance(&g, &["seed: 1".to_string()]);
        prop_assert_eq!(parse_instance(&text).unwrap().graph, g);
    }

    #[test]
    fn oracle_minimum_is_monotone_in_forbidden_edges(g in graph(6), pick in any::<u16>()) {
        let t = DeletionTarget::P4Free;
        let es = g.edges();
        let forbidden: Vec<Edge> = es.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &e)| e).collect();
        let free = oracle_min_edge_deletion(&g, t, &[], &lim()).unwrap().unwrap().minimum;
        if let Some(r) = oracle_min_edge_deletion(&g, t, &forbidden, &lim()).unwrap() {
            prop_assert!(r.minimum >= free);
        }
    }

    #[test]
    fn hitting_state_stays_consistent(g in graph(8), ops in proptest::collection::vec((any::<bool>(), any::<u8>()), 0..6)) {
        let mut s = HittingState::new(&g, 8);
        for (mark, pick) in ops {
            let candidates: Vec<usize> = (0..s.graph.n()).filter(|&v| !s.marked[v]).collect();
            if candidates.is_empty() {
                break;
            }
            let v = candidates[pick as usize % candidates.len()];
            if mark { s.mark(v) } else { s.include(&[v]) }
            prop_assert!(s.is_consistent());
            let marks = s.marks();
            prop_assert!(marks.iter().all(|m| !s.chosen.contains(m)));
        }
    }

    #[test]
    fn constrained_spider_deletion_matches_oracle(g in p4_sparse(9), mask in any::<u16>()) {
        let forbidden: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let s = constrained_spider_vertex_deletion(&g, &forbidden).unwrap();
        let o = oracle_min_vertex_deletion(&g, DeletionTarget::P4Free, &forbidden, &lim()).unwrap();
        prop_assert_eq!(s.feasible, o.is_some());
        if let Some(o) = o {
            prop_assert_eq!(s.cost, o.minimum);
            let Deletions::Vertices(vs) = &s.deletions else { unreachable!() };
            prop_assert!(vs.iter().all(|v| !forbidden.contains(v)));
            prop_assert!(is_p4_free(&s.deletions.apply(&g).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solvers_are_sound_and_optimal(g in graph(6)) {
        for p in Problem::ALL {
            let m = minimize(&g, p, SearchOptions::default()).unwrap();
            let o = oracle_minimum(&g, p.mode(), p.target(), &lim()).unwrap();
            prop_assert_eq!(m.k, o.minimum, "{}", p);
            prop_assert!(verify_solution(&g, p, &m.solution));
            prop_assert!(m.solution.budget_used <= m.k);
            prop_assert!(m.stats.leaves <= m.stats.nodes);
            if m.k > 0 {
                let (below, _) = solve(&g, m.k as i64 - 1, p, SearchOptions::default()).unwrap();
                prop_assert!(!below.feasible);
            }
        }
    }

    #[test]
    fn complement_deletion_counts_additions(g in graph(6)) {
        let c = g.complement();
        let k = minimize(&c, Problem::CographEdge, SearchOptions::default()).unwrap().k;
        let non_edges = c.edges();
        let additions = (0..=non_edges.len())
            .find(|&j| for_each_combination(non_edges.len(), j, |idx| {
                let mut h = g.clone();
                for &i in idx {
                    h.add_edge(non_edges[i].u, non_edges[i].v);
                }
                is_p4_free(&h)
            }))
            .unwrap();
        prop_assert_eq!(k, additions);
    }

    #[test]
    fn parallel_search_finds_the_same_minimum(g in graph(7)) {
        for p in [Problem::CographEdge, Problem::TpEdge, Problem::CographVertexHs, Problem::TpVertex] {
            let a = minimize(&g, p, SearchOptions { threads: 1 }).unwrap();
            let b = minimize(&g, p, SearchOptions { threads: 3 }).unwrap();
            prop_assert_eq!(a.k, b.k);
            prop_assert_eq!(a.solution, b.solution);
        }
    }

    #[test]
    fn oracle_witnesses_satisfy_the_target(g in graph(6)) {
        for t in [DeletionTarget::P4Free, DeletionTarget::P4AndC4Free] {
            let a = oracle_minimum(&g, DeletionMode::Vertex, t, &lim()).unwrap();
            prop_assert!(t.is_satisfied(&a.witness.apply(&g).unwrap()));
        }
    }
}

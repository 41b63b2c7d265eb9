use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::decomp::{NodeId, NodeKind, SpqrTree};
use crate::graph::Graph;
use crate::oracle::brute_force_bend_min;

fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
}

fn solve_min(g: &Graph) -> Option<usize> {
    solve(g, 8).unwrap().map(|s| s.total_bends)
}

#[test]
fn cycles_freeze() {
    assert_eq!(solve_min(&cycle(3)), Some(1));
    assert_eq!(solve_min(&cycle(4)), Some(0));
    assert_eq!(solve_min(&cycle(5)), Some(0));
    assert!(solve(&cycle(3), 0).unwrap().is_none());
    assert_eq!(solve(&cycle(3), 1).unwrap().unwrap().total_bends, 1);
}

#[test]
fn doubled_edge_needs_two_bends() {
    let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
    assert_eq!(solve_min(&g), Some(2));
}

#[test]
fn k4_needs_four_bends() {
    let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert!(solve(&g, 3).unwrap().is_none());
    let sol = solve(&g, 4).unwrap().unwrap();
    assert_eq!(sol.total_bends, 4);
    let (rep, _) = sol.components[0].rep.as_ref().unwrap();
    assert!(rep.validate().is_empty());
}

#[test]
fn matches_oracle_on_small_biconnected_graphs() {
    let theta = Graph::new(4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
    let wheel =
        Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)])
            .unwrap();
    let prism = Graph::new(
        6,
        vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    for g in [theta, wheel, prism] {
        let want = brute_force_bend_min(&g, 8).unwrap();
        assert_eq!(solve_min(&g), want);
    }
}

#[test]
fn bowtie_merges_at_the_shared_vertex() {
    let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
    let sol = solve(&g, 8).unwrap().unwrap();
    assert_eq!(sol.total_bends, 2);
    let (rep, _) = sol.components[0].rep.as_ref().unwrap();
    assert!(rep.validate().is_empty());
}

#[test]
fn pendant_edge_merges_free() {
    let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
    assert_eq!(solve_min(&g), Some(0));
}

#[test]
fn components_add_up() {
    let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    let sol = solve(&g, 8).unwrap().unwrap();
    assert_eq!(sol.total_bends, 2);
    assert_eq!(sol.components.len(), 2);
}

#[test]
fn nonplanar_input_is_rejected() {
    let mut edges = Vec::new();
    for a in 0..5 {
        for b in (a + 1)..5 {
            edges.push((a, b));
        }
    }
    let g = Graph::new(5, edges).unwrap();
    assert!(solve(&g, 8).is_err());
}

#[test]
fn chain_spirality_set_counts_pinned_turns() {
    let theta = Graph::new(4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
    let t = SpqrTree::build(&theta).unwrap();
    let rho = t
        .qstar_nodes()
        .into_iter()
        .find(|&q| t.chain(q).unwrap().edges.len() == 1)
        .unwrap();
    let t = t.root_tree(rho).unwrap();
    let child = t.root_child();
    let q = t
        .children(child)
        .iter()
        .copied()
        .find(|&m| t.kind(m) == NodeKind::Qstar && t.chain(m).unwrap().inner.len() == 1)
        .unwrap();
    let params = SolveParams { budget: 2, low: 2 };
    let set = qstar_spirality_set(&theta, &t, q, params, &BTreeSet::new());
    assert_eq!(set[&0].cost, 0);
    assert_eq!(set[&2].cost, 0);
    assert_eq!(set[&-2].cost, 0);
    assert_eq!(set[&4].cost, 1);
    assert_eq!(set[&6].cost, 2);
    assert!(!set.contains_key(&1));
}

fn ladder(m: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 0..m {
        edges.push((2 * j, 2 * j + 1));
    }
    for j in 0..m - 1 {
        edges.push((2 * j, 2 * j + 2));
        edges.push((2 * j + 1, 2 * j + 3));
    }
    Graph::new(2 * m, edges).unwrap()
}

/// The series and parallel composition rules must reproduce exactly the
/// sets the explicit frame expansion computes, node by node, over every
/// rooting of some series-parallel blocks: a three-path bundle, a block
/// with doubled edges (spacer poles and degree-four junctions), and two
/// ladders (alternating series and parallel nodes).
#[test]
fn composed_sets_match_expansion() {
    let long_theta = Graph::new(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
    let doubled_triangle =
        Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]).unwrap();
    for (g, budget) in [(long_theta, 3), (doubled_triangle, 6), (ladder(4), 2), (ladder(5), 2)] {
        let params = SolveParams { budget, low: count_low(&g) };
        let cons = BlockConstraints::default();
        let tree = SpqrTree::build(&g).unwrap();
        for rho in tree.qstar_nodes() {
            let t = tree.root_tree(rho).unwrap();
            let mut sets: BTreeMap<NodeId, SpirSet> = BTreeMap::new();
            for nu in post_order(&t) {
                let fast = compute_set(&g, &t, nu, &sets, params, &cons);
                if matches!(t.kind(nu), NodeKind::S | NodeKind::P) {
                    let slow = expand::expand_set(&g, &t, nu, &sets, params, &cons, None);
                    let a: Vec<(i32, usize)> = fast.iter().map(|(&k, e)| (k, e.cost)).collect();
                    let b: Vec<(i32, usize)> = slow.iter().map(|(&k, e)| (k, e.cost)).collect();
                    assert_eq!(a, b, "node {nu} of {:?}", t.kind(nu));
                }
                sets.insert(nu, fast);
            }
        }
    }
}

#[test]
fn series_parallel_blocks_match_oracle() {
    let doubled_triangle =
        Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]).unwrap();
    let double_theta =
        Graph::new(6, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)])
            .unwrap();
    for g in [doubled_triangle, double_theta, ladder(3), ladder(4)] {
        let want = brute_force_bend_min(&g, 8).unwrap();
        assert_eq!(solve_min(&g), want, "{:?}", g);
    }
    assert_eq!(solve_min(&ladder(6)), Some(0));
}

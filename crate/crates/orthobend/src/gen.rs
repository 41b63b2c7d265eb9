//! Instance generators: ladders for scaling runs and seeded random planar
//! graphs of maximum degree 4 for corpus tests. Randomness is deterministic
//! per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::planar::planar_embed;

/// The m-rung ladder: two rails of length m−1 joined by m rungs. Degree 3
/// everywhere except the four corners; rectilinear (0 bends) for m ≥ 3.
pub fn ladder(m: usize) -> Graph {
    assert!(m >= 2, "a ladder needs two rungs");
    let mut edges = Vec::new();
    for j in 0..m {
        edges.push((2 * j, 2 * j + 1));
        if j + 1 < m {
            edges.push((2 * j, 2 * j + 2));
            edges.push((2 * j + 1, 2 * j + 3));
        }
    }
    Graph::new(2 * m, edges).unwrap()
}

fn grow(g: &mut Vec<(usize, usize)>, n: usize, target: usize, rng: &mut ChaCha8Rng) {
    let mut deg = vec![0usize; n];
    for &(u, v) in g.iter() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut tries = 40 * (target + 1);
    while g.len() < target && tries > 0 {
        tries -= 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || deg[u] >= 4 || deg[v] >= 4 {
            continue;
        }
        g.push((u, v));
        let cand = Graph::new(n, g.clone()).unwrap();
        if planar_embed(&cand).is_none() {
            g.pop();
        } else {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
}

/// Random planar graph of maximum degree 4 on `n` vertices with about
/// `edge_target` edges; may be disconnected and may repeat an edge pair.
pub fn random_planar(n: usize, edge_target: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    grow(&mut edges, n, edge_target, &mut rng);
    Graph::new(n, edges).unwrap()
}

/// Like [`random_planar`] but seeded with a random degree-capped spanning
/// tree, so the result is connected.
pub fn random_connected_planar(n: usize, edge_target: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    let mut deg = vec![0usize; n];
    for i in 1..n {
        // Some earlier vertex always has slack: a tree on i+1 vertices uses
        // 2i of its 4(i+1) endpoint capacity.
        let v = loop {
            let v = order[rng.gen_range(0..i)];
            if deg[v] < 4 {
                break v;
            }
        };
        edges.push((order[i], v));
        deg[order[i]] += 1;
        deg[v] += 1;
    }
    grow(&mut edges, n, edge_target, &mut rng);
    Graph::new(n, edges).unwrap()
}

/// Every connected simple planar graph with maximum degree 4 on 1..=`max_n`
/// vertices, one representative per isomorphism class, ordered by vertex
/// count and then by lexicographically smallest edge set.
///
/// Edge sets over the `n(n-1)/2` vertex pairs are walked as bitmasks in
/// increasing order. The first mask of an isomorphism class to survive the
/// degree and connectivity filters is its representative; the class is then
/// retired by inserting the mask's whole permutation orbit into a seen-set,
/// so no isomorph is ever re-examined. Planarity is checked once per class.
pub fn connected_catalog(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 7, "pair masks are walked exhaustively; sized for n <= 7");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut pair_bit = [[0u32; 7]; 7];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            pair_bit[i][j] = b as u32;
            pair_bit[j][i] = b as u32;
        }
        let perms = permutations_of(n);
        let relabel = |mask: u32, p: &[usize]| -> u32 {
            let mut out = 0u32;
            let mut left = mask;
            while left != 0 {
                let b = left.trailing_zeros() as usize;
                left &= left - 1;
                let (i, j) = pairs[b];
                out |= 1 << pair_bit[p[i]][p[j]];
            }
            out
        };
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() as usize > 2 * n {
                continue; // degree sum over 4n
            }
            let mut deg = [0usize; 7];
            let mut reach = 1u8 << 0;
            let mut left = mask;
            while left != 0 {
                let b = left.trailing_zeros() as usize;
                left &= left - 1;
                let (i, j) = pairs[b];
                deg[i] += 1;
                deg[j] += 1;
            }
            if deg[..n].iter().any(|&d| d > 4) {
                continue;
            }
            // connectivity: grow the reachable set from vertex 0
            loop {
                let before = reach;
                let mut left = mask;
                while left != 0 {
                    let b = left.trailing_zeros() as usize;
                    left &= left - 1;
                    let (i, j) = pairs[b];
                    if reach & (1 << i) != 0 || reach & (1 << j) != 0 {
                        reach |= (1 << i) | (1 << j);
                    }
                }
                if reach == before {
                    break;
                }
            }
            if reach.count_ones() as usize != n {
                continue;
            }
            if seen.contains(&mask) {
                continue;
            }
            for p in &perms {
                seen.insert(relabel(mask, p));
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask & (1 << b) != 0)
                .map(|(_, &pr)| pr)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            if planar_embed(&g).is_some() {
                out.push(g);
            }
        }
    }
    out
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            heap(items, k + 1, out);
            items.swap(k, i);
        }
    }
    heap(&mut items, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    #[test]
    fn catalog_counts_match_hand_enumeration() {
        // 1: K1. 2: K2. 3: path, triangle. 4: the six connected graphs on
        // four vertices, all planar with degree <= 3. 5: the 21 connected
        // graphs on five vertices minus K5.
        let cat = connected_catalog(5);
        let by_n: Vec<usize> =
            (1..=5).map(|n| cat.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(by_n, vec![1, 1, 2, 6, 20]);
        for g in &cat {
            assert!(g.is_connected());
            assert!((0..g.n()).all(|v| g.degree(v) <= 4));
            assert!(planar_embed(g).is_some());
        }
    }

    #[test]
    fn ladders_are_rectilinear() {
        let g = ladder(5);
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 13);
        assert_eq!(solve(&g, 0).unwrap().map(|s| s.total_bends), Some(0));
    }

    #[test]
    fn generated_graphs_respect_the_contract() {
        for seed in 0..30 {
            let g = random_planar(8, 10, seed);
            assert!((0..g.n()).all(|v| g.degree(v) <= 4));
            assert!(planar_embed(&g).is_some());
            let c = random_connected_planar(8, 10, seed);
            assert!(c.is_connected());
            assert!((0..c.n()).all(|v| c.degree(v) <= 4));
            assert!(planar_embed(&c).is_some());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_connected_planar(9, 12, 7);
        let b = random_connected_planar(9, 12, 7);
        assert_eq!(a.to_json(), b.to_json());
    }
}

//! Brute-force ground truth for tests: global bend minimization by
//! exhaustive embedding enumeration, and flow-free representation
//! enumeration on tiny plane graphs. Deliberately dumb and auditable.

use crate::flow::{constrained_bend_min, ConstraintSet};
use crate::graph::Graph;
use crate::ortho::{Bend, OrthoRep};
use crate::planar::{for_each_plane_graph, rev, PlanarError, PlaneGraph};

/// Largest vertex count the exhaustive-embedding oracle accepts by default.
pub const ORACLE_GUARD: usize = 10;

/// Minimum bends over every plane graph of every component of `g`, or None
/// when that minimum exceeds `cap`.
pub fn brute_force_bend_min(g: &Graph, cap: usize) -> Result<Option<usize>, PlanarError> {
    brute_force_bend_min_with_guard(g, cap, ORACLE_GUARD)
}

pub fn brute_force_bend_min_with_guard(
    g: &Graph,
    cap: usize,
    max_n: usize,
) -> Result<Option<usize>, PlanarError> {
    if g.n() > max_n {
        return Err(PlanarError::TooLarge { n: g.n(), max: max_n });
    }
    let mut total = 0usize;
    for comp in g.components() {
        let edges: Vec<usize> = (0..g.edge_count())
            .filter(|&e| comp.binary_search(&g.endpoints(e).0).is_ok())
            .collect();
        if edges.is_empty() {
            continue; // isolated vertex: a point, no bends
        }
        let (sub, _) = g.edge_subgraph(&edges);
        let mut best: Option<usize> = None;
        for_each_plane_graph(&sub, max_n, &mut |pg| {
            if best == Some(0) {
                return;
            }
            let rep = constrained_bend_min(pg, &ConstraintSet::new())
                .expect("no constraints to conflict")
                .expect("an unconstrained embedding always has a representation");
            let b = rep.total_bends();
            if best.map_or(true, |cur| b < cur) {
                best = Some(b);
            }
        })?;
        total += best.expect("connected component has at least one plane graph");
    }
    Ok(if total <= cap { Some(total) } else { None })
}

/// Every representation of `pg` with at most `max_bends` bends: all corner
/// assignments meeting the 360° sums, combined with all per-edge bend
/// strings, filtered by the face equations. Flow-free by design.
pub fn enumerate_representations(
    pg: &PlaneGraph,
    max_bends: usize,
) -> Result<Vec<OrthoRep>, PlanarError> {
    if pg.graph().n() > 6 {
        return Err(PlanarError::TooLarge { n: pg.graph().n(), max: 6 });
    }
    if max_bends > 4 {
        return Err(PlanarError::TooLarge { n: max_bends, max: 4 });
    }
    let g = pg.graph();
    if g.edge_count() == 0 {
        // No corners and no face equations: the bare point is the one
        // representation.
        let angles = vec![Vec::new(); g.n()];
        let rep = OrthoRep::new(pg.clone(), Vec::new(), angles)
            .expect("edgeless representation");
        return Ok(vec![rep]);
    }
    let options: Vec<Vec<Vec<u16>>> =
        (0..g.n()).map(|v| corner_assignments(g.degree(v))).collect();
    let nf = pg.faces().len();
    let mut out = Vec::new();

    // Odometer over per-vertex corner assignments.
    let mut pick = vec![0usize; g.n()];
    loop {
        let angles: Vec<Vec<u16>> =
            (0..g.n()).map(|v| options[v][pick[v]].clone()).collect();
        // Per-face residual: net left-minus-right bend turns still needed.
        let mut residual = vec![0i64; nf];
        for f in pg.faces() {
            let mut s = if f.external { -4i64 } else { 4 };
            for &d in &f.darts {
                let w = pg.head(d);
                let i = pg.pos_in_rotation(rev(d));
                s -= 2 - angles[w][i] as i64 / 90;
            }
            residual[f.id] = s;
        }
        let deficit: i64 = residual.iter().filter(|&&r| r > 0).sum();
        if deficit <= max_bends as i64 {
            let mut strings: Vec<Vec<Bend>> = vec![Vec::new(); g.edge_count()];
            assign_edges(pg, 0, max_bends, &mut residual, &mut strings, &angles, &mut out);
        }
        // Advance the odometer.
        let mut v = 0;
        loop {
            if v == g.n() {
                return Ok(out);
            }
            pick[v] += 1;
            if pick[v] < options[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
    }
}

/// All clockwise corner-angle tuples for a vertex of the given degree.
fn corner_assignments(degree: usize) -> Vec<Vec<u16>> {
    match degree {
        0 => vec![Vec::new()],
        1 => vec![vec![360]],
        _ => {
            let mut out = Vec::new();
            let mut cur = Vec::with_capacity(degree);
            fill(&mut cur, degree, 360, &mut out);
            out
        }
    }
}

fn fill(cur: &mut Vec<u16>, degree: usize, left: i32, out: &mut Vec<Vec<u16>>) {
    let slots = (degree - cur.len()) as i32;
    if slots == 0 {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for a in [90i32, 180, 270] {
        if left - a >= 90 * (slots - 1) && left - a <= 270 * (slots - 1) {
            cur.push(a as u16);
            fill(cur, degree, left - a, out);
            cur.pop();
        }
    }
}

/// Assign bend strings edge by edge; `residual[f]` tracks the turns face `f`
/// still needs. A left bend on a dart adds one toward the face on its left
/// and takes one from the face on its right.
fn assign_edges(
    pg: &PlaneGraph,
    e: usize,
    budget: usize,
    residual: &mut Vec<i64>,
    strings: &mut Vec<Vec<Bend>>,
    angles: &Vec<Vec<u16>>,
    out: &mut Vec<OrthoRep>,
) {
    let need: i64 = residual.iter().map(|r| r.abs()).sum();
    if need > 2 * budget as i64 {
        return;
    }
    if e == pg.graph().edge_count() {
        if need == 0 {
            let rep = OrthoRep::new(pg.clone(), strings.clone(), angles.clone())
                .expect("enumerated representation is well-shaped");
            debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
            out.push(rep);
        }
        return;
    }
    let (fl, fr) = (pg.face_of_dart(2 * e), pg.face_of_dart(2 * e + 1));
    let mut string: Vec<Bend> = Vec::new();
    loop {
        // Current string's effect, then recurse.
        let (l, r) = string.iter().fold((0i64, 0i64), |(l, r), b| match b {
            Bend::L => (l + 1, r),
            Bend::R => (l, r + 1),
        });
        residual[fl] -= l - r;
        residual[fr] -= r - l;
        strings[e] = string.clone();
        assign_edges(pg, e + 1, budget - string.len(), residual, strings, angles, out);
        strings[e] = Vec::new();
        residual[fl] += l - r;
        residual[fr] += r - l;
        // Next string in shortlex order over {L, R}.
        let mut i = string.len();
        while i > 0 && string[i - 1] == Bend::R {
            string[i - 1] = Bend::L;
            i -= 1;
        }
        if i > 0 {
            string[i - 1] = Bend::R;
        } else if string.len() < budget {
            string.push(Bend::L);
        } else {
            return;
        }
    }
}

/// Smallest bend count among the enumerated representations.
pub fn representation_min_bends(
    pg: &PlaneGraph,
    max_bends: usize,
) -> Result<Option<usize>, PlanarError> {
    Ok(enumerate_representations(pg, max_bends)?
        .iter()
        .map(|r| r.total_bends())
        .min())
}

/// Whether a representation meets every fix in a constraint set; used to
/// compare the flow engine against filtered enumeration.
pub fn satisfies(rep: &OrthoRep, cons: &ConstraintSet) -> bool {
    for (v, i, a) in cons.fixed_corners() {
        if rep.angle(v, i) != a {
            return false;
        }
    }
    for (v, start, count, total) in cons.fixed_corner_sums() {
        let deg = rep.plane().corner_count(v);
        let sum: u32 =
            (0..count).map(|j| rep.angle(v, (start + j) % deg) as u32).sum();
        if sum != total {
            return false;
        }
    }
    for e in 0..rep.graph().edge_count() {
        if let Some(fixed) = cons.fixed_edge(e) {
            if rep.bends_along(2 * e) != fixed {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ortho::fixtures::{square, theta, triangle_plane};
    use crate::planar::enumerate_plane_graphs;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn plane_graph_counts() {
        assert_eq!(enumerate_plane_graphs(&cycle(4), 10).unwrap().len(), 2);
        assert_eq!(enumerate_plane_graphs(&k4(), 10).unwrap().len(), 8);
    }

    #[test]
    fn small_cycle_minimums() {
        assert_eq!(brute_force_bend_min(&cycle(3), 8).unwrap(), Some(1));
        assert_eq!(brute_force_bend_min(&cycle(4), 8).unwrap(), Some(0));
        assert_eq!(brute_force_bend_min(&cycle(5), 8).unwrap(), Some(0));
    }

    #[test]
    fn k4_needs_four_bends() {
        assert_eq!(brute_force_bend_min(&k4(), 8).unwrap(), Some(4));
    }

    #[test]
    fn bowtie_needs_two_bends() {
        let g =
            Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(brute_force_bend_min(&g, 8).unwrap(), Some(2));
    }

    #[test]
    fn disconnected_minimum_adds_up() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(brute_force_bend_min(&g, 8).unwrap(), Some(2));
        assert_eq!(brute_force_bend_min(&g, 1).unwrap(), None);
    }

    #[test]
    fn guard_and_nonplanar_are_reported() {
        let big = cycle(11);
        assert!(matches!(
            brute_force_bend_min(&big, 8),
            Err(PlanarError::TooLarge { n: 11, max: 10 })
        ));
        let mut e = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        let k5 = Graph::new(5, e).unwrap();
        assert!(matches!(brute_force_bend_min(&k5, 8), Err(PlanarError::NotPlanar)));
    }

    #[test]
    fn square_enumeration_is_exactly_one() {
        let h = square();
        let reps = enumerate_representations(h.plane(), 0).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0], h);
    }

    #[test]
    fn triangle_enumeration_respects_parity() {
        let pg = triangle_plane();
        assert!(enumerate_representations(&pg, 0).unwrap().is_empty());
        let one = enumerate_representations(&pg, 1).unwrap();
        assert!(!one.is_empty());
        assert!(one.iter().all(|r| r.total_bends() == 1));
    }

    #[test]
    fn enumeration_matches_flow_on_small_plane_graphs() {
        for pg in [
            square().plane().clone(),
            triangle_plane(),
            theta().plane().clone(),
        ] {
            let flow_min = crate::flow::bend_minimum(&pg)
                .unwrap()
                .map(|r| r.total_bends());
            assert_eq!(representation_min_bends(&pg, 4).unwrap(), flow_min);
        }
    }

    #[test]
    fn constrained_flow_matches_filtered_enumeration() {
        let pg = triangle_plane();
        let mut cons = ConstraintSet::new();
        cons.fix_edge_bends(0, vec![Bend::L]).unwrap();
        let flow = constrained_bend_min(&pg, &cons).unwrap().map(|r| r.total_bends());
        let brute = enumerate_representations(&pg, 4)
            .unwrap()
            .into_iter()
            .filter(|r| satisfies(r, &cons))
            .map(|r| r.total_bends())
            .min();
        assert_eq!(flow, brute);
        assert_eq!(flow, Some(1));
    }

    #[test]
    fn enumeration_guards() {
        let h = square();
        assert!(matches!(
            enumerate_representations(h.plane(), 5),
            Err(PlanarError::TooLarge { .. })
        ));
    }
}

//! Bend minimization over a fixed embedding as min-cost network flow.
//!
//! One node per vertex (supply `4 − deg`) and per face (demand `len − 4`
//! internally, `len + 4` on the outside). A corner arc carries its angle
//! minus one quarter-turn; a face-to-face arc per dart carries the bends
//! that are convex toward the sending face, at unit cost. Feasible flows
//! are exactly the valid representations of the embedding, so the cheapest
//! flow is a bend-minimum representation.
//!
//! Constraints fix arcs: a fixed corner or bend string pins its arc's flow,
//! and a corner-sum constraint (used to pin a widened corner of a
//! subrepresentation) routes the member corners through a relay node fed by
//! a pinned arc.

use crate::graph::{EdgeId, SubMap, VertexId};
use crate::ortho::{reverse_bends, Bend, OrthoRep};
use crate::planar::{dart_edge, rev, DartId, FaceId, PlaneGraph};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("no feasible flow")]
    Infeasible,
    #[error("embedding mismatch: {0}")]
    EmbeddingMismatch(String),
}

/// Fixed parts of a representation: corner angles, widened-corner totals,
/// and per-edge bend strings (read along the edge's forward dart).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConstraintSet {
    corners: BTreeMap<(VertexId, usize), u16>,
    /// `(v, start) → (count, total)`: the `count` corners clockwise from
    /// `start` sum to `total` degrees.
    corner_sums: BTreeMap<(VertexId, usize), (usize, u32)>,
    edges: BTreeMap<EdgeId, Vec<Bend>>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty() && self.corner_sums.is_empty() && self.edges.is_empty()
    }

    pub fn fixed_corners(&self) -> impl Iterator<Item = (VertexId, usize, u16)> + '_ {
        self.corners.iter().map(|(&(v, i), &a)| (v, i, a))
    }

    /// Pinned consecutive corner-angle sums as (vertex, start, count, total).
    pub fn fixed_corner_sums(
        &self,
    ) -> impl Iterator<Item = (VertexId, usize, usize, u32)> + '_ {
        self.corner_sums
            .iter()
            .map(|(&(v, s), &(c, t))| (v, s, c, t))
    }

    pub fn fixed_edge(&self, e: EdgeId) -> Option<&[Bend]> {
        self.edges.get(&e).map(|b| b.as_slice())
    }

    pub fn fix_corner_angle(
        &mut self,
        v: VertexId,
        corner: usize,
        degrees: u16,
    ) -> Result<(), FlowError> {
        if !matches!(degrees, 90 | 180 | 270 | 360) {
            return Err(FlowError::InconsistentConstraints(format!(
                "angle {degrees} out of domain"
            )));
        }
        match self.corners.insert((v, corner), degrees) {
            Some(old) if old != degrees => Err(FlowError::InconsistentConstraints(format!(
                "corner {corner} of vertex {v} fixed to both {old} and {degrees}"
            ))),
            _ => Ok(()),
        }
    }

    /// Fix the angle of the unique corner of `v` on face `f`.
    pub fn fix_angle_at_face(
        &mut self,
        pg: &PlaneGraph,
        v: VertexId,
        f: FaceId,
        degrees: u16,
    ) -> Result<(), FlowError> {
        let hits: Vec<usize> =
            (0..pg.corner_count(v)).filter(|&i| pg.corner_face(v, i) == f).collect();
        match hits.as_slice() {
            [i] => self.fix_corner_angle(v, *i, degrees),
            [] => Err(FlowError::InconsistentConstraints(format!(
                "vertex {v} has no corner on face {f}"
            ))),
            _ => Err(FlowError::InconsistentConstraints(format!(
                "vertex {v} has several corners on face {f}"
            ))),
        }
    }

    /// Fix the sum of the `count` consecutive corners of `v` starting at
    /// `start` (clockwise) to `total` degrees.
    pub fn fix_corner_sum(
        &mut self,
        v: VertexId,
        start: usize,
        count: usize,
        total: u32,
    ) -> Result<(), FlowError> {
        if count == 0 {
            return Err(FlowError::InconsistentConstraints("empty corner sum".into()));
        }
        if count == 1 {
            return self.fix_corner_angle(v, start, total as u16);
        }
        if total % 90 != 0 || total < 90 * count as u32 || total > 360 {
            return Err(FlowError::InconsistentConstraints(format!(
                "sum of {count} corners fixed to {total}"
            )));
        }
        match self.corner_sums.insert((v, start), (count, total)) {
            Some(old) if old != (count, total) => Err(FlowError::InconsistentConstraints(
                format!("corner sum at vertex {v} fixed twice"),
            )),
            _ => Ok(()),
        }
    }

    /// Fix edge `e`'s bends, read along its forward dart (dart `2e`).
    pub fn fix_edge_bends(&mut self, e: EdgeId, bends: Vec<Bend>) -> Result<(), FlowError> {
        match self.edges.get(&e) {
            Some(old) if *old != bends => Err(FlowError::InconsistentConstraints(format!(
                "edge {e} fixed to two different bend strings"
            ))),
            Some(_) => Ok(()),
            None => {
                self.edges.insert(e, bends);
                Ok(())
            }
        }
    }

    /// Constrain the representation of a subgraph of `pg`'s graph: `rep` is
    /// a representation of the subgraph in restricted form and `map` sends
    /// its vertices/edges to `pg`'s. Every subgraph edge's bends are pinned,
    /// and every corner of `rep` is pinned as a corner (or corner-sum, where
    /// the subgraph skips host darts) of the host vertex.
    pub fn fix_subrepresentation(
        &mut self,
        pg: &PlaneGraph,
        rep: &OrthoRep,
        map: &SubMap,
    ) -> Result<(), FlowError> {
        let sub = rep.graph();
        let host = pg.graph();
        if map.vmap.len() != sub.n() || map.emap.len() != sub.edge_count() {
            return Err(FlowError::EmbeddingMismatch(
                "subgraph map does not fit the representation".into(),
            ));
        }
        // Orientation of each subgraph edge within the host.
        let mut fwd = vec![true; sub.edge_count()];
        for le in 0..sub.edge_count() {
            let (la, lb) = sub.endpoints(le);
            let he = *map
                .emap
                .get(le)
                .ok_or_else(|| FlowError::EmbeddingMismatch(format!("edge {le} unmapped")))?;
            if he >= host.edge_count() {
                return Err(FlowError::EmbeddingMismatch(format!("edge {he} not in host")));
            }
            let (ha, hb) = host.endpoints(he);
            if (map.vmap[la], map.vmap[lb]) == (ha, hb) {
                fwd[le] = true;
            } else if (map.vmap[la], map.vmap[lb]) == (hb, ha) {
                fwd[le] = false;
            } else {
                return Err(FlowError::EmbeddingMismatch(format!(
                    "edge {le} maps to host edge {he} with different endpoints"
                )));
            }
        }
        let to_host = |ld: DartId| -> DartId {
            let le = dart_edge(ld);
            2 * map.emap[le] + if fwd[le] { ld & 1 } else { 1 - (ld & 1) }
        };
        for lv in 0..sub.n() {
            let hv = map.vmap[lv];
            if hv >= host.n() {
                return Err(FlowError::EmbeddingMismatch(format!("vertex {hv} not in host")));
            }
            let hrot = pg.rotation(hv);
            let kept: Vec<(usize, DartId)> = hrot
                .iter()
                .enumerate()
                .filter_map(|(i, &d)| {
                    let he = dart_edge(d);
                    map.emap
                        .iter()
                        .position(|&x| x == he)
                        .map(|le| (i, 2 * le + if fwd[le] { d & 1 } else { 1 - (d & 1) }))
                })
                .collect();
            let lrot = rep.plane().rotation(lv);
            if kept.len() != lrot.len() {
                return Err(FlowError::EmbeddingMismatch(format!(
                    "vertex {lv}: {} mapped darts for degree {}",
                    kept.len(),
                    lrot.len()
                )));
            }
            // The induced order must be a rotation of the subrepresentation's.
            let offset = lrot
                .iter()
                .position(|&d| d == kept[0].1)
                .ok_or_else(|| {
                    FlowError::EmbeddingMismatch(format!("vertex {lv}: dart order differs"))
                })?;
            if (0..kept.len()).any(|j| lrot[(offset + j) % lrot.len()] != kept[j].1) {
                return Err(FlowError::EmbeddingMismatch(format!(
                    "vertex {lv}: rotation differs from the host's"
                )));
            }
            // Each corner of the subrepresentation spans the host corners
            // between its consecutive kept darts.
            for j in 0..kept.len() {
                let (hi, ld) = kept[j];
                let next_hi = kept[(j + 1) % kept.len()].0;
                let span = (next_hi + hrot.len() - hi - 1) % hrot.len() + 1;
                let li = rep.plane().pos_in_rotation(ld);
                let angle = rep.angle(lv, li) as u32;
                self.fix_corner_sum(hv, hi, span, angle)?;
            }
        }
        for le in 0..sub.edge_count() {
            let along_fwd = rep.bends_along(2 * le);
            let hd = to_host(2 * le);
            let bends =
                if hd & 1 == 0 { along_fwd.to_vec() } else { reverse_bends(along_fwd) };
            self.fix_edge_bends(dart_edge(hd), bends)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    /// Angle of corner `(v, i)`: flow `x` means `(x+1)·90` degrees.
    Corner(VertexId, usize),
    /// Bends along dart `d` that turn right: the arc runs from the face on
    /// the dart's right to the face on its left.
    Bend(DartId),
    /// Relay arc feeding a corner-sum node.
    Relay(VertexId, usize),
}

#[derive(Debug, Clone)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost: i64,
    pub kind: ArcKind,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub node_count: usize,
    /// Positive = supply, negative = demand.
    pub supplies: Vec<i64>,
    pub arcs: Vec<Arc>,
    vertex_nodes: usize,
    /// Bend strings fixed verbatim, kept for decoding.
    fixed_bends: BTreeMap<EdgeId, Vec<Bend>>,
}

impl FlowNetwork {
    pub fn vertex_node(&self, v: VertexId) -> usize {
        v
    }
    pub fn face_node(&self, f: FaceId) -> usize {
        self.vertex_nodes + f
    }

    /// Debug view of the network in dot syntax.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("digraph flow {\n");
        for (i, &b) in self.supplies.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{i}:{b}\"];");
        }
        for a in &self.arcs {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"[{},{}]@{}\"];",
                a.from, a.to, a.lower, a.upper, a.cost
            );
        }
        s.push_str("}\n");
        s
    }
}

pub fn build_network(pg: &PlaneGraph, cons: &ConstraintSet) -> Result<FlowNetwork, FlowError> {
    let g = pg.graph();
    let n = g.n();
    let m = g.edge_count();
    let nf = pg.faces().len();

    // Validate constraint references.
    for ((v, i), _) in cons.corners.iter() {
        if *v >= n || *i >= pg.corner_count(*v) {
            return Err(FlowError::InconsistentConstraints(format!(
                "fixed corner ({v},{i}) does not exist"
            )));
        }
    }
    for (&(v, start), &(count, _)) in cons.corner_sums.iter() {
        if v >= n || start >= pg.corner_count(v) || count > pg.corner_count(v) {
            return Err(FlowError::InconsistentConstraints(format!(
                "corner sum at ({v},{start}) does not fit"
            )));
        }
    }
    for (&e, _) in cons.edges.iter() {
        if e >= m {
            return Err(FlowError::InconsistentConstraints(format!(
                "fixed bends on missing edge {e}"
            )));
        }
    }
    // Owner of each corner: direct, or member of a sum starting at `start`.
    let mut sum_of: Vec<Vec<Option<(VertexId, usize)>>> =
        (0..n).map(|v| vec![None; pg.corner_count(v)]).collect();
    for (&(v, start), &(count, _)) in cons.corner_sums.iter() {
        let deg = pg.corner_count(v);
        for j in 0..count {
            let i = (start + j) % deg;
            if sum_of[v][i].is_some() || cons.corners.contains_key(&(v, i)) {
                return Err(FlowError::InconsistentConstraints(format!(
                    "corner ({v},{i}) constrained twice"
                )));
            }
            sum_of[v][i] = Some((v, start));
        }
    }

    let mut supplies: Vec<i64> = Vec::with_capacity(n + nf);
    for v in 0..n {
        supplies.push(4 - g.degree(v) as i64);
    }
    for f in pg.faces() {
        let len = f.len() as i64;
        supplies.push(if f.external { -(len + 4) } else { -(len - 4) });
    }
    debug_assert_eq!(supplies.iter().sum::<i64>(), 0, "network must balance");

    let mut node_count = n + nf;
    let mut relay_node: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
    for (&key, _) in cons.corner_sums.iter() {
        relay_node.insert(key, node_count);
        node_count += 1;
        supplies.push(0);
    }

    let mut arcs: Vec<Arc> = Vec::new();
    for (&(v, start), &(count, total)) in cons.corner_sums.iter() {
        let x = total as i64 / 90 - count as i64;
        if x < 0 || x > 3 * count as i64 {
            return Err(FlowError::InconsistentConstraints(format!(
                "corner sum {total} at vertex {v} unreachable"
            )));
        }
        arcs.push(Arc {
            from: v,
            to: relay_node[&(v, start)],
            lower: x,
            upper: x,
            cost: 0,
            kind: ArcKind::Relay(v, start),
        });
    }
    for v in 0..n {
        for i in 0..pg.corner_count(v) {
            let (from, lower, upper) = match (sum_of[v][i], cons.corners.get(&(v, i))) {
                (Some(key), _) => (relay_node[&key], 0, 3),
                (None, Some(&a)) => (v, a as i64 / 90 - 1, a as i64 / 90 - 1),
                (None, None) => (v, 0, 3),
            };
            arcs.push(Arc {
                from,
                to: n + pg.corner_face(v, i),
                lower,
                upper,
                cost: 0,
                kind: ArcKind::Corner(v, i),
            });
        }
    }
    const UNCAPPED: i64 = -1;
    for d in 0..2 * m {
        let e = dart_edge(d);
        let bound = cons.edges.get(&e).map(|s| {
            let along_d = if d & 1 == 0 { s.clone() } else { reverse_bends(s) };
            along_d.iter().filter(|b| **b == Bend::R).count() as i64
        });
        arcs.push(Arc {
            from: n + pg.face_of_dart(rev(d)),
            to: n + pg.face_of_dart(d),
            lower: bound.unwrap_or(0),
            upper: bound.unwrap_or(UNCAPPED),
            cost: 1,
            kind: ArcKind::Bend(d),
        });
    }
    // A safe stand-in for infinity: no single arc can carry more than the
    // whole transformed supply.
    let inf: i64 = supplies.iter().map(|s| s.abs()).sum::<i64>()
        + arcs.iter().map(|a| a.lower).sum::<i64>()
        + 16;
    for a in arcs.iter_mut() {
        if a.upper == UNCAPPED {
            a.upper = inf;
        }
    }
    Ok(FlowNetwork {
        node_count,
        supplies,
        arcs,
        vertex_nodes: n,
        fixed_bends: cons.edges.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct FlowOutcome {
    /// Flow per arc, in `FlowNetwork::arcs` order.
    pub arc_flow: Vec<i64>,
    pub cost: i64,
}

struct Residual {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Successive shortest augmenting paths with potentials; lower bounds are
/// folded into node imbalances first.
pub fn min_cost_flow(net: &FlowNetwork) -> Result<FlowOutcome, FlowError> {
    let n = net.node_count;
    let (s, t) = (n, n + 1);
    let mut imbalance = net.supplies.clone();
    let mut graph: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    let mut res: Vec<Residual> = Vec::new();
    let add = |graph: &mut Vec<Vec<usize>>,
               res: &mut Vec<Residual>,
               from: usize,
               to: usize,
               cap: i64,
               cost: i64| {
        graph[from].push(res.len());
        res.push(Residual { to, cap, cost });
        graph[to].push(res.len());
        res.push(Residual { to: from, cap: 0, cost: -cost });
    };
    let mut arc_res: Vec<usize> = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        imbalance[a.from] -= a.lower;
        imbalance[a.to] += a.lower;
        arc_res.push(res.len());
        add(&mut graph, &mut res, a.from, a.to, a.upper - a.lower, a.cost);
    }
    let mut need: i64 = 0;
    for (v, &b) in imbalance.iter().enumerate() {
        if b > 0 {
            add(&mut graph, &mut res, s, v, b, 0);
            need += b;
        } else if b < 0 {
            add(&mut graph, &mut res, v, t, -b, 0);
        }
    }

    let inf = i64::MAX / 4;
    let mut potential = vec![0i64; n + 2];
    let mut sent: i64 = 0;
    while sent < need {
        // Dijkstra on reduced costs.
        let mut dist = vec![inf; n + 2];
        let mut prev: Vec<Option<usize>> = vec![None; n + 2];
        dist[s] = 0;
        let mut heap = std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((0i64, s)));
        while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &ei in &graph[u] {
                let edge = &res[ei];
                if edge.cap <= 0 {
                    continue;
                }
                let nd = d + edge.cost + potential[u] - potential[edge.to];
                debug_assert!(edge.cost + potential[u] - potential[edge.to] >= 0);
                if nd < dist[edge.to] {
                    dist[edge.to] = nd;
                    prev[edge.to] = Some(ei);
                    heap.push(std::cmp::Reverse((nd, edge.to)));
                }
            }
        }
        if dist[t] >= inf {
            return Err(FlowError::Infeasible);
        }
        let mut push = inf;
        let mut v = t;
        while let Some(ei) = prev[v] {
            push = push.min(res[ei].cap);
            v = res[ei ^ 1].to;
        }
        debug_assert_eq!(v, s);
        let mut v = t;
        while let Some(ei) = prev[v] {
            res[ei].cap -= push;
            res[ei ^ 1].cap += push;
            v = res[ei ^ 1].to;
        }
        sent += push;
        for v in 0..n + 2 {
            potential[v] += dist[v].min(dist[t]);
        }
    }

    let mut arc_flow = Vec::with_capacity(net.arcs.len());
    let mut cost = 0;
    for (i, a) in net.arcs.iter().enumerate() {
        let f = a.lower + res[arc_res[i] ^ 1].cap;
        arc_flow.push(f);
        cost += f * a.cost;
    }
    Ok(FlowOutcome { arc_flow, cost })
}

/// Decode a feasible flow back into a representation on `pg`. Fixed bend
/// strings are reproduced verbatim; free edges render right bends before
/// left ones along the forward dart.
pub fn flow_to_representation(
    pg: &PlaneGraph,
    net: &FlowNetwork,
    flow: &FlowOutcome,
) -> OrthoRep {
    let g = pg.graph();
    let mut angles: Vec<Vec<u16>> = (0..g.n()).map(|v| vec![0; pg.corner_count(v)]).collect();
    let mut right: Vec<i64> = vec![0; 2 * g.edge_count()];
    for (a, &f) in net.arcs.iter().zip(flow.arc_flow.iter()) {
        match a.kind {
            ArcKind::Corner(v, i) => angles[v][i] = 90 * (f as u16 + 1),
            ArcKind::Bend(d) => right[d] = f,
            ArcKind::Relay(..) => {}
        }
    }
    let edge_bends: Vec<Vec<Bend>> = (0..g.edge_count())
        .map(|e| match net.fixed_bends.get(&e) {
            Some(s) => s.clone(),
            None => {
                let mut out = vec![Bend::R; right[2 * e] as usize];
                out.extend(std::iter::repeat(Bend::L).take(right[2 * e + 1] as usize));
                out
            }
        })
        .collect();
    OrthoRep::new(pg.clone(), edge_bends, angles).expect("decoded representation is well-shaped")
}

/// Minimum-bend representation of `pg` meeting all constraints, or `None`
/// when the constraints cannot be met in this embedding.
pub fn constrained_bend_min(
    pg: &PlaneGraph,
    cons: &ConstraintSet,
) -> Result<Option<OrthoRep>, FlowError> {
    if pg.graph().edge_count() == 0 {
        if !cons.is_empty() {
            return Err(FlowError::InconsistentConstraints(
                "constraints on an edgeless graph".into(),
            ));
        }
        let angles = vec![Vec::new(); pg.graph().n()];
        return Ok(Some(
            OrthoRep::new(pg.clone(), Vec::new(), angles).expect("edgeless representation"),
        ));
    }
    let net = build_network(pg, cons)?;
    match min_cost_flow(&net) {
        Ok(flow) => {
            let rep = flow_to_representation(pg, &net, &flow);
            debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
            debug_assert_eq!(rep.total_bends() as i64, flow.cost);
            Ok(Some(rep))
        }
        Err(FlowError::Infeasible) => Ok(None),
        Err(other) => Err(other),
    }
}

/// Unconstrained bend minimum for the embedding.
pub fn bend_minimum(pg: &PlaneGraph) -> Result<Option<OrthoRep>, FlowError> {
    constrained_bend_min(pg, &ConstraintSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ortho::fixtures::{four_branches, square, theta, triangle_plane};
    use crate::ortho::restrict;
    use crate::planar::planar_embed;

    #[test]
    fn square_network_balances() {
        let h = square();
        let net = build_network(h.plane(), &ConstraintSet::new()).unwrap();
        assert_eq!(net.node_count, 6);
        assert_eq!(&net.supplies[0..4], &[2, 2, 2, 2]);
        let ext = h.plane().external_face();
        assert_eq!(net.supplies[net.face_node(ext)], -8);
        assert_eq!(net.supplies[net.face_node(1 - ext)], 0);
        assert_eq!(net.arcs.len(), 8 + 8);
        assert!(net
            .arcs
            .iter()
            .all(|a| !matches!(a.kind, ArcKind::Corner(..)) || (a.lower, a.upper) == (0, 3)));
    }

    #[test]
    fn k4_network_balances() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let rot = planar_embed(&g).unwrap();
        let pg = crate::planar::PlaneGraph::new(g, rot, 0).unwrap();
        let net = build_network(&pg, &ConstraintSet::new()).unwrap();
        assert_eq!(&net.supplies[0..4], &[1, 1, 1, 1]);
        assert_eq!(net.supplies.iter().sum::<i64>(), 0);
    }

    #[test]
    fn square_needs_no_bends() {
        let h = square();
        let rep = bend_minimum(h.plane()).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.total_bends(), 0);
    }

    #[test]
    fn triangle_needs_one_bend() {
        let pg = triangle_plane();
        let rep = bend_minimum(&pg).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.total_bends(), 1);
    }

    #[test]
    fn overconstrained_triangle_is_infeasible() {
        let pg = triangle_plane();
        let inner = 1 - pg.external_face();
        let mut cons = ConstraintSet::new();
        for v in 0..3 {
            cons.fix_angle_at_face(&pg, v, inner, 90).unwrap();
            cons.fix_edge_bends(v, Vec::new()).unwrap();
        }
        assert!(constrained_bend_min(&pg, &cons).unwrap().is_none());
    }

    #[test]
    fn corner_fix_pins_its_arc() {
        let h = square();
        let pg = h.plane();
        let inner = 1 - pg.external_face();
        let mut cons = ConstraintSet::new();
        cons.fix_angle_at_face(pg, 0, inner, 270).unwrap();
        let net = build_network(pg, &cons).unwrap();
        let corner =
            (0..pg.corner_count(0)).find(|&i| pg.corner_face(0, i) == inner).unwrap();
        let arc = net
            .arcs
            .iter()
            .find(|a| a.kind == ArcKind::Corner(0, corner))
            .unwrap();
        assert_eq!((arc.lower, arc.upper), (2, 2));
        assert_eq!(arc.to, net.face_node(inner));
    }

    #[test]
    fn conflicting_fixes_are_rejected() {
        let mut cons = ConstraintSet::new();
        cons.fix_corner_angle(0, 0, 90).unwrap();
        assert!(matches!(
            cons.fix_corner_angle(0, 0, 180),
            Err(FlowError::InconsistentConstraints(_))
        ));
        cons.fix_edge_bends(3, vec![Bend::L]).unwrap();
        assert!(matches!(
            cons.fix_edge_bends(3, vec![Bend::R]),
            Err(FlowError::InconsistentConstraints(_))
        ));
        assert!(matches!(
            cons.fix_corner_angle(1, 0, 45),
            Err(FlowError::InconsistentConstraints(_))
        ));
    }

    #[test]
    fn forced_double_bend_on_a_triangle_edge() {
        let pg = triangle_plane();
        let mut cons = ConstraintSet::new();
        cons.fix_edge_bends(0, vec![Bend::R, Bend::R]).unwrap();
        let rep = constrained_bend_min(&pg, &cons).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.bend_string(0), "RR");
        // Undoing two right bends inside the triangle costs three more lefts.
        assert_eq!(rep.total_bends(), 5);
    }

    #[test]
    fn fixed_middle_branch_stays_straight() {
        let h = theta();
        let (sub, map) = restrict(&h, &[3]).unwrap();
        let mut cons = ConstraintSet::new();
        cons.fix_subrepresentation(h.plane(), &sub, &map).unwrap();
        let rep = constrained_bend_min(h.plane(), &cons).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.bend_string(6), "");
        assert_eq!(rep.total_bends(), 0);
    }

    #[test]
    fn subrepresentation_pins_widened_corners() {
        let h = four_branches();
        let (sub, map) = restrict(&h, &[0, 1, 2, 3]).unwrap();
        let mut cons = ConstraintSet::new();
        cons.fix_subrepresentation(h.plane(), &sub, &map).unwrap();
        let rep = constrained_bend_min(h.plane(), &cons).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        let (back, _) = restrict(&rep, &[0, 1, 2, 3]).unwrap();
        assert_eq!(back.angles_at(0), sub.angles_at(0));
        for lv in 0..sub.graph().n() {
            assert_eq!(back.angles_at(lv), sub.angles_at(lv), "vertex {lv}");
        }
        for le in 0..sub.graph().edge_count() {
            assert_eq!(back.bend_string(2 * le), sub.bend_string(2 * le));
        }
    }

    #[test]
    fn fixing_everything_reproduces_the_host() {
        let h = four_branches();
        let pg = h.plane();
        let mut cons = ConstraintSet::new();
        for v in 0..h.graph().n() {
            for i in 0..pg.corner_count(v) {
                cons.fix_corner_angle(v, i, h.angle(v, i)).unwrap();
            }
        }
        for e in 0..h.graph().edge_count() {
            cons.fix_edge_bends(e, h.bends_along(2 * e).to_vec()).unwrap();
        }
        let rep = constrained_bend_min(pg, &cons).unwrap().unwrap();
        assert_eq!(rep, h);
        assert_eq!(rep.bend_string(16), "LL");
    }

    #[test]
    fn constraints_never_cheapen() {
        let h = theta();
        let free = bend_minimum(h.plane()).unwrap().unwrap().total_bends();
        let mut cons = ConstraintSet::new();
        cons.fix_edge_bends(3, vec![Bend::L]).unwrap();
        let fixed = constrained_bend_min(h.plane(), &cons).unwrap().unwrap().total_bends();
        assert!(fixed >= free);
        assert!(fixed >= 1);
    }

    #[test]
    fn path_graph_draws_straight() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let rot = planar_embed(&g).unwrap();
        let pg = crate::planar::PlaneGraph::new(g, rot, 0).unwrap();
        let rep = bend_minimum(&pg).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.total_bends(), 0);
    }

    #[test]
    fn single_vertex_is_trivially_drawable() {
        let g = Graph::new(1, vec![]).unwrap();
        let pg = crate::planar::PlaneGraph::new(g, vec![Vec::new()], 0).unwrap();
        let rep = bend_minimum(&pg).unwrap().unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(rep.total_bends(), 0);
    }
}

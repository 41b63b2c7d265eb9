//! Combinatorial plane graphs: rotation systems, faces, and embeddings.
//!
//! Each edge `e` owns two darts: dart `2e` points from `endpoints(e).0` to
//! `endpoints(e).1`, dart `2e+1` the other way; `rev(d) = d ^ 1`. A rotation
//! system stores, for every vertex, the clockwise cyclic order of the darts
//! leaving it. Faces are the orbits of `next(d) = rot[head(d)]` at one past
//! the position of `rev(d)`; every orbit keeps its face's interior on the
//! left, so internal faces are walked counterclockwise in the geometric sense
//! and the external face's orbit walks clockwise around the graph.
//!
//! A corner `(v, i)` is the clockwise wedge between `rot[v][i]` and
//! `rot[v][i+1]`; it belongs to the face whose orbit enters `v` over
//! `rev(rot[v][i])`.

use crate::graph::{EdgeId, Graph, VertexId};
use thiserror::Error;

pub type DartId = usize;
pub type FaceId = usize;

pub fn dart_edge(d: DartId) -> EdgeId {
    d / 2
}

pub fn rev(d: DartId) -> DartId {
    d ^ 1
}

#[derive(Debug, Error)]
pub enum PlanarError {
    #[error("embedding error: {0}")]
    Embedding(String),
    #[error("graph too large for exhaustive embedding enumeration (n = {n}, max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("graph is not planar")]
    NotPlanar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts of the orbit, interior on the left.
    pub darts: Vec<DartId>,
    pub external: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A connected graph together with a planar rotation system and a chosen
/// external face. Construction checks that the orbit structure has genus 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rot: Vec<Vec<DartId>>,
    /// Position of each dart in the rotation at its tail.
    pos: Vec<usize>,
    faces: Vec<Face>,
    face_of: Vec<FaceId>,
    external: FaceId,
}

impl PlaneGraph {
    /// Build from a rotation system given as clockwise dart lists per vertex.
    /// `external` selects the external face by the id faces get during
    /// extraction (orbits are discovered in ascending order of their smallest
    /// dart).
    pub fn new(
        graph: Graph,
        rot: Vec<Vec<DartId>>,
        external: FaceId,
    ) -> Result<Self, PlanarError> {
        if graph.components().len() > 1 {
            return Err(PlanarError::Embedding("graph is not connected".into()));
        }
        if rot.len() != graph.n() {
            return Err(PlanarError::Embedding("rotation list count != vertex count".into()));
        }
        let m = graph.edge_count();
        let mut pos = vec![usize::MAX; 2 * m];
        for (v, list) in rot.iter().enumerate() {
            if list.len() != graph.degree(v) {
                return Err(PlanarError::Embedding(format!(
                    "rotation at {v} has {} darts, degree is {}",
                    list.len(),
                    graph.degree(v)
                )));
            }
            for (i, &d) in list.iter().enumerate() {
                if d >= 2 * m {
                    return Err(PlanarError::Embedding(format!("dart {d} out of range")));
                }
                let e = dart_edge(d);
                let tail = if d % 2 == 0 { graph.endpoints(e).0 } else { graph.endpoints(e).1 };
                if tail != v {
                    return Err(PlanarError::Embedding(format!(
                        "dart {d} listed at {v} but its tail is {tail}"
                    )));
                }
                if pos[d] != usize::MAX {
                    return Err(PlanarError::Embedding(format!("dart {d} listed twice")));
                }
                pos[d] = i;
            }
        }
        if pos.iter().any(|&p| p == usize::MAX) {
            return Err(PlanarError::Embedding("some dart missing from rotations".into()));
        }

        // Extract face orbits.
        let mut face_of = vec![usize::MAX; 2 * m];
        let mut faces: Vec<Face> = Vec::new();
        for start in 0..2 * m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                orbit.push(d);
                let h = head_of(&graph, d);
                let p = pos[rev(d)];
                d = rot[h][(p + 1) % rot[h].len()];
                if d == start {
                    break;
                }
                if face_of[d] != usize::MAX {
                    return Err(PlanarError::Embedding("face orbit collision".into()));
                }
            }
            faces.push(Face { id, darts: orbit, external: false });
        }
        // Genus check: V - E + F = 2 for a connected graph (an edgeless
        // single vertex gets its one empty external face below).
        let f = if m == 0 { 1 } else { faces.len() };
        if graph.n() + f != m + 2 {
            return Err(PlanarError::Embedding(format!(
                "rotation system is not planar: V={} E={} F={}",
                graph.n(),
                m,
                f
            )));
        }
        if m == 0 {
            faces.push(Face { id: 0, darts: Vec::new(), external: true });
        }
        if external >= faces.len() {
            return Err(PlanarError::Embedding(format!("external face {external} out of range")));
        }
        faces[external].external = true;
        Ok(PlaneGraph { graph, rot, pos, faces, face_of, external })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn rotations(&self) -> &[Vec<DartId>] {
        &self.rot
    }
    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rot[v]
    }
    pub fn pos_in_rotation(&self, d: DartId) -> usize {
        self.pos[d]
    }
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }
    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }
    pub fn external_face(&self) -> FaceId {
        self.external
    }
    pub fn face_of_dart(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn tail(&self, d: DartId) -> VertexId {
        tail_of(&self.graph, d)
    }
    pub fn head(&self, d: DartId) -> VertexId {
        head_of(&self.graph, d)
    }

    /// The dart from `u` along edge `e`.
    pub fn dart_from(&self, e: EdgeId, u: VertexId) -> DartId {
        if self.graph.endpoints(e).0 == u {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Successor of `d` in its face orbit.
    pub fn next_in_face(&self, d: DartId) -> DartId {
        let h = self.head(d);
        let p = self.pos[rev(d)];
        self.rot[h][(p + 1) % self.rot[h].len()]
    }

    /// Number of corners at `v` (equals its degree; an isolated vertex has none).
    pub fn corner_count(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    /// Face owning corner `(v, i)`, the wedge between `rot[v][i]` and
    /// `rot[v][i+1]` clockwise.
    pub fn corner_face(&self, v: VertexId, i: usize) -> FaceId {
        self.face_of[rev(self.rot[v][i])]
    }

    /// All (vertex, corner index) pairs whose corner lies on face `f`,
    /// in orbit order.
    pub fn face_corners(&self, f: FaceId) -> Vec<(VertexId, usize)> {
        self.faces[f]
            .darts
            .iter()
            .map(|&d| {
                let v = self.head(d);
                (v, self.pos[rev(d)])
            })
            .collect()
    }

    /// Mirror image: all rotations reversed. The external face is mapped to
    /// the image of the same dart set.
    pub fn mirrored(&self) -> PlaneGraph {
        let rot: Vec<Vec<DartId>> =
            self.rot.iter().map(|l| l.iter().rev().copied().collect()).collect();
        let marker = self.faces[self.external].darts.first().copied();
        let pg = PlaneGraph::new(self.graph.clone(), rot, 0).expect("mirror stays planar");
        let ext = match marker {
            // The mirrored orbit through rev(d) bounds the same region.
            Some(d) => pg.face_of[rev(d)],
            None => 0,
        };
        pg.with_external(ext)
    }

    pub fn with_external(&self, external: FaceId) -> PlaneGraph {
        let mut pg = self.clone();
        pg.faces[pg.external].external = false;
        pg.external = external;
        pg.faces[external].external = true;
        pg
    }
}

pub fn tail_of(g: &Graph, d: DartId) -> VertexId {
    let (a, b) = g.endpoints(dart_edge(d));
    if d % 2 == 0 { a } else { b }
}

pub fn head_of(g: &Graph, d: DartId) -> VertexId {
    let (a, b) = g.endpoints(dart_edge(d));
    if d % 2 == 0 { b } else { a }
}

/// Enumerate every plane graph of a connected graph: all planar rotation
/// systems (each cyclic dart order combination exactly once) times all
/// choices of external face. `max_n` guards against explosion.
pub fn enumerate_plane_graphs(g: &Graph, max_n: usize) -> Result<Vec<PlaneGraph>, PlanarError> {
    let mut out = Vec::new();
    for_each_plane_graph(g, max_n, &mut |pg| out.push(pg.clone()))?;
    Ok(out)
}

/// Streaming version of [`enumerate_plane_graphs`].
pub fn for_each_plane_graph(
    g: &Graph,
    max_n: usize,
    visit: &mut dyn FnMut(&PlaneGraph),
) -> Result<(), PlanarError> {
    if g.n() > max_n {
        return Err(PlanarError::TooLarge { n: g.n(), max: max_n });
    }
    if !g.is_connected() {
        return Err(PlanarError::Embedding("enumeration requires a connected graph".into()));
    }
    if g.edge_count() == 0 {
        let pg = PlaneGraph::new(g.clone(), vec![Vec::new(); g.n()], 0)?;
        visit(&pg);
        return Ok(());
    }

    // Per-vertex cyclic orders: fix the smallest dart first, permute the rest.
    let mut arrangements: Vec<Vec<Vec<DartId>>> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let mut darts: Vec<DartId> = g
            .adj(v)
            .iter()
            .map(|&e| if g.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 })
            .collect();
        darts.sort_unstable();
        if darts.is_empty() {
            return Err(PlanarError::Embedding("isolated vertex in connected enumeration".into()));
        }
        let (first, rest) = darts.split_first().unwrap();
        let mut opts = Vec::new();
        let mut perm: Vec<DartId> = rest.to_vec();
        permutations(&mut perm, 0, &mut |p| {
            let mut order = vec![*first];
            order.extend_from_slice(p);
            opts.push(order);
        });
        arrangements.push(opts);
    }

    let mut idx = vec![0usize; g.n()];
    let mut found_planar = false;
    loop {
        let rot: Vec<Vec<DartId>> =
            (0..g.n()).map(|v| arrangements[v][idx[v]].clone()).collect();
        if let Ok(pg) = PlaneGraph::new(g.clone(), rot, 0) {
            found_planar = true;
            let nf = pg.faces().len();
            visit(&pg);
            for f in 1..nf {
                visit(&pg.with_external(f));
            }
        }
        // Odometer step.
        let mut v = 0;
        loop {
            if v == g.n() {
                if !found_planar {
                    return Err(PlanarError::NotPlanar);
                }
                return Ok(());
            }
            idx[v] += 1;
            if idx[v] < arrangements[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Product over vertices of (deg-1)!, the rotation-system count used to
/// budget-cap oracle runs.
pub fn embedding_product(g: &Graph) -> u128 {
    let mut p: u128 = 1;
    for v in 0..g.n() {
        let d = g.degree(v).saturating_sub(1);
        let f: u128 = (1..=d as u128).product();
        p = p.saturating_mul(f.max(1));
    }
    p
}

fn permutations(items: &mut Vec<DartId>, k: usize, visit: &mut dyn FnMut(&[DartId])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Planarity test + embedding for any graph: each biconnected block is
/// embedded by incremental face insertion (start from a cycle, repeatedly
/// choose a fragment, embed one of its paths into an admissible face), and
/// block rotations are concatenated as wedges at shared vertices. Returns
/// clockwise rotations, or None if the graph is not planar.
pub fn planar_embed(g: &Graph) -> Option<Vec<Vec<DartId>>> {
    let blocks = g.blocks();
    if blocks.len() == 1 && blocks[0].len() == g.edge_count() {
        return embed_block(g);
    }
    let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); g.n()];
    for block in blocks {
        let (sub, map) = g.edge_subgraph(&block);
        let sub_rot = embed_block(&sub)?;
        // edge_subgraph keeps endpoint order, so dart parity carries over.
        for (lv, list) in sub_rot.into_iter().enumerate() {
            rot[map.vmap[lv]].extend(list.into_iter().map(|ld| 2 * map.emap[dart_edge(ld)] + (ld & 1)));
        }
    }
    Some(rot)
}

/// Embedding for one biconnected block (or an edgeless / tiny graph).
fn embed_block(g: &Graph) -> Option<Vec<Vec<DartId>>> {
    let n = g.n();
    let m = g.edge_count();
    if m == 0 || n < 3 {
        // Empty graph, single edge, or a bundle of parallel edges: darts in
        // edge order on one side, reversed on the other, nest planarly.
        let mut rot = vec![Vec::new(); n];
        for e in 0..m {
            let (u, v) = g.endpoints(e);
            rot[u].push(2 * e);
            rot[v].push(2 * e + 1);
        }
        if n == 2 {
            rot[1].reverse();
        }
        return Some(rot);
    }

    // Find an initial cycle by DFS.
    let cycle = find_cycle(g)?;

    // Embedded state: rotations under construction plus face list as dart
    // cycles. Faces here are tracked explicitly since angles don't exist yet.
    let mut emb = EmbedState::from_cycle(g, &cycle);

    loop {
        if emb.embedded_edges.iter().all(|&b| b) {
            return Some(emb.rot);
        }
        // Fragments: connected components of the not-yet-embedded subgraph,
        // where two unembedded edges are connected if they share a vertex
        // that is NOT yet embedded. Each fragment records its attachments.
        let fragments = emb.fragments(g);
        debug_assert!(!fragments.is_empty());
        // Admissible faces per fragment.
        let mut chosen: Option<(usize, FaceId)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let mut admissible = Vec::new();
            for (f, face) in emb.face_verts.iter().enumerate() {
                if frag.attachments.iter().all(|a| face.contains(a)) {
                    admissible.push(f);
                }
            }
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = chosen.unwrap();
        emb.embed_path(g, &fragments[fi], face);
    }
}

fn find_cycle(g: &Graph) -> Option<Vec<DartId>> {
    // DFS from vertex 0; on the first back edge, read the cycle off the stack.
    let mut parent_dart = vec![usize::MAX; g.n()];
    let mut state = vec![0u8; g.n()];
    let mut stack: Vec<(VertexId, usize)> = vec![(0, 0)];
    state[0] = 1;
    while let Some(&(v, ei)) = stack.last() {
        if ei >= g.degree(v) {
            state[v] = 2;
            stack.pop();
            continue;
        }
        stack.last_mut().unwrap().1 += 1;
        let e = g.adj(v)[ei];
        if parent_dart[v] != usize::MAX && dart_edge(parent_dart[v]) == e {
            continue;
        }
        let w = g.other_end(e, v);
        let d = if g.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 };
        if state[w] == 0 {
            state[w] = 1;
            parent_dart[w] = d;
            stack.push((w, 0));
        } else if state[w] == 1 {
            // Cycle: w -> ... -> v -> w.
            let mut cyc = vec![d];
            let mut x = v;
            while x != w {
                let pd = parent_dart[x];
                cyc.push(pd);
                x = tail_of(g, pd);
            }
            cyc.reverse();
            return Some(cyc);
        }
    }
    None
}

struct Fragment {
    edges: Vec<EdgeId>,
    attachments: Vec<VertexId>,
}

struct EmbedState {
    rot: Vec<Vec<DartId>>,
    embedded_edges: Vec<bool>,
    embedded_verts: Vec<bool>,
    /// Faces as dart cycles (interior on the left) and their vertex sets.
    face_darts: Vec<Vec<DartId>>,
    face_verts: Vec<Vec<VertexId>>,
}

impl EmbedState {
    fn from_cycle(g: &Graph, cycle: &[DartId]) -> EmbedState {
        let mut rot = vec![Vec::new(); g.n()];
        let mut embedded_edges = vec![false; g.edge_count()];
        let mut embedded_verts = vec![false; g.n()];
        for &d in cycle {
            embedded_edges[dart_edge(d)] = true;
            embedded_verts[tail_of(g, d)] = true;
        }
        // Rotation around each cycle vertex: [outgoing, incoming-reversed].
        for i in 0..cycle.len() {
            let d = cycle[i];
            let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
            let v = tail_of(g, d);
            rot[v] = vec![d, rev(prev)];
        }
        let fwd: Vec<DartId> = cycle.to_vec();
        let bwd: Vec<DartId> = cycle.iter().rev().map(|&d| rev(d)).collect();
        let verts: Vec<VertexId> = cycle.iter().map(|&d| tail_of(g, d)).collect();
        EmbedState {
            rot,
            embedded_edges,
            embedded_verts,
            face_darts: vec![fwd, bwd],
            face_verts: vec![verts.clone(), verts],
        }
    }

    fn fragments(&self, g: &Graph) -> Vec<Fragment> {
        let mut frag_of_edge = vec![usize::MAX; g.edge_count()];
        let mut frags: Vec<Fragment> = Vec::new();
        for e0 in 0..g.edge_count() {
            if self.embedded_edges[e0] || frag_of_edge[e0] != usize::MAX {
                continue;
            }
            let id = frags.len();
            let mut edges = vec![e0];
            frag_of_edge[e0] = id;
            let mut queue = vec![e0];
            let mut attach = Vec::new();
            while let Some(e) = queue.pop() {
                let (a, b) = g.endpoints(e);
                for v in [a, b] {
                    if self.embedded_verts[v] {
                        if !attach.contains(&v) {
                            attach.push(v);
                        }
                        continue;
                    }
                    for &e2 in g.adj(v) {
                        if !self.embedded_edges[e2] && frag_of_edge[e2] == usize::MAX {
                            frag_of_edge[e2] = id;
                            edges.push(e2);
                            queue.push(e2);
                        }
                    }
                }
            }
            attach.sort_unstable();
            frags.push(Fragment { edges, attachments: attach });
        }
        frags
    }

    /// Embed one path of `frag` between two attachments into face `f`.
    fn embed_path(&mut self, g: &Graph, frag: &Fragment, f: FaceId) {
        // BFS within the fragment from the smallest attachment to any other.
        let a0 = frag.attachments[0];
        let in_frag = {
            let mut set = vec![false; g.edge_count()];
            for &e in &frag.edges {
                set[e] = true;
            }
            set
        };
        let mut pred: Vec<Option<DartId>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[a0] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(a0);
        let mut target = None;
        'bfs: while let Some(v) = queue.pop_front() {
            // Never pass through embedded vertices except as path endpoints.
            for &e in g.adj(v) {
                if !in_frag[e] {
                    continue;
                }
                let w = g.other_end(e, v);
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                pred[w] = Some(if g.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 });
                if self.embedded_verts[w] {
                    if w != a0 {
                        target = Some(w);
                        break 'bfs;
                    }
                    continue;
                }
                queue.push_back(w);
            }
        }
        let b = target.expect("fragment has >= 2 attachments in a biconnected graph");
        let mut path = Vec::new();
        let mut x = b;
        while x != a0 {
            let d = pred[x].unwrap();
            path.push(d);
            x = tail_of(g, d);
        }
        path.reverse();

        // Split face f along the path from a0 to b.
        let darts = self.face_darts[f].clone();
        let pos_a = darts
            .iter()
            .position(|&d| head_of(g, d) == a0)
            .expect("attachment on face");
        let pos_b = darts.iter().position(|&d| head_of(g, d) == b).expect("attachment on face");
        // Orbit pieces: after entering a0 (at pos_a) up to entering b, and the rest.
        let take = |from: usize, to: usize| -> Vec<DartId> {
            let mut out = Vec::new();
            let mut i = (from + 1) % darts.len();
            loop {
                out.push(darts[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % darts.len();
            }
            out
        };
        let seg_ab = take(pos_a, pos_b); // darts from a0 around to b
        let seg_ba = take(pos_b, pos_a);

        // Insert path darts into rotations. At a0 the path leaves just after
        // the dart the face-orbit uses to leave a0; at b it arrives before the
        // orbit's departure; interior path vertices are fresh (degree-2 for now).
        let first = path[0];
        let last = *path.last().unwrap();
        // Face f's orbit enters a0 via darts[pos_a] and leaves via the next
        // dart in the orbit, which is seg_ab[0].
        let leave_a = seg_ab[0];
        let leave_b = seg_ba[0];
        let at_a = rev_pos(&self.rot[a0], leave_a);
        insert_after(&mut self.rot[a0], at_a, first);
        let at_b = rev_pos(&self.rot[b], leave_b);
        insert_after(&mut self.rot[b], at_b, rev(last));
        for w in path.windows(2) {
            let (din, dout) = (w[0], w[1]);
            let v = head_of(g, din);
            self.rot[v] = vec![dout, rev(din)];
            self.embedded_verts[v] = true;
        }
        for &d in &path {
            self.embedded_edges[dart_edge(d)] = true;
        }

        // New faces: path + seg_ba (left of path) and rev(path) + seg_ab.
        let fwd_path: Vec<DartId> = path.clone();
        let bwd_path: Vec<DartId> = path.iter().rev().map(|&d| rev(d)).collect();
        let mut f1 = fwd_path;
        f1.extend(seg_ba);
        let mut f2 = bwd_path;
        f2.extend(seg_ab);
        let verts_of = |darts: &Vec<DartId>| -> Vec<VertexId> {
            let mut vs: Vec<VertexId> = darts.iter().map(|&d| tail_of(g, d)).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        };
        self.face_verts[f] = verts_of(&f1);
        self.face_darts[f] = f1;
        let v2 = verts_of(&f2);
        self.face_darts.push(f2);
        self.face_verts.push(v2);
    }
}

fn rev_pos(rot: &[DartId], dart: DartId) -> usize {
    rot.iter().position(|&x| x == dart).expect("dart present in rotation")
}

fn insert_after(rot: &mut Vec<DartId>, pos: usize, dart: DartId) {
    // Insert `dart` immediately counterclockwise of rot[pos] — that is, insert
    // before rot[pos] in clockwise order... The face orbit leaving via
    // rot[pos] must now leave via `dart` first, so `dart` goes at pos,
    // shifting rot[pos] right.
    rot.insert(pos, dart);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_faces_and_orbits() {
        let g = cycle(3);
        // Clockwise rotations for a triangle drawn with interior "inside":
        // at each vertex the outgoing forward dart, then the reversed incoming.
        let rot = vec![vec![0, 5], vec![2, 1], vec![4, 3]];
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        assert_eq!(pg.faces().len(), 2);
        let f0 = pg.face(0);
        let f1 = pg.face(1);
        assert_eq!(f0.len(), 3);
        assert_eq!(f1.len(), 3);
        // One orbit is the forward darts, the other the reversed ones.
        let has_fwd = |f: &Face| f.darts.contains(&0);
        assert!(has_fwd(f0) != has_fwd(f1));
        // Corner ownership: every vertex has one corner on each face.
        for v in 0..3 {
            let mut fs: Vec<FaceId> =
                (0..pg.corner_count(v)).map(|i| pg.corner_face(v, i)).collect();
            fs.sort_unstable();
            assert_eq!(fs, vec![0, 1]);
        }
    }

    #[test]
    fn c4_has_two_plane_graphs() {
        let g = cycle(4);
        let all = enumerate_plane_graphs(&g, 10).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn k4_has_eight_plane_graphs() {
        let all = enumerate_plane_graphs(&k4(), 10).unwrap();
        assert_eq!(all.len(), 8);
        for pg in &all {
            assert_eq!(pg.faces().len(), 4);
            assert!(pg.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn k5_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        let g = Graph::new(5, edges).unwrap();
        assert!(matches!(enumerate_plane_graphs(&g, 10), Err(PlanarError::NotPlanar)));
        assert!(planar_embed(&g).is_none());
    }

    #[test]
    fn k33_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                edges.push((i, j));
            }
        }
        let g = Graph::new(6, edges).unwrap();
        assert!(planar_embed(&g).is_none());
        assert!(matches!(enumerate_plane_graphs(&g, 10), Err(PlanarError::NotPlanar)));
    }

    #[test]
    fn too_large_guard() {
        let g = cycle(11);
        assert!(matches!(
            enumerate_plane_graphs(&g, 10),
            Err(PlanarError::TooLarge { n: 11, max: 10 })
        ));
    }

    #[test]
    fn demoucron_embeds_k4_and_prism() {
        let g = k4();
        let rot = planar_embed(&g).expect("K4 planar");
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        assert_eq!(pg.faces().len(), 4);

        let prism = Graph::new(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        let rot = planar_embed(&prism).expect("prism planar");
        let pg = PlaneGraph::new(prism, rot, 0).unwrap();
        assert_eq!(pg.faces().len(), 5);
    }

    #[test]
    fn mirror_preserves_faces() {
        let g = k4();
        let rot = planar_embed(&g).unwrap();
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        let m = pg.mirrored();
        assert_eq!(m.faces().len(), 4);
        // Mirroring twice gives back the original rotation system.
        let mm = m.mirrored();
        assert_eq!(mm.rotations(), pg.rotations());
    }

    #[test]
    fn single_vertex_plane_graph() {
        let g = Graph::new(1, vec![]).unwrap();
        let pg = PlaneGraph::new(g, vec![vec![]], 0).unwrap();
        assert_eq!(pg.faces().len(), 1);
        assert!(pg.face(0).is_empty());
    }
}

//! Orthogonal representations: corner angles, bend strings, turn numbers,
//! spirality of two-pole components, and component substitution.
//!
//! An `OrthoRep` pairs a plane graph with an angle for every corner and a
//! bend string for every dart. Walking any face with its interior on the
//! left, a 90° corner or a bend toward the interior counts +1 and reflex
//! ones −1; the walk totals +4 on internal faces and −4 on the external one.
//!
//! The spirality of a two-pole component measures how much it "winds" while
//! traversing it pole to pole; it is a half-integer stored doubled
//! (`TwiceSpirality`) and is independent of the traversal path chosen.

use crate::graph::{EdgeId, SubMap, VertexId};
use crate::planar::{dart_edge, rev, DartId, PlaneGraph};
use serde_json::{json, Map, Value};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bend {
    L,
    R,
}

impl Bend {
    pub fn flip(self) -> Bend {
        match self {
            Bend::L => Bend::R,
            Bend::R => Bend::L,
        }
    }
    pub fn as_char(self) -> char {
        match self {
            Bend::L => 'L',
            Bend::R => 'R',
        }
    }
    /// Turn contribution while traveling over the bend: right +1, left −1.
    pub fn turn(self) -> i32 {
        match self {
            Bend::L => -1,
            Bend::R => 1,
        }
    }
}

pub fn bends_to_string(bends: &[Bend]) -> String {
    bends.iter().map(|b| b.as_char()).collect()
}

pub fn parse_bend_string(s: &str) -> Result<Vec<Bend>, OrthoError> {
    s.chars()
        .map(|c| match c {
            'L' => Ok(Bend::L),
            'R' => Ok(Bend::R),
            other => Err(OrthoError::Invalid(format!("bad bend character {other:?}"))),
        })
        .collect()
}

/// The same bends as seen from the opposite direction: reversed order,
/// letters swapped.
pub fn reverse_bends(bends: &[Bend]) -> Vec<Bend> {
    bends.iter().rev().map(|b| b.flip()).collect()
}

#[derive(Debug, Error)]
pub enum OrthoError {
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("spirality mismatch: expected {expected}, found {found}")]
    SpiralityMismatch { expected: TwiceSpirality, found: TwiceSpirality },
    #[error("incompatible poles: {0}")]
    IncompatiblePoles(String),
    #[error("invalid representation: {0}")]
    Invalid(String),
}

/// Spirality doubled, so semi-integer values stay exact in an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwiceSpirality(pub i32);

impl TwiceSpirality {
    pub fn from_integer(s: i32) -> Self {
        TwiceSpirality(2 * s)
    }
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for TwiceSpirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A plane graph with a bend string per dart and an angle per corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoRep {
    pub(crate) pg: PlaneGraph,
    /// `bends[d]`: bends met traversing dart `d` tail→head.
    pub(crate) bends: Vec<Vec<Bend>>,
    /// `angles[v][i]`: degrees of the clockwise corner between `rot[v][i]`
    /// and `rot[v][i+1]`.
    pub(crate) angles: Vec<Vec<u16>>,
}

impl OrthoRep {
    /// `edge_bends[e]` is read along dart `2e`; the opposite dart gets the
    /// reversed, letter-swapped string automatically.
    pub fn new(
        pg: PlaneGraph,
        edge_bends: Vec<Vec<Bend>>,
        angles: Vec<Vec<u16>>,
    ) -> Result<Self, OrthoError> {
        let m = pg.graph().edge_count();
        if edge_bends.len() != m {
            return Err(OrthoError::Invalid(format!(
                "{} bend strings for {m} edges",
                edge_bends.len()
            )));
        }
        if angles.len() != pg.graph().n() {
            return Err(OrthoError::Invalid(format!(
                "{} angle lists for {} vertices",
                angles.len(),
                pg.graph().n()
            )));
        }
        for (v, list) in angles.iter().enumerate() {
            if list.len() != pg.corner_count(v) {
                return Err(OrthoError::Invalid(format!(
                    "vertex {v}: {} angles for {} corners",
                    list.len(),
                    pg.corner_count(v)
                )));
            }
        }
        let mut bends = vec![Vec::new(); 2 * m];
        for (e, list) in edge_bends.into_iter().enumerate() {
            bends[2 * e + 1] = reverse_bends(&list);
            bends[2 * e] = list;
        }
        Ok(OrthoRep { pg, bends, angles })
    }

    pub fn plane(&self) -> &PlaneGraph {
        &self.pg
    }
    pub fn graph(&self) -> &crate::graph::Graph {
        self.pg.graph()
    }
    pub fn bends_along(&self, d: DartId) -> &[Bend] {
        &self.bends[d]
    }
    pub fn bend_string(&self, d: DartId) -> String {
        bends_to_string(&self.bends[d])
    }
    pub fn angle(&self, v: VertexId, corner: usize) -> u16 {
        self.angles[v][corner]
    }
    pub fn angles_at(&self, v: VertexId) -> &[u16] {
        &self.angles[v]
    }

    #[cfg(test)]
    pub(crate) fn set_edge_bends(&mut self, e: EdgeId, along_forward: Vec<Bend>) {
        self.bends[2 * e + 1] = reverse_bends(&along_forward);
        self.bends[2 * e] = along_forward;
    }

    pub fn total_bends(&self) -> usize {
        (0..self.graph().edge_count()).map(|e| self.bends[2 * e].len()).sum()
    }

    /// Corner and bend turns around face `f`, walking with the interior on
    /// the left: +4 on internal faces, −4 on the external one.
    pub fn face_turn_sum(&self, f: crate::planar::FaceId) -> i32 {
        let mut s = 0i32;
        for &d in &self.pg.face(f).darts {
            let w = self.pg.head(d);
            let i = self.pg.pos_in_rotation(rev(d));
            s += 2 - self.angles[w][i] as i32 / 90;
            for &b in &self.bends[d] {
                s -= b.turn();
            }
        }
        s
    }

    /// Empty iff the representation is well-formed: angle domains, 360° sums,
    /// and the ±4 face equations.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let g = self.graph();
        for v in 0..g.n() {
            let list = &self.angles[v];
            if list.is_empty() {
                continue;
            }
            let sum: u32 = list.iter().map(|&a| a as u32).sum();
            if sum != 360 {
                out.push(format!("vertex {v}: angles sum to {sum}, expected 360"));
            }
            for (i, &a) in list.iter().enumerate() {
                if !matches!(a, 90 | 180 | 270 | 360) {
                    out.push(format!("vertex {v} corner {i}: angle {a} out of domain"));
                } else if a == 360 && g.degree(v) > 1 {
                    out.push(format!("vertex {v}: 360 corner at degree {}", g.degree(v)));
                }
            }
        }
        for f in self.pg.faces() {
            if f.is_empty() {
                continue;
            }
            let want = if f.external { -4 } else { 4 };
            let got = self.face_turn_sum(f.id);
            if got != want {
                out.push(format!(
                    "face {}{}: turn sum {got}, expected {want}",
                    f.id,
                    if f.external { " (external)" } else { "" }
                ));
            }
        }
        out
    }

    /// Right turns minus left turns traveling the dart sequence: bends count
    /// ±1 each, and at every intermediate vertex the corners on the left of
    /// the travel are swept to find the turn.
    pub fn turn_number(&self, path: &[DartId]) -> Result<i32, OrthoError> {
        if path.is_empty() {
            return Err(OrthoError::NotAPath("empty path".into()));
        }
        for &d in path {
            if d >= self.bends.len() {
                return Err(OrthoError::NotAPath(format!("dart {d} out of range")));
            }
        }
        let mut t = 0i32;
        for (i, &d) in path.iter().enumerate() {
            for &b in &self.bends[d] {
                t += b.turn();
            }
            if i + 1 < path.len() {
                let next = path[i + 1];
                let w = self.pg.head(d);
                if self.pg.tail(next) != w {
                    return Err(OrthoError::NotAPath(format!(
                        "dart {next} does not start at vertex {w}"
                    )));
                }
                let rot = self.pg.rotation(w);
                let start = self.pg.pos_in_rotation(rev(d));
                let mut j = start;
                let mut sweep = 0i32;
                loop {
                    sweep += self.angles[w][j] as i32;
                    j = (j + 1) % rot.len();
                    if rot[j] == next {
                        break;
                    }
                    if j == start {
                        return Err(OrthoError::NotAPath(format!(
                            "dart {next} not incident to vertex {w}"
                        )));
                    }
                }
                t += sweep / 90 - 2;
            }
        }
        Ok(t)
    }

    /// JSON form: embedding (clockwise edge lists + external face id), bend
    /// strings keyed `lo-hi[:k]` read from the lower vertex id, and angles as
    /// `[vertex, face, degrees]` triples in rotation order.
    pub fn to_json(&self) -> Value {
        let g = self.graph();
        let rotations: Vec<Vec<usize>> = (0..g.n())
            .map(|v| self.pg.rotation(v).iter().map(|&d| dart_edge(d)).collect())
            .collect();
        let mut bends = Map::new();
        for e in 0..g.edge_count() {
            let (a, b) = g.endpoints(e);
            let d = if a <= b { 2 * e } else { 2 * e + 1 };
            bends.insert(edge_key(g, e), Value::String(self.bend_string(d)));
        }
        let mut angles = Vec::new();
        for v in 0..g.n() {
            for i in 0..self.pg.corner_count(v) {
                angles.push(json!([v, self.pg.corner_face(v, i), self.angles[v][i]]));
            }
        }
        json!({
            "embedding": {
                "rotations": rotations,
                "external_face": self.pg.external_face(),
            },
            "bends": bends,
            "angles": angles,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("representation serializes")
    }

    pub fn from_json(input: &str) -> Result<OrthoRep, OrthoError> {
        let val: Value = serde_json::from_str(input)
            .map_err(|e| OrthoError::Invalid(format!("bad JSON: {e}")))?;
        Self::from_json_value(&val)
    }

    pub fn from_json_value(val: &Value) -> Result<OrthoRep, OrthoError> {
        let bad = |m: &str| OrthoError::Invalid(m.to_string());
        let emb = val.get("embedding").ok_or_else(|| bad("missing embedding"))?;
        let rot_val = emb
            .get("rotations")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing embedding.rotations"))?;
        let n = rot_val.len();
        let mut rot_edges: Vec<Vec<EdgeId>> = Vec::with_capacity(n);
        for row in rot_val {
            let row = row.as_array().ok_or_else(|| bad("rotation row not an array"))?;
            let mut list = Vec::with_capacity(row.len());
            for x in row {
                list.push(
                    x.as_u64().ok_or_else(|| bad("edge id not an integer"))? as EdgeId
                );
            }
            rot_edges.push(list);
        }
        // Endpoints: each edge id must occur at exactly two vertices.
        let m = rot_edges.iter().flatten().copied().max().map_or(0, |x| x + 1);
        let mut occ: Vec<Vec<VertexId>> = vec![Vec::new(); m];
        for (v, list) in rot_edges.iter().enumerate() {
            for &e in list {
                occ[e].push(v);
            }
        }
        let mut endpoints = Vec::with_capacity(m);
        for (e, vs) in occ.iter().enumerate() {
            if vs.len() != 2 {
                return Err(OrthoError::Invalid(format!(
                    "edge {e} listed at {} vertices",
                    vs.len()
                )));
            }
            endpoints.push((vs[0].min(vs[1]), vs[0].max(vs[1])));
        }
        let graph = crate::graph::Graph::new(n, endpoints)
            .map_err(|e| OrthoError::Invalid(format!("bad graph: {e}")))?;
        let rot: Vec<Vec<DartId>> = rot_edges
            .iter()
            .enumerate()
            .map(|(v, list)| {
                list.iter()
                    .map(|&e| if graph.endpoints(e).0 == v { 2 * e } else { 2 * e + 1 })
                    .collect()
            })
            .collect();
        let external = emb
            .get("external_face")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing embedding.external_face"))?
            as usize;
        let pg = PlaneGraph::new(graph, rot, external)
            .map_err(|e| OrthoError::Invalid(format!("bad embedding: {e}")))?;

        // Angles, in rotation order per vertex.
        let mut angles: Vec<Vec<u16>> = vec![Vec::new(); n];
        let angle_rows =
            val.get("angles").and_then(Value::as_array).ok_or_else(|| bad("missing angles"))?;
        for row in angle_rows {
            let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| {
                bad("angle entry must be [vertex, face, degrees]")
            })?;
            let v = row[0].as_u64().ok_or_else(|| bad("bad angle vertex"))? as usize;
            let f = row[1].as_u64().ok_or_else(|| bad("bad angle face"))? as usize;
            let a = row[2].as_u64().ok_or_else(|| bad("bad angle degrees"))? as u16;
            if v >= n {
                return Err(bad("angle vertex out of range"));
            }
            let i = angles[v].len();
            if i >= pg.corner_count(v) {
                return Err(OrthoError::Invalid(format!("too many angles at vertex {v}")));
            }
            if pg.corner_face(v, i) != f {
                return Err(OrthoError::Invalid(format!(
                    "angle {i} at vertex {v} names face {f}, corner belongs to face {}",
                    pg.corner_face(v, i)
                )));
            }
            angles[v].push(a);
        }

        // Bends keyed lo-hi[:k], read from the lower vertex id.
        let mut edge_bends: Vec<Vec<Bend>> = vec![Vec::new(); m];
        if let Some(map) = val.get("bends").and_then(Value::as_object) {
            for (key, s) in map {
                let s = s.as_str().ok_or_else(|| bad("bend value not a string"))?;
                let (pair, k) = match key.split_once(':') {
                    Some((p, k)) => (
                        p,
                        k.parse::<usize>()
                            .map_err(|_| OrthoError::Invalid(format!("bad bend key {key}")))?,
                    ),
                    None => (key.as_str(), 0),
                };
                let (lo, hi) = pair
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .ok_or_else(|| OrthoError::Invalid(format!("bad bend key {key}")))?;
                let g = pg.graph();
                let candidates: Vec<EdgeId> = (0..m)
                    .filter(|&e| {
                        let (a, b) = g.endpoints(e);
                        (a.min(b), a.max(b)) == (lo.min(hi), lo.max(hi))
                    })
                    .collect();
                let e = *candidates
                    .get(k)
                    .ok_or_else(|| OrthoError::Invalid(format!("bend key {key} matches no edge")))?;
                let parsed = parse_bend_string(s)?;
                // The canonical direction is lo→hi; map to dart 2e.
                edge_bends[e] = if g.endpoints(e).0 <= g.endpoints(e).1 {
                    parsed
                } else {
                    reverse_bends(&parsed)
                };
            }
        }
        OrthoRep::new(pg, edge_bends, angles)
    }
}

/// Canonical JSON key for an edge: `lo-hi`, with `:k` appended when several
/// edges share the endpoints (k = rank among them in edge-id order).
pub fn edge_key(g: &crate::graph::Graph, e: EdgeId) -> String {
    let (a, b) = g.endpoints(e);
    let (lo, hi) = (a.min(b), a.max(b));
    let siblings: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&x| {
            let (p, q) = g.endpoints(x);
            (p.min(q), p.max(q)) == (lo, hi)
        })
        .collect();
    if siblings.len() > 1 {
        let k = siblings.iter().position(|&x| x == e).unwrap();
        format!("{lo}-{hi}:{k}")
    } else {
        format!("{lo}-{hi}")
    }
}

/// Restriction of `h` to an edge subset: induced rotations, bends copied,
/// and each corner of a kept vertex widened across the dropped darts (gap
/// corners sum the host corners they span). The external face is the unique
/// face whose turn sum is −4.
pub fn restrict(h: &OrthoRep, edges: &[EdgeId]) -> Result<(OrthoRep, SubMap), OrthoError> {
    if edges.is_empty() {
        return Err(OrthoError::Invalid("restriction to an empty edge set".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &e in edges {
        if e >= h.graph().edge_count() || !seen.insert(e) {
            return Err(OrthoError::Invalid(format!("bad or repeated edge {e}")));
        }
    }
    let (sub, map) = h.graph().edge_subgraph(edges);
    if !sub.is_connected() {
        return Err(OrthoError::Invalid("restriction must be connected".into()));
    }
    let mut rot: Vec<Vec<DartId>> = Vec::with_capacity(sub.n());
    let mut angles: Vec<Vec<u16>> = Vec::with_capacity(sub.n());
    for lv in 0..sub.n() {
        let hv = map.vmap[lv];
        let hrot = h.pg.rotation(hv);
        let kept: Vec<(usize, DartId)> = hrot
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| {
                map.local_edge(dart_edge(d)).map(|le| (i, 2 * le + (d & 1)))
            })
            .collect();
        debug_assert!(!kept.is_empty());
        let mut lrot = Vec::with_capacity(kept.len());
        let mut langles = Vec::with_capacity(kept.len());
        for (idx, &(i, ld)) in kept.iter().enumerate() {
            lrot.push(ld);
            let next_i = kept[(idx + 1) % kept.len()].0;
            let mut a: u32 = 0;
            let mut j = i;
            loop {
                a += h.angles[hv][j] as u32;
                j = (j + 1) % hrot.len();
                if j == next_i {
                    break;
                }
            }
            langles.push(a as u16);
        }
        rot.push(lrot);
        angles.push(langles);
    }
    let edge_bends: Vec<Vec<Bend>> =
        map.emap.iter().map(|&he| h.bends[2 * he].clone()).collect();
    let pg = PlaneGraph::new(sub, rot, 0)
        .map_err(|e| OrthoError::Invalid(format!("restriction not embeddable: {e}")))?;
    let rep0 = OrthoRep::new(pg, edge_bends, angles)?;
    let mut ext = None;
    for f in 0..rep0.pg.faces().len() {
        if rep0.face_turn_sum(f) == -4 {
            if ext.is_some() {
                return Err(OrthoError::Invalid(
                    "restriction has more than one −4 face".into(),
                ));
            }
            ext = Some(f);
        }
    }
    let ext = ext.ok_or_else(|| OrthoError::Invalid("restriction has no −4 face".into()))?;
    let rep = OrthoRep {
        pg: rep0.pg.with_external(ext),
        bends: rep0.bends,
        angles: rep0.angles,
    };
    Ok((rep, map))
}

/// One slot in a pole's host rotation: a component dart (named by its id in
/// the restricted representation) or an edge leaving the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleItem {
    Inside(DartId),
    Outside,
}

/// The full clockwise picture around one pole in the host: every incident
/// dart classified inside/outside, plus the host corner angles between
/// consecutive items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleView {
    /// Pole's vertex id in the restricted representation.
    pub vertex: VertexId,
    pub items: Vec<PoleItem>,
    /// `angles[i]` sits clockwise between `items[i]` and `items[i+1]`.
    pub angles: Vec<u16>,
}

impl PoleView {
    pub fn indeg(&self) -> usize {
        self.items.iter().filter(|it| matches!(it, PoleItem::Inside(_))).count()
    }
    pub fn outdeg(&self) -> usize {
        self.items.len() - self.indeg()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralityContext {
    /// Ordered poles (u, v) as vertex ids of the restricted representation.
    pub poles: (VertexId, VertexId),
    pub views: (PoleView, PoleView),
}

/// Build the context for a component of `host` identified by `map`, with the
/// poles given as host vertex ids.
pub fn context_for(
    host: &OrthoRep,
    map: &SubMap,
    poles_host: (VertexId, VertexId),
) -> Result<SpiralityContext, OrthoError> {
    let view = |hp: VertexId| -> Result<PoleView, OrthoError> {
        let lv = map
            .local_vertex(hp)
            .ok_or_else(|| OrthoError::ContextMismatch(format!("pole {hp} not in component")))?;
        let items = host
            .pg
            .rotation(hp)
            .iter()
            .map(|&d| match map.local_edge(dart_edge(d)) {
                Some(le) => PoleItem::Inside(2 * le + (d & 1)),
                None => PoleItem::Outside,
            })
            .collect();
        Ok(PoleView { vertex: lv, items, angles: host.angles[hp].clone() })
    };
    Ok(SpiralityContext {
        poles: (
            map.local_vertex(poles_host.0)
                .ok_or_else(|| OrthoError::ContextMismatch("pole not in component".into()))?,
            map.local_vertex(poles_host.1)
                .ok_or_else(|| OrthoError::ContextMismatch("pole not in component".into()))?,
        ),
        views: (view(poles_host.0)?, view(poles_host.1)?),
    })
}

fn check_view(h: &OrthoRep, view: &PoleView) -> Result<(), OrthoError> {
    let v = view.vertex;
    if v >= h.graph().n() {
        return Err(OrthoError::ContextMismatch(format!("pole {v} out of range")));
    }
    if view.items.len() != view.angles.len() || view.items.len() < 2 {
        return Err(OrthoError::ContextMismatch("malformed pole view".into()));
    }
    let total: u32 = view.angles.iter().map(|&a| a as u32).sum();
    if total != 360 {
        return Err(OrthoError::ContextMismatch(format!(
            "pole {v}: host angles sum to {total}"
        )));
    }
    if view.angles.iter().any(|a| !matches!(a, 90 | 180 | 270)) {
        return Err(OrthoError::ContextMismatch(format!("pole {v}: bad host angle")));
    }
    if view.outdeg() == 0 {
        return Err(OrthoError::ContextMismatch(format!("pole {v} has no outside edge")));
    }
    let inside: Vec<DartId> = view
        .items
        .iter()
        .filter_map(|it| match it {
            PoleItem::Inside(d) => Some(*d),
            PoleItem::Outside => None,
        })
        .collect();
    let rot = h.pg.rotation(v);
    if inside.len() != rot.len() {
        return Err(OrthoError::ContextMismatch(format!(
            "pole {v}: {} inside darts for degree {}",
            inside.len(),
            rot.len()
        )));
    }
    // Cyclic order of the inside darts must match the restricted rotation.
    let s = rot
        .iter()
        .position(|&d| d == inside[0])
        .ok_or_else(|| OrthoError::ContextMismatch(format!("pole {v}: unknown dart")))?;
    for (j, &d) in inside.iter().enumerate() {
        if rot[(s + j) % rot.len()] != d {
            return Err(OrthoError::ContextMismatch(format!(
                "pole {v}: inside darts out of order"
            )));
        }
    }
    // Sweeps between consecutive inside darts must reproduce the restricted
    // corner angles (gap corners sum what they span).
    let positions: Vec<usize> = view
        .items
        .iter()
        .enumerate()
        .filter_map(|(i, it)| matches!(it, PoleItem::Inside(_)).then_some(i))
        .collect();
    for (j, &i) in positions.iter().enumerate() {
        let next = positions[(j + 1) % positions.len()];
        let mut a: u32 = 0;
        let mut k = i;
        loop {
            a += view.angles[k] as u32;
            k = (k + 1) % view.items.len();
            if k == next {
                break;
            }
        }
        let d = inside[j];
        let expect = h.angles[v][h.pg.pos_in_rotation(d)] as u32;
        if a != expect {
            return Err(OrthoError::ContextMismatch(format!(
                "pole {v}: host sweep {a} vs restricted corner {expect}"
            )));
        }
    }
    Ok(())
}

fn view_sweep(view: &PoleView, from: usize, to: usize) -> i32 {
    let mut a = 0i32;
    let mut j = from;
    while j != to {
        a += view.angles[j] as i32;
        j = (j + 1) % view.items.len();
    }
    a
}

/// Alias turn at a pole, per outside dart: the turn made entering along that
/// outside edge and leaving along the component path (at u), or arriving by
/// the path and leaving along the outside edge (at v).
fn pole_contribution(
    view: &PoleView,
    end_dart: DartId,
    at_start: bool,
) -> Result<i32, OrthoError> {
    let p = view.indeg();
    let q = view.outdeg();
    if p == 1 {
        return Ok(0);
    }
    let end_idx = view
        .items
        .iter()
        .position(|it| *it == PoleItem::Inside(end_dart))
        .ok_or_else(|| {
            OrthoError::ContextMismatch(format!("path dart {end_dart} missing from pole view"))
        })?;
    let turns: Vec<i32> = view
        .items
        .iter()
        .enumerate()
        .filter(|(_, it)| matches!(it, PoleItem::Outside))
        .map(|(oi, _)| {
            let sweep =
                if at_start { view_sweep(view, oi, end_idx) } else { view_sweep(view, end_idx, oi) };
            sweep / 90 - 2
        })
        .collect();
    match (p, q) {
        (_, 1) => Ok(2 * turns[0]),
        (2, 2) => Ok(turns[0] + turns[1]),
        _ => Err(OrthoError::ContextMismatch(format!(
            "pole with {p} inside and {q} outside edges"
        ))),
    }
}

/// Spirality along a caller-chosen pole-to-pole dart path.
pub fn spirality_with_path(
    h: &OrthoRep,
    ctx: &SpiralityContext,
    path: &[DartId],
) -> Result<TwiceSpirality, OrthoError> {
    let (u, v) = ctx.poles;
    if u == v {
        return Err(OrthoError::ContextMismatch("poles coincide".into()));
    }
    if ctx.views.0.vertex != u || ctx.views.1.vertex != v {
        return Err(OrthoError::ContextMismatch("views do not match poles".into()));
    }
    check_view(h, &ctx.views.0)?;
    check_view(h, &ctx.views.1)?;
    if path.is_empty()
        || h.pg.tail(path[0]) != u
        || h.pg.head(*path.last().unwrap()) != v
    {
        return Err(OrthoError::NotAPath("path must run pole to pole".into()));
    }
    let n = h.turn_number(path)?;
    let cu = pole_contribution(&ctx.views.0, path[0], true)?;
    let cv = pole_contribution(&ctx.views.1, rev(*path.last().unwrap()), false)?;
    Ok(TwiceSpirality(2 * n + cu + cv))
}

/// Spirality of the restricted representation `h` under `ctx`; the value is
/// independent of which internal pole-to-pole path is used.
pub fn spirality(h: &OrthoRep, ctx: &SpiralityContext) -> Result<TwiceSpirality, OrthoError> {
    let path = find_path(h, ctx.poles.0, ctx.poles.1)
        .ok_or_else(|| OrthoError::ContextMismatch("poles not connected in component".into()))?;
    spirality_with_path(h, ctx, &path)
}

/// Deterministic pole-to-pole dart path (BFS, smallest edge id first).
pub fn find_path(h: &OrthoRep, u: VertexId, v: VertexId) -> Option<Vec<DartId>> {
    let g = h.graph();
    if u >= g.n() || v >= g.n() || u == v {
        return None;
    }
    let mut pred: Vec<Option<DartId>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut queue = VecDeque::new();
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        let mut eids: Vec<EdgeId> = g.adj(x).to_vec();
        eids.sort_unstable();
        for e in eids {
            let y = g.other_end(e, x);
            if !seen[y] {
                seen[y] = true;
                pred[y] = Some(if g.endpoints(e).0 == x { 2 * e } else { 2 * e + 1 });
                queue.push_back(y);
            }
        }
    }
    if !seen[v] {
        return None;
    }
    let mut path = Vec::new();
    let mut x = v;
    while x != u {
        let d = pred[x]?;
        path.push(d);
        x = h.pg.tail(d);
    }
    path.reverse();
    Some(path)
}

/// Convenience: restrict `host` to `edges` and measure the spirality of the
/// component between the given host poles.
pub fn component_spirality(
    host: &OrthoRep,
    edges: &[EdgeId],
    poles_host: (VertexId, VertexId),
) -> Result<TwiceSpirality, OrthoError> {
    let (rep, map) = restrict(host, edges)?;
    let ctx = context_for(host, &map, poles_host)?;
    spirality(&rep, &ctx)
}

/// Replace the component of `h` identified by `map` with `h_new`, an
/// equal-spirality representation of the same subgraph in restricted form.
/// Everything outside the component — bends, outside corners, and the two
/// boundary corners at each pole — is kept bitwise.
pub fn substitute_component(
    h: &OrthoRep,
    map: &SubMap,
    h_new: &OrthoRep,
) -> Result<OrthoRep, OrthoError> {
    let (old, map2) = restrict(h, &map.emap)?;
    debug_assert_eq!(map.vmap, map2.vmap);
    let sub = old.graph();
    if h_new.graph() != sub {
        return Err(OrthoError::Invalid(
            "replacement is a representation of a different graph".into(),
        ));
    }

    // Poles: local vertices with host degree above their component degree.
    let poles: Vec<VertexId> = (0..sub.n())
        .filter(|&lv| h.graph().degree(map.vmap[lv]) > sub.degree(lv))
        .collect();
    if poles.len() != 2 {
        return Err(OrthoError::IncompatiblePoles(format!(
            "component attaches at {} vertices, need exactly 2",
            poles.len()
        )));
    }
    let (pu, pv) = (poles[0], poles[1]);

    // The attachment corner of a restricted representation at a pole: its
    // unique corner on the external face, standing for everything outside.
    let gap_corner = |rep: &OrthoRep, lv: VertexId| -> Result<usize, OrthoError> {
        let ext = rep.pg.external_face();
        let hits: Vec<usize> = (0..rep.pg.corner_count(lv))
            .filter(|&i| rep.pg.corner_face(lv, i) == ext)
            .collect();
        if hits.len() != 1 {
            return Err(OrthoError::IncompatiblePoles(format!(
                "pole {lv}: {} corners on the external face",
                hits.len()
            )));
        }
        Ok(hits[0])
    };
    for &lp in &[pu, pv] {
        let gi_old = gap_corner(&old, lp)?;
        let gi_new = gap_corner(h_new, lp)?;
        if old.angles[lp][gi_old] != h_new.angles[lp][gi_new] {
            return Err(OrthoError::IncompatiblePoles(format!(
                "pole {lp}: attachment angle {} vs {}",
                old.angles[lp][gi_old], h_new.angles[lp][gi_new]
            )));
        }
    }

    // Spirality guard, both measured against the host's outside structure.
    let ctx_old = context_for(h, map, (map.vmap[pu], map.vmap[pv]))?;
    let sigma_old = spirality(&old, &ctx_old)?;
    let ctx_new = SpiralityContext {
        poles: (pu, pv),
        views: (
            rebuild_view(&ctx_old.views.0, h_new, pu)?,
            rebuild_view(&ctx_old.views.1, h_new, pv)?,
        ),
    };
    let sigma_new = spirality(h_new, &ctx_new)?;
    if sigma_old != sigma_new {
        return Err(OrthoError::SpiralityMismatch { expected: sigma_old, found: sigma_new });
    }

    // Splice. Host dart for a component dart keeps the edge orientation.
    let to_host = |ld: DartId| -> DartId { 2 * map.emap[dart_edge(ld)] + (ld & 1) };
    let mut rot: Vec<Vec<DartId>> = h.pg.rotations().to_vec();
    let mut angles = h.angles.clone();
    for lv in 0..sub.n() {
        let hv = map.vmap[lv];
        if lv != pu && lv != pv {
            rot[hv] = h_new.pg.rotation(lv).iter().map(|&d| to_host(d)).collect();
            angles[hv] = h_new.angles[lv].clone();
            continue;
        }
        // Pole: replace the contiguous inside block in place, anchor the new
        // fan at the block start, keep outside and boundary corners.
        let hrot = h.pg.rotation(hv);
        let inside: Vec<bool> = hrot
            .iter()
            .map(|&d| map.local_edge(dart_edge(d)).is_some())
            .collect();
        let transitions = (0..hrot.len())
            .filter(|&i| inside[i] && !inside[(i + 1) % hrot.len()])
            .count();
        if transitions != 1 {
            return Err(OrthoError::Invalid(format!(
                "component darts not contiguous at host vertex {hv}"
            )));
        }
        let block_start = (0..hrot.len())
            .find(|&i| inside[i] && !inside[(i + hrot.len() - 1) % hrot.len()])
            .expect("a block start exists");
        // New fan in clockwise order, starting just after the gap corner.
        let gi = gap_corner(h_new, lv)?;
        let p = h_new.pg.corner_count(lv);
        let fan: Vec<DartId> =
            (0..p).map(|j| h_new.pg.rotation(lv)[(gi + 1 + j) % p]).collect();
        let mut new_rot = hrot.to_vec();
        let mut new_ang = h.angles[hv].clone();
        for (j, &ld) in fan.iter().enumerate() {
            let pos = (block_start + j) % hrot.len();
            new_rot[pos] = to_host(ld);
            if j + 1 < p {
                // Corner between consecutive fan darts comes from h_new.
                new_ang[pos] = h_new.angles[lv][h_new.pg.pos_in_rotation(ld)];
            }
            // The corner after the last fan dart is the kept boundary corner.
        }
        rot[hv] = new_rot;
        angles[hv] = new_ang;
    }

    // External face anchor: a host external dart outside the component.
    let anchor = h
        .pg
        .face(h.pg.external_face())
        .darts
        .iter()
        .copied()
        .find(|&d| map.local_edge(dart_edge(d)).is_none())
        .ok_or_else(|| {
            OrthoError::Invalid("external face lies inside the substituted component".into())
        })?;

    let mut edge_bends: Vec<Vec<Bend>> = (0..h.graph().edge_count())
        .map(|e| h.bends[2 * e].clone())
        .collect();
    for (le, &he) in map.emap.iter().enumerate() {
        edge_bends[he] = h_new.bends[2 * le].clone();
    }

    let pg = PlaneGraph::new(h.graph().clone(), rot, 0)
        .map_err(|e| OrthoError::Invalid(format!("substitution broke the embedding: {e}")))?;
    let pg = pg.with_external(pg.face_of_dart(anchor));
    let result = OrthoRep::new(pg, edge_bends, angles)?;
    let violations = result.validate();
    if !violations.is_empty() {
        return Err(OrthoError::Invalid(format!(
            "substitution produced an invalid representation: {}",
            violations.join("; ")
        )));
    }
    Ok(result)
}

/// A pole view with the inside slots re-filled from a replacement component:
/// same outside items, boundary and outside angles, new fan darts and fan
/// corners.
fn rebuild_view(
    old_view: &PoleView,
    h_new: &OrthoRep,
    lv: VertexId,
) -> Result<PoleView, OrthoError> {
    let len = old_view.items.len();
    let inside_pos: Vec<usize> = (0..len)
        .filter(|&i| matches!(old_view.items[i], PoleItem::Inside(_)))
        .collect();
    let p = inside_pos.len();
    if p != h_new.pg.corner_count(lv) {
        return Err(OrthoError::IncompatiblePoles(format!(
            "pole {lv}: replacement degree {} vs {}",
            h_new.pg.corner_count(lv),
            p
        )));
    }
    // Contiguity: exactly one inside→outside transition.
    let is_in = |i: usize| matches!(old_view.items[i], PoleItem::Inside(_));
    let transitions = (0..len).filter(|&i| is_in(i) && !is_in((i + 1) % len)).count();
    if transitions != 1 {
        return Err(OrthoError::IncompatiblePoles(format!(
            "pole {lv}: inside darts not contiguous"
        )));
    }
    let block_start = (0..len)
        .find(|&i| is_in(i) && !is_in((i + len - 1) % len))
        .expect("a block start exists");
    // New fan linearized starting after its external (gap) corner.
    let ext = h_new.pg.external_face();
    let gaps: Vec<usize> =
        (0..p).filter(|&i| h_new.pg.corner_face(lv, i) == ext).collect();
    if gaps.len() != 1 {
        return Err(OrthoError::IncompatiblePoles(format!(
            "pole {lv}: {} corners on the replacement's external face",
            gaps.len()
        )));
    }
    let gi = gaps[0];
    let mut items = old_view.items.clone();
    let mut angles = old_view.angles.clone();
    for j in 0..p {
        let ld = h_new.pg.rotation(lv)[(gi + 1 + j) % p];
        let pos = (block_start + j) % len;
        items[pos] = PoleItem::Inside(ld);
        if j + 1 < p {
            angles[pos] = h_new.angles[lv][h_new.pg.pos_in_rotation(ld)];
        }
    }
    Ok(PoleView { vertex: lv, items, angles })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::graph::Graph;
    use crate::planar::PlaneGraph;

    /// C4 drawn as a unit square: rotations [out, reversed-in] per vertex.
    pub(crate) fn square() -> OrthoRep {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let rot: Vec<Vec<DartId>> =
            (0..4).map(|v| vec![2 * v, 2 * ((v + 3) % 4) + 1]).collect();
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        // Dart 1 = rev(0) lies on the reversed orbit; make that face external.
        let ext = pg.face_of_dart(1);
        let pg = pg.with_external(ext);
        let angles: Vec<Vec<u16>> = (0..4)
            .map(|v| {
                // corner (v,0) follows dart 2v and belongs to face_of(rev(2v)).
                if pg.corner_face(v, 0) == pg.external_face() {
                    vec![270, 90]
                } else {
                    vec![90, 270]
                }
            })
            .collect();
        OrthoRep::new(pg, vec![Vec::new(); 4], angles).unwrap()
    }

    /// Theta graph drawn flat: poles 0 and 1 joined by a straight middle
    /// edge, a top branch through 2,3 and a bottom branch through 4,5.
    pub(crate) fn theta() -> OrthoRep {
        let g = Graph::new(
            6,
            vec![(0, 2), (2, 3), (3, 1), (0, 1), (0, 4), (4, 5), (5, 1)],
        )
        .unwrap();
        let rot: Vec<Vec<DartId>> = vec![
            vec![0, 6, 8],   // u: north to 2, east to 1, south to 4
            vec![5, 13, 7],  // v: north dart of edge 2, south of edge 6, west of edge 3
            vec![2, 1],      // 2: east to 3, south to 0
            vec![3, 4],      // 3: west to 2, south to 1
            vec![9, 10],     // 4: north to 0, east to 5
            vec![12, 11],    // 5: north to 1, west to 4
        ];
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        let ext = pg.face_of_dart(0); // dart 0 heads north along the west side
        let pg = pg.with_external(ext);
        let angles: Vec<Vec<u16>> = vec![
            vec![90, 90, 180],
            vec![180, 90, 90],
            vec![90, 270],
            vec![270, 90],
            vec![90, 270],
            vec![270, 90],
        ];
        OrthoRep::new(pg, vec![Vec::new(); 7], angles).unwrap()
    }

    /// Four pole-to-pole branches: the theta above plus an outer branch
    /// through 6,7 swinging around the bottom, giving both poles degree 4.
    /// Edge 8 carries two left bends; everything else is straight.
    pub(crate) fn four_branches() -> OrthoRep {
        let g = Graph::new(
            8,
            vec![
                (0, 2),
                (2, 3),
                (3, 1),
                (0, 1),
                (0, 4),
                (4, 5),
                (5, 1),
                (0, 6),
                (6, 7),
                (7, 1),
            ],
        )
        .unwrap();
        let rot: Vec<Vec<DartId>> = vec![
            vec![0, 6, 8, 14],
            vec![5, 19, 13, 7],
            vec![2, 1],
            vec![3, 4],
            vec![9, 10],
            vec![12, 11],
            vec![15, 16],
            vec![17, 18],
        ];
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        let ext = pg.face_of_dart(15);
        let pg = pg.with_external(ext);
        let angles: Vec<Vec<u16>> = vec![
            vec![90, 90, 90, 90],
            vec![90, 90, 90, 90],
            vec![90, 270],
            vec![270, 90],
            vec![90, 270],
            vec![270, 90],
            vec![90, 270],
            vec![90, 270],
        ];
        let mut edge_bends = vec![Vec::new(); 10];
        edge_bends[8] = vec![Bend::L, Bend::L];
        OrthoRep::new(pg, edge_bends, angles).unwrap()
    }

    /// Triangle embedding; the face through dart 0 is internal.
    pub(crate) fn triangle_plane() -> PlaneGraph {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let rot: Vec<Vec<DartId>> =
            (0..3).map(|v| vec![2 * v, 2 * ((v + 2) % 3) + 1]).collect();
        let pg = PlaneGraph::new(g, rot, 0).unwrap();
        let ext = pg.face_of_dart(1);
        pg.with_external(ext)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn square_validates_and_counts() {
        let h = square();
        assert!(h.validate().is_empty(), "{:?}", h.validate());
        assert_eq!(h.total_bends(), 0);
    }

    #[test]
    fn broken_square_reports_faces() {
        let mut h = square();
        // Swap one vertex's 90/270 pair: both face equations break.
        h.angles[0] = h.angles[0].iter().map(|&a| if a == 90 { 270 } else { 90 }).collect();
        let viol = h.validate();
        assert_eq!(viol.len(), 2, "{viol:?}");
        assert!(viol.iter().all(|s| s.starts_with("face")));
    }

    #[test]
    fn triangle_needs_a_bend() {
        let pg = triangle_plane();
        let inner = pg.face_of_dart(0);
        let angles: Vec<Vec<u16>> = (0..3)
            .map(|v| if pg.corner_face(v, 0) == inner { vec![90, 270] } else { vec![270, 90] })
            .collect();
        // Zero bends: inner face sums to 3, not 4.
        let flat = OrthoRep::new(pg.clone(), vec![Vec::new(); 3], angles.clone()).unwrap();
        assert_eq!(flat.validate().len(), 2);
        // One bend fixes it: dart 0 is on the inner orbit, bend left there.
        let mut bends = vec![Vec::new(); 3];
        bends[0] = vec![Bend::L];
        let bent = OrthoRep::new(pg, bends, angles).unwrap();
        assert!(bent.validate().is_empty(), "{:?}", bent.validate());
        assert_eq!(bent.total_bends(), 1);
    }

    #[test]
    fn turn_numbers_on_the_square() {
        let h = square();
        // Walking the internal orbit turns left at each corner.
        assert_eq!(h.turn_number(&[0]).unwrap(), 0);
        assert_eq!(h.turn_number(&[0, 2]).unwrap(), -1);
        assert_eq!(h.turn_number(&[0, 2, 4]).unwrap(), -2);
        // Antisymmetry.
        let fwd = h.turn_number(&[0, 2, 4]).unwrap();
        let bwd = h.turn_number(&[5, 3, 1]).unwrap();
        assert_eq!(fwd + bwd, 0);
        // Disconnected darts are not a path.
        assert!(matches!(h.turn_number(&[0, 4]), Err(OrthoError::NotAPath(_))));
        assert!(matches!(h.turn_number(&[]), Err(OrthoError::NotAPath(_))));
    }

    #[test]
    fn theta_validates() {
        let h = theta();
        assert!(h.validate().is_empty(), "{:?}", h.validate());
    }

    #[test]
    fn four_branch_host_validates() {
        let h = four_branches();
        assert!(h.validate().is_empty(), "{:?}", h.validate());
        assert_eq!(h.total_bends(), 2);
    }

    #[test]
    fn restriction_of_a_branch() {
        let h = theta();
        let (rep, map) = restrict(&h, &[0, 1, 2]).unwrap();
        assert_eq!(rep.graph().n(), 4);
        assert!(rep.validate().is_empty(), "{:?}", rep.validate());
        // Poles keep a single 360° corner.
        let lu = map.local_vertex(0).unwrap();
        let lv = map.local_vertex(1).unwrap();
        assert_eq!(rep.angles_at(lu), &[360]);
        assert_eq!(rep.angles_at(lv), &[360]);
        // A path restriction has one face and it is external.
        assert_eq!(rep.plane().faces().len(), 1);
        assert_eq!(rep.face_turn_sum(rep.plane().external_face()), -4);
    }

    #[test]
    fn restriction_rejects_disconnected() {
        let h = theta();
        assert!(matches!(restrict(&h, &[0, 6]), Err(OrthoError::Invalid(_))));
    }

    #[test]
    fn spirality_of_theta_components() {
        let h = theta();
        // Top branch alone: both poles have one inside dart, so only the
        // two right turns along the branch count.
        assert_eq!(component_spirality(&h, &[0, 1, 2], (0, 1)).unwrap(), TwiceSpirality(4));
        // Top branch plus the middle edge: degree-2 poles with one outside
        // edge each; both paths must agree.
        let (rep, map) = restrict(&h, &[0, 1, 2, 3]).unwrap();
        let ctx = context_for(&h, &map, (0, 1)).unwrap();
        let via_middle = vec![2 * map.local_edge(3).unwrap()];
        let via_top = vec![
            2 * map.local_edge(0).unwrap(),
            2 * map.local_edge(1).unwrap(),
            2 * map.local_edge(2).unwrap(),
        ];
        assert_eq!(spirality_with_path(&rep, &ctx, &via_middle).unwrap(), TwiceSpirality(4));
        assert_eq!(spirality_with_path(&rep, &ctx, &via_top).unwrap(), TwiceSpirality(4));
        assert_eq!(spirality(&rep, &ctx).unwrap(), TwiceSpirality(4));
        // Swapping the poles negates spirality.
        let ctx_swapped = SpiralityContext {
            poles: (ctx.poles.1, ctx.poles.0),
            views: (ctx.views.1.clone(), ctx.views.0.clone()),
        };
        assert_eq!(spirality(&rep, &ctx_swapped).unwrap(), TwiceSpirality(-4));
    }

    #[test]
    fn spirality_with_two_outside_edges() {
        let h = four_branches();
        // Top branch + middle edge: both poles are degree 4 with two inside
        // and two outside darts. Both traversal paths agree.
        let (rep, map) = restrict(&h, &[0, 1, 2, 3]).unwrap();
        let ctx = context_for(&h, &map, (0, 1)).unwrap();
        let via_middle = vec![2 * map.local_edge(3).unwrap()];
        let via_top = vec![
            2 * map.local_edge(0).unwrap(),
            2 * map.local_edge(1).unwrap(),
            2 * map.local_edge(2).unwrap(),
        ];
        assert_eq!(spirality_with_path(&rep, &ctx, &via_middle).unwrap(), TwiceSpirality(2));
        assert_eq!(spirality_with_path(&rep, &ctx, &via_top).unwrap(), TwiceSpirality(2));
    }

    #[test]
    fn substitute_component_by_itself() {
        let h = theta();
        let (old, map) = restrict(&h, &[0, 1, 2]).unwrap();
        let back = substitute_component(&h, &map, &old).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn substitute_equal_spirality_variant() {
        let h = theta();
        // Middle edge, straightened vs. an LR jog: same spirality 0.
        let (mut variant, map) = restrict(&h, &[3]).unwrap();
        variant.set_edge_bends(0, vec![Bend::L, Bend::R]);
        let out = substitute_component(&h, &map, &variant).unwrap();
        assert!(out.validate().is_empty(), "{:?}", out.validate());
        assert_eq!(out.bend_string(6), "LR");
        // Bends outside the component are untouched.
        for e in [0usize, 1, 2, 4, 5, 6] {
            assert_eq!(out.bend_string(2 * e), h.bend_string(2 * e));
        }
    }

    #[test]
    fn substitute_rejects_wrong_spirality() {
        let h = theta();
        let (mut variant, map) = restrict(&h, &[3]).unwrap();
        variant.set_edge_bends(0, vec![Bend::R]);
        match substitute_component(&h, &map, &variant) {
            Err(OrthoError::SpiralityMismatch { expected, found }) => {
                assert_eq!(expected, TwiceSpirality(0));
                assert_eq!(found, TwiceSpirality(2));
            }
            other => panic!("expected SpiralityMismatch, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let h = four_branches();
        let text = h.to_json_string();
        let parsed = OrthoRep::from_json(&text).unwrap();
        assert!(parsed.validate().is_empty());
        assert_eq!(parsed.to_json_string(), text);
        assert_eq!(parsed.total_bends(), 2);
    }

    #[test]
    fn twice_spirality_formats() {
        assert_eq!(TwiceSpirality(4).to_string(), "2");
        assert_eq!(TwiceSpirality(3).to_string(), "3/2");
        assert_eq!(TwiceSpirality(-3).to_string(), "-3/2");
        assert_eq!(TwiceSpirality(0).to_string(), "0");
        assert!(!TwiceSpirality(3).is_integer());
        assert_eq!(TwiceSpirality::from_integer(-2), TwiceSpirality(-4));
    }
}

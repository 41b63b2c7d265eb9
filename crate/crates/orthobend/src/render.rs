//! Integer-grid drawings of orthogonal representations.
//!
//! [`compact`] realizes a representation geometrically in four steps: bends
//! become corner vertices, a helper rectangle is wrapped around the external
//! face, every face is refined to a rectangle by shooting axis rays from
//! reflex corners, and two independent longest-path passes assign the x and
//! y coordinates. Helper vertices vanish on output, leaving one polyline per
//! edge through its bend points.
//!
//! [`drawing_violations`] and [`rep_mismatches`] are the corresponding
//! checkers: the first is self-contained (axis alignment, planarity), the
//! second compares a drawing against the representation it came from.

use std::collections::VecDeque;

use crate::graph::{EdgeId, VertexId};
use crate::ortho::{bends_to_string, OrthoRep};
use crate::planar::{rev, DartId};

/// A planar grid drawing: one point per vertex, one axis-aligned polyline
/// per edge running from the edge's first endpoint through its bend points.
#[derive(Debug, Clone)]
pub struct Drawing {
    pub points: Vec<(i64, i64)>,
    pub polylines: Vec<Vec<(i64, i64)>>,
}

impl Drawing {
    /// Top-right corner of the bounding box; the drawing starts at (0, 0).
    pub fn bbox(&self) -> (i64, i64) {
        let all = self.iter_points();
        let w = all.clone().map(|p| p.0).max().unwrap_or(0);
        let h = all.map(|p| p.1).max().unwrap_or(0);
        (w, h)
    }

    fn iter_points(&self) -> impl Iterator<Item = (i64, i64)> + Clone + '_ {
        self.points.iter().copied().chain(self.polylines.iter().flatten().copied())
    }

    /// Shift the whole drawing by (dx, dy).
    pub fn translate(&mut self, dx: i64, dy: i64) {
        for p in &mut self.points {
            *p = (p.0 + dx, p.1 + dy);
        }
        for pl in &mut self.polylines {
            for p in pl {
                *p = (p.0 + dx, p.1 + dy);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Origin {
    Real(VertexId),
    BendPoint(EdgeId, usize),
    Helper,
}

/// Mutable orthogonal representation used during refinement. All bends have
/// already been turned into corner vertices, so the shape lives entirely in
/// the rotations and corner angles; face walks recover everything else.
struct Work {
    /// Clockwise rotation per vertex.
    rot: Vec<Vec<DartId>>,
    /// ang[v][i] spans clockwise from rot[v][i] to rot[v][i+1].
    ang: Vec<Vec<u16>>,
    /// Endpoints per edge; dart 2k leaves ends[k].0, dart 2k+1 leaves ends[k].1.
    ends: Vec<(usize, usize)>,
    origin: Vec<Origin>,
}

impl Work {
    fn tail(&self, d: DartId) -> usize {
        let (t, h) = self.ends[d / 2];
        if d & 1 == 0 {
            t
        } else {
            h
        }
    }

    fn head(&self, d: DartId) -> usize {
        self.tail(rev(d))
    }

    fn new_vertex(&mut self, o: Origin) -> usize {
        self.rot.push(Vec::new());
        self.ang.push(Vec::new());
        self.origin.push(o);
        self.rot.len() - 1
    }

    fn new_edge(&mut self, t: usize, h: usize) -> usize {
        self.ends.push((t, h));
        self.ends.len() - 1
    }

    /// Corner traversed after walking dart `d` with the face on the left.
    fn corner_after(&self, d: DartId) -> (usize, usize) {
        let v = self.head(d);
        let i = self.rot[v].iter().position(|&x| x == rev(d)).expect("dart is in its rotation");
        (v, i)
    }

    fn next_in_face(&self, d: DartId) -> DartId {
        let (v, i) = self.corner_after(d);
        self.rot[v][(i + 1) % self.rot[v].len()]
    }

    fn faces(&self) -> Vec<Vec<DartId>> {
        let nd = 2 * self.ends.len();
        let mut seen = vec![false; nd];
        let mut out = Vec::new();
        for d0 in 0..nd {
            if seen[d0] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = d0;
            loop {
                seen[d] = true;
                orbit.push(d);
                d = self.next_in_face(d);
                if d == d0 {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    fn turn_of(&self, v: usize, i: usize) -> i32 {
        2 - self.ang[v][i] as i32 / 90
    }

    /// Corner turns around a face: +4 inside, −4 on the external face.
    fn face_turn_sum(&self, f: &[DartId]) -> i32 {
        f.iter()
            .map(|&d| {
                let (v, i) = self.corner_after(d);
                self.turn_of(v, i)
            })
            .sum()
    }

    /// Face equations and vertex sums; `debug_assert!`-only.
    fn is_valid(&self) -> bool {
        let per_vertex = (0..self.rot.len()).all(|v| {
            self.rot[v].len() == self.ang[v].len()
                && self.ang[v].iter().map(|&a| a as i32).sum::<i32>() == 360
        });
        let faces = self.faces();
        let sums: Vec<i32> = faces.iter().map(|f| self.face_turn_sum(f)).collect();
        per_vertex
            && sums.iter().all(|&s| s == 4 || s == -4)
            && sums.iter().filter(|&&s| s == -4).count() == 1
    }

    fn from_rep(h: &OrthoRep) -> Work {
        let g = h.graph();
        let pg = h.plane();
        let mut w = Work {
            rot: vec![Vec::new(); g.n()],
            ang: vec![Vec::new(); g.n()],
            ends: Vec::new(),
            origin: (0..g.n()).map(Origin::Real).collect(),
        };
        // Lay each edge down as a path through its bend points; remember
        // which of the path's end darts stands in for each original dart.
        let mut start = vec![0 as DartId; 2 * g.edge_count()];
        for e in 0..g.edge_count() {
            let (u, v) = g.endpoints(e);
            let bends = h.bends_along(2 * e);
            let mut prev = u;
            let mut path = Vec::new();
            for i in 0..bends.len() {
                let bv = w.new_vertex(Origin::BendPoint(e, i));
                path.push(2 * w.new_edge(prev, bv));
                prev = bv;
            }
            path.push(2 * w.new_edge(prev, v));
            start[2 * e] = path[0];
            start[2 * e + 1] = rev(*path.last().unwrap());
            for (i, &b) in bends.iter().enumerate() {
                // Corner on the left of u→v travel replaces the bend: 90°
                // for a left turn, 270° for a right one.
                let bv = w.head(path[i]);
                let left = (90 * (2 + b.turn())) as u16;
                w.rot[bv] = vec![rev(path[i]), path[i + 1]];
                w.ang[bv] = vec![left, 360 - left];
            }
        }
        for v in 0..g.n() {
            w.rot[v] = pg.rotation(v).iter().map(|&d| start[d]).collect();
            w.ang[v] = h.angles_at(v).to_vec();
        }
        debug_assert!(w.is_valid(), "normalization keeps the shape valid");
        w
    }

    /// Subdivide the edge under `d`; the new vertex keeps the line straight.
    fn split_edge(&mut self, d: DartId) -> usize {
        let k = d / 2;
        let (t, h) = self.ends[k];
        let v = self.new_vertex(Origin::Helper);
        self.ends[k] = (t, v);
        let j = self.new_edge(v, h);
        let slot = self.rot[h].iter().position(|&x| x == 2 * k + 1).expect("dart at its head");
        self.rot[h][slot] = 2 * j + 1;
        self.rot[v] = vec![2 * j, 2 * k + 1];
        self.ang[v] = vec![180, 180];
        v
    }

    /// Shoot an axis ray from reflex corner (rv, ri) straight across its
    /// face, landing on a new vertex that subdivides the edge under `hit`.
    /// `hit` is given in the direction the face walk traverses it.
    fn add_ray(&mut self, rv: usize, ri: usize, hit: DartId) {
        let a = self.ang[rv][ri];
        debug_assert!(a >= 270, "rays only leave reflex corners");
        let (to_tail, to_head) = {
            let w = self.split_edge(hit);
            let _ = w;
            let k = hit / 2;
            // After the split, edge k is (tail, w) and the new last edge
            // (w, head); translate to the traveled orientation of `hit`.
            let back = 2 * k + 1;
            let fwd = 2 * (self.ends.len() - 1);
            if hit & 1 == 0 {
                (back, fwd)
            } else {
                (fwd, back)
            }
        };
        let w = self.tail(to_tail);
        let e = self.new_edge(rv, w);
        self.rot[w] = vec![2 * e + 1, to_head, to_tail];
        self.ang[w] = vec![90, 180, 90];
        self.rot[rv].insert(ri + 1, 2 * e);
        self.ang[rv][ri] = 180;
        self.ang[rv].insert(ri + 1, a - 180);
        debug_assert!(self.is_valid(), "rays keep the shape valid");
    }

    /// Wrap a rectangle around the external face and tie it to the boundary
    /// with one connector edge, so that the old external face becomes an
    /// internal ring and the new external face is already rectangular.
    fn add_frame(&mut self) {
        let faces = self.faces();
        let ext = faces
            .iter()
            .position(|f| self.face_turn_sum(f) == -4)
            .expect("every representation has one external face");
        // Anchor at a reflex corner of the boundary; one always exists
        // because the external turns sum to −4.
        let (av, ai) = faces[ext]
            .iter()
            .map(|&d| self.corner_after(d))
            .find(|&(v, i)| self.ang[v][i] >= 270)
            .expect("external face has a reflex corner");
        let a = self.ang[av][ai];
        let f0 = self.new_vertex(Origin::Helper);
        let f1 = self.new_vertex(Origin::Helper);
        let f2 = self.new_vertex(Origin::Helper);
        let f3 = self.new_vertex(Origin::Helper);
        let fc = self.new_vertex(Origin::Helper);
        let e_c0 = self.new_edge(fc, f0);
        let e_c1 = self.new_edge(fc, f1);
        let e_12 = self.new_edge(f1, f2);
        let e_23 = self.new_edge(f2, f3);
        let e_30 = self.new_edge(f3, f0);
        let e_cn = self.new_edge(fc, av);
        self.rot[fc] = vec![2 * e_c0, 2 * e_c1, 2 * e_cn];
        self.ang[fc] = vec![180, 90, 90];
        self.rot[f0] = vec![2 * e_c0 + 1, 2 * e_30 + 1];
        self.ang[f0] = vec![90, 270];
        self.rot[f1] = vec![2 * e_c1 + 1, 2 * e_12];
        self.ang[f1] = vec![270, 90];
        self.rot[f2] = vec![2 * e_12 + 1, 2 * e_23];
        self.ang[f2] = vec![270, 90];
        self.rot[f3] = vec![2 * e_30, 2 * e_23 + 1];
        self.ang[f3] = vec![90, 270];
        self.rot[av].insert(ai + 1, 2 * e_cn + 1);
        self.ang[av][ai] = 180;
        self.ang[av].insert(ai + 1, a - 180);
        debug_assert!(self.is_valid(), "the frame keeps the shape valid");
    }

    /// Remove reflex corners from internal faces one ray at a time. Each ray
    /// replaces a 270°/360° corner by corners of at most 180°, so this
    /// terminates with every internal face a rectangle.
    fn refine(&mut self) {
        loop {
            let faces = self.faces();
            let mut target = None;
            'scan: for f in &faces {
                if self.face_turn_sum(f) == -4 {
                    continue;
                }
                for (j, &d) in f.iter().enumerate() {
                    let (v, i) = self.corner_after(d);
                    if self.ang[v][i] >= 270 {
                        target = Some((f.clone(), j));
                        break 'scan;
                    }
                }
            }
            let Some((f, j)) = target else { break };
            let (rv, ri) = self.corner_after(f[j]);
            // The ray continues the incoming direction; it lands on the
            // edge after the first corner where the walked turns reach +2
            // (one higher for a 360° corner, whose exit dart points back).
            let goal = if self.ang[rv][ri] == 270 { 2 } else { 3 };
            let mut s = 0;
            let mut k = j;
            let hit = loop {
                k = (k + 1) % f.len();
                debug_assert_ne!(k, j, "turns reach the goal before the walk closes");
                let (v, i) = self.corner_after(f[k]);
                s += self.turn_of(v, i);
                if s == goal {
                    break f[(k + 1) % f.len()];
                }
            };
            self.add_ray(rv, ri, hit);
        }
    }

    /// Compass direction of every dart (0 = +x, 1 = +y, 2 = −x, 3 = −y),
    /// fixed up to rotation by propagating corner angles from dart 0.
    fn directions(&self) -> Vec<u8> {
        let mut dir = vec![u8::MAX; 2 * self.ends.len()];
        let mut queue = VecDeque::from([(0 as DartId, 0u8)]);
        while let Some((d, delta)) = queue.pop_front() {
            if dir[d] != u8::MAX {
                debug_assert_eq!(dir[d], delta, "angles close consistently");
                continue;
            }
            // Fill the whole rotation of d's tail in one sweep.
            let v = self.tail(d);
            let s = self.rot[v].iter().position(|&x| x == d).expect("dart at its tail");
            let mut cur = delta;
            for off in 0..self.rot[v].len() {
                let slot = (s + off) % self.rot[v].len();
                let dd = self.rot[v][slot];
                if dir[dd] == u8::MAX {
                    dir[dd] = cur;
                    queue.push_back((rev(dd), (cur + 2) % 4));
                } else {
                    debug_assert_eq!(dir[dd], cur, "angles close consistently");
                }
                // Clockwise by the corner angle.
                cur = (cur + 4 - ((self.ang[v][slot] / 90) % 4) as u8) % 4;
            }
        }
        debug_assert!(dir.iter().all(|&d| d != u8::MAX), "drawing is connected");
        dir
    }

    /// One coordinate per vertex along `axis` (0 = x, 1 = y): contract the
    /// perpendicular edges, then take longest paths in the leftover DAG.
    fn coordinates(&self, dir: &[u8], axis: u8) -> Vec<i64> {
        let n = self.rot.len();
        let mut lead: Vec<usize> = (0..n).collect();
        fn find(lead: &mut Vec<usize>, mut i: usize) -> usize {
            while lead[i] != i {
                lead[i] = lead[lead[i]];
                i = lead[i];
            }
            i
        }
        for k in 0..self.ends.len() {
            if dir[2 * k] % 2 != axis {
                let (a, b) = (find(&mut lead, self.ends[k].0), find(&mut lead, self.ends[k].1));
                lead[a] = b;
            }
        }
        let mut arcs = Vec::new();
        for k in 0..self.ends.len() {
            let d = dir[2 * k];
            if d % 2 != axis {
                continue;
            }
            let (t, h) = self.ends[k];
            let (t, h) = (find(&mut lead, t), find(&mut lead, h));
            // Arc points toward the positive axis direction.
            arcs.push(if d < 2 { (t, h) } else { (h, t) });
        }
        let mut indeg = vec![0usize; n];
        for &(_, b) in &arcs {
            indeg[b] += 1;
        }
        let mut coord = vec![0i64; n];
        let mut ready: VecDeque<usize> =
            (0..n).filter(|&c| find(&mut lead, c) == c && indeg[c] == 0).collect();
        let mut seen = 0;
        while let Some(c) = ready.pop_front() {
            seen += 1;
            for &(a, b) in &arcs {
                if a == c {
                    coord[b] = coord[b].max(coord[c] + 1);
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.push_back(b);
                    }
                }
            }
        }
        debug_assert_eq!(
            seen,
            (0..n).filter(|&c| find(&mut lead, c) == c).count(),
            "rectangular faces leave no directed cycle"
        );
        (0..n).map(|v| coord[find(&mut lead, v)]).collect()
    }
}

/// Draw a representation on the integer grid. Coordinates are normalized to
/// start at (0, 0); both bounding-box sides stay below the vertex count plus
/// the bend count.
pub fn compact(h: &OrthoRep) -> Drawing {
    let g = h.graph();
    if g.edge_count() == 0 {
        return Drawing { points: vec![(0, 0); g.n()], polylines: Vec::new() };
    }
    let mut w = Work::from_rep(h);
    w.add_frame();
    w.refine();
    let dir = w.directions();
    let xs = w.coordinates(&dir, 0);
    let ys = w.coordinates(&dir, 1);
    let at = |v: usize| (xs[v], ys[v]);
    let points: Vec<(i64, i64)> = (0..g.n()).map(at).collect();
    let mut polylines = Vec::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let mut pl = vec![at(u)];
        let mut bend = Vec::new();
        for (wv, o) in w.origin.iter().enumerate() {
            if let Origin::BendPoint(be, i) = *o {
                if be == e {
                    bend.push((i, at(wv)));
                }
            }
        }
        bend.sort_unstable();
        pl.extend(bend.into_iter().map(|(_, p)| p));
        pl.push(at(v));
        polylines.push(pl);
    }
    let mut dr = Drawing { points, polylines };
    let (dx, dy) = {
        let all = dr.iter_points();
        (all.clone().map(|p| p.0).min().unwrap(), dr.iter_points().map(|p| p.1).min().unwrap())
    };
    dr.translate(-dx, -dy);
    debug_assert!(drawing_violations(&dr).is_empty(), "compact output is planar");
    debug_assert!(rep_mismatches(&dr, h).is_empty(), "compact output matches the shape");
    dr
}

type Seg = ((i64, i64), (i64, i64));

fn seg_ranges(s: Seg) -> ((i64, i64), (i64, i64)) {
    ((s.0 .0.min(s.1 .0), s.0 .0.max(s.1 .0)), (s.0 .1.min(s.1 .1), s.0 .1.max(s.1 .1)))
}

/// Intersection of two axis-aligned segments: `None`, a single point, or a
/// positive-length overlap.
fn seg_meet(a: Seg, b: Seg) -> Option<Result<(i64, i64), ()>> {
    let (ax, ay) = seg_ranges(a);
    let (bx, by) = seg_ranges(b);
    let x = (ax.0.max(bx.0), ax.1.min(bx.1));
    let y = (ay.0.max(by.0), ay.1.min(by.1));
    if x.0 > x.1 || y.0 > y.1 {
        None
    } else if x.0 == x.1 && y.0 == y.1 {
        Some(Ok((x.0, y.0)))
    } else {
        Some(Err(()))
    }
}

/// Structural defects of a drawing on its own: duplicate vertex points,
/// non-axis-aligned or non-alternating polylines, and any two segments
/// meeting anywhere but a shared endpoint vertex. Empty means planar.
pub fn drawing_violations(dr: &Drawing) -> Vec<String> {
    let mut bad = Vec::new();
    for (v, p) in dr.points.iter().enumerate() {
        for (u, q) in dr.points.iter().enumerate().skip(v + 1) {
            if p == q {
                bad.push(format!("vertices {v} and {u} share point {p:?}"));
            }
        }
    }
    // (segment, polyline, index, terminal points that may legally touch)
    let mut segs: Vec<(Seg, usize, usize, Vec<(i64, i64)>)> = Vec::new();
    for (e, pl) in dr.polylines.iter().enumerate() {
        for (i, pair) in pl.windows(2).enumerate() {
            let (p, q) = (pair[0], pair[1]);
            if p == q || (p.0 != q.0 && p.1 != q.1) {
                bad.push(format!("edge {e} segment {i} {p:?}→{q:?} is not a grid segment"));
            }
            let mut term = Vec::new();
            if i == 0 && dr.points.contains(&p) {
                term.push(p);
            }
            if i + 2 == pl.len() && dr.points.contains(&q) {
                term.push(q);
            }
            segs.push(((p, q), e, i, term));
        }
        for (i, tri) in pl.windows(3).enumerate() {
            let same_axis = (tri[0].0 == tri[1].0) == (tri[1].0 == tri[2].0);
            if same_axis {
                bad.push(format!("edge {e} runs straight through bend {i}"));
            }
        }
    }
    for (n, s) in segs.iter().enumerate() {
        for t in segs.iter().skip(n + 1) {
            let Some(meet) = seg_meet(s.0, t.0) else { continue };
            let label = || format!("edge {} segment {} and edge {} segment {}", s.1, s.2, t.1, t.2);
            let Ok(p) = meet else {
                bad.push(format!("{} overlap", label()));
                continue;
            };
            let ok = if s.1 == t.1 && t.2 - s.2 == 1 {
                // Consecutive segments meet exactly at their joint.
                p == s.0 .1 && p == t.0 .0
            } else {
                // Anything else may only touch at a vertex both ends at.
                s.3.contains(&p) && t.3.contains(&p)
            };
            if !ok {
                bad.push(format!("{} cross at {:?}", label(), p));
            }
        }
    }
    bad
}

/// Disagreements between a drawing and the representation it should realize:
/// endpoints off their vertex points, bend strings that do not match the
/// polyline turns, or corner angles that differ from the drawn ones. Empty
/// means the drawing realizes the representation.
pub fn rep_mismatches(dr: &Drawing, h: &OrthoRep) -> Vec<String> {
    let g = h.graph();
    let pg = h.plane();
    let mut bad = Vec::new();
    if dr.points.len() != g.n() || dr.polylines.len() != g.edge_count() {
        return vec!["drawing size differs from the graph".into()];
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let pl = &dr.polylines[e];
        if pl[0] != dr.points[u] || *pl.last().unwrap() != dr.points[v] {
            bad.push(format!("edge {e} does not run between its endpoints"));
        }
        let turns: String = pl
            .windows(3)
            .map(|t| {
                let a = (t[1].0 - t[0].0, t[1].1 - t[0].1);
                let b = (t[2].0 - t[1].0, t[2].1 - t[1].1);
                if a.0 * b.1 - a.1 * b.0 > 0 {
                    'L'
                } else {
                    'R'
                }
            })
            .collect();
        if turns != bends_to_string(h.bends_along(2 * e)) {
            bad.push(format!("edge {e} draws turns {turns}"));
        }
    }
    // First drawn direction of each dart, as a quarter-turn index.
    let dir_of = |d: DartId| {
        let pl = &dr.polylines[d / 2];
        let (p, q) = if d & 1 == 0 { (pl[0], pl[1]) } else { (pl[pl.len() - 1], pl[pl.len() - 2]) };
        match ((q.0 - p.0).signum(), (q.1 - p.1).signum()) {
            (1, 0) => 0u16,
            (0, 1) => 1,
            (-1, 0) => 2,
            _ => 3,
        }
    };
    for v in 0..g.n() {
        let rot = pg.rotation(v);
        for i in 0..rot.len() {
            let a = dir_of(rot[i]);
            let b = dir_of(rot[(i + 1) % rot.len()]);
            let mut quarter = (a + 4 - b) % 4;
            if quarter == 0 {
                quarter = if rot.len() == 1 { 4 } else { 0 };
            }
            if 90 * quarter != h.angle(v, i) {
                bad.push(format!("corner {i} of vertex {v} draws {}°", 90 * quarter));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::solver::solve;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, edges).unwrap()
    }

    fn drawn(g: &Graph, budget: usize) -> (Drawing, OrthoRep, usize) {
        let sol = solve(g, budget).expect("planar").expect("within budget");
        assert_eq!(sol.components.len(), 1);
        let (rep, _) = sol.components[0].rep.clone().expect("has edges");
        let dr = compact(&rep);
        (dr, rep, sol.total_bends)
    }

    fn all_checks(dr: &Drawing, rep: &OrthoRep) {
        assert_eq!(drawing_violations(dr), Vec::<String>::new());
        assert_eq!(rep_mismatches(dr, rep), Vec::<String>::new());
    }

    #[test]
    fn square_becomes_unit_square() {
        let (dr, rep, _) = drawn(&cycle(4), 0);
        all_checks(&dr, &rep);
        let mut pts = dr.points.clone();
        pts.sort_unstable();
        assert_eq!(pts, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn one_bend_triangle_draws_four_segments() {
        let (dr, rep, bends) = drawn(&cycle(3), 1);
        assert_eq!(bends, 1);
        all_checks(&dr, &rep);
        let segments: usize = dr.polylines.iter().map(|pl| pl.len() - 1).sum();
        assert_eq!(segments, 4);
    }

    #[test]
    fn single_edge_and_paths() {
        for (n, edges) in [
            (2, vec![(0, 1)]),
            (3, vec![(0, 1), (1, 2)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        ] {
            let g = Graph::new(n, edges).unwrap();
            let (dr, rep, bends) = drawn(&g, 0);
            assert_eq!(bends, 0);
            all_checks(&dr, &rep);
        }
    }

    #[test]
    fn star_with_four_leaves() {
        let g = Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let (dr, rep, _) = drawn(&g, 0);
        all_checks(&dr, &rep);
    }

    #[test]
    fn bridge_between_triangles_stays_planar() {
        let g =
            Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let (dr, rep, _) = drawn(&g, 8);
        all_checks(&dr, &rep);
    }

    #[test]
    fn parallel_edges_draw_apart() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let (dr, rep, bends) = drawn(&g, 4);
        assert_eq!(bends, 2);
        all_checks(&dr, &rep);
    }

    #[test]
    fn k4_fits_its_box() {
        let (dr, rep, bends) = drawn(&complete(4), 8);
        assert_eq!(bends, 4);
        all_checks(&dr, &rep);
        let (w, h) = dr.bbox();
        let side = (4 + bends) as i64;
        assert!(w <= side && h <= side, "box {w}×{h} exceeds {side}");
    }

    #[test]
    fn assorted_shapes_stay_planar() {
        let shapes = [
            // Bowtie: degree-4 cut vertex.
            Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
            // Doubled triangle.
            Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]).unwrap(),
            // Theta of three length-2 paths.
            Graph::new(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap(),
            // Triangle with a pendant path.
            Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]).unwrap(),
        ];
        for g in &shapes {
            let (dr, rep, bends) = drawn(g, 8);
            all_checks(&dr, &rep);
            let (w, h) = dr.bbox();
            let side = (g.n() + bends) as i64;
            assert!(w <= side && h <= side, "box {w}×{h} exceeds {side}");
        }
    }

    #[test]
    fn isolated_vertex_is_a_point() {
        let g = Graph::new(1, vec![]).unwrap();
        let sol = solve(&g, 0).unwrap().unwrap();
        assert!(sol.components[0].rep.is_none());
    }

    #[test]
    fn cycles_fit_their_boxes() {
        for m in 3..=8 {
            let (dr, rep, bends) = drawn(&cycle(m), 4);
            all_checks(&dr, &rep);
            let (w, h) = dr.bbox();
            let side = (m + bends) as i64;
            assert!(w <= side && h <= side, "C{m} box {w}×{h} exceeds {side}");
        }
    }
}

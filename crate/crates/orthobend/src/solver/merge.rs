//! Gluing solved blocks together at cutvertices.
//!
//! Away from cutvertices each vertex belongs to one block and keeps its
//! rotation and angles verbatim. At a cutvertex every non-parent block
//! contributes a fan — its rotation cut open at its unique corner on its
//! own external face. Fans are nested one at a time into any corner of the
//! arrangement built so far that is wide enough: the corner must cover the
//! fan's occupied angle plus a quarter turn on each side. Splitting always
//! puts exactly a quarter turn before the fan and the remainder after;
//! any other split only shrinks later corners, so this choice is safe.
//! Corners created by one fan are available to the next, which lets a
//! small block tuck inside a wider sibling when the cutvertex is tight.
//! Fan orders and corner choices are searched exhaustively (at most three
//! fans meet at a cutvertex), so a rooting fails only when no nesting
//! exists at some cutvertex.

use std::collections::BTreeMap;

use crate::decomp::BcTree;
use crate::graph::{Graph, SubMap, VertexId};
use crate::ortho::{Bend, OrthoRep};
use crate::planar::{dart_edge, DartId, PlaneGraph};

/// One block's contribution at a cutvertex: the darts of its fan (host
/// ids, clockwise), the angles between consecutive fan darts, and the
/// total angle the fan occupies.
struct Fan {
    darts: Vec<DartId>,
    internals: Vec<u16>,
    occupied: u32,
}

pub fn merge_blocks(
    g: &Graph,
    bc: &BcTree,
    order: &[(usize, Option<VertexId>)],
    blocks: &[(Graph, SubMap)],
    parts: &BTreeMap<usize, OrthoRep>,
) -> Option<OrthoRep> {
    let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); g.n()];
    let mut angles: Vec<Vec<u16>> = vec![Vec::new(); g.n()];
    let mut edge_bends: Vec<Vec<Bend>> = vec![Vec::new(); g.edge_count()];

    for &(j, _) in order {
        let (bg, map) = &blocks[j];
        let rep = &parts[&j];
        for lv in 0..bg.n() {
            let hv = map.vmap[lv];
            if bc.is_cutvertex(hv) {
                continue;
            }
            rot[hv] = rep
                .plane()
                .rotation(lv)
                .iter()
                .map(|&d| 2 * map.emap[dart_edge(d)] + (d & 1))
                .collect();
            angles[hv] = rep.angles_at(lv).to_vec();
        }
        for le in 0..bg.edge_count() {
            edge_bends[map.emap[le]] = rep.bends_along(2 * le).to_vec();
        }
    }

    for &c in bc.cutvertices() {
        let seq = nest_at(c, order, blocks, parts)?;
        rot[c] = seq.iter().map(|&(d, _)| d).collect();
        angles[c] = seq.iter().map(|&(_, a)| a).collect();
    }

    let pg = PlaneGraph::new(g.clone(), rot, 0).expect("nested blocks stay planar");
    // The first block of the rooting keeps its outside as the drawing's
    // outside.
    let root = order[0].0;
    let rrep = &parts[&root];
    let rmap = &blocks[root].1;
    let d0 = rrep.plane().face(rrep.plane().external_face()).darts[0];
    let pg = pg.with_external(pg.face_of_dart(2 * rmap.emap[dart_edge(d0)] + (d0 & 1)));

    let rep = OrthoRep::new(pg, edge_bends, angles).expect("merged angles stay consistent");
    debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
    Some(rep)
}

/// The arrangement of darts and following angles at cutvertex `c`, or
/// `None` when no nesting of the fans fits.
fn nest_at(
    c: VertexId,
    order: &[(usize, Option<VertexId>)],
    blocks: &[(Graph, SubMap)],
    parts: &BTreeMap<usize, OrthoRep>,
) -> Option<Vec<(DartId, u16)>> {
    let with_c: Vec<usize> = order
        .iter()
        .map(|&(j, _)| j)
        .filter(|&j| blocks[j].1.local_vertex(c).is_some())
        .collect();
    debug_assert!(with_c.len() >= 2, "a cutvertex joins at least two blocks");

    let translated = |j: usize| -> Vec<(DartId, u16)> {
        let (_, map) = &blocks[j];
        let rep = &parts[&j];
        let lc = map.local_vertex(c).unwrap();
        rep.plane()
            .rotation(lc)
            .iter()
            .enumerate()
            .map(|(i, &d)| (2 * map.emap[dart_edge(d)] + (d & 1), rep.angle(lc, i)))
            .collect()
    };

    // The first block containing c hosts the others.
    let seed = translated(with_c[0]);
    let mut fans = Vec::new();
    for &j in &with_c[1..] {
        let pairs = translated(j);
        if pairs.len() == 1 {
            fans.push(Fan { darts: vec![pairs[0].0], internals: Vec::new(), occupied: 0 });
            continue;
        }
        let rep = &parts[&j];
        let lc = blocks[j].1.local_vertex(c).unwrap();
        let pl = rep.plane();
        let len = pairs.len();
        let x = (0..len).find(|&i| pl.corner_face(lc, i) == pl.external_face())?;
        let darts = (1..=len).map(|k| pairs[(x + k) % len].0).collect();
        let internals: Vec<u16> = (1..len).map(|k| pairs[(x + k) % len].1).collect();
        let occupied = internals.iter().map(|&a| a as u32).sum();
        fans.push(Fan { darts, internals, occupied });
    }

    for perm in permutations(fans.len()) {
        let picked: Vec<&Fan> = perm.iter().map(|&i| &fans[i]).collect();
        if let Some(seq) = place(seed.clone(), &picked) {
            return Some(seq);
        }
    }
    None
}

/// Insert the fans in order, backtracking over the corner each one nests
/// into.
fn place(seq: Vec<(DartId, u16)>, fans: &[&Fan]) -> Option<Vec<(DartId, u16)>> {
    let Some((fan, rest)) = fans.split_first() else {
        return Some(seq);
    };
    for i in 0..seq.len() {
        let a = seq[i].1 as u32;
        if a < fan.occupied + 180 {
            continue;
        }
        let mut next = seq.clone();
        next[i].1 = 90;
        for (k, &d) in fan.darts.iter().enumerate() {
            let ang = if k < fan.internals.len() {
                fan.internals[k]
            } else {
                (a - fan.occupied - 90) as u16
            };
            next.insert(i + 1 + k, (d, ang));
        }
        if let Some(done) = place(next, rest) {
            return Some(done);
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

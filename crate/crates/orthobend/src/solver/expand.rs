//! Realizing one decomposition node as a small plane graph.
//!
//! A node's component is modelled by its pertinent edges plus a closing
//! edge between the poles. A pole that keeps two component darts and two
//! outside darts also gets a pendant spacer adjacent to the closing edge,
//! so the expanded vertex has degree four and every corner there is forced
//! to a right angle. Child components solved lower in the tree are pinned
//! into the model corner by corner and bend by bend — except the corners
//! next to each child pole's closing-edge slot, which stay free so the
//! angle there can be split between siblings. Driving the closing edge's
//! bends through every value in the admissible window then enumerates the
//! component's spirality set.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomp::{NodeId, NodeKind, SkelEmbedding, SpqrTree};
use crate::flow::{constrained_bend_min, ConstraintSet, FlowError};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planar::{dart_edge, DartId, PlaneGraph};

use super::{
    bend_run, offer, pole_types, twice_offset, BlockConstraints, FrameRep, PoleType,
    SolveParams, SpirSet,
};

/// The expanded plane graph of one node: pertinent edges, closing edge,
/// spacers, and the maps back to the block.
pub(crate) struct Expansion {
    pub pg: PlaneGraph,
    pub vmap: Vec<Option<VertexId>>,
    pub emap: Vec<Option<EdgeId>>,
    pub closing: EdgeId,
    pub spacers: Vec<EdgeId>,
    pub poles: (VertexId, VertexId),
    /// Chain-inner vertices (locals) that must take a 90 or 270 inner angle.
    pub chain_reflex: Vec<VertexId>,
    pert: Vec<EdgeId>,
    block_to_local: BTreeMap<VertexId, VertexId>,
}

impl Expansion {
    pub fn local_vertex(&self, block_v: VertexId) -> VertexId {
        self.block_to_local[&block_v]
    }

    pub fn local_edge(&self, block_e: EdgeId) -> EdgeId {
        self.pert.binary_search(&block_e).expect("pertinent edge of this node")
    }
}

/// The pertinent darts at one pole of a solved frame, clockwise, starting
/// right after the closing-edge/spacer slot. Non-component darts at a pole
/// are cyclically consecutive, so the fan is a single arc.
pub(crate) fn fan_of(frame: &FrameRep, side: usize) -> Vec<DartId> {
    let pole = if side == 0 { frame.poles.0 } else { frame.poles.1 };
    let rot = frame.rep.plane().rotation(pole);
    let len = rot.len();
    let pert = |d: DartId| frame.emap[dart_edge(d)].is_some();
    let start = (0..len)
        .find(|&i| !pert(rot[(i + len - 1) % len]) && pert(rot[i]))
        .expect("a pole keeps at least one component dart");
    (0..len).map(|k| rot[(start + k) % len]).filter(|&d| pert(d)).collect()
}

/// Build the expanded plane graph for `nu` under one skeleton embedding,
/// substituting each chosen child frame for its skeleton edge.
pub(crate) fn build_expansion(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    emb: &SkelEmbedding,
    picks: &BTreeMap<NodeId, &FrameRep>,
    types: (PoleType, PoleType),
    reflex: &BTreeSet<VertexId>,
) -> Expansion {
    let pert = t.pertinent_edges(nu).to_vec();
    let (u, v) = t.poles(nu);

    let mut pvs: BTreeSet<VertexId> = BTreeSet::new();
    for &be in &pert {
        let (a, b) = block.endpoints(be);
        pvs.insert(a);
        pvs.insert(b);
    }
    let pvs: Vec<VertexId> = pvs.into_iter().collect();
    let lof = |bv: VertexId| pvs.binary_search(&bv).expect("endpoint of a pertinent edge");
    let (lu, lv) = (lof(u), lof(v));

    // Component edges keep the block's endpoint order, so dart parity is
    // preserved through every translation.
    let mut ends: Vec<(VertexId, VertexId)> = pert
        .iter()
        .map(|&be| {
            let (a, b) = block.endpoints(be);
            (lof(a), lof(b))
        })
        .collect();
    let mut emap: Vec<Option<EdgeId>> = pert.iter().map(|&be| Some(be)).collect();
    let mut vmap: Vec<Option<VertexId>> = pvs.iter().map(|&bv| Some(bv)).collect();
    let closing = ends.len();
    ends.push((lu, lv));
    emap.push(None);
    let mut spacers = Vec::new();
    let mut spacer_u = None;
    let mut spacer_v = None;
    if types.0 == PoleType::TwoTwo {
        let tip = vmap.len();
        vmap.push(None);
        spacer_u = Some(ends.len());
        spacers.push(ends.len());
        ends.push((lu, tip));
        emap.push(None);
    }
    if types.1 == PoleType::TwoTwo {
        let tip = vmap.len();
        vmap.push(None);
        spacer_v = Some(ends.len());
        spacers.push(ends.len());
        ends.push((lv, tip));
        emap.push(None);
    }

    let pert_pos = |be: EdgeId| pert.binary_search(&be).expect("pertinent edge");
    let out_dart = |ge: usize, gv: VertexId| if ends[ge].0 == gv { 2 * ge } else { 2 * ge + 1 };

    let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); vmap.len()];

    // Skeleton vertices: splice the closing edge, chain-end darts, and
    // child fans in the order the skeleton embedding dictates.
    for sl in 0..emb.graph.n() {
        let bv = emb.vmap[sl];
        let gv = lof(bv);
        let mut out = Vec::new();
        for &sd in emb.plane.rotation(sl) {
            let se = dart_edge(sd);
            if se == emb.ref_local {
                if bv == u {
                    out.push(2 * closing);
                    if let Some(sp) = spacer_u {
                        out.push(2 * sp);
                    }
                } else {
                    debug_assert_eq!(bv, v, "reference edge joins the poles");
                    if let Some(sp) = spacer_v {
                        out.push(2 * sp);
                    }
                    out.push(2 * closing + 1);
                }
            } else {
                let mu = emb.to[se];
                if t.kind(mu) == NodeKind::Qstar {
                    let ch = t.chain(mu).expect("leaf node carries its chain");
                    let be = if ch.ends.0 == bv {
                        ch.edges[0]
                    } else {
                        debug_assert_eq!(ch.ends.1, bv);
                        *ch.edges.last().unwrap()
                    };
                    out.push(out_dart(pert_pos(be), gv));
                } else {
                    let frame = picks[&mu];
                    let side = if t.poles(mu).0 == bv {
                        0
                    } else {
                        debug_assert_eq!(t.poles(mu).1, bv);
                        1
                    };
                    for fd in fan_of(frame, side) {
                        let be = frame.emap[dart_edge(fd)].expect("fan darts are component darts");
                        out.push(2 * pert_pos(be) + (fd & 1));
                    }
                }
            }
        }
        rot[gv] = out;
    }

    // Inner vertices of this node's own chains alternate forward/backward.
    let mut chain_reflex = Vec::new();
    for &mu in t.children(nu) {
        if t.kind(mu) != NodeKind::Qstar {
            continue;
        }
        let ch = t.chain(mu).expect("leaf node carries its chain");
        for (i, &w) in ch.inner.iter().enumerate() {
            let gv = lof(w);
            debug_assert!(rot[gv].is_empty());
            rot[gv] = vec![out_dart(pert_pos(ch.edges[i + 1]), gv), out_dart(pert_pos(ch.edges[i]), gv)];
            if reflex.contains(&w) {
                chain_reflex.push(gv);
            }
        }
    }

    // Interior vertices of solved children copy their frame's rotation.
    for (&mu, frame) in picks {
        let (a, b) = t.poles(mu);
        let fpl = frame.rep.plane();
        for fv in 0..fpl.graph().n() {
            let Some(bv) = frame.vmap[fv] else { continue };
            if bv == a || bv == b {
                continue;
            }
            let gv = lof(bv);
            debug_assert!(rot[gv].is_empty());
            rot[gv] = fpl
                .rotation(fv)
                .iter()
                .map(|&fd| {
                    let be = frame.emap[dart_edge(fd)]
                        .expect("interior vertices touch only component darts");
                    2 * pert_pos(be) + (fd & 1)
                })
                .collect();
        }
    }

    if let Some(sp) = spacer_u {
        rot[ends[sp].1] = vec![2 * sp + 1];
    }
    if let Some(sp) = spacer_v {
        rot[ends[sp].1] = vec![2 * sp + 1];
    }

    let gg = Graph::new(vmap.len(), ends).expect("an expansion stays within degree four");
    let pg = PlaneGraph::new(gg, rot, 0).expect("spliced rotations stay planar");
    let external = pg.face_of_dart(2 * closing + 1);
    let pg = pg.with_external(external);

    let block_to_local = pvs.iter().enumerate().map(|(i, &bv)| (bv, i)).collect();
    Expansion {
        pg,
        vmap,
        emap,
        closing,
        spacers,
        poles: (lu, lv),
        chain_reflex,
        pert,
        block_to_local,
    }
}

/// Pin a solved child frame into the expansion: every corner bounded by two
/// component darts and every component edge's bends. The corners flanking
/// the child's own closing-edge slot at its poles are left free, which is
/// exactly the freedom the parent needs to pack siblings around a pole.
pub(crate) fn pin_component(
    cs: &mut ConstraintSet,
    exp: &Expansion,
    frame: &FrameRep,
) -> Result<(), FlowError> {
    let fpl = frame.rep.plane();
    let pert = |d: DartId| frame.emap[dart_edge(d)].is_some();
    for fv in 0..fpl.graph().n() {
        let Some(bv) = frame.vmap[fv] else { continue };
        let gv = exp.local_vertex(bv);
        let rot = fpl.rotation(fv);
        let len = rot.len();
        for i in 0..len {
            if !pert(rot[i]) || !pert(rot[(i + 1) % len]) {
                continue;
            }
            let ge = exp.local_edge(frame.emap[dart_edge(rot[i])].unwrap());
            let gd = 2 * ge + (rot[i] & 1);
            cs.fix_corner_angle(gv, exp.pg.pos_in_rotation(gd), frame.rep.angle(fv, i))?;
        }
    }
    for (fe, &be) in frame.emap.iter().enumerate() {
        let Some(be) = be else { continue };
        cs.fix_edge_bends(exp.local_edge(be), frame.rep.bends_along(2 * fe).to_vec())?;
    }
    Ok(())
}

/// Compute the spirality set of an inner node by expansion: for every
/// skeleton embedding and every combination of child entries, pin the
/// children and sweep the closing edge through the admissible bend window,
/// solving a constrained flow per target.
pub fn expand_set(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    sets: &BTreeMap<NodeId, SpirSet>,
    params: SolveParams,
    cons: &BlockConstraints,
    flat_pole: Option<VertexId>,
) -> SpirSet {
    let inner: Vec<NodeId> =
        t.children(nu).iter().copied().filter(|&m| t.kind(m) != NodeKind::Qstar).collect();
    let mut set = SpirSet::new();
    // Each solved child keeps at least one low-degree vertex virtual, so
    // more children than the parameter allows means no representation fits.
    if inner.len() > params.low + params.budget {
        return set;
    }
    let child_entries: Vec<Vec<(i32, &super::FrameEntry)>> =
        inner.iter().map(|&m| sets[&m].iter().map(|(&k, e)| (k, e)).collect()).collect();
    if child_entries.iter().any(|v| v.is_empty()) {
        return set;
    }

    let pert = t.pertinent_edges(nu);
    let poles = t.poles(nu);
    let types = pole_types(block, pert, poles);
    let embeddings = t.skeleton_embeddings(nu);

    let mut idx = vec![0usize; inner.len()];
    loop {
        let base_cost: usize = idx.iter().zip(&child_entries).map(|(&i, v)| v[i].1.cost).sum();
        if base_cost <= params.budget {
            let picks: BTreeMap<NodeId, &FrameRep> = inner
                .iter()
                .enumerate()
                .map(|(k, &m)| (m, &child_entries[k][idx[k]].1.frame))
                .collect();
            for emb in &embeddings {
                expand_one(block, t, nu, emb, &picks, types, params, cons, flat_pole, &mut set);
            }
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < child_entries[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    set
}

#[allow(clippy::too_many_arguments)]
fn expand_one(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    emb: &SkelEmbedding,
    picks: &BTreeMap<NodeId, &FrameRep>,
    types: (PoleType, PoleType),
    params: SolveParams,
    cons: &BlockConstraints,
    flat_pole: Option<VertexId>,
    set: &mut SpirSet,
) {
    let exp = build_expansion(block, t, nu, emb, picks, types, &cons.reflex);
    let mut base = ConstraintSet::new();
    let prepared = (|| -> Result<(), FlowError> {
        for frame in picks.values() {
            pin_component(&mut base, &exp, frame)?;
        }
        for &sp in &exp.spacers {
            base.fix_edge_bends(sp, Vec::new())?;
        }
        // A pole with a single component dart and a single outside dart is
        // flat on both sides: the chain continues straight through it.
        if types.0 == PoleType::OneInside {
            base.fix_corner_angle(exp.poles.0, 0, 180)?;
            base.fix_corner_angle(exp.poles.0, 1, 180)?;
        }
        if types.1 == PoleType::OneInside {
            base.fix_corner_angle(exp.poles.1, 0, 180)?;
            base.fix_corner_angle(exp.poles.1, 1, 180)?;
        }
        if let Some(c) = flat_pole {
            base.fix_angle_at_face(&exp.pg, exp.local_vertex(c), exp.pg.external_face(), 180)?;
        }
        Ok(())
    })();
    if let Err(err) = prepared {
        debug_assert!(false, "base pins conflict: {err}");
        return;
    }

    let off = twice_offset(types);
    let range = params.twice_range();
    let r = exp.chain_reflex.len();
    debug_assert!(r < 32, "reflex pins bounded by the cutvertex count");
    for tsig in -range..=range {
        if (tsig - off).rem_euclid(2) != 0 {
            continue;
        }
        let n = (tsig - off) / 2;
        for mask in 0u32..(1 << r) {
            let mut cs = base.clone();
            let pinned = (|| -> Result<(), FlowError> {
                cs.fix_edge_bends(exp.closing, bend_run(n))?;
                for (bit, &gv) in exp.chain_reflex.iter().enumerate() {
                    let ang = if mask >> bit & 1 == 0 { 90 } else { 270 };
                    cs.fix_corner_angle(gv, 0, ang)?;
                }
                Ok(())
            })();
            if pinned.is_err() {
                debug_assert!(false, "per-target pins conflict");
                continue;
            }
            let rep = match constrained_bend_min(&exp.pg, &cs) {
                Ok(Some(rep)) => rep,
                Ok(None) => continue,
                Err(err) => {
                    debug_assert!(false, "flow construction failed: {err}");
                    continue;
                }
            };
            let cost = rep.total_bends() - n.unsigned_abs() as usize;
            if cost > params.budget {
                continue;
            }
            let frame = FrameRep {
                rep,
                vmap: exp.vmap.clone(),
                emap: exp.emap.clone(),
                closing: exp.closing,
                spacers: exp.spacers.clone(),
                poles: exp.poles,
            };
            debug_assert_eq!(frame.measured().0, tsig, "closing bends pin the winding");
            offer(set, tsig, cost, frame);
        }
    }
}

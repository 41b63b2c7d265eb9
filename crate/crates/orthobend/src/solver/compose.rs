//! Direct spirality-set composition for series and parallel nodes.
//!
//! Both paths replace the per-target flow of the generic expansion with a
//! much cheaper materialization: child witnesses are copied corner by
//! corner and bend by bend into the node's expanded plane graph, and the
//! only remaining unknowns — the gap corners at junctions and poles — form
//! a tiny transportation problem (one row per vertex with free corners,
//! one column per face touching them) solved by augmenting paths.
//!
//! For a series node, spirality is additive along the path: the turn
//! contribution of every junction cancels against the pole contributions
//! of the two components meeting there, whatever the junction's degree or
//! angle split. The set is therefore a numeric convolution of the child
//! sets, and only the winning combination per value is materialized. A
//! parallel node keeps at most three children, so all child combinations
//! are enumerated directly and every admissible closing-edge target is
//! tested with the same materializer.

use std::collections::BTreeMap;

use crate::decomp::{NodeId, NodeKind, SpqrTree};
use crate::graph::Graph;
use crate::ortho::{Bend, OrthoRep};
use crate::planar::{dart_edge, DartId};

use super::expand::{build_expansion, Expansion};
use super::{
    bend_run, offer, pole_types, twice_offset, BlockConstraints, FrameEntry, FrameRep,
    PoleType, SolveParams, SpirSet,
};

/// How many same-value candidates the convolution keeps per sum; later
/// candidates are tried only when an earlier one fails to materialize.
const BEAM: usize = 4;

pub fn series_set(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    sets: &BTreeMap<NodeId, SpirSet>,
    params: SolveParams,
    cons: &BlockConstraints,
) -> SpirSet {
    let children = t.children(nu);
    let mut out = SpirSet::new();
    // Each solved child keeps at least one low-degree vertex virtual, so
    // more children than the parameter allows means no representation fits.
    let inner = children.iter().filter(|&&m| t.kind(m) != NodeKind::Qstar).count();
    if inner > params.low + params.budget {
        return out;
    }
    let lists: Vec<Vec<(i32, &FrameEntry)>> =
        children.iter().map(|&m| sets[&m].iter().map(|(&k, e)| (k, e)).collect()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return out;
    }

    // Convolve (value, cost) pairs along the path; spirality adds and the
    // cheapest few pick vectors per sum are kept for materialization.
    let mut acc: BTreeMap<i32, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    acc.insert(0, vec![(0, Vec::new())]);
    for list in &lists {
        let mut next: BTreeMap<i32, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
        for (&s, cands) in &acc {
            for (ci, &(k, e)) in list.iter().enumerate() {
                for (c, picks) in cands {
                    let c2 = c + e.cost;
                    if c2 > params.budget {
                        continue;
                    }
                    let mut p2 = picks.clone();
                    p2.push(ci);
                    next.entry(s + k).or_default().push((c2, p2));
                }
            }
        }
        for v in next.values_mut() {
            v.sort();
            v.truncate(BEAM);
        }
        acc = next;
        if acc.is_empty() {
            return out;
        }
    }

    let pert = t.pertinent_edges(nu);
    let poles = t.poles(nu);
    let types = pole_types(block, pert, poles);
    let off = twice_offset(types);
    let range = params.twice_range();
    let emb = &t.skeleton_embeddings(nu)[0];
    for (&tsig, cands) in &acc {
        if tsig.abs() > range || (tsig - off).rem_euclid(2) != 0 {
            continue;
        }
        for (cost, pick_idx) in cands {
            let picks: BTreeMap<NodeId, &FrameRep> = children
                .iter()
                .enumerate()
                .map(|(j, &m)| (m, &lists[j][pick_idx[j]].1.frame))
                .collect();
            let skel_picks: BTreeMap<NodeId, &FrameRep> = picks
                .iter()
                .filter(|(&m, _)| t.kind(m) != NodeKind::Qstar)
                .map(|(&m, &f)| (m, f))
                .collect();
            let exp = build_expansion(block, t, nu, emb, &skel_picks, types, &cons.reflex);
            let Some(rep) = assemble(&exp, &picks, types, (tsig - off) / 2) else { continue };
            let frame = FrameRep {
                rep,
                vmap: exp.vmap.clone(),
                emap: exp.emap.clone(),
                closing: exp.closing,
                spacers: exp.spacers.clone(),
                poles: exp.poles,
            };
            debug_assert_eq!(frame.measured().0, tsig, "series values add along the path");
            offer(&mut out, tsig, *cost, frame);
            break;
        }
    }
    out
}

pub fn parallel_set(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    sets: &BTreeMap<NodeId, SpirSet>,
    params: SolveParams,
    cons: &BlockConstraints,
) -> SpirSet {
    let children = t.children(nu);
    let mut out = SpirSet::new();
    let inner = children.iter().filter(|&&m| t.kind(m) != NodeKind::Qstar).count();
    if inner > params.low + params.budget {
        return out;
    }
    let lists: Vec<Vec<(i32, &FrameEntry)>> =
        children.iter().map(|&m| sets[&m].iter().map(|(&k, e)| (k, e)).collect()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return out;
    }
    let pert = t.pertinent_edges(nu);
    let poles = t.poles(nu);
    let types = pole_types(block, pert, poles);
    let off = twice_offset(types);
    let range = params.twice_range();
    let embeddings = t.skeleton_embeddings(nu);

    // A bond keeps at most three children, so the tuple space stays small
    // and every combination is materialized directly.
    let mut idx = vec![0usize; children.len()];
    loop {
        let cost: usize = idx.iter().zip(&lists).map(|(&i, l)| l[i].1.cost).sum();
        if cost <= params.budget {
            let picks: BTreeMap<NodeId, &FrameRep> = children
                .iter()
                .enumerate()
                .map(|(j, &m)| (m, &lists[j][idx[j]].1.frame))
                .collect();
            let skel_picks: BTreeMap<NodeId, &FrameRep> = picks
                .iter()
                .filter(|(&m, _)| t.kind(m) != NodeKind::Qstar)
                .map(|(&m, &f)| (m, f))
                .collect();
            for emb in &embeddings {
                let exp = build_expansion(block, t, nu, emb, &skel_picks, types, &cons.reflex);
                for tsig in -range..=range {
                    if (tsig - off).rem_euclid(2) != 0 {
                        continue;
                    }
                    if out.get(&tsig).is_some_and(|e| e.cost <= cost) {
                        continue;
                    }
                    let Some(rep) = assemble(&exp, &picks, types, (tsig - off) / 2) else {
                        continue;
                    };
                    let frame = FrameRep {
                        rep,
                        vmap: exp.vmap.clone(),
                        emap: exp.emap.clone(),
                        closing: exp.closing,
                        spacers: exp.spacers.clone(),
                        poles: exp.poles,
                    };
                    debug_assert_eq!(frame.measured().0, tsig, "closing bends pin the winding");
                    offer(&mut out, tsig, cost, frame);
                }
            }
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    out
}

/// Materialize a representation of the expansion with the given closing
/// bends: child corners and bends are copied (chains included, via their
/// leaf witnesses), and the free gap corners are solved from the vertex-sum
/// and face-turn equations. Returns `None` when no assignment of gap
/// angles satisfies them.
pub(crate) fn assemble(
    exp: &Expansion,
    picks: &BTreeMap<NodeId, &FrameRep>,
    types: (PoleType, PoleType),
    nclose: i32,
) -> Option<OrthoRep> {
    let pg = &exp.pg;
    let g = pg.graph();

    let mut bends: Vec<Vec<Bend>> = vec![Vec::new(); g.edge_count()];
    bends[exp.closing] = bend_run(nclose);
    let mut angles: Vec<Vec<u16>> = (0..g.n()).map(|v| vec![0; pg.corner_count(v)]).collect();

    for frame in picks.values() {
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
                let gi = pg.pos_in_rotation(2 * ge + (rot[i] & 1));
                angles[gv][gi] = frame.rep.angle(fv, i);
            }
        }
        for (fe, &be) in frame.emap.iter().enumerate() {
            let Some(be) = be else { continue };
            bends[exp.local_edge(be)] = frame.rep.bends_along(2 * fe).to_vec();
        }
    }

    // Conventions the closing-edge law relies on: pass-through poles are
    // flat on both sides, spacer tips take the full turn.
    if types.0 == PoleType::OneInside {
        angles[exp.poles.0] = vec![180, 180];
    }
    if types.1 == PoleType::OneInside {
        angles[exp.poles.1] = vec![180, 180];
    }
    for &sp in &exp.spacers {
        let tip = pg.head(2 * sp);
        angles[tip] = vec![360];
    }

    solve_free_corners(exp, &mut angles, &bends)?;

    let rep = OrthoRep::new(pg.clone(), bends, angles).ok()?;
    debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
    Some(rep)
}

/// Fill every zero entry of `angles` so that all vertex sums are 360 and
/// all face turn sums hit their targets. Each free corner lies on one
/// vertex and one face, so the residual system is a transportation problem
/// with per-corner bounds 90..=270.
fn solve_free_corners(
    exp: &Expansion,
    angles: &mut [Vec<u16>],
    bends: &[Vec<Bend>],
) -> Option<()> {
    let pg = &exp.pg;
    let nf = pg.faces().len();

    // Face residuals: the contribution of fixed corners and bends, with
    // free corners counted separately.
    let mut face_sum = vec![0i32; nf];
    let mut face_free = vec![0u32; nf];
    let mut vert_rows: BTreeMap<usize, (u32, u32)> = BTreeMap::new(); // v -> (free corners, residual units)
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new(); // (vertex, corner, face)

    for v in 0..pg.graph().n() {
        let mut fixed = 0u32;
        let mut free = Vec::new();
        for i in 0..pg.corner_count(v) {
            let a = angles[v][i];
            let f = pg.corner_face(v, i);
            if a == 0 {
                free.push((i, f));
                face_free[f] += 1;
            } else {
                fixed += a as u32;
                face_sum[f] += 2 - a as i32 / 90;
            }
        }
        if free.is_empty() {
            if fixed != 360 {
                return None;
            }
            continue;
        }
        let residual = 360u32.checked_sub(fixed)?;
        if residual % 90 != 0 {
            return None;
        }
        let units = residual / 90;
        if units < free.len() as u32 || units > 3 * free.len() as u32 {
            return None;
        }
        vert_rows.insert(v, (free.len() as u32, units));
        for (i, f) in free {
            arcs.push((v, i, f));
        }
    }

    for (e, list) in bends.iter().enumerate() {
        let t: i32 = list.iter().map(|b| b.turn()).sum();
        // A face subtracts the turns of the bends traveled along its darts;
        // the reverse dart sees them negated.
        face_sum[pg.face_of_dart(2 * e)] -= t;
        face_sum[pg.face_of_dart(2 * e + 1)] += t;
    }

    // Face target: external −4, internal +4. A free corner of x right
    // angles contributes 2 − x, so the face needs Σx = 2·free − (target − cur).
    let mut face_cols: BTreeMap<usize, u32> = BTreeMap::new();
    for f in 0..nf {
        let target = if f == pg.external_face() { -4 } else { 4 };
        if face_free[f] == 0 {
            if face_sum[f] != target {
                return None;
            }
            continue;
        }
        let need = 2 * face_free[f] as i32 - (target - face_sum[f]);
        if need < face_free[f] as i32 || need > 3 * face_free[f] as i32 {
            return None;
        }
        face_cols.insert(f, need as u32);
    }

    // Transportation with unit lower bounds: ship y = x − 1 in 0..=2.
    let rows: Vec<usize> = vert_rows.keys().copied().collect();
    let cols: Vec<usize> = face_cols.keys().copied().collect();
    let rpos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cpos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let rcap: Vec<u32> = rows.iter().map(|v| vert_rows[v].1 - vert_rows[v].0).collect();
    let ccap: Vec<u32> = cols.iter().map(|f| face_cols[f] - face_free[*f]).collect();
    if rcap.iter().sum::<u32>() != ccap.iter().sum::<u32>() {
        return None;
    }
    let flat: Vec<(usize, usize)> = arcs.iter().map(|&(v, _, f)| (rpos[&v], cpos[&f])).collect();
    let flow = transport(&rcap, &ccap, &flat)?;
    for (k, &(v, i, _)) in arcs.iter().enumerate() {
        angles[v][i] = 90 * (1 + flow[k]) as u16;
    }
    Some(())
}

/// Ship `rcap[r]` units out of each row and `ccap[c]` into each column
/// over the given arcs, at most 2 units per arc. Returns per-arc flows.
fn transport(rcap: &[u32], ccap: &[u32], arcs: &[(usize, usize)]) -> Option<Vec<u32>> {
    let mut flow = vec![0u32; arcs.len()];
    let mut rleft: Vec<u32> = rcap.to_vec();
    let mut cleft: Vec<u32> = ccap.to_vec();
    // Greedy fill, then fix deficits by augmenting paths row → col → row.
    for (k, &(r, c)) in arcs.iter().enumerate() {
        let push = rleft[r].min(cleft[c]).min(2);
        flow[k] = push;
        rleft[r] -= push;
        cleft[c] -= push;
    }
    while let Some(r0) = rleft.iter().position(|&x| x > 0) {
        // BFS over alternating residual moves: raise an arc out of a
        // reached row, lower another arc of its column to reach a new row.
        let mut row_seen = vec![false; rcap.len()];
        let mut col_via: Vec<Option<usize>> = vec![None; ccap.len()];
        let mut row_via: Vec<Option<usize>> = vec![None; rcap.len()];
        row_seen[r0] = true;
        let mut queue = std::collections::VecDeque::from([r0]);
        let mut done_col = None;
        'bfs: while let Some(r) = queue.pop_front() {
            for (k, &(ar, ac)) in arcs.iter().enumerate() {
                if ar != r || flow[k] >= 2 || col_via[ac].is_some() {
                    continue;
                }
                col_via[ac] = Some(k);
                if cleft[ac] > 0 {
                    done_col = Some(ac);
                    break 'bfs;
                }
                for (k2, &(br, bc)) in arcs.iter().enumerate() {
                    if bc != ac || flow[k2] == 0 || row_seen[br] {
                        continue;
                    }
                    row_seen[br] = true;
                    row_via[br] = Some(k2);
                    queue.push_back(br);
                }
            }
        }
        let mut c = done_col?;
        cleft[c] -= 1;
        rleft[r0] -= 1;
        // Walk the alternating path back, shifting one unit along it.
        loop {
            let k = col_via[c].unwrap();
            flow[k] += 1;
            let r = arcs[k].0;
            if r == r0 {
                break;
            }
            let k2 = row_via[r].expect("path rows are reached by lowering an arc");
            flow[k2] -= 1;
            c = arcs[k2].1;
        }
    }
    if cleft.iter().any(|&x| x > 0) {
        return None;
    }
    Some(flow)
}

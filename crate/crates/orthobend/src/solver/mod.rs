//! Bend-minimum orthogonal representations of planar graphs of maximum
//! degree four.
//!
//! The solver works block by block. A biconnected block that is not a plain
//! cycle is decomposed into its chain tree (`decomp`); for every rooting of
//! that tree at a chain the components are processed bottom-up, recording
//! for each attainable *spirality* — the twice-counted winding of a
//! component between its poles — the cheapest representation realizing it
//! (`SpirSet`). Closing the root chain around the last component turns an
//! entry into a representation of the whole block. Blocks are then glued
//! back together around cutvertices, nesting each block into a large-enough
//! corner of the rest.
//!
//! Every recorded component representation lives on a small *frame* graph:
//! the component itself plus a dummy closing edge between the poles (and a
//! degree-one spacer edge at a pole the component meets with exactly two of
//! its four block edges). The closing edge's bends tie the frame to the
//! spirality: with the pole corners rigidified, a component of spirality σ
//! forces σ − offset bends on the closing edge, where the offset is 4 less
//! a half per spacer. Keeping the frames around lets a parent pin a child's
//! interior verbatim while leaving the corners around the child's fan free.

pub mod chain;
pub mod compose;
pub mod expand;
pub mod merge;

use crate::decomp::{BcTree, Chain, NodeKind, SpqrTree};
use crate::graph::{EdgeId, Graph, SubMap, VertexId};
use crate::ortho::{component_spirality, reverse_bends, Bend, OrthoRep, TwiceSpirality};
use crate::planar::{dart_edge, planar_embed, rev, DartId, PlanarError, PlaneGraph};
use chain::{
    chain_realize, TurnDomain, TURN_ANY, TURN_LEFT, TURN_NONE, TURN_NON_RIGHT, TURN_REFLEX,
    TURN_RIGHT,
};
use std::collections::{BTreeMap, BTreeSet};

pub use crate::decomp::NodeId;

/// Budget and window bounds for one block solve.
#[derive(Debug, Clone, Copy)]
pub struct SolveParams {
    /// Maximum number of bends allowed overall.
    pub budget: usize,
    /// Number of degree-≤2 vertices of the graph being solved; together
    /// with the budget it bounds the spirality window.
    pub low: usize,
}

impl SolveParams {
    /// Largest twice-spirality any component can attain within the budget.
    pub fn twice_range(&self) -> i32 {
        2 * (self.low as i32 + self.budget as i32 + 2)
    }
}

/// How a component meets one of its poles inside its block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleType {
    /// A single component edge at the pole.
    OneInside,
    /// All but one of the pole's block edges belong to the component.
    OneOutside,
    /// Two component edges and two other block edges (degree four).
    TwoTwo,
}

pub fn pole_type(block: &Graph, pert: &[EdgeId], w: VertexId) -> PoleType {
    let indeg = block.adj(w).iter().filter(|e| pert.binary_search(e).is_ok()).count();
    let outdeg = block.degree(w) - indeg;
    if indeg == 1 {
        PoleType::OneInside
    } else if outdeg == 1 {
        PoleType::OneOutside
    } else {
        debug_assert_eq!((indeg, outdeg), (2, 2));
        PoleType::TwoTwo
    }
}

pub fn pole_types(block: &Graph, pert: &[EdgeId], poles: (VertexId, VertexId)) -> (PoleType, PoleType) {
    (pole_type(block, pert, poles.0), pole_type(block, pert, poles.1))
}

/// Twice the closing-edge offset: a frame of twice-spirality `t` carries
/// `(t − twice_offset(..)) / 2` bends on its closing edge.
pub fn twice_offset(types: (PoleType, PoleType)) -> i32 {
    let spacers = [types.0, types.1].iter().filter(|&&t| t == PoleType::TwoTwo).count();
    8 - spacers as i32
}

/// A component representation on its frame graph, with the maps back into
/// the block.
#[derive(Debug, Clone)]
pub struct FrameRep {
    pub rep: OrthoRep,
    /// Frame vertex → block vertex; spacer tips map to `None`.
    pub vmap: Vec<Option<VertexId>>,
    /// Frame edge → block edge; the closing edge and spacers map to `None`.
    /// Kept edges preserve the block's endpoint order, so dart parity
    /// carries over.
    pub emap: Vec<Option<EdgeId>>,
    /// The closing edge; its even dart runs pole 0 → pole 1.
    pub closing: EdgeId,
    pub spacers: Vec<EdgeId>,
    /// Frame-local poles.
    pub poles: (VertexId, VertexId),
}

impl FrameRep {
    /// Frame-local ids of the component's own edges.
    pub fn component_edges(&self) -> Vec<EdgeId> {
        self.emap
            .iter()
            .enumerate()
            .filter_map(|(le, be)| be.map(|_| le))
            .collect()
    }

    /// Twice-spirality of the component as measured inside the frame.
    pub fn measured(&self) -> TwiceSpirality {
        component_spirality(&self.rep, &self.component_edges(), self.poles)
            .expect("frame components are measurable")
    }
}

#[derive(Debug, Clone)]
pub struct FrameEntry {
    /// Bends on the component's own edges (closing edge and spacers excluded).
    pub cost: usize,
    pub frame: FrameRep,
}

/// Cheapest frame per attainable twice-spirality.
pub type SpirSet = BTreeMap<i32, FrameEntry>;

/// Record `frame` under `key` unless a no-more-expensive entry exists.
pub fn offer(set: &mut SpirSet, key: i32, cost: usize, frame: FrameRep) {
    match set.get(&key) {
        Some(e) if e.cost <= cost => {}
        _ => {
            set.insert(key, FrameEntry { cost, frame });
        }
    }
}

/// Angle requirement on the corner a block exposes to its parent block on
/// the external face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OuterAngle {
    /// Exactly 270°.
    Reflex,
    /// At least 180°.
    NotRight,
    /// Exactly 180°.
    Flat,
}

/// Constraints a block inherits from the blocks hanging off it and from its
/// own attachment to the parent block.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockConstraints {
    /// Degree-two block vertices whose two corners must be 90°/270° — a
    /// child block with two edges at that cutvertex needs the 270° pocket.
    pub reflex: BTreeSet<VertexId>,
    /// Attachment vertex shared with the parent block and the angle it must
    /// expose on the external face.
    pub at_parent: Option<(VertexId, OuterAngle)>,
}

/// Representation of one connected component of the input, on the
/// component's own ids, with the mapping back to the input graph.
#[derive(Debug, Clone)]
pub struct ComponentSolution {
    /// Input vertex ids of the component, ascending.
    pub vertices: Vec<VertexId>,
    /// `None` for an isolated vertex.
    pub rep: Option<(OrthoRep, SubMap)>,
    pub bends: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub components: Vec<ComponentSolution>,
    pub total_bends: usize,
}

/// Dart of `e` with tail `u`.
pub(crate) fn dart_from(g: &Graph, e: EdgeId, u: VertexId) -> DartId {
    if g.endpoints(e).0 == u {
        2 * e
    } else {
        debug_assert_eq!(g.endpoints(e).1, u);
        2 * e + 1
    }
}

/// Store `bends`, read along dart `d`, at `d`'s edge (edge storage reads
/// along the even dart).
pub(crate) fn bends_at_edge(edge_bends: &mut [Vec<Bend>], d: DartId, bends: Vec<Bend>) {
    edge_bends[dart_edge(d)] = if d & 1 == 0 { bends } else { reverse_bends(&bends) };
}

pub(crate) fn bend_run(n: i32) -> Vec<Bend> {
    let kind = if n > 0 { Bend::R } else { Bend::L };
    vec![kind; n.unsigned_abs() as usize]
}

fn count_low(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) <= 2).count()
}

/// Decide whether `g` (planar, max degree 4) has an orthogonal
/// representation with at most `budget` bends, and return a bend-minimum
/// one when it does. `Err` only for non-planar inputs.
pub fn solve(g: &Graph, budget: usize) -> Result<Option<Solution>, PlanarError> {
    let mut components = Vec::new();
    let mut total = 0usize;
    for comp in g.components() {
        let mut comp = comp;
        comp.sort_unstable();
        let inside: BTreeSet<VertexId> = comp.iter().copied().collect();
        let edges: Vec<EdgeId> =
            (0..g.edge_count()).filter(|&e| inside.contains(&g.endpoints(e).0)).collect();
        if edges.is_empty() {
            debug_assert_eq!(comp.len(), 1);
            components.push(ComponentSolution { vertices: comp, rep: None, bends: 0 });
            continue;
        }
        let (sub, map) = g.edge_subgraph(&edges);
        if planar_embed(&sub).is_none() {
            return Err(PlanarError::NotPlanar);
        }
        match solve_connected(&sub, budget) {
            Some((rep, bends)) => {
                total += bends;
                if total > budget {
                    return Ok(None);
                }
                components.push(ComponentSolution { vertices: comp, rep: Some((rep, map)), bends });
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Solution { components, total_bends: total }))
}

/// Bend-minimum solution found by raising the budget from zero, so the
/// spirality windows stay as tight as the answer allows; far cheaper than
/// one call with a loose budget. Every planar 4-graph admits a drawing with
/// at most two bends per edge (plus slack for the one classical exception),
/// so the ramp is capped at 2m + 8.
pub fn bend_minimum_solution(g: &Graph) -> Result<Option<Solution>, PlanarError> {
    let cap = 2 * g.edge_count() + 8;
    for b in 0..=cap {
        if let Some(sol) = solve(g, b)? {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Bend minimum of a connected graph, or `None` when it exceeds the budget.
fn solve_connected(g: &Graph, budget: usize) -> Option<(OrthoRep, usize)> {
    let bc = BcTree::build(g);
    if bc.blocks().len() == 1 {
        let params = SolveParams { budget, low: count_low(g) };
        return dispatch_block(g, params, &BlockConstraints::default());
    }
    solve_cut(g, &bc, budget)
}

/// Solve one block under its constraints: a bare edge, a cycle, or a
/// biconnected graph with branch vertices.
fn dispatch_block(
    block: &Graph,
    params: SolveParams,
    cons: &BlockConstraints,
) -> Option<(OrthoRep, usize)> {
    if block.edge_count() == 1 {
        debug_assert!(cons.reflex.is_empty() && cons.at_parent.is_none());
        let (a, b) = block.endpoints(0);
        let mut rot = vec![Vec::new(); block.n()];
        rot[a].push(0);
        rot[b].push(1);
        let pg = PlaneGraph::new(block.clone(), rot, 0).expect("an edge is planar");
        let rep = OrthoRep::new(pg, vec![Vec::new()], vec![vec![360], vec![360]])
            .expect("bare edge representation");
        return Some((rep, 0));
    }
    if (0..block.n()).all(|v| block.degree(v) == 2) {
        return solve_cycle(block, params, cons);
    }
    solve_biconnected(block, params, cons)
}

/// A cycle bends until its inner face turns a full +4. Walking the cycle
/// with the interior on the left, the face contribution at a vertex is
/// `2 − inner/90`, so the inherited angle constraints become per-vertex
/// turn domains and the rest is the chain DP.
fn solve_cycle(
    block: &Graph,
    params: SolveParams,
    cons: &BlockConstraints,
) -> Option<(OrthoRep, usize)> {
    let m = block.edge_count();
    debug_assert!(m >= 2);
    let mut vseq = vec![0];
    let mut eseq = vec![block.adj(0)[0]];
    let mut at = block.other_end(eseq[0], 0);
    while at != 0 {
        vseq.push(at);
        let prev = *eseq.last().unwrap();
        let next = *block.adj(at).iter().find(|&&e| e != prev).unwrap();
        eseq.push(next);
        at = block.other_end(next, at);
    }
    debug_assert_eq!(eseq.len(), m);

    let mut domains = Vec::with_capacity(m);
    for &w in &vseq {
        let mut d = TURN_ANY;
        if cons.reflex.contains(&w) {
            d &= TURN_REFLEX;
        }
        if let Some((c, rule)) = cons.at_parent {
            if c == w {
                // outer angle = 90·(2 + contribution)
                d &= match rule {
                    OuterAngle::Reflex => TURN_RIGHT,
                    OuterAngle::NotRight => TURN_NONE | TURN_RIGHT,
                    OuterAngle::Flat => TURN_NONE,
                };
            }
        }
        domains.push(d);
    }
    let (turns, bends) = chain_realize(&domains, 4)?;
    if bends > params.budget {
        return None;
    }

    let mut rot = vec![Vec::new(); block.n()];
    let mut angles = vec![Vec::new(); block.n()];
    let mut edge_bends = vec![Vec::new(); m];
    for i in 0..m {
        let w = vseq[i];
        let fwd = dart_from(block, eseq[i], w);
        let back = dart_from(block, eseq[(i + m - 1) % m], w);
        rot[w] = vec![fwd, back];
        let c = turns[i] as i32;
        // corner 0 (fwd→back) faces outward, corner 1 is the inner angle
        angles[w] = vec![(90 * (2 + c)) as u16, (90 * (2 - c)) as u16];
    }
    let leftover = 4 - turns.iter().map(|&t| t as i32).sum::<i32>();
    debug_assert_eq!(leftover.unsigned_abs() as usize, bends);
    if leftover != 0 {
        // a left bend on the inner orbit raises the face sum by one
        bends_at_edge(&mut edge_bends, dart_from(block, eseq[0], vseq[0]), bend_run(-leftover));
    }
    let pg = PlaneGraph::new(block.clone(), rot, 0).expect("cycle rotations are planar");
    let ext = pg.face_of_dart(rev(dart_from(block, eseq[0], vseq[0])));
    let pg = pg.with_external(ext);
    let rep = OrthoRep::new(pg, edge_bends, angles).expect("cycle representation");
    debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
    Some((rep, bends))
}

/// Spirality set of a chain node: the chain plus the closing edge form a
/// cycle; pole corners are rigid at 180°/180°, a chain of spirality σ puts
/// σ − 4 bends on the closing edge, and whatever the inner turns miss of σ
/// is paid as bends on the first chain edge.
pub fn qstar_spirality_set(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    params: SolveParams,
    reflex: &BTreeSet<VertexId>,
) -> SpirSet {
    let chain = t.chain(nu).expect("chain node");
    debug_assert_eq!(t.poles(nu), chain.ends);
    let mut path = vec![chain.ends.0];
    path.extend(chain.inner.iter().copied());
    path.push(chain.ends.1);
    let l = path.len();
    let mc = chain.edges.len();

    let mut ends: Vec<(VertexId, VertexId)> = Vec::with_capacity(mc + 1);
    for (i, &be) in chain.edges.iter().enumerate() {
        let (a, b) = block.endpoints(be);
        // keep the block's endpoint order so dart parity carries over
        let pair = if a == path[i] { (i, i + 1) } else { (i + 1, i) };
        debug_assert_eq!(
            (path[pair.0], path[pair.1]),
            (a, b),
            "chain edge endpoints follow the path"
        );
        ends.push(pair);
    }
    ends.push((0, l - 1));
    let fg = Graph::new(l, ends.clone()).expect("frame of a chain");
    let out_dart = |i: usize, e: usize| -> DartId {
        if ends[e].0 == i {
            2 * e
        } else {
            2 * e + 1
        }
    };
    let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); l];
    rot[0] = vec![out_dart(0, 0), 2 * mc];
    rot[l - 1] = vec![out_dart(l - 1, mc - 1), 2 * mc + 1];
    for i in 1..l - 1 {
        rot[i] = vec![out_dart(i, i), out_dart(i, i - 1)];
    }
    let pg = PlaneGraph::new(fg, rot, 0).expect("chain frames are planar");
    let pg = pg.with_external(pg.face_of_dart(2 * mc + 1));

    let domains: Vec<TurnDomain> = chain
        .inner
        .iter()
        .map(|w| if reflex.contains(w) { TURN_REFLEX } else { TURN_ANY })
        .collect();

    let mut set = SpirSet::new();
    let lim = params.twice_range() / 2;
    for sigma in -lim..=lim {
        let Some((turns, cost)) = chain_realize(&domains, sigma) else { continue };
        if cost > params.budget {
            continue;
        }
        let mut angles: Vec<Vec<u16>> = vec![Vec::new(); l];
        angles[0] = vec![180, 180];
        angles[l - 1] = vec![180, 180];
        for (i, &tau) in turns.iter().enumerate() {
            let tau = tau as i32;
            // corner 1 (back→fwd) lies on the closing side and turns with
            // the walk; corner 0 complements it
            angles[i + 1] = vec![(90 * (2 - tau)) as u16, (90 * (2 + tau)) as u16];
        }
        let mut edge_bends: Vec<Vec<Bend>> = vec![Vec::new(); mc + 1];
        let leftover = sigma - turns.iter().map(|&t| t as i32).sum::<i32>();
        debug_assert_eq!(leftover.unsigned_abs() as usize, cost);
        if leftover != 0 {
            bends_at_edge(&mut edge_bends, out_dart(0, 0), bend_run(leftover));
        }
        if sigma != 4 {
            edge_bends[mc] = bend_run(sigma - 4);
        }
        let rep = OrthoRep::new(pg.clone(), edge_bends, angles).expect("chain frame representation");
        let mut emap: Vec<Option<EdgeId>> = chain.edges.iter().map(|&e| Some(e)).collect();
        emap.push(None);
        let frame = FrameRep {
            rep,
            vmap: path.iter().map(|&v| Some(v)).collect(),
            emap,
            closing: mc,
            spacers: Vec::new(),
            poles: (0, l - 1),
        };
        debug_assert_eq!(frame.measured().0, 2 * sigma);
        offer(&mut set, 2 * sigma, cost, frame);
    }
    set
}

/// Solve a biconnected block with branch vertices, trying every admissible
/// rooting of its chain tree.
fn solve_biconnected(
    block: &Graph,
    params: SolveParams,
    cons: &BlockConstraints,
) -> Option<(OrthoRep, usize)> {
    let tree = SpqrTree::build(block).expect("biconnected block with branch vertices");
    let roots: Vec<NodeId> = match cons.at_parent {
        // the attachment vertex must sit on the external face: root at the
        // chain holding it
        Some((c, OuterAngle::Reflex)) | Some((c, OuterAngle::NotRight)) => tree
            .qstar_nodes()
            .into_iter()
            .filter(|&q| tree.chain(q).unwrap().inner.contains(&c))
            .collect(),
        Some((c, OuterAngle::Flat)) => tree
            .qstar_nodes()
            .into_iter()
            .filter(|&q| {
                let ends = tree.chain(q).unwrap().ends;
                ends.0 == c || ends.1 == c
            })
            .collect(),
        // The external face closes with four more right than left turns;
        // degree-3 and degree-4 vertices only offer 90° and 180° corners,
        // so with fewer than four bends some degree-2 vertex must supply a
        // reflex corner, and its whole chain runs along the external face.
        // Rooting is then only useful at chains with inner vertices.
        None if params.budget < 4 => tree
            .qstar_nodes()
            .into_iter()
            .filter(|&q| !tree.chain(q).unwrap().inner.is_empty())
            .collect(),
        None => tree.qstar_nodes(),
    };
    let mut best: Option<(OrthoRep, usize)> = None;
    for rho in roots {
        let rooted = tree.root_tree(rho).expect("rooting at a chain");
        if let Some((rep, cost)) = solve_rooted(block, &rooted, params, cons) {
            if best.as_ref().map_or(true, |b| cost < b.1) {
                let done = cost == 0;
                best = Some((rep, cost));
                if done {
                    break;
                }
            }
        }
    }
    best
}

fn post_order(t: &SpqrTree) -> Vec<NodeId> {
    fn go(t: &SpqrTree, nu: NodeId, out: &mut Vec<NodeId>) {
        for &c in t.children(nu) {
            go(t, c, out);
        }
        out.push(nu);
    }
    let mut out = Vec::new();
    go(t, t.root_child(), &mut out);
    out
}

/// Spirality set of one tree node, dispatched by kind. Series and parallel
/// nodes compose their children's sets directly; rigid nodes (and any node
/// that must pin a flat attachment angle on the external face) go through
/// the explicit frame expansion.
fn compute_set(
    block: &Graph,
    t: &SpqrTree,
    nu: NodeId,
    sets: &BTreeMap<NodeId, SpirSet>,
    params: SolveParams,
    cons: &BlockConstraints,
) -> SpirSet {
    let flat_pole = cons.at_parent.and_then(|(c, rule)| {
        (rule == OuterAngle::Flat && nu == t.root_child()).then_some(c)
    });
    match t.kind(nu) {
        NodeKind::Qstar => qstar_spirality_set(block, t, nu, params, &cons.reflex),
        NodeKind::S if flat_pole.is_none() => compose::series_set(block, t, nu, sets, params, cons),
        NodeKind::P if flat_pole.is_none() => {
            compose::parallel_set(block, t, nu, sets, params, cons)
        }
        _ => expand::expand_set(block, t, nu, sets, params, cons, flat_pole),
    }
}

/// Solve the block for one rooting: build every node's spirality set
/// bottom-up, then close the root chain around the root component.
fn solve_rooted(
    block: &Graph,
    t: &SpqrTree,
    params: SolveParams,
    cons: &BlockConstraints,
) -> Option<(OrthoRep, usize)> {
    let mut sets: BTreeMap<NodeId, SpirSet> = BTreeMap::new();
    for nu in post_order(t) {
        let set = compute_set(block, t, nu, &sets, params, cons);
        if set.is_empty() {
            return None;
        }
        sets.insert(nu, set);
    }
    let nu0 = t.root_child();
    let chain = t.chain(t.root()).expect("root is a chain");
    debug_assert_eq!(t.poles(nu0), chain.ends);

    let mut domains = Vec::with_capacity(chain.inner.len());
    for &w in &chain.inner {
        let mut d = TURN_ANY;
        if cons.reflex.contains(&w) {
            d &= TURN_REFLEX;
        }
        if let Some((c, rule)) = cons.at_parent {
            if c == w {
                // the external face reads 90·(2 − turn) at a root-chain vertex
                d &= match rule {
                    OuterAngle::Reflex => TURN_LEFT,
                    OuterAngle::NotRight => TURN_NON_RIGHT,
                    OuterAngle::Flat => TURN_ANY, // flat pins a pole, never chain-inner
                };
            }
        }
        domains.push(d);
    }

    let mut best: Option<(OrthoRep, usize)> = None;
    for (&tsig, entry) in &sets[&nu0] {
        if tsig.rem_euclid(2) != 0 {
            debug_assert!(false, "root component spirality must be integral");
            continue;
        }
        let target = tsig / 2 - 4;
        let Some((turns, chain_cost)) = chain_realize(&domains, target) else { continue };
        let total = entry.cost + chain_cost;
        if total <= params.budget && best.as_ref().map_or(true, |b| total < b.1) {
            let rep = assemble_root(block, entry, chain, &turns, target);
            debug_assert_eq!(rep.total_bends(), total);
            let done = total == 0;
            best = Some((rep, total));
            if done {
                break;
            }
        }
    }
    best
}

/// Substitute the root chain for the frame's closing edge: frame rotations
/// and angles carry over verbatim, the chain runs pole to pole with its DP
/// turns, and the turns' shortfall lands as bends on the first chain edge.
fn assemble_root(
    block: &Graph,
    entry: &FrameEntry,
    chain: &Chain,
    turns: &[i8],
    target: i32,
) -> OrthoRep {
    let f = &entry.frame;
    debug_assert!(f.spacers.is_empty(), "root components have one-outside poles");
    let frep = &f.rep;
    debug_assert_eq!(f.vmap[f.poles.0], Some(chain.ends.0));
    debug_assert_eq!(f.vmap[f.poles.1], Some(chain.ends.1));

    let mut rot: Vec<Vec<DartId>> = vec![Vec::new(); block.n()];
    let mut angles: Vec<Vec<u16>> = vec![Vec::new(); block.n()];
    let mut edge_bends: Vec<Vec<Bend>> = vec![Vec::new(); block.edge_count()];

    let first_out = dart_from(block, chain.edges[0], chain.ends.0);
    let last_out = dart_from(block, *chain.edges.last().unwrap(), chain.ends.1);
    let translate = |fd: DartId| -> DartId {
        match f.emap[dart_edge(fd)] {
            Some(be) => 2 * be + (fd & 1),
            // the closing edge leaves each pole where the chain now does
            None => {
                if fd == 2 * f.closing {
                    first_out
                } else {
                    debug_assert_eq!(fd, 2 * f.closing + 1);
                    last_out
                }
            }
        }
    };
    for fv in 0..frep.graph().n() {
        let bv = f.vmap[fv].expect("no spacer tips at the root");
        rot[bv] = frep.plane().rotation(fv).iter().map(|&d| translate(d)).collect();
        angles[bv] = frep.angles_at(fv).to_vec();
    }
    for (i, &w) in chain.inner.iter().enumerate() {
        let fwd = dart_from(block, chain.edges[i + 1], w);
        let back = dart_from(block, chain.edges[i], w);
        rot[w] = vec![fwd, back];
        let tau = turns[i] as i32;
        // the external face consumes corner 0 and reads 90·(2 − turn)
        angles[w] = vec![(90 * (2 - tau)) as u16, (90 * (2 + tau)) as u16];
    }
    for fe in 0..frep.graph().edge_count() {
        if let Some(be) = f.emap[fe] {
            edge_bends[be] = frep.bends_along(2 * fe).to_vec();
        }
    }
    let leftover = target - turns.iter().map(|&t| t as i32).sum::<i32>();
    if leftover != 0 {
        bends_at_edge(&mut edge_bends, first_out, bend_run(leftover));
    }
    let pg = PlaneGraph::new(block.clone(), rot, 0).expect("frame and chain glue planar");
    let ext = pg.face_of_dart(rev(first_out));
    let pg = pg.with_external(ext);
    let rep = OrthoRep::new(pg, edge_bends, angles).expect("assembled block representation");
    debug_assert!(rep.validate().is_empty(), "{:?}", rep.validate());
    rep
}

/// Solve a connected graph with several blocks: per rooting of the
/// block-cut tree, constrain and solve each block, then nest them around
/// the cutvertices.
fn solve_cut(g: &Graph, bc: &BcTree, budget: usize) -> Option<(OrthoRep, usize)> {
    let low = count_low(g);
    let blocks: Vec<(Graph, SubMap)> =
        bc.blocks().iter().map(|es| g.edge_subgraph(es)).collect();
    // a block needing more low-degree vertices than cutvertices and budget
    // can supply never fits
    for (bg, _) in &blocks {
        if count_low(bg) > 2 * low + budget {
            return None;
        }
    }
    let mut cache: BTreeMap<(usize, BlockConstraints), Option<(OrthoRep, usize)>> = BTreeMap::new();
    let mut best: Option<(OrthoRep, usize)> = None;
    for root in 0..blocks.len() {
        let order = bc.rooted_order(root);
        let mut parts: BTreeMap<usize, OrthoRep> = BTreeMap::new();
        let mut sum = 0usize;
        let mut dead = false;
        for &(j, pcut) in &order {
            let cons = constraints_for(g, bc, &blocks, &order, j, pcut);
            let solved = cache.entry((j, cons.clone())).or_insert_with(|| {
                let params = SolveParams { budget, low: count_low(&blocks[j].0) };
                dispatch_block(&blocks[j].0, params, &cons)
            });
            match solved {
                Some((rep, cost)) => {
                    sum += *cost;
                    parts.insert(j, rep.clone());
                }
                None => {
                    dead = true;
                    break;
                }
            }
            if sum > budget {
                dead = true;
                break;
            }
        }
        if dead {
            continue;
        }
        let Some(rep) = merge::merge_blocks(g, bc, &order, &blocks, &parts) else { continue };
        debug_assert_eq!(rep.total_bends(), sum);
        if best.as_ref().map_or(true, |b| sum < b.1) {
            let done = sum == 0;
            best = Some((rep, sum));
            if done {
                break;
            }
        }
    }
    best
}

/// Block degree of `v` inside block `j`.
fn block_degree(blocks: &[(Graph, SubMap)], j: usize, v: VertexId) -> usize {
    let (bg, map) = &blocks[j];
    map.local_vertex(v).map_or(0, |lv| bg.degree(lv))
}

/// Angle constraints block `j` inherits in the rooting `order`: a reflex
/// pocket for every two-edge child block at an interior cutvertex, and the
/// attachment rule toward the parent block. The rules mirror exactly what
/// the cutvertex nesting in `merge` can accommodate.
fn constraints_for(
    g: &Graph,
    bc: &BcTree,
    blocks: &[(Graph, SubMap)],
    order: &[(usize, Option<VertexId>)],
    j: usize,
    pcut: Option<VertexId>,
) -> BlockConstraints {
    let map = &blocks[j].1;
    let mut cons = BlockConstraints::default();
    for &c in bc.cutvertices() {
        if Some(c) == pcut || map.local_vertex(c).is_none() {
            continue;
        }
        // c attaches child blocks to j
        let dj = block_degree(blocks, j, c);
        if dj == 2 && g.degree(c) == 4 {
            let two_edge_child = bc
                .blocks_containing(c)
                .into_iter()
                .any(|l| l != j && block_degree(blocks, l, c) == 2);
            if two_edge_child {
                cons.reflex.insert(map.local_vertex(c).unwrap());
            }
        }
    }
    if let Some(c) = pcut {
        let pj = order
            .iter()
            .take_while(|&&(l, _)| l != j)
            .map(|&(l, _)| l)
            .find(|&l| block_degree(blocks, l, c) > 0)
            .expect("parent block precedes its children");
        let dj = block_degree(blocks, j, c);
        let dk = block_degree(blocks, pj, c);
        let rule = match (g.degree(c), dk, dj) {
            (4, 2, 2) => Some(OuterAngle::Reflex),
            (4, 1, 2) => Some(OuterAngle::NotRight),
            (4, 1, 3) => Some(OuterAngle::Flat),
            (3, _, 2) => Some(OuterAngle::NotRight),
            _ => None,
        };
        if let Some(rule) = rule {
            cons.at_parent = Some((map.local_vertex(c).unwrap(), rule));
        }
    }
    cons
}

#[cfg(test)]
mod tests;

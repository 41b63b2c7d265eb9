//! Structural decomposition: block–cutvertex trees, and for each
//! biconnected non-cycle block a decomposition tree whose leaves are the
//! maximal chains through degree-2 vertices and whose inner nodes carry
//! bond (P), polygon (S), or triconnected (R) skeletons. Construction is
//! chain contraction followed by repeated split-pair splitting, canonical
//! bond/polygon merging, and triangulation of long polygons so every
//! rooted S-node has exactly two children.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::planar::{planar_embed, PlaneGraph};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("graph is a cycle")]
    IsCycle,
    #[error("node is not a chain node")]
    NotAQstarNode,
}

/// Block–cutvertex structure of a connected graph.
#[derive(Debug, Clone)]
pub struct BcTree {
    blocks: Vec<Vec<EdgeId>>,
    block_vertices: Vec<Vec<VertexId>>,
    cutvertices: Vec<VertexId>,
}

impl BcTree {
    pub fn build(g: &Graph) -> BcTree {
        debug_assert!(g.n() <= 1 || g.is_connected());
        let blocks = g.blocks();
        let block_vertices = blocks
            .iter()
            .map(|es| {
                let mut vs: Vec<VertexId> = es
                    .iter()
                    .flat_map(|&e| {
                        let (u, v) = g.endpoints(e);
                        [u, v]
                    })
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        BcTree { blocks, block_vertices, cutvertices: g.cutvertices() }
    }

    pub fn blocks(&self) -> &[Vec<EdgeId>] {
        &self.blocks
    }

    pub fn vertices_of(&self, b: usize) -> &[VertexId] {
        &self.block_vertices[b]
    }

    pub fn cutvertices(&self) -> &[VertexId] {
        &self.cutvertices
    }

    pub fn is_cutvertex(&self, v: VertexId) -> bool {
        self.cutvertices.binary_search(&v).is_ok()
    }

    pub fn blocks_containing(&self, v: VertexId) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.block_vertices[b].binary_search(&v).is_ok())
            .collect()
    }

    /// Blocks in root-first breadth order, each with the cutvertex that
    /// attaches it to its parent block (None for the root itself).
    pub fn rooted_order(&self, root: usize) -> Vec<(usize, Option<VertexId>)> {
        let mut out = vec![(root, None)];
        let mut seen = vec![false; self.blocks.len()];
        seen[root] = true;
        let mut i = 0;
        while i < out.len() {
            let b = out[i].0;
            i += 1;
            for &c in &self.block_vertices[b] {
                if !self.is_cutvertex(c) {
                    continue;
                }
                for nb in self.blocks_containing(c) {
                    if !seen[nb] {
                        seen[nb] = true;
                        out.push((nb, Some(c)));
                    }
                }
            }
        }
        out
    }
}

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    Qstar,
    S,
    P,
    R,
}

/// A maximal chain of block edges through degree-2 vertices, listed in
/// order from `ends.0` to `ends.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<EdgeId>,
    pub ends: (VertexId, VertexId),
    pub inner: Vec<VertexId>,
}

impl Chain {
    fn reverse(&mut self) {
        self.edges.reverse();
        self.inner.reverse();
        self.ends = (self.ends.1, self.ends.0);
    }
}

/// One skeleton edge; it stands for the node `to` (a chain leaf or a
/// neighbouring inner node).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkelEdge {
    pub ends: (VertexId, VertexId),
    pub to: NodeId,
}

#[derive(Debug, Clone)]
pub struct SpqrNode {
    pub kind: NodeKind,
    chain: Option<Chain>,
    skel: Vec<SkelEdge>,
}

#[derive(Debug, Clone)]
pub struct SpqrTree {
    nodes: Vec<SpqrNode>,
    root: Option<NodeId>,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    poles: Vec<Option<(VertexId, VertexId)>>,
    ref_local: Vec<Option<usize>>,
    pertinent: Vec<Vec<EdgeId>>,
}

/// Working piece during decomposition: an edge multiset where each edge is
/// a contracted chain or half of a virtual pair.
#[derive(Debug, Clone)]
struct SplitGraph {
    edges: Vec<(VertexId, VertexId, Item)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Chain(usize),
    Virt(usize),
}

#[derive(Clone, Copy)]
enum Class {
    Bond,
    Polygon,
    Rigid,
    Parallel(VertexId, VertexId),
    Pair(VertexId, VertexId),
}

impl SplitGraph {
    fn vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|&(a, b, _)| [a, b]).collect()
    }

    fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &(a, b, _) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        adj
    }

    fn classify(&self) -> Class {
        let vs = self.vertices();
        if vs.len() == 2 {
            return Class::Bond;
        }
        let mut classes: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for &(a, b, _) in &self.edges {
            *classes.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        if let Some((&(a, b), _)) = classes.iter().find(|&(_, &c)| c >= 2) {
            return Class::Parallel(a, b);
        }
        let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(a, b, _) in &self.edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        if deg.values().all(|&d| d == 2) {
            return Class::Polygon;
        }
        match self.best_split_pair() {
            Some((a, b)) => Class::Pair(a, b),
            None => Class::Rigid,
        }
    }

    /// The split pair whose best single-component split is most balanced,
    /// found by an articulation scan of the graph minus each vertex in
    /// turn; balanced splits keep the decomposition recursion shallow.
    /// Ties fall to the smaller vertex pair.
    fn best_split_pair(&self) -> Option<(VertexId, VertexId)> {
        let adj = self.adjacency();
        let vs: Vec<VertexId> = adj.keys().copied().collect();
        let n = vs.len();
        let pos: BTreeMap<VertexId, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut best: Option<(usize, (VertexId, VertexId))> = None;
        let offer = |best: &mut Option<(usize, (VertexId, VertexId))>, score, a: VertexId, b| {
            let pair = (a.min(b), a.max(b));
            let better = match *best {
                None => true,
                Some((s, p)) => score > s || (score == s && pair < p),
            };
            if better {
                *best = Some((score, pair));
            }
        };
        for &a in &vs {
            // Depth-first search of the graph minus `a`, carrying discovery
            // times, low links, and subtree sizes; a vertex that cuts off a
            // subtree forms a split pair with `a`.
            let root = *vs.iter().find(|&&v| v != a).expect("a split graph has two vertices");
            let mut disc = vec![0usize; n];
            let mut low = vec![0usize; n];
            let mut size = vec![1usize; n];
            let mut sep: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut timer = 1usize;
            let ri = pos[&root];
            disc[ri] = timer;
            low[ri] = timer;
            timer += 1;
            let mut root_children = 0usize;
            let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(root, a, 0)];
            while let Some(&mut (v, parent, ref mut ci)) = stack.last_mut() {
                let vi = pos[&v];
                let nbrs = &adj[&v];
                if *ci < nbrs.len() {
                    let w = nbrs[*ci];
                    *ci += 1;
                    if w == a || w == parent {
                        continue;
                    }
                    let wi = pos[&w];
                    if disc[wi] == 0 {
                        disc[wi] = timer;
                        low[wi] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else {
                        low[vi] = low[vi].min(disc[wi]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        let pi = pos[&p];
                        size[pi] += size[vi];
                        low[pi] = low[pi].min(low[vi]);
                        if low[vi] >= disc[pi] {
                            sep[pi].push(size[vi]);
                        }
                    }
                }
            }
            debug_assert_eq!(timer, n, "split graphs stay biconnected");
            let score_of = |comps: &[usize]| {
                comps.iter().map(|&c| c.min(n - 2 - c)).max().unwrap_or(0)
            };
            for &b in &vs {
                if b == a {
                    continue;
                }
                let bi = pos[&b];
                if b == root {
                    // every root child clears the low-link test, so sep at
                    // the root already lists each child subtree
                    if root_children >= 2 {
                        offer(&mut best, score_of(&sep[ri]), a, b);
                    }
                } else if !sep[bi].is_empty() {
                    let cut: usize = sep[bi].iter().sum();
                    let mut comps = sep[bi].clone();
                    let rest = n - 2 - cut;
                    if rest > 0 {
                        comps.push(rest);
                    }
                    offer(&mut best, score_of(&comps), a, b);
                }
            }
        }
        best.map(|(_, p)| p)
    }

    /// Connected vertex groups of the graph with `a` and `b` removed.
    fn split_components(&self, a: VertexId, b: VertexId) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if start == a || start == b || seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &adj[&v] {
                    if w != a && w != b && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Split off the full parallel class between `a` and `b` as a bond.
fn split_parallel(
    sg: SplitGraph,
    a: VertexId,
    b: VertexId,
    next_pair: &mut usize,
) -> (SplitGraph, SplitGraph) {
    let p = *next_pair;
    *next_pair += 1;
    let (class, rest): (Vec<_>, Vec<_>) = sg
        .edges
        .into_iter()
        .partition(|&(x, y, _)| (x.min(y), x.max(y)) == (a.min(b), a.max(b)));
    let mut bond = class;
    bond.push((a, b, Item::Virt(p)));
    let mut remain = rest;
    remain.push((a, b, Item::Virt(p)));
    (SplitGraph { edges: bond }, SplitGraph { edges: remain })
}

/// Split at a separation pair: one side is the component making the split
/// most balanced (ties to the one with the smallest vertex), the other
/// side keeps everything else.
fn split_pair(
    sg: SplitGraph,
    a: VertexId,
    b: VertexId,
    next_pair: &mut usize,
) -> (SplitGraph, SplitGraph) {
    let comps = sg.split_components(a, b);
    let total: usize = comps.iter().map(|c| c.len()).sum();
    let c1 = comps
        .iter()
        .max_by_key(|c| (c.len().min(total - c.len()), Reverse(*c.iter().next().unwrap())))
        .unwrap()
        .clone();
    let p = *next_pair;
    *next_pair += 1;
    let (side, rest): (Vec<_>, Vec<_>) = sg
        .edges
        .into_iter()
        .partition(|&(x, y, _)| c1.contains(&x) || c1.contains(&y));
    let mut side = side;
    side.push((a, b, Item::Virt(p)));
    let mut rest = rest;
    rest.push((a, b, Item::Virt(p)));
    (SplitGraph { edges: side }, SplitGraph { edges: rest })
}

/// Edges of a polygon in cycle order as (from, to, edge), starting at the
/// smallest vertex along its smaller-indexed incident edge.
fn cycle_order(sg: &SplitGraph) -> Vec<(VertexId, VertexId, Item)> {
    let start = *sg.vertices().iter().next().unwrap();
    let mut incident: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b, _)) in sg.edges.iter().enumerate() {
        incident.entry(a).or_default().push(i);
        incident.entry(b).or_default().push(i);
    }
    let mut out = Vec::new();
    let mut at = start;
    let mut last = usize::MAX;
    loop {
        let &i = incident[&at].iter().find(|&&i| i != last).unwrap();
        let (a, b, item) = sg.edges[i];
        let next = if a == at { b } else { a };
        out.push((at, next, item));
        if next == start {
            return out;
        }
        at = next;
        last = i;
    }
}

/// Replace a polygon of length ≥ 4 by a left-deep chain of triangles.
fn triangulate(sg: SplitGraph, next_pair: &mut usize) -> Vec<SplitGraph> {
    let cyc = cycle_order(&sg);
    let l = cyc.len();
    if l == 3 {
        return vec![sg];
    }
    let anchor = cyc[0].0;
    let mut out = Vec::new();
    let mut carried: Option<(usize, VertexId)> = None; // (pair id, far end)
    for i in 1..l - 1 {
        let (from, to, item) = cyc[i];
        let mut tri = Vec::new();
        match carried {
            None => tri.push((cyc[0].0, cyc[0].1, cyc[0].2)),
            Some((p, far)) => tri.push((anchor, far, Item::Virt(p))),
        }
        tri.push((from, to, item));
        if i == l - 2 {
            tri.push((cyc[l - 1].0, cyc[l - 1].1, cyc[l - 1].2));
        } else {
            let p = *next_pair;
            *next_pair += 1;
            tri.push((to, anchor, Item::Virt(p)));
            carried = Some((p, to));
        }
        out.push(SplitGraph { edges: tri });
    }
    out
}

/// Maximal chains of a biconnected non-cycle block, in a deterministic
/// scan order over branch vertices.
fn contract_chains(g: &Graph) -> Vec<Chain> {
    let mut chains = Vec::new();
    let mut used = vec![false; g.edge_count()];
    for x in 0..g.n() {
        if g.degree(x) < 3 {
            continue;
        }
        for &e0 in g.adj(x) {
            if used[e0] {
                continue;
            }
            let mut edges = vec![e0];
            let mut inner = Vec::new();
            used[e0] = true;
            let mut prev = e0;
            let mut cur = g.other_end(e0, x);
            while g.degree(cur) == 2 {
                inner.push(cur);
                let &e = g.adj(cur).iter().find(|&&e| e != prev).unwrap();
                used[e] = true;
                edges.push(e);
                prev = e;
                cur = g.other_end(e, cur);
            }
            debug_assert_ne!(cur, x, "a chain looping back would need a cutvertex");
            chains.push(Chain { edges, ends: (x, cur), inner });
        }
    }
    debug_assert!(used.iter().all(|&u| u));
    chains
}

impl SpqrTree {
    /// Decompose a biconnected block that is not a cycle.
    pub fn build(g: &Graph) -> Result<SpqrTree, DecompError> {
        if g.n() < 2
            || !g.is_connected()
            || g.blocks().len() != 1
            || (0..g.n()).any(|v| g.degree(v) < 2)
        {
            return Err(DecompError::NotBiconnected);
        }
        if (0..g.n()).all(|v| g.degree(v) == 2) {
            return Err(DecompError::IsCycle);
        }
        let chains = contract_chains(g);
        let contracted = SplitGraph {
            edges: chains
                .iter()
                .enumerate()
                .map(|(i, c)| (c.ends.0, c.ends.1, Item::Chain(i)))
                .collect(),
        };

        let mut next_pair = 0usize;
        let mut queue = VecDeque::from([contracted]);
        let mut pieces: Vec<(Class, SplitGraph)> = Vec::new();
        while let Some(sg) = queue.pop_front() {
            match sg.classify() {
                class @ (Class::Bond | Class::Polygon | Class::Rigid) => {
                    pieces.push((class, sg));
                }
                Class::Parallel(a, b) => {
                    let (x, y) = split_parallel(sg, a, b, &mut next_pair);
                    queue.push_back(x);
                    queue.push_back(y);
                }
                Class::Pair(a, b) => {
                    let (x, y) = split_pair(sg, a, b, &mut next_pair);
                    queue.push_back(x);
                    queue.push_back(y);
                }
            }
        }

        // Merge bonds with bonds and polygons with polygons across shared
        // virtual pairs; what remains is the canonical decomposition.
        // Merging two like pieces yields a piece of the same class, so the
        // groups can be found in one union-find pass over the virtual pairs.
        let mut lead: Vec<usize> = (0..pieces.len()).collect();
        fn find(lead: &mut Vec<usize>, i: usize) -> usize {
            if lead[i] != i {
                let r = find(lead, lead[i]);
                lead[i] = r;
            }
            lead[i]
        }
        let mut homes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, (_, sg)) in pieces.iter().enumerate() {
            for &(_, _, it) in &sg.edges {
                if let Item::Virt(p) = it {
                    homes.entry(p).or_default().push(i);
                }
            }
        }
        for h in homes.values() {
            debug_assert_eq!(h.len(), 2, "each virtual pair joins two pieces");
            let same = matches!(
                (pieces[h[0]].0, pieces[h[1]].0),
                (Class::Bond, Class::Bond) | (Class::Polygon, Class::Polygon)
            );
            if same {
                let (a, b) = (find(&mut lead, h[0]), find(&mut lead, h[1]));
                lead[a] = b;
            }
        }
        // A virtual pair stays only when its two homes end up in
        // different groups; pairs absorbed into one group disappear.
        let absorbed: BTreeSet<usize> = homes
            .iter()
            .filter(|(_, h)| find(&mut lead, h[0]) == find(&mut lead, h[1]))
            .map(|(&p, _)| p)
            .collect();
        let mut grouped: BTreeMap<usize, Vec<(VertexId, VertexId, Item)>> = BTreeMap::new();
        for i in 0..pieces.len() {
            let root = find(&mut lead, i);
            grouped.entry(root).or_default().extend(
                pieces[i]
                    .1
                    .edges
                    .iter()
                    .filter(|&&(_, _, it)| match it {
                        Item::Virt(p) => !absorbed.contains(&p),
                        Item::Chain(_) => true,
                    })
                    .copied(),
            );
        }
        let done: Vec<SplitGraph> = grouped
            .into_values()
            .map(|edges| SplitGraph { edges })
            .collect();

        let done: Vec<SplitGraph> = done
            .into_iter()
            .flat_map(|sg| match sg.classify() {
                Class::Polygon => triangulate(sg, &mut next_pair),
                _ => vec![sg],
            })
            .collect();

        // Materialize nodes: chains first, inner nodes after.
        let mut nodes: Vec<SpqrNode> = chains
            .iter()
            .map(|c| SpqrNode { kind: NodeKind::Qstar, chain: Some(c.clone()), skel: Vec::new() })
            .collect();
        let base = nodes.len();
        let mut pair_home: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
        for (i, sg) in done.iter().enumerate() {
            let kind = match sg.classify() {
                Class::Bond => NodeKind::P,
                Class::Polygon => NodeKind::S,
                Class::Rigid => NodeKind::R,
                _ => unreachable!("decomposition left a splittable piece"),
            };
            for &(_, _, it) in &sg.edges {
                if let Item::Virt(p) = it {
                    pair_home.entry(p).or_default().push(base + i);
                }
            }
            nodes.push(SpqrNode { kind, chain: None, skel: Vec::new() });
        }
        debug_assert!(pair_home.values().all(|h| h.len() == 2));
        for (i, sg) in done.iter().enumerate() {
            let skel = sg
                .edges
                .iter()
                .map(|&(a, b, it)| {
                    let to = match it {
                        Item::Chain(c) => c,
                        Item::Virt(p) => {
                            let h = &pair_home[&p];
                            if h[0] == base + i { h[1] } else { h[0] }
                        }
                    };
                    SkelEdge { ends: (a, b), to }
                })
                .collect();
            nodes[base + i].skel = skel;
        }

        let n = nodes.len();
        let t = SpqrTree {
            nodes,
            root: None,
            parent: vec![None; n],
            children: vec![Vec::new(); n],
            poles: vec![None; n],
            ref_local: vec![None; n],
            pertinent: vec![Vec::new(); n],
        };
        t.check_shape();
        Ok(t)
    }

    fn check_shape(&self) {
        for node in &self.nodes {
            match node.kind {
                NodeKind::Qstar => debug_assert!(node.chain.is_some()),
                NodeKind::P => {
                    debug_assert!(node.skel.len() >= 3);
                    debug_assert!(
                        !node.skel.iter().any(|e| self.nodes[e.to].kind == NodeKind::P),
                        "bonds never touch bonds"
                    );
                }
                NodeKind::S => debug_assert_eq!(node.skel.len(), 3),
                NodeKind::R => {
                    let vs: BTreeSet<VertexId> = node
                        .skel
                        .iter()
                        .flat_map(|e| [e.ends.0, e.ends.1])
                        .collect();
                    debug_assert!(vs.len() >= 4, "rigid skeletons span four vertices");
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn kind(&self, nu: NodeId) -> NodeKind {
        self.nodes[nu].kind
    }

    pub fn qstar_nodes(&self) -> Vec<NodeId> {
        (0..self.nodes.len())
            .filter(|&nu| self.nodes[nu].kind == NodeKind::Qstar)
            .collect()
    }

    pub fn chain(&self, nu: NodeId) -> Result<&Chain, DecompError> {
        self.nodes[nu].chain.as_ref().ok_or(DecompError::NotAQstarNode)
    }

    pub fn skeleton(&self, nu: NodeId) -> &[SkelEdge] {
        &self.nodes[nu].skel
    }

    pub fn is_rooted(&self) -> bool {
        self.root.is_some()
    }

    pub fn root(&self) -> NodeId {
        self.root.expect("tree is rooted")
    }

    pub fn root_child(&self) -> NodeId {
        self.children[self.root()][0]
    }

    pub fn parent(&self, nu: NodeId) -> Option<NodeId> {
        self.parent[nu]
    }

    pub fn children(&self, nu: NodeId) -> &[NodeId] {
        &self.children[nu]
    }

    /// Ordered poles of a node in the rooted tree.
    pub fn poles(&self, nu: NodeId) -> (VertexId, VertexId) {
        self.poles[nu].expect("tree is rooted")
    }

    /// Index of the reference edge within the node's skeleton.
    pub fn ref_local(&self, nu: NodeId) -> usize {
        self.ref_local[nu].expect("inner node of a rooted tree")
    }

    /// Block edges of the subtree below (and including) this node.
    pub fn pertinent_edges(&self, nu: NodeId) -> &[EdgeId] {
        &self.pertinent[nu]
    }

    /// Root the tree at a chain node; poles propagate top-down: the
    /// reference chain runs from its smaller end id, polygon children
    /// follow the skeleton path between the poles, bond children share
    /// their parent's pole order, and rigid children order each edge by
    /// vertex id.
    pub fn root_tree(&self, rho: NodeId) -> Result<SpqrTree, DecompError> {
        if self.nodes[rho].kind != NodeKind::Qstar {
            return Err(DecompError::NotAQstarNode);
        }
        let mut t = self.clone();
        let n = t.nodes.len();
        t.parent = vec![None; n];
        t.children = vec![Vec::new(); n];
        t.poles = vec![None; n];
        t.ref_local = vec![None; n];
        t.root = Some(rho);

        let nu0 = (0..n)
            .find(|&nu| t.nodes[nu].skel.iter().any(|e| e.to == rho))
            .expect("every chain edge lies in one skeleton");
        t.children[rho].push(nu0);
        t.parent[nu0] = Some(rho);
        let ends = t.nodes[rho].chain.as_ref().unwrap().ends;
        let (s, big) = (ends.0.min(ends.1), ends.0.max(ends.1));
        t.poles[rho] = Some((s, big));
        if t.nodes[rho].chain.as_ref().unwrap().ends.0 != s {
            t.nodes[rho].chain.as_mut().unwrap().reverse();
        }
        t.poles[nu0] = Some((s, big));
        t.ref_local[nu0] =
            Some(t.nodes[nu0].skel.iter().position(|e| e.to == rho).unwrap());

        let mut order = vec![rho, nu0];
        let mut queue = VecDeque::from([nu0]);
        while let Some(nu) = queue.pop_front() {
            let (u, v) = t.poles[nu].unwrap();
            let rl = t.ref_local[nu].unwrap();
            let skel = t.nodes[nu].skel.clone();
            let assigned: Vec<(usize, (VertexId, VertexId))> = match t.nodes[nu].kind {
                NodeKind::S => {
                    // Walk the polygon from u to v avoiding the reference edge.
                    let mut res = Vec::new();
                    let mut at = u;
                    let mut last = rl;
                    while at != v {
                        let (i, e) = skel
                            .iter()
                            .enumerate()
                            .find(|&(i, e)| i != last && (e.ends.0 == at || e.ends.1 == at))
                            .unwrap();
                        let next = if e.ends.0 == at { e.ends.1 } else { e.ends.0 };
                        res.push((i, (at, next)));
                        at = next;
                        last = i;
                    }
                    res
                }
                NodeKind::P => (0..skel.len())
                    .filter(|&i| i != rl)
                    .map(|i| (i, (u, v)))
                    .collect(),
                NodeKind::R => (0..skel.len())
                    .filter(|&i| i != rl)
                    .map(|i| {
                        let (a, b) = skel[i].ends;
                        (i, (a.min(b), a.max(b)))
                    })
                    .collect(),
                NodeKind::Qstar => unreachable!("leaves carry no skeleton"),
            };
            if t.nodes[nu].kind == NodeKind::P {
                debug_assert!(assigned.len() <= 3, "pole degree caps bond width");
            }
            for (i, (pa, pb)) in assigned {
                let mu = skel[i].to;
                t.parent[mu] = Some(nu);
                t.children[nu].push(mu);
                t.poles[mu] = Some((pa, pb));
                order.push(mu);
                if t.nodes[mu].kind == NodeKind::Qstar {
                    if t.nodes[mu].chain.as_ref().unwrap().ends.0 != pa {
                        t.nodes[mu].chain.as_mut().unwrap().reverse();
                    }
                    debug_assert_eq!(t.nodes[mu].chain.as_ref().unwrap().ends, (pa, pb));
                } else {
                    t.ref_local[mu] =
                        Some(t.nodes[mu].skel.iter().position(|e| e.to == nu).unwrap());
                    queue.push_back(mu);
                }
            }
        }

        t.pertinent = vec![Vec::new(); n];
        for &nu in order.iter().rev() {
            let mut acc: Vec<EdgeId> = if t.nodes[nu].kind == NodeKind::Qstar {
                t.nodes[nu].chain.as_ref().unwrap().edges.clone()
            } else {
                Vec::new()
            };
            if nu != rho {
                for &mu in &t.children[nu] {
                    acc.extend_from_slice(&t.pertinent[mu]);
                }
            }
            acc.sort_unstable();
            t.pertinent[nu] = acc;
        }
        Ok(t)
    }

    /// Candidate skeleton embeddings of an inner node: one for a polygon,
    /// the chosen embedding and its mirror for a rigid skeleton, and every
    /// ordering of the non-reference edges for a bond.
    pub fn skeleton_embeddings(&self, nu: NodeId) -> Vec<SkelEmbedding> {
        assert!(self.is_rooted());
        let skel = &self.nodes[nu].skel;
        let mut vids: Vec<VertexId> =
            skel.iter().flat_map(|e| [e.ends.0, e.ends.1]).collect();
        vids.sort_unstable();
        vids.dedup();
        let lv = |v: VertexId| vids.binary_search(&v).unwrap();
        let local_edges: Vec<(usize, usize)> =
            skel.iter().map(|e| (lv(e.ends.0), lv(e.ends.1))).collect();
        let graph = Graph::new(vids.len(), local_edges.clone()).unwrap();
        let to: Vec<NodeId> = skel.iter().map(|e| e.to).collect();
        let rl = self.ref_local(nu);
        let planes: Vec<PlaneGraph> = match self.nodes[nu].kind {
            NodeKind::S => {
                let rot = planar_embed(&graph).expect("polygons embed");
                vec![PlaneGraph::new(graph.clone(), rot, 0).unwrap()]
            }
            NodeKind::R => {
                let rot = planar_embed(&graph).expect("skeletons of planar graphs embed");
                let pg = PlaneGraph::new(graph.clone(), rot, 0).unwrap();
                let mirror = pg.mirrored();
                vec![pg, mirror]
            }
            NodeKind::P => {
                let (u, v) = self.poles(nu);
                let (lu, lw) = (lv(u), lv(v));
                let others: Vec<usize> = (0..skel.len()).filter(|&i| i != rl).collect();
                permutations(&others)
                    .into_iter()
                    .map(|perm| {
                        let dart_at = |a: usize, e: usize| {
                            if local_edges[e].0 == a {
                                2 * e
                            } else {
                                2 * e + 1
                            }
                        };
                        let mut rot = vec![Vec::new(); graph.n()];
                        rot[lu].push(dart_at(lu, rl));
                        rot[lw].push(dart_at(lw, rl));
                        for &e in &perm {
                            rot[lu].push(dart_at(lu, e));
                        }
                        for &e in perm.iter().rev() {
                            rot[lw].push(dart_at(lw, e));
                        }
                        PlaneGraph::new(graph.clone(), rot, 0).unwrap()
                    })
                    .collect()
            }
            NodeKind::Qstar => panic!("leaves have no skeleton embeddings"),
        };
        planes
            .into_iter()
            .map(|plane| SkelEmbedding {
                graph: graph.clone(),
                vmap: vids.clone(),
                to: to.clone(),
                ref_local: rl,
                plane,
            })
            .collect()
    }

    /// Indented debugging dump of the rooted tree.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(root) = self.root {
            self.dump_node(root, 0, &mut out);
        } else {
            for (i, n) in self.nodes.iter().enumerate() {
                out.push_str(&format!("{i}: {:?}\n", n.kind));
            }
        }
        out
    }

    fn dump_node(&self, nu: NodeId, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        let (a, b) = self.poles(nu);
        out.push_str(&format!("{indent}{nu}: {:?} poles ({a},{b})", self.nodes[nu].kind));
        if let Some(c) = &self.nodes[nu].chain {
            out.push_str(&format!(" chain {:?}", c.edges));
        }
        out.push('\n');
        for &mu in &self.children[nu] {
            self.dump_node(mu, depth + 1, out);
        }
    }
}

/// A concrete embedding choice for one skeleton: the skeleton as a local
/// graph, the map back to block vertex ids, the represented node per local
/// edge, and the rotation system.
#[derive(Debug, Clone)]
pub struct SkelEmbedding {
    pub graph: Graph,
    pub vmap: Vec<VertexId>,
    pub to: Vec<NodeId>,
    pub ref_local: usize,
    pub plane: PlaneGraph,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    fn theta() -> Graph {
        Graph::new(6, vec![(0, 2), (2, 3), (3, 1), (0, 1), (0, 4), (4, 5), (5, 1)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn prism() -> Graph {
        Graph::new(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    /// Triangle 0-1-2 where every side also has a parallel two-edge path.
    fn doubled_triangle() -> Graph {
        Graph::new(
            6,
            vec![
                (0, 1),
                (0, 3),
                (3, 1),
                (1, 2),
                (1, 4),
                (4, 2),
                (2, 0),
                (2, 5),
                (5, 0),
            ],
        )
        .unwrap()
    }

    /// Square 0-1-2-3 with sides 01 and 23 doubled by two-edge paths.
    fn doubled_square_sides() -> Graph {
        Graph::new(
            6,
            vec![(0, 1), (0, 4), (4, 1), (1, 2), (2, 3), (2, 5), (5, 3), (3, 0)],
        )
        .unwrap()
    }

    fn kind_counts(t: &SpqrTree) -> BTreeMap<NodeKind, usize> {
        let mut m = BTreeMap::new();
        for nu in 0..t.node_count() {
            *m.entry(t.kind(nu)).or_insert(0) += 1;
        }
        m
    }

    /// Structural sanity of a rooted tree over a block with `m` edges.
    fn check_rooted(t: &SpqrTree, m: usize) {
        let rho = t.root();
        let nu0 = t.root_child();
        assert_ne!(t.kind(nu0), NodeKind::Qstar);
        let mut all = t.pertinent_edges(nu0).to_vec();
        all.extend_from_slice(t.pertinent_edges(rho));
        all.sort_unstable();
        assert_eq!(all, (0..m).collect::<Vec<_>>());
        for nu in 0..t.node_count() {
            match t.kind(nu) {
                NodeKind::Qstar => {
                    if nu != rho {
                        assert!(t.children(nu).is_empty());
                    }
                    let c = t.chain(nu).unwrap();
                    assert_eq!(c.ends, t.poles(nu));
                    assert_eq!(c.edges.len(), c.inner.len() + 1);
                }
                NodeKind::S => {
                    assert_eq!(t.children(nu).len(), 2);
                    let (u, v) = t.poles(nu);
                    let (a, b) = (t.poles(t.children(nu)[0]), t.poles(t.children(nu)[1]));
                    assert_eq!(a.0, u);
                    assert_eq!(a.1, b.0);
                    assert_eq!(b.1, v);
                }
                NodeKind::P => {
                    let k = t.children(nu).len();
                    assert!((2..=3).contains(&k));
                    for &c in t.children(nu) {
                        assert_eq!(t.poles(c), t.poles(nu));
                    }
                }
                NodeKind::R => assert!(t.children(nu).len() >= 4),
            }
            if t.kind(nu) != NodeKind::Qstar {
                let mut union: Vec<EdgeId> = Vec::new();
                for &c in t.children(nu) {
                    union.extend_from_slice(t.pertinent_edges(c));
                }
                union.sort_unstable();
                assert_eq!(union, t.pertinent_edges(nu), "children partition the node");
            }
        }
    }

    #[test]
    fn bc_tree_of_two_triangles() {
        let bc = BcTree::build(&bowtie());
        assert_eq!(bc.blocks().len(), 2);
        assert_eq!(bc.cutvertices(), &[2]);
        assert_eq!(bc.blocks_containing(2), vec![0, 1]);
        assert!(!bc.is_cutvertex(0));
    }

    #[test]
    fn bc_tree_of_k4() {
        let bc = BcTree::build(&k4());
        assert_eq!(bc.blocks().len(), 1);
        assert!(bc.cutvertices().is_empty());
    }

    #[test]
    fn bc_tree_of_a_five_block_chain() {
        let g = Graph::new(
            9,
            vec![
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (3, 5),
                (5, 6),
                (6, 7),
                (7, 3),
                (7, 8),
            ],
        )
        .unwrap();
        let bc = BcTree::build(&g);
        assert_eq!(bc.blocks().len(), 5);
        assert_eq!(bc.cutvertices(), &[2, 3, 7]);
        assert_eq!(bc.blocks_containing(3).len(), 3);
        let contains = |e: EdgeId| (0..5).find(|&b| bc.blocks()[b].contains(&e)).unwrap();
        let root = contains(0);
        let order = bc.rooted_order(root);
        assert_eq!(order.len(), 5);
        assert_eq!(order[0], (root, None));
        let parent_of = |e: EdgeId| order.iter().find(|&&(b, _)| b == contains(e)).unwrap().1;
        assert_eq!(parent_of(3), Some(2));
        assert_eq!(parent_of(4), Some(3));
        assert_eq!(parent_of(5), Some(3));
        assert_eq!(parent_of(9), Some(7));
    }

    #[test]
    fn theta_is_one_bond_with_three_chains() {
        let t = SpqrTree::build(&theta()).unwrap();
        let counts = kind_counts(&t);
        assert_eq!(counts.get(&NodeKind::P), Some(&1));
        assert_eq!(counts.get(&NodeKind::Qstar), Some(&3));
        assert_eq!(t.node_count(), 4);
        for q in t.qstar_nodes() {
            let r = t.root_tree(q).unwrap();
            check_rooted(&r, 7);
            assert_eq!(r.kind(r.root_child()), NodeKind::P);
            assert_eq!(r.children(r.root_child()).len(), 2);
            assert_eq!(r.skeleton_embeddings(r.root_child()).len(), 2);
        }
    }

    #[test]
    fn k4_is_rigid_with_six_chains() {
        let t = SpqrTree::build(&k4()).unwrap();
        let counts = kind_counts(&t);
        assert_eq!(counts.get(&NodeKind::R), Some(&1));
        assert_eq!(counts.get(&NodeKind::Qstar), Some(&6));
        let r = t.root_tree(0).unwrap();
        check_rooted(&r, 6);
        let embs = r.skeleton_embeddings(r.root_child());
        assert_eq!(embs.len(), 2);
        assert_eq!(embs[0].graph.edge_count(), 6);
    }

    #[test]
    fn prism_is_rigid() {
        let t = SpqrTree::build(&prism()).unwrap();
        let counts = kind_counts(&t);
        assert_eq!(counts.get(&NodeKind::R), Some(&1));
        assert_eq!(counts.get(&NodeKind::Qstar), Some(&9));
        check_rooted(&t.root_tree(0).unwrap(), 9);
    }

    #[test]
    fn doubled_triangle_splits_into_bonds_around_a_polygon() {
        let g = doubled_triangle();
        let t = SpqrTree::build(&g).unwrap();
        let counts = kind_counts(&t);
        assert_eq!(counts.get(&NodeKind::S), Some(&1));
        assert_eq!(counts.get(&NodeKind::P), Some(&3));
        assert_eq!(counts.get(&NodeKind::Qstar), Some(&6));
        let s = (0..t.node_count()).find(|&n| t.kind(n) == NodeKind::S).unwrap();
        assert!(t.skeleton(s).iter().all(|e| t.kind(e.to) != NodeKind::Qstar));
        for q in t.qstar_nodes() {
            check_rooted(&t.root_tree(q).unwrap(), 9);
        }
    }

    #[test]
    fn long_polygons_become_triangle_chains() {
        let g = doubled_square_sides();
        let t = SpqrTree::build(&g).unwrap();
        let counts = kind_counts(&t);
        assert_eq!(counts.get(&NodeKind::S), Some(&2));
        assert_eq!(counts.get(&NodeKind::P), Some(&2));
        assert_eq!(counts.get(&NodeKind::Qstar), Some(&6));
        for q in t.qstar_nodes() {
            let r = t.root_tree(q).unwrap();
            check_rooted(&r, 8);
            for nu in 0..r.node_count() {
                if r.kind(nu) == NodeKind::S {
                    assert_eq!(r.skeleton_embeddings(nu).len(), 1);
                }
            }
        }
    }

    #[test]
    fn rerooting_preserves_the_node_set() {
        let t = SpqrTree::build(&doubled_square_sides()).unwrap();
        let qs = t.qstar_nodes();
        let base = kind_counts(&t.root_tree(qs[0]).unwrap());
        for &q in &qs[1..] {
            assert_eq!(kind_counts(&t.root_tree(q).unwrap()), base);
        }
    }

    #[test]
    fn build_rejects_cycles_bridges_and_cut_graphs() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        assert!(matches!(SpqrTree::build(&c6), Err(DecompError::IsCycle)));
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        assert!(matches!(SpqrTree::build(&k2), Err(DecompError::NotBiconnected)));
        assert!(matches!(SpqrTree::build(&bowtie()), Err(DecompError::NotBiconnected)));
        let t = SpqrTree::build(&k4()).unwrap();
        let r = (0..t.node_count()).find(|&n| t.kind(n) == NodeKind::R).unwrap();
        assert!(matches!(t.root_tree(r), Err(DecompError::NotAQstarNode)));
    }

    #[test]
    fn chains_are_maximal_and_oriented() {
        let t = SpqrTree::build(&theta()).unwrap().root_tree(0).unwrap();
        let rho = t.root();
        let c = t.chain(rho).unwrap();
        assert_eq!(c.ends.0, c.ends.0.min(c.ends.1));
        for q in t.qstar_nodes() {
            let c = t.chain(q).unwrap();
            assert_eq!(c.inner.len() + 1, c.edges.len());
        }
    }
}

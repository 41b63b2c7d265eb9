//! Undirected multigraphs of maximum degree 4.
//!
//! Vertices and edges are dense indices. Parallel edges are allowed (they are
//! distinct edge ids with the same endpoints); self-loops are rejected, as is
//! any vertex of degree 5 or more. Two textual formats are supported: a JSON
//! object `{"vertices": N, "edges": [[u, v], ...]}` and the undirected subset
//! of DOT (`graph { a -- b; b -- c -- d; }`, names mapped to ids in order of
//! first appearance).

use serde::Deserialize;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {vertex} has degree {degree}, maximum is 4")]
    Degree { vertex: VertexId, degree: usize },
}

/// Undirected multigraph with at most 4 edges at any vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::Parse(format!(
                    "edge {i} references vertex out of range (n = {n})"
                )));
            }
            if u == v {
                return Err(GraphError::Parse(format!("edge {i} is a self-loop at {u}")));
            }
            adj[u].push(i);
            adj[v].push(i);
        }
        for (v, inc) in adj.iter().enumerate() {
            if inc.len() > 4 {
                return Err(GraphError::Degree { vertex: v, degree: inc.len() });
            }
        }
        Ok(Graph { n, endpoints: edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints[e];
        if v == a { b } else { a }
    }

    pub fn adj(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Number of vertices of degree at most 2 (the parameter `k`).
    pub fn low_degree_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) <= 2).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &e in &self.adj[v] {
                    let w = self.other_end(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Biconnected components as edge sets (every edge in exactly one block),
    /// in DFS completion order with edges listed in discovery order.
    pub fn blocks(&self) -> Vec<Vec<EdgeId>> {
        let mut num = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut clock = 0usize;
        let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        // Iterative DFS: (vertex, parent edge, next adj index).
        for root in 0..self.n {
            if num[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            num[root] = clock;
            low[root] = clock;
            clock += 1;
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[v].len() {
                    let e = self.adj[v][*idx];
                    *idx += 1;
                    if Some(e) == pe {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if num[w] == usize::MAX {
                        edge_stack.push(e);
                        num[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, Some(e), 0));
                    } else if num[w] < num[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(num[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (u, _, _)) = stack.last_mut() {
                        low[u] = low[u].min(low[v]);
                        if low[v] >= num[u] {
                            // u separates: pop the block containing edge pe.
                            let mut block = Vec::new();
                            while let Some(&top) = edge_stack.last() {
                                block.push(top);
                                edge_stack.pop();
                                if Some(top) == pe {
                                    break;
                                }
                            }
                            block.reverse();
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks
    }

    /// Vertices whose removal disconnects their component: exactly those
    /// belonging to more than one block.
    pub fn cutvertices(&self) -> Vec<VertexId> {
        let mut count = vec![0usize; self.n];
        for block in self.blocks() {
            let mut verts: Vec<VertexId> = block
                .iter()
                .flat_map(|&e| {
                    let (a, b) = self.endpoints[e];
                    [a, b]
                })
                .collect();
            verts.sort_unstable();
            verts.dedup();
            for v in verts {
                count[v] += 1;
            }
        }
        (0..self.n).filter(|&v| count[v] > 1).collect()
    }

    /// Subgraph induced by an edge set, with dense renumbering.
    /// Returns the subgraph plus maps from new ids back to this graph's ids.
    pub fn edge_subgraph(&self, edges: &[EdgeId]) -> (Graph, SubMap) {
        let mut vmap: Vec<VertexId> = Vec::new();
        let mut vback = vec![usize::MAX; self.n];
        let local = |v: VertexId, vmap: &mut Vec<VertexId>, vback: &mut Vec<usize>| {
            if vback[v] == usize::MAX {
                vback[v] = vmap.len();
                vmap.push(v);
            }
            vback[v]
        };
        let mut new_edges = Vec::with_capacity(edges.len());
        for &e in edges {
            let (u, v) = self.endpoints[e];
            let lu = local(u, &mut vmap, &mut vback);
            let lv = local(v, &mut vmap, &mut vback);
            new_edges.push((lu, lv));
        }
        let g = Graph::new(vmap.len(), new_edges).expect("subgraph of a valid graph is valid");
        (g, SubMap { vmap, emap: edges.to_vec() })
    }

    pub fn parse(input: &str, format: Format) -> Result<Self, GraphError> {
        match format {
            Format::Json => Self::parse_json(input),
            Format::Dot => Self::parse_dot(input),
        }
    }

    pub fn parse_json(input: &str) -> Result<Self, GraphError> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: usize,
            edges: Vec<(usize, usize)>,
        }
        let raw: Raw =
            serde_json::from_str(input).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::new(raw.vertices, raw.edges)
    }

    /// Undirected DOT subset: `graph [name] { a -- b; b -- c -- d; }`.
    pub fn parse_dot(input: &str) -> Result<Self, GraphError> {
        let body = {
            let trimmed = input.trim();
            let open = trimmed
                .find('{')
                .ok_or_else(|| GraphError::Parse("dot: missing '{'".into()))?;
            let head = trimmed[..open].trim();
            let mut words = head.split_whitespace();
            match words.next() {
                Some("graph") => {}
                Some("digraph") => {
                    return Err(GraphError::Parse("dot: directed graphs are not supported".into()))
                }
                _ => return Err(GraphError::Parse("dot: expected 'graph'".into())),
            }
            if words.clone().count() > 1 {
                return Err(GraphError::Parse("dot: malformed header".into()));
            }
            let close = trimmed
                .rfind('}')
                .ok_or_else(|| GraphError::Parse("dot: missing '}'".into()))?;
            if close < open {
                return Err(GraphError::Parse("dot: malformed braces".into()));
            }
            &trimmed[open + 1..close]
        };
        let mut names: Vec<String> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let id_of = |name: &str, names: &mut Vec<String>| -> usize {
            match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            }
        };
        for stmt in body.split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let parts: Vec<&str> = stmt.split("--").map(str::trim).collect();
            if parts.len() == 1 {
                // Lone node statement.
                let name = parts[0];
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(GraphError::Parse(format!("dot: bad node name {name:?}")));
                }
                id_of(name, &mut names);
                continue;
            }
            for pair in parts.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                for name in [a, b] {
                    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(GraphError::Parse(format!("dot: bad node name {name:?}")));
                    }
                }
                let ia = id_of(a, &mut names);
                let ib = id_of(b, &mut names);
                edges.push((ia, ib));
            }
        }
        Graph::new(names.len(), edges)
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<Vec<usize>> = self.endpoints.iter().map(|&(u, v)| vec![u, v]).collect();
        serde_json::json!({ "vertices": self.n, "edges": edges }).to_string()
    }
}

/// Maps a subgraph's dense ids back to the parent graph.
#[derive(Debug, Clone)]
pub struct SubMap {
    /// `vmap[local_vertex] = parent_vertex`
    pub vmap: Vec<VertexId>,
    /// `emap[local_edge] = parent_edge`
    pub emap: Vec<EdgeId>,
}

impl SubMap {
    pub fn local_vertex(&self, parent: VertexId) -> Option<VertexId> {
        self.vmap.iter().position(|&v| v == parent)
    }
    pub fn local_edge(&self, parent: EdgeId) -> Option<EdgeId> {
        self.emap.iter().position(|&e| e == parent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    #[test]
    fn builds_c4_and_k4() {
        let c4 = cycle(4);
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.is_connected());
        assert_eq!(c4.low_degree_count(), 4);

        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.low_degree_count(), 0);
        assert_eq!(k4.degree(0), 3);
    }

    #[test]
    fn rejects_degree_five_and_self_loops() {
        let star5 = Graph::new(6, (1..=5).map(|i| (0, i)).collect::<Vec<_>>());
        assert!(matches!(star5, Err(GraphError::Degree { vertex: 0, degree: 5 })));
        let loopy = Graph::new(2, vec![(0, 0)]);
        assert!(matches!(loopy, Err(GraphError::Parse(_))));
    }

    #[test]
    fn parallel_edges_are_allowed() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.endpoints(0), g.endpoints(1));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let back = Graph::parse_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn dot_subset_parses_chains_and_rejects_digraph() {
        let g = Graph::parse_dot("graph { a -- b; b -- c -- a }").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(Graph::parse_dot("digraph { a -- b }").is_err());
        let named = Graph::parse_dot("graph tri { x -- y\n y -- z; }").unwrap();
        assert_eq!(named.n(), 3);
        assert_eq!(named.edge_count(), 2);
    }

    #[test]
    fn components_and_subgraph() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4]]);
        let (sub, map) = g.edge_subgraph(&[2]);
        assert_eq!(sub.n(), 2);
        assert_eq!(map.vmap, vec![3, 4]);
        assert_eq!(map.emap, vec![2]);
    }

    #[test]
    fn blocks_of_a_bowtie() {
        // Two triangles sharing vertex 2.
        let g = Graph::new(
            5,
            vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
        )
        .unwrap();
        let mut blocks: Vec<Vec<EdgeId>> = g.blocks();
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(g.cutvertices(), vec![2]);
    }

    #[test]
    fn blocks_of_paths_and_cycles() {
        let p = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.blocks().len(), 3);
        assert_eq!(p.cutvertices(), vec![1, 2]);
        let c = cycle(5);
        assert_eq!(c.blocks().len(), 1);
        assert!(c.cutvertices().is_empty());
        // Triangle with a pendant edge.
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (1, 3)]).unwrap();
        let mut blocks = g.blocks();
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(g.cutvertices(), vec![1]);
    }
}

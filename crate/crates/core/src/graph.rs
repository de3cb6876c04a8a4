//! Signed multigraph substrate.
//!
//! Vertices and edges are dense integer ids. Loops and parallel edges are
//! ordinary edges; a loop contributes 2 to the degree of its vertex, so a
//! bouquet of loops is an even graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edgeset::{EdgeId, EdgeSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    /// Product in the group {+1, -1}.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `w`. For a loop this is `w` itself.
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// An undirected multigraph with an edge-sign map. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedGraph {
    names: Vec<String>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

/// Edge-induced or vertex-deleted subgraph together with the id maps back
/// into the host graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: SignedGraph,
    /// `edge_map[e]` is the host id of subgraph edge `e`.
    pub edge_map: Vec<EdgeId>,
    /// `vertex_map[v]` is the host id of subgraph vertex `v`.
    pub vertex_map: Vec<VertexId>,
}

impl Subgraph {
    pub fn host_edges(&self, set: &EdgeSet) -> EdgeSet {
        set.iter().map(|e| self.edge_map[e.index()]).collect()
    }

    pub fn host_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }
}

/// Edge partition by connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// One non-empty edge set per component that has edges, ordered by least edge id.
    pub parts: Vec<EdgeSet>,
    pub isolated: Vec<VertexId>,
}

impl Components {
    pub fn connected_up_to_isolated(&self) -> bool {
        self.parts.len() == 1
    }
}

impl SignedGraph {
    /// Builds a graph on vertices `0..vertex_count` with default names.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Sign)>,
    {
        let names = (0..vertex_count).map(|i| i.to_string()).collect();
        Self::with_names(names, edges)
    }

    pub fn with_names<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Sign)>,
    {
        let n = names.len();
        let mut incidence = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (i, (u, v, sign)) in edges.into_iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!(
                    "edge {i} has endpoint outside 0..{n}"
                )));
            }
            let id = EdgeId(i as u32);
            incidence[u as usize].push(id);
            if u != v {
                incidence[v as usize].push(id);
            }
            list.push(Edge {
                u: VertexId(u),
                v: VertexId(v),
                sign,
            });
        }
        Ok(SignedGraph {
            names,
            edges: list,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    #[inline]
    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e.index()].sign
    }

    #[inline]
    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.edges[e.index()].is_loop()
    }

    /// Edges incident with `v`; a loop is listed once.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.index()]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.names.len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// The signature: all edges labelled -1.
    pub fn negative_edges(&self) -> EdgeSet {
        self.edge_ids().filter(|&e| self.sign(e).is_negative()).collect()
    }

    pub fn negative_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// Same graph with every sign replaced by `f(edge id, old sign)`.
    pub fn map_signs(&self, mut f: impl FnMut(EdgeId, Sign) -> Sign) -> SignedGraph {
        let mut g = self.clone();
        for (i, e) in g.edges.iter_mut().enumerate() {
            e.sign = f(EdgeId(i as u32), e.sign);
        }
        g
    }

    /// Same graph with signature `negative`.
    pub fn with_signature(&self, negative: &EdgeSet) -> SignedGraph {
        self.map_signs(|e, _| {
            if negative.contains(e) {
                Sign::Negative
            } else {
                Sign::Positive
            }
        })
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if !self.contains_vertex(v) {
            return Err(Error::invalid(format!("unknown vertex {v}")));
        }
        Ok(self.degree_of(v))
    }

    pub(crate) fn degree_of(&self, v: VertexId) -> usize {
        self.incidence[v.index()]
            .iter()
            .map(|&e| if self.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree_of(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree_of(v)).min().unwrap_or(0)
    }

    /// Degree of `v` in the subgraph formed by `set`.
    pub fn degree_in(&self, v: VertexId, set: &EdgeSet) -> usize {
        self.incidence[v.index()]
            .iter()
            .filter(|&&e| set.contains(e))
            .map(|&e| if self.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    pub fn loops(&self) -> EdgeSet {
        self.edge_ids().filter(|&e| self.is_loop(e)).collect()
    }

    /// Distinct vertices touched by `set`, ascending.
    pub fn vertices_of(&self, set: &EdgeSet) -> Vec<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        for e in set.iter() {
            let ed = self.edge(e);
            seen[ed.u.index()] = true;
            seen[ed.v.index()] = true;
        }
        self.vertices().filter(|v| seen[v.index()]).collect()
    }

    pub fn is_even(&self) -> bool {
        self.vertices().all(|v| self.degree_of(v).is_multiple_of(2))
    }

    /// All vertices lie in one component. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let label = self.component_labels(None);
        label.iter().all(|&c| c == 0)
    }

    /// Connected, every degree even, and at least one edge.
    pub fn is_eulerian(&self) -> bool {
        self.edge_count() > 0 && self.is_connected() && self.is_even()
    }

    /// Vertex component labels (0-based, numbered in order of least vertex).
    /// With `within`, only edges of that set are traversed.
    pub(crate) fn component_labels(&self, within: Option<&EdgeSet>) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(VertexId(s as u32));
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v.index()] {
                    if within.is_some_and(|w| !w.contains(e)) {
                        continue;
                    }
                    let w = self.edge(e).other(v);
                    if label[w.index()] == usize::MAX {
                        label[w.index()] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn components(&self) -> Components {
        self.components_of(&self.all_edges())
    }

    /// Component structure of the spanning subgraph with edge set `set`.
    pub fn components_of(&self, set: &EdgeSet) -> Components {
        let label = self.component_labels(Some(set));
        let count = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = vec![EdgeSet::new(); count];
        for e in set.iter() {
            parts[label[self.edge(e).u.index()]].insert(e);
        }
        let isolated = self
            .vertices()
            .filter(|&v| self.degree_in(v, set) == 0)
            .collect();
        let mut parts: Vec<EdgeSet> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort();
        Components { parts, isolated }
    }

    /// Spanning subgraph: all vertices kept, only edges of `set`.
    pub fn spanning_subgraph(&self, set: &EdgeSet) -> Subgraph {
        let edge_map: Vec<EdgeId> = set.iter().collect();
        let graph = SignedGraph::with_names(
            self.names.clone(),
            edge_map.iter().map(|&e| {
                let ed = self.edge(e);
                (ed.u.0, ed.v.0, ed.sign)
            }),
        )
        .expect("subgraph endpoints are host vertices");
        Subgraph {
            graph,
            edge_map,
            vertex_map: self.vertices().collect(),
        }
    }

    /// Edge-induced subgraph: only the edges of `set` and the vertices they touch.
    pub fn edge_subgraph(&self, set: &EdgeSet) -> Subgraph {
        let vertex_map = self.vertices_of(set);
        let mut local = vec![u32::MAX; self.vertex_count()];
        for (i, v) in vertex_map.iter().enumerate() {
            local[v.index()] = i as u32;
        }
        let edge_map: Vec<EdgeId> = set.iter().collect();
        let graph = SignedGraph::with_names(
            vertex_map.iter().map(|&v| self.names[v.index()].clone()).collect(),
            edge_map.iter().map(|&e| {
                let ed = self.edge(e);
                (local[ed.u.index()], local[ed.v.index()], ed.sign)
            }),
        )
        .expect("subgraph endpoints are mapped");
        Subgraph {
            graph,
            edge_map,
            vertex_map,
        }
    }

    /// `G - X`: delete the vertices in `removed` and every incident edge.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Subgraph {
        let mut gone = vec![false; self.vertex_count()];
        for v in removed {
            gone[v.index()] = true;
        }
        let vertex_map: Vec<VertexId> = self.vertices().filter(|v| !gone[v.index()]).collect();
        let mut local = vec![u32::MAX; self.vertex_count()];
        for (i, v) in vertex_map.iter().enumerate() {
            local[v.index()] = i as u32;
        }
        let edge_map: Vec<EdgeId> = self
            .edge_ids()
            .filter(|&e| {
                let ed = self.edge(e);
                !gone[ed.u.index()] && !gone[ed.v.index()]
            })
            .collect();
        let graph = SignedGraph::with_names(
            vertex_map.iter().map(|&v| self.names[v.index()].clone()).collect(),
            edge_map.iter().map(|&e| {
                let ed = self.edge(e);
                (local[ed.u.index()], local[ed.v.index()], ed.sign)
            }),
        )
        .expect("remaining endpoints are mapped");
        Subgraph {
            graph,
            edge_map,
            vertex_map,
        }
    }

    /// Cut edges. Loops are never bridges; parallel edges never are either.
    pub fn bridges(&self) -> EdgeSet {
        self.lowlink().bridges
    }

    pub fn cut_vertices(&self) -> Vec<VertexId> {
        self.lowlink().cut_vertices
    }

    /// Connected and without bridges.
    pub fn is_two_edge_connected(&self) -> bool {
        self.is_connected() && self.bridges().is_empty()
    }

    /// 2-vertex-connectivity, ignoring loops.
    ///
    /// A single vertex is not 2-connected. On two vertices the graph must
    /// have at least two parallel edges joining them; from three vertices on
    /// it must be connected without cut vertices.
    pub fn is_two_connected(&self) -> bool {
        match self.vertex_count() {
            0 | 1 => false,
            2 => self.edges.iter().filter(|e| !e.is_loop()).count() >= 2,
            _ => self.is_connected() && self.cut_vertices().is_empty(),
        }
    }

    fn lowlink(&self) -> LowLink {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut bridges = EdgeSet::new();
        let mut time = 0;
        // iterative DFS: (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(usize, Option<EdgeId>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, None, 0));
            while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
                if *next < self.incidence[v].len() {
                    let e = self.incidence[v][*next];
                    *next += 1;
                    if Some(e) == parent_edge || self.is_loop(e) {
                        continue;
                    }
                    let w = self.edge(e).other(VertexId(v as u32)).index();
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.insert(parent_edge.expect("non-root has a parent edge"));
                        }
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        LowLink {
            bridges,
            cut_vertices: (0..n)
                .filter(|&v| is_cut[v])
                .map(|v| VertexId(v as u32))
                .collect(),
        }
    }
}

struct LowLink {
    bridges: EdgeSet,
    cut_vertices: Vec<VertexId>,
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedGraph(n={}; ", self.vertex_count())?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}-{}", e.sign.symbol(), e.u, e.v)?;
        }
        write!(f, ")")
    }
}

//! Circuit decompositions of even graphs and the intersection graph they
//! determine.
//!
//! A decomposition is optimal when it has as many unbalanced circuits as
//! possible and, subject to that, as many circuits as possible.

use std::collections::VecDeque;

use crate::circuits::{enumerate_circuits, is_circuit, is_flow_admissible, Circuit};
use crate::edgeset::{EdgeId, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::{SignedGraph, VertexId};

/// Graphs with more edges are not decomposed exhaustively.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 14;

/// Graphs with more edges are not split exhaustively by [`cover_decompose`].
pub const BIPARTITION_EDGE_LIMIT: usize = 24;

/// Edge-disjoint circuits whose union is the whole edge set. Circuits are
/// kept sorted by their edge id lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitDecomposition {
    circuits: Vec<Circuit>,
}

impl CircuitDecomposition {
    pub fn new(mut circuits: Vec<Circuit>) -> Self {
        circuits.sort_by_cached_key(Circuit::edge_set);
        CircuitDecomposition { circuits }
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn unbalanced_count(&self, g: &SignedGraph) -> usize {
        self.circuits.iter().filter(|c| !c.is_balanced(g)).count()
    }

    /// `(unbalanced circuits, circuits)`, compared lexicographically.
    pub fn score(&self, g: &SignedGraph) -> (usize, usize) {
        (self.unbalanced_count(g), self.len())
    }

    /// Circuits are pairwise edge-disjoint, each is a circuit of `g`, and
    /// together they use every edge.
    pub fn is_valid_for(&self, g: &SignedGraph) -> bool {
        let mut used = EdgeSet::new();
        for c in &self.circuits {
            let set = c.edge_set();
            if !is_circuit(g, &set) || !used.is_disjoint(&set) {
                return false;
            }
            used = used.union(&set);
        }
        used == g.all_edges()
    }

    fn sort_key(&self) -> Vec<EdgeSet> {
        self.circuits.iter().map(Circuit::edge_set).collect()
    }
}

fn require_even(g: &SignedGraph) -> Result<()> {
    match g.vertices().find(|&v| g.degree_of(v) % 2 == 1) {
        Some(v) => Err(Error::invalid(format!("vertex {v} has odd degree"))),
        None => Ok(()),
    }
}

/// Some decomposition, found by walking trails and splitting them into
/// circuits whenever the walk revisits a vertex.
pub fn one_decomposition(g: &SignedGraph) -> Result<CircuitDecomposition> {
    require_even(g)?;
    decompose_walks(g, &g.all_edges())
}

/// Decomposes the even spanning subgraph `within`.
fn decompose_walks(g: &SignedGraph, within: &EdgeSet) -> Result<CircuitDecomposition> {
    let n = g.vertex_count();
    let mut used = g.all_edges().difference(within);
    let mut pos: Vec<Option<usize>> = vec![None; n];
    let mut circuits = Vec::new();
    for start in g.vertices() {
        let mut stack: Vec<VertexId> = vec![start];
        let mut trail: Vec<EdgeId> = Vec::new();
        pos[start.index()] = Some(0);
        loop {
            let at = *stack.last().expect("non-empty");
            let Some(e) = g.incident(at).iter().copied().find(|&e| !used.contains(e)) else {
                if stack.len() > 1 {
                    return Err(Error::invalid("subgraph is not even"));
                }
                break;
            };
            used.insert(e);
            if g.is_loop(e) {
                circuits.push(Circuit::from_parts(vec![e], vec![at]));
                continue;
            }
            let w = g.edge(e).other(at);
            match pos[w.index()] {
                Some(p) => {
                    let mut edges = trail.split_off(p);
                    edges.push(e);
                    let vertices = stack.split_off(p + 1);
                    let mut vs = vec![w];
                    vs.extend(vertices.iter().copied());
                    for v in &vertices {
                        pos[v.index()] = None;
                    }
                    circuits.push(Circuit::from_parts(edges, vs));
                }
                None => {
                    pos[w.index()] = Some(stack.len());
                    stack.push(w);
                    trail.push(e);
                }
            }
        }
        pos[start.index()] = None;
    }
    Ok(CircuitDecomposition::new(circuits))
}

/// Calls `visit` once for every decomposition of `g`, peeling each time a
/// circuit through the least uncovered edge.
fn for_each_decomposition(
    g: &SignedGraph,
    mut visit: impl FnMut(&[&Circuit]),
) -> Result<()> {
    require_even(g)?;
    if g.edge_count() > EXHAUSTIVE_EDGE_LIMIT {
        return Err(Error::limit(format!(
            "{} edges exceed the exhaustive decomposition limit {}",
            g.edge_count(),
            EXHAUSTIVE_EDGE_LIMIT
        )));
    }
    let all = enumerate_circuits(g);
    let sets: Vec<EdgeSet> = all.iter().map(Circuit::edge_set).collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (i, s) in sets.iter().enumerate() {
        for e in s.iter() {
            through[e.index()].push(i);
        }
    }
    fn go<'a>(
        remaining: &EdgeSet,
        all: &'a [Circuit],
        sets: &[EdgeSet],
        through: &[Vec<usize>],
        chosen: &mut Vec<&'a Circuit>,
        visit: &mut dyn FnMut(&[&Circuit]),
    ) {
        let Some(e) = remaining.first() else {
            visit(chosen);
            return;
        };
        for &i in &through[e.index()] {
            if sets[i].is_subset(remaining) {
                chosen.push(&all[i]);
                go(&remaining.difference(&sets[i]), all, sets, through, chosen, visit);
                chosen.pop();
            }
        }
    }
    go(&g.all_edges(), &all, &sets, &through, &mut Vec::new(), &mut visit);
    Ok(())
}

/// Every decomposition exactly once.
pub fn all_decompositions(g: &SignedGraph) -> Result<Vec<CircuitDecomposition>> {
    let mut out = Vec::new();
    for_each_decomposition(g, |cs| {
        out.push(CircuitDecomposition::new(cs.iter().map(|&c| c.clone()).collect()))
    })?;
    out.sort_by_cached_key(CircuitDecomposition::sort_key);
    Ok(out)
}

/// Every decomposition with the maximum `(unbalanced, size)` score.
pub fn optimal_decompositions(g: &SignedGraph) -> Result<Vec<CircuitDecomposition>> {
    let mut best: Option<(usize, usize)> = None;
    let mut out: Vec<CircuitDecomposition> = Vec::new();
    for_each_decomposition(g, |cs| {
        let score = (cs.iter().filter(|c| !c.is_balanced(g)).count(), cs.len());
        if best.is_some_and(|b| score < b) {
            return;
        }
        if best != Some(score) {
            best = Some(score);
            out.clear();
        }
        out.push(CircuitDecomposition::new(cs.iter().map(|&c| c.clone()).collect()));
    })?;
    out.sort_by_cached_key(CircuitDecomposition::sort_key);
    Ok(out)
}

/// The optimal decomposition with the least sorted edge lists.
pub fn optimal_decomposition(g: &SignedGraph) -> Result<CircuitDecomposition> {
    Ok(optimal_decompositions(g)?
        .into_iter()
        .next()
        .unwrap_or_else(|| CircuitDecomposition::new(Vec::new())))
}

/// Uncertified heuristic for graphs beyond the exhaustive limit: repeatedly
/// peel the smallest unbalanced circuit, then the smallest balanced one.
pub fn greedy_decomposition(g: &SignedGraph) -> Result<CircuitDecomposition> {
    require_even(g)?;
    let all = enumerate_circuits(g);
    let mut remaining = g.all_edges();
    let mut chosen = Vec::new();
    while !remaining.is_empty() {
        let fits = |c: &&Circuit| c.edge_set().is_subset(&remaining);
        let pick = all
            .iter()
            .filter(fits)
            .find(|c| !c.is_balanced(g))
            .or_else(|| all.iter().find(fits))
            .expect("a non-empty even graph contains a circuit");
        remaining = remaining.difference(&pick.edge_set());
        chosen.push(pick.clone());
    }
    Ok(CircuitDecomposition::new(chosen))
}

/// The graph on decomposition members where two members are adjacent when
/// their circuits share a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    balanced: Vec<bool>,
    shared: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    pub fn len(&self) -> usize {
        self.balanced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balanced.is_empty()
    }

    pub fn is_balanced(&self, i: usize) -> bool {
        self.balanced[i]
    }

    /// `|V(C_i) ∩ V(C_j)|`.
    pub fn shared(&self, i: usize, j: usize) -> usize {
        self.shared[i][j]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.shared[i][j] > 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adjacent(i, j))
    }

    /// Adjacent pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.bfs_tree(0).iter().all(Option::is_some)
    }

    /// BFS parent pointers from `root`; `Some(root)` for the root itself.
    fn bfs_tree(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.len()];
        parent[root] = Some(root);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for j in self.neighbors(i) {
                if parent[j].is_none() {
                    parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        parent
    }
}

pub fn intersection_graph(g: &SignedGraph, d: &CircuitDecomposition) -> IntersectionGraph {
    let cs = d.circuits();
    let balanced = cs.iter().map(|c| c.is_balanced(g)).collect();
    let shared = cs
        .iter()
        .map(|a| cs.iter().map(|b| a.shared_vertices(b)).collect())
        .collect();
    IntersectionGraph { balanced, shared }
}

/// For an Eulerian `g` with maximum degree at least 4 and a circuit `c`,
/// a circuit edge-disjoint from `c` whose removal leaves `g` connected up
/// to isolated vertices. It is a leaf other than `c` of a BFS spanning tree
/// of the intersection graph of a decomposition containing `c`.
pub fn nonseparating_disjoint_circuit(g: &SignedGraph, c: &Circuit) -> Result<Circuit> {
    if !g.is_eulerian() {
        return Err(Error::invalid("graph is not Eulerian"));
    }
    if g.max_degree() < 4 {
        return Err(Error::invalid("maximum degree is below 4"));
    }
    let cset = c.edge_set();
    if !is_circuit(g, &cset) {
        return Err(Error::invalid(format!("{cset:?} is not a circuit")));
    }
    let rest = decompose_walks(g, &g.all_edges().difference(&cset))?;
    let mut members = rest.circuits().to_vec();
    members.push(c.clone());
    let d = CircuitDecomposition::new(members);
    let root = d
        .circuits()
        .iter()
        .position(|x| x.edge_set() == cset)
        .expect("c is a member");
    let h = intersection_graph(g, &d);
    let parent = h.bfs_tree(root);
    let mut tree_degree = vec![0usize; h.len()];
    for (i, p) in parent.iter().enumerate() {
        let p = p.expect("H is connected for a connected graph");
        if p != i {
            tree_degree[i] += 1;
            tree_degree[p] += 1;
        }
    }
    let leaf = (0..h.len())
        .find(|&i| i != root && tree_degree[i] == 1)
        .expect("a tree on two or more vertices has two leaves");
    Ok(d.circuits()[leaf].clone())
}

/// For a 2-connected `g` on at least three vertices and a vertex `v`, an
/// edge `e` not incident with `v` such that `g - V(e)` is connected. The
/// edge is taken from a longest circuit through `v`.
pub fn removable_edge(g: &SignedGraph, v: VertexId) -> Result<EdgeId> {
    if !g.contains_vertex(v) {
        return Err(Error::invalid(format!("unknown vertex {v}")));
    }
    if g.vertex_count() < 3 || !g.is_two_connected() {
        return Err(Error::invalid("graph must be 2-connected with at least 3 vertices"));
    }
    let longest = enumerate_circuits(g)
        .into_iter()
        .filter(|c| c.contains_vertex(v))
        .fold(None::<Circuit>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .expect("a 2-connected graph has a circuit through every vertex");
    longest
        .edges()
        .iter()
        .copied()
        .filter(|&e| {
            let ed = g.edge(e);
            ed.u != v && ed.v != v
        })
        .find(|&e| {
            let ed = g.edge(e);
            g.delete_vertices(&[ed.u, ed.v]).graph.is_connected()
        })
        .ok_or_else(|| {
            Error::invalid(format!(
                "no edge of a longest circuit through {v} leaves a connected remainder"
            ))
        })
}

/// Splits an Eulerian `g` into two non-empty edge-disjoint parts that are
/// each Eulerian and flow-admissible, if possible. The part containing edge
/// 0 is returned first; candidates are tried in increasing bitmask order.
pub fn cover_decompose(g: &SignedGraph) -> Result<Option<(EdgeSet, EdgeSet)>> {
    require_even(g)?;
    let m = g.edge_count();
    if m > BIPARTITION_EDGE_LIMIT {
        return Err(Error::limit(format!(
            "{m} edges exceed the bipartition limit {BIPARTITION_EDGE_LIMIT}"
        )));
    }
    if m < 2 {
        return Ok(None);
    }
    // per-edge vertex parity masks for a quick evenness filter
    let n = g.vertex_count();
    let words = n.div_ceil(64);
    let parity: Vec<Vec<u64>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut w = vec![0u64; words];
            if !e.is_loop() {
                w[e.u.index() / 64] ^= 1 << (e.u.index() % 64);
                w[e.v.index() / 64] ^= 1 << (e.v.index() % 64);
            }
            w
        })
        .collect();
    let full = g.all_edges();
    for mask in 0u32..(1u32 << (m - 1)) - 1 {
        let mut acc = parity[0].clone();
        for (i, row) in parity.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                for (a, b) in acc.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        if acc.iter().any(|&w| w != 0) {
            continue;
        }
        let part: EdgeSet = std::iter::once(EdgeId(0))
            .chain((1..m).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| EdgeId(i as u32)))
            .collect();
        let other = full.difference(&part);
        if is_flow_admissible_eulerian_part(g, &part) && is_flow_admissible_eulerian_part(g, &other) {
            return Ok(Some((part, other)));
        }
    }
    Ok(None)
}

/// The edge-induced subgraph on `part` is Eulerian and flow-admissible.
pub fn is_flow_admissible_eulerian_part(g: &SignedGraph, part: &EdgeSet) -> bool {
    let sub = g.edge_subgraph(part);
    sub.graph.is_eulerian() && is_flow_admissible(&sub.graph)
}

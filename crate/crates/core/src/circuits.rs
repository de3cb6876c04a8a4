//! Circuits, barbells and signed circuits.
//!
//! The signed circuits (balanced circuits and barbells) are the circuits of
//! the signed-graphic matroid; an edge in none of them is a coloop.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::edgeset::{EdgeId, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::{SignedGraph, VertexId};
use crate::signing::parity_even;

/// A connected 2-regular subgraph, stored in traversal order:
/// edge `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Circuit {
    /// Builds a circuit from an edge set of `g`, or fails if the set is not a circuit.
    pub fn from_edge_set(g: &SignedGraph, set: &EdgeSet) -> Result<Circuit> {
        if !is_circuit(g, set) {
            return Err(Error::invalid(format!("{set:?} is not a circuit")));
        }
        let first = set.first().expect("non-empty");
        let start = g.edge(first).u;
        let mut edges = vec![first];
        let mut vertices = vec![start];
        let mut at = g.edge(first).other(start);
        let mut prev = first;
        while at != start {
            vertices.push(at);
            let next = g
                .incident(at)
                .iter()
                .copied()
                .find(|&e| e != prev && set.contains(e))
                .expect("2-regular");
            edges.push(next);
            at = g.edge(next).other(at);
            prev = next;
        }
        Ok(Circuit { edges, vertices })
    }

    pub(crate) fn from_parts(edges: Vec<EdgeId>, vertices: Vec<VertexId>) -> Circuit {
        debug_assert_eq!(edges.len(), vertices.len());
        Circuit { edges, vertices }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_balanced(&self, g: &SignedGraph) -> bool {
        parity_even(g, &self.edge_set())
    }

    pub fn shared_vertices(&self, other: &Circuit) -> usize {
        self.vertices
            .iter()
            .filter(|v| other.vertices.contains(v))
            .count()
    }
}

/// Two unbalanced circuits that share exactly one vertex (empty path), or
/// are vertex-disjoint and joined by a path meeting them only at its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barbell {
    pub first: Circuit,
    pub second: Circuit,
    pub path: Vec<EdgeId>,
}

impl Barbell {
    pub fn edge_set(&self) -> EdgeSet {
        self.first
            .edges()
            .iter()
            .chain(self.second.edges())
            .chain(&self.path)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedCircuit {
    Balanced(Circuit),
    Barbell(Barbell),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignedCircuitKind {
    Circuit,
    Barbell,
}

impl SignedCircuit {
    pub fn edge_set(&self) -> EdgeSet {
        match self {
            SignedCircuit::Balanced(c) => c.edge_set(),
            SignedCircuit::Barbell(b) => b.edge_set(),
        }
    }

    pub fn kind(&self) -> SignedCircuitKind {
        match self {
            SignedCircuit::Balanced(_) => SignedCircuitKind::Circuit,
            SignedCircuit::Barbell(_) => SignedCircuitKind::Barbell,
        }
    }
}

/// Non-empty, connected, and every touched vertex has degree 2 in `set`.
pub fn is_circuit(g: &SignedGraph, set: &EdgeSet) -> bool {
    if set.is_empty() || set.iter().any(|e| e.index() >= g.edge_count()) {
        return false;
    }
    let verts = g.vertices_of(set);
    verts.iter().all(|&v| g.degree_in(v, set) == 2)
        && g.components_of(set).parts.len() == 1
}

/// Decides structurally whether `set` is a signed circuit of `g`, without
/// consulting any enumeration.
pub fn classify_signed_circuit(g: &SignedGraph, set: &EdgeSet) -> Option<SignedCircuitKind> {
    if set.is_empty() || set.iter().any(|e| e.index() >= g.edge_count()) {
        return None;
    }
    if is_circuit(g, set) {
        return parity_even(g, set).then_some(SignedCircuitKind::Circuit);
    }
    let sub = g.edge_subgraph(set);
    let h = &sub.graph;
    if !h.is_connected() || h.edge_count() != h.vertex_count() + 1 {
        return None;
    }
    let degrees: Vec<usize> = h.vertices().map(|v| h.degree_of(v)).collect();
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    let lobes: Vec<EdgeSet> = if count(4) == 1 && count(2) == degrees.len() - 1 {
        // two circuits through one vertex
        let centre = VertexId(degrees.iter().position(|&d| d == 4).expect("found") as u32);
        let rest: EdgeSet = h.all_edges();
        let mut used = EdgeSet::new();
        let mut lobes = Vec::new();
        for &start in h.incident(centre) {
            if used.contains(start) {
                continue;
            }
            let mut lobe = EdgeSet::new();
            lobe.insert(start);
            let mut prev = start;
            let mut at = h.edge(start).other(centre);
            while at != centre {
                let next = h
                    .incident(at)
                    .iter()
                    .copied()
                    .find(|&e| e != prev && rest.contains(e))
                    .expect("degree 2");
                lobe.insert(next);
                at = h.edge(next).other(at);
                prev = next;
            }
            used = used.union(&lobe);
            lobes.push(lobe);
        }
        lobes
    } else if count(3) == 2 && count(2) == degrees.len() - 2 {
        let bridges = h.bridges();
        if bridges.is_empty() {
            return None; // theta
        }
        let rest = h.all_edges().difference(&bridges);
        let parts = h.components_of(&rest).parts;
        if parts.len() != 2 || !parts.iter().all(|p| is_circuit(h, p)) {
            return None;
        }
        parts
    } else {
        return None;
    };
    (lobes.len() == 2 && lobes.iter().all(|l| !parity_even(h, l)))
        .then_some(SignedCircuitKind::Barbell)
}

/// Every circuit of `g` exactly once, sorted by size and then by edge ids.
/// Loops are length-1 circuits and parallel pairs length-2 circuits.
pub fn enumerate_circuits(g: &SignedGraph) -> Vec<Circuit> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for e0 in g.edge_ids() {
        let ed = *g.edge(e0);
        if ed.is_loop() {
            out.push(Circuit {
                edges: vec![e0],
                vertices: vec![ed.u],
            });
            continue;
        }
        // e0 is the least edge: close paths b -> a that use only larger edges
        let (a, b) = (ed.u, ed.v);
        let mut edges = vec![e0];
        let mut vertices = vec![a, b];
        on_path[a.index()] = true;
        on_path[b.index()] = true;
        extend_paths(g, e0, a, &mut edges, &mut vertices, &mut on_path, &mut out);
        on_path[a.index()] = false;
        on_path[b.index()] = false;
    }
    sort_circuits(&mut out);
    out
}

fn extend_paths(
    g: &SignedGraph,
    least: EdgeId,
    target: VertexId,
    edges: &mut Vec<EdgeId>,
    vertices: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Circuit>,
) {
    let at = *vertices.last().expect("non-empty");
    for &e in g.incident(at) {
        if e <= least || g.is_loop(e) {
            continue;
        }
        let w = g.edge(e).other(at);
        if w == target {
            let mut es = edges.clone();
            es.push(e);
            out.push(Circuit {
                edges: es,
                vertices: vertices.clone(),
            });
        } else if !on_path[w.index()] {
            on_path[w.index()] = true;
            edges.push(e);
            vertices.push(w);
            extend_paths(g, least, target, edges, vertices, on_path, out);
            vertices.pop();
            edges.pop();
            on_path[w.index()] = false;
        }
    }
}

fn sort_circuits(cs: &mut [Circuit]) {
    cs.sort_by_cached_key(|c| {
        let mut ids = c.edges.clone();
        ids.sort();
        (ids.len(), ids)
    });
}

/// Circuits of `g` lying inside `within`.
pub fn circuits_within(all: &[Circuit], within: &EdgeSet) -> Vec<Circuit> {
    all.iter()
        .filter(|c| c.edges.iter().all(|&e| within.contains(e)))
        .cloned()
        .collect()
}

pub fn unbalanced_circuits(g: &SignedGraph) -> Vec<Circuit> {
    enumerate_circuits(g)
        .into_iter()
        .filter(|c| !c.is_balanced(g))
        .collect()
}

/// Every barbell of `g`, each edge set once. Vertex-disjoint pairs produce
/// one barbell per connecting path.
pub fn enumerate_barbells(g: &SignedGraph) -> Vec<Barbell> {
    barbells_from(g, &unbalanced_circuits(g))
}

fn barbells_from(g: &SignedGraph, unbalanced: &[Circuit]) -> Vec<Barbell> {
    let n = g.vertex_count();
    let masks: Vec<Vec<bool>> = unbalanced
        .iter()
        .map(|c| {
            let mut m = vec![false; n];
            for v in c.vertices() {
                m[v.index()] = true;
            }
            m
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..unbalanced.len() {
        for j in i + 1..unbalanced.len() {
            let (a, b) = (&unbalanced[i], &unbalanced[j]);
            let shared = a.vertices().iter().filter(|v| masks[j][v.index()]).count();
            if shared == 1 {
                let bb = Barbell {
                    first: a.clone(),
                    second: b.clone(),
                    path: Vec::new(),
                };
                if seen.insert(bb.edge_set()) {
                    out.push(bb);
                }
            } else if shared == 0 {
                let mut blocked = vec![false; n];
                for v in 0..n {
                    blocked[v] = masks[i][v] || masks[j][v];
                }
                for &start in a.vertices() {
                    let mut path = Vec::new();
                    connecting_paths(g, start, &masks[j], &mut blocked, &mut path, &mut |p| {
                        let bb = Barbell {
                            first: a.clone(),
                            second: b.clone(),
                            path: p.to_vec(),
                        };
                        if seen.insert(bb.edge_set()) {
                            out.push(bb);
                        }
                    });
                }
            }
        }
    }
    out
}

/// Paths from `at` into `goal` whose interior avoids every blocked vertex.
fn connecting_paths(
    g: &SignedGraph,
    at: VertexId,
    goal: &[bool],
    blocked: &mut [bool],
    path: &mut Vec<EdgeId>,
    emit: &mut impl FnMut(&[EdgeId]),
) {
    for &e in g.incident(at) {
        if g.is_loop(e) {
            continue;
        }
        let w = g.edge(e).other(at);
        if goal[w.index()] {
            path.push(e);
            emit(path);
            path.pop();
        } else if !blocked[w.index()] {
            blocked[w.index()] = true;
            path.push(e);
            connecting_paths(g, w, goal, blocked, path, emit);
            path.pop();
            blocked[w.index()] = false;
        }
    }
}

/// Balanced circuits and barbells, deduplicated by edge set and sorted by
/// size and then by edge ids.
pub fn enumerate_signed_circuits(g: &SignedGraph) -> Vec<SignedCircuit> {
    let circuits = enumerate_circuits(g);
    let (balanced, unbalanced): (Vec<_>, Vec<_>) =
        circuits.into_iter().partition(|c| c.is_balanced(g));
    let mut out: Vec<SignedCircuit> = balanced.into_iter().map(SignedCircuit::Balanced).collect();
    out.extend(
        barbells_from(g, &unbalanced)
            .into_iter()
            .map(SignedCircuit::Barbell),
    );
    out.sort_by_cached_key(|s| {
        let set = s.edge_set();
        (set.len(), set.to_vec())
    });
    out
}

/// Edges lying in no signed circuit.
pub fn coloops(g: &SignedGraph) -> EdgeSet {
    let covered = enumerate_signed_circuits(g)
        .iter()
        .fold(EdgeSet::new(), |acc, s| acc.union(&s.edge_set()));
    g.all_edges().difference(&covered)
}

pub fn is_flow_admissible(g: &SignedGraph) -> bool {
    coloops(g).is_empty()
}

/// `count` pairwise edge-disjoint unbalanced circuits, the lexicographically
/// first such family in enumeration order.
pub fn edge_disjoint_unbalanced_circuits(g: &SignedGraph, count: usize) -> Option<Vec<Circuit>> {
    let unbalanced = unbalanced_circuits(g);
    let sets: Vec<EdgeSet> = unbalanced.iter().map(Circuit::edge_set).collect();
    let mut chosen = Vec::new();
    fn go(sets: &[EdgeSet], from: usize, used: &EdgeSet, count: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == count {
            return true;
        }
        for i in from..sets.len() {
            if sets[i].is_disjoint(used) {
                chosen.push(i);
                if go(sets, i + 1, &used.union(&sets[i]), count, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(&sets, 0, &EdgeSet::new(), count, &mut chosen)
        .then(|| chosen.into_iter().map(|i| unbalanced[i].clone()).collect())
}

pub fn edge_disjoint_unbalanced_pair(g: &SignedGraph) -> Option<(Circuit, Circuit)> {
    edge_disjoint_unbalanced_circuits(g, 2).map(|mut v| {
        let b = v.pop().expect("two");
        let a = v.pop().expect("two");
        (a, b)
    })
}

/// Whether `set` is a theta subgraph: two vertices joined by three
/// internally disjoint paths.
pub fn is_theta(g: &SignedGraph, set: &EdgeSet) -> bool {
    if set.is_empty() || set.iter().any(|e| e.index() >= g.edge_count() || g.is_loop(e)) {
        return false;
    }
    let h = g.edge_subgraph(set).graph;
    let deg: Vec<usize> = h.vertices().map(|v| h.degree_of(v)).collect();
    h.is_connected()
        && h.edge_count() == h.vertex_count() + 1
        && deg.iter().filter(|&&d| d == 3).count() == 2
        && deg.iter().all(|&d| d == 2 || d == 3)
        && h.bridges().is_empty()
}

/// Number of balanced circuits among the three circuits of a theta subgraph.
pub fn theta_balance_profile(g: &SignedGraph, theta: &EdgeSet) -> Result<usize> {
    if !is_theta(g, theta) {
        return Err(Error::invalid(format!("{theta:?} is not a theta subgraph")));
    }
    let h = g.edge_subgraph(theta).graph;
    let circuits = enumerate_circuits(&h);
    debug_assert_eq!(circuits.len(), 3);
    Ok(circuits.iter().filter(|c| c.is_balanced(&h)).count())
}

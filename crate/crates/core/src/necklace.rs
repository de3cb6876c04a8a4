//! Necklaces: signed subdivisions of the doubled `k`-cycle `2N_k` in which
//! every small circuit is balanced and every long circuit is unbalanced.
//!
//! The degree-4 vertices are the beads. A small circuit consists of the
//! two parallel branch paths between consecutive beads; a long circuit
//! takes one branch path from every pair. Detection only looks at circuit
//! parities, so it is invariant under switching.

use std::collections::BTreeMap;

use crate::edgeset::{EdgeId, EdgeSet};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, VertexId};
use crate::signing::{switch_set_between, SwitchSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCircuit {
    /// The two beads the circuit passes through.
    pub ends: (VertexId, VertexId),
    /// The two branch paths, each listed from `ends.0` to `ends.1`,
    /// ordered by least edge id.
    pub paths: [Vec<EdgeId>; 2],
}

impl SmallCircuit {
    pub fn edge_set(&self) -> EdgeSet {
        self.paths.iter().flatten().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceStructure {
    pub length: usize,
    /// Beads in cyclic order, starting from the least id and continuing
    /// towards its smaller neighbouring bead.
    pub beads: Vec<VertexId>,
    /// `small_circuits[i]` joins `beads[i]` and `beads[(i + 1) % length]`.
    pub small_circuits: Vec<SmallCircuit>,
    /// One edge from each branch path of the first small circuit. Labelling
    /// exactly these negative gives a signature equivalent to the input's.
    pub negative_pair: (EdgeId, EdgeId),
    /// Switching at this set turns the input signature into `negative_pair`.
    pub switch_set: SwitchSet,
}

impl NecklaceStructure {
    /// Branch path lengths per small circuit.
    pub fn path_lengths(&self) -> Vec<(usize, usize)> {
        self.small_circuits
            .iter()
            .map(|s| (s.paths[0].len(), s.paths[1].len()))
            .collect()
    }
}

struct BranchPath {
    from: VertexId,
    to: VertexId,
    edges: Vec<EdgeId>,
}

pub fn detect_necklace(g: &SignedGraph) -> Option<NecklaceStructure> {
    if !g.is_connected() || !g.loops().is_empty() {
        return None;
    }
    let degree: Vec<usize> = g.vertices().map(|v| g.degree_of(v)).collect();
    if degree.iter().any(|&d| d != 2 && d != 4) {
        return None;
    }
    let beads: Vec<VertexId> = g.vertices().filter(|v| degree[v.index()] == 4).collect();
    let k = beads.len();
    if k < 3 {
        return None;
    }

    let mut used = EdgeSet::new();
    let mut paths = Vec::new();
    for &b in &beads {
        for &start in g.incident(b) {
            if used.contains(start) {
                continue;
            }
            let mut edges = vec![start];
            used.insert(start);
            let mut prev = start;
            let mut at = g.edge(start).other(b);
            while degree[at.index()] == 2 {
                let next = g
                    .incident(at)
                    .iter()
                    .copied()
                    .find(|&e| e != prev)
                    .expect("degree 2");
                used.insert(next);
                edges.push(next);
                at = g.edge(next).other(at);
                prev = next;
            }
            if at == b {
                return None;
            }
            paths.push(BranchPath { from: b, to: at, edges });
        }
    }

    // the contracted graph must be a k-cycle with every edge doubled
    let mut pairs: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        let key = (p.from.min(p.to), p.from.max(p.to));
        pairs.entry(key).or_default().push(i);
    }
    if pairs.len() != k || pairs.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut nbrs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in pairs.keys() {
        nbrs.entry(a).or_default().push(b);
        nbrs.entry(b).or_default().push(a);
    }
    if nbrs.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut order = vec![beads[0]];
    let mut next = *nbrs[&beads[0]].iter().min().expect("two neighbours");
    while next != beads[0] {
        let prev = *order.last().expect("non-empty");
        order.push(next);
        next = *nbrs[&next]
            .iter()
            .find(|&&w| w != prev)
            .expect("two neighbours");
        if order.len() > k {
            return None;
        }
    }
    if order.len() != k {
        return None;
    }

    let mut small_circuits = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (order[i], order[(i + 1) % k]);
        let key = (a.min(b), a.max(b));
        let mut two: Vec<Vec<EdgeId>> = pairs[&key]
            .iter()
            .map(|&pi| {
                let p = &paths[pi];
                let mut es = p.edges.clone();
                if p.from != a {
                    es.reverse();
                }
                es
            })
            .collect();
        two.sort_by_key(|es| *es.iter().min().expect("non-empty"));
        let second = two.pop().expect("two paths");
        let first = two.pop().expect("two paths");
        small_circuits.push(SmallCircuit {
            ends: (a, b),
            paths: [first, second],
        });
    }

    let odd = |es: &[EdgeId]| es.iter().filter(|&&e| g.sign(e).is_negative()).count() % 2 == 1;
    let smalls_balanced = small_circuits
        .iter()
        .all(|s| odd(&s.paths[0]) == odd(&s.paths[1]));
    let long_parity_odd = small_circuits
        .iter()
        .filter(|s| odd(&s.paths[0]))
        .count()
        % 2
        == 1;
    if !smalls_balanced || !long_parity_odd {
        return None;
    }

    let first = &small_circuits[0];
    let e1 = *first.paths[0].iter().min().expect("non-empty");
    let e2 = *first.paths[1].iter().min().expect("non-empty");
    let target: EdgeSet = [e1, e2].iter().collect();
    let switch_set = switch_set_between(g, &target)?;
    Some(NecklaceStructure {
        length: k,
        beads: order,
        small_circuits,
        negative_pair: (e1, e2),
        switch_set,
    })
}

/// Builds the necklace of length `k` on beads `0..k`. Branch paths
/// `2i` and `2i + 1` join bead `i` to bead `i + 1 (mod k)` with
/// `path_lengths[2i]` and `path_lengths[2i + 1]` edges. The first edge of
/// each path of small circuit `negative_pair` is negative.
pub fn build_necklace(k: usize, path_lengths: &[usize], negative_pair: usize) -> Result<SignedGraph> {
    if k < 3 {
        return Err(Error::invalid(format!("necklace length {k} is below 3")));
    }
    if path_lengths.len() != 2 * k {
        return Err(Error::invalid(format!(
            "expected {} path lengths, got {}",
            2 * k,
            path_lengths.len()
        )));
    }
    if path_lengths.contains(&0) {
        return Err(Error::invalid("path lengths must be positive"));
    }
    if negative_pair >= k {
        return Err(Error::invalid(format!(
            "small circuit {negative_pair} does not exist in a necklace of length {k}"
        )));
    }
    let mut next = k as u32;
    let mut edges = Vec::new();
    for (p, &len) in path_lengths.iter().enumerate() {
        let i = p / 2;
        let (a, b) = (i as u32, ((i + 1) % k) as u32);
        let mut prev = a;
        for step in 0..len {
            let to = if step + 1 == len {
                b
            } else {
                next += 1;
                next - 1
            };
            let sign = if step == 0 && i == negative_pair {
                Sign::Negative
            } else {
                Sign::Positive
            };
            edges.push((prev, to, sign));
            prev = to;
        }
    }
    SignedGraph::from_edges(next as usize, edges)
}

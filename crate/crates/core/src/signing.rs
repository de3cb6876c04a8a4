//! Balance, switching and signature normalization.
//!
//! Switching at a vertex set `S` replaces the signature by its symmetric
//! difference with the edge cut of `S`. Loops never lie in a cut, so they
//! never change sign; every circuit keeps its parity.

use std::collections::BTreeSet;

use crate::circuits::is_circuit;
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph, VertexId};

/// Components larger than this are not normalized by exhaustive search.
pub const NORMALIZE_COMPONENT_LIMIT: usize = 26;

/// A vertex set to switch at.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwitchSet(BTreeSet<VertexId>);

impl SwitchSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn symmetric_difference(&self, other: &SwitchSet) -> SwitchSet {
        SwitchSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// The edge cut `δ(S)` in `g`.
    pub fn cut(&self, g: &SignedGraph) -> EdgeSet {
        g.edge_ids()
            .filter(|&e| {
                let ed = g.edge(e);
                self.contains(ed.u) != self.contains(ed.v)
            })
            .collect()
    }
}

impl FromIterator<VertexId> for SwitchSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        SwitchSet(iter.into_iter().collect())
    }
}

/// Whether the circuit `c` has an even number of negative edges.
pub fn is_balanced_circuit(g: &SignedGraph, c: &EdgeSet) -> Result<bool> {
    if !is_circuit(g, c) {
        return Err(Error::invalid(format!("{c:?} is not a circuit")));
    }
    Ok(parity_even(g, c))
}

/// Even number of negative edges in `set`.
pub(crate) fn parity_even(g: &SignedGraph, set: &EdgeSet) -> bool {
    set.iter().filter(|&e| g.sign(e).is_negative()).count() % 2 == 0
}

/// A subgraph is balanced when none of its circuits is unbalanced.
pub fn is_balanced_subgraph(g: &SignedGraph, h: &EdgeSet) -> bool {
    potentials(g, h).is_some()
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    is_balanced_subgraph(g, &g.all_edges())
}

/// Vertex potentials `σ` with `sign(uv) = σ(u)σ(v)` on every edge of `h`,
/// rooted at `+` in each component. `None` when `h` is unbalanced.
fn potentials(g: &SignedGraph, h: &EdgeSet) -> Option<Vec<Sign>> {
    let n = g.vertex_count();
    let mut sigma: Vec<Option<Sign>> = vec![None; n];
    let mut stack = Vec::new();
    for root in g.vertices() {
        if sigma[root.index()].is_some() {
            continue;
        }
        sigma[root.index()] = Some(Sign::Positive);
        stack.push(root);
        while let Some(v) = stack.pop() {
            let sv = sigma[v.index()].expect("visited");
            for &e in g.incident(v) {
                if !h.contains(e) {
                    continue;
                }
                let ed = g.edge(e);
                if ed.is_loop() {
                    if ed.sign.is_negative() {
                        return None;
                    }
                    continue;
                }
                let w = ed.other(v);
                let want = sv.times(ed.sign);
                match sigma[w.index()] {
                    None => {
                        sigma[w.index()] = Some(want);
                        stack.push(w);
                    }
                    Some(sw) if sw != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(sigma.into_iter().map(|s| s.expect("all visited")).collect())
}

/// Flips the sign of every non-loop edge with exactly one endpoint in `s`.
/// Vertices of `s` outside `g` are ignored.
pub fn switch_at(g: &SignedGraph, s: &SwitchSet) -> SignedGraph {
    g.map_signs(|e, sign| {
        let ed = g.edge(e);
        if s.contains(ed.u) != s.contains(ed.v) {
            sign.flip()
        } else {
            sign
        }
    })
}

/// A switch set making every edge of `h` positive, or `None` if `h` is
/// unbalanced.
pub fn balancing_switch_set(g: &SignedGraph, h: &EdgeSet) -> Option<SwitchSet> {
    let sigma = potentials(g, h)?;
    Some(
        g.vertices()
            .filter(|v| sigma[v.index()].is_negative())
            .collect(),
    )
}

/// A switch set turning the signature of `g` into `target`, if the two
/// signatures are switching equivalent.
pub fn switch_set_between(g: &SignedGraph, target: &EdgeSet) -> Option<SwitchSet> {
    let diff = g.negative_edges().symmetric_difference(target);
    let d = g.with_signature(&diff);
    balancing_switch_set(&d, &d.all_edges())
}

/// Switching-equivalent graph with the fewest negative edges.
///
/// Searches all `2^(c-1)` switch sets of every component with `c` vertices,
/// so the cost is exponential in the largest component. Among minimum
/// signatures the lexicographically least negative edge set wins.
pub fn normalize_signature(g: &SignedGraph) -> Result<SignedGraph> {
    let label = g.component_labels(None);
    let comps = label.iter().copied().max().map_or(0, |m| m + 1);
    let mut best_switch = SwitchSet::new();
    for c in 0..comps {
        let members: Vec<VertexId> = g.vertices().filter(|v| label[v.index()] == c).collect();
        if members.len() > NORMALIZE_COMPONENT_LIMIT {
            return Err(Error::limit(format!(
                "component with {} vertices exceeds normalization limit {}",
                members.len(),
                NORMALIZE_COMPONENT_LIMIT
            )));
        }
        let edges: Vec<_> = g
            .edge_ids()
            .filter(|&e| label[g.edge(e).u.index()] == c)
            .collect();
        // local bit positions; members[0] stays fixed
        let mut pos = vec![usize::MAX; g.vertex_count()];
        for (i, v) in members.iter().enumerate() {
            pos[v.index()] = i;
        }
        let mut best: Option<(usize, EdgeSet, u64)> = None;
        for mask in 0..(1u64 << (members.len() - 1)) {
            let bits = mask << 1;
            let in_s = |v: VertexId| bits >> pos[v.index()] & 1 == 1;
            let flips = |e: crate::EdgeId| {
                let ed = g.edge(e);
                ed.sign.is_negative() != (in_s(ed.u) != in_s(ed.v))
            };
            let count = edges.iter().filter(|&&e| flips(e)).count();
            if best.as_ref().is_some_and(|(b, _, _)| count > *b) {
                continue;
            }
            let negs: EdgeSet = edges.iter().copied().filter(|&e| flips(e)).collect();
            let better = match &best {
                None => true,
                Some((b, set, _)) => count < *b || negs < *set,
            };
            if better {
                best = Some((count, negs, bits));
            }
        }
        let (_, _, bits) = best.expect("at least the empty switch");
        for (i, &v) in members.iter().enumerate() {
            if bits >> i & 1 == 1 {
                best_switch.insert(v);
            }
        }
    }
    Ok(switch_at(g, &best_switch))
}

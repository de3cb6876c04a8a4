//! Brute-force oracles over edge subsets. They only read endpoints and
//! signs from the graph and share no code with the library's algorithms.

#![allow(dead_code)]

use rand::Rng;
use signed_covers::{EdgeId, EdgeSet, Sign, SignedGraph};

pub fn ends(g: &SignedGraph, e: EdgeId) -> (usize, usize, bool) {
    let ed = g.edge(e);
    (ed.u.index(), ed.v.index(), ed.sign == Sign::Negative)
}

pub fn subsets(m: usize) -> impl Iterator<Item = EdgeSet> {
    (0u64..1 << m).map(move |mask| (0..m as u32).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect())
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    parent[v] = r;
    r
}

/// Components of the subgraph formed by `set` (touched vertices only), each
/// as `(vertex count, edge list)`.
pub fn parts(g: &SignedGraph, set: &EdgeSet) -> Vec<(usize, Vec<EdgeId>)> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    for e in set.iter() {
        let (u, v, _) = ends(g, e);
        touched[u] = true;
        touched[v] = true;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut out: Vec<(usize, Vec<EdgeId>)> = Vec::new();
    for (v, &t) in touched.iter().enumerate() {
        if t {
            let r = find(&mut parent, v);
            match roots.iter().position(|&x| x == r) {
                Some(i) => out[i].0 += 1,
                None => {
                    roots.push(r);
                    out.push((1, Vec::new()));
                }
            }
        }
    }
    for e in set.iter() {
        let r = find(&mut parent, ends(g, e).0);
        let i = roots.iter().position(|&x| x == r).unwrap();
        out[i].1.push(e);
    }
    out
}

/// Every circuit inside `set` has an even number of negative edges:
/// vertex potentials in `{0, 1}` exist with `p(u) + p(v) = sign` on each edge.
pub fn balanced(g: &SignedGraph, set: &EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut pot: Vec<Option<bool>> = vec![None; n];
    let edges: Vec<_> = set.iter().map(|e| ends(g, e)).collect();
    loop {
        let mut changed = false;
        for &(u, v, neg) in &edges {
            match (pot[u], pot[v]) {
                (Some(a), Some(b)) => {
                    if a ^ b != neg {
                        return false;
                    }
                }
                (Some(a), None) => {
                    pot[v] = Some(a ^ neg);
                    changed = true;
                }
                (None, Some(b)) => {
                    pot[u] = Some(b ^ neg);
                    changed = true;
                }
                (None, None) => {}
            }
        }
        if !changed {
            match edges.iter().find(|&&(u, _, _)| pot[u].is_none()) {
                Some(&(u, _, _)) => pot[u] = Some(false),
                None => return true,
            }
        }
    }
}

pub fn is_circuit(g: &SignedGraph, set: &EdgeSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut degree = vec![0usize; g.vertex_count()];
    for e in set.iter() {
        let (u, v, _) = ends(g, e);
        degree[u] += 1;
        degree[v] += 1;
    }
    degree.iter().all(|&d| d == 0 || d == 2) && parts(g, set).len() == 1
}

pub fn circuits(g: &SignedGraph) -> Vec<EdgeSet> {
    subsets(g.edge_count()).filter(|s| is_circuit(g, s)).collect()
}

/// Rank in the signed-graphic (frame) matroid: touched vertices minus
/// balanced components.
pub fn frame_rank(g: &SignedGraph, set: &EdgeSet) -> usize {
    parts(g, set)
        .iter()
        .map(|(nv, es)| {
            let comp: EdgeSet = es.iter().collect();
            if balanced(g, &comp) {
                nv - 1
            } else {
                *nv
            }
        })
        .sum()
}

pub fn dependent(g: &SignedGraph, set: &EdgeSet) -> bool {
    set.len() > frame_rank(g, set)
}

/// Minimal dependent sets of the frame matroid: the signed circuits.
pub fn signed_circuits(g: &SignedGraph) -> Vec<EdgeSet> {
    subsets(g.edge_count())
        .filter(|s| {
            dependent(g, s)
                && s.iter().all(|e| {
                    let mut t = s.clone();
                    t.remove(e);
                    !dependent(g, &t)
                })
        })
        .collect()
}

pub fn coloops(g: &SignedGraph) -> EdgeSet {
    let covered = signed_circuits(g).iter().fold(EdgeSet::new(), |acc, c| acc.union(c));
    g.all_edges().difference(&covered)
}

/// Exhaustive multiplicity vectors in `{0..k}` per signed circuit.
pub fn cover_exists(g: &SignedGraph, k: u32) -> bool {
    let sets = signed_circuits(g);
    fn go(i: usize, sets: &[EdgeSet], cover: &mut Vec<u32>, k: u32) -> bool {
        if i == sets.len() {
            return cover.iter().all(|&c| c == k);
        }
        let mut x = 0;
        let found = loop {
            if go(i + 1, sets, cover, k) {
                break true;
            }
            if x == k || sets[i].iter().any(|e| cover[e.index()] == k) {
                break false;
            }
            x += 1;
            for e in sets[i].iter() {
                cover[e.index()] += 1;
            }
        };
        for e in sets[i].iter() {
            cover[e.index()] -= x;
        }
        found
    }
    go(0, &sets, &mut vec![0; g.edge_count()], k)
}

/// All partitions of the edge set into circuits.
pub fn decompositions(g: &SignedGraph) -> Vec<Vec<EdgeSet>> {
    let cs = circuits(g);
    let mut out = Vec::new();
    fn go(g: &SignedGraph, cs: &[EdgeSet], used: EdgeSet, chosen: &mut Vec<EdgeSet>, out: &mut Vec<Vec<EdgeSet>>) {
        let Some(e) = g.all_edges().difference(&used).first() else {
            let mut d = chosen.clone();
            d.sort();
            out.push(d);
            return;
        };
        for c in cs.iter().filter(|c| c.contains(e) && c.is_disjoint(&used)) {
            chosen.push(c.clone());
            go(g, cs, used.union(c), chosen, out);
            chosen.pop();
        }
    }
    go(g, &cs, EdgeSet::new(), &mut Vec::new(), &mut out);
    out
}

pub fn unbalanced_count(g: &SignedGraph, d: &[EdgeSet]) -> usize {
    d.iter().filter(|c| !balanced(g, c)).count()
}

/// Connected as a graph on all of its vertices (a single vertex counts).
pub fn connected(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    n > 0 && {
        let mut parent: Vec<usize> = (0..n).collect();
        for e in g.edge_ids() {
            let (u, v, _) = ends(g, e);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == r)
    }
}

/// Random signed multigraph on `1..=max_v` vertices with exactly `m` edges.
pub fn random_graph(rng: &mut impl Rng, max_v: usize, m: usize, loop_chance: f64) -> SignedGraph {
    let n = rng.gen_range(1..=max_v);
    let edges: Vec<(u32, u32, Sign)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n as u32);
            let v = if n == 1 || rng.gen_bool(loop_chance) {
                u
            } else {
                loop {
                    let v = rng.gen_range(0..n as u32);
                    if v != u {
                        break v;
                    }
                }
            };
            let sign = if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
            (u, v, sign)
        })
        .collect();
    SignedGraph::from_edges(n, edges).unwrap()
}

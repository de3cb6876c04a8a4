//! Exhaustive generation of small signed graphs up to switching
//! isomorphism, and sweeps that check named structural properties on them.
//!
//! Canonical keys are computed by brute force: vertices are ordered by an
//! isomorphism invariant, every labeling compatible with that order is
//! tried, and among the labelings giving the least unsigned edge list every
//! switching is tried. A signed multigraph is determined up to edge
//! relabeling by its unsigned edge list and the number of negative edges in
//! each group of parallel edges, so those counts complete the key.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{
    coloops, edge_disjoint_unbalanced_circuits, edge_disjoint_unbalanced_pair, enumerate_circuits,
    is_flow_admissible, is_theta, theta_balance_profile,
};
use crate::cover::{find_k_cover, min_uniform_cover, verify_cover};
use crate::decomposition::{
    intersection_graph, nonseparating_disjoint_circuit, optimal_decompositions, removable_edge,
};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::format::write_edge_list;
use crate::graph::{Sign, SignedGraph, VertexId};
use crate::necklace::detect_necklace;
use crate::signing::{balancing_switch_set, switch_at, SwitchSet};

pub const MAX_VERTICES: usize = 8;
pub const MAX_EDGES: usize = 12;

/// Byte encoding of a signed graph up to vertex relabeling and switching.
///
/// Layout: `n`, `m`, the canonical unsigned edge list as `m` endpoint
/// pairs, then the negative count of each distinct pair in list order.
/// Keys sort by vertex count first, then edge count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn edge_count(&self) -> usize {
        self.0[1] as usize
    }

    /// The labeled graph the key describes. Within a group of parallel
    /// edges the negative ones come first.
    pub fn representative(&self) -> SignedGraph {
        let (n, m) = (self.vertex_count(), self.edge_count());
        let pairs: Vec<(u8, u8)> = (0..m).map(|i| (self.0[2 + 2 * i], self.0[3 + 2 * i])).collect();
        let mut counts = self.0[2 + 2 * m..].iter().copied();
        let mut edges = Vec::with_capacity(m);
        let mut left = 0u8;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if i == 0 || pairs[i - 1] != (a, b) {
                left = counts.next().expect("one count per group");
            }
            let sign = if left > 0 {
                left -= 1;
                Sign::Negative
            } else {
                Sign::Positive
            };
            edges.push((a as u32, b as u32, sign));
        }
        SignedGraph::from_edges(n, edges).expect("key pairs are in range")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

type Pairs = Vec<(u8, u8)>;

fn unsigned_pairs(g: &SignedGraph) -> Pairs {
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = (e.u.0 as u8, e.v.0 as u8);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Vertex ordering classes: vertices with equal invariants share a block,
/// blocks sorted by decreasing invariant.
fn blocks(n: usize, pairs: &[(u8, u8)]) -> Vec<Vec<u8>> {
    let mut degree = vec![0usize; n];
    let mut loops = vec![0usize; n];
    for &(a, b) in pairs {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
        if a == b {
            loops[a as usize] += 1;
        }
    }
    let mut nbr_degrees = vec![Vec::new(); n];
    for &(a, b) in pairs {
        if a != b {
            nbr_degrees[a as usize].push(degree[b as usize]);
            nbr_degrees[b as usize].push(degree[a as usize]);
        }
    }
    for d in &mut nbr_degrees {
        d.sort_unstable_by(|x, y| y.cmp(x));
    }
    let invariant = |v: usize| (degree[v], loops[v], nbr_degrees[v].clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| invariant(y).cmp(&invariant(x)).then(x.cmp(&y)));
    let mut out: Vec<Vec<u8>> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && invariant(order[i - 1]) == invariant(v) {
            out.last_mut().expect("non-empty").push(v as u8);
        } else {
            out.push(vec![v as u8]);
        }
    }
    out
}

/// Least relabeled edge list over invariant-respecting labelings, and the
/// labelings (`perm[old] = new`) attaining it when `collect` is set.
fn unsigned_canon(n: usize, pairs: &[(u8, u8)], collect: bool) -> (Pairs, Vec<Vec<u8>>) {
    let blocks = blocks(n, pairs);
    let slot_block: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| std::iter::repeat_n(i, b.len()))
        .collect();
    let mut best: Option<Pairs> = None;
    let mut attaining = Vec::new();
    let mut perm = vec![0u8; n];
    let mut used = vec![false; n];
    let mut scratch = Vec::with_capacity(pairs.len());

    #[allow(clippy::too_many_arguments)]
    fn place(
        slot: usize,
        blocks: &[Vec<u8>],
        slot_block: &[usize],
        pairs: &[(u8, u8)],
        perm: &mut [u8],
        used: &mut [bool],
        scratch: &mut Pairs,
        best: &mut Option<Pairs>,
        attaining: &mut Vec<Vec<u8>>,
        collect: bool,
    ) {
        if slot == perm.len() {
            scratch.clear();
            scratch.extend(pairs.iter().map(|&(a, b)| {
                let (x, y) = (perm[a as usize], perm[b as usize]);
                (x.min(y), x.max(y))
            }));
            scratch.sort_unstable();
            match best.as_ref().map(|b| scratch.as_slice().cmp(b.as_slice())) {
                Some(std::cmp::Ordering::Greater) => {}
                Some(std::cmp::Ordering::Equal) => {
                    if collect {
                        attaining.push(perm.to_vec());
                    }
                }
                _ => {
                    *best = Some(scratch.clone());
                    attaining.clear();
                    if collect {
                        attaining.push(perm.to_vec());
                    }
                }
            }
            return;
        }
        for &v in &blocks[slot_block[slot]] {
            if used[v as usize] {
                continue;
            }
            used[v as usize] = true;
            perm[v as usize] = slot as u8;
            place(slot + 1, blocks, slot_block, pairs, perm, used, scratch, best, attaining, collect);
            used[v as usize] = false;
        }
    }

    place(
        0,
        &blocks,
        &slot_block,
        pairs,
        &mut perm,
        &mut used,
        &mut scratch,
        &mut best,
        &mut attaining,
        collect,
    );
    (best.unwrap_or_default(), attaining)
}

struct SignedCanon {
    key: CanonicalKey,
    /// `perm[old] = new` for the attaining labeling.
    perm: Vec<u8>,
    /// Switch set over the original vertex ids.
    switch: SwitchSet,
}

fn guard(g: &SignedGraph) -> Result<()> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::limit(format!(
            "canonical forms support at most {MAX_VERTICES} vertices, got {}",
            g.vertex_count()
        )));
    }
    if g.edge_count() > u8::MAX as usize {
        return Err(Error::limit("too many edges for a canonical key"));
    }
    Ok(())
}

fn signed_canon(g: &SignedGraph) -> Result<SignedCanon> {
    guard(g)?;
    let n = g.vertex_count();
    let pairs = unsigned_pairs(g);
    let (least, perms) = unsigned_canon(n, &pairs, true);
    let mut groups = least.clone();
    groups.dedup();
    let masks: u32 = if n == 0 { 1 } else { 1 << (n - 1) };
    let mut best: Option<(Vec<u8>, usize, u32)> = None;
    let mut counts = vec![0u8; groups.len()];
    for (pi, perm) in perms.iter().enumerate() {
        let items: Vec<(usize, u8, u8, bool)> = g
            .edges()
            .iter()
            .map(|e| {
                let (x, y) = (perm[e.u.index()], perm[e.v.index()]);
                let pair = (x.min(y), x.max(y));
                let group = groups.binary_search(&pair).expect("pair occurs in the least list");
                (group, x, y, e.sign.is_negative())
            })
            .collect();
        for mask in 0..masks {
            counts.iter_mut().for_each(|c| *c = 0);
            for &(group, x, y, neg) in &items {
                let flip = ((mask >> x) ^ (mask >> y)) & 1 == 1;
                if neg != flip {
                    counts[group] += 1;
                }
            }
            if best.as_ref().is_none_or(|(b, _, _)| counts < *b) {
                best = Some((counts.clone(), pi, mask));
            }
        }
    }
    let (counts, pi, mask) = best.unwrap_or((Vec::new(), 0, 0));
    let perm = perms.get(pi).cloned().unwrap_or_default();
    let mut bytes = vec![n as u8, pairs.len() as u8];
    for (a, b) in &least {
        bytes.push(*a);
        bytes.push(*b);
    }
    bytes.extend(counts);
    let switch = g
        .vertices()
        .filter(|v| (mask >> perm[v.index()]) & 1 == 1)
        .collect();
    Ok(SignedCanon {
        key: CanonicalKey(bytes),
        perm,
        switch,
    })
}

/// Canonical key of `g`; at most [`MAX_VERTICES`] vertices.
pub fn canonical_form(g: &SignedGraph) -> Result<CanonicalKey> {
    Ok(signed_canon(g)?.key)
}

pub fn canonical_representative(g: &SignedGraph) -> Result<SignedGraph> {
    Ok(canonical_form(g)?.representative())
}

/// Relabeling plus switching taking one signed graph onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingIsomorphism {
    /// Switch the source here first.
    pub switch: SwitchSet,
    /// Then send source vertex `v` to `map[v]`.
    pub map: Vec<VertexId>,
}

impl SwitchingIsomorphism {
    /// Whether applying the witness to `g` reproduces `h` up to edge order.
    pub fn maps(&self, g: &SignedGraph, h: &SignedGraph) -> bool {
        if g.vertex_count() != h.vertex_count() || self.map.len() != g.vertex_count() {
            return false;
        }
        let mut image = vec![false; h.vertex_count()];
        for v in &self.map {
            if v.index() >= image.len() || std::mem::replace(&mut image[v.index()], true) {
                return false;
            }
        }
        let switched = switch_at(g, &self.switch);
        let triples = |g: &SignedGraph, map: &dyn Fn(VertexId) -> VertexId| {
            let mut t: Vec<(u32, u32, bool)> = g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (map(e.u).0, map(e.v).0);
                    (a.min(b), a.max(b), e.sign.is_negative())
                })
                .collect();
            t.sort_unstable();
            t
        };
        triples(&switched, &|v| self.map[v.index()]) == triples(h, &|v| v)
    }
}

/// A witness that `g` and `h` are switching isomorphic, if they are.
pub fn find_switching_isomorphism(g: &SignedGraph, h: &SignedGraph) -> Result<Option<SwitchingIsomorphism>> {
    let (cg, ch) = (signed_canon(g)?, signed_canon(h)?);
    if cg.key != ch.key {
        return Ok(None);
    }
    // g --switch Sg, perm pg--> R <--switch Sh, perm ph-- h
    let mut inverse_h = vec![0u32; h.vertex_count()];
    for (old, &new) in ch.perm.iter().enumerate() {
        inverse_h[new as usize] = old as u32;
    }
    let map: Vec<VertexId> = cg
        .perm
        .iter()
        .map(|&new| VertexId(inverse_h[new as usize]))
        .collect();
    let pulled_back: SwitchSet = g.vertices().filter(|v| ch.switch.contains(map[v.index()])).collect();
    let switch = cg.switch.symmetric_difference(&pulled_back);
    Ok(Some(SwitchingIsomorphism { switch, map }))
}

/// Instance classes a sweep can run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    Eulerian,
    FlowAdmissibleEulerian,
    All,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::Eulerian => "eulerian",
            Filter::FlowAdmissibleEulerian => "flow_admissible_eulerian",
            Filter::All => "all",
        }
    }

    fn admits_shape(self, g: &SignedGraph) -> bool {
        match self {
            Filter::All => true,
            Filter::Eulerian | Filter::FlowAdmissibleEulerian => g.is_eulerian(),
        }
    }

    pub fn admits(self, g: &SignedGraph) -> bool {
        let no_isolated = g.vertices().all(|v| g.degree_of(v) > 0);
        no_isolated
            && self.admits_shape(g)
            && (self != Filter::FlowAdmissibleEulerian || is_flow_admissible(g))
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eulerian" => Ok(Filter::Eulerian),
            "flow_admissible_eulerian" => Ok(Filter::FlowAdmissibleEulerian),
            "all" => Ok(Filter::All),
            other => Err(Error::invalid(format!("unknown filter `{other}`"))),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_bounds(max_v: usize, max_e: usize) -> Result<()> {
    if max_v > MAX_VERTICES || max_e > MAX_EDGES {
        return Err(Error::limit(format!(
            "bounds {max_v} vertices / {max_e} edges exceed the supported {MAX_VERTICES} / {MAX_EDGES}"
        )));
    }
    Ok(())
}

/// Unsigned multigraphs on exactly `n` vertices, none isolated, with
/// `1..=max_e` edges, one canonical edge list per isomorphism class.
fn unsigned_classes(n: usize, max_e: usize) -> Vec<Pairs> {
    let mut out = Vec::new();
    let mut level: BTreeSet<Pairs> = BTreeSet::from([Vec::new()]);
    let slots: Vec<(u8, u8)> = (0..n as u8)
        .flat_map(|a| (a..n as u8).map(move |b| (a, b)))
        .collect();
    for m in 1..=max_e {
        let children: Vec<Pairs> = level
            .par_iter()
            .flat_map_iter(|parent| {
                slots.iter().filter_map(move |&p| {
                    let mut child = parent.clone();
                    child.push(p);
                    let mut touched = vec![false; n];
                    for &(a, b) in &child {
                        touched[a as usize] = true;
                        touched[b as usize] = true;
                    }
                    let isolated = touched.iter().filter(|t| !**t).count();
                    (isolated <= 2 * (max_e - m)).then(|| unsigned_canon(n, &child, false).0)
                })
            })
            .collect();
        level = children.into_iter().collect();
        out.extend(level.iter().filter(|pairs| {
            let mut touched = vec![false; n];
            for &(a, b) in pairs.iter() {
                touched[a as usize] = true;
                touched[b as usize] = true;
            }
            touched.iter().all(|&t| t)
        }).cloned());
    }
    out
}

/// Negative-count assignments for one unsigned class, reduced by switching
/// on a spanning forest: every class has an assignment in which each forest
/// group has at most half of its edges negative.
fn signed_candidates(n: usize, pairs: &[(u8, u8)]) -> Vec<SignedGraph> {
    let mut groups: Vec<((u8, u8), u8)> = Vec::new();
    for &p in pairs {
        match groups.last_mut() {
            Some((q, t)) if *q == p => *t += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while root[r] != r {
            r = root[r];
        }
        root[v] = r;
        r
    }
    let limit: Vec<u8> = groups
        .iter()
        .map(|&((a, b), t)| {
            let (ra, rb) = (find(&mut root, a as usize), find(&mut root, b as usize));
            if ra != rb {
                root[ra] = rb;
                t / 2
            } else {
                t
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut counts = vec![0u8; groups.len()];
    loop {
        let mut edges = Vec::with_capacity(pairs.len());
        for (&((a, b), t), &c) in groups.iter().zip(&counts) {
            for i in 0..t {
                let sign = if i < c { Sign::Negative } else { Sign::Positive };
                edges.push((a as u32, b as u32, sign));
            }
        }
        out.push(SignedGraph::from_edges(n, edges).expect("pairs are in range"));
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            if counts[i] < limit[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Canonical representatives of every switching-isomorphism class with
/// `1..=max_v` vertices (none isolated) and `1..=max_e` edges admitted by
/// `filter`, sorted by canonical key.
pub fn generate_instances(max_v: usize, max_e: usize, filter: Filter) -> Result<Vec<SignedGraph>> {
    check_bounds(max_v, max_e)?;
    let mut classes: BTreeMap<CanonicalKey, SignedGraph> = BTreeMap::new();
    for n in 1..=max_v {
        let shapes = unsigned_classes(n, max_e);
        let found: Vec<(CanonicalKey, SignedGraph)> = shapes
            .par_iter()
            .flat_map_iter(|pairs| {
                let probe = SignedGraph::from_edges(n, pairs.iter().map(|&(a, b)| (a as u32, b as u32, Sign::Positive)))
                    .expect("pairs are in range");
                let candidates = if filter.admits_shape(&probe) {
                    signed_candidates(n, pairs)
                } else {
                    Vec::new()
                };
                candidates.into_iter().filter(|g| filter.admits(g)).map(|g| {
                    let key = canonical_form(&g).expect("guarded sizes");
                    let rep = key.representative();
                    (key, rep)
                })
            })
            .collect();
        classes.extend(found);
    }
    Ok(classes.into_values().collect())
}

/// Result of checking one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    NotApplicable,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Least `k <= 6` with a `k`-cover, for properties that compute it.
    pub min_cover: Option<u32>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { outcome: Outcome::Pass, min_cover: None }
    }

    fn not_applicable() -> Self {
        Verdict { outcome: Outcome::NotApplicable, min_cover: None }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict { outcome: Outcome::Fail(detail.into()), min_cover: None }
    }

    fn check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(detail())
        }
    }
}

pub struct Property {
    pub name: &'static str,
    pub summary: &'static str,
    pub filter: Filter,
    check: fn(&SignedGraph) -> Result<Verdict>,
}

impl Property {
    pub fn check(&self, g: &SignedGraph) -> Result<Verdict> {
        (self.check)(g)
    }
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("filter", &self.filter)
            .finish()
    }
}

static PROPERTIES: &[Property] = &[
    Property {
        name: "thm_6cover",
        summary: "every flow-admissible signed Eulerian graph has a 6-cover",
        filter: Filter::FlowAdmissibleEulerian,
        check: has_six_cover,
    },
    Property {
        name: "even_2cover",
        summary: "signed Eulerian graphs with an even number of negative edges have a 2-cover",
        filter: Filter::Eulerian,
        check: even_has_two_cover,
    },
    Property {
        name: "min_cover",
        summary: "flow-admissible signed Eulerian graphs have a k-cover for some k <= 6, and k <= 2 when the negative count is even",
        filter: Filter::FlowAdmissibleEulerian,
        check: min_cover_bound,
    },
    Property {
        name: "theta_lemma",
        summary: "no theta subgraph has exactly two balanced circuits",
        filter: Filter::All,
        check: theta_profiles,
    },
    Property {
        name: "circuit_removal",
        summary: "in an Eulerian graph with a vertex of degree >= 4, every circuit misses some circuit whose removal leaves the graph connected up to isolated vertices",
        filter: Filter::Eulerian,
        check: circuit_removal,
    },
    Property {
        name: "removable_edge",
        summary: "in a 2-connected graph, every vertex v has an edge e avoiding it with G - V(e) connected",
        filter: Filter::All,
        check: removable_edges,
    },
    Property {
        name: "balancing_switch",
        summary: "a subgraph is balanced exactly when some switching removes all of its negative edges",
        filter: Filter::All,
        check: balancing_switches,
    },
    Property {
        name: "disjoint_unbalanced_flow",
        summary: "a 2-edge-connected graph with two edge-disjoint unbalanced circuits has no coloops",
        filter: Filter::All,
        check: disjoint_unbalanced_flow,
    },
    Property {
        name: "unbalanced_pair",
        summary: "a flow-admissible unbalanced Eulerian graph has two edge-disjoint unbalanced circuits",
        filter: Filter::Eulerian,
        check: unbalanced_pair,
    },
    Property {
        name: "odd_three_unbalanced",
        summary: "a flow-admissible Eulerian graph with an odd number of negative edges has three edge-disjoint unbalanced circuits",
        filter: Filter::Eulerian,
        check: odd_three_unbalanced,
    },
    Property {
        name: "adjacent_overlap",
        summary: "in an optimal decomposition, adjacent circuits with a balanced member share one or two vertices",
        filter: Filter::Eulerian,
        check: adjacent_overlap,
    },
    Property {
        name: "adjacent_necklace",
        summary: "in an optimal decomposition, adjacent unbalanced circuits sharing three or more vertices form a necklace",
        filter: Filter::Eulerian,
        check: adjacent_necklace,
    },
    Property {
        name: "one_cover",
        summary: "every signed Eulerian graph has a 1-cover (false; kept to exercise counterexample reporting)",
        filter: Filter::Eulerian,
        check: has_one_cover,
    },
];

pub fn properties() -> &'static [Property] {
    PROPERTIES
}

pub fn property(name: &str) -> Result<&'static Property> {
    PROPERTIES
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown property `{name}`")))
}

fn has_cover(g: &SignedGraph, k: u32) -> Result<Verdict> {
    Ok(match find_k_cover(g, k)? {
        Some(c) if verify_cover(g, &c).is_ok_and(|r| r.valid) => Verdict::pass(),
        Some(_) => Verdict::fail(format!("{k}-cover certificate failed verification")),
        None => Verdict::fail(format!("no {k}-cover")),
    })
}

fn has_six_cover(g: &SignedGraph) -> Result<Verdict> {
    has_cover(g, 6)
}

fn has_one_cover(g: &SignedGraph) -> Result<Verdict> {
    has_cover(g, 1)
}

fn even_has_two_cover(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_eulerian() || g.negative_count() % 2 == 1 {
        return Ok(Verdict::not_applicable());
    }
    has_cover(g, 2)
}

fn min_cover_bound(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_eulerian() || !is_flow_admissible(g) {
        return Ok(Verdict::not_applicable());
    }
    let least = min_uniform_cover(g, 6)?;
    let mut v = match least {
        None => Verdict::fail("no k-cover for any k <= 6"),
        Some(k) if k > 2 && g.negative_count().is_multiple_of(2) => {
            Verdict::fail(format!("even negative count but least cover is {k}"))
        }
        Some(_) => Verdict::pass(),
    };
    v.min_cover = least;
    Ok(v)
}

fn theta_profiles(g: &SignedGraph) -> Result<Verdict> {
    let circuits = enumerate_circuits(g);
    let mut seen = BTreeSet::new();
    for (i, a) in circuits.iter().enumerate() {
        for b in &circuits[i + 1..] {
            let (sa, sb) = (a.edge_set(), b.edge_set());
            if sa.is_disjoint(&sb) {
                continue;
            }
            let u = sa.union(&sb);
            if !seen.insert(u.clone()) || !is_theta(g, &u) {
                continue;
            }
            let profile = theta_balance_profile(g, &u)?;
            if profile != 1 && profile != 3 {
                return Ok(Verdict::fail(format!("theta {u:?} has {profile} balanced circuits")));
            }
        }
    }
    Ok(if seen.is_empty() { Verdict::not_applicable() } else { Verdict::pass() })
}

fn circuit_removal(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_eulerian() || g.max_degree() < 4 {
        return Ok(Verdict::not_applicable());
    }
    let all = g.all_edges();
    for c in enumerate_circuits(g) {
        let other = nonseparating_disjoint_circuit(g, &c)?;
        let rest = all.difference(&other.edge_set());
        let ok = crate::circuits::is_circuit(g, &other.edge_set())
            && other.edge_set().is_disjoint(&c.edge_set())
            && g.components_of(&rest).connected_up_to_isolated();
        if !ok {
            return Ok(Verdict::fail(format!(
                "circuit {:?} gave {:?}",
                c.edge_set(),
                other.edge_set()
            )));
        }
    }
    Ok(Verdict::pass())
}

fn removable_edges(g: &SignedGraph) -> Result<Verdict> {
    if g.vertex_count() < 3 || !g.is_two_connected() {
        return Ok(Verdict::not_applicable());
    }
    for v in g.vertices() {
        let e = removable_edge(g, v)?;
        let edge = g.edge(e);
        let rest = g.delete_vertices(&[edge.u, edge.v]);
        if edge.u == v || edge.v == v || !rest.graph.is_connected() {
            return Ok(Verdict::fail(format!("vertex {} gave edge {e}", v.0)));
        }
    }
    Ok(Verdict::pass())
}

/// Subgraphs to test: every edge subset up to ten edges, otherwise every
/// circuit and every union of two circuits.
fn sample_subgraphs(g: &SignedGraph) -> Vec<EdgeSet> {
    let m = g.edge_count();
    if m <= 10 {
        return (0u32..1 << m)
            .map(|mask| {
                (0..m as u32)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(crate::edgeset::EdgeId)
                    .collect()
            })
            .collect();
    }
    let sets: Vec<EdgeSet> = enumerate_circuits(g).iter().map(|c| c.edge_set()).collect();
    let mut out: BTreeSet<EdgeSet> = sets.iter().cloned().collect();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            out.insert(a.union(b));
        }
    }
    out.into_iter().collect()
}

fn balancing_switches(g: &SignedGraph) -> Result<Verdict> {
    let circuits = enumerate_circuits(g);
    for h in sample_subgraphs(g) {
        let balanced = circuits
            .iter()
            .filter(|c| c.edge_set().is_subset(&h))
            .all(|c| c.is_balanced(g));
        match balancing_switch_set(g, &h) {
            Some(s) if balanced => {
                let left = switch_at(g, &s).negative_edges().intersection(&h);
                if !left.is_empty() {
                    return Ok(Verdict::fail(format!("{h:?}: negative edges {left:?} remain")));
                }
            }
            None if !balanced => {}
            Some(_) => return Ok(Verdict::fail(format!("{h:?} is unbalanced but a switch set was returned"))),
            None => return Ok(Verdict::fail(format!("{h:?} is balanced but no switch set was returned"))),
        }
    }
    Ok(Verdict::pass())
}

fn disjoint_unbalanced_flow(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_two_edge_connected() || edge_disjoint_unbalanced_pair(g).is_none() {
        return Ok(Verdict::not_applicable());
    }
    let c = coloops(g);
    Ok(Verdict::check(c.is_empty(), || format!("coloops {c:?}")))
}

fn unbalanced_pair(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_eulerian() || crate::signing::is_balanced(g) || !is_flow_admissible(g) {
        return Ok(Verdict::not_applicable());
    }
    Ok(Verdict::check(edge_disjoint_unbalanced_pair(g).is_some(), || {
        "no two edge-disjoint unbalanced circuits".into()
    }))
}

fn odd_three_unbalanced(g: &SignedGraph) -> Result<Verdict> {
    if !g.is_eulerian() || g.negative_count().is_multiple_of(2) || !is_flow_admissible(g) {
        return Ok(Verdict::not_applicable());
    }
    Ok(Verdict::check(edge_disjoint_unbalanced_circuits(g, 3).is_some(), || {
        "no three edge-disjoint unbalanced circuits".into()
    }))
}

/// Minimum degree at least 4, 2-connected once loops are removed, and
/// flow-admissible.
pub fn meets_decomposition_hypotheses(g: &SignedGraph) -> bool {
    if !g.is_eulerian() || g.min_degree() < 4 || !is_flow_admissible(g) {
        return false;
    }
    let without_loops = g.all_edges().difference(&g.loops());
    g.spanning_subgraph(&without_loops).graph.is_two_connected()
}

fn adjacent_overlap(g: &SignedGraph) -> Result<Verdict> {
    if !meets_decomposition_hypotheses(g) {
        return Ok(Verdict::not_applicable());
    }
    for d in optimal_decompositions(g)? {
        let h = intersection_graph(g, &d);
        for (i, j) in h.edges() {
            let shared = h.shared(i, j);
            if (h.is_balanced(i) || h.is_balanced(j)) && !(1..=2).contains(&shared) {
                return Ok(Verdict::fail(format!(
                    "circuits {:?} and {:?} share {shared} vertices",
                    d.circuits()[i].edge_set(),
                    d.circuits()[j].edge_set()
                )));
            }
        }
    }
    Ok(Verdict::pass())
}

fn adjacent_necklace(g: &SignedGraph) -> Result<Verdict> {
    if !meets_decomposition_hypotheses(g) {
        return Ok(Verdict::not_applicable());
    }
    for d in optimal_decompositions(g)? {
        let h = intersection_graph(g, &d);
        for (i, j) in h.edges() {
            if h.is_balanced(i) || h.is_balanced(j) || h.shared(i, j) < 3 {
                continue;
            }
            let (a, b) = (d.circuits()[i].edge_set(), d.circuits()[j].edge_set());
            let union = g.edge_subgraph(&a.union(&b));
            if detect_necklace(&union.graph).is_none() {
                return Ok(Verdict::fail(format!("union of {a:?} and {b:?} is not a necklace")));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Re-checks a single instance, as when replaying a counterexample.
pub fn check_instance(property_name: &str, g: &SignedGraph) -> Result<Verdict> {
    property(property_name)?.check(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

/// An instance that failed or could not be decided, in edge-list format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub graph: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub property: String,
    pub filter: Filter,
    pub bounds: Option<SweepBounds>,
    pub instances: usize,
    pub passed: usize,
    pub not_applicable: usize,
    pub counterexamples: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
    pub min_cover_histogram: BTreeMap<u32, usize>,
}

impl SweepReport {
    /// No counterexamples and nothing left undecided.
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.inconclusive.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("property: {}\n", self.property));
        s.push_str(&format!("filter: {}\n", self.filter));
        if let Some(b) = self.bounds {
            s.push_str(&format!("max_vertices: {}\nmax_edges: {}\n", b.max_vertices, b.max_edges));
        }
        s.push_str(&format!("instances: {}\n", self.instances));
        s.push_str(&format!("passed: {}\n", self.passed));
        s.push_str(&format!("not_applicable: {}\n", self.not_applicable));
        s.push_str(&format!("counterexamples: {}\n", self.counterexamples.len()));
        s.push_str(&format!("inconclusive: {}\n", self.inconclusive.len()));
        if !self.min_cover_histogram.is_empty() {
            let h: Vec<String> = self
                .min_cover_histogram
                .iter()
                .map(|(k, n)| format!("{k}={n}"))
                .collect();
            s.push_str(&format!("min_cover_histogram: {}\n", h.join(" ")));
        }
        s.push_str(&format!("result: {}\n", if self.passed() { "pass" } else { "fail" }));
        for (label, list) in [("counterexample", &self.counterexamples), ("inconclusive", &self.inconclusive)] {
            for f in list {
                s.push_str(&format!("\n{label}: {}\n{}", f.detail, f.graph));
            }
        }
        s
    }
}

/// Generates the property's instance class within `bounds` and checks every
/// instance. `jobs` caps the worker threads; results keep generation order.
pub fn run_sweep(property_name: &str, bounds: SweepBounds, jobs: Option<usize>) -> Result<SweepReport> {
    let p = property(property_name)?;
    check_bounds(bounds.max_vertices, bounds.max_edges)?;
    let mut report = with_pool(jobs, || -> Result<SweepReport> {
        let instances = generate_instances(bounds.max_vertices, bounds.max_edges, p.filter)?;
        Ok(sweep(p, &instances))
    })??;
    report.bounds = Some(bounds);
    Ok(report)
}

/// Checks a property on a caller-supplied instance list.
pub fn run_sweep_on(property_name: &str, instances: &[SignedGraph], jobs: Option<usize>) -> Result<SweepReport> {
    let p = property(property_name)?;
    with_pool(jobs, || sweep(p, instances))
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::invalid("jobs must be positive")),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::invalid(format!("cannot start {j} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn sweep(p: &Property, instances: &[SignedGraph]) -> SweepReport {
    let verdicts: Vec<Result<Verdict>> = instances.par_iter().map(|g| p.check(g)).collect();
    let mut report = SweepReport {
        property: p.name.to_string(),
        filter: p.filter,
        bounds: None,
        instances: instances.len(),
        passed: 0,
        not_applicable: 0,
        counterexamples: Vec::new(),
        inconclusive: Vec::new(),
        min_cover_histogram: BTreeMap::new(),
    };
    for (g, v) in instances.iter().zip(verdicts) {
        let finding = |detail: String| Finding {
            graph: write_edge_list(g),
            detail,
        };
        match v {
            Ok(v) => {
                if let Some(k) = v.min_cover {
                    *report.min_cover_histogram.entry(k).or_default() += 1;
                }
                match v.outcome {
                    Outcome::Pass => report.passed += 1,
                    Outcome::NotApplicable => report.not_applicable += 1,
                    Outcome::Fail(detail) => report.counterexamples.push(finding(detail)),
                }
            }
            Err(e @ Error::ResourceLimit(_)) => report.inconclusive.push(finding(e.to_string())),
            Err(e) => report.counterexamples.push(finding(e.to_string())),
        }
    }
    report
}

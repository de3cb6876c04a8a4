//! Exact `k`-covers by signed circuits.
//!
//! A `k`-cover is a multiset of signed circuits containing every edge
//! exactly `k` times. Feasibility is the integer system `A x = k 1`,
//! `x >= 0`, over the edge/signed-circuit incidence matrix `A`. The solver
//! searches it depth first on the residual demand vector: it branches on
//! the edge with the fewest signed circuits that still fit, prunes when an
//! edge's demand cannot be met by the circuits that fit, and remembers
//! demand vectors already shown infeasible.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::circuits::{classify_signed_circuit, enumerate_signed_circuits, SignedCircuitKind};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// Search nodes allowed per query before reporting a resource limit.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMember {
    pub kind: SignedCircuitKind,
    pub edges: EdgeSet,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub k: u32,
    /// Fingerprint of the host graph (edges, endpoints and signs).
    pub host: u64,
    pub members: Vec<CoverMember>,
}

impl CoverCertificate {
    /// Total number of signed circuits counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.members.iter().map(|m| m.multiplicity).sum()
    }

    fn normalize(&mut self) {
        let mut merged: BTreeMap<(usize, EdgeSet), CoverMember> = BTreeMap::new();
        for m in self.members.drain(..) {
            if m.multiplicity == 0 {
                continue;
            }
            merged
                .entry((m.edges.len(), m.edges.clone()))
                .and_modify(|x| x.multiplicity += m.multiplicity)
                .or_insert(m);
        }
        self.members = merged.into_values().collect();
    }
}

/// FNV-1a over the edge list; certificates from different hosts do not combine.
pub fn host_fingerprint(g: &SignedGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(g.vertex_count() as u64);
    for e in g.edges() {
        eat(e.u.0 as u64);
        eat(e.v.0 as u64);
        eat(e.sign.is_negative() as u64);
    }
    h
}

/// Result of checking a certificate whose members are all signed circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub valid: bool,
    /// Coverage count per edge id.
    pub multiplicities: Vec<u32>,
}

/// A certificate member that is not a signed circuit of the host.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("member {member} ({edges:?}): {reason}")]
pub struct CoverRejection {
    pub member: usize,
    pub edges: EdgeSet,
    pub reason: String,
}

pub fn verify_cover(g: &SignedGraph, cert: &CoverCertificate) -> Result<CoverCheck, CoverRejection> {
    let mut mult = vec![0u32; g.edge_count()];
    for (i, m) in cert.members.iter().enumerate() {
        let reject = |reason: &str| CoverRejection {
            member: i,
            edges: m.edges.clone(),
            reason: reason.to_string(),
        };
        match classify_signed_circuit(g, &m.edges) {
            None => return Err(reject("not a signed circuit")),
            Some(kind) if kind != m.kind => return Err(reject("declared kind does not match")),
            Some(_) => {}
        }
        for e in m.edges.iter() {
            mult[e.index()] += m.multiplicity;
        }
    }
    let valid = cert.k > 0 && mult.iter().all(|&x| x == cert.k);
    Ok(CoverCheck {
        valid,
        multiplicities: mult,
    })
}

pub fn find_k_cover(g: &SignedGraph, k: u32) -> Result<Option<CoverCertificate>> {
    find_k_cover_with_budget(g, k, DEFAULT_NODE_BUDGET)
}

pub fn find_k_cover_with_budget(
    g: &SignedGraph,
    k: u32,
    budget: u64,
) -> Result<Option<CoverCertificate>> {
    let circuits = enumerate_signed_circuits(g);
    let sets: Vec<EdgeSet> = circuits.iter().map(|c| c.edge_set()).collect();
    let Some(counts) = solve(g.edge_count(), &sets, k, budget)? else {
        return Ok(None);
    };
    let mut cert = CoverCertificate {
        k,
        host: host_fingerprint(g),
        members: counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| CoverMember {
                kind: circuits[i].kind(),
                edges: sets[i].clone(),
                multiplicity: c,
            })
            .collect(),
    };
    cert.normalize();
    Ok(Some(cert))
}

/// Multiplicities `x` with `sum_c x_c [e in c] = k` for every edge, if any.
pub(crate) fn solve(edge_count: usize, sets: &[EdgeSet], k: u32, budget: u64) -> Result<Option<Vec<u32>>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if k > u8::MAX as u32 {
        return Err(Error::invalid(format!("k = {k} is too large")));
    }
    let members: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|e| e.index()).collect()).collect();
    let mut through = vec![Vec::new(); edge_count];
    for (i, m) in members.iter().enumerate() {
        for &e in m {
            through[e].push(i);
        }
    }
    let mut search = Search {
        members: &members,
        through: &through,
        failed: HashSet::new(),
        nodes: 0,
        budget,
        chosen: Vec::new(),
    };
    let mut demand = vec![k as u8; edge_count];
    if search.feasible(&mut demand)? {
        let mut counts = vec![0u32; sets.len()];
        for &c in &search.chosen {
            counts[c] += 1;
        }
        Ok(Some(counts))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    members: &'a [Vec<usize>],
    through: &'a [Vec<usize>],
    failed: HashSet<Vec<u8>>,
    nodes: u64,
    budget: u64,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, c: usize, demand: &[u8]) -> bool {
        self.members[c].iter().all(|&e| demand[e] > 0)
    }

    fn feasible(&mut self, demand: &mut Vec<u8>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::limit(format!(
                "cover search exceeded {} nodes",
                self.budget
            )));
        }
        let mut branch: Option<(usize, Vec<usize>)> = None;
        for e in 0..demand.len() {
            if demand[e] == 0 {
                continue;
            }
            let options: Vec<usize> = self.through[e]
                .iter()
                .copied()
                .filter(|&c| self.fits(c, demand))
                .collect();
            // the circuits through e can absorb at most this much demand
            let capacity: u32 = options
                .iter()
                .map(|&c| self.members[c].iter().map(|&f| demand[f]).min().unwrap_or(0) as u32)
                .sum();
            if capacity < demand[e] as u32 {
                return Ok(false);
            }
            if branch.as_ref().is_none_or(|(_, b)| options.len() < b.len()) {
                branch = Some((e, options));
            }
        }
        let Some((_, options)) = branch else {
            return Ok(true);
        };
        for c in options {
            for &f in &self.members[c] {
                demand[f] -= 1;
            }
            let known_bad = self.failed.contains(demand.as_slice());
            if !known_bad {
                self.chosen.push(c);
                if self.feasible(demand)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            for &f in &self.members[c] {
                demand[f] += 1;
            }
        }
        self.failed.insert(demand.clone());
        Ok(false)
    }
}

/// Least `k <= k_max` admitting a `k`-cover.
pub fn min_uniform_cover(g: &SignedGraph, k_max: u32) -> Result<Option<u32>> {
    min_uniform_cover_with_budget(g, k_max, DEFAULT_NODE_BUDGET)
}

pub fn min_uniform_cover_with_budget(g: &SignedGraph, k_max: u32, budget: u64) -> Result<Option<u32>> {
    if k_max == 0 {
        return Err(Error::invalid("k_max must be at least 1"));
    }
    let sets: Vec<EdgeSet> = enumerate_signed_circuits(g).iter().map(|c| c.edge_set()).collect();
    for k in 1..=k_max {
        if solve(g.edge_count(), &sets, k, budget)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Multiset union of two certificates of the same host; `k` adds up.
pub fn combine_covers(a: &CoverCertificate, b: &CoverCertificate) -> Result<CoverCertificate> {
    if a.k == 0 || b.k == 0 {
        return Err(Error::invalid("certificates must have positive k"));
    }
    if a.host != b.host {
        return Err(Error::invalid("certificates belong to different graphs"));
    }
    let mut out = CoverCertificate {
        k: a.k + b.k,
        host: a.host,
        members: a.members.iter().chain(&b.members).cloned().collect(),
    };
    out.normalize();
    Ok(out)
}

/// `times` copies of a certificate.
pub fn scale_cover(a: &CoverCertificate, times: u32) -> Result<CoverCertificate> {
    if times == 0 {
        return Err(Error::invalid("scale factor must be positive"));
    }
    let mut out = a.clone();
    out.k *= times;
    for m in &mut out.members {
        m.multiplicity *= times;
    }
    Ok(out)
}

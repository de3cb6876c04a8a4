//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.
//!
//! Pass an argument to run only the criteria whose label contains it.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signed_covers::circuits::{
    coloops, edge_disjoint_unbalanced_circuits, edge_disjoint_unbalanced_pair, enumerate_circuits,
    is_flow_admissible, theta_balance_profile,
};
use signed_covers::cover::{find_k_cover, min_uniform_cover, verify_cover, CoverCertificate};
use signed_covers::decomposition::{nonseparating_disjoint_circuit, optimal_decompositions, removable_edge};
use signed_covers::families::theta;
use signed_covers::necklace::{build_necklace, detect_necklace};
use signed_covers::signing::{balancing_switch_set, switch_at};
use signed_covers::survey::{canonical_form, generate_instances, Filter};
use signed_covers::{EdgeId, EdgeSet, Error, Sign, SignedGraph, SwitchSet, VertexId};

/// Wall-clock budget for the theorem sweep.
const THEOREM_SWEEP_BUDGET: Duration = Duration::from_secs(600);
/// Largest cover size the theorem sweep and min-cover scan consider.
const K_MAX: u32 = 6;
/// Least-cover bound for instances with an even number of negative edges.
const EVEN_BOUND: u32 = 2;
/// Randomized pairs checked for switching invariance.
const SWITCH_SAMPLES: usize = 1000;
const SEED: u64 = 0x5eed_c0de;

type Check = Result<String, String>;

struct Criterion {
    label: &'static str,
    run: fn() -> Check,
}

const CRITERIA: &[Criterion] = &[
    Criterion { label: "1 theorem sweep: 6-covers of flow-admissible signed Eulerian graphs", run: theorem_sweep },
    Criterion { label: "2 min-cover bound", run: min_cover_bound },
    Criterion { label: "3 necklaces have 1-covers by small circuits", run: necklace_suite },
    Criterion { label: "4 theta graphs never have exactly two balanced circuits", run: theta_profiles },
    Criterion { label: "5 nonseparating disjoint circuit", run: nonseparating_circuits },
    Criterion { label: "6 removable edge in 2-connected graphs", run: removable_edges },
    Criterion { label: "7 balancing switch sets", run: balancing_switches },
    Criterion { label: "8 edge-disjoint unbalanced circuits", run: disjoint_unbalanced },
    Criterion { label: "9 adjacent circuits of optimal decompositions", run: optimal_adjacency },
    Criterion { label: "10 cover solver agrees with exhaustive oracle", run: solver_oracle },
    Criterion { label: "11 switching invariance", run: switching_invariance },
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in CRITERIA {
        if !filters.is_empty() && !filters.iter().any(|f| c.label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({detail}) [{secs:.1}s]", c.label),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({detail}) [{secs:.1}s]", c.label);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn text(g: &SignedGraph) -> String {
    signed_covers::format::write_edge_list(g).replace('\n', "; ")
}

fn instances(max_v: usize, max_e: usize, filter: Filter) -> Vec<SignedGraph> {
    generate_instances(max_v, max_e, filter).expect("bounds within guards")
}

/// The certificate covers every edge exactly `k` times with oracle signed circuits.
fn oracle_accepts(g: &SignedGraph, cert: &CoverCertificate, k: u32, signed: &[EdgeSet]) -> bool {
    let mut mult = vec![0u32; g.edge_count()];
    for m in &cert.members {
        if !signed.contains(&m.edges) {
            return false;
        }
        for e in m.edges.iter() {
            mult[e.index()] += m.multiplicity;
        }
    }
    cert.k == k && mult.iter().all(|&x| x == k) && verify_cover(g, cert).is_ok_and(|r| r.valid)
}

fn is_eulerian(g: &SignedGraph) -> bool {
    let mut degree = vec![0usize; g.vertex_count()];
    for e in g.edge_ids() {
        let (u, v, _) = common::ends(g, e);
        degree[u] += 1;
        degree[v] += 1;
    }
    g.edge_count() > 0 && common::connected(g) && degree.iter().all(|d| d % 2 == 0)
}

fn theorem_sweep() -> Check {
    let start = Instant::now();
    let set = instances(5, 8, Filter::FlowAdmissibleEulerian);
    let mut inconclusive = 0;
    for g in &set {
        ensure(is_eulerian(g) && common::coloops(g).is_empty(), || {
            format!("instance outside the class: {}", text(g))
        })?;
        match find_k_cover(g, K_MAX) {
            Ok(Some(cert)) => ensure(oracle_accepts(g, &cert, K_MAX, &common::signed_circuits(g)), || {
                format!("certificate rejected for {}", text(g))
            })?,
            Ok(None) => return Err(format!("no {K_MAX}-cover for {}", text(g))),
            Err(Error::ResourceLimit(_)) => inconclusive += 1,
            Err(e) => return Err(format!("{e} on {}", text(g))),
        }
    }
    let elapsed = start.elapsed();
    ensure(inconclusive == 0, || format!("{inconclusive} inconclusive instances"))?;
    ensure(elapsed <= THEOREM_SWEEP_BUDGET, || format!("took {elapsed:?}"))?;
    ensure(!set.is_empty(), || "empty instance set".into())?;
    Ok(format!("{} classes with <= 5 vertices and <= 8 edges, 0 counterexamples, 0 inconclusive", set.len()))
}

fn min_cover_bound() -> Check {
    let set = instances(5, 8, Filter::FlowAdmissibleEulerian);
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    let mut even = 0;
    for g in &set {
        let k = match min_uniform_cover(g, K_MAX) {
            Ok(Some(k)) => k,
            Ok(None) => return Err(format!("no k-cover with k <= {K_MAX} for {}", text(g))),
            Err(e) => return Err(format!("{e} on {}", text(g))),
        };
        ensure((1..=K_MAX).contains(&k), || format!("least cover {k} for {}", text(g)))?;
        if g.negative_count() % 2 == 0 {
            even += 1;
            ensure(k <= EVEN_BOUND, || format!("even negative count but least cover {k} for {}", text(g)))?;
        }
        *histogram.entry(k).or_default() += 1;
    }
    let h: Vec<String> = histogram.iter().map(|(k, n)| format!("{k}:{n}")).collect();
    Ok(format!("{} classes, {even} with even negative count, least covers {}", set.len(), h.join(" ")))
}

fn necklace_suite() -> Check {
    let mut built = 0;
    for k in 3..=6usize {
        for mask in 0u32..1 << (2 * k) {
            let lengths: Vec<usize> = (0..2 * k).map(|i| 1 + (mask >> i & 1) as usize).collect();
            let neg = mask as usize % k;
            let g = build_necklace(k, &lengths, neg).map_err(|e| e.to_string())?;
            let s = detect_necklace(&g).ok_or_else(|| format!("not detected: {}", text(&g)))?;
            let expected: Vec<(usize, usize)> = lengths.chunks(2).map(|c| (c[0], c[1])).collect();
            let mut got = s.path_lengths();
            let mut want = expected.clone();
            got.iter_mut().for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
            want.iter_mut().for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
            got.sort();
            want.sort();
            ensure(s.length == k && got == want, || format!("wrong structure for {}", text(&g)))?;
            let cert = find_k_cover(&g, 1)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no 1-cover for {}", text(&g)))?;
            let smalls: BTreeSet<EdgeSet> = s.small_circuits.iter().map(|c| c.edge_set()).collect();
            let members: BTreeSet<EdgeSet> = cert.members.iter().map(|m| m.edges.clone()).collect();
            ensure(
                cert.size() == k as u32 && members == smalls && verify_cover(&g, &cert).is_ok_and(|r| r.valid),
                || format!("1-cover is not the {k} small circuits for {}", text(&g)),
            )?;
            built += 1;
        }
    }
    Ok(format!("{built} necklaces, k in 3..=6, path lengths 1..=2, exact"))
}

fn theta_profiles() -> Check {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut graphs = 0;
    for a in 1..=3 {
        for b in a..=3 {
            for c in b..=3 {
                let base = theta([a, b, c]);
                let m = base.edge_count();
                for mask in 0u32..1 << m {
                    let g = base.map_signs(|e, _| if mask >> e.0 & 1 == 1 { Sign::Negative } else { Sign::Positive });
                    let profile = theta_balance_profile(&g, &g.all_edges()).map_err(|e| e.to_string())?;
                    let circuits = common::circuits(&g);
                    let oracle = circuits.iter().filter(|c| common::balanced(&g, c)).count();
                    ensure(circuits.len() == 3 && profile == oracle, || {
                        format!("profile {profile} vs oracle {oracle} for {}", text(&g))
                    })?;
                    ensure(profile == 1 || profile == 3, || format!("profile {profile} for {}", text(&g)))?;
                    *seen.entry(profile).or_default() += 1;
                    graphs += 1;
                }
            }
        }
    }
    Ok(format!("{graphs} signed thetas with path lengths <= 3, profiles {seen:?}"))
}

fn nonseparating_circuits() -> Check {
    let set = instances(5, 8, Filter::Eulerian);
    let (mut graphs, mut pairs) = (0, 0);
    for g in set.iter().filter(|g| g.max_degree() >= 4) {
        let all = g.all_edges();
        let oracle_circuits = common::circuits(g);
        let circuits = enumerate_circuits(g);
        ensure(circuits.len() == oracle_circuits.len(), || format!("circuit count differs for {}", text(g)))?;
        for c in &circuits {
            let other = nonseparating_disjoint_circuit(g, c).map_err(|e| format!("{e} on {}", text(g)))?;
            let o = other.edge_set();
            let rest = all.difference(&o);
            let ok = oracle_circuits.contains(&o)
                && o.is_disjoint(&c.edge_set())
                && g.components_of(&rest).connected_up_to_isolated()
                && common::parts(g, &rest).len() == 1;
            ensure(ok, || format!("circuit {:?} gave {o:?} in {}", c.edge_set(), text(g)))?;
            pairs += 1;
        }
        graphs += 1;
    }
    Ok(format!("{graphs} Eulerian classes with a vertex of degree >= 4, {pairs} circuits"))
}

fn two_connected(g: &SignedGraph) -> bool {
    g.vertex_count() >= 3
        && common::connected(g)
        && g.vertices().all(|v| common::connected(&g.delete_vertices(&[v]).graph))
}

fn removable_edges() -> Check {
    let mut seen = BTreeSet::new();
    let mut graphs: Vec<SignedGraph> = Vec::new();
    for n in 3..=6u32 {
        let pairs: Vec<(u32, u32)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = SignedGraph::from_edges(
                n as usize,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &(a, b))| (a, b, Sign::Positive)),
            )
            .unwrap();
            if two_connected(&g) && seen.insert(canonical_form(&g).unwrap()) {
                graphs.push(g);
            }
        }
    }
    let simple = graphs.len();
    graphs.extend(instances(5, 8, Filter::All).into_iter().filter(two_connected));
    let mut checks = 0;
    for g in &graphs {
        for v in g.vertices() {
            let e = removable_edge(g, v).map_err(|err| format!("{err} at {} in {}", v.0, text(g)))?;
            let (a, b, _) = common::ends(g, e);
            let rest = g.delete_vertices(&[VertexId(a as u32), VertexId(b as u32)]).graph;
            ensure(a != v.index() && b != v.index() && common::connected(&rest), || {
                format!("vertex {} gave edge {e} in {}", v.0, text(g))
            })?;
            checks += 1;
        }
    }
    Ok(format!(
        "{simple} simple 2-connected graphs on 3..=6 vertices and {} multigraph classes, {checks} vertices",
        graphs.len() - simple
    ))
}

fn balancing_switches() -> Check {
    let mut set = instances(4, 6, Filter::All);
    set.extend(instances(5, 8, Filter::Eulerian));
    let (mut balanced, mut unbalanced) = (0usize, 0usize);
    for g in &set {
        let circuits = common::circuits(g);
        for h in common::subsets(g.edge_count()) {
            let is_balanced = circuits
                .iter()
                .filter(|c| c.is_subset(&h))
                .all(|c| c.iter().filter(|&e| g.sign(e) == Sign::Negative).count() % 2 == 0);
            match (balancing_switch_set(g, &h), is_balanced) {
                (Some(s), true) => {
                    let left = switch_at(g, &s).negative_edges().intersection(&h);
                    ensure(left.is_empty(), || format!("{h:?} keeps {left:?} in {}", text(g)))?;
                    balanced += 1;
                }
                (None, false) => unbalanced += 1,
                (got, _) => {
                    return Err(format!("{h:?}: switch set {got:?} but balanced = {is_balanced} in {}", text(g)))
                }
            }
        }
    }
    Ok(format!("{} graphs, {balanced} balanced and {unbalanced} unbalanced subgraphs", set.len()))
}

fn oracle_unbalanced_circuit(g: &SignedGraph, c: &EdgeSet) -> bool {
    common::is_circuit(g, c) && !common::balanced(g, c)
}

fn pairwise_disjoint(sets: &[EdgeSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

fn disjoint_unbalanced() -> Check {
    let (mut bridgeless, mut pair_checks, mut odd_checks) = (0, 0, 0);
    for g in instances(5, 8, Filter::All) {
        let all = g.all_edges();
        let two_edge = common::connected(&g)
            && g.edge_ids().all(|e| {
                let mut rest = all.clone();
                rest.remove(e);
                common::connected(&g.spanning_subgraph(&rest).graph)
            });
        let unbalanced: Vec<EdgeSet> = common::circuits(&g)
            .into_iter()
            .filter(|c| !common::balanced(&g, c))
            .collect();
        let oracle_pair = unbalanced
            .iter()
            .enumerate()
            .any(|(i, a)| unbalanced[i + 1..].iter().any(|b| a.is_disjoint(b)));
        let pair = edge_disjoint_unbalanced_pair(&g);
        ensure(pair.is_some() == oracle_pair, || format!("pair search disagrees on {}", text(&g)))?;
        if let Some((a, b)) = &pair {
            let sets = [a.edge_set(), b.edge_set()];
            ensure(
                sets.iter().all(|s| oracle_unbalanced_circuit(&g, s)) && pairwise_disjoint(&sets),
                || format!("bad pair in {}", text(&g)),
            )?;
        }
        if two_edge && pair.is_some() {
            ensure(common::coloops(&g).is_empty() && coloops(&g).is_empty(), || {
                format!("coloops in a 2-edge-connected graph with a disjoint unbalanced pair: {}", text(&g))
            })?;
            bridgeless += 1;
        }
        if !is_eulerian(&g) || !common::coloops(&g).is_empty() {
            continue;
        }
        if !common::balanced(&g, &all) {
            ensure(pair.is_some(), || format!("no disjoint unbalanced pair in {}", text(&g)))?;
            pair_checks += 1;
        }
        if g.negative_count() % 2 == 1 {
            let three = edge_disjoint_unbalanced_circuits(&g, 3)
                .ok_or_else(|| format!("no three disjoint unbalanced circuits in {}", text(&g)))?;
            let sets: Vec<EdgeSet> = three.iter().map(|c| c.edge_set()).collect();
            ensure(
                sets.len() == 3 && sets.iter().all(|s| oracle_unbalanced_circuit(&g, s)) && pairwise_disjoint(&sets),
                || format!("bad triple in {}", text(&g)),
            )?;
            odd_checks += 1;
        }
    }
    Ok(format!(
        "coloop-free: {bridgeless} graphs; unbalanced pair: {pair_checks} graphs; odd triple: {odd_checks} graphs"
    ))
}

fn vertex_set(g: &SignedGraph, c: &EdgeSet) -> BTreeSet<usize> {
    c.iter()
        .flat_map(|e| {
            let (u, v, _) = common::ends(g, e);
            [u, v]
        })
        .collect()
}

fn optimal_adjacency() -> Check {
    let (mut graphs, mut balanced_pairs, mut necklace_pairs) = (0, 0, 0);
    for g in instances(5, 10, Filter::Eulerian) {
        let mut degree = vec![0usize; g.vertex_count()];
        for e in g.edge_ids() {
            let (u, v, _) = common::ends(&g, e);
            degree[u] += 1;
            degree[v] += 1;
        }
        if degree.iter().any(|&d| d < 4) {
            continue;
        }
        let without_loops = g.all_edges().difference(&g.loops());
        let core = g.spanning_subgraph(&without_loops).graph;
        let bond = core.vertex_count() == 2 && core.edge_count() >= 2;
        if !(bond || two_connected(&core)) || !common::coloops(&g).is_empty() {
            continue;
        }
        graphs += 1;
        let all = common::decompositions(&g);
        let best = all
            .iter()
            .map(|d| (common::unbalanced_count(&g, d), d.len()))
            .max()
            .ok_or_else(|| format!("no decomposition of {}", text(&g)))?;
        let oracle: BTreeSet<Vec<EdgeSet>> = all
            .into_iter()
            .filter(|d| (common::unbalanced_count(&g, d), d.len()) == best)
            .collect();
        let found: BTreeSet<Vec<EdgeSet>> = optimal_decompositions(&g)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|d| {
                let mut v: Vec<EdgeSet> = d.circuits().iter().map(|c| c.edge_set()).collect();
                v.sort();
                v
            })
            .collect();
        ensure(found == oracle, || format!("optimal decompositions differ for {}", text(&g)))?;
        for d in &oracle {
            for (i, a) in d.iter().enumerate() {
                for b in &d[i + 1..] {
                    let shared = vertex_set(&g, a).intersection(&vertex_set(&g, b)).count();
                    if shared == 0 {
                        continue;
                    }
                    if common::balanced(&g, a) || common::balanced(&g, b) {
                        ensure(shared <= 2, || format!("{a:?} and {b:?} share {shared} vertices in {}", text(&g)))?;
                        balanced_pairs += 1;
                    } else if shared >= 3 {
                        let union = g.edge_subgraph(&a.union(b)).graph;
                        ensure(detect_necklace(&union).is_some(), || {
                            format!("{a:?} and {b:?} do not form a necklace in {}", text(&g))
                        })?;
                        necklace_pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{graphs} classes with <= 5 vertices and <= 10 edges meet the hypotheses; {balanced_pairs} adjacent pairs with a balanced member, {necklace_pairs} unbalanced pairs sharing >= 3 vertices"
    ))
}

fn solver_oracle() -> Check {
    let mut set = instances(3, 6, Filter::All);
    set.extend(instances(5, 8, Filter::Eulerian));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..120 {
        let m = 9 + i % 2;
        set.push(common::random_graph(&mut rng, 5, m, 0.15));
    }
    let mut feasible = 0;
    let mut checks = 0;
    for g in &set {
        let signed = common::signed_circuits(g);
        for k in 1..=3 {
            let found = find_k_cover(g, k).map_err(|e| format!("{e} on {}", text(g)))?;
            let oracle = common::cover_exists(g, k);
            ensure(found.is_some() == oracle, || {
                format!("k = {k}: solver {} oracle {oracle} on {}", found.is_some(), text(g))
            })?;
            if let Some(cert) = found {
                ensure(oracle_accepts(g, &cert, k, &signed), || format!("bad certificate for {}", text(g)))?;
                feasible += 1;
            }
            checks += 1;
        }
    }
    Ok(format!("{} graphs with <= 10 edges, {checks} queries for k <= 3, {feasible} feasible, exact agreement", set.len()))
}

fn switching_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut necklaces = 0;
    for i in 0..SWITCH_SAMPLES {
        let g = if i % 4 == 0 {
            let k = rng.gen_range(3..=4);
            let lengths: Vec<usize> = (0..2 * k).map(|_| rng.gen_range(1..=2)).collect();
            let base = build_necklace(k, &lengths, rng.gen_range(0..k)).unwrap();
            // occasionally break the signature so both outcomes occur
            if rng.gen_bool(0.3) {
                let e = EdgeId(rng.gen_range(0..base.edge_count() as u32));
                base.map_signs(|f, s| if f == e { s.flip() } else { s })
            } else {
                base
            }
        } else {
            let m = rng.gen_range(1..=8);
            common::random_graph(&mut rng, 5, m, 0.2)
        };
        let s: SwitchSet = g.vertices().filter(|_| rng.gen_bool(0.5)).collect();
        let h = switch_at(&g, &s);
        for c in enumerate_circuits(&g) {
            ensure(c.is_balanced(&g) == c.is_balanced(&h), || format!("circuit {:?} changed in {}", c.edge_set(), text(&g)))?;
        }
        ensure(is_flow_admissible(&g) == is_flow_admissible(&h), || format!("flow-admissibility changed for {}", text(&g)))?;
        let (a, b) = (min_uniform_cover(&g, K_MAX), min_uniform_cover(&h, K_MAX));
        ensure(a == b, || format!("least cover {a:?} vs {b:?} for {}", text(&g)))?;
        let (x, y) = (detect_necklace(&g), detect_necklace(&h));
        ensure(x.as_ref().map(|n| n.length) == y.as_ref().map(|n| n.length), || {
            format!("necklace detection changed for {}", text(&g))
        })?;
        necklaces += x.is_some() as usize;
    }
    Ok(format!("{SWITCH_SAMPLES} graph/switch-set pairs, {necklaces} necklaces among them, exact"))
}

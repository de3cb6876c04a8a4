//! Small named graphs used in examples, tests and the CLI.

use crate::graph::{Sign, SignedGraph};

/// Triangle on vertices 0, 1, 2 with edges `01`, `12`, `20` in that order.
pub fn triangle(signs: [Sign; 3]) -> SignedGraph {
    SignedGraph::from_edges(3, [(0, 1, signs[0]), (1, 2, signs[1]), (2, 0, signs[2])])
        .expect("valid endpoints")
}

/// Two loops at a single vertex.
pub fn figure_eight(first: Sign, second: Sign) -> SignedGraph {
    SignedGraph::from_edges(1, [(0, 0, first), (0, 0, second)]).expect("valid endpoints")
}

/// `count` loops at a single vertex.
pub fn bouquet(signs: &[Sign]) -> SignedGraph {
    SignedGraph::from_edges(1, signs.iter().map(|&s| (0, 0, s))).expect("valid endpoints")
}

/// Two triangles `0-1-2` and `0-3-4` sharing vertex 0.
/// Edges 0..3 belong to the first triangle, 3..6 to the second.
pub fn bowtie(signs: [Sign; 6]) -> SignedGraph {
    SignedGraph::from_edges(
        5,
        [
            (0, 1, signs[0]),
            (1, 2, signs[1]),
            (2, 0, signs[2]),
            (0, 3, signs[3]),
            (3, 4, signs[4]),
            (4, 0, signs[5]),
        ],
    )
    .expect("valid endpoints")
}

/// Parallel edges between vertices 0 and 1.
pub fn bond(signs: &[Sign]) -> SignedGraph {
    SignedGraph::from_edges(2, signs.iter().map(|&s| (0, 1, s))).expect("valid endpoints")
}

/// All-positive cycle `0-1-..-(n-1)-0`. Needs `n >= 1`; `n = 1` is a loop, `n = 2` a digon.
pub fn cycle(n: usize) -> SignedGraph {
    SignedGraph::from_edges(
        n,
        (0..n as u32).map(|i| (i, (i + 1) % n as u32, Sign::Positive)),
    )
    .expect("valid endpoints")
}

/// All-positive complete graph.
pub fn complete(n: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            edges.push((i, j, Sign::Positive));
        }
    }
    SignedGraph::from_edges(n, edges).expect("valid endpoints")
}

/// All-positive theta graph: vertices 0 and 1 joined by three internally
/// disjoint paths with the given lengths (each `>= 1`). Edges are numbered
/// path by path, from vertex 0 towards vertex 1.
pub fn theta(lengths: [usize; 3]) -> SignedGraph {
    let mut edges = Vec::new();
    let mut next = 2u32;
    for &len in &lengths {
        assert!(len >= 1, "theta paths need at least one edge");
        let mut prev = 0u32;
        for step in 0..len {
            let to = if step + 1 == len {
                1
            } else {
                next += 1;
                next - 1
            };
            edges.push((prev, to, Sign::Positive));
            prev = to;
        }
    }
    SignedGraph::from_edges(next as usize, edges).expect("valid endpoints")
}

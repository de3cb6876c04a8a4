pub use crate::families::*;

use proptest::prelude::*;

use crate::graph::{Sign, SignedGraph};

/// Random signed multigraphs with loops and parallel edges.
pub fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_v).prop_flat_map(move |n| {
        proptest::collection::vec((0..n as u32, 0..n as u32, any::<bool>()), 0..=max_e).prop_map(
            move |edges| {
                SignedGraph::from_edges(
                    n,
                    edges.into_iter().map(|(u, v, neg)| {
                        (u, v, if neg { Sign::Negative } else { Sign::Positive })
                    }),
                )
                .unwrap()
            },
        )
    })
}

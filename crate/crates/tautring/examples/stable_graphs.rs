//! Stable graphs: enumeration, canonical forms, and automorphisms.
//!
//! Stable graphs index the boundary strata of moduli of curves. This
//! example enumerates them for small (g, n), shows canonical labelling at
//! work, and counts automorphisms (which fix legs pointwise).

use tautring::graph::{enumerate_stable_graphs, StableGraph, Vertex};

fn main() {
    println!("stable graphs by number of edges:");
    for (g, n) in [(0u32, 4u32), (0, 5), (1, 1), (1, 2), (2, 0)] {
        // A stable graph has at most 3g - 3 + n edges (the dimension).
        let max_edges = (3 * g + n - 3) as usize;
        let graphs = enumerate_stable_graphs(g, n, max_edges);
        let mut by_edges = std::collections::BTreeMap::new();
        for graph in graphs.iter() {
            *by_edges.entry(graph.edges.len()).or_insert(0usize) += 1;
        }
        println!(
            "  (g,n) = ({g},{n}): {} total, {:?}",
            graphs.len(),
            by_edges
        );
    }

    // Automorphisms fix legs pointwise: the two-marking loop has the
    // half-edge swap, giving order 2; adding distinct legs to a separating
    // graph leaves only the identity.
    println!();
    let lollipop = StableGraph::new(
        vec![Vertex {
            genus: 0,
            legs: vec![1, 2],
        }],
        vec![(0, 0)],
    )
    .unwrap();
    println!("loop on (1,2): |Aut| = {}", lollipop.automorphism_count());
    assert_eq!(lollipop.automorphism_count(), 2);

    let theta = StableGraph::new(
        vec![
            Vertex {
                genus: 0,
                legs: vec![],
            },
            Vertex {
                genus: 0,
                legs: vec![],
            },
        ],
        vec![(0, 1), (0, 1), (0, 1)],
    )
    .unwrap();
    println!(
        "theta graph (two vertices, three parallel edges): |Aut| = {}",
        theta.automorphism_count()
    );
    // 3! edge permutations times the vertex swap.
    assert_eq!(theta.automorphism_count(), 12);

    // Canonical form identifies relabelled copies of the same graph.
    let left = StableGraph::new(
        vec![
            Vertex {
                genus: 1,
                legs: vec![1],
            },
            Vertex {
                genus: 0,
                legs: vec![2, 3, 4],
            },
        ],
        vec![(0, 1)],
    )
    .unwrap();
    let right = StableGraph::new(
        vec![
            Vertex {
                genus: 0,
                legs: vec![2, 3, 4],
            },
            Vertex {
                genus: 1,
                legs: vec![1],
            },
        ],
        vec![(1, 0)],
    )
    .unwrap();
    assert_eq!(left.canonical_form(), right.canonical_form());
    println!();
    println!("relabelled copies share a canonical form: ok");

    // Contracting an edge merges its endpoints (or adds genus on a loop).
    let contraction = tautring::graph::contract_edges(&theta, &[false, true, true]);
    println!(
        "contracting one theta edge: {} vertex, first Betti {}",
        contraction.graph.vertices.len(),
        contraction.graph.first_betti()
    );
    assert_eq!(contraction.graph.vertices.len(), 1);
    assert_eq!(contraction.graph.first_betti(), 2);

    println!();
    println!("all checks passed");
}

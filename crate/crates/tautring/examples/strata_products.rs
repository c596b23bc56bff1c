//! Products of decorated boundary strata via excess intersection.
//!
//! Multiplies boundary divisors and psi-classes on small moduli spaces and
//! evaluates the results against hand-computed intersection numbers,
//! including the self-intersections that need the excess factor
//! (-psi' - psi'') on shared edges.

use tautring::graph::{StableGraph, Vertex};
use tautring::rational::{format_q, q_ratio};
use tautring::strata::{Space, TautClass};

fn boundary(space: Space, vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> TautClass {
    let graph = StableGraph::new(vertices, edges).unwrap();
    TautClass::boundary(space, &graph).unwrap()
}

fn main() {
    // Pairwise products of boundary divisors on the five-pointed genus-0
    // space. D_{ij} is the divisor whose generic curve has a bubble
    // carrying markings i and j.
    let s05 = Space::new(0, 5).unwrap();
    let d = |i: u32, j: u32| {
        let rest: Vec<u32> = (1..=5).filter(|&l| l != i && l != j).collect();
        boundary(
            s05,
            vec![
                Vertex {
                    genus: 0,
                    legs: vec![i, j],
                },
                Vertex {
                    genus: 0,
                    legs: rest,
                },
            ],
            vec![(0, 1)],
        )
    };
    println!("on the (0,5) space, dim 2:");
    for ((i, j), (k, l), expect) in [
        ((1, 2), (1, 2), (-1, 1)), // self-intersection via excess
        ((1, 2), (1, 3), (0, 1)),  // incompatible splits
        ((1, 2), (4, 5), (1, 1)),  // transverse pair
    ] {
        let product = d(i, j).multiply(&d(k, l));
        let value = product.evaluate();
        println!("  D_{{{i}{j}}} . D_{{{k}{l}}} = {}", format_q(&value));
        assert_eq!(value, q_ratio(expect.0, expect.1));
    }

    // Genus one with two markings: the irreducible boundary (a loop) and
    // the separating boundary (an elliptic tail).
    let s12 = Space::new(1, 2).unwrap();
    let irr = boundary(
        s12,
        vec![Vertex {
            genus: 0,
            legs: vec![1, 2],
        }],
        vec![(0, 0)],
    );
    let sep = boundary(
        s12,
        vec![
            Vertex {
                genus: 0,
                legs: vec![1, 2],
            },
            Vertex {
                genus: 1,
                legs: vec![],
            },
        ],
        vec![(0, 1)],
    );
    let psi1 = TautClass::psi(s12, 1).unwrap();
    println!();
    println!("on the (1,2) space, dim 2:");
    let table: Vec<(&str, TautClass, (i64, i64))> = vec![
        ("delta_irr . delta_irr", irr.multiply(&irr), (0, 1)),
        ("delta_irr . delta_sep", irr.multiply(&sep), (1, 2)),
        ("delta_sep . delta_sep", sep.multiply(&sep), (-1, 24)),
        ("psi_1 . delta_irr", psi1.multiply(&irr), (1, 2)),
        ("psi_1 . delta_sep", psi1.multiply(&sep), (0, 1)),
        (
            "psi_1 . psi_2",
            psi1.multiply(&TautClass::psi(s12, 2).unwrap()),
            (1, 24),
        ),
    ];
    for (name, product, expect) in table {
        let value = product.evaluate();
        println!("  {name} = {}", format_q(&value));
        assert_eq!(value, q_ratio(expect.0, expect.1));
    }

    // The stored form of a product keeps decorated strata with exact
    // stabilizer-normalized coefficients; show one example.
    println!();
    println!("stored terms of delta_irr . delta_sep:");
    let product = irr.multiply(&sep);
    for (stratum, coeff) in product.terms() {
        println!("  {}  *  {stratum}", format_q(coeff));
    }

    println!();
    println!("all checks passed");
}

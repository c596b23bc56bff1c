//! Stabilizing piecewise linear functions on genus-0 tropical curves.
//!
//! For a tree with balanced leg slopes there is a unique PL function with
//! those slopes, balanced at every vertex, vanishing at the first marking.
//! The difference delta of its values at the last two markings is a linear
//! form in the edge and leg lengths; its ray slopes map under phi to a
//! divisor class that vanishes, reproducing the genus-0 relation.

use std::collections::BTreeMap;

use tautring::rational::format_q;
use tautring::strata::Space;
use tautring::tropical::{
    balanced, delta, delta_ray_slopes, glued_edge_slope, phi, stabilizing_pl, Ray, TropicalCurve,
};

fn main() {
    // The three two-vertex trees on four markings, A = (1, 2, 3, -6).
    let a = [1i64, 2, 3, -6];
    println!("delta on the (0,4) trees, A = {a:?}, k = 0:");
    for side in [vec![1u32, 2], vec![1, 3], vec![1, 4]] {
        let curve = TropicalCurve::two_vertex(4, &side).unwrap();
        let d = delta(&curve, &a, 0).unwrap();
        let slope = glued_edge_slope(&curve, &a, 0).unwrap();
        println!("  split {{{side:?}}}:  delta = {d}   glued-edge slope = {slope}");
    }
    // Coefficients follow the closed forms a4 l4 - a3 l3 (+ edge term
    // (a2+a4) or -(a2+a3) on the crossing splits).

    // A larger tree with a twist: balancing holds at every vertex.
    println!();
    let graph = tautring::graph::StableGraph::new(
        vec![
            tautring::graph::Vertex {
                genus: 0,
                legs: vec![1, 2],
            },
            tautring::graph::Vertex {
                genus: 0,
                legs: vec![3, 6],
            },
            tautring::graph::Vertex {
                genus: 0,
                legs: vec![4, 5],
            },
        ],
        vec![(0, 1), (1, 2)],
    )
    .unwrap();
    let curve = TropicalCurve::new(graph).unwrap();
    let b = [3i64, -1, 4, 0, 1, 1]; // sums to k (n - 2) = 8
    let pl = stabilizing_pl(&curve, &b, 2).unwrap();
    assert!(balanced(&curve, &pl, 2));
    println!("caterpillar on (0,6), B = {b:?}, k = 2:");
    for (v, value) in pl.values.iter().enumerate() {
        println!("  vertex {v}: alpha = {value}");
    }
    println!("  edge slopes: {:?}", pl.edge_slopes);
    println!("  delta = {}", delta(&curve, &b, 2).unwrap());

    // The ray slopes of delta assemble to a vanishing divisor class.
    println!();
    let s04 = Space::new(0, 4).unwrap();
    let rays = delta_ray_slopes(s04, &a, 0).unwrap();
    println!("ray slopes of delta on (0,4):");
    for (ray, slope) in &rays {
        match ray {
            Ray::Leg(l) => println!("  leg l{l}: {slope}"),
            Ray::Split(side) => println!("  boundary {side:?}: {slope}"),
        }
    }
    let class = phi(s04, &rays).unwrap();
    println!(
        "  phi of the full map evaluates to {}",
        format_q(&class.evaluate())
    );
    assert!(class.evaluate() == tautring::rational::q_ratio(0, 1));

    // The leg rays alone reproduce the psi-difference: phi({l4: a4,
    // l3: -a3}) = a3 psi_3 - a4 psi_4.
    let mut legs_only: BTreeMap<Ray, i64> = BTreeMap::new();
    legs_only.insert(Ray::Leg(4), a[3]);
    legs_only.insert(Ray::Leg(3), -a[2]);
    let class = phi(s04, &legs_only).unwrap();
    println!();
    println!("phi of the leg rays alone:");
    for (stratum, coeff) in class.terms() {
        println!("  {}  *  {stratum}", format_q(coeff));
    }

    println!();
    println!("all checks passed");
}

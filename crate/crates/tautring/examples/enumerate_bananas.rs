//! Enumerating banana splitting data.
//!
//! A banana datum describes a two-vertex stable graph with parallel edges,
//! a distribution of the markings, and positive integer slopes on the
//! edges. The residue enumeration indexes data by an integer b and is empty
//! once |b| reaches an explicit bound; the oriented enumeration carries a
//! sign instead and feeds the divisor relation.

use tautring::banana::{
    all_residue_bananas, b_bound, oriented_bananas, residue_bananas, residue_bananas_empty,
};
use tautring::rational::format_q;
use tautring::strata::Space;

fn main() {
    // Residue mode on the four-pointed genus-0 space with A = (2, -2).
    let s04 = Space::new(0, 4).unwrap();
    let a = [2i64, -2];
    let bound = b_bound(s04, &a, 0);
    println!("residue data on (0,4), A = {a:?}, k = 0 (bound {bound}):");
    for datum in all_residue_bananas(s04, &a, 0).unwrap() {
        println!(
            "  b={:>2}  g=({},{})  legs=({:?},{:?})  slopes={:?}  |Aut|={}  weight={}",
            datum.b.unwrap(),
            datum.g1,
            datum.g2,
            datum.legs1,
            datum.legs2,
            datum.slopes,
            datum.aut_order(),
            format_q(&datum.weight()),
        );
    }
    // The bound is sharp here: b = 1 has data, b = 2 has none.
    assert!(!residue_bananas(s04, &a, 0, 1).unwrap().is_empty());
    assert!(residue_bananas_empty(s04, &a, 0, bound).unwrap());
    assert_eq!(all_residue_bananas(s04, &a, 0).unwrap().len(), 3);

    // A positive-genus target: gluing (1,3) gives genus 2. Multi-edge
    // bananas appear, with automorphisms from repeated slopes.
    let s13 = Space::new(1, 3).unwrap();
    let a = [3i64];
    println!();
    println!("residue data on (1,3), A = {a:?}, k = 1:");
    for datum in all_residue_bananas(s13, &a, 1).unwrap() {
        println!(
            "  b={:>2}  g=({},{})  edges={}  legs=({:?},{:?})  slopes={:?}  weight={}",
            datum.b.unwrap(),
            datum.g1,
            datum.g2,
            datum.edges(),
            datum.legs1,
            datum.legs2,
            datum.slopes,
            format_q(&datum.weight()),
        );
    }

    // Oriented mode on (0,4) with the full vector A = (1,1,1,-3): exactly
    // the data separating the last two markings, each with a sign.
    let a = [1i64, 1, 1, -3];
    println!();
    println!("oriented data on (0,4), A = {a:?}, k = 0:");
    let oriented = oriented_bananas(s04, &a, 0).unwrap();
    for (datum, sign) in &oriented {
        println!(
            "  s={sign:>2}  legs=({:?},{:?})  slopes={:?}  weight={}",
            datum.legs1,
            datum.legs2,
            datum.slopes,
            format_q(&datum.weight()),
        );
    }
    assert_eq!(oriented.len(), 2);

    println!();
    println!("all checks passed");
}

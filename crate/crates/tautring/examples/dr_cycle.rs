//! Double ramification cycles in the stratum basis.
//!
//! Computes DR cycles from the polynomial r-interpolation of the weighted
//! graph sum and checks stored forms and pairings against known values:
//! the genus-1 cycle in closed form, its pairing with psi, and the
//! lambda-class specialization at A = 0.

use tautring::dr::dr_cycle;
use tautring::rational::{format_q, q_ratio};
use tautring::strata::{Space, TautClass};

fn main() {
    // Genus 1, two markings with slopes (a, -a):
    //   DR_1(a, -a) = a^2/2 psi_1 + a^2/2 psi_2 - 1/12 [loop] - 0 [sep]
    // in the stabilizer-normalized basis.
    let s12 = Space::new(1, 2).unwrap();
    for a in 1..=3i64 {
        let cycle = dr_cycle(s12, &[a, -a], 0).unwrap();
        println!("DR_1({a}, {}) has {} stored terms:", -a, cycle.num_terms());
        for (stratum, coeff) in cycle.terms() {
            println!("  {}  *  {stratum}", format_q(coeff));
        }
        // Pair with psi_1: integral is (a^2 - 1)/24.
        let against_psi = cycle.multiply(&TautClass::psi(s12, 1).unwrap()).evaluate();
        println!("  <DR_1 . psi_1> = {}", format_q(&against_psi));
        assert_eq!(against_psi, q_ratio(a * a - 1, 24));
        println!();
    }

    // A = 0 specializes to (-1)^g lambda_g. In genus 1 the only stored term
    // is -1/12 times the irreducible boundary (the loop graph).
    let zero = dr_cycle(s12, &[0, 0], 0).unwrap();
    println!("DR_1(0, 0) = -lambda_1:");
    for (stratum, coeff) in zero.terms() {
        println!("  {}  *  {stratum}", format_q(coeff));
    }
    assert_eq!(zero.num_terms(), 1);

    // A twisted example: slopes (2, 0) with k = 1, so sum A = k(2g-2+n).
    let twisted = dr_cycle(s12, &[2, 0], 1).unwrap();
    println!();
    println!("DR_1((2, 0), k=1):");
    for (stratum, coeff) in twisted.terms() {
        println!("  {}  *  {stratum}", format_q(coeff));
    }

    // Genus 2 without markings: a degree-2 cycle on a dim-3 space.
    let s20 = Space::new(2, 0).unwrap();
    let g2 = dr_cycle(s20, &[], 0).unwrap();
    println!();
    println!(
        "DR_2() on the unmarked genus-2 space: degree {}, {} stored terms",
        g2.top_degree().unwrap(),
        g2.num_terms()
    );
    assert_eq!(g2.top_degree(), Some(2));
    assert!(!g2.is_zero());

    println!();
    println!("all checks passed");
}

//! Verifying the tautological relation tied to the splitting formula.
//!
//! On the unglued space, the difference of psi-terms times the DR cycle
//! cancels against a signed sum of boundary pushforwards of DR products
//! over oriented banana data. The identity is checked by pairing the
//! combined class against a spanning set and demanding exact zero.

use tautring::rational::{format_q, q_ratio};
use tautring::splitting::{oriented_banana_term, psi_difference_term, verify_relation};
use tautring::strata::Space;

fn main() {
    // Four markings, A = (1,1,1,-3): both components pair to -/+ 4 against
    // the fundamental class, and the relation closes to zero.
    let s04 = Space::new(0, 4).unwrap();
    let a = [1i64, 1, 1, -3];
    let psi_term = psi_difference_term(s04, &a, 0).unwrap();
    let banana_term = oriented_banana_term(s04, &a, 0).unwrap();
    println!("(0,4), A = {a:?}:");
    println!(
        "  psi-difference term evaluates to {}",
        format_q(&psi_term.evaluate())
    );
    println!(
        "  oriented banana term evaluates to {}",
        format_q(&banana_term.evaluate())
    );
    assert_eq!(psi_term.evaluate(), q_ratio(-4, 1));
    assert_eq!(banana_term.evaluate(), q_ratio(4, 1));
    let v = verify_relation(s04, &a, 0).unwrap();
    for p in &v.pairings {
        println!(
            "  {}  = {}  {}",
            p.test,
            format_q(&p.lhs),
            if p.ok() { "ok" } else { "MISMATCH" }
        );
    }
    assert!(v.ok());

    // Five markings, a spread of vectors summing to zero.
    println!();
    let s05 = Space::new(0, 5).unwrap();
    for a in [
        [1i64, 2, 3, -4, -2],
        [5, -1, -1, -1, -2],
        [2, 2, -1, -1, -2],
    ] {
        let v = verify_relation(s05, &a, 0).unwrap();
        println!(
            "(0,5), A = {a:?}: {} pairings, {}",
            v.pairings.len(),
            if v.ok() { "all zero" } else { "MISMATCH" }
        );
        assert!(v.ok());
    }

    // A twisted positive-genus case: (1,2) with A = (3,-1), k = 1, so
    // sum A = k (2g - 2 + n) = 2. The two components evaluate to -/+ 1/2.
    println!();
    let s12 = Space::new(1, 2).unwrap();
    let a = [3i64, -1];
    let psi_term = psi_difference_term(s12, &a, 1).unwrap();
    let banana_term = oriented_banana_term(s12, &a, 1).unwrap();
    println!("(1,2), A = {a:?}, k = 1:");
    println!(
        "  psi-difference term evaluates to {}",
        format_q(&psi_term.evaluate())
    );
    println!(
        "  oriented banana term evaluates to {}",
        format_q(&banana_term.evaluate())
    );
    assert_eq!(psi_term.evaluate(), q_ratio(-1, 2));
    assert_eq!(banana_term.evaluate(), q_ratio(1, 2));
    let v = verify_relation(s12, &a, 1).unwrap();
    println!(
        "  relation: {} pairings, {}",
        v.pairings.len(),
        if v.ok() { "all zero" } else { "MISMATCH" }
    );
    assert!(v.ok());

    println!();
    println!("all checks passed");
}

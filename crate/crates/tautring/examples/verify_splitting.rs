//! Verifying the splitting of a pulled-back double ramification cycle.
//!
//! Gluing the last two markings raises genus by one; the pullback of the
//! DR cycle on the glued space decomposes as a weighted sum of boundary
//! pushforwards of products of two smaller DR cycles over banana data.
//! The check pairs both sides against a spanning set of complementary-
//! degree tautological classes, all in exact rational arithmetic.

use tautring::rational::format_q;
use tautring::splitting::{banana_sum, verify_splitting};
use tautring::strata::Space;

fn main() {
    // Untwisted four-point case, slopes (a, -a). The banana sum lands in
    // closed form: a(a-1)/2 and a(a+1)/2 on the two separating divisors.
    let s04 = Space::new(0, 4).unwrap();
    for a in [1i64, 2, 3] {
        let v = verify_splitting(s04, &[a, -a], 0).unwrap();
        println!("(0,4), A = ({a}, {}):", -a);
        for p in &v.pairings {
            println!(
                "  {}  lhs = {}  rhs = {}  {}",
                p.test,
                format_q(&p.lhs),
                format_q(&p.rhs),
                if p.ok() { "ok" } else { "MISMATCH" }
            );
        }
        assert!(v.ok());
    }

    // The banana sum itself on (0,4) with a = 2.
    println!();
    println!("banana sum on (0,4), A = (2,-2):");
    let sum = banana_sum(s04, &[2, -2], 0).unwrap();
    for (stratum, coeff) in sum.terms() {
        println!("  {}  *  {stratum}", format_q(coeff));
    }

    // A twisted case: k = 1 with A = (1, 1), so the glued cycle lives on
    // the two-pointed genus-1 space with twist.
    println!();
    println!("(0,4), A = (1,1), k = 1:");
    let v = verify_splitting(s04, &[1, 1], 1).unwrap();
    for p in &v.pairings {
        println!(
            "  {}  lhs = {}  rhs = {}  {}",
            p.test,
            format_q(&p.lhs),
            format_q(&p.rhs),
            if p.ok() { "ok" } else { "MISMATCH" }
        );
    }
    assert!(v.ok());

    // Five markings: 16 spanning pairings on the glued (1,3) space.
    println!();
    println!("(0,5), A = (1,2,-3):");
    let s05 = Space::new(0, 5).unwrap();
    let v = verify_splitting(s05, &[1, 2, -3], 0).unwrap();
    let nonzero = v
        .pairings
        .iter()
        .filter(|p| p.lhs != tautring::rational::q_ratio(0, 1))
        .count();
    println!(
        "  {} pairings, {} nonzero, all {}",
        v.pairings.len(),
        nonzero,
        if v.ok() { "ok" } else { "MISMATCH" }
    );
    assert!(v.ok());

    println!();
    println!("all checks passed");
}

//! Exact psi- and kappa-class intersection numbers on moduli of curves.
//!
//! Computes a few classical Witten-Kontsevich correlators through the
//! string-equation recursion and checks them against textbook values.

use std::collections::BTreeMap;

use tautring::integrals::{psi_integral, psi_kappa_integral};
use tautring::rational::{format_q, q_ratio};

fn main() {
    println!("psi correlators <tau_{{d1}} ... tau_{{dn}}>_g:");
    let cases: Vec<(u32, Vec<u32>, (i64, i64))> = vec![
        (0, vec![0, 0, 0], (1, 1)),
        (0, vec![1, 0, 0, 0], (1, 1)),
        (0, vec![2, 0, 0, 0, 0], (1, 1)),
        (0, vec![1, 1, 0, 0, 0], (2, 1)),
        (1, vec![1], (1, 24)),
        (1, vec![2, 0], (1, 24)),
        (1, vec![1, 1], (1, 24)),
        (2, vec![4], (1, 1152)),
        (2, vec![3, 2], (29, 5760)),
        (3, vec![7], (1, 82944)),
    ];
    for (g, ds, (p, q)) in cases {
        let value = psi_integral(g, &ds);
        println!("  g={g} d={ds:?}  ->  {}", format_q(&value));
        assert_eq!(value, q_ratio(p, q));
    }

    println!();
    println!("mixed psi-kappa integrals (kappa reduced to psi by pushforward):");
    type MixedCase = (u32, Vec<u32>, Vec<(u32, u32)>, (i64, i64));
    let mixed: Vec<MixedCase> = vec![
        // <kappa_1>_{1,1} = 1/24.
        (1, vec![0], vec![(1, 1)], (1, 24)),
        // <kappa_1^2>_{1,2} = 1/8.
        (1, vec![0, 0], vec![(1, 2)], (1, 8)),
        // <psi_1 kappa_1>_{1,2} = 1/12.
        (1, vec![1, 0], vec![(1, 1)], (1, 12)),
        // <kappa_2>_{1,2} = 1/24.
        (1, vec![0, 0], vec![(2, 1)], (1, 24)),
        // <kappa_1^2>_{0,5} = 5.
        (0, vec![0; 5], vec![(1, 2)], (5, 1)),
    ];
    for (g, ds, kappas, (p, q)) in mixed {
        let kappa: BTreeMap<u32, u32> = kappas.iter().copied().collect();
        let value = psi_kappa_integral(g, &ds, &kappa);
        println!(
            "  g={g} psi={ds:?} kappa={kappas:?}  ->  {}",
            format_q(&value)
        );
        assert_eq!(value, q_ratio(p, q));
    }

    println!();
    println!("all checks passed");
}

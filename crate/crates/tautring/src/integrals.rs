//! Integrals of psi and kappa monomials over moduli of stable curves.
//!
//! Pure psi integrals (Witten correlators) `<tau_{d_1} ... tau_{d_n}>_g` are
//! computed from the KdV recursion in the Dijkgraaf–Verlinde–Verlinde form,
//! seeded by `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24`. Kappa classes are
//! reduced to psi classes through the forgetful map: with
//! `kappa_b = pi_*(psi_{n+1}^{b+1})` and `pi^* kappa_b = kappa_b - psi_{n+1}^b`,
//!
//! ```text
//! < prod tau_{a_i} . kappa_{b_1} ... kappa_{b_m} >_{g,n}
//!   = sum over S subset of {2..m} of (-1)^{|S|}
//!     < prod tau_{a_i} . tau_{b_1 + 1 + sum_{j in S} b_j}
//!       . prod_{j not in S} kappa_{b_j} >_{g,n+1}
//! ```
//!
//! (terms with a psi_i D_{i,n+1} correction vanish against `psi_{n+1}^{>=1}`).
//! All results are exact rationals and memoized.

use num::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::rational::{factorial, odd_double_factorial, q_int, Q};

/// `<tau_{d_1} ... tau_{d_n}>_g`: the integral of `prod psi_i^{d_i}` over the
/// moduli of genus-`g` curves with `n` markings. Zero when the degree does not
/// match the dimension `3g - 3 + n` or the space does not exist.
pub fn psi_integral(g: u32, exponents: &[u32]) -> Q {
    let mut key = exponents.to_vec();
    key.sort_unstable();
    psi_sorted(g, key)
}

type Cache<K> = Lazy<Mutex<HashMap<K, Q>>>;

static PSI_CACHE: Cache<(u32, Vec<u32>)> = Lazy::new(|| Mutex::new(HashMap::new()));

fn psi_sorted(g: u32, key: Vec<u32>) -> Q {
    let n = key.len() as i64;
    if 2 * (g as i64) - 2 + n <= 0 {
        return Q::zero();
    }
    if key.iter().map(|&d| d as i64).sum::<i64>() != 3 * (g as i64) - 3 + n {
        return Q::zero();
    }
    if let Some(hit) = PSI_CACHE.lock().unwrap().get(&(g, key.clone())) {
        return hit.clone();
    }
    let value = psi_recurse(g, &key);
    PSI_CACHE.lock().unwrap().insert((g, key), value.clone());
    value
}

/// Genus 0 in closed form: `(n-3)! / prod d_i!`.
fn psi_genus0(key: &[u32]) -> Q {
    let n = key.len() as u64;
    let mut val = factorial(n - 3);
    for &d in key {
        val /= factorial(d as u64);
    }
    val
}

fn psi_recurse(g: u32, key: &[u32]) -> Q {
    if g == 0 {
        return psi_genus0(key);
    }
    if g == 1 && key == [1] {
        return q_int(1) / q_int(24);
    }
    // Recurse on the largest exponent via the DVV form of the KdV hierarchy:
    // with insertions tau_{k+1}, tau_{a_1}, ..., tau_{a_n},
    //
    //   (2k+3)!! <tau_{k+1} prod tau_{a_i}>_g
    //     = sum_j (2k+2a_j+1)!!/(2a_j-1)!! <tau_{a_j+k} prod_{i != j} tau_{a_i}>_g
    //     + 1/2 sum_{a+b=k-1} (2a+1)!!(2b+1)!! [ <tau_a tau_b prod tau_{a_i}>_{g-1}
    //         + sum_{g1+g2=g} sum_{I subset} <tau_a tau_I>_{g1} <tau_b tau_{I^c}>_{g2} ].
    let (pos, &dmax) = key
        .iter()
        .enumerate()
        .max_by_key(|&(_, &d)| d)
        .expect("nonempty: n = 0 was dimension-filtered for g >= 1");
    debug_assert!(dmax >= 1, "all-zero exponents only live on (0, 3)");
    let k = (dmax - 1) as i64;
    let rest: Vec<u32> = key
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &d)| d)
        .collect();

    let mut rhs = Q::zero();
    // Contact terms with each remaining insertion.
    for (j, &aj) in rest.iter().enumerate() {
        let coeff = odd_double_factorial(2 * k + 2 * (aj as i64) + 1)
            / odd_double_factorial(2 * (aj as i64) - 1);
        let mut sub: Vec<u32> = rest
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &d)| d)
            .collect();
        sub.push(aj + (k as u32));
        rhs += coeff * psi_integral(g, &sub);
    }
    // Boundary terms.
    let half = q_int(1) / q_int(2);
    for a in 0..k {
        let b = k - 1 - a;
        let coeff = odd_double_factorial(2 * a + 1) * odd_double_factorial(2 * b + 1);
        // Nonseparating.
        let mut sub = rest.clone();
        sub.push(a as u32);
        sub.push(b as u32);
        if g >= 1 {
            rhs += half.clone() * coeff.clone() * psi_integral(g - 1, &sub);
        }
        // Separating: distribute genus and the remaining insertions.
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0u32..(1 << rest.len()) {
                let mut part1 = vec![a as u32];
                let mut part2 = vec![b as u32];
                for (i, &d) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        part1.push(d);
                    } else {
                        part2.push(d);
                    }
                }
                rhs += half.clone()
                    * coeff.clone()
                    * psi_integral(g1, &part1)
                    * psi_integral(g2, &part2);
            }
        }
    }
    rhs / odd_double_factorial(2 * k + 3)
}

/// `< prod psi_i^{d_i} . prod kappa_j^{m_j} >_{g,n}` with `n = exponents.len()`.
/// Kappa indices must be >= 1.
pub fn psi_kappa_integral(g: u32, exponents: &[u32], kappa: &BTreeMap<u32, u32>) -> Q {
    let mut key_psi = exponents.to_vec();
    key_psi.sort_unstable();
    let key_kappa: Vec<(u32, u32)> = kappa
        .iter()
        .filter(|&(_, &m)| m > 0)
        .map(|(&j, &m)| (j, m))
        .collect();
    assert!(
        key_kappa.iter().all(|&(j, _)| j >= 1),
        "kappa_0 is not a generator here; rewrite it as 2g - 2 + n"
    );
    psi_kappa_sorted(g, key_psi, key_kappa)
}

type PkKey = (u32, Vec<u32>, Vec<(u32, u32)>);

static PK_CACHE: Cache<PkKey> = Lazy::new(|| Mutex::new(HashMap::new()));

fn psi_kappa_sorted(g: u32, psi: Vec<u32>, kappa: Vec<(u32, u32)>) -> Q {
    if kappa.is_empty() {
        return psi_sorted(g, psi);
    }
    let cache_key = (g, psi.clone(), kappa.clone());
    if let Some(hit) = PK_CACHE.lock().unwrap().get(&cache_key) {
        return hit.clone();
    }

    // Pull off one kappa_{b1} factor; the rest stays as a multiset with, per
    // index, a binomial count of ways to choose the subset S.
    let (b1, m1) = kappa[0];
    let mut rest: Vec<(u32, u32)> = kappa.clone();
    if m1 == 1 {
        rest.remove(0);
    } else {
        rest[0].1 -= 1;
    }

    let mut total = Q::zero();
    // Choose s_j copies of kappa_{b_j} from the remaining multiset.
    let choices: Vec<(u32, u32)> = rest.clone();
    type Frame = (usize, u32, Q, Vec<(u32, u32)>);
    let mut stack: Vec<Frame> = vec![(0, 0, Q::one(), vec![])];
    while let Some((idx, ssum, count, taken)) = stack.pop() {
        if idx == choices.len() {
            let sign = if taken.iter().map(|&(_, s)| s).sum::<u32>() % 2 == 1 {
                -Q::one()
            } else {
                Q::one()
            };
            let mut remaining: Vec<(u32, u32)> = Vec::new();
            for (&(j, m), &(_, s)) in choices.iter().zip(taken.iter()) {
                if m - s > 0 {
                    remaining.push((j, m - s));
                }
            }
            let mut psi_next = psi.clone();
            psi_next.push(b1 + 1 + ssum);
            psi_next.sort_unstable();
            total += sign * count * psi_kappa_sorted(g, psi_next, remaining);
            continue;
        }
        let (j, m) = choices[idx];
        for s in 0..=m {
            let ways = crate::rational::binomial(m as u64, s as u64);
            let mut taken_next = taken.clone();
            taken_next.push((j, s));
            stack.push((idx + 1, ssum + j * s, count.clone() * ways, taken_next));
        }
    }

    PK_CACHE.lock().unwrap().insert(cache_key, total.clone());
    total
}

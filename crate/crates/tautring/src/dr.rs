//! The double ramification cycle, computed from the r-spin graph sum.
//!
//! For a vector `A = (a_1, ..., a_n)` with `sum a_i = k (2g - 2 + n)`, the
//! cycle `DR_g(A, k)` is the degree-`g` part of a sum over stable graphs with
//! mod-`r` edge weightings, evaluated at the constant term in `r`:
//!
//! ```text
//! sum over (Gamma, w)  r^{-h1(Gamma)} / |Aut(Gamma)|  zeta_{Gamma*} [
//!     prod_i exp(a_i^2 psi_i / 2)
//!     . prod_v exp(-k^2 kappa_1(v) / 2)
//!     . prod_e (1 - exp(-w w' (psi' + psi'') / 2)) / (psi' + psi'')
//! ]
//! ```
//!
//! A weighting assigns `a_i mod r` to leg `i` and `t`, `r - t` to the two
//! halves of each edge, such that the weights around each vertex `v` sum to
//! `k (2g(v) - 2 + n(v)) mod r`. For `r` large the coefficient of each
//! decorated stratum is polynomial in `r` of degree at most `2g`; we sample
//! `2g + 2` values of `r`, interpolate, and read off the constant term. The
//! two interpolation windows of length `2g + 1` must agree, which makes every
//! call a self-check of polynomiality.

use num::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::graph::{compositions, enumerate_stable_graphs, End, Half, StableGraph};
use crate::rational::{factorial, lagrange_eval, q_int, q_ratio, Q};
use crate::strata::{DecoratedStratum, Decoration, Space, TautClass};
use crate::{invalid, Error, Result};

type DrKey = (u32, u32, Vec<i64>, i64);
static DR_CACHE: Lazy<Mutex<HashMap<DrKey, TautClass>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Validates the input of `DR_g(A, k)` on the space `(g, n)`.
pub fn check_dr_input(space: Space, a: &[i64], k: i64) -> Result<()> {
    if a.len() != space.n as usize {
        return Err(invalid!(
            "A has {} entries, expected n = {}",
            a.len(),
            space.n
        ));
    }
    let need = k * (2 * space.g as i64 - 2 + space.n as i64);
    let total: i64 = a.iter().sum();
    if total != need {
        return Err(invalid!(
            "sum of A is {total}, but k (2g - 2 + n) = {need} for (g, n) = {space}"
        ));
    }
    Ok(())
}

/// The smallest modulus used when sampling; weight arithmetic is polynomial
/// in `r` beyond this bound.
/// Smallest sampling modulus guaranteed admissible for this input.
pub fn r_base(space: Space, a: &[i64], k: i64) -> i64 {
    let abs_sum: i64 = a.iter().map(|x| x.abs()).sum();
    abs_sum + k.abs() * (2 * space.g as i64 - 2 + space.n as i64) + space.g as i64 + 2
}

/// The twisted double ramification cycle `DR_g(A, k)` as an exact
/// tautological class of degree `g` on `(g, n)`. Results are cached.
pub fn dr_cycle(space: Space, a: &[i64], k: i64) -> Result<TautClass> {
    check_dr_input(space, a, k)?;
    let key: DrKey = (space.g, space.n, a.to_vec(), k);
    if let Some(hit) = DR_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let out = dr_cycle_at_base(space, a, k, r_base(space, a, k))?;
    DR_CACHE.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// Uncached variant sampling the graph sum at moduli `base, base+1, ...`.
/// Any base beyond every |a_i| and |k|-weighted valence gives the same
/// cycle; exposing the choice lets diagnostics compare two bases directly.
pub fn dr_cycle_at_base(space: Space, a: &[i64], k: i64, base: i64) -> Result<TautClass> {
    check_dr_input(space, a, k)?;
    if base < r_base(space, a, k) {
        return Err(invalid!(
            "base modulus {base} is below the admissible start {}",
            r_base(space, a, k)
        ));
    }

    let g = space.g as usize;
    let rs: Vec<i64> = (0..2 * g + 2).map(|i| base + i as i64).collect();
    let samples: Vec<BTreeMap<DecoratedStratum, Q>> =
        rs.iter().map(|&r| rspin_sum(space, a, k, r)).collect();

    // Union of strata over the window; interpolate each coefficient.
    let mut keys: Vec<DecoratedStratum> = Vec::new();
    for s in &samples {
        for key in s.keys() {
            if !keys.contains(key) {
                keys.push(key.clone());
            }
        }
    }
    let mut out = TautClass::zero(space);
    let window = 2 * g + 1;
    for stratum in keys {
        let points: Vec<(Q, Q)> = rs
            .iter()
            .zip(samples.iter())
            .map(|(&r, s)| (q_int(r), s.get(&stratum).cloned().unwrap_or_else(Q::zero)))
            .collect();
        let first = lagrange_eval(&points[..window], &Q::zero());
        let last = lagrange_eval(&points[points.len() - window..], &Q::zero());
        if first != last {
            return Err(Error::Internal(format!(
                "r-interpolation windows disagree for stratum {stratum}: {first} vs {last}"
            )));
        }
        out.add_term(stratum, first);
    }
    Ok(out)
}

/// The degree-`g` part of the r-spin graph sum at a fixed modulus `r`, as a
/// map from canonical decorated strata to coefficients.
fn rspin_sum(space: Space, a: &[i64], k: i64, r: i64) -> BTreeMap<DecoratedStratum, Q> {
    let g = space.g;
    let mut out: BTreeMap<DecoratedStratum, Q> = BTreeMap::new();
    for gamma in enumerate_stable_graphs(space.g, space.n, g as usize).iter() {
        let ne = gamma.edges.len();
        let nv = gamma.vertices.len();
        let h1 = gamma.first_betti();
        let mut pref = q_int(1) / q_int(gamma.automorphism_count() as i64);
        for _ in 0..h1 {
            pref /= q_int(r);
        }
        // Residual weight target at each vertex, and leg contributions.
        let target: Vec<i64> = (0..nv)
            .map(|v| {
                let gv = gamma.vertices[v].genus as i64;
                let sv = gamma.valence(v) as i64;
                let legs: i64 = gamma.vertices[v]
                    .legs
                    .iter()
                    .map(|&l| a[(l - 1) as usize])
                    .sum();
                k * (2 * gv - 2 + sv) - legs
            })
            .collect();
        // Enumerate edge weights t in 1..r (the half at the smaller endpoint,
        // end A, carries t; the other carries r - t).
        let mut t = vec![1i64; ne];
        'weights: loop {
            if weights_admissible(gamma, &t, r, &target) {
                expand_weighting(gamma, a, k, r, &t, g - ne as u32, &pref, &mut out);
            }
            // Advance.
            let mut i = 0;
            loop {
                if i == ne {
                    break 'weights;
                }
                t[i] += 1;
                if t[i] < r {
                    break;
                }
                t[i] = 1;
                i += 1;
            }
        }
    }
    out
}

fn weights_admissible(gamma: &StableGraph, t: &[i64], r: i64, target: &[i64]) -> bool {
    let mut sum = vec![0i64; gamma.vertices.len()];
    for (e, &(va, vb)) in gamma.edges.iter().enumerate() {
        sum[va] += t[e];
        sum[vb] += r - t[e];
    }
    sum.iter()
        .zip(target.iter())
        .all(|(s, tgt)| (s - tgt).rem_euclid(r) == 0)
}

/// Adds all decoration monomials of total degree `budget` for one admissible
/// weighting, with their exact coefficients.
#[allow(clippy::too_many_arguments)]
fn expand_weighting(
    gamma: &StableGraph,
    a: &[i64],
    k: i64,
    r: i64,
    t: &[i64],
    budget: u32,
    pref: &Q,
    out: &mut BTreeMap<DecoratedStratum, Q>,
) {
    let n = a.len();
    let nv = gamma.vertices.len();
    let ne = gamma.edges.len();
    // Degree budget over: n legs, nv vertices (kappa_1 powers), ne edges.
    'comp: for comp in compositions(budget, n + nv + ne) {
        let mut coeff = pref.clone();
        let mut dec = Decoration::empty(nv);
        for (i, &ai) in a.iter().enumerate() {
            let m = comp[i];
            if m == 0 {
                continue;
            }
            if ai == 0 {
                continue 'comp;
            }
            let base = q_ratio(ai * ai, 2);
            coeff *= num::pow(base, m as usize) / factorial(m as u64);
            dec.leg_psi.insert((i + 1) as u32, m);
        }
        for v in 0..nv {
            let p = comp[n + v];
            if p == 0 {
                continue;
            }
            if k == 0 {
                continue 'comp;
            }
            let base = q_ratio(-k * k, 2);
            coeff *= num::pow(base, p as usize) / factorial(p as u64);
            dec.kappa[v].insert(1, p);
        }
        // Edge factors: degree-q coefficient (-1)^q c^{q+1} / (q+1)! with
        // c = t (r - t) / 2, then (psi' + psi'')^q split binomially.
        let qs: Vec<u32> = (0..ne).map(|e| comp[n + nv + e]).collect();
        for (e, &q) in qs.iter().enumerate() {
            let c = q_ratio(t[e] * (r - t[e]), 2);
            let sign = if q % 2 == 0 { q_int(1) } else { q_int(-1) };
            coeff *= sign * num::pow(c, q as usize + 1) / factorial(q as u64 + 1);
        }
        if coeff.is_zero() {
            continue;
        }
        // Binomial expansion of the edge psi powers onto the two halves.
        let mut monos: Vec<(Decoration, Q)> = vec![(dec, Q::one())];
        for (e, &q) in qs.iter().enumerate() {
            if q == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(monos.len() * (q as usize + 1));
            for (m, c) in &monos {
                for i in 0..=q {
                    let mut m2 = m.clone();
                    if i > 0 {
                        m2.half_psi.insert(Half::new(e, End::A), i);
                    }
                    if q - i > 0 {
                        m2.half_psi.insert(Half::new(e, End::B), q - i);
                    }
                    let binom = crate::rational::binomial(q as u64, i as u64);
                    next.push((m2, c * binom));
                }
            }
            monos = next;
        }
        for (d, mult) in monos {
            let canon = DecoratedStratum::canonical(gamma, &d);
            let stab = q_int(canon.stabilizer_order() as i64);
            let total = &coeff * mult * stab;
            *out.entry(canon).or_insert_with(Q::zero) += total;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{generators, TautClass};

    fn space(g: u32, n: u32) -> Space {
        Space::new(g, n).unwrap()
    }

    #[test]
    fn genus_zero_is_fundamental() {
        let c = dr_cycle(space(0, 4), &[3, -1, -1, -1], 0).unwrap();
        assert_eq!(c, TautClass::fundamental(space(0, 4)));
        // Twisting does not change degree zero.
        let c = dr_cycle(space(0, 4), &[2, 2, -1, -1], 1).unwrap();
        assert_eq!(c, TautClass::fundamental(space(0, 4)));
    }

    #[test]
    fn genus_one_two_points_stored_form() {
        // DR_1(a, -a): psi_1 and psi_2 with coefficient a^2/2, the loop
        // stratum with coefficient -1/12.
        let c = dr_cycle(space(1, 2), &[1, -1], 0).unwrap();
        assert_eq!(c.num_terms(), 3);
        let coeffs: Vec<Q> = c.terms().map(|(_, q)| q.clone()).collect();
        let mut expected = vec![q_ratio(-1, 12), q_ratio(1, 2), q_ratio(1, 2)];
        let mut got = coeffs.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn genus_one_pairings_match_closed_forms() {
        // <DR_1(a, -a) . psi_1> = (a^2 - 1) / 24 and <DR_1(a, -a) . delta_sep>
        // = -1/24 for every a.
        for aa in [0i64, 1, 2, 3] {
            let dr = dr_cycle(space(1, 2), &[aa, -aa], 0).unwrap();
            let psi1 = TautClass::psi(space(1, 2), 1).unwrap();
            assert_eq!(
                dr.multiply(&psi1).evaluate(),
                q_ratio(aa * aa - 1, 24),
                "psi pairing at a = {aa}"
            );
            let sep = TautClass::boundary(
                space(1, 2),
                &StableGraph::new(
                    vec![
                        crate::graph::Vertex {
                            genus: 0,
                            legs: vec![1, 2],
                        },
                        crate::graph::Vertex {
                            genus: 1,
                            legs: vec![],
                        },
                    ],
                    vec![(0, 1)],
                )
                .unwrap(),
            )
            .unwrap();
            assert_eq!(
                dr.multiply(&sep).evaluate(),
                q_ratio(-1, 24),
                "sep pairing at a = {aa}"
            );
        }
    }

    #[test]
    fn zero_vector_gives_minus_lambda() {
        // DR_1(0, 0) = -lambda_1 = -delta_irr / 12: a single loop term.
        let c = dr_cycle(space(1, 2), &[0, 0], 0).unwrap();
        assert_eq!(c.num_terms(), 1);
        let (s, q) = c.terms().next().unwrap();
        assert_eq!(s.graph.edges, vec![(0, 0)]);
        assert_eq!(q, &q_ratio(-1, 12));
    }

    #[test]
    fn lambda_vanishes_against_loop_pushforwards() {
        // DR_g(0; 0) = (-1)^g lambda_g restricts to zero on the boundary
        // divisor of irreducible nodal curves; pair against every generator
        // supported there. Tested on (2, 1) via explicit loop-bearing strata.
        let dr = dr_cycle(space(2, 1), &[0], 0).unwrap();
        let dim = space(2, 1).dim();
        for gen in generators(space(2, 1), dim - 2) {
            let (s, _) = gen.terms().next().unwrap();
            let has_loop = s.graph.edges.iter().any(|&(x, y)| x == y);
            if !has_loop {
                continue;
            }
            assert_eq!(
                dr.multiply(&gen).evaluate(),
                q_int(0),
                "ought to vanish on {s}"
            );
        }
    }

    #[test]
    fn no_marking_cycle_runs() {
        // DR_2 on the unpointed space: degree 2; interpolation self-check
        // passes and the class is nonzero (it is lambda_2).
        let c = dr_cycle(space(2, 0), &[], 0).unwrap();
        assert!(!c.is_zero());
        assert_eq!(c.top_degree(), Some(2));
    }

    #[test]
    fn rejects_unbalanced_input() {
        assert!(dr_cycle(space(1, 2), &[1, 1], 0).is_err());
        assert!(dr_cycle(space(0, 4), &[1, 1, 1, 1], 1).is_err());
        assert!(dr_cycle(space(1, 2), &[1], 0).is_err());
    }
}

//! Banana data: two-vertex stable graphs with parallel edges carrying
//! integer slopes, the combinatorial skeleton of the splitting of a double
//! ramification cycle pulled back along the loop gluing map.
//!
//! On the unglued space `(g, n)` a banana has vertices of genera `g_1`, `g_2`
//! joined by `E >= 1` edges with `g_1 + g_2 + E - 1 = g`. Two flavours:
//!
//! * **Residue data** (for the splitting itself): legs `n-1` and `n` sit on
//!   the first and second vertex; the remaining legs carry the entries of a
//!   vector `A` of length `n - 2`. For each integer `b` the edge slopes `B`
//!   are all positive when `b >= 0`, all negative when `b < 0`, and satisfy
//!
//!   ```text
//!   sum(B) = -b - sum of a_i on the first vertex + k (2 g_1 - 2 + n_1).
//!   ```
//!
//!   No data exist once `|b|` reaches `sum of the positive a_i` plus
//!   `|k| (2g - 2 + n)`; see [`b_bound`].
//!
//! * **Oriented data** (for the tautological relation): all `n` legs carry
//!   entries of a full vector `A`; slopes are positive and satisfy the same
//!   balance with `b = 0`; only splittings separating legs `n-1` and `n` are
//!   kept, with a sign recording which side leg `n` lies on.
//!
//! Each datum weighs `prod |slopes| / |Aut|`, where `Aut` permutes parallel
//! edges with equal slopes.

use serde::Serialize;
use std::collections::BTreeSet;

use crate::graph::{Leg, StableGraph, Vertex};
use crate::rational::{q_ratio, Q};
use crate::strata::Space;
use crate::{invalid, Result};

/// A banana graph with slope data, in normal form: slopes are sorted in
/// decreasing absolute value, so equal data compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BananaDatum {
    pub g1: u32,
    pub g2: u32,
    /// Original legs on the first vertex (excluding the distinguished leg in
    /// residue mode), sorted.
    pub legs1: Vec<Leg>,
    /// Original legs on the second vertex, sorted.
    pub legs2: Vec<Leg>,
    /// Edge slopes, measured from the first vertex; all nonzero, same sign.
    pub slopes: Vec<i64>,
    /// The residue parameter in residue mode.
    pub b: Option<i64>,
}

impl BananaDatum {
    /// Number of connecting edges.
    pub fn edges(&self) -> usize {
        self.slopes.len()
    }

    /// The underlying stable graph: vertex 0 first, all edges `(0, 1)`.
    pub fn graph(&self) -> Result<StableGraph> {
        let mut legs1 = self.legs1.clone();
        let mut legs2 = self.legs2.clone();
        if self.b.is_some() {
            let n = (legs1.len() + legs2.len() + 2) as Leg;
            legs1.push(n - 1);
            legs2.push(n);
        }
        StableGraph::new(
            vec![
                Vertex {
                    genus: self.g1,
                    legs: legs1,
                },
                Vertex {
                    genus: self.g2,
                    legs: legs2,
                },
            ],
            vec![(0, 1); self.slopes.len()],
        )
    }

    /// Order of the automorphism group fixing the slopes: parallel edges with
    /// equal slopes may permute.
    pub fn aut_order(&self) -> u64 {
        let mut total = 1u64;
        let mut run = 0u64;
        let mut prev: Option<i64> = None;
        for &s in &self.slopes {
            if Some(s) == prev {
                run += 1;
            } else {
                run = 1;
                prev = Some(s);
            }
            total *= run;
        }
        total
    }

    /// The weight `prod |slopes| / |Aut|`.
    pub fn weight(&self) -> Q {
        let mut num = 1i64;
        for &s in &self.slopes {
            num *= s.abs();
        }
        q_ratio(num, self.aut_order() as i64)
    }

    /// The balanced vectors carried by the two vertex moduli spaces, in slot
    /// order (sorted legs, then edge halves). In residue mode the
    /// distinguished legs carry `b` and `-b`; edge halves carry the slopes on
    /// the first vertex and their negatives on the second.
    pub fn part_vectors(&self, a: &[i64], k: i64) -> (Vec<i64>, Vec<i64>) {
        let mut c1: Vec<i64> = self.legs1.iter().map(|&l| a[(l - 1) as usize]).collect();
        let mut c2: Vec<i64> = self.legs2.iter().map(|&l| a[(l - 1) as usize]).collect();
        if let Some(b) = self.b {
            c1.push(b);
            c2.push(-b);
        }
        c1.extend(self.slopes.iter().copied());
        c2.extend(self.slopes.iter().map(|&s| -s));
        debug_assert_eq!(
            c1.iter().sum::<i64>(),
            k * (2 * self.g1 as i64 - 2 + c1.len() as i64),
            "first part vector must balance"
        );
        debug_assert_eq!(
            c2.iter().sum::<i64>(),
            k * (2 * self.g2 as i64 - 2 + c2.len() as i64),
            "second part vector must balance"
        );
        (c1, c2)
    }

    /// The moduli spaces of the two vertices.
    pub fn part_spaces(&self) -> (Space, Space) {
        let e = self.slopes.len() as u32;
        let extra = if self.b.is_some() { 1 } else { 0 };
        let s1 = Space {
            g: self.g1,
            n: self.legs1.len() as u32 + extra + e,
        };
        let s2 = Space {
            g: self.g2,
            n: self.legs2.len() as u32 + extra + e,
        };
        (s1, s2)
    }
}

/// The emptiness bound: residue data on `(g, n)` with vector `A` and twist
/// `k` exist only for `|b|` strictly below
/// `sum of positive a_i + |k| (2g - 2 + n)`.
pub fn b_bound(space: Space, a: &[i64], k: i64) -> i64 {
    let pos: i64 = a.iter().filter(|&&x| x > 0).sum();
    pos + k.abs() * (2 * space.g as i64 - 2 + space.n as i64)
}

/// Partitions of `total` into exactly `parts` positive summands, largest
/// first.
fn positive_partitions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(total: i64, parts: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = 1;
        let hi = (total - (parts as i64 - 1)).min(max);
        for first in (lo..=hi).rev() {
            cur.push(first);
            rec(total - first, parts - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts as i64 {
        rec(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// All subsets of `items`.
fn subsets(items: &[Leg]) -> Vec<Vec<Leg>> {
    let mut out = vec![vec![]];
    for &it in items {
        let mut more: Vec<Vec<Leg>> = out
            .iter()
            .map(|s| {
                let mut s2 = s.clone();
                s2.push(it);
                s2
            })
            .collect();
        out.append(&mut more);
    }
    out
}

/// Checks a residue-mode input: `A` has length `n - 2` on the unglued space
/// `(g, n)`, and the glued vector must balance with twist `k` upstairs.
pub fn check_residue_input(space: Space, a: &[i64], k: i64) -> Result<()> {
    if space.n < 2 {
        return Err(invalid!("residue data need n >= 2, got n = {}", space.n));
    }
    if a.len() + 2 != space.n as usize {
        return Err(invalid!(
            "A has {} entries, expected n - 2 = {}",
            a.len(),
            space.n - 2
        ));
    }
    let total: i64 = a.iter().sum();
    let need = k * (2 * (space.g as i64 + 1) - 2 + (space.n as i64 - 2));
    if total != need {
        return Err(invalid!(
            "sum of A is {total}, must equal k (2(g+1) - 2 + (n-2)) = {need}"
        ));
    }
    Ok(())
}

/// All residue data on `(g, n)` for a fixed residue `b`, in a deterministic
/// order. `A` has length `n - 2`.
pub fn residue_bananas(space: Space, a: &[i64], k: i64, b: i64) -> Result<Vec<BananaDatum>> {
    check_residue_input(space, a, k)?;
    let g = space.g;
    let n = space.n;
    let free: Vec<Leg> = (1..=n - 2).collect();
    let mut out = Vec::new();
    for g1 in 0..=g {
        for g2 in 0..=(g - g1) {
            let e = (g + 1 - g1 - g2) as usize;
            for legs1 in subsets(&free) {
                let legs2: Vec<Leg> = free
                    .iter()
                    .copied()
                    .filter(|l| !legs1.contains(l))
                    .collect();
                let n1 = legs1.len() as i64 + 1 + e as i64;
                let n2 = legs2.len() as i64 + 1 + e as i64;
                if 2 * g1 as i64 - 2 + n1 <= 0 || 2 * g2 as i64 - 2 + n2 <= 0 {
                    continue;
                }
                let a1: i64 = legs1.iter().map(|&l| a[(l - 1) as usize]).sum();
                let total = -b - a1 + k * (2 * g1 as i64 - 2 + n1);
                // Slopes share the sign of the branch: positive for b >= 0,
                // negative for b < 0.
                let parts = if b >= 0 {
                    positive_partitions(total, e)
                } else {
                    positive_partitions(-total, e)
                        .into_iter()
                        .map(|p| p.into_iter().map(|x| -x).collect())
                        .collect()
                };
                for slopes in parts {
                    out.push(BananaDatum {
                        g1,
                        g2,
                        legs1: legs1.clone(),
                        legs2: legs2.clone(),
                        slopes,
                        b: Some(b),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All residue data over every admissible `b` (those with `|b|` below
/// [`b_bound`]), flattened in order of increasing `b`.
pub fn all_residue_bananas(space: Space, a: &[i64], k: i64) -> Result<Vec<BananaDatum>> {
    check_residue_input(space, a, k)?;
    let bound = b_bound(space, a, k);
    let mut out = Vec::new();
    if bound > 0 {
        for b in (1 - bound)..bound {
            out.extend(residue_bananas(space, a, k, b)?);
        }
    }
    Ok(out)
}

/// All oriented data on `(g, n)` for a full vector `A` of length `n`,
/// together with the orientation sign: `+1` when leg `n` lies on the first
/// vertex and `n-1` on the second, `-1` for the opposite split. Splittings
/// keeping `n-1` and `n` together are omitted.
pub fn oriented_bananas(space: Space, a: &[i64], k: i64) -> Result<Vec<(BananaDatum, i64)>> {
    if a.len() != space.n as usize {
        return Err(invalid!(
            "A has {} entries, expected n = {}",
            a.len(),
            space.n
        ));
    }
    if space.n < 2 {
        return Err(invalid!("oriented data need n >= 2, got n = {}", space.n));
    }
    let total: i64 = a.iter().sum();
    let need = k * (2 * space.g as i64 - 2 + space.n as i64);
    if total != need {
        return Err(invalid!(
            "sum of A is {total}, must equal k (2g - 2 + n) = {need}"
        ));
    }
    let g = space.g;
    let n = space.n;
    let all: Vec<Leg> = (1..=n).collect();
    let mut out = Vec::new();
    for g1 in 0..=g {
        for g2 in 0..=(g - g1) {
            let e = (g + 1 - g1 - g2) as usize;
            for legs1 in subsets(&all) {
                let has = |set: &[Leg], l: Leg| set.contains(&l);
                let sign = match (has(&legs1, n - 1), has(&legs1, n)) {
                    (false, true) => 1,
                    (true, false) => -1,
                    _ => continue,
                };
                let legs2: Vec<Leg> = all.iter().copied().filter(|l| !legs1.contains(l)).collect();
                let n1 = legs1.len() as i64 + e as i64;
                let n2 = legs2.len() as i64 + e as i64;
                if 2 * g1 as i64 - 2 + n1 <= 0 || 2 * g2 as i64 - 2 + n2 <= 0 {
                    continue;
                }
                let a1: i64 = legs1.iter().map(|&l| a[(l - 1) as usize]).sum();
                let total = -a1 + k * (2 * g1 as i64 - 2 + n1);
                for slopes in positive_partitions(total, e) {
                    out.push((
                        BananaDatum {
                            g1,
                            g2,
                            legs1: legs1.clone(),
                            legs2: legs2.clone(),
                            slopes,
                            b: None,
                        },
                        sign,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Brute-force check that no residue data exist for a given `b`; used to
/// probe the emptiness bound.
pub fn residue_bananas_empty(space: Space, a: &[i64], k: i64, b: i64) -> Result<bool> {
    Ok(residue_bananas(space, a, k, b)?.is_empty())
}

/// Distinct underlying graphs among a list of data.
pub fn distinct_graphs(data: &[BananaDatum]) -> Result<Vec<StableGraph>> {
    let mut set = BTreeSet::new();
    for d in data {
        set.insert(d.graph()?.canonical_form());
    }
    Ok(set.into_iter().collect())
}

//! Genus-zero tropical machinery: stabilizing piecewise linear functions on
//! metrized trees with leg lengths, the difference `delta` of marking values,
//! the glued-edge slope, and the map `phi` from ray slopes to divisor
//! classes.
//!
//! A tropical curve here is a stable genus-0 tree whose edges and legs carry
//! independent symbolic lengths. Given a balanced slope vector `B` (with
//! `sum b_i = k (n - 2)`) there is a unique piecewise linear function with
//! slope `b_i` along leg `i`, outgoing slopes summing to `k (2g(v) - 2 +
//! n(v))` at every vertex, and value zero at the end of leg 1. The
//! difference of its values at the last two markings,
//!
//! ```text
//! delta = value(p_n) - value(p_{n-1}),
//! ```
//!
//! is an exact linear form in the lengths. Its slopes along the rays of the
//! tropical moduli cone (one ray per leg length, one per one-edge tree) map
//! under `phi` to a divisor class: a leg ray with slope `c` contributes
//! `-c psi_i`, a boundary ray with slope `c` contributes `c` times the
//! boundary divisor with the sign [`PHI_BOUNDARY_SIGN`], calibrated once on
//! the four-point space.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Leg, StableGraph, Vertex};
use crate::rational::q_int;
use crate::strata::{Space, TautClass};
use crate::{invalid, Result};

/// Sign of boundary-ray contributions in [`phi`]. Calibrated so that the
/// full ray-slope map of `delta` on the four-point space maps to zero.
pub const PHI_BOUNDARY_SIGN: i64 = 1;

/// A symbolic length variable: one per leg and one per edge of a fixed tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    Leg(Leg),
    Edge(usize),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Leg(l) => write!(f, "l{l}"),
            Sym::Edge(e) => write!(f, "e{e}"),
        }
    }
}

/// An integer linear form in length variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinForm {
    terms: BTreeMap<Sym, i64>,
}

impl LinForm {
    pub fn zero() -> LinForm {
        LinForm::default()
    }

    pub fn term(sym: Sym, coeff: i64) -> LinForm {
        let mut f = LinForm::zero();
        f.add(sym, coeff);
        f
    }

    pub fn add(&mut self, sym: Sym, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(sym).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&sym);
        }
    }

    pub fn add_form(&mut self, other: &LinForm) {
        for (&s, &c) in &other.terms {
            self.add(s, c);
        }
    }

    pub fn sub_form(&mut self, other: &LinForm) {
        for (&s, &c) in &other.terms {
            self.add(s, -c);
        }
    }

    pub fn coeff(&self, sym: Sym) -> i64 {
        self.terms.get(&sym).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, &i64)> {
        self.terms.iter()
    }

    /// Substitutes concrete lengths (missing symbols count as zero).
    pub fn eval(&self, lengths: &BTreeMap<Sym, i64>) -> i64 {
        self.terms
            .iter()
            .map(|(s, c)| c * lengths.get(s).copied().unwrap_or(0))
            .sum()
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{a}*{s}")?;
            }
        }
        Ok(())
    }
}

/// A stable genus-0 tree with symbolic edge and leg lengths.
#[derive(Clone, Debug)]
pub struct TropicalCurve {
    pub graph: StableGraph,
}

impl TropicalCurve {
    /// Wraps a stable graph, rejecting anything that is not a genus-0 tree.
    pub fn new(graph: StableGraph) -> Result<TropicalCurve> {
        if graph.genus() != 0 {
            return Err(invalid!("tropical curves here must have genus 0"));
        }
        debug_assert_eq!(graph.first_betti(), 0);
        Ok(TropicalCurve { graph })
    }

    /// The two-vertex genus-0 tree splitting the legs into `side` and its
    /// complement; `side` lists the legs on the first vertex.
    pub fn two_vertex(n: u32, side: &[Leg]) -> Result<TropicalCurve> {
        let other: Vec<Leg> = (1..=n).filter(|l| !side.contains(l)).collect();
        let graph = StableGraph::new(
            vec![
                Vertex {
                    genus: 0,
                    legs: side.to_vec(),
                },
                Vertex {
                    genus: 0,
                    legs: other,
                },
            ],
            vec![(0, 1)],
        )?;
        TropicalCurve::new(graph)
    }

    pub fn n(&self) -> u32 {
        self.graph.n_legs()
    }
}

/// A piecewise linear function on a tropical curve: a value (linear form) at
/// each vertex, integer slopes on legs and on edges (oriented from the first
/// endpoint to the second).
#[derive(Clone, Debug)]
pub struct PLFunction {
    pub values: Vec<LinForm>,
    pub leg_slopes: Vec<i64>,
    pub edge_slopes: Vec<i64>,
}

impl PLFunction {
    /// Value at the end of leg `i`: the vertex value plus slope times leg
    /// length.
    pub fn marking_value(&self, curve: &TropicalCurve, i: Leg) -> LinForm {
        let v = curve.graph.leg_vertex(i);
        let mut out = self.values[v].clone();
        out.add(Sym::Leg(i), self.leg_slopes[(i - 1) as usize]);
        out
    }
}

fn check_balanced(curve: &TropicalCurve, b: &[i64], k: i64) -> Result<()> {
    let n = curve.n();
    if b.len() != n as usize {
        return Err(invalid!(
            "slope vector has {} entries, expected n = {n}",
            b.len()
        ));
    }
    let total: i64 = b.iter().sum();
    let need = k * (n as i64 - 2);
    if total != need {
        return Err(invalid!(
            "slopes sum to {total}, must equal k (n - 2) = {need}"
        ));
    }
    Ok(())
}

/// Slope of edge `e` oriented from its first endpoint to its second: the
/// twist times the stability weight of the first-endpoint side, minus the leg
/// slopes on that side.
fn edge_slope(graph: &StableGraph, b: &[i64], k: i64, e: usize) -> i64 {
    let (x, _) = graph.edges[e];
    // Vertices on the x side after removing e.
    let nv = graph.vertices.len();
    let mut seen = vec![false; nv];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for (i, &(p, q)) in graph.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            for (s, t) in [(p, q), (q, p)] {
                if s == v && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    let mut slope = 0i64;
    for (v, &hit) in seen.iter().enumerate() {
        if !hit {
            continue;
        }
        slope += k * (2 * graph.vertices[v].genus as i64 - 2 + graph.valence(v) as i64);
        for &l in &graph.vertices[v].legs {
            slope -= b[(l - 1) as usize];
        }
    }
    slope
}

/// The unique stabilizing piecewise linear function: slope `b_i` along leg
/// `i`, outgoing slopes at each vertex summing to `k (2g(v) - 2 + n(v))`,
/// and value zero at the end of leg 1.
pub fn stabilizing_pl(curve: &TropicalCurve, b: &[i64], k: i64) -> Result<PLFunction> {
    check_balanced(curve, b, k)?;
    let graph = &curve.graph;
    let ne = graph.edges.len();
    let edge_slopes: Vec<i64> = (0..ne).map(|e| edge_slope(graph, b, k, e)).collect();

    // Root at the vertex of leg 1 and propagate along the tree.
    let nv = graph.vertices.len();
    let root = graph.leg_vertex(1);
    let mut values: Vec<Option<LinForm>> = vec![None; nv];
    values[root] = Some(LinForm::term(Sym::Leg(1), -b[0]));
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for (e, &(p, q)) in graph.edges.iter().enumerate() {
            for (from, to, sign) in [(p, q, 1i64), (q, p, -1)] {
                if from == v && values[to].is_none() {
                    let mut val = values[from].clone().expect("visited");
                    val.add(Sym::Edge(e), sign * edge_slopes[e]);
                    values[to] = Some(val);
                    stack.push(to);
                }
            }
        }
    }
    let values: Vec<LinForm> = values
        .into_iter()
        .map(|v| v.expect("tree is connected"))
        .collect();
    let pl = PLFunction {
        values,
        leg_slopes: b.to_vec(),
        edge_slopes,
    };
    debug_assert!(pl.marking_value(curve, 1).is_zero());
    debug_assert!(balanced(curve, &pl, k));
    Ok(pl)
}

/// Checks the balancing condition at every vertex.
pub fn balanced(curve: &TropicalCurve, pl: &PLFunction, k: i64) -> bool {
    let graph = &curve.graph;
    (0..graph.vertices.len()).all(|v| {
        let mut total: i64 = graph.vertices[v]
            .legs
            .iter()
            .map(|&l| pl.leg_slopes[(l - 1) as usize])
            .sum();
        for (e, &(p, q)) in graph.edges.iter().enumerate() {
            if p == v {
                total += pl.edge_slopes[e];
            }
            if q == v {
                total -= pl.edge_slopes[e];
            }
        }
        total == k * (2 * graph.vertices[v].genus as i64 - 2 + graph.valence(v) as i64)
    })
}

/// The difference `value(p_n) - value(p_{n-1})` of the stabilizing function.
pub fn delta(curve: &TropicalCurve, b: &[i64], k: i64) -> Result<LinForm> {
    let n = curve.n();
    if n < 2 {
        return Err(invalid!("delta needs n >= 2, got n = {n}"));
    }
    let pl = stabilizing_pl(curve, b, k)?;
    let mut out = pl.marking_value(curve, n);
    out.sub_form(&pl.marking_value(curve, n - 1));
    Ok(out)
}

/// The total slope along the tree path from the vertex of leg `n-1` to the
/// vertex of leg `n`: the integer slope the glued edge acquires when the
/// last two markings are joined. Zero when both markings share a vertex.
pub fn glued_edge_slope(curve: &TropicalCurve, b: &[i64], k: i64) -> Result<i64> {
    let n = curve.n();
    if n < 2 {
        return Err(invalid!("glued edge needs n >= 2, got n = {n}"));
    }
    let d = delta(curve, b, k)?;
    // The edge part of delta is exactly the path-slope sum; leg terms carry
    // the rest of the variation.
    Ok((0..curve.graph.edges.len())
        .map(|e| d.coeff(Sym::Edge(e)))
        .sum())
}

/// A ray of the genus-0 tropical moduli cone: a leg length or a one-edge
/// tree (a boundary divisor), encoded by the legs on the side away from
/// leg 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ray {
    Leg(Leg),
    Split(Vec<Leg>),
}

impl Ray {
    /// Normalized boundary ray for the split `side` vs. complement on `n`
    /// legs: stores the side not containing leg 1.
    pub fn split(n: u32, side: &[Leg]) -> Ray {
        if side.contains(&1) {
            Ray::Split((1..=n).filter(|l| !side.contains(l)).collect())
        } else {
            let mut s = side.to_vec();
            s.sort_unstable();
            Ray::Split(s)
        }
    }
}

/// The divisor class of a ray-slope map on `(0, n)`: a leg ray with slope
/// `c` contributes `-c psi_i`; a boundary ray with slope `c` contributes
/// `PHI_BOUNDARY_SIGN * c` times its boundary divisor.
pub fn phi(space: Space, rays: &BTreeMap<Ray, i64>) -> Result<TautClass> {
    if space.g != 0 {
        return Err(invalid!("phi is defined on genus-0 spaces"));
    }
    let n = space.n;
    let mut out = TautClass::zero(space);
    for (ray, &c) in rays {
        if c == 0 {
            continue;
        }
        match ray {
            Ray::Leg(l) => {
                let psi = TautClass::psi(space, *l)?;
                out.add_assign(&psi.scaled(&q_int(-c)));
            }
            Ray::Split(side) => {
                let curve = TropicalCurve::two_vertex(n, side)?;
                let d = TautClass::boundary(space, &curve.graph)?;
                out.add_assign(&d.scaled(&q_int(PHI_BOUNDARY_SIGN * c)));
            }
        }
    }
    Ok(out)
}

/// The slopes of `delta` along every ray of the `(0, n)` cone: the leg rays
/// `l_{n-1}`, `l_n` and, for each stable two-sided split separating the last
/// two markings, the boundary ray with the path slope of its one-edge tree.
pub fn delta_ray_slopes(space: Space, b: &[i64], k: i64) -> Result<BTreeMap<Ray, i64>> {
    if space.g != 0 {
        return Err(invalid!("delta rays are defined on genus-0 spaces"));
    }
    let n = space.n;
    if (b.len() as u32) != n {
        return Err(invalid!(
            "slope vector has {} entries, expected {n}",
            b.len()
        ));
    }
    let mut rays = BTreeMap::new();
    rays.insert(Ray::Leg(n), b[(n - 1) as usize]);
    rays.insert(Ray::Leg(n - 1), -b[(n - 2) as usize]);
    // All stable splits: sides of size 2..=n-2 through subsets containing a
    // fixed leg to avoid double counting.
    let others: Vec<Leg> = (2..=n).collect();
    for mask in 0..(1u64 << others.len()) {
        let mut side = vec![1u32];
        for (i, &l) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                side.push(l);
            }
        }
        if side.len() < 2 || side.len() > (n as usize - 2) {
            continue;
        }
        let curve = TropicalCurve::two_vertex(n, &side)?;
        let d = delta(&curve, b, k)?;
        let slope = d.coeff(Sym::Edge(0));
        if slope != 0 {
            rays.insert(Ray::split(n, &side), slope);
        }
    }
    rays.retain(|_, c| *c != 0);
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;

    fn curve_on_four(side: &[Leg]) -> TropicalCurve {
        TropicalCurve::two_vertex(4, side).unwrap()
    }

    /// Instantiates the three four-point trees on concrete balanced vectors
    /// and matches the symbolic fixtures coefficient by coefficient;
    /// linearity in the slopes makes two generic instantiations conclusive.
    #[test]
    fn four_point_delta_fixtures() {
        let vectors: [[i64; 4]; 2] = [[1, 2, 3, -6], [2, -5, 1, 2]];
        for a in vectors {
            // {1,2 | 3,4}: delta = a4 l4 - a3 l3.
            let d = delta(&curve_on_four(&[1, 2]), &a, 0).unwrap();
            assert_eq!(d.coeff(Sym::Leg(4)), a[3]);
            assert_eq!(d.coeff(Sym::Leg(3)), -a[2]);
            assert_eq!(d.coeff(Sym::Edge(0)), 0);

            // {1,3 | 2,4}: delta = a4 l4 - a3 l3 + (a2 + a4) l.
            let d = delta(&curve_on_four(&[1, 3]), &a, 0).unwrap();
            assert_eq!(d.coeff(Sym::Leg(4)), a[3]);
            assert_eq!(d.coeff(Sym::Leg(3)), -a[2]);
            assert_eq!(d.coeff(Sym::Edge(0)), a[1] + a[3]);

            // {1,4 | 2,3}: delta = a4 l4 - a3 l3 - (a2 + a3) l.
            let d = delta(&curve_on_four(&[1, 4]), &a, 0).unwrap();
            assert_eq!(d.coeff(Sym::Leg(4)), a[3]);
            assert_eq!(d.coeff(Sym::Leg(3)), -a[2]);
            assert_eq!(d.coeff(Sym::Edge(0)), -(a[1] + a[2]));
        }
    }

    #[test]
    fn edge_slope_from_first_side() {
        // {1,2 | 3,4} at k = 0: the slope away from the {1,2} vertex equals
        // a3 + a4.
        let a = [5i64, -2, 4, -7];
        let curve = curve_on_four(&[1, 2]);
        let pl = stabilizing_pl(&curve, &a, 0).unwrap();
        assert_eq!(pl.edge_slopes[0], a[2] + a[3]);
        assert!(balanced(&curve, &pl, 0));
    }

    #[test]
    fn normalization_and_twisted_balancing() {
        // A three-vertex caterpillar on (0, 6) with a nonzero twist.
        let graph = StableGraph::new(
            vec![
                Vertex {
                    genus: 0,
                    legs: vec![1, 2],
                },
                Vertex {
                    genus: 0,
                    legs: vec![3, 6],
                },
                Vertex {
                    genus: 0,
                    legs: vec![4, 5],
                },
            ],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let curve = TropicalCurve::new(graph).unwrap();
        let k = 2;
        // sum must be k (n - 2) = 8.
        let b = [3i64, -1, 4, 0, 1, 1];
        let pl = stabilizing_pl(&curve, &b, k).unwrap();
        assert!(pl.marking_value(&curve, 1).is_zero());
        assert!(balanced(&curve, &pl, k));
        // Values across each edge differ by slope times length.
        for (e, &(p, q)) in curve.graph.edges.iter().enumerate() {
            let mut diff = pl.values[q].clone();
            diff.sub_form(&pl.values[p]);
            assert_eq!(diff.coeff(Sym::Edge(e)), pl.edge_slopes[e]);
        }
    }

    #[test]
    fn glued_edge_slopes() {
        let a = [4i64, 1, -3, -2];
        // {1,3 | 2,4}: slope -(a1 + a3) from the vertex of leg 3.
        assert_eq!(
            glued_edge_slope(&curve_on_four(&[1, 3]), &a, 0).unwrap(),
            -(a[0] + a[2])
        );
        // One-vertex curve: no inner edge, slope 0.
        let star = TropicalCurve::new(StableGraph::trivial(0, 4)).unwrap();
        assert_eq!(glued_edge_slope(&star, &a, 0).unwrap(), 0);
        // Legs n-1 and n on the same side: path is empty.
        assert_eq!(glued_edge_slope(&curve_on_four(&[1, 2]), &a, 0).unwrap(), 0);
    }

    #[test]
    fn glued_slope_matches_oriented_banana_totals() {
        // For a two-vertex tree separating the last two markings, the glued
        // edge slope equals the signed total slope of the matching oriented
        // banana datum.
        let s = Space::new(0, 5).unwrap();
        let a = [2i64, 3, -1, 1, -5];
        let data = crate::banana::oriented_bananas(s, &a, 0).unwrap();
        assert!(!data.is_empty());
        for (d, sign) in data {
            let curve = TropicalCurve::two_vertex(5, &d.legs1).unwrap();
            let total: i64 = d.slopes.iter().sum();
            let got = glued_edge_slope(&curve, &a, 0).unwrap();
            // The path runs from leg 4's vertex to leg 5's vertex, against
            // the orientation the datum's sign records.
            assert_eq!(got, -sign * total, "datum {d:?}");
        }
    }

    #[test]
    fn phi_leg_rule_and_calibration() {
        // The quoted identity: {l_n: a_n, l_{n-1}: -a_{n-1}} maps to
        // a_{n-1} psi_{n-1} - a_n psi_n.
        let s = Space::new(0, 4).unwrap();
        let (am, an) = (3i64, -7);
        let mut rays = BTreeMap::new();
        rays.insert(Ray::Leg(4), an);
        rays.insert(Ray::Leg(3), -am);
        let got = phi(s, &rays).unwrap();
        let mut expect = TautClass::psi(s, 3).unwrap().scaled(&q_int(am));
        expect.sub_assign(&TautClass::psi(s, 4).unwrap().scaled(&q_int(an)));
        assert_eq!(got, expect);
        // Empty slopes map to zero.
        assert!(phi(s, &BTreeMap::new()).unwrap().is_zero());
        // Calibration: the full ray-slope map of delta is principal, so phi
        // sends it to a class pairing to zero.
        for a in [[1i64, 2, 3, -6], [4, -1, -1, -2]] {
            let rays = delta_ray_slopes(s, &a, 0).unwrap();
            let class = phi(s, &rays).unwrap();
            assert_eq!(class.evaluate(), q_ratio(0, 1), "A = {a:?}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let star = TropicalCurve::new(StableGraph::trivial(0, 4)).unwrap();
        // Unbalanced slopes.
        assert!(stabilizing_pl(&star, &[1, 1, 1, 1], 0).is_err());
        assert!(stabilizing_pl(&star, &[1, 1, 1], 0).is_err());
        // k = 1 star on (0, 3) needs slope sum 1.
        let star3 = TropicalCurve::new(StableGraph::trivial(0, 3)).unwrap();
        assert!(stabilizing_pl(&star3, &[1, 1, 1], 1).is_err());
        assert!(stabilizing_pl(&star3, &[1, 1, -1], 1).is_ok());
        // Positive-genus graphs are rejected.
        let loop_graph = StableGraph::new(
            vec![Vertex {
                genus: 0,
                legs: vec![1],
            }],
            vec![(0, 0)],
        )
        .unwrap();
        assert!(TropicalCurve::new(loop_graph).is_err());
    }
}

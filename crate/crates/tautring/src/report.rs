//! Machine-readable reports: JSON shapes shared by the command-line tool
//! and the examples.
//!
//! Every report embeds the crate version and the convention constants in
//! effect (automorphism normalization, relation sign, boundary-ray sign), so
//! an archived report is self-describing. Rationals are serialized as exact
//! `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::banana::BananaDatum;
use crate::graph::StableGraph;
use crate::rational::format_q;
use crate::splitting::{Verification, RELATION_SIGN};
use crate::strata::{Space, TautClass};
use crate::tropical::{LinForm, TropicalCurve, PHI_BOUNDARY_SIGN};
use crate::{invalid, Result};

/// Crate version stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The convention constants a report was produced under.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub version: &'static str,
    /// How stored coefficients relate to stack classes.
    pub automorphisms: &'static str,
    /// Sign of the psi-difference term in the tautological relation.
    pub relation_sign: i64,
    /// Sign of boundary-ray contributions in the divisor map phi.
    pub phi_boundary_sign: i64,
}

impl Conventions {
    pub fn current() -> Conventions {
        Conventions {
            version: VERSION,
            automorphisms: "stabilizer-normalized stratum basis; division by \
                            automorphisms deferred to evaluation",
            relation_sign: RELATION_SIGN,
            phi_boundary_sign: PHI_BOUNDARY_SIGN,
        }
    }
}

/// One enumerated banana datum together with its weight.
#[derive(Clone, Debug, Serialize)]
pub struct BananaEntry {
    pub g1: u32,
    pub g2: u32,
    pub legs1: Vec<u32>,
    pub legs2: Vec<u32>,
    pub slopes: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i64>,
    pub aut_order: u64,
    pub weight: String,
}

impl BananaEntry {
    pub fn new(datum: &BananaDatum, sign: Option<i64>) -> BananaEntry {
        BananaEntry {
            g1: datum.g1,
            g2: datum.g2,
            legs1: datum.legs1.clone(),
            legs2: datum.legs2.clone(),
            slopes: datum.slopes.clone(),
            b: datum.b,
            sign,
            aut_order: datum.aut_order(),
            weight: format_q(&datum.weight()),
        }
    }
}

/// Listing of banana data for one input.
#[derive(Clone, Debug, Serialize)]
pub struct BananaReport {
    pub space: Space,
    pub mode: &'static str,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    pub k: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    /// Data are empty for every residue |b| at or beyond this bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_bound: Option<i64>,
    pub conventions: Conventions,
    pub entries: Vec<BananaEntry>,
}

/// A double ramification cycle in the stratum basis. The class is embedded
/// in its rich JSON form: each term carries the display string, the stable
/// graph, and the decoration data alongside the `p/q` coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct DrReport {
    pub space: Space,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    pub k: i64,
    pub degree: u32,
    pub num_terms: usize,
    pub conventions: Conventions,
    pub class: serde_json::Value,
}

impl DrReport {
    pub fn new(space: Space, a: &[i64], k: i64, class: &TautClass) -> DrReport {
        DrReport {
            space,
            a: a.to_vec(),
            k,
            degree: space.g,
            num_terms: class.num_terms(),
            conventions: Conventions::current(),
            class: class.to_json(),
        }
    }
}

/// One verified pairing, both sides as exact rationals.
#[derive(Clone, Debug, Serialize)]
pub struct PairingRow {
    pub test: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

/// Outcome of a splitting or relation verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub space: Space,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub glued_space: Option<Space>,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    pub k: i64,
    pub pass: bool,
    pub num_pairings: usize,
    pub conventions: Conventions,
    pub pairings: Vec<PairingRow>,
}

impl VerifyReport {
    pub fn new(
        kind: &'static str,
        space: Space,
        glued_space: Option<Space>,
        a: &[i64],
        k: i64,
        v: &Verification,
    ) -> VerifyReport {
        let pairings: Vec<PairingRow> = v
            .pairings
            .iter()
            .map(|p| PairingRow {
                test: p.test.clone(),
                lhs: format_q(&p.lhs),
                rhs: format_q(&p.rhs),
                ok: p.ok(),
            })
            .collect();
        VerifyReport {
            kind,
            space,
            glued_space,
            a: a.to_vec(),
            k,
            pass: v.ok(),
            num_pairings: pairings.len(),
            conventions: Conventions::current(),
            pairings,
        }
    }
}

/// Result of a stabilizing-function computation on a tropical curve.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub n: u32,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    pub k: i64,
    /// Human-readable linear form in leg lengths `l1..ln` and edge lengths
    /// `e0, e1, ...`.
    pub delta: String,
    /// The same form as a coefficient map.
    pub coefficients: BTreeMap<String, i64>,
    pub glued_edge_slope: i64,
    pub conventions: Conventions,
}

impl DeltaReport {
    pub fn new(
        curve: &TropicalCurve,
        a: &[i64],
        k: i64,
        delta: &LinForm,
        slope: i64,
    ) -> DeltaReport {
        DeltaReport {
            n: curve.n(),
            a: a.to_vec(),
            k,
            delta: delta.to_string(),
            coefficients: delta.iter().map(|(s, &c)| (s.to_string(), c)).collect(),
            glued_edge_slope: slope,
            conventions: Conventions::current(),
        }
    }
}

/// On-disk description of a tropical curve with its slope data: the tree,
/// the balanced vector `A`, and the twist `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub graph: StableGraph,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    #[serde(default)]
    pub k: i64,
}

impl CurveFile {
    /// Reads and validates a curve description.
    pub fn load(path: &Path) -> Result<(TropicalCurve, Vec<i64>, i64)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid!("cannot read {}: {e}", path.display()))?;
        let file: CurveFile = serde_json::from_str(&text)
            .map_err(|e| invalid!("cannot parse {}: {e}", path.display()))?;
        // Re-validate through the constructor: files are untrusted.
        let graph = StableGraph::new(file.graph.vertices, file.graph.edges)?;
        let curve = TropicalCurve::new(graph)?;
        Ok((curve, file.a, file.k))
    }
}

/// Pretty JSON with a trailing newline, for stable on-disk artifacts.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    #[test]
    fn conventions_are_embedded() {
        let c = Conventions::current();
        assert_eq!(c.relation_sign, -1);
        assert_eq!(c.phi_boundary_sign, 1);
        let json = to_pretty_json(&c);
        assert!(json.contains("relation_sign"));
        assert!(json.contains(VERSION));
    }

    #[test]
    fn curve_file_round_trip() {
        let graph = StableGraph::new(
            vec![
                Vertex {
                    genus: 0,
                    legs: vec![1, 3],
                },
                Vertex {
                    genus: 0,
                    legs: vec![2, 4],
                },
            ],
            vec![(0, 1)],
        )
        .unwrap();
        let file = CurveFile {
            graph,
            a: vec![1, 2, 3, -6],
            k: 0,
        };
        let json = to_pretty_json(&file);
        let dir = std::env::temp_dir().join("tautring-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("curve.json");
        std::fs::write(&path, &json).unwrap();
        let (curve, a, k) = CurveFile::load(&path).unwrap();
        assert_eq!(curve.n(), 4);
        assert_eq!(a, vec![1, 2, 3, -6]);
        assert_eq!(k, 0);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn banana_entries_carry_exact_weights() {
        let s = Space::new(0, 4).unwrap();
        let data = crate::banana::all_residue_bananas(s, &[2, -2], 0).unwrap();
        assert_eq!(data.len(), 3);
        let entries: Vec<BananaEntry> = data.iter().map(|d| BananaEntry::new(d, None)).collect();
        let json = to_pretty_json(&entries);
        // Weights are p/q strings, and the residue b is present.
        assert!(json.contains("\"weight\""));
        assert!(json.contains("\"b\""));
        assert!(!json.contains("null"));
    }
}

//! Serialisations of truncation data: JSON, CSV and Graphviz DOT.

use std::fmt::Write as _;

use serde::Serialize;

use crate::affine::PRegime;
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::truncate::{forward_unchecked, TruncationPair};
use crate::weight::{Weight, WeightSet};

/// One row of the Λ_m ∩ pY → Γ_m table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingRow {
    pub nu: Weight,
    pub gamma: Weight,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationExport {
    #[serde(rename = "type")]
    pub type_name: String,
    pub p: i64,
    pub m: i64,
    pub regime: PRegime,
    pub lambda: WeightSet,
    pub lambda_py: WeightSet,
    pub gamma: WeightSet,
    pub pairing: Vec<PairingRow>,
}

impl TruncationExport {
    pub fn new(pair: &TruncationPair) -> Self {
        let ctx = &pair.ctx;
        let lambda_py = pair.lambda_py();
        let pairing = lambda_py
            .iter()
            .filter_map(|nu| {
                forward_unchecked(ctx, nu).ok().map(|gamma| PairingRow {
                    nu: nu.clone(),
                    gamma,
                })
            })
            .collect();
        TruncationExport {
            type_name: ctx.rs().spec().to_string(),
            p: ctx.p(),
            m: pair.m,
            regime: ctx.regime(),
            lambda: pair.lambda.clone(),
            lambda_py,
            gamma: pair.gamma.clone(),
            pairing,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvariantViolation(format!("JSON serialisation failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// One row per element of Λ_m: coordinates, membership in pY and Γ_m, and
/// the forward image for the pY points.
pub fn truncation_csv(pair: &TruncationPair) -> Result<String> {
    let export = TruncationExport::new(pair);
    let rank = pair.ctx.rs().rank();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=rank).map(|i| format!("c{i}")).collect();
    header.extend(["in_py", "in_gamma", "image"].map(String::from));
    let csv_err = |e: csv::Error| Error::InvariantViolation(format!("CSV write failed: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for y in pair.lambda.iter() {
        let mut row: Vec<String> = y.coords().iter().map(i64::to_string).collect();
        row.push(export.lambda_py.contains(y).to_string());
        row.push(export.gamma.contains(y).to_string());
        let image = export
            .pairing
            .iter()
            .find(|r| &r.nu == y)
            .map(|r| r.gamma.to_string())
            .unwrap_or_default();
        row.push(image);
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvariantViolation(format!("CSV flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvariantViolation(e.to_string()))
}

/// Graphviz digraph of the cover relation of `rel` on `elems`, edges
/// pointing upward. Nodes are numbered in set order.
pub fn hasse_dot(name: &str, elems: &WeightSet, rel: &Relation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{name}\" {{");
    let _ = writeln!(s, "  rankdir=BT;");
    for (i, y) in elems.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{y}\"];");
    }
    for (i, j) in rel.covers() {
        let _ = writeln!(s, "  n{i} -> n{j};");
    }
    s.push_str("}\n");
    s
}

/// Parses the edges of a DOT document produced by [`hasse_dot`].
pub fn parse_dot_edges(dot: &str) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = dot
        .lines()
        .filter_map(|l| {
            let (a, b) = l.trim().trim_end_matches(';').split_once(" -> ")?;
            Some((
                a.strip_prefix('n')?.parse().ok()?,
                b.strip_prefix('n')?.parse().ok()?,
            ))
        })
        .collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineContext;
    use crate::orders::OrderKind;
    use crate::relation::relation_on;
    use crate::root_data::{RootSystem, RootSystemSpec, TypeLetter};
    use std::sync::Arc;

    fn a1() -> AffineContext {
        let rs = RootSystem::build(RootSystemSpec::new(TypeLetter::A, 1).unwrap()).unwrap();
        AffineContext::new(Arc::new(rs), 5).unwrap()
    }

    #[test]
    fn a1_json_sets() {
        let pair = TruncationPair::build(&a1(), 2).unwrap();
        let e = TruncationExport::new(&pair);
        assert_eq!(
            (e.lambda.len(), e.lambda_py.len(), e.gamma.len()),
            (11, 3, 3)
        );
        let json = to_json(&e).unwrap();
        assert!(json.contains("\"type\": \"A1\""));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["pairing"][0]["nu"], serde_json::json!([-10]));
        assert_eq!(v["pairing"][0]["gamma"], serde_json::json!([8]));
    }

    #[test]
    fn a1_csv_rows() {
        let pair = TruncationPair::build(&a1(), 1).unwrap();
        let csv = truncation_csv(&pair).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "c1,in_py,in_gamma,image");
        assert_eq!(lines.len(), 6);
        assert!(lines.contains(&"0,true,true,(0)"));
    }

    #[test]
    fn a1_dot_is_a_chain() {
        let c = a1();
        let pair = TruncationPair::build(&c, 2).unwrap();
        let rel = relation_on(&OrderKind::Excellent, c.rs(), &pair.lambda).unwrap();
        let dot = hasse_dot("lambda", &pair.lambda, &rel);
        assert_eq!(dot.matches("[label=").count(), 11);
        // The excellent order on A1 is a total order.
        assert_eq!(parse_dot_edges(&dot).len(), 10);
        assert_eq!(parse_dot_edges(&dot), rel.covers());
    }
}

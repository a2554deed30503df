//! Report rendering: machine JSON (stdout) and human text (stderr).
//!
//! Witnesses embedded in reports are re-verified against the predicate they
//! falsify before being emitted; the `verified` flag records the outcome.

use serde_json::{json, Value};
use softtop_core::mapping::HomeoFailure;
use softtop_core::separation::{
    verify_closed_separation_witness, verify_point_separation_witness,
};
use softtop_core::topology::AxiomViolation;
use softtop_core::{
    ProductContext, SeparationReport, SoftMapping, SoftPoint, SoftSet, SoftTopology,
};

use crate::instance::set_to_inline;

pub fn set_json(set: &SoftSet) -> Value {
    serde_json::to_value(set_to_inline(set)).expect("maps of strings serialize")
}

pub fn point_json(point: &SoftPoint) -> Value {
    json!({ "element": point.element(), "parameter": point.parameter() })
}

pub fn mapping_json(mapping: &SoftMapping) -> Value {
    let src = mapping.source();
    let tgt = mapping.target();
    let elem: serde_json::Map<String, Value> = (0..src.element_count())
        .map(|x| {
            (
                src.element_name(x).to_owned(),
                Value::String(tgt.element_name(mapping.element_image(x)).to_owned()),
            )
        })
        .collect();
    let param: serde_json::Map<String, Value> = (0..src.parameter_count())
        .map(|p| {
            (
                src.parameter_name(p).to_owned(),
                Value::String(tgt.parameter_name(mapping.parameter_image(p)).to_owned()),
            )
        })
        .collect();
    json!({ "elem": elem, "param": param })
}

pub fn topology_json(topology: &SoftTopology) -> Value {
    json!({
        "count": topology.open_count(),
        "opens": topology.opens().iter().map(set_json).collect::<Vec<_>>(),
    })
}

/// A product context with its factor list; element and parameter tuples
/// serialize as arrays of the factor names.
pub fn product_json(product: &ProductContext) -> Value {
    let factors: Vec<Value> = product
        .factors()
        .iter()
        .map(|f| json!({ "universe": f.universe(), "parameters": f.parameters() }))
        .collect();
    let universe: Vec<Value> = (0..product.context().element_count())
        .map(|i| {
            let comps: Vec<&str> = product
                .decode_element(i)
                .into_iter()
                .zip(product.factors())
                .map(|(c, f)| f.element_name(c))
                .collect();
            json!(comps)
        })
        .collect();
    let parameters: Vec<Value> = (0..product.context().parameter_count())
        .map(|i| {
            let comps: Vec<&str> = product
                .decode_parameter(i)
                .into_iter()
                .zip(product.factors())
                .map(|(c, f)| f.parameter_name(c))
                .collect();
            json!(comps)
        })
        .collect();
    json!({ "factors": factors, "universe": universe, "parameters": parameters })
}

/// `{ok, axiom, witnesses[]}` verdict for an axiom check.
pub fn axiom_verdict_json(violation: Option<&AxiomViolation>) -> Value {
    match violation {
        None => json!({ "ok": true, "axiom": Value::Null, "witnesses": [] }),
        Some(v) => json!({
            "ok": false,
            "axiom": v.axiom.name(),
            "witnesses": v.witnesses.iter().map(set_json).collect::<Vec<_>>(),
            "missing": v.missing.as_ref().map(set_json),
        }),
    }
}

fn homeo_failure_json(failure: &HomeoFailure) -> Value {
    json!({
        "leg": failure.leg(),
        "witness": failure.witness().map(set_json),
    })
}

/// The embedding-lemma report with the stable field layout:
/// `{hypotheses: {continuity, sep_points, sep_points_closed},
///   conclusion: {embedding}, witnesses: [...]}`.
pub fn lemma_report_json(
    report: &SeparationReport,
    source: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
) -> Value {
    let mut witnesses = Vec::new();
    for (i, verdict) in report.continuity.iter().enumerate() {
        if let Some(open) = &verdict.witness {
            let verified = spaces[i].contains_open(open)
                && !source.contains_open(&maps[i].preimage(open).expect("contexts match"));
            witnesses.push(json!({
                "predicate": "continuity",
                "mapping": i,
                "open": set_json(open),
                "verified": verified,
            }));
        }
    }
    if let Some(pair) = &report.separates_points.witness {
        let verified = verify_point_separation_witness(maps, pair).unwrap_or(false);
        witnesses.push(json!({
            "predicate": "sep_points",
            "left": point_json(&pair.0),
            "right": point_json(&pair.1),
            "verified": verified,
        }));
    }
    if let Some(witness) = &report.separates_from_closed.witness {
        let verified =
            verify_closed_separation_witness(source, spaces, maps, witness).unwrap_or(false);
        witnesses.push(json!({
            "predicate": "sep_points_closed",
            "closed": set_json(&witness.0),
            "point": point_json(&witness.1),
            "verified": verified,
        }));
    }
    if let Some(failure) = &report.embedding.failure {
        // recompute the embedding verdict; the stored leg must reproduce
        let verified = matches!(
            report.diagonal.is_embedding(source, &report.product_space),
            Ok(ref v) if v.failure.as_ref() == Some(failure)
        );
        let mut w = homeo_failure_json(failure);
        w["predicate"] = json!("embedding");
        w["verified"] = json!(verified);
        witnesses.push(w);
    }

    json!({
        "hypotheses": {
            "continuity": report.continuity.iter().map(|c| c.ok()).collect::<Vec<_>>(),
            "sep_points": report.separates_points.ok(),
            "sep_points_closed": report.separates_from_closed.ok(),
        },
        "conclusion": { "embedding": report.conclusion_holds() },
        "hypotheses_hold": report.hypotheses_hold(),
        "conclusion_holds": report.conclusion_holds(),
        "violation": report.is_violation(),
        "diagonal": mapping_json(&report.diagonal),
        "product": product_json(&report.product),
        "product_open_count": report.product_open_count(),
        "witnesses": witnesses,
    })
}

pub fn lemma_report_human(name: &str, report: &SeparationReport) -> String {
    let mut out = String::new();
    let flag = |b: bool| if b { "holds" } else { "FAILS" };
    out.push_str(&format!("lemma check `{name}`:\n"));
    for (i, c) in report.continuity.iter().enumerate() {
        out.push_str(&format!("  continuity of mapping {i}: {}\n", flag(c.ok())));
        if let Some(w) = &c.witness {
            out.push_str(&format!("    witness open: {w}\n"));
        }
    }
    out.push_str(&format!(
        "  separates points: {}\n",
        flag(report.separates_points.ok())
    ));
    if let Some((p, q)) = &report.separates_points.witness {
        out.push_str(&format!("    witness points: {p} vs {q}\n"));
    }
    out.push_str(&format!(
        "  separates points from closed sets: {}\n",
        flag(report.separates_from_closed.ok())
    ));
    if let Some((c, p)) = &report.separates_from_closed.witness {
        out.push_str(&format!("    witness: closed {c}, point {p}\n"));
    }
    out.push_str(&format!(
        "  HYPOTHESES_{}\n",
        if report.hypotheses_hold() { "HOLD" } else { "FAIL" }
    ));
    out.push_str(&format!(
        "  diagonal embedding: {} (product has {} opens)\n",
        flag(report.conclusion_holds()),
        report.product_open_count()
    ));
    if let Some(f) = &report.embedding.failure {
        out.push_str(&format!("    failing leg: {}\n", f.leg()));
        if let Some(w) = f.witness() {
            out.push_str(&format!("    witness open: {w}\n"));
        }
    }
    out.push_str(&format!(
        "  CONCLUSION_{}\n",
        if report.conclusion_holds() { "HOLDS" } else { "FAILS" }
    ));
    if report.is_violation() {
        out.push_str("  *** LEMMA VIOLATION: hypotheses hold but the diagonal does not embed ***\n");
    }
    out
}

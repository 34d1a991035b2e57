//! JSON renderings of the analysis results. These are output-only.

use serde_json::{json, Value};

use super::reader::sorted_object;
use super::witness::state_to_json;
use crate::bridge::EmbeddingReport;
use crate::equivalence::{ConsequenceReport, HierarchyReport};
use crate::model::{Atom, ValidationReport};
use crate::semantics::{extract_inputs, extract_outputs, ComputedRelation, Run, RunSet, RunStatus};

fn atoms(xs: &[Atom]) -> Value {
    Value::Array(xs.iter().map(Atom::to_json).collect())
}

pub fn validation_report_to_json(r: &ValidationReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"rule": v.rule.id(), "elements": v.elements, "detail": v.detail}))
        .collect();
    json!({
        "verdict": if r.is_valid() { "valid" } else { "invalid" },
        "violations": violations,
        "notes": r.notes,
    })
}

pub fn run_to_json(run: &Run) -> Value {
    let mut m = vec![
        ("states".to_string(), Value::Array(run.states.iter().map(state_to_json).collect())),
        ("status".to_string(), json!(run.status.as_str())),
    ];
    if let RunStatus::Lasso { loop_start } = run.status {
        m.push(("loop_start".into(), json!(loop_start)));
        m.push(("divergent".into(), json!(run.is_divergent())));
    }
    if run.is_complete() {
        m.push(("inputs".into(), atoms(&extract_inputs(run).unwrap_or_default())));
        m.push(("outputs".into(), atoms(&extract_outputs(run).unwrap_or_default())));
    }
    sorted_object(m)
}

pub fn run_set_to_json(rs: &RunSet) -> Value {
    json!({
        "runs": rs.runs.iter().map(run_to_json).collect::<Vec<_>>(),
        "residue": rs.residue.iter().map(run_to_json).collect::<Vec<_>>(),
    })
}

pub fn relation_to_json(rel: &ComputedRelation) -> Value {
    let pairs: Vec<Value> = match rel {
        ComputedRelation::Values(p) => p.iter().map(|(i, o)| json!([i.to_json(), o.to_json()])).collect(),
        ComputedRelation::Streams(p) => p.iter().map(|(i, o)| json!([atoms(i), atoms(o)])).collect(),
    };
    json!({"count": pairs.len(), "functional": rel.is_functional(), "pairs": pairs})
}

fn atom_pairs(xs: &[(Atom, Atom)]) -> Value {
    Value::Array(xs.iter().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect())
}

pub fn consequence_report_to_json(r: &ConsequenceReport) -> Value {
    json!({
        "relation_modeling": r.relation_modeling,
        "run_lengths": r.run_lengths,
        "phi_in": atom_pairs(&r.phi_in),
        "phi_out": atom_pairs(&r.phi_out),
        "inputs_checked": r.inputs_checked,
        "lengths": r.lengths,
        "failures": r.failures,
    })
}

pub fn hierarchy_report_to_json(r: &HierarchyReport) -> Value {
    json!({
        "isomorphic": r.isomorphic,
        "algorithmically_equivalent": r.algorithmically_equivalent,
        "computationally_equivalent": r.computationally_equivalent,
        "violations": r.violations,
    })
}

pub fn embedding_report_to_json(r: &EmbeddingReport) -> Value {
    json!({
        "astep_agreement": r.astep_agreement,
        "shared_states": r.shared_states,
        "relation_agreement": r.relation_agreement,
        "singleton_pairs": r.singleton_pairs,
        "longer_stream_pairs": r.longer_stream_pairs,
        "failures": r.failures,
    })
}

//! Report rendering: human-readable text and machine-readable JSON with the
//! stable schema tag `torsym-report/1`. All output is deterministic; JSON
//! objects carry alphabetically ordered keys.

use crate::charpair::{CharacteristicPair, FacetClassPartition, OmniOrientationSigns};
use crate::document::{int_literal, PairDocument};
use crate::lattice::{Int, IntVector};
use crate::symmetry::{
    AdmissibleTriple, ConstructionTree, PairAutomorphism, SymmetryGroupType, TreeStep,
};
use serde_json::{json, Value};

pub const SCHEMA: &str = "torsym-report/1";

pub fn json_report(command: &str, mut body: serde_json::Map<String, Value>) -> String {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    let mut text = serde_json::to_string_pretty(&Value::Object(body)).expect("report serializes");
    text.push('\n');
    text
}

pub fn int_value(v: &Int) -> Value {
    let literal = int_literal(v);
    if literal.starts_with('"') {
        json!(literal.trim_matches('"'))
    } else {
        serde_json::from_str(&literal).expect("integer literal")
    }
}

pub fn vector_value(v: &IntVector) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn matrix_value(m: &crate::lattice::IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_value(&m.row(i))).collect())
}

pub fn vector_text(v: &IntVector) -> String {
    v.to_string()
}

pub fn set_text(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

pub fn signs_text(signs: &OmniOrientationSigns) -> String {
    if signs.is_identity() {
        "identity".to_string()
    } else {
        let flipped: Vec<String> = signs.flipped_facets();
        format!("flip {}", set_text(&flipped))
    }
}

pub fn signs_value(signs: &OmniOrientationSigns) -> Value {
    Value::Object(
        signs
            .entries()
            .map(|(f, s)| (f.clone(), json!(s)))
            .collect(),
    )
}

pub fn classes_value(classes: &FacetClassPartition) -> Value {
    Value::Array(
        classes
            .classes
            .iter()
            .map(|c| {
                json!({
                    "facets": c.facets,
                    "dual": vector_value(&c.representative),
                })
            })
            .collect(),
    )
}

pub fn partition_text(blocks: &[Vec<String>]) -> String {
    let parts: Vec<String> = blocks.iter().map(|b| b.join(", ")).collect();
    parts.join(" | ")
}

pub fn group_value(group: &SymmetryGroupType) -> Value {
    json!({
        "su_factors": group.su_sizes(),
        "torus_rank": group.torus_rank(),
        "canonical": group.canonical_string(),
    })
}

pub fn tree_step_text(index: usize, step: &TreeStep) -> String {
    match step {
        TreeStep::BlowUp {
            class, exceptional, ..
        } => format!(
            "  {}. blow up at {} -> exceptional {}",
            index,
            set_text(class),
            exceptional
        ),
        TreeStep::SplitOff { decomposition, .. } => format!(
            "  {}. split off SU({}) on {} (chosen {}), reduced rank {}, mu = {}",
            index,
            decomposition.class_size(),
            set_text(&decomposition.class),
            decomposition.chosen_facet,
            decomposition.reduced.rank(),
            decomposition.mu
        ),
    }
}

pub fn tree_value(tree: &ConstructionTree) -> Value {
    let steps: Vec<Value> = tree
        .steps
        .iter()
        .map(|step| match step {
            TreeStep::BlowUp {
                class, exceptional, ..
            } => json!({
                "kind": "blowup",
                "class": class,
                "exceptional": exceptional,
            }),
            TreeStep::SplitOff { decomposition, .. } => json!({
                "kind": "splitoff",
                "class": decomposition.class,
                "chosen": decomposition.chosen_facet,
                "mu": vector_value(&decomposition.mu),
                "reduced_rank": decomposition.reduced.rank(),
            }),
        })
        .collect();
    json!({
        "steps": steps,
        "leaf_facets": tree.leaf.facets(),
        "leaf_rank": tree.leaf.rank(),
    })
}

pub fn automorphism_text(auto: &PairAutomorphism) -> String {
    let g_rows: Vec<String> = (0..auto.g.rows())
        .map(|i| auto.g.row(i).to_string())
        .collect();
    format!("f: {}; g rows: [{}]", auto.f, g_rows.join(", "))
}

pub fn automorphism_value(auto: &PairAutomorphism, in_phi_image: bool) -> Value {
    json!({
        "f": auto.f.mapping(),
        "g": matrix_value(&auto.g),
        "in_phi_image": in_phi_image,
    })
}

pub fn triple_text(triple: &AdmissibleTriple) -> Vec<String> {
    let mut lines = Vec::new();
    for (i, block) in triple.blocks.iter().enumerate() {
        let marked = match &triple.marked[i] {
            Some(f) => f.clone(),
            None => "-".to_string(),
        };
        lines.push(format!(
            "block {}: mu = {}, marked = {}",
            set_text(block),
            triple.psi_data[i],
            marked
        ));
    }
    lines.push(format!(
        "reduced pair: rank {}, facets {}",
        triple.reduced_pair.rank(),
        set_text(triple.reduced_pair.facets())
    ));
    lines
}

pub fn triple_value(triple: &AdmissibleTriple) -> Value {
    json!({
        "blocks": triple.blocks,
        "psi_data": triple.psi_data.iter().map(vector_value).collect::<Vec<_>>(),
        "marked": triple.marked,
        "reduced_pair": document_value(&PairDocument::from_pair(&triple.reduced_pair)),
    })
}

/// The canonical document as a JSON value (used inside reports; standalone
/// emission keeps its own formatting).
pub fn document_value(doc: &PairDocument) -> Value {
    serde_json::from_str(&doc.emit()).expect("canonical document is valid JSON")
}

pub fn pair_summary(pair: &CharacteristicPair) -> String {
    format!("{} facets, rank {}", pair.facet_count(), pair.rank())
}

//! JSON definition documents (`.pad`), witness documents (`.paw`) and
//! report renderings.
//!
//! Serialization is canonical: object keys sorted, arrays in declared order,
//! two-space indentation and a trailing newline, so equal models always
//! produce identical bytes.

mod definition;
mod reader;
mod report;
mod witness;

pub use definition::{definition_from_json, definition_to_json, parse_definition, serialize_definition};
pub use reader::{FormatError, Location};
pub use report::{
    consequence_report_to_json, embedding_report_to_json, hierarchy_report_to_json, relation_to_json, run_set_to_json,
    run_to_json, validation_report_to_json,
};
pub use witness::{parse_witness, serialize_witness, state_to_json, witness_from_json, witness_to_json, WitnessDocument};

/// Pretty-print any JSON value the way documents are written.
pub fn to_canonical_string(v: &serde_json::Value) -> String {
    reader::render(v)
}

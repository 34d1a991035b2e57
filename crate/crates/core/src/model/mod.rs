//! Definitional data types for proto-algorithms and their structural
//! validation.

mod alphabet;
mod atom;
mod graph;
mod interp;
mod validate;

use std::fmt;

pub use alphabet::{Alphabet, FIN, IN, INIT, OUT};
pub use atom::{ints, Atom};
pub use graph::{vertex_degrees, AlgorithmGraph, Edge, Vertex, VertexId};
pub use interp::{table, Interpretation, Table};
pub use validate::{
    has_predicate_only_cycle, input_closure, validate, validate_alphabet, validate_graph,
    validate_interpretation, Rule, ValidationReport, Verdict, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    NonInteractive,
    Interactive,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::NonInteractive => "non-interactive",
            Kind::Interactive => "interactive",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Alphabet, algorithm graph and interpretation. The kind tag lives on the
/// alphabet; the `in` table of the interpretation must agree with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtoAlgorithm {
    pub alphabet: Alphabet,
    pub graph: AlgorithmGraph,
    pub interpretation: Interpretation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinism {
    Deterministic,
    NonDeterministic,
}

impl ProtoAlgorithm {
    pub fn kind(&self) -> Kind {
        self.alphabet.kind
    }

    pub fn is_interactive(&self) -> bool {
        self.kind() == Kind::Interactive
    }
}

/// Deterministic iff every vertex labeled by a function symbol other than
/// `fin` has exactly one successor.
pub fn classify_determinism(pa: &ProtoAlgorithm) -> Determinism {
    let g = &pa.graph;
    let branching = g.vertices.iter().any(|v| {
        pa.alphabet.is_function(&v.label)
            && v.label != FIN
            && g.degrees(&v.id).map(|(_, out)| out != 1).unwrap_or(false)
    });
    if branching {
        Determinism::NonDeterministic
    } else {
        Determinism::Deterministic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn determinism_of_fixtures() {
        assert_eq!(classify_determinism(&fixtures::parity()), Determinism::Deterministic);
        assert_eq!(classify_determinism(&fixtures::choice()), Determinism::NonDeterministic);
        assert_eq!(classify_determinism(&fixtures::echo()), Determinism::Deterministic);
    }

    #[test]
    fn extra_out_edge_on_function_vertex_breaks_determinism() {
        // PARITY's only non-fin function vertex is the root.
        let mut pa = fixtures::parity();
        pa.alphabet.functions.push("f".into());
        pa.interpretation
            .functions
            .insert("f".into(), table((0..4).map(|d| (d, d))));
        pa.graph.vertices.push(Vertex { id: "v_f".into(), label: "f".into() });
        pa.graph.edges.push(Edge { from: "r".into(), to: "v_f".into(), label: None });
        pa.graph.edges.push(Edge { from: "v_f".into(), to: "v_fin".into(), label: None });
        assert!(validate(&pa).is_valid());
        assert_eq!(classify_determinism(&pa), Determinism::NonDeterministic);
    }

    #[test]
    fn degrees_on_fixtures() {
        let parity = fixtures::parity();
        assert_eq!(vertex_degrees(&parity.graph, "r").unwrap(), (0, 1));
        assert_eq!(vertex_degrees(&parity.graph, "v_fin").unwrap(), (1, 0));
        assert_eq!(vertex_degrees(&fixtures::choice().graph, "r").unwrap(), (0, 2));
        assert!(vertex_degrees(&parity.graph, "nope").is_err());
    }
}

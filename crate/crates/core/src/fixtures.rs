//! Small reference proto-algorithms used by tests, benches and the CLI
//! examples.
//!
//! * `parity`: non-interactive and deterministic, maps `0..=3` to `even`/`odd`.
//! * `choice`: non-interactive and non-deterministic, either increments or
//!   doubles modulo 5.
//! * `echo`: interactive and deterministic, echoes each input until it sees `0`.
//!
//! The remaining constructors are variants of these three.

use std::collections::BTreeMap;

use crate::model::{
    ints, table, AlgorithmGraph, Alphabet, Atom, Edge, Interpretation, Kind, ProtoAlgorithm,
    Table, Vertex,
};

fn vertex(id: &str, label: &str) -> Vertex {
    Vertex { id: id.into(), label: label.into() }
}

fn edge(from: &str, to: &str) -> Edge {
    Edge { from: from.into(), to: to.into(), label: None }
}

fn branch(from: &str, to: &str, label: u8) -> Edge {
    Edge { from: from.into(), to: to.into(), label: Some(label) }
}

fn identity(domain: &[Atom]) -> Table {
    domain.iter().map(|a| (a.clone(), a.clone())).collect()
}

fn parity_of(d: i64) -> Atom {
    Atom::str(if d % 2 == 0 { "even" } else { "odd" })
}

pub fn parity() -> ProtoAlgorithm {
    let d = ints(0..4);
    let mut functions = BTreeMap::new();
    functions.insert("init".into(), identity(&d));
    functions.insert("fin".into(), (0..4).map(|x| (Atom::Int(x), parity_of(x))).collect());
    ProtoAlgorithm {
        alphabet: Alphabet::new(Kind::NonInteractive, ["init", "fin"], Vec::<String>::new()),
        graph: AlgorithmGraph {
            vertices: vec![vertex("r", "init"), vertex("v_fin", "fin")],
            edges: vec![edge("r", "v_fin")],
            root: "r".into(),
        },
        interpretation: Interpretation {
            domain: d.clone(),
            input_domain: d,
            output_domain: vec![Atom::str("even"), Atom::str("odd")],
            functions,
            input_table: None,
            predicates: BTreeMap::new(),
        },
    }
}

pub fn choice() -> ProtoAlgorithm {
    let d = ints(0..5);
    let mut functions = BTreeMap::new();
    functions.insert("init".into(), identity(&ints(0..3)));
    functions.insert("fin".into(), identity(&d));
    functions.insert("inc".into(), table((0..5).map(|x| (x, (x + 1) % 5))));
    functions.insert("dbl".into(), table((0..5).map(|x| (x, (2 * x) % 5))));
    ProtoAlgorithm {
        alphabet: Alphabet::new(
            Kind::NonInteractive,
            ["init", "fin", "inc", "dbl"],
            Vec::<String>::new(),
        ),
        graph: AlgorithmGraph {
            vertices: vec![
                vertex("r", "init"),
                vertex("v_inc", "inc"),
                vertex("v_dbl", "dbl"),
                vertex("v_fin", "fin"),
            ],
            edges: vec![
                edge("r", "v_inc"),
                edge("r", "v_dbl"),
                edge("v_inc", "v_fin"),
                edge("v_dbl", "v_fin"),
            ],
            root: "r".into(),
        },
        interpretation: Interpretation {
            domain: d.clone(),
            input_domain: ints(0..3),
            output_domain: d,
            functions,
            input_table: None,
            predicates: BTreeMap::new(),
        },
    }
}

pub fn echo() -> ProtoAlgorithm {
    let d = ints(0..3);
    let mut functions = BTreeMap::new();
    functions.insert("init".into(), identity(&d));
    functions.insert("fin".into(), identity(&d));
    functions.insert("out".into(), identity(&d));
    let input_table = d
        .iter()
        .map(|x| (x.clone(), identity(&d)))
        .collect::<BTreeMap<_, _>>();
    let mut predicates = BTreeMap::new();
    predicates.insert(
        "iszero".to_string(),
        (0..3).map(|x| (Atom::Int(x), u8::from(x == 0))).collect(),
    );
    ProtoAlgorithm {
        alphabet: Alphabet::new(Kind::Interactive, ["init", "fin", "in", "out"], ["iszero"]),
        graph: AlgorithmGraph {
            vertices: vec![
                vertex("r", "init"),
                vertex("v_p", "iszero"),
                vertex("v_fin", "fin"),
                vertex("v_out", "out"),
                vertex("v_in", "in"),
            ],
            edges: vec![
                edge("r", "v_p"),
                branch("v_p", "v_fin", 1),
                branch("v_p", "v_out", 0),
                edge("v_out", "v_in"),
                edge("v_in", "v_p"),
            ],
            root: "r".into(),
        },
        interpretation: Interpretation {
            domain: d.clone(),
            input_domain: d.clone(),
            output_domain: d,
            functions,
            input_table: Some(input_table),
            predicates,
        },
    }
}

/// PARITY with algorithm-domain atoms renamed `0<->3`, `1<->2` and every
/// table conjugated by the renaming.
pub fn parity_renamed() -> ProtoAlgorithm {
    let rename = |x: i64| 3 - x;
    let mut pa = parity();
    let i = &mut pa.interpretation;
    i.domain = ints([3, 2, 1, 0]);
    // init' = rename . init, with Din unchanged.
    i.functions.insert("init".into(), table((0..4).map(|x| (x, rename(x)))));
    // fin' = fin . rename^-1
    i.functions.insert(
        "fin".into(),
        (0..4).map(|x| (Atom::Int(x), parity_of(rename(x)))).collect(),
    );
    pa
}

/// `parity_renamed` with an extra, unused operation symbol.
pub fn parity_renamed_extra_symbol() -> ProtoAlgorithm {
    let mut pa = parity_renamed();
    pa.alphabet.functions.push("noop".into());
    pa.interpretation.functions.insert("noop".into(), identity(&ints(0..4)));
    pa
}

/// PARITY with a parity test inserted between the root and two fin vertices.
pub fn parity_pred() -> ProtoAlgorithm {
    let mut pa = parity();
    pa.alphabet.predicates = vec!["odd?".into()];
    pa.graph = AlgorithmGraph {
        vertices: vec![
            vertex("r", "init"),
            vertex("v_p", "odd?"),
            vertex("v_fin0", "fin"),
            vertex("v_fin1", "fin"),
        ],
        edges: vec![
            edge("r", "v_p"),
            branch("v_p", "v_fin0", 0),
            branch("v_p", "v_fin1", 1),
        ],
        root: "r".into(),
    };
    pa.interpretation.predicates.insert(
        "odd?".into(),
        (0..4).map(|x| (Atom::Int(x), (x % 2) as u8)).collect(),
    );
    pa
}

/// PARITY whose output domain is collapsed to the single atom `any`.
pub fn parity_collapsed() -> ProtoAlgorithm {
    let mut pa = parity();
    pa.interpretation.output_domain = vec![Atom::str("any")];
    pa.interpretation
        .functions
        .insert("fin".into(), (0..4).map(|x| (Atom::Int(x), Atom::str("any"))).collect());
    pa
}

/// PARITY with a looping identity vertex in front of `fin`.
pub fn parity_loop() -> ProtoAlgorithm {
    let mut pa = parity();
    pa.alphabet.functions.push("f".into());
    pa.interpretation.functions.insert("f".into(), identity(&ints(0..4)));
    pa.graph = AlgorithmGraph {
        vertices: vec![vertex("r", "init"), vertex("v_f", "f"), vertex("v_fin", "fin")],
        edges: vec![edge("r", "v_f"), edge("v_f", "v_f"), edge("v_f", "v_fin")],
        root: "r".into(),
    };
    pa
}

/// PARITY with an identity step in front of `fin`: runs as long as those of
/// `parity_pred`, but the step is an operation rather than a test.
pub fn parity_step() -> ProtoAlgorithm {
    let mut pa = parity();
    pa.alphabet.functions.push("id".into());
    pa.interpretation.functions.insert("id".into(), identity(&ints(0..4)));
    pa.graph = AlgorithmGraph {
        vertices: vec![vertex("r", "init"), vertex("v_id", "id"), vertex("v_fin", "fin")],
        edges: vec![edge("r", "v_id"), edge("v_id", "v_fin")],
        root: "r".into(),
    };
    pa
}

/// CHOICE with the two root out-edges listed in the opposite order.
pub fn choice_swap() -> ProtoAlgorithm {
    let mut pa = choice();
    pa.graph.edges.swap(0, 1);
    pa
}

/// CHOICE with the branching postponed by one identity step.
pub fn choice_seq() -> ProtoAlgorithm {
    let mut pa = choice();
    pa.alphabet.functions.push("id".into());
    pa.interpretation.functions.insert("id".into(), identity(&ints(0..5)));
    pa.graph = AlgorithmGraph {
        vertices: vec![
            vertex("r", "init"),
            vertex("v_id", "id"),
            vertex("v_inc", "inc"),
            vertex("v_dbl", "dbl"),
            vertex("v_fin", "fin"),
        ],
        edges: vec![
            edge("r", "v_id"),
            edge("v_id", "v_inc"),
            edge("v_id", "v_dbl"),
            edge("v_inc", "v_fin"),
            edge("v_dbl", "v_fin"),
        ],
        root: "r".into(),
    };
    pa
}

/// ECHO whose intermediate outputs are all `0`.
pub fn echo_const0() -> ProtoAlgorithm {
    let mut pa = echo();
    pa.interpretation
        .functions
        .insert("out".into(), table((0..3).map(|x| (x, 0))));
    pa
}

/// ECHO with the out/in vertices removed; the 0-branch of the test ends in
/// its own fin vertex.
pub fn echo_trivial() -> ProtoAlgorithm {
    let mut pa = echo();
    pa.graph = AlgorithmGraph {
        vertices: vec![
            vertex("r", "init"),
            vertex("v_p", "iszero"),
            vertex("v_fin", "fin"),
            vertex("v_fin0", "fin"),
        ],
        edges: vec![
            edge("r", "v_p"),
            branch("v_p", "v_fin", 1),
            branch("v_p", "v_fin0", 0),
        ],
        root: "r".into(),
    };
    pa
}

/// The three primary fixtures with their names.
pub fn primary() -> Vec<(&'static str, ProtoAlgorithm)> {
    vec![("parity", parity()), ("choice", choice()), ("echo", echo())]
}

/// Every fixture, primary ones first.
pub fn all() -> Vec<(&'static str, ProtoAlgorithm)> {
    let mut v = primary();
    v.extend([
        ("parity_renamed", parity_renamed()),
        ("parity_renamed_extra_symbol", parity_renamed_extra_symbol()),
        ("parity_pred", parity_pred()),
        ("parity_collapsed", parity_collapsed()),
        ("parity_loop", parity_loop()),
        ("parity_step", parity_step()),
        ("choice_swap", choice_swap()),
        ("choice_seq", choice_seq()),
        ("echo_const0", echo_const0()),
        ("echo_trivial", echo_trivial()),
    ]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    #[test]
    fn every_fixture_validates() {
        for (name, pa) in all() {
            let r = validate(&pa);
            assert!(r.is_valid(), "{name}: {}", r.summary());
        }
    }
}

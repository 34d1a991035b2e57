use std::collections::{BTreeMap, HashSet};

use serde_json::{json, Value};

use super::reader::{child, item, parse_json, render, sorted_object, table_json, FormatError, Reader};
use crate::model::{AlgorithmGraph, Alphabet, Atom, Edge, Interpretation, Kind, ProtoAlgorithm, Vertex, IN, INIT};

/// Parse a definition document. Only the shape is checked; well-formedness
/// is left to [`crate::model::validate`].
pub fn parse_definition(text: &str) -> Result<ProtoAlgorithm, Vec<FormatError>> {
    definition_from_json(&parse_json(text)?)
}

pub fn definition_from_json(v: &Value) -> Result<ProtoAlgorithm, Vec<FormatError>> {
    let mut r = Reader::default();
    let pa = read_definition(&mut r, v);
    r.finish(pa)
}

fn read_kind(r: &mut Reader, v: &Value, path: &str) -> Option<Kind> {
    match v.as_str() {
        Some("non-interactive") => Some(Kind::NonInteractive),
        Some("interactive") => Some(Kind::Interactive),
        _ => {
            r.err(path, "kind must be \"non-interactive\" or \"interactive\"");
            None
        }
    }
}

fn read_definition(r: &mut Reader, v: &Value) -> Option<ProtoAlgorithm> {
    let obj = r.object(v, "", &["kind", "alphabet", "graph", "interpretation"], &[])?;
    let kind = read_kind(r, &obj["kind"], "/kind");
    // Keep going with a guess so later sections still report their errors.
    let assumed = kind.unwrap_or(Kind::NonInteractive);
    let alphabet = read_alphabet(r, &obj["alphabet"], assumed);
    let graph = read_graph(r, &obj["graph"]);
    let interpretation = read_interpretation(r, &obj["interpretation"], assumed);
    kind?;
    Some(ProtoAlgorithm { alphabet: alphabet?, graph: graph?, interpretation: interpretation? })
}

fn read_alphabet(r: &mut Reader, v: &Value, kind: Kind) -> Option<Alphabet> {
    let obj = r.object(v, "/alphabet", &["functions", "predicates"], &[])?;
    let functions = r.strings(&obj["functions"], "/alphabet/functions");
    let predicates = r.strings(&obj["predicates"], "/alphabet/predicates");
    Some(Alphabet { kind, functions: functions?, predicates: predicates? })
}

fn read_graph(r: &mut Reader, v: &Value) -> Option<AlgorithmGraph> {
    let obj = r.object(v, "/graph", &["vertices", "edges", "root"], &[])?;
    let mut vertices = Vec::new();
    let mut ok = true;
    if let Some(items) = r.array(&obj["vertices"], "/graph/vertices") {
        let mut seen = HashSet::new();
        for (i, x) in items.iter().enumerate() {
            let p = item("/graph/vertices", i);
            let Some(o) = r.object(x, &p, &["id", "label"], &[]) else {
                ok = false;
                continue;
            };
            let id = r.string(&o["id"], &child(&p, "id"));
            let label = r.string(&o["label"], &child(&p, "label"));
            match (id, label) {
                (Some(id), Some(label)) => {
                    if !seen.insert(id.clone()) {
                        r.err(&child(&p, "id"), format!("duplicate vertex id `{id}`"));
                        ok = false;
                    }
                    vertices.push(Vertex { id, label });
                }
                _ => ok = false,
            }
        }
    } else {
        ok = false;
    }
    let mut edges = Vec::new();
    if let Some(items) = r.array(&obj["edges"], "/graph/edges") {
        for (i, x) in items.iter().enumerate() {
            let p = item("/graph/edges", i);
            let Some(o) = r.object(x, &p, &["from", "to"], &["label"]) else {
                ok = false;
                continue;
            };
            let from = r.string(&o["from"], &child(&p, "from"));
            let to = r.string(&o["to"], &child(&p, "to"));
            let label = match o.get("label") {
                None => Some(None),
                Some(l) => r.bit(l, &child(&p, "label"), "edge label").map(Some),
            };
            match (from, to, label) {
                (Some(from), Some(to), Some(label)) => edges.push(Edge { from, to, label }),
                _ => ok = false,
            }
        }
    } else {
        ok = false;
    }
    let root = r.string(&obj["root"], "/graph/root");
    (ok && root.is_some()).then(|| AlgorithmGraph { vertices, edges, root: root.unwrap() })
}

fn read_interpretation(r: &mut Reader, v: &Value, kind: Kind) -> Option<Interpretation> {
    const P: &str = "/interpretation";
    let obj = r.object(v, P, &["domain", "input_domain", "output_domain", "functions", "predicates"], &[])?;
    let domain = r.domain(&obj["domain"], &child(P, "domain"));
    let input_domain = r.domain(&obj["input_domain"], &child(P, "input_domain"));
    let output_domain = r.domain(&obj["output_domain"], &child(P, "output_domain"));
    let (Some(domain), Some(input_domain), Some(output_domain)) = (domain, input_domain, output_domain) else {
        return None;
    };

    let mut ok = true;
    let mut functions = BTreeMap::new();
    let mut input_table = None;
    let fpath = child(P, "functions");
    if let Some(tables) = r.object_any(&obj["functions"], &fpath) {
        for (sym, t) in tables {
            let p = child(&fpath, sym);
            if kind == Kind::Interactive && sym == IN {
                let Some(outer) = r.object_any(t, &p) else {
                    ok = false;
                    continue;
                };
                let mut nested = BTreeMap::new();
                for (k, inner) in outer {
                    match r.table(inner, &child(&p, k), &input_domain) {
                        Some(t) => {
                            nested.insert(Atom::resolve_key(k, &domain), t);
                        }
                        None => ok = false,
                    }
                }
                input_table = Some(nested);
                continue;
            }
            let keys = if sym == INIT { &input_domain } else { &domain };
            match r.table(t, &p, keys) {
                Some(t) => {
                    functions.insert(sym.clone(), t);
                }
                None => ok = false,
            }
        }
    } else {
        ok = false;
    }

    let mut predicates = BTreeMap::new();
    let ppath = child(P, "predicates");
    if let Some(tables) = r.object_any(&obj["predicates"], &ppath) {
        for (sym, t) in tables {
            let p = child(&ppath, sym);
            let Some(entries) = r.object_any(t, &p) else {
                ok = false;
                continue;
            };
            let mut table = BTreeMap::new();
            for (k, b) in entries {
                match r.bit(b, &child(&p, k), "predicate value") {
                    Some(b) => {
                        table.insert(Atom::resolve_key(k, &domain), b);
                    }
                    None => ok = false,
                }
            }
            predicates.insert(sym.clone(), table);
        }
    } else {
        ok = false;
    }
    ok.then_some(Interpretation { domain, input_domain, output_domain, functions, input_table, predicates })
}

pub fn definition_to_json(pa: &ProtoAlgorithm) -> Value {
    let atoms = |xs: &[Atom]| Value::Array(xs.iter().map(Atom::to_json).collect());
    let g = &pa.graph;
    let vertices: Vec<Value> = g.vertices.iter().map(|v| json!({"id": v.id, "label": v.label})).collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| {
            let mut m = vec![("from".to_string(), json!(e.from)), ("to".to_string(), json!(e.to))];
            if let Some(l) = e.label {
                m.push(("label".to_string(), json!(l)));
            }
            sorted_object(m)
        })
        .collect();
    let i = &pa.interpretation;
    let mut functions: Vec<(String, Value)> = i.functions.iter().map(|(s, t)| (s.clone(), table_json(t))).collect();
    if let Some(nested) = &i.input_table {
        functions.push((IN.to_string(), sorted_object(nested.iter().map(|(d, t)| (d.key(), table_json(t))))));
    }
    let predicates = i
        .predicates
        .iter()
        .map(|(s, t)| (s.clone(), sorted_object(t.iter().map(|(k, b)| (k.key(), json!(b))))));
    sorted_object([
        ("kind".to_string(), json!(pa.kind().as_str())),
        (
            "alphabet".to_string(),
            sorted_object([
                ("functions".to_string(), json!(pa.alphabet.functions)),
                ("predicates".to_string(), json!(pa.alphabet.predicates)),
            ]),
        ),
        (
            "graph".to_string(),
            sorted_object([
                ("vertices".to_string(), Value::Array(vertices)),
                ("edges".to_string(), Value::Array(edges)),
                ("root".to_string(), json!(g.root)),
            ]),
        ),
        (
            "interpretation".to_string(),
            sorted_object([
                ("domain".to_string(), atoms(&i.domain)),
                ("input_domain".to_string(), atoms(&i.input_domain)),
                ("output_domain".to_string(), atoms(&i.output_domain)),
                ("functions".to_string(), sorted_object(functions)),
                ("predicates".to_string(), sorted_object(predicates)),
            ]),
        ),
    ])
}

/// Canonical document: sorted keys, arrays in declared order, two-space
/// indentation, trailing newline.
pub fn serialize_definition(pa: &ProtoAlgorithm) -> String {
    render(&definition_to_json(pa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::format::Location;

    #[test]
    fn fixtures_round_trip() {
        for (name, pa) in fixtures::all() {
            let text = serialize_definition(&pa);
            let back = parse_definition(&text).unwrap_or_else(|e| panic!("{name}: {e:?}"));
            assert_eq!(back, pa, "{name}");
            assert_eq!(serialize_definition(&back), text);
        }
    }

    #[test]
    fn vertex_objects_are_sorted() {
        let text = serialize_definition(&fixtures::parity());
        assert!(text.contains("\"id\": \"r\",\n        \"label\": \"init\""));
    }

    #[test]
    fn syntax_error_has_position() {
        let errs = parse_definition("{\n  \"kind\": ,\n}").unwrap_err();
        assert!(matches!(errs[0].location, Location::Position { line: 2, .. }));
    }

    fn mutate(f: impl FnOnce(&mut Value)) -> Vec<FormatError> {
        let mut v = definition_to_json(&fixtures::parity());
        f(&mut v);
        definition_from_json(&v).unwrap_err()
    }

    #[test]
    fn edge_label_two() {
        let errs = mutate(|v| v["graph"]["edges"][0]["label"] = json!(2));
        assert_eq!(errs[0].message, "edge label must be 0 or 1");
        assert_eq!(errs[0].location, Location::Path("/graph/edges/0/label".into()));
    }

    #[test]
    fn duplicate_vertex_id() {
        let errs = mutate(|v| v["graph"]["vertices"][1]["id"] = json!("r"));
        assert!(errs[0].message.contains("duplicate vertex id `r`"));
    }

    #[test]
    fn ambiguous_domain() {
        let errs = mutate(|v| v["interpretation"]["domain"].as_array_mut().unwrap().push(json!("1")));
        assert!(errs[0].message.contains("same key rendering"));
    }

    #[test]
    fn several_errors_are_collected() {
        let errs = mutate(|v| {
            v["kind"] = json!("batch");
            v["graph"]["edges"][0]["label"] = json!("x");
            v["interpretation"]["predicates"] = json!({"p": {"0": 7}});
        });
        assert_eq!(errs.len(), 3, "{errs:?}");
    }

    #[test]
    fn missing_and_unknown_members() {
        let errs = mutate(|v| {
            v.as_object_mut().unwrap().remove("graph");
            v["extra"] = json!(1);
        });
        let msgs: Vec<&str> = errs.iter().map(|e| e.message.as_str()).collect();
        assert!(msgs.contains(&"missing member `graph`"));
        assert!(msgs.contains(&"unknown member `extra`"));
    }

    #[test]
    fn integer_and_string_atoms_stay_distinct() {
        let mut pa = fixtures::parity();
        pa.interpretation.output_domain = vec![Atom::str("0"), Atom::str("1")];
        for t in pa.interpretation.functions.get_mut("fin").unwrap().values_mut() {
            *t = if *t == Atom::str("even") { Atom::str("0") } else { Atom::str("1") };
        }
        let back = parse_definition(&serialize_definition(&pa)).unwrap();
        assert_eq!(back, pa);
    }
}

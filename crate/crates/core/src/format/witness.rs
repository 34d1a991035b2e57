use serde_json::{json, Value};

use super::reader::{child, item, parse_json, render, sorted_object, FormatError, Reader};
use crate::equivalence::{EquivalenceWitness, IsoWitness, SimulationWitness};
use crate::model::Atom;
use crate::semantics::{Mode, State};

/// Any witness the checks can produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDocument {
    Isomorphism(IsoWitness),
    Simulation(SimulationWitness),
    Equivalence(EquivalenceWitness),
}

pub fn state_to_json(s: &State) -> Value {
    let opt = |a: &Option<Atom>| a.as_ref().map_or(Value::Null, Atom::to_json);
    let control = s.control.as_ref().map_or(Value::Null, |(v, d)| json!([v, d.to_json()]));
    json!([opt(&s.din), control, opt(&s.dout)])
}

fn pairs<A, B>(xs: &[(A, B)], fa: impl Fn(&A) -> Value, fb: impl Fn(&B) -> Value) -> Value {
    Value::Array(xs.iter().map(|(a, b)| json!([fa(a), fb(b)])).collect())
}

fn atom_pairs(xs: &[(Atom, Atom)]) -> Value {
    pairs(xs, Atom::to_json, Atom::to_json)
}

fn name_pairs(xs: &[(String, String)]) -> Value {
    pairs(xs, |a| json!(a), |b| json!(b))
}

fn simulation_members(w: &SimulationWitness) -> Vec<(String, Value)> {
    vec![
        ("mode".into(), json!(w.mode.as_str())),
        ("pairs".into(), pairs(&w.pairs, state_to_json, state_to_json)),
        ("phi_in".into(), atom_pairs(&w.phi_in)),
        ("phi_out".into(), atom_pairs(&w.phi_out)),
    ]
}

pub fn witness_to_json(w: &WitnessDocument) -> Value {
    match w {
        WitnessDocument::Isomorphism(w) => sorted_object([
            ("type".into(), json!("isomorphism")),
            ("functions".into(), name_pairs(&w.functions)),
            ("predicates".into(), name_pairs(&w.predicates)),
            ("vertices".into(), name_pairs(&w.vertices)),
            ("domain".into(), atom_pairs(&w.domain)),
            ("input_domain".into(), atom_pairs(&w.input_domain)),
            ("output_domain".into(), atom_pairs(&w.output_domain)),
            ("booleans".into(), json!(w.booleans)),
        ]),
        WitnessDocument::Simulation(w) => {
            let mut m = simulation_members(w);
            m.push(("type".into(), json!("simulation")));
            sorted_object(m)
        }
        WitnessDocument::Equivalence(w) => sorted_object([
            ("type".into(), json!("equivalence")),
            ("forward".into(), sorted_object(simulation_members(&w.forward))),
            ("backward".into(), sorted_object(simulation_members(&w.backward))),
        ]),
    }
}

pub fn serialize_witness(w: &WitnessDocument) -> String {
    render(&witness_to_json(w))
}

pub fn parse_witness(text: &str) -> Result<WitnessDocument, Vec<FormatError>> {
    witness_from_json(&parse_json(text)?)
}

pub fn witness_from_json(v: &Value) -> Result<WitnessDocument, Vec<FormatError>> {
    let mut r = Reader::default();
    let w = read_witness(&mut r, v);
    r.finish(w)
}

fn read_witness(r: &mut Reader, v: &Value) -> Option<WitnessDocument> {
    let kind = v.get("type").and_then(Value::as_str);
    match kind {
        Some("isomorphism") => {
            let keys = ["type", "functions", "predicates", "vertices", "domain", "input_domain", "output_domain", "booleans"];
            let o = r.object(v, "", &keys, &[])?;
            let functions = read_pairs(r, &o["functions"], "/functions", |r, x, p| r.string(x, p));
            let predicates = read_pairs(r, &o["predicates"], "/predicates", |r, x, p| r.string(x, p));
            let vertices = read_pairs(r, &o["vertices"], "/vertices", |r, x, p| r.string(x, p));
            let domain = read_pairs(r, &o["domain"], "/domain", |r, x, p| r.atom(x, p));
            let input_domain = read_pairs(r, &o["input_domain"], "/input_domain", |r, x, p| r.atom(x, p));
            let output_domain = read_pairs(r, &o["output_domain"], "/output_domain", |r, x, p| r.atom(x, p));
            let booleans = read_booleans(r, &o["booleans"]);
            Some(WitnessDocument::Isomorphism(IsoWitness {
                functions: functions?,
                predicates: predicates?,
                vertices: vertices?,
                domain: domain?,
                input_domain: input_domain?,
                output_domain: output_domain?,
                booleans: booleans?,
            }))
        }
        Some("simulation") => read_simulation(r, v, "", true).map(WitnessDocument::Simulation),
        Some("equivalence") => {
            let o = r.object(v, "", &["type", "forward", "backward"], &[])?;
            let forward = read_simulation(r, &o["forward"], "/forward", false);
            let backward = read_simulation(r, &o["backward"], "/backward", false);
            Some(WitnessDocument::Equivalence(EquivalenceWitness { forward: forward?, backward: backward? }))
        }
        _ => {
            r.err("/type", "type must be \"isomorphism\", \"simulation\" or \"equivalence\"");
            None
        }
    }
}

fn read_booleans(r: &mut Reader, v: &Value) -> Option<[u8; 2]> {
    let items = r.array(v, "/booleans")?;
    if items.len() != 2 {
        r.err("/booleans", "expected two entries");
        return None;
    }
    Some([r.bit(&items[0], "/booleans/0", "boolean")?, r.bit(&items[1], "/booleans/1", "boolean")?])
}

fn read_pairs<T>(
    r: &mut Reader,
    v: &Value,
    path: &str,
    read: impl Fn(&mut Reader, &Value, &str) -> Option<T>,
) -> Option<Vec<(T, T)>> {
    let items = r.array(v, path)?;
    let mut out = Vec::new();
    let mut ok = true;
    for (i, x) in items.iter().enumerate() {
        let p = item(path, i);
        match x.as_array() {
            Some(pair) if pair.len() == 2 => {
                let a = read(r, &pair[0], &item(&p, 0));
                let b = read(r, &pair[1], &item(&p, 1));
                match (a, b) {
                    (Some(a), Some(b)) => out.push((a, b)),
                    _ => ok = false,
                }
            }
            _ => {
                r.err(&p, "expected a two-element array");
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

pub(crate) fn read_state(r: &mut Reader, v: &Value, path: &str) -> Option<State> {
    let parts = match v.as_array() {
        Some(p) if p.len() == 3 => p,
        _ => {
            r.err(path, "a state is a three-element array");
            return None;
        }
    };
    let opt_atom = |r: &mut Reader, x: &Value, p: &str| -> Option<Option<Atom>> {
        if x.is_null() {
            Some(None)
        } else {
            r.atom(x, p).map(Some)
        }
    };
    let din = opt_atom(r, &parts[0], &item(path, 0));
    let control = match &parts[1] {
        Value::Null => Some(None),
        Value::Array(c) if c.len() == 2 => {
            let v = r.string(&c[0], &item(&item(path, 1), 0));
            let d = r.atom(&c[1], &item(&item(path, 1), 1));
            v.zip(d).map(Some)
        }
        _ => {
            r.err(&item(path, 1), "control is null or a [vertex, atom] pair");
            None
        }
    };
    let dout = opt_atom(r, &parts[2], &item(path, 2));
    Some(State { din: din?, control: control?, dout: dout? })
}

fn read_simulation(r: &mut Reader, v: &Value, path: &str, typed: bool) -> Option<SimulationWitness> {
    let keys: &[&str] = if typed {
        &["type", "mode", "pairs", "phi_in", "phi_out"]
    } else {
        &["mode", "pairs", "phi_in", "phi_out"]
    };
    let o = r.object(v, path, keys, &[])?;
    let mode = match o["mode"].as_str() {
        Some("algorithmic") => Some(Mode::Algorithmic),
        Some("computational") => Some(Mode::Computational),
        _ => {
            r.err(&child(path, "mode"), "mode must be \"algorithmic\" or \"computational\"");
            None
        }
    };
    let pairs = read_pairs(r, &o["pairs"], &child(path, "pairs"), read_state);
    let phi_in = read_pairs(r, &o["phi_in"], &child(path, "phi_in"), |r, x, p| r.atom(x, p));
    let phi_out = read_pairs(r, &o["phi_out"], &child(path, "phi_out"), |r, x, p| r.atom(x, p));
    Some(SimulationWitness { mode: mode?, pairs: pairs?, phi_in: phi_in?, phi_out: phi_out? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{check_equivalence, check_isomorphism, greatest_simulation};
    use crate::fixtures;
    use crate::semantics::StateSpace;

    #[test]
    fn witnesses_round_trip() {
        let (a, b) = (fixtures::parity(), fixtures::parity_renamed());
        let iso = WitnessDocument::Isomorphism(check_isomorphism(&a, &b).unwrap().unwrap());
        let (sa, sb) = (StateSpace::new(&a).unwrap(), StateSpace::new(&b).unwrap());
        let sim = WitnessDocument::Simulation(greatest_simulation(&sa, &sb, Mode::Algorithmic).unwrap().unwrap());
        let e = StateSpace::new(&fixtures::echo()).unwrap();
        let eqv = WitnessDocument::Equivalence(check_equivalence(&e, &e, Mode::Computational).unwrap().unwrap());
        for w in [iso, sim, eqv] {
            let text = serialize_witness(&w);
            assert_eq!(parse_witness(&text).unwrap(), w);
        }
    }

    #[test]
    fn state_rendering() {
        assert_eq!(state_to_json(&State::internal("v", 3)), json!([null, ["v", 3], null]));
        assert_eq!(state_to_json(&State::final_("odd")), json!([null, null, "odd"]));
    }

    #[test]
    fn bad_state_is_located() {
        let doc = json!({"type": "simulation", "mode": "algorithmic", "pairs": [[[1, 2], [null, null, 1]]], "phi_in": [], "phi_out": []});
        let errs = witness_from_json(&doc).unwrap_err();
        assert_eq!(errs[0].location, super::super::Location::Path("/pairs/0/0".into()));
    }
}

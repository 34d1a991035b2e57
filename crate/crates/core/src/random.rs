//! Seeded generators of valid proto-algorithms and of related pairs, for
//! property tests, the oracle comparison and benchmarks.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    input_closure, validate, AlgorithmGraph, Alphabet, Atom, Edge, Interpretation, Kind, ProtoAlgorithm, Table, Vertex, FIN, IN, INIT,
    OUT,
};
use crate::semantics::StateSpace;

/// Seeded generator used throughout the tests.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper bounds for generated models.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub kind: Kind,
    pub operations: usize,
    pub predicates: usize,
    /// Vertices between the root and the fin vertices, not counting
    /// out/in pairs.
    pub middle: usize,
    pub interactions: usize,
    pub fins: usize,
    pub domain: usize,
    pub inputs: usize,
    pub outputs: usize,
}

impl Shape {
    pub fn small(kind: Kind) -> Self {
        Shape { kind, operations: 3, predicates: 2, middle: 4, interactions: 2, fins: 2, domain: 4, inputs: 3, outputs: 3 }
    }

    pub fn tiny(kind: Kind) -> Self {
        Shape { kind, operations: 1, predicates: 1, middle: 1, interactions: 1, fins: 1, domain: 2, inputs: 2, outputs: 2 }
    }

    pub fn medium(kind: Kind) -> Self {
        Shape { kind, operations: 4, predicates: 3, middle: 10, interactions: 3, fins: 3, domain: 8, inputs: 4, outputs: 4 }
    }
}

/// `n` atoms with distinct key renderings, in one of several styles.
fn atoms<R: Rng>(rng: &mut R, prefix: &str, n: usize) -> Vec<Atom> {
    match rng.gen_range(0..4) {
        0 => {
            let base = rng.gen_range(-3..=3);
            (0..n as i64).map(|i| Atom::Int(base + i)).collect()
        }
        1 => (0..n).map(|i| Atom::Str(format!("{prefix}{i}"))).collect(),
        2 => (0..n).map(|i| if i % 2 == 0 { Atom::Int(i as i64) } else { Atom::Str(format!("{prefix}/{i}")) }).collect(),
        _ => (0..n).map(|i| Atom::Str(i.to_string())).collect(),
    }
}

fn random_table<R: Rng>(rng: &mut R, keys: &[Atom], values: &[Atom]) -> Table {
    keys.iter().map(|k| (k.clone(), values.choose(rng).unwrap().clone())).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Root,
    Plain,
    Out,
    In,
    Fin,
}

/// Restrict the algorithm domain to what `init` and the operations generate.
fn minimize(pa: &mut ProtoAlgorithm) {
    let reached = input_closure(&pa.interpretation, &pa.alphabet);
    let i = &mut pa.interpretation;
    i.domain.retain(|d| reached.contains(d));
    for (sym, t) in i.functions.iter_mut() {
        if sym != INIT {
            t.retain(|d, _| reached.contains(d));
        }
    }
    for t in i.predicates.values_mut() {
        t.retain(|d, _| reached.contains(d));
    }
    if let Some(nested) = &mut i.input_table {
        nested.retain(|d, _| reached.contains(d));
    }
}

/// A random proto-algorithm within `shape`; always valid.
pub fn random_model<R: Rng>(rng: &mut R, shape: &Shape) -> ProtoAlgorithm {
    let kind = shape.kind;
    let interactive = kind == Kind::Interactive;
    let ops: Vec<String> = (0..rng.gen_range(1..=shape.operations.max(1))).map(|k| format!("f{k}")).collect();
    let preds: Vec<String> = (0..rng.gen_range(0..=shape.predicates)).map(|k| format!("p{k}")).collect();

    // Vertex order: root, shuffled middle slots, fin vertices.
    let mut slots: Vec<Vec<Role>> = (0..rng.gen_range(0..=shape.middle)).map(|_| vec![Role::Plain]).collect();
    if interactive {
        slots.extend((0..rng.gen_range(0..=shape.interactions)).map(|_| vec![Role::Out, Role::In]));
    }
    slots.shuffle(rng);
    let mut roles = vec![Role::Root];
    roles.extend(slots.into_iter().flatten());
    roles.extend(std::iter::repeat_n(Role::Fin, rng.gen_range(1..=shape.fins.max(1))));
    let n = roles.len();
    let ids: Vec<String> = roles
        .iter()
        .enumerate()
        .map(|(k, r)| match r {
            Role::Root => "r".to_string(),
            Role::Plain => format!("a{k}"),
            Role::Out => format!("o{k}"),
            Role::In => format!("i{k}"),
            Role::Fin => format!("z{k}"),
        })
        .collect();
    // Targets other edges may use: everything but the root and in-vertices.
    let target_ok = |k: usize| roles[k] != Role::Root && roles[k] != Role::In;

    let mut labels = Vec::with_capacity(n);
    let mut edges: BTreeMap<(usize, usize), Option<u8>> = BTreeMap::new();
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        let later: Vec<usize> = (k + 1..n).filter(|&t| target_ok(t)).collect();
        let label = match roles[k] {
            Role::Root => INIT.to_string(),
            Role::Out => OUT.to_string(),
            Role::In => IN.to_string(),
            Role::Fin => FIN.to_string(),
            Role::Plain => {
                if !preds.is_empty() && later.len() >= 2 && rng.gen_bool(0.4) {
                    preds.choose(rng).unwrap().clone()
                } else {
                    ops.choose(rng).unwrap().clone()
                }
            }
        };
        match roles[k] {
            Role::Fin => {}
            Role::Out => {
                edges.insert((k, k + 1), None);
            }
            _ if preds.contains(&label) => {
                let picked: Vec<usize> = later.choose_multiple(rng, 2).copied().collect();
                let bit: u8 = rng.gen_range(0..=1);
                edges.insert((k, picked[0]), Some(bit));
                edges.insert((k, picked[1]), Some(1 - bit));
            }
            _ => {
                let fanout = if rng.gen_bool(0.25) { 2 } else { 1 };
                for _ in 0..fanout {
                    let back: Vec<usize> = (1..=k).filter(|&t| target_ok(t)).collect();
                    let t = if !back.is_empty() && rng.gen_bool(0.2) {
                        *back.choose(rng).unwrap()
                    } else {
                        *later.choose(rng).unwrap()
                    };
                    edges.insert((k, t), None);
                }
            }
        }
        labels.push(label);
    }
    // Every vertex but the root needs a predecessor.
    for k in 1..n {
        if !edges.keys().any(|&(_, t)| t == k) {
            let sources: Vec<usize> = (0..k)
                .filter(|&s| matches!(roles[s], Role::Root | Role::In) || ops.contains(&labels[s]))
                .collect();
            edges.insert((*sources.choose(rng).unwrap(), k), None);
        }
    }

    let mut functions = vec![INIT.to_string(), FIN.to_string()];
    if interactive {
        functions.extend([IN.to_string(), OUT.to_string()]);
    }
    functions.extend(ops.iter().cloned());
    functions.shuffle(rng);

    let size = rng.gen_range(1..=shape.domain.max(1));
    let domain = atoms(rng, "d", size);
    let size = rng.gen_range(1..=shape.inputs.max(1));
    let input_domain = atoms(rng, "x", size);
    let size = rng.gen_range(1..=shape.outputs.max(1));
    let output_domain = atoms(rng, "y", size);
    let mut tables = BTreeMap::new();
    tables.insert(INIT.to_string(), random_table(rng, &input_domain, &domain));
    tables.insert(FIN.to_string(), random_table(rng, &domain, &output_domain));
    for f in &ops {
        tables.insert(f.clone(), random_table(rng, &domain, &domain));
    }
    let mut input_table = None;
    if interactive {
        tables.insert(OUT.to_string(), random_table(rng, &domain, &output_domain));
        input_table = Some(domain.iter().map(|d| (d.clone(), random_table(rng, &input_domain, &domain))).collect());
    }
    let bits = [Atom::Int(0), Atom::Int(1)];
    let predicates = preds
        .iter()
        .map(|p| {
            let t = domain
                .iter()
                .map(|d| (d.clone(), if bits.choose(rng) == Some(&bits[0]) { 0 } else { 1 }))
                .collect();
            (p.clone(), t)
        })
        .collect();

    let mut pa = ProtoAlgorithm {
        alphabet: Alphabet { kind, functions, predicates: preds },
        graph: AlgorithmGraph {
            vertices: ids.iter().zip(&labels).map(|(id, l)| Vertex { id: id.clone(), label: l.clone() }).collect(),
            edges: edges
                .into_iter()
                .map(|((s, t), label)| Edge { from: ids[s].clone(), to: ids[t].clone(), label })
                .collect(),
            root: "r".into(),
        },
        interpretation: Interpretation { domain, input_domain, output_domain, functions: tables, input_table, predicates },
    };
    minimize(&mut pa);
    debug_assert!(validate(&pa).is_valid(), "{}", validate(&pa).summary());
    pa
}

/// A random model whose state space has at most `max_states` states.
pub fn tiny_model<R: Rng>(rng: &mut R, kind: Kind, max_states: usize) -> ProtoAlgorithm {
    loop {
        let pa = random_model(rng, &Shape::tiny(kind));
        if StateSpace::new(&pa).map(|s| s.len() <= max_states).unwrap_or(false) {
            return pa;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Consistent renaming of vertices, symbols and atoms.
    Rename,
    /// Swap the branch labels of every vertex tested by one predicate and
    /// negate its table.
    FlipPredicate,
    /// Change one table entry.
    PerturbTable,
    /// Add an operation symbol no vertex uses.
    AddUnusedSymbol,
    /// Route an edge through a new test whose branches lead to the old
    /// target and to a copy of it.
    InsertTest,
    /// Move one edge of a function vertex to another target.
    RedirectEdge,
}

pub const MUTATIONS: [Mutation; 6] = [
    Mutation::Rename,
    Mutation::FlipPredicate,
    Mutation::PerturbTable,
    Mutation::AddUnusedSymbol,
    Mutation::InsertTest,
    Mutation::RedirectEdge,
];

fn fresh(base: &str, taken: impl Fn(&str) -> bool) -> String {
    (0..).map(|k| format!("{base}{k}")).find(|s| !taken(s)).unwrap()
}

/// An isomorphic copy: vertices, non-reserved symbols and atoms renamed,
/// listing orders shuffled.
pub fn rename<R: Rng>(rng: &mut R, pa: &ProtoAlgorithm) -> ProtoAlgorithm {
    let mut vmap: Vec<String> = (0..pa.graph.vertices.len()).map(|k| format!("w{k}")).collect();
    vmap.shuffle(rng);
    let vmap: BTreeMap<&str, String> = pa.graph.vertices.iter().map(|v| v.id.as_str()).zip(vmap).collect();
    let sym = |s: &str| -> String {
        if pa.alphabet.is_reserved(s) {
            s.to_string()
        } else {
            format!("{s}'")
        }
    };
    let i = &pa.interpretation;
    let conj = |rng: &mut R, xs: &[Atom], prefix: &str| -> BTreeMap<Atom, Atom> {
        let mut target = atoms(rng, prefix, xs.len());
        target.shuffle(rng);
        xs.iter().cloned().zip(target).collect()
    };
    let bd = conj(rng, &i.domain, "e");
    let bi = conj(rng, &i.input_domain, "u");
    let bo = conj(rng, &i.output_domain, "v");
    let map_table = |t: &Table, kmap: &BTreeMap<Atom, Atom>, vmap: &BTreeMap<Atom, Atom>| -> Table {
        t.iter().map(|(k, v)| (kmap[k].clone(), vmap[v].clone())).collect()
    };
    let mut functions = BTreeMap::new();
    for (f, t) in &i.functions {
        let t = match f.as_str() {
            INIT => map_table(t, &bi, &bd),
            FIN | OUT => map_table(t, &bd, &bo),
            _ => map_table(t, &bd, &bd),
        };
        functions.insert(sym(f), t);
    }
    let mut vertices: Vec<Vertex> =
        pa.graph.vertices.iter().map(|v| Vertex { id: vmap[v.id.as_str()].clone(), label: sym(&v.label) }).collect();
    vertices.shuffle(rng);
    let mut edges: Vec<Edge> = pa
        .graph
        .edges
        .iter()
        .map(|e| Edge { from: vmap[e.from.as_str()].clone(), to: vmap[e.to.as_str()].clone(), label: e.label })
        .collect();
    edges.shuffle(rng);
    let mut fs: Vec<String> = pa.alphabet.functions.iter().map(|f| sym(f)).collect();
    fs.shuffle(rng);
    let mut domain: Vec<Atom> = bd.values().cloned().collect();
    domain.shuffle(rng);
    ProtoAlgorithm {
        alphabet: Alphabet { kind: pa.kind(), functions: fs, predicates: pa.alphabet.predicates.iter().map(|p| sym(p)).collect() },
        graph: AlgorithmGraph { vertices, edges, root: vmap[pa.graph.root.as_str()].clone() },
        interpretation: Interpretation {
            domain,
            input_domain: i.input_domain.iter().map(|x| bi[x].clone()).collect(),
            output_domain: i.output_domain.iter().map(|x| bo[x].clone()).collect(),
            functions,
            input_table: i.input_table.as_ref().map(|nested| {
                nested.iter().map(|(d, t)| (bd[d].clone(), map_table(t, &bi, &bd))).collect()
            }),
            predicates: i
                .predicates
                .iter()
                .map(|(p, t)| (sym(p), t.iter().map(|(d, b)| (bd[d].clone(), *b)).collect()))
                .collect(),
        },
    }
}

fn try_mutate<R: Rng>(rng: &mut R, pa: &ProtoAlgorithm, m: Mutation) -> Option<ProtoAlgorithm> {
    let mut out = pa.clone();
    match m {
        Mutation::Rename => return Some(rename(rng, pa)),
        Mutation::FlipPredicate => {
            let used: Vec<&String> =
                pa.alphabet.predicates.iter().filter(|p| pa.graph.vertices.iter().any(|v| &v.label == *p)).collect();
            let p = (*used.choose(rng)?).clone();
            let tested: BTreeSet<String> =
                pa.graph.vertices.iter().filter(|v| v.label == p).map(|v| v.id.clone()).collect();
            for e in &mut out.graph.edges {
                if tested.contains(&e.from) {
                    e.label = e.label.map(|b| 1 - b);
                }
            }
            for b in out.interpretation.predicates.get_mut(&p)?.values_mut() {
                *b = 1 - *b;
            }
        }
        Mutation::PerturbTable => {
            let i = &mut out.interpretation;
            let syms: Vec<String> = i.functions.keys().cloned().collect();
            let s = syms.choose(rng)?.clone();
            let codomain = match s.as_str() {
                FIN | OUT => i.output_domain.clone(),
                _ => i.domain.clone(),
            };
            let t = i.functions.get_mut(&s)?;
            let keys: Vec<Atom> = t.keys().cloned().collect();
            let k = keys.choose(rng)?.clone();
            t.insert(k, codomain.choose(rng)?.clone());
            minimize(&mut out);
        }
        Mutation::AddUnusedSymbol => {
            let name = fresh("u", |s| pa.alphabet.is_function(s) || pa.alphabet.is_predicate(s));
            out.alphabet.functions.push(name.clone());
            let d = out.interpretation.domain.clone();
            out.interpretation.functions.insert(name, random_table(rng, &d, &d));
        }
        Mutation::InsertTest => {
            let g = &pa.graph;
            let candidates: Vec<&Edge> = g
                .edges
                .iter()
                .filter(|e| g.label(&e.from) != Some(OUT) && g.label(&e.to) != Some(IN))
                .collect();
            let e = (*candidates.choose(rng)?).clone();
            let taken = |s: &str| g.contains(s) || pa.alphabet.is_function(s) || pa.alphabet.is_predicate(s);
            let test = fresh("t", taken);
            let copy = fresh("c", taken);
            let pred = fresh("q", taken);
            let label = g.label(&e.to)?.to_string();
            let copied: Vec<Edge> =
                g.edges.iter().filter(|x| x.from == e.to).map(|x| Edge { from: copy.clone(), ..x.clone() }).collect();
            let og = &mut out.graph;
            og.edges.retain(|x| x != &e);
            og.edges.push(Edge { from: e.from.clone(), to: test.clone(), label: e.label });
            og.edges.push(Edge { from: test.clone(), to: e.to.clone(), label: Some(0) });
            og.edges.push(Edge { from: test.clone(), to: copy.clone(), label: Some(1) });
            og.edges.extend(copied);
            og.vertices.push(Vertex { id: test, label: pred.clone() });
            og.vertices.push(Vertex { id: copy, label });
            out.alphabet.predicates.push(pred.clone());
            let table = out.interpretation.domain.iter().map(|d| (d.clone(), rng.gen_range(0..=1))).collect();
            out.interpretation.predicates.insert(pred, table);
        }
        Mutation::RedirectEdge => {
            let g = &pa.graph;
            let movable: Vec<usize> = (0..g.edges.len())
                .filter(|&k| g.edges[k].label.is_none() && g.label(&g.edges[k].from) != Some(OUT))
                .collect();
            let k = *movable.choose(rng)?;
            let targets: Vec<&Vertex> = g.vertices.iter().filter(|v| v.id != g.root && v.label != IN).collect();
            out.graph.edges[k].to = targets.choose(rng)?.id.clone();
        }
    }
    validate(&out).is_valid().then_some(out)
}

/// Apply a random mutation that keeps the model valid.
pub fn mutate<R: Rng>(rng: &mut R, pa: &ProtoAlgorithm) -> (Mutation, ProtoAlgorithm) {
    for _ in 0..32 {
        let m = *MUTATIONS.choose(rng).unwrap();
        if let Some(out) = try_mutate(rng, pa, m) {
            return (m, out);
        }
    }
    (Mutation::Rename, rename(rng, pa))
}

/// A model and a mutated copy of it.
pub fn mutated_pair<R: Rng>(rng: &mut R, shape: &Shape) -> (Mutation, ProtoAlgorithm, ProtoAlgorithm) {
    let a = random_model(rng, shape);
    let (m, b) = mutate(rng, &a);
    (m, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_models_are_valid() {
        let mut r = rng(7);
        for kind in [Kind::NonInteractive, Kind::Interactive] {
            for shape in [Shape::tiny(kind), Shape::small(kind), Shape::medium(kind)] {
                for _ in 0..200 {
                    let pa = random_model(&mut r, &shape);
                    let report = validate(&pa);
                    assert!(report.is_valid(), "{}\n{pa:?}", report.summary());
                }
            }
        }
    }

    #[test]
    fn mutations_stay_valid() {
        let mut r = rng(11);
        let mut seen = BTreeSet::new();
        for kind in [Kind::NonInteractive, Kind::Interactive] {
            for _ in 0..300 {
                let (m, _, b) = mutated_pair(&mut r, &Shape::small(kind));
                assert!(validate(&b).is_valid());
                seen.insert(m as usize);
            }
        }
        assert_eq!(seen.len(), MUTATIONS.len());
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_model(&mut rng(3), &Shape::small(Kind::Interactive));
        let b = random_model(&mut rng(3), &Shape::small(Kind::Interactive));
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_models_fit() {
        let mut r = rng(5);
        for _ in 0..50 {
            let pa = tiny_model(&mut r, Kind::NonInteractive, 5);
            assert!(StateSpace::new(&pa).unwrap().len() <= 5);
        }
    }
}

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use super::{Alphabet, AlgorithmGraph, Atom, Interpretation, Kind, ProtoAlgorithm, FIN, IN, INIT, OUT};

/// Well-formedness rules checked by the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    AlphabetDisjoint,
    AlphabetReserved,
    AlphabetNames,
    GraphEndpoints,
    GraphVertexLabel,
    GraphRootIndegree,
    GraphInitRoot,
    GraphFinSink,
    GraphFunctionEdges,
    GraphPredicateOutdegree,
    GraphPredicateEdgeLabels,
    GraphPredicateCycle,
    GraphOutOutdegree,
    GraphOutInEdges,
    InterpretationTables,
    InterpretationMinimality,
}

impl Rule {
    pub const GRAPH: [Rule; 11] = [
        Rule::GraphEndpoints,
        Rule::GraphVertexLabel,
        Rule::GraphRootIndegree,
        Rule::GraphInitRoot,
        Rule::GraphFinSink,
        Rule::GraphFunctionEdges,
        Rule::GraphPredicateOutdegree,
        Rule::GraphPredicateEdgeLabels,
        Rule::GraphPredicateCycle,
        Rule::GraphOutOutdegree,
        Rule::GraphOutInEdges,
    ];

    pub const INTERPRETATION: [Rule; 2] =
        [Rule::InterpretationTables, Rule::InterpretationMinimality];

    pub fn id(self) -> &'static str {
        match self {
            Rule::AlphabetDisjoint => "alphabet.disjoint",
            Rule::AlphabetReserved => "alphabet.reserved",
            Rule::AlphabetNames => "alphabet.names",
            Rule::GraphEndpoints => "graph.endpoints",
            Rule::GraphVertexLabel => "graph.vertex-label",
            Rule::GraphRootIndegree => "graph.root-indegree",
            Rule::GraphInitRoot => "graph.init-root",
            Rule::GraphFinSink => "graph.fin-sink",
            Rule::GraphFunctionEdges => "graph.function-edges",
            Rule::GraphPredicateOutdegree => "graph.predicate-outdegree",
            Rule::GraphPredicateEdgeLabels => "graph.predicate-edge-labels",
            Rule::GraphPredicateCycle => "graph.predicate-cycle",
            Rule::GraphOutOutdegree => "graph.out-outdegree",
            Rule::GraphOutInEdges => "graph.out-in-edges",
            Rule::InterpretationTables => "interpretation.tables",
            Rule::InterpretationMinimality => "interpretation.minimality",
        }
    }

    /// The formal condition the rule enforces.
    pub fn condition(self) -> &'static str {
        match self {
            Rule::AlphabetDisjoint => "F and P are disjoint",
            Rule::AlphabetReserved => {
                "init, fin in F (interactive: init, fin, in, out in F)"
            }
            Rule::AlphabetNames => "symbol names are non-empty and unique",
            Rule::GraphEndpoints => {
                "vertex ids are unique; root and all edge endpoints are vertices"
            }
            Rule::GraphVertexLabel => "l(v) in F u P",
            Rule::GraphRootIndegree => "indeg(v) = 0 iff v = r",
            Rule::GraphInitRoot => "l(v) = init iff indeg(v) = 0",
            Rule::GraphFinSink => "l(v) = fin iff outdeg(v) = 0",
            Rule::GraphFunctionEdges => "l(v) in F implies l((v,v')) undefined",
            Rule::GraphPredicateOutdegree => "l(v) in P implies outdeg(v) = 2",
            Rule::GraphPredicateEdgeLabels => {
                "l(v) in P implies both out-edges are labeled, with distinct labels in {0,1}"
            }
            Rule::GraphPredicateCycle => "every cycle contains a vertex with l(v) in F",
            Rule::GraphOutOutdegree => "l(v) = out only if outdeg(v) = 1",
            Rule::GraphOutInEdges => "for (v,v') in E: l(v) = out iff l(v') = in",
            Rule::InterpretationTables => {
                "I interprets exactly F u P with total tables into the declared codomains"
            }
            Rule::InterpretationMinimality => {
                "no proper subset of D contains I(init)(Din) and is closed under the operations"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
}

/// Outcome of validation: every violated rule instance plus informational
/// notes. The verdict is valid iff there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn verdict(&self) -> Verdict {
        if self.violations.is_empty() {
            Verdict::Valid
        } else {
            Verdict::Invalid
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct violated rules in rule order.
    pub fn rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            return "valid".to_string();
        }
        let ids: Vec<&str> = self.rules().into_iter().map(Rule::id).collect();
        format!("{} violation(s): {}", self.violations.len(), ids.join(", "))
    }

    fn push(&mut self, rule: Rule, elements: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation { rule, elements, detail: detail.into() });
    }
}

pub fn validate_alphabet(alpha: &Alphabet) -> ValidationReport {
    let mut report = ValidationReport::default();

    // A name shared between F and P is a disjointness problem, reported below.
    for list in [&alpha.functions, &alpha.predicates] {
        let mut seen = HashSet::new();
        for name in list {
            if name.is_empty() {
                report.push(Rule::AlphabetNames, vec![name.clone()], "empty symbol name");
            } else if !seen.insert(name.as_str()) {
                report.push(Rule::AlphabetNames, vec![name.clone()], "duplicate symbol");
            }
        }
    }

    for p in &alpha.predicates {
        if alpha.is_function(p) {
            report.push(
                Rule::AlphabetDisjoint,
                vec![p.clone()],
                format!("`{p}` is both a function and a predicate symbol"),
            );
        }
    }

    for reserved in Alphabet::reserved(alpha.kind) {
        if !alpha.is_function(reserved) {
            report.push(
                Rule::AlphabetReserved,
                vec![reserved.to_string()],
                format!("reserved function symbol `{reserved}` is missing"),
            );
        }
    }
    report
}

/// True iff some cycle consists solely of predicate-labeled vertices.
pub fn has_predicate_only_cycle(g: &AlgorithmGraph, alpha: &Alphabet) -> bool {
    !predicate_cycle_vertices(g, alpha).is_empty()
}

/// Vertices lying on a predicate-only cycle (empty when there is none).
fn predicate_cycle_vertices(g: &AlgorithmGraph, alpha: &Alphabet) -> Vec<String> {
    let preds: Vec<&str> = g
        .vertices
        .iter()
        .filter(|v| alpha.is_predicate(&v.label))
        .map(|v| v.id.as_str())
        .collect();
    let index: BTreeMap<&str, usize> = preds.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![Vec::new(); preds.len()];
    for e in g.proper_edges() {
        if let (Some(&a), Some(&b)) = (index.get(e.from.as_str()), index.get(e.to.as_str())) {
            adj[a].push(b);
        }
    }

    // Iterative three-colour DFS; report the vertices of the first back edge's cycle.
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        White,
        Grey,
        Black,
    }
    let mut colour = vec![Colour::White; preds.len()];
    for start in 0..preds.len() {
        if colour[start] != Colour::White {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        colour[start] = Colour::Grey;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match colour[w] {
                    Colour::White => {
                        colour[w] = Colour::Grey;
                        stack.push((w, 0));
                    }
                    Colour::Grey => {
                        let pos = stack.iter().position(|&(u, _)| u == w).unwrap();
                        return stack[pos..].iter().map(|&(u, _)| preds[u].to_string()).collect();
                    }
                    Colour::Black => {}
                }
            } else {
                colour[v] = Colour::Black;
                stack.pop();
            }
        }
    }
    Vec::new()
}

pub fn validate_graph(g: &AlgorithmGraph, alpha: &Alphabet) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut ids = HashSet::new();
    for v in &g.vertices {
        if !ids.insert(v.id.as_str()) {
            report.push(Rule::GraphEndpoints, vec![v.id.clone()], "duplicate vertex id");
        }
    }
    if !g.contains(&g.root) {
        report.push(Rule::GraphEndpoints, vec![g.root.clone()], "root is not a vertex");
    }
    for e in &g.edges {
        for end in [&e.from, &e.to] {
            if !g.contains(end) {
                report.push(
                    Rule::GraphEndpoints,
                    vec![format!("{}->{}", e.from, e.to)],
                    format!("edge endpoint `{end}` is not a vertex"),
                );
            }
        }
    }

    for v in &g.vertices {
        if !alpha.is_function(&v.label) && !alpha.is_predicate(&v.label) {
            report.push(
                Rule::GraphVertexLabel,
                vec![v.id.clone()],
                format!("label `{}` is not a symbol of the alphabet", v.label),
            );
        }
    }

    for v in &g.vertices {
        let (indeg, outdeg) = g.degrees(&v.id).unwrap_or((0, 0));
        let is_root = v.id == g.root;
        if (indeg == 0) != is_root {
            let detail = if is_root {
                format!("root has indegree {indeg}")
            } else {
                "non-root vertex has indegree 0".to_string()
            };
            report.push(Rule::GraphRootIndegree, vec![v.id.clone()], detail);
        }
        if (v.label == INIT) != (indeg == 0) {
            report.push(
                Rule::GraphInitRoot,
                vec![v.id.clone()],
                format!("label `{}` with indegree {indeg}", v.label),
            );
        }
        if (v.label == FIN) != (outdeg == 0) {
            report.push(
                Rule::GraphFinSink,
                vec![v.id.clone()],
                format!("label `{}` with outdegree {outdeg}", v.label),
            );
        }
        if alpha.is_function(&v.label) {
            for e in g.successors(&v.id) {
                if e.label.is_some() {
                    report.push(
                        Rule::GraphFunctionEdges,
                        vec![format!("{}->{}", e.from, e.to)],
                        "edge leaving a function vertex carries a label",
                    );
                }
            }
        }
        if alpha.is_predicate(&v.label) {
            if outdeg != 2 {
                report.push(
                    Rule::GraphPredicateOutdegree,
                    vec![v.id.clone()],
                    format!("predicate vertex has outdegree {outdeg}"),
                );
            } else {
                let labels: Vec<Option<u8>> = g.successors(&v.id).map(|e| e.label).collect();
                let ok = labels.len() == 2
                    && labels.iter().all(|l| matches!(l, Some(0) | Some(1)))
                    && labels[0] != labels[1];
                if !ok {
                    report.push(
                        Rule::GraphPredicateEdgeLabels,
                        vec![v.id.clone()],
                        format!("out-edge labels {labels:?}"),
                    );
                }
            }
        }
        if alpha.kind == Kind::Interactive && v.label == OUT && outdeg != 1 {
            report.push(
                Rule::GraphOutOutdegree,
                vec![v.id.clone()],
                format!("out vertex has outdegree {outdeg}"),
            );
        }
    }

    let cycle = predicate_cycle_vertices(g, alpha);
    if !cycle.is_empty() {
        report.push(Rule::GraphPredicateCycle, cycle, "cycle through predicate vertices only");
    }

    if alpha.kind == Kind::Interactive {
        for e in g.proper_edges() {
            let from_out = g.label(&e.from) == Some(OUT);
            let to_in = g.label(&e.to) == Some(IN);
            if from_out != to_in {
                report.push(
                    Rule::GraphOutInEdges,
                    vec![format!("{}->{}", e.from, e.to)],
                    if from_out {
                        "edge leaves an out vertex but does not enter an in vertex"
                    } else {
                        "edge enters an in vertex but does not leave an out vertex"
                    },
                );
            }
        }
    }
    report
}

/// Closure of `I(init)(Din)` under the operations (and, for interactive
/// models, under `d -> I(in)(d, din)` for every input value). Undefined
/// table entries are skipped.
pub fn input_closure(i: &Interpretation, alpha: &Alphabet) -> BTreeSet<Atom> {
    let mut closure = BTreeSet::new();
    let mut work = Vec::new();
    if let Some(init) = i.function(INIT) {
        for din in &i.input_domain {
            if let Some(d) = init.get(din) {
                if closure.insert(d.clone()) {
                    work.push(d.clone());
                }
            }
        }
    }
    let ops: Vec<&str> = alpha.operations().collect();
    while let Some(d) = work.pop() {
        let mut next = Vec::new();
        for op in &ops {
            if let Some(e) = i.apply(op, &d) {
                next.push(e.clone());
            }
        }
        if alpha.kind == Kind::Interactive {
            for din in &i.input_domain {
                if let Some(e) = i.apply_input(&d, din) {
                    next.push(e.clone());
                }
            }
        }
        for e in next {
            if closure.insert(e.clone()) {
                work.push(e);
            }
        }
    }
    closure
}

fn check_unique(report: &mut ValidationReport, atoms: &[Atom], name: &str) {
    let mut seen = HashSet::new();
    for a in atoms {
        if !seen.insert(a) {
            report.push(
                Rule::InterpretationTables,
                vec![a.key()],
                format!("duplicate atom in the {name}"),
            );
        }
    }
}

fn check_table(
    report: &mut ValidationReport,
    symbol: &str,
    table: &BTreeMap<Atom, Atom>,
    domain: &[Atom],
    codomain: &[Atom],
) {
    for arg in domain {
        match table.get(arg) {
            None => report.push(
                Rule::InterpretationTables,
                vec![symbol.to_string(), arg.key()],
                format!("I({symbol}) is undefined at {arg}"),
            ),
            Some(val) if !codomain.contains(val) => report.push(
                Rule::InterpretationTables,
                vec![symbol.to_string(), arg.key()],
                format!("I({symbol})({arg}) = {val} is outside the codomain"),
            ),
            Some(_) => {}
        }
    }
    for arg in table.keys() {
        if !domain.contains(arg) {
            report.push(
                Rule::InterpretationTables,
                vec![symbol.to_string(), arg.key()],
                format!("I({symbol}) has an entry for {arg} outside its domain"),
            );
        }
    }
}

pub fn validate_interpretation(i: &Interpretation, alpha: &Alphabet) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_unique(&mut report, &i.domain, "algorithm domain");
    check_unique(&mut report, &i.input_domain, "input domain");
    check_unique(&mut report, &i.output_domain, "output domain");

    for f in &alpha.functions {
        if f == IN && alpha.kind == Kind::Interactive {
            continue;
        }
        let Some(table) = i.function(f) else {
            report.push(
                Rule::InterpretationTables,
                vec![f.clone()],
                format!("function symbol `{f}` is not interpreted"),
            );
            continue;
        };
        let (dom, cod) = match f.as_str() {
            INIT => (&i.input_domain, &i.domain),
            FIN => (&i.domain, &i.output_domain),
            OUT if alpha.kind == Kind::Interactive => (&i.domain, &i.output_domain),
            _ => (&i.domain, &i.domain),
        };
        check_table(&mut report, f, table, dom, cod);
    }
    for f in i.functions.keys() {
        if !alpha.is_function(f) || (f == IN && alpha.kind == Kind::Interactive) {
            report.push(
                Rule::InterpretationTables,
                vec![f.clone()],
                format!("`{f}` is interpreted but is not a unary function symbol"),
            );
        }
    }

    match (&i.input_table, alpha.kind) {
        (Some(rows), Kind::Interactive) => {
            for d in &i.domain {
                match rows.get(d) {
                    None => report.push(
                        Rule::InterpretationTables,
                        vec![IN.to_string(), d.key()],
                        format!("I(in) has no row for {d}"),
                    ),
                    Some(row) => check_table(&mut report, IN, row, &i.input_domain, &i.domain),
                }
            }
            for d in rows.keys() {
                if !i.domain.contains(d) {
                    report.push(
                        Rule::InterpretationTables,
                        vec![IN.to_string(), d.key()],
                        format!("I(in) has a row for {d} outside the algorithm domain"),
                    );
                }
            }
        }
        (None, Kind::Interactive) => report.push(
            Rule::InterpretationTables,
            vec![IN.to_string()],
            "function symbol `in` is not interpreted",
        ),
        (Some(_), Kind::NonInteractive) => report.push(
            Rule::InterpretationTables,
            vec![IN.to_string()],
            "binary `in` table on a non-interactive model",
        ),
        (None, Kind::NonInteractive) => {}
    }

    for p in &alpha.predicates {
        let Some(table) = i.predicates.get(p) else {
            report.push(
                Rule::InterpretationTables,
                vec![p.clone()],
                format!("predicate symbol `{p}` is not interpreted"),
            );
            continue;
        };
        for d in &i.domain {
            match table.get(d) {
                None => report.push(
                    Rule::InterpretationTables,
                    vec![p.clone(), d.key()],
                    format!("I({p}) is undefined at {d}"),
                ),
                Some(b) if *b > 1 => report.push(
                    Rule::InterpretationTables,
                    vec![p.clone(), d.key()],
                    format!("I({p})({d}) = {b} is not 0 or 1"),
                ),
                Some(_) => {}
            }
        }
        for d in table.keys() {
            if !i.domain.contains(d) {
                report.push(
                    Rule::InterpretationTables,
                    vec![p.clone(), d.key()],
                    format!("I({p}) has an entry for {d} outside the algorithm domain"),
                );
            }
        }
    }
    for p in i.predicates.keys() {
        if !alpha.is_predicate(p) {
            report.push(
                Rule::InterpretationTables,
                vec![p.clone()],
                format!("`{p}` is interpreted but is not a predicate symbol"),
            );
        }
    }

    let closure = input_closure(i, alpha);
    let unreachable: Vec<String> =
        i.domain.iter().filter(|d| !closure.contains(d)).map(Atom::key).collect();
    if !unreachable.is_empty() {
        report.push(
            Rule::InterpretationMinimality,
            unreachable,
            "atoms of D outside the closure of I(init)(Din)",
        );
    }

    report.notes.push(
        "input and output domains are finite enumerations and hence finitely generated"
            .to_string(),
    );
    report
}

/// Alphabet, graph and interpretation validation in one report.
pub fn validate(pa: &ProtoAlgorithm) -> ValidationReport {
    let mut report = validate_alphabet(&pa.alphabet);
    report.merge(validate_graph(&pa.graph, &pa.alphabet));
    report.merge(validate_interpretation(&pa.interpretation, &pa.alphabet));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{Edge, Vertex};

    #[test]
    fn minimal_alphabet_is_valid() {
        let a = Alphabet::new(Kind::NonInteractive, ["init", "fin"], ["p"]);
        assert!(validate_alphabet(&a).is_valid());
    }

    #[test]
    fn missing_fin_is_reported() {
        let a = Alphabet::new(Kind::NonInteractive, ["init"], Vec::<String>::new());
        let r = validate_alphabet(&a);
        assert_eq!(r.rules(), [Rule::AlphabetReserved].into());
        assert_eq!(r.violations[0].elements, vec!["fin".to_string()]);
    }

    #[test]
    fn overlapping_symbol_is_reported() {
        let a = Alphabet::new(Kind::Interactive, ["init", "fin", "in", "out", "f", "p"], ["p"]);
        assert_eq!(validate_alphabet(&a).rules(), [Rule::AlphabetDisjoint].into());
    }

    #[test]
    fn duplicate_and_empty_names() {
        let a = Alphabet::new(Kind::NonInteractive, ["init", "fin", "f", "f", ""], ["q"]);
        let r = validate_alphabet(&a);
        assert_eq!(r.rules(), [Rule::AlphabetNames].into());
        assert_eq!(r.violations.len(), 2);
    }

    #[test]
    fn predicate_cycle_detection() {
        assert!(!has_predicate_only_cycle(&fixtures::echo().graph, &fixtures::echo().alphabet));
        assert!(!has_predicate_only_cycle(&fixtures::parity().graph, &fixtures::parity().alphabet));

        let alpha = Alphabet::new(Kind::NonInteractive, ["init", "fin"], ["p"]);
        let g = AlgorithmGraph {
            vertices: vec![
                Vertex { id: "r".into(), label: "init".into() },
                Vertex { id: "v".into(), label: "p".into() },
                Vertex { id: "f".into(), label: "fin".into() },
            ],
            edges: vec![
                Edge { from: "r".into(), to: "v".into(), label: None },
                Edge { from: "v".into(), to: "v".into(), label: Some(0) },
                Edge { from: "v".into(), to: "f".into(), label: Some(1) },
            ],
            root: "r".into(),
        };
        assert!(has_predicate_only_cycle(&g, &alpha));
        assert_eq!(validate_graph(&g, &alpha).rules(), [Rule::GraphPredicateCycle].into());
    }

    #[test]
    fn fixtures_validate() {
        for pa in [fixtures::parity(), fixtures::choice(), fixtures::echo()] {
            let r = validate(&pa);
            assert!(r.is_valid(), "{}", r.summary());
        }
    }

    #[test]
    fn closure_of_choice_is_all_of_d() {
        let pa = fixtures::choice();
        let closure = input_closure(&pa.interpretation, &pa.alphabet);
        assert_eq!(closure, pa.interpretation.domain.iter().cloned().collect());
    }

    #[test]
    fn unreachable_atom_breaks_minimality() {
        let mut pa = fixtures::parity();
        pa.interpretation.domain.push(Atom::Int(9));
        pa.interpretation
            .functions
            .get_mut(FIN)
            .unwrap()
            .insert(Atom::Int(9), Atom::str("odd"));
        let r = validate_interpretation(&pa.interpretation, &pa.alphabet);
        assert_eq!(r.rules(), [Rule::InterpretationMinimality].into());
        assert_eq!(r.violations[0].elements, vec!["9".to_string()]);
    }

    #[test]
    fn validation_is_pure() {
        let mut pa = fixtures::echo();
        pa.graph.edges.push(Edge { from: "v_p".into(), to: "v_in".into(), label: None });
        assert_eq!(validate(&pa), validate(&pa));
    }
}

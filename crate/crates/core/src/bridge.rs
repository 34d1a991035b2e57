//! Non-interactive proto-algorithms as trivial interactive ones.
//!
//! An interactive model with no `in`/`out` vertices never interacts: it reads
//! one input and produces one output, exactly like a non-interactive model.
//! Expanding a non-interactive model by tables for `in` and `out` (graph
//! untouched) yields such a trivial model with the same steps and, on
//! one-element streams, the same computed relation.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::model::{input_closure, validate, Alphabet, Atom, Kind, ProtoAlgorithm, Table, FIN, IN, INIT, OUT};
use crate::semantics::{computed_relation, ComputedRelation, StateSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    NonTrivial,
}

/// Tables added to a non-interactive model: `in_table[d][din]` and
/// `out_table[d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub in_table: BTreeMap<Atom, Table>,
    pub out_table: Table,
}

impl ExpansionSpec {
    /// `in` ignores the input (`in(d, din) = d`), `out` copies `fin`.
    pub fn projection(na: &ProtoAlgorithm) -> Self {
        let i = &na.interpretation;
        let in_table = i
            .domain
            .iter()
            .map(|d| (d.clone(), i.input_domain.iter().map(|x| (x.clone(), d.clone())).collect()))
            .collect();
        ExpansionSpec { in_table, out_table: i.function(FIN).cloned().unwrap_or_default() }
    }
}

fn require_valid(pa: &ProtoAlgorithm) -> Result<(), Error> {
    let report = validate(pa);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

fn require_kind(pa: &ProtoAlgorithm, kind: Kind) -> Result<(), Error> {
    if pa.kind() == kind {
        Ok(())
    } else {
        Err(Error::KindMismatch { expected: kind, found: pa.kind() })
    }
}

pub fn classify_triviality(ia: &ProtoAlgorithm) -> Result<Triviality, Error> {
    require_kind(ia, Kind::Interactive)?;
    require_valid(ia)?;
    let interacts = ia.graph.vertices.iter().any(|v| v.label == IN || v.label == OUT);
    Ok(if interacts { Triviality::NonTrivial } else { Triviality::Trivial })
}

/// Add `in` and `out` to the alphabet and interpret them by `spec`.
pub fn expand_to_interactive(na: &ProtoAlgorithm, spec: &ExpansionSpec) -> Result<ProtoAlgorithm, Error> {
    require_kind(na, Kind::NonInteractive)?;
    require_valid(na)?;
    let mut functions = na.alphabet.functions.clone();
    functions.extend([IN.to_string(), OUT.to_string()]);
    let mut interpretation = na.interpretation.clone();
    interpretation.functions.insert(OUT.into(), spec.out_table.clone());
    interpretation.input_table = Some(spec.in_table.clone());
    let ia = ProtoAlgorithm {
        alphabet: Alphabet { kind: Kind::Interactive, functions, predicates: na.alphabet.predicates.clone() },
        graph: na.graph.clone(),
        interpretation,
    };
    let report = validate(&ia);
    if !report.is_valid() {
        return Err(Error::InvalidExpansion(report));
    }
    Ok(ia)
}

/// Drop `in` and `out` from a trivial interactive model.
///
/// The interactive domain is closed under `in` even though no vertex
/// applies it, so atoms only `in` produces are dropped as well; no run can
/// reach them.
pub fn collapse_trivial(ia: &ProtoAlgorithm) -> Result<ProtoAlgorithm, Error> {
    if classify_triviality(ia)? == Triviality::NonTrivial {
        return Err(Error::Precondition("model has in/out vertices".into()));
    }
    let mut na = ia.clone();
    na.alphabet.kind = Kind::NonInteractive;
    na.alphabet.functions.retain(|f| f != IN && f != OUT);
    let i = &mut na.interpretation;
    i.functions.remove(OUT);
    i.input_table = None;
    let reached = input_closure(i, &na.alphabet);
    i.domain.retain(|d| reached.contains(d));
    for (f, t) in i.functions.iter_mut() {
        if f != INIT {
            t.retain(|d, _| reached.contains(d));
        }
    }
    for t in i.predicates.values_mut() {
        t.retain(|d, _| reached.contains(d));
    }
    Ok(na)
}

/// F ⊆ F', P ⊆ P', same vertices, edges, labeling and root, same domains,
/// and every table of A equal to the corresponding table of A'.
pub fn is_expansion(a: &ProtoAlgorithm, b: &ProtoAlgorithm) -> bool {
    let (fa, fb) = (&a.alphabet, &b.alphabet);
    if a.kind() == Kind::Interactive && b.kind() == Kind::NonInteractive {
        return false;
    }
    let symbols = fa.functions.iter().all(|f| fb.is_function(f)) && fa.predicates.iter().all(|p| fb.is_predicate(p));
    let mut ea: Vec<_> = a.graph.edges.iter().collect();
    let mut eb: Vec<_> = b.graph.edges.iter().collect();
    ea.sort_by(|x, y| (&x.from, &x.to, x.label).cmp(&(&y.from, &y.to, y.label)));
    eb.sort_by(|x, y| (&x.from, &x.to, x.label).cmp(&(&y.from, &y.to, y.label)));
    let mut va = a.graph.vertices.clone();
    let mut vb = b.graph.vertices.clone();
    va.sort_by(|x, y| x.id.cmp(&y.id));
    vb.sort_by(|x, y| x.id.cmp(&y.id));
    let graph = va == vb && ea == eb && a.graph.root == b.graph.root;
    let (ia, ib) = (&a.interpretation, &b.interpretation);
    let domains = ia.domain == ib.domain && ia.input_domain == ib.input_domain && ia.output_domain == ib.output_domain;
    let tables = fa.functions.iter().all(|f| f == IN || ia.function(f) == ib.function(f))
        && fa.predicates.iter().all(|p| ia.predicates.get(p) == ib.predicates.get(p))
        && (a.kind() == Kind::NonInteractive || ia.input_table == ib.input_table);
    symbols && graph && domains && tables
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// Both models have the same states and the same algorithmic steps.
    pub astep_agreement: bool,
    pub shared_states: usize,
    /// The non-interactive relation equals the interactive one on
    /// one-element streams.
    pub relation_agreement: bool,
    pub singleton_pairs: usize,
    /// Pairs of the interactive model on longer streams (always zero for a
    /// trivial model, which consumes exactly one input).
    pub longer_stream_pairs: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.astep_agreement && self.relation_agreement
    }
}

pub fn verify_embedding(na: &ProtoAlgorithm, ia: &ProtoAlgorithm, stream_bound: usize) -> Result<EmbeddingReport, Error> {
    require_kind(na, Kind::NonInteractive)?;
    if !is_expansion(na, ia) {
        return Err(Error::Precondition("the interactive model is not an expansion of the non-interactive one".into()));
    }
    if classify_triviality(ia)? != Triviality::Trivial {
        return Err(Error::Precondition("the interactive model is not trivial".into()));
    }
    let (sa, sb) = (StateSpace::new(na)?, StateSpace::new(ia)?);
    let mut failures = Vec::new();
    if sa.states() != sb.states() {
        failures.push("state sets differ".to_string());
    }
    let mut shared = 0;
    for s in sa.states() {
        let Some(_) = sb.index_of(s) else { continue };
        shared += 1;
        if sa.astep(s)? != sb.astep(s)? {
            failures.push(format!("astep differs at {s}"));
        }
    }
    let astep_agreement = failures.is_empty();

    let ComputedRelation::Values(values) = computed_relation(&sa, 1) else { unreachable!() };
    let streams = computed_relation(&sb, stream_bound.max(1)).stream_pairs();
    let singletons: Vec<(Atom, Atom)> = streams
        .iter()
        .filter(|(i, o)| i.len() == 1 && o.len() == 1)
        .map(|(i, o)| (i[0].clone(), o[0].clone()))
        .collect();
    let longer_stream_pairs = streams.iter().filter(|(i, _)| i.len() > 1).count();
    let relation_agreement = values == singletons;
    if !relation_agreement {
        failures.push("relation differs on one-element streams".to_string());
    }
    Ok(EmbeddingReport {
        astep_agreement,
        shared_states: shared,
        relation_agreement,
        singleton_pairs: singletons.len(),
        longer_stream_pairs,
        failures,
    })
}

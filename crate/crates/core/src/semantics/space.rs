use std::collections::HashMap;

use super::{Mode, State, StateKind};
use crate::error::Error;
use crate::model::{validate, Atom, Kind, ProtoAlgorithm, FIN, IN, INIT, OUT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Init,
    Fin,
    Out,
    In,
    Op(usize),
    Pred(usize),
}

/// Compiled form of a valid proto-algorithm: every state indexed in
/// canonical order, with both step functions tabulated.
///
/// Canonical order: initial states (input-domain order), then per vertex in
/// declared order its internal states (algorithm-domain order) or, for `in`
/// vertices, its interaction states ordered by `(d, din, dout)`, then final
/// states (output-domain order). Successor lists are ascending in that order.
#[derive(Debug, Clone)]
pub struct StateSpace {
    kind: Kind,
    states: Vec<State>,
    kinds: Vec<StateKind>,
    index: HashMap<State, usize>,
    astep: Vec<Vec<usize>>,
    cstep: Vec<Vec<usize>>,
    initial: Vec<usize>,
    finals: Vec<usize>,
    din: Vec<Option<usize>>,
    dout: Vec<Option<usize>>,
    input_domain: Vec<Atom>,
    output_domain: Vec<Atom>,
}

impl StateSpace {
    /// Validate `pa` and tabulate its state space.
    pub fn new(pa: &ProtoAlgorithm) -> Result<Self, Error> {
        let report = validate(pa);
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        Ok(Compiler::new(pa).build())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &State {
        &self.states[i]
    }

    pub fn state_kind(&self, i: usize) -> StateKind {
        self.kinds[i]
    }

    pub fn index_of(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &State) -> Result<usize, Error> {
        self.index_of(s).ok_or_else(|| Error::UnknownState(s.to_string()))
    }

    /// Initial state indices, one per input atom in domain order.
    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    /// Final state indices, one per output atom in domain order.
    pub fn final_states(&self) -> &[usize] {
        &self.finals
    }

    pub fn successors(&self, i: usize, mode: Mode) -> &[usize] {
        match mode {
            Mode::Algorithmic => &self.astep[i],
            Mode::Computational => &self.cstep[i],
        }
    }

    /// Index into the input domain of the state's input component.
    pub fn din_index(&self, i: usize) -> Option<usize> {
        self.din[i]
    }

    pub fn dout_index(&self, i: usize) -> Option<usize> {
        self.dout[i]
    }

    pub fn input_domain(&self) -> &[Atom] {
        &self.input_domain
    }

    pub fn output_domain(&self) -> &[Atom] {
        &self.output_domain
    }

    pub fn input_index(&self, a: &Atom) -> Option<usize> {
        self.input_domain.iter().position(|x| x == a)
    }

    pub fn astep(&self, s: &State) -> Result<Vec<State>, Error> {
        self.step(s, Mode::Algorithmic)
    }

    pub fn cstep(&self, s: &State) -> Result<Vec<State>, Error> {
        self.step(s, Mode::Computational)
    }

    pub fn step(&self, s: &State, mode: Mode) -> Result<Vec<State>, Error> {
        let i = self.require(s)?;
        Ok(self.successors(i, mode).iter().map(|&j| self.states[j].clone()).collect())
    }
}

/// Every state of `pa` in canonical order.
pub fn enumerate_states(pa: &ProtoAlgorithm) -> Result<Vec<State>, Error> {
    Ok(StateSpace::new(pa)?.states)
}

/// Algorithmic successors of `s`.
pub fn astep(pa: &ProtoAlgorithm, s: &State) -> Result<Vec<State>, Error> {
    StateSpace::new(pa)?.astep(s)
}

/// Computational successors of `s`: predicate inspections are collapsed.
pub fn cstep(pa: &ProtoAlgorithm, s: &State) -> Result<Vec<State>, Error> {
    StateSpace::new(pa)?.cstep(s)
}

struct Compiler<'a> {
    pa: &'a ProtoAlgorithm,
    d: &'a [Atom],
    din: &'a [Atom],
    dout: &'a [Atom],
    roles: Vec<Role>,
    succ: Vec<Vec<(usize, Option<u8>)>>,
    ops: Vec<Vec<usize>>,
    preds: Vec<Vec<u8>>,
}

fn position(domain: &[Atom], a: &Atom) -> usize {
    domain.iter().position(|x| x == a).expect("validated table value lies in its codomain")
}

impl<'a> Compiler<'a> {
    fn new(pa: &'a ProtoAlgorithm) -> Self {
        let i = &pa.interpretation;
        let g = &pa.graph;
        let vid: HashMap<&str, usize> =
            g.vertices.iter().enumerate().map(|(k, v)| (v.id.as_str(), k)).collect();
        let mut succ = vec![Vec::new(); g.vertices.len()];
        for e in &g.edges {
            let (a, b) = (vid[e.from.as_str()], vid[e.to.as_str()]);
            if !succ[a].iter().any(|&(t, _)| t == b) {
                succ[a].push((b, e.label));
            }
        }
        for s in &mut succ {
            s.sort();
        }

        let mut op_names: Vec<&str> = Vec::new();
        let mut pred_names: Vec<&str> = Vec::new();
        let interactive = pa.alphabet.kind == Kind::Interactive;
        let roles = g
            .vertices
            .iter()
            .map(|v| match v.label.as_str() {
                INIT => Role::Init,
                FIN => Role::Fin,
                OUT if interactive => Role::Out,
                IN if interactive => Role::In,
                l if pa.alphabet.is_predicate(l) => Role::Pred(intern(&mut pred_names, l)),
                l => Role::Op(intern(&mut op_names, l)),
            })
            .collect();
        let ops = op_names
            .iter()
            .map(|f| i.domain.iter().map(|d| position(&i.domain, &i.functions[*f][d])).collect())
            .collect();
        let preds = pred_names
            .iter()
            .map(|p| i.domain.iter().map(|d| i.predicates[*p][d]).collect())
            .collect();
        Compiler {
            pa,
            d: &i.domain,
            din: &i.input_domain,
            dout: &i.output_domain,
            roles,
            succ,
            ops,
            preds,
        }
    }

    fn build(self) -> StateSpace {
        let pa = self.pa;
        let i = &pa.interpretation;
        let g = &pa.graph;
        let (nd, nin, nout) = (self.d.len(), self.din.len(), self.dout.len());

        // Index layout.
        let mut states = Vec::new();
        let mut kinds = Vec::new();
        let mut din_ix = Vec::new();
        let mut dout_ix = Vec::new();
        for (k, a) in self.din.iter().enumerate() {
            states.push(State { din: Some(a.clone()), control: None, dout: None });
            kinds.push(StateKind::Initial);
            din_ix.push(Some(k));
            dout_ix.push(None);
        }
        let mut vertex_base = Vec::with_capacity(g.vertices.len());
        for (vk, v) in g.vertices.iter().enumerate() {
            vertex_base.push(states.len());
            if self.roles[vk] == Role::In {
                for d in self.d {
                    for (a, x) in self.din.iter().enumerate() {
                        for (b, y) in self.dout.iter().enumerate() {
                            states.push(State {
                                din: Some(x.clone()),
                                control: Some((v.id.clone(), d.clone())),
                                dout: Some(y.clone()),
                            });
                            kinds.push(StateKind::Interaction);
                            din_ix.push(Some(a));
                            dout_ix.push(Some(b));
                        }
                    }
                }
            } else {
                for d in self.d {
                    states.push(State {
                        din: None,
                        control: Some((v.id.clone(), d.clone())),
                        dout: None,
                    });
                    kinds.push(StateKind::Internal);
                    din_ix.push(None);
                    dout_ix.push(None);
                }
            }
        }
        let final_base = states.len();
        for (k, a) in self.dout.iter().enumerate() {
            states.push(State { din: None, control: None, dout: Some(a.clone()) });
            kinds.push(StateKind::Final);
            din_ix.push(None);
            dout_ix.push(Some(k));
        }

        let internal = |v: usize, d: usize| -> Option<usize> {
            (self.roles[v] != Role::In).then(|| vertex_base[v] + d)
        };
        let interaction = |v: usize, d: usize, a: usize, b: usize| -> usize {
            vertex_base[v] + (d * nin + a) * nout + b
        };
        let root = g.vertices.iter().position(|v| v.id == g.root).expect("validated root");
        let init: Vec<usize> = self.din.iter().map(|x| position(self.d, &i.functions[INIT][x])).collect();
        let fin: Vec<usize> = self.d.iter().map(|x| position(self.dout, &i.functions[FIN][x])).collect();
        let out: Vec<usize> = if pa.alphabet.kind == Kind::Interactive {
            self.d.iter().map(|x| position(self.dout, &i.functions[OUT][x])).collect()
        } else {
            Vec::new()
        };
        let input_rows = i.input_table.as_ref();

        let n = states.len();
        let mut astep: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, &d) in init.iter().enumerate() {
            astep[k] = self.succ[root].iter().filter_map(|&(v, _)| internal(v, d)).collect();
        }
        for (vk, role) in self.roles.iter().enumerate() {
            for d in 0..nd {
                match role {
                    Role::In => {
                        let rows = input_rows.expect("validated in table");
                        for a in 0..nin {
                            let next = position(self.d, &rows[&self.d[d]][&self.din[a]]);
                            let targets: Vec<usize> =
                                self.succ[vk].iter().filter_map(|&(v, _)| internal(v, next)).collect();
                            for b in 0..nout {
                                astep[interaction(vk, d, a, b)] = targets.clone();
                            }
                        }
                    }
                    // States at the root only occur off every run; they pass
                    // their data on to the root's successors.
                    Role::Init => {
                        astep[vertex_base[vk] + d] =
                            self.succ[vk].iter().filter_map(|&(v, _)| internal(v, d)).collect();
                    }
                    Role::Op(f) => {
                        let next = self.ops[*f][d];
                        astep[vertex_base[vk] + d] =
                            self.succ[vk].iter().filter_map(|&(v, _)| internal(v, next)).collect();
                    }
                    Role::Pred(p) => {
                        let bit = self.preds[*p][d];
                        astep[vertex_base[vk] + d] = self.succ[vk]
                            .iter()
                            .filter(|&&(_, l)| l == Some(bit))
                            .filter_map(|&(v, _)| internal(v, d))
                            .collect();
                    }
                    Role::Fin => {
                        astep[vertex_base[vk] + d] = vec![final_base + fin[d]];
                    }
                    Role::Out => {
                        let b = out[d];
                        let mut targets = Vec::new();
                        for &(v, _) in &self.succ[vk] {
                            if self.roles[v] == Role::In {
                                targets.extend((0..nin).map(|a| interaction(v, d, a, b)));
                            }
                        }
                        astep[vertex_base[vk] + d] = targets;
                    }
                }
            }
        }
        for k in 0..nout {
            astep[final_base + k] = vec![final_base + k];
        }
        for s in &mut astep {
            s.sort_unstable();
            s.dedup();
        }

        // Collapse predicate inspections; predicate-only cycles are excluded
        // by validation so the recursion is well-founded.
        let is_pred_state = |s: usize| -> bool {
            kinds[s] == StateKind::Internal
                && matches!(self.roles[vertex_of(&vertex_base, final_base, s)], Role::Pred(_))
        };
        let mut cstep: Vec<Option<Vec<usize>>> = vec![None; n];
        for s in 0..n {
            collapse(s, &astep, &is_pred_state, &mut cstep);
        }
        let cstep: Vec<Vec<usize>> = cstep.into_iter().map(Option::unwrap).collect();

        let index = states.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        StateSpace {
            kind: pa.alphabet.kind,
            states,
            kinds,
            index,
            astep,
            cstep,
            initial: (0..nin).collect(),
            finals: (final_base..final_base + nout).collect(),
            din: din_ix,
            dout: dout_ix,
            input_domain: self.din.to_vec(),
            output_domain: self.dout.to_vec(),
        }
    }
}

fn intern<'a>(names: &mut Vec<&'a str>, name: &'a str) -> usize {
    match names.iter().position(|n| *n == name) {
        Some(k) => k,
        None => {
            names.push(name);
            names.len() - 1
        }
    }
}

fn vertex_of(vertex_base: &[usize], final_base: usize, s: usize) -> usize {
    debug_assert!(s < final_base);
    vertex_base.partition_point(|&b| b <= s) - 1
}

fn collapse(
    s: usize,
    astep: &[Vec<usize>],
    is_pred: &dyn Fn(usize) -> bool,
    memo: &mut Vec<Option<Vec<usize>>>,
) {
    if memo[s].is_some() {
        return;
    }
    if !is_pred(s) {
        memo[s] = Some(astep[s].clone());
        return;
    }
    let mut out = Vec::new();
    for &t in &astep[s] {
        collapse(t, astep, is_pred, memo);
        out.extend_from_slice(memo[t].as_ref().unwrap());
    }
    out.sort_unstable();
    out.dedup();
    memo[s] = Some(out);
}

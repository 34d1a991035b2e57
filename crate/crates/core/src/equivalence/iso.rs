//! Isomorphism search: a vertex bijection by backtracking over structure and
//! labels, then data bijections forced by propagation from `init`.
//!
//! Every element of the algorithm domain is generated from the inputs by
//! the operations (minimality), so once the input bijection and the images
//! of all operation symbols are fixed the algorithm-domain bijection is
//! determined. Only the input bijection and the images of symbols that label
//! no vertex need to be enumerated.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::Error;
use crate::model::{validate, Atom, Kind, ProtoAlgorithm, FIN, IN, INIT, OUT};

use super::witness::IsoWitness;

struct Side<'a> {
    pa: &'a ProtoAlgorithm,
    ids: Vec<&'a str>,
    index: HashMap<&'a str, usize>,
    /// `edges[u][v]` is the edge label (`Some(None)` for unlabeled).
    edges: Vec<HashMap<usize, Option<u8>>>,
    preds: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(pa: &'a ProtoAlgorithm) -> Self {
        let ids: Vec<&str> = pa.graph.vertices.iter().map(|v| v.id.as_str()).collect();
        let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut edges = vec![HashMap::new(); ids.len()];
        let mut preds = vec![Vec::new(); ids.len()];
        for e in pa.graph.proper_edges() {
            let (u, v) = (index[e.from.as_str()], index[e.to.as_str()]);
            if edges[u].insert(v, e.label).is_none() {
                preds[v].push(u);
            }
        }
        Side { pa, ids, index, edges, preds }
    }

    fn label(&self, v: usize) -> &str {
        &self.pa.graph.vertices[v].label
    }

    fn class(&self, v: usize) -> (u8, usize, usize) {
        let l = self.label(v);
        let role = match l {
            INIT => 0,
            FIN => 1,
            IN => 2,
            OUT => 3,
            _ if self.pa.alphabet.is_predicate(l) => 4,
            _ => 5,
        };
        (role, self.preds[v].len(), self.edges[v].len())
    }

    fn edge_count(&self) -> usize {
        self.edges.iter().map(HashMap::len).sum()
    }

    /// Vertices in breadth-first order from the root, unreachable ones last.
    fn order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ids.len()];
        let mut order = Vec::new();
        let starts = std::iter::once(self.index.get(self.pa.graph.root.as_str()).copied())
            .flatten()
            .chain(0..self.ids.len());
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                let mut next: Vec<usize> = self.edges[u].keys().copied().collect();
                next.sort_unstable();
                for v in next {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        order
    }
}

struct VertexSearch<'a, 'b> {
    a: &'b Side<'a>,
    b: &'b Side<'a>,
    booleans: [u8; 2],
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    symbols: HashMap<String, String>,
    symbols_rev: HashMap<String, String>,
}

impl VertexSearch<'_, '_> {
    fn edge_ok(&self, la: Option<&Option<u8>>, lb: Option<&Option<u8>>) -> bool {
        match (la, lb) {
            (None, None) => true,
            (Some(x), Some(y)) => x.map(|l| self.booleans[l as usize]) == *y,
            _ => false,
        }
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        if self.a.class(v) != self.b.class(w) {
            return false;
        }
        let (la, lb) = (self.a.label(v), self.b.label(w));
        if self.symbols.get(la).is_some_and(|x| x != lb) || self.symbols_rev.get(lb).is_some_and(|x| x != la) {
            return false;
        }
        if !self.edge_ok(self.a.edges[v].get(&v), self.b.edges[w].get(&w)) {
            return false;
        }
        self.map.iter().enumerate().all(|(u, image)| match image {
            Some(x) => {
                self.edge_ok(self.a.edges[v].get(&u), self.b.edges[w].get(x))
                    && self.edge_ok(self.a.edges[u].get(&v), self.b.edges[*x].get(&w))
            }
            None => true,
        })
    }

    /// Calls `found` on each complete vertex bijection until it returns
    /// `Some`.
    fn run<R>(&mut self, depth: usize, found: &mut dyn FnMut(&Self) -> Option<R>) -> Option<R> {
        let Some(&v) = self.order.get(depth) else {
            return found(self);
        };
        for w in 0..self.b.ids.len() {
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            let (la, lb) = (self.a.label(v).to_string(), self.b.label(w).to_string());
            let fresh = !self.symbols.contains_key(&la);
            if fresh {
                self.symbols.insert(la.clone(), lb.clone());
                self.symbols_rev.insert(lb, la.clone());
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            let result = self.run(depth + 1, found);
            self.map[v] = None;
            self.used[w] = false;
            if fresh {
                let lb = self.symbols.remove(&la).unwrap();
                self.symbols_rev.remove(&lb);
            }
            if result.is_some() {
                return result;
            }
        }
        None
    }
}

/// Calls `f` on each permutation of `0..n` (as target indices) until it
/// returns `Some`.
fn permutations<R>(n: usize, f: &mut dyn FnMut(&[usize]) -> Option<R>) -> Option<R> {
    fn go<R>(perm: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize]) -> Option<R>) -> Option<R> {
        if perm.len() == used.len() {
            return f(perm);
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                perm.push(x);
                let r = go(perm, used, f);
                perm.pop();
                used[x] = false;
                if r.is_some() {
                    return r;
                }
            }
        }
        None
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], f)
}

#[derive(Default)]
struct Bijection {
    fwd: BTreeMap<Atom, Atom>,
    rev: BTreeMap<Atom, Atom>,
}

impl Bijection {
    /// `Some(true)` if newly assigned, `Some(false)` if already present,
    /// `None` on a conflict.
    fn assign(&mut self, d: &Atom, e: &Atom) -> Option<bool> {
        match (self.fwd.get(d), self.rev.get(e)) {
            (Some(x), _) if x != e => None,
            (_, Some(y)) if y != d => None,
            (Some(_), _) => Some(false),
            _ => {
                self.fwd.insert(d.clone(), e.clone());
                self.rev.insert(e.clone(), d.clone());
                Some(true)
            }
        }
    }
}

struct DataSearch<'a> {
    a: &'a ProtoAlgorithm,
    b: &'a ProtoAlgorithm,
    booleans: [u8; 2],
}

impl DataSearch<'_> {
    fn domain_map(&self, beta_in: &[(Atom, Atom)], ops: &[(String, String)]) -> Option<Bijection> {
        let (ia, ib) = (&self.a.interpretation, &self.b.interpretation);
        let mut bd = Bijection::default();
        let mut queue = VecDeque::new();
        for (x, y) in beta_in {
            let d = ia.apply(INIT, x)?;
            if bd.assign(d, ib.apply(INIT, y)?)? {
                queue.push_back(d.clone());
            }
        }
        let interactive = self.a.kind() == Kind::Interactive;
        while let Some(d) = queue.pop_front() {
            let e = bd.fwd[&d].clone();
            for (f, g) in ops {
                let d2 = ia.apply(f, &d)?;
                if bd.assign(d2, ib.apply(g, &e)?)? {
                    queue.push_back(d2.clone());
                }
            }
            if interactive {
                for (x, y) in beta_in {
                    let d2 = ia.apply_input(&d, x)?;
                    if bd.assign(d2, ib.apply_input(&e, y)?)? {
                        queue.push_back(d2.clone());
                    }
                }
            }
        }
        (bd.fwd.len() == ia.domain.len() && ia.domain.len() == ib.domain.len()).then_some(bd)
    }

    fn predicate_ok(&self, bd: &Bijection, p: &str, q: &str) -> bool {
        let (ia, ib) = (&self.a.interpretation, &self.b.interpretation);
        bd.fwd.iter().all(|(d, e)| {
            ia.test(p, d).map(|x| self.booleans[x as usize]).is_some_and(|x| Some(x) == ib.test(q, e))
        })
    }

    fn output_map(&self, bd: &Bijection) -> Option<Vec<(Atom, Atom)>> {
        let (ia, ib) = (&self.a.interpretation, &self.b.interpretation);
        let mut bo = Bijection::default();
        let mut tables = vec![FIN];
        if self.a.kind() == Kind::Interactive {
            tables.push(OUT);
        }
        for t in tables {
            for (d, e) in &bd.fwd {
                bo.assign(ia.apply(t, d)?, ib.apply(t, e)?)?;
            }
        }
        // Outputs no table produces are unconstrained; pair the leftovers in order.
        let rest_b: Vec<&Atom> = ib.output_domain.iter().filter(|y| !bo.rev.contains_key(*y)).collect();
        let rest_a: Vec<&Atom> = ia.output_domain.iter().filter(|x| !bo.fwd.contains_key(*x)).collect();
        if rest_a.len() != rest_b.len() {
            return None;
        }
        for (x, y) in rest_a.into_iter().zip(rest_b) {
            bo.assign(x, y)?;
        }
        Some(ia.output_domain.iter().map(|x| (x.clone(), bo.fwd[x].clone())).collect())
    }

    /// Complete a vertex bijection (and the symbol map it induces) to a full
    /// witness.
    fn complete(&self, vs: &VertexSearch) -> Option<IsoWitness> {
        let (fa, fb) = (&self.a.alphabet, &self.b.alphabet);
        let (ia, ib) = (&self.a.interpretation, &self.b.interpretation);
        if ia.input_domain.len() != ib.input_domain.len() || ia.output_domain.len() != ib.output_domain.len() {
            return None;
        }
        let mut fixed: Vec<(String, String)> = Vec::new();
        for r in crate::model::Alphabet::reserved(self.a.kind()) {
            if vs.symbols.get(*r).is_some_and(|x| x != r) {
                return None;
            }
            fixed.push((r.to_string(), r.to_string()));
        }
        let free = |names: &[String], taken: &HashMap<String, String>, alpha: &crate::model::Alphabet| -> Vec<String> {
            names.iter().filter(|s| !taken.contains_key(*s) && !alpha.is_reserved(s)).cloned().collect()
        };
        let free_fa = free(&fa.functions, &vs.symbols, fa);
        let free_fb = free(&fb.functions, &vs.symbols_rev, fb);
        let free_pa = free(&fa.predicates, &vs.symbols, fa);
        let free_pb = free(&fb.predicates, &vs.symbols_rev, fb);
        if free_fa.len() != free_fb.len() || free_pa.len() != free_pb.len() {
            return None;
        }
        let used_ops: Vec<(String, String)> = fa
            .operations()
            .filter_map(|f| vs.symbols.get(f).map(|g| (f.to_string(), g.clone())))
            .collect();
        let used_preds: Vec<(String, String)> = fa
            .predicates
            .iter()
            .filter_map(|p| vs.symbols.get(p).map(|q| (p.clone(), q.clone())))
            .collect();

        permutations(ia.input_domain.len(), &mut |pin| {
            let beta_in: Vec<(Atom, Atom)> = ia
                .input_domain
                .iter()
                .zip(pin)
                .map(|(x, &k)| (x.clone(), ib.input_domain[k].clone()))
                .collect();
            permutations(free_fa.len(), &mut |pf| {
                let mut ops = used_ops.clone();
                ops.extend(free_fa.iter().zip(pf).map(|(f, &k)| (f.clone(), free_fb[k].clone())));
                let bd = self.domain_map(&beta_in, &ops)?;
                if !used_preds.iter().all(|(p, q)| self.predicate_ok(&bd, p, q)) {
                    return None;
                }
                let extra_preds = permutations(free_pa.len(), &mut |pp| {
                    let pairs: Vec<(String, String)> =
                        free_pa.iter().zip(pp).map(|(p, &k)| (p.clone(), free_pb[k].clone())).collect();
                    pairs.iter().all(|(p, q)| self.predicate_ok(&bd, p, q)).then_some(pairs)
                })?;
                let output_domain = self.output_map(&bd)?;

                let symbol_map: HashMap<&String, &String> = ops
                    .iter()
                    .chain(&fixed)
                    .chain(&used_preds)
                    .chain(&extra_preds)
                    .map(|(x, y)| (x, y))
                    .collect();
                let image = |s: &String| (s.clone(), symbol_map[s].clone());
                Some(IsoWitness {
                    functions: fa.functions.iter().map(image).collect(),
                    predicates: fa.predicates.iter().map(image).collect(),
                    vertices: (0..vs.a.ids.len())
                        .map(|v| (vs.a.ids[v].to_string(), vs.b.ids[vs.map[v].unwrap()].to_string()))
                        .collect(),
                    domain: ia.domain.iter().map(|d| (d.clone(), bd.fwd[d].clone())).collect(),
                    input_domain: beta_in.clone(),
                    output_domain,
                    booleans: self.booleans,
                })
            })
        })
    }
}

/// Decide whether two valid proto-algorithms are isomorphic; returns the
/// bijections when they are.
pub fn check_isomorphism(a: &ProtoAlgorithm, b: &ProtoAlgorithm) -> Result<Option<IsoWitness>, Error> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch { expected: a.kind(), found: b.kind() });
    }
    for pa in [a, b] {
        let report = validate(pa);
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
    }
    let (sa, sb) = (Side::new(a), Side::new(b));
    let same_sizes = a.alphabet.functions.len() == b.alphabet.functions.len()
        && a.alphabet.predicates.len() == b.alphabet.predicates.len()
        && sa.ids.len() == sb.ids.len()
        && sa.edge_count() == sb.edge_count()
        && a.interpretation.domain.len() == b.interpretation.domain.len()
        && a.interpretation.input_domain.len() == b.interpretation.input_domain.len()
        && a.interpretation.output_domain.len() == b.interpretation.output_domain.len();
    if !same_sizes {
        return Ok(None);
    }
    let mut classes_a: Vec<_> = (0..sa.ids.len()).map(|v| sa.class(v)).collect();
    let mut classes_b: Vec<_> = (0..sb.ids.len()).map(|v| sb.class(v)).collect();
    classes_a.sort_unstable();
    classes_b.sort_unstable();
    if classes_a != classes_b {
        return Ok(None);
    }

    for booleans in [[0, 1], [1, 0]] {
        let data = DataSearch { a, b, booleans };
        let mut vs = VertexSearch {
            a: &sa,
            b: &sb,
            booleans,
            order: sa.order(),
            map: vec![None; sa.ids.len()],
            used: vec![false; sb.ids.len()],
            symbols: HashMap::new(),
            symbols_rev: HashMap::new(),
        };
        if let Some(w) = vs.run(0, &mut |vs| data.complete(vs)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

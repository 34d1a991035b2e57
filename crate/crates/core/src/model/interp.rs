use std::collections::BTreeMap;

use super::Atom;

pub type Table = BTreeMap<Atom, Atom>;

/// Finite domains plus explicit lookup tables for every symbol.
///
/// `functions` holds the unary tables (`init`, `fin`, `out` and ordinary
/// operations); the binary `in` table lives in `input_table` and is only
/// present for interactive models.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Interpretation {
    pub domain: Vec<Atom>,
    pub input_domain: Vec<Atom>,
    pub output_domain: Vec<Atom>,
    pub functions: BTreeMap<String, Table>,
    pub input_table: Option<BTreeMap<Atom, Table>>,
    pub predicates: BTreeMap<String, BTreeMap<Atom, u8>>,
}

impl Interpretation {
    pub fn function(&self, symbol: &str) -> Option<&Table> {
        self.functions.get(symbol)
    }

    pub fn apply(&self, symbol: &str, arg: &Atom) -> Option<&Atom> {
        self.functions.get(symbol).and_then(|t| t.get(arg))
    }

    pub fn apply_input(&self, d: &Atom, din: &Atom) -> Option<&Atom> {
        self.input_table.as_ref()?.get(d)?.get(din)
    }

    pub fn test(&self, predicate: &str, arg: &Atom) -> Option<u8> {
        self.predicates.get(predicate)?.get(arg).copied()
    }
}

/// Build a table from `(argument, value)` pairs.
pub fn table<A, B>(pairs: impl IntoIterator<Item = (A, B)>) -> Table
where
    A: Into<Atom>,
    B: Into<Atom>,
{
    pairs
        .into_iter()
        .map(|(a, b)| (a.into(), b.into()))
        .collect()
}

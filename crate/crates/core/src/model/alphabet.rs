use super::Kind;

pub const INIT: &str = "init";
pub const FIN: &str = "fin";
pub const IN: &str = "in";
pub const OUT: &str = "out";

/// Function and predicate symbols, tagged with the proto-algorithm kind.
///
/// Both symbol lists are ordered sets; order is the declared order and is
/// preserved by serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub kind: Kind,
    pub functions: Vec<String>,
    pub predicates: Vec<String>,
}

impl Alphabet {
    pub fn new<F, P>(kind: Kind, functions: F, predicates: P) -> Self
    where
        F: IntoIterator,
        F::Item: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        Alphabet {
            kind,
            functions: functions.into_iter().map(Into::into).collect(),
            predicates: predicates.into_iter().map(Into::into).collect(),
        }
    }

    /// Symbols every alphabet of this kind must contain.
    pub fn reserved(kind: Kind) -> &'static [&'static str] {
        match kind {
            Kind::NonInteractive => &[INIT, FIN],
            Kind::Interactive => &[INIT, FIN, IN, OUT],
        }
    }

    pub fn is_reserved(&self, symbol: &str) -> bool {
        Self::reserved(self.kind).contains(&symbol)
    }

    pub fn is_function(&self, symbol: &str) -> bool {
        self.functions.iter().any(|f| f == symbol)
    }

    pub fn is_predicate(&self, symbol: &str) -> bool {
        self.predicates.iter().any(|p| p == symbol)
    }

    /// Function symbols other than `fin`.
    pub fn non_final_functions(&self) -> impl Iterator<Item = &str> {
        self.functions.iter().map(String::as_str).filter(|f| *f != FIN)
    }

    /// Function symbols that denote ordinary operations (no reserved symbol).
    pub fn operations(&self) -> impl Iterator<Item = &str> {
        self.functions
            .iter()
            .map(String::as_str)
            .filter(move |f| !self.is_reserved(f))
    }
}

use std::fmt;

/// A value atom of one of the finite domains.
///
/// Integers and strings are distinct atoms: `Int(1)` and `Str("1")` never
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Int(i64),
    Str(String),
}

impl Atom {
    pub fn str(s: impl Into<String>) -> Self {
        Atom::Str(s.into())
    }

    /// Textual rendering used for JSON object keys and CLI arguments.
    pub fn key(&self) -> String {
        match self {
            Atom::Int(i) => i.to_string(),
            Atom::Str(s) => s.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Atom::Int(i) => serde_json::Value::from(*i),
            Atom::Str(s) => serde_json::Value::from(s.as_str()),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Option<Self> {
        match value {
            serde_json::Value::Number(n) => n.as_i64().map(Atom::Int),
            serde_json::Value::String(s) => Some(Atom::Str(s.clone())),
            _ => None,
        }
    }

    /// Resolve a textual key against a declared domain. Falls back to an
    /// integer atom when the text is a decimal integer, otherwise a string.
    pub fn resolve_key(key: &str, domain: &[Atom]) -> Atom {
        if let Some(a) = domain.iter().find(|a| a.key() == key) {
            return a.clone();
        }
        match key.parse::<i64>() {
            Ok(i) => Atom::Int(i),
            Err(_) => Atom::Str(key.to_string()),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Int(i) => write!(f, "{i}"),
            Atom::Str(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Atom {
    fn from(i: i64) -> Self {
        Atom::Int(i)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::Str(s.to_string())
    }
}

/// Build a vector of integer atoms.
pub fn ints(values: impl IntoIterator<Item = i64>) -> Vec<Atom> {
    values.into_iter().map(Atom::Int).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_and_string_forms_are_distinct() {
        assert_ne!(Atom::Int(1), Atom::str("1"));
        assert_eq!(Atom::Int(1).key(), Atom::str("1").key());
    }

    #[test]
    fn resolve_prefers_declared_atom() {
        let domain = vec![Atom::str("7")];
        assert_eq!(Atom::resolve_key("7", &domain), Atom::str("7"));
        assert_eq!(Atom::resolve_key("7", &[]), Atom::Int(7));
        assert_eq!(Atom::resolve_key("odd", &[]), Atom::str("odd"));
    }
}

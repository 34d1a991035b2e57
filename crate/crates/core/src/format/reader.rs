use std::fmt;

use serde_json::{Map, Value};

use crate::model::{Atom, Table};

/// Where in a document an error was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column of a syntax error.
    Position { line: usize, column: usize },
    /// JSON pointer to the offending value.
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub location: Location,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Location::Position { line, column } => write!(f, "line {line}, column {column}: {}", self.message),
            Location::Path(p) if p.is_empty() => write!(f, "at document root: {}", self.message),
            Location::Path(p) => write!(f, "at {p}: {}", self.message),
        }
    }
}

impl std::error::Error for FormatError {}

/// Parse JSON text, mapping a syntax error to its position.
pub(crate) fn parse_json(text: &str) -> Result<Value, Vec<FormatError>> {
    serde_json::from_str(text).map_err(|e| {
        vec![FormatError {
            location: Location::Position { line: e.line(), column: e.column() },
            message: format!("malformed JSON: {e}"),
        }]
    })
}

pub(crate) fn child(path: &str, key: &str) -> String {
    format!("{path}/{}", key.replace('~', "~0").replace('/', "~1"))
}

pub(crate) fn item(path: &str, index: usize) -> String {
    format!("{path}/{index}")
}

/// Shape checks that accumulate errors instead of stopping at the first.
#[derive(Default)]
pub(crate) struct Reader {
    pub errors: Vec<FormatError>,
}

impl Reader {
    pub fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(FormatError { location: Location::Path(path.to_string()), message: message.into() });
    }

    pub fn finish<T>(self, value: Option<T>) -> Result<T, Vec<FormatError>> {
        match value {
            Some(v) if self.errors.is_empty() => Ok(v),
            _ => Err(self.errors),
        }
    }

    /// An object with exactly the given required members plus any of the
    /// optional ones.
    pub fn object<'v>(
        &mut self,
        v: &'v Value,
        path: &str,
        required: &[&str],
        optional: &[&str],
    ) -> Option<&'v Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            self.err(path, "expected an object");
            return None;
        };
        let mut ok = true;
        for key in required {
            if !obj.contains_key(*key) {
                self.err(path, format!("missing member `{key}`"));
                ok = false;
            }
        }
        for key in obj.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                self.err(&child(path, key), format!("unknown member `{key}`"));
                ok = false;
            }
        }
        ok.then_some(obj)
    }

    pub fn string(&mut self, v: &Value, path: &str) -> Option<String> {
        match v.as_str() {
            Some(s) => Some(s.to_string()),
            None => {
                self.err(path, "expected a string");
                None
            }
        }
    }

    pub fn array<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.err(path, "expected an array");
        }
        a
    }

    pub fn strings(&mut self, v: &Value, path: &str) -> Option<Vec<String>> {
        let items = self.array(v, path)?;
        let parsed: Vec<Option<String>> =
            items.iter().enumerate().map(|(i, x)| self.string(x, &item(path, i))).collect();
        parsed.into_iter().collect()
    }

    pub fn atom(&mut self, v: &Value, path: &str) -> Option<Atom> {
        let a = Atom::from_json(v);
        if a.is_none() {
            self.err(path, "expected an atom (integer or string)");
        }
        a
    }

    /// A domain: distinct atoms, no two sharing a textual rendering (object
    /// keys could not tell them apart).
    pub fn domain(&mut self, v: &Value, path: &str) -> Option<Vec<Atom>> {
        let items = self.array(v, path)?;
        let mut atoms = Vec::new();
        let mut ok = true;
        for (i, x) in items.iter().enumerate() {
            let p = item(path, i);
            match self.atom(x, &p) {
                Some(a) => {
                    if let Some(prev) = atoms.iter().find(|b: &&Atom| b.key() == a.key()) {
                        if *prev == a {
                            self.err(&p, format!("duplicate atom `{a}`"));
                        } else {
                            self.err(&p, format!("atoms {} and {} have the same key rendering", prev.to_json(), a.to_json()));
                        }
                        ok = false;
                    }
                    atoms.push(a);
                }
                None => ok = false,
            }
        }
        ok.then_some(atoms)
    }

    /// Object from atom keys (resolved against `keys`) to atom values.
    pub fn table(&mut self, v: &Value, path: &str, keys: &[Atom]) -> Option<Table> {
        let obj = self.object_any(v, path)?;
        let mut table = Table::new();
        let mut ok = true;
        for (k, x) in obj {
            match self.atom(x, &child(path, k)) {
                Some(a) => {
                    table.insert(Atom::resolve_key(k, keys), a);
                }
                None => ok = false,
            }
        }
        ok.then_some(table)
    }

    pub fn object_any<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        let obj = v.as_object();
        if obj.is_none() {
            self.err(path, "expected an object");
        }
        obj
    }

    pub fn bit(&mut self, v: &Value, path: &str, what: &str) -> Option<u8> {
        match v.as_u64() {
            Some(b @ (0 | 1)) => Some(b as u8),
            _ => {
                self.err(path, format!("{what} must be 0 or 1"));
                None
            }
        }
    }
}

/// Object whose members are inserted in sorted key order, so the output is
/// canonical whatever map implementation serde_json was built with.
pub(crate) fn sorted_object(members: impl IntoIterator<Item = (String, Value)>) -> Value {
    let sorted: std::collections::BTreeMap<String, Value> = members.into_iter().collect();
    Value::Object(sorted.into_iter().collect())
}

pub(crate) fn table_json(table: &Table) -> Value {
    sorted_object(table.iter().map(|(k, v)| (k.key(), v.to_json())))
}

/// Pretty-printed JSON with a trailing newline.
pub(crate) fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

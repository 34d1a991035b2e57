use std::fmt;

use crate::model::{Atom, VertexId};

/// A state `(din, (v, d), dout)`; `None` plays the role of the undefined value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub din: Option<Atom>,
    pub control: Option<(VertexId, Atom)>,
    pub dout: Option<Atom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    Initial,
    Internal,
    Interaction,
    Final,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Initial => "initial",
            StateKind::Internal => "internal",
            StateKind::Interaction => "interaction",
            StateKind::Final => "final",
        }
    }
}

impl State {
    pub fn initial(din: impl Into<Atom>) -> Self {
        State { din: Some(din.into()), control: None, dout: None }
    }

    pub fn final_(dout: impl Into<Atom>) -> Self {
        State { din: None, control: None, dout: Some(dout.into()) }
    }

    pub fn internal(v: &str, d: impl Into<Atom>) -> Self {
        State { din: None, control: Some((v.to_string(), d.into())), dout: None }
    }

    pub fn interaction(din: impl Into<Atom>, v: &str, d: impl Into<Atom>, dout: impl Into<Atom>) -> Self {
        State {
            din: Some(din.into()),
            control: Some((v.to_string(), d.into())),
            dout: Some(dout.into()),
        }
    }

    /// Kind derived from which components are defined. Only meaningful for
    /// well-formed states.
    pub fn kind(&self) -> StateKind {
        match (&self.din, &self.control, &self.dout) {
            (_, None, Some(_)) => StateKind::Final,
            (_, None, None) => StateKind::Initial,
            (None, Some(_), _) => StateKind::Internal,
            (Some(_), Some(_), _) => StateKind::Interaction,
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |a: &Option<Atom>| a.as_ref().map_or("_".to_string(), Atom::to_string);
        match &self.control {
            Some((v, d)) => write!(f, "({}, ({v}, {d}), {})", opt(&self.din), opt(&self.dout)),
            None => write!(f, "({}, _, {})", opt(&self.din), opt(&self.dout)),
        }
    }
}

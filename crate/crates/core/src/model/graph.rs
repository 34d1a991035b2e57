use std::collections::BTreeSet;

use crate::error::Error;

pub type VertexId = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    /// Branch label, `0` or `1`, present only on edges leaving predicate vertices.
    pub label: Option<u8>,
}

/// Rooted labeled directed graph.
///
/// The type is permissive: dangling endpoints, missing labels and other
/// structural defects are representable and reported by
/// [`validate_graph`](crate::model::validate_graph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub root: VertexId,
}

impl AlgorithmGraph {
    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn label(&self, id: &str) -> Option<&str> {
        self.vertex(id).map(|v| v.label.as_str())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vertex(id).is_some()
    }

    /// Edges whose endpoints are both declared vertices.
    pub fn proper_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| self.contains(&e.from) && self.contains(&e.to))
    }

    pub fn successors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.proper_edges().filter(move |e| e.from == id)
    }

    /// Indegree and outdegree as cardinalities of the predecessor and
    /// successor sets.
    pub fn degrees(&self, id: &str) -> Result<(usize, usize), Error> {
        if !self.contains(id) {
            return Err(Error::UnknownVertex(id.to_string()));
        }
        let preds: BTreeSet<&str> = self
            .proper_edges()
            .filter(|e| e.to == id)
            .map(|e| e.from.as_str())
            .collect();
        let succs: BTreeSet<&str> = self
            .proper_edges()
            .filter(|e| e.from == id)
            .map(|e| e.to.as_str())
            .collect();
        Ok((preds.len(), succs.len()))
    }
}

/// Indegree and outdegree of `v`.
pub fn vertex_degrees(g: &AlgorithmGraph, v: &str) -> Result<(usize, usize), Error> {
    g.degrees(v)
}

//! Deletion targets, deletion modes and deletion sets.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Result;
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::obstructions::{find_c4, find_p4};

/// Hereditary graph property a deletion set has to establish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionTarget {
    /// No induced P4 (cographs).
    P4Free,
    /// No induced P4 and no induced C4 (trivially perfect graphs).
    P4AndC4Free,
}

impl DeletionTarget {
    pub fn is_satisfied(self, g: &Graph) -> bool {
        match self {
            DeletionTarget::P4Free => find_p4(g).is_none(),
            DeletionTarget::P4AndC4Free => find_p4(g).is_none() && find_c4(g).is_none(),
        }
    }
}

impl fmt::Display for DeletionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeletionTarget::P4Free => "P4-free",
            DeletionTarget::P4AndC4Free => "P4,C4-free",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionMode {
    Edge,
    Vertex,
}

impl fmt::Display for DeletionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeletionMode::Edge => "edge",
            DeletionMode::Vertex => "vertex",
        })
    }
}

/// A set of deleted edges or deleted vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deletions {
    Edges(EdgeSet),
    Vertices(VertexSet),
}

impl Deletions {
    pub fn empty(mode: DeletionMode) -> Self {
        match mode {
            DeletionMode::Edge => Deletions::Edges(Vec::new()),
            DeletionMode::Vertex => Deletions::Vertices(Vec::new()),
        }
    }

    pub fn mode(&self) -> DeletionMode {
        match self {
            Deletions::Edges(_) => DeletionMode::Edge,
            Deletions::Vertices(_) => DeletionMode::Vertex,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Deletions::Edges(es) => es.len(),
            Deletions::Vertices(vs) => vs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Renames every vertex through `f` and re-sorts.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Deletions {
        match self {
            Deletions::Edges(es) => {
                let mut out: Vec<Edge> = es.iter().map(|e| e.map(&f)).collect();
                out.sort_unstable();
                Deletions::Edges(out)
            }
            Deletions::Vertices(vs) => {
                let mut out: Vec<usize> = vs.iter().map(|&v| f(v)).collect();
                out.sort_unstable();
                Deletions::Vertices(out)
            }
        }
    }

    /// True if every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &Deletions) -> bool {
        match (self, other) {
            (Deletions::Edges(a), Deletions::Edges(b)) => a.iter().all(|e| b.contains(e)),
            (Deletions::Vertices(a), Deletions::Vertices(b)) => a.iter().all(|v| b.contains(v)),
            _ => false,
        }
    }

    /// The graph left after deleting `self` from `g`.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match self {
            Deletions::Edges(es) => g.delete_edges(es),
            Deletions::Vertices(vs) => Ok(g.delete_vertices(vs)?.0),
        }
    }
}

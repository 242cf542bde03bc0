//! Connected port-labeled graphs.
//!
//! A [`PortGraph`] is a simple connected undirected graph in which the edges
//! incident to a degree-`d` node carry distinct local labels `0..d` (ports).
//! Agents navigate purely by ports: leaving a node through port `p` they
//! arrive at the neighbor and learn the entry port there. Nodes themselves
//! are anonymous to agents; the `NodeId` values exist only for the harness.
//!
//! Adjacency is positional: entry `p` of a node's adjacency list is the edge
//! with outgoing port `p`, so "ports are exactly `{0..d}`" holds structurally
//! and only the cross-edge invariants (symmetry, simplicity, connectivity)
//! need runtime validation.

mod enumerate;
mod families;
mod text;

pub use enumerate::{enumerate_port_graphs, enumerate_port_graphs_with_cap, DEFAULT_ENUMERATION_CAP};
pub use families::{generate_family, Family};
pub use text::{parse_port_graph, serialize_port_graph};

use std::fmt;
use thiserror::Error;

/// Index of a node within a [`PortGraph`], in `0..node_count`.
pub type NodeId = usize;

/// Local port number at a node, in `0..deg(v)`.
///
/// The absence of a port ("did not move" / "no prior entry") is expressed as
/// `Option::<Port>::None` throughout the crate.
pub type Port = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("no such port: node {node} has no port {port}")]
    NoSuchPort { node: NodeId, port: Port },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} does not admit n = {n}")]
    IllegalSize { family: Family, n: usize },
    #[error("enumeration cap exceeded: m = {m}, cap = {cap}")]
    EnumerationCapExceeded { m: usize, cap: usize },
    #[error("m must be at least 1")]
    ZeroSize,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid port graph: {0}")]
    Invalid(Violation),
}

/// One violated [`PortGraph`] invariant, with the offending location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Port `port` at `node` points at a node id outside the graph.
    NeighborOutOfRange { node: NodeId, port: Port, target: NodeId },
    /// Port `port` at `node` names an entry port that does not exist at the target.
    EntryPortOutOfRange { node: NodeId, port: Port },
    /// `neighbor(node, port)` and its back-pointer do not agree.
    AsymmetricEdge { node: NodeId, port: Port },
    SelfLoop { node: NodeId, port: Port },
    ParallelEdge { node: NodeId, target: NodeId },
    Disconnected { unreachable: NodeId },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NeighborOutOfRange { node, port, target } => {
                write!(f, "port {port} at node {node} targets nonexistent node {target}")
            }
            Violation::EntryPortOutOfRange { node, port } => {
                write!(f, "entry port out of range at ({node},{port})")
            }
            Violation::AsymmetricEdge { node, port } => {
                write!(f, "symmetry violated at ({node},{port})")
            }
            Violation::SelfLoop { node, port } => write!(f, "self-loop at ({node},{port})"),
            Violation::ParallelEdge { node, target } => {
                write!(f, "parallel edge between {node} and {target}")
            }
            Violation::Disconnected { unreachable } => {
                write!(f, "node {unreachable} unreachable from node 0")
            }
            Violation::Empty => write!(f, "graph has no nodes"),
        }
    }
}

/// A connected simple graph with local port numbering.
///
/// Immutable after construction; safe to share across concurrent scenario
/// runs. Construction via [`PortGraph::from_adjacency`] is permissive so that
/// [`PortGraph::validate`] can report broken invariants; everything produced
/// by the generators and the enumerator in this module is valid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortGraph {
    /// `adjacency[v][p]` = (neighbor reached from `v` via port `p`, entry port there).
    adjacency: Vec<Vec<(NodeId, Port)>>,
}

impl PortGraph {
    pub fn from_adjacency(adjacency: Vec<Vec<(NodeId, Port)>>) -> Self {
        PortGraph { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacency(&self, v: NodeId) -> &[(NodeId, Port)] {
        &self.adjacency[v]
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count()
    }

    /// Node reached by leaving `v` through port `p`, and the entry port there.
    pub fn neighbor(&self, v: NodeId, p: Port) -> Result<(NodeId, Port), GraphError> {
        self.adjacency
            .get(v)
            .and_then(|adj| adj.get(p))
            .copied()
            .ok_or(GraphError::NoSuchPort { node: v, port: p })
    }

    /// Checks all invariants, returning every violation found (empty = valid).
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        let n = self.node_count();
        if n == 0 {
            return vec![Violation::Empty];
        }
        for v in 0..n {
            let mut seen = vec![false; n];
            for (p, &(u, q)) in self.adjacency[v].iter().enumerate() {
                if u >= n {
                    report.push(Violation::NeighborOutOfRange { node: v, port: p, target: u });
                    continue;
                }
                if u == v {
                    report.push(Violation::SelfLoop { node: v, port: p });
                    continue;
                }
                if seen[u] {
                    report.push(Violation::ParallelEdge { node: v, target: u });
                }
                seen[u] = true;
                match self.adjacency[u].get(q) {
                    None => report.push(Violation::EntryPortOutOfRange { node: v, port: p }),
                    Some(&(back, back_port)) => {
                        if back != v || back_port != p {
                            report.push(Violation::AsymmetricEdge { node: v, port: p });
                        }
                    }
                }
            }
        }
        // Connectivity over the union of all referenced edges, ignored if the
        // local structure is already broken enough to make traversal unsafe.
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adjacency[v] {
                if u < n && !reached[u] {
                    reached[u] = true;
                    stack.push(u);
                }
            }
        }
        if let Some(v) = reached.iter().position(|r| !r) {
            report.push(Violation::Disconnected { unreachable: v });
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

impl fmt::Debug for PortGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PortGraph({} nodes; ", self.node_count())?;
        for (v, adj) in self.adjacency.iter().enumerate() {
            if v > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}:{adj:?}")?;
        }
        write!(f, ")")
    }
}

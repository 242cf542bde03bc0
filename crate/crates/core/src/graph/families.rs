//! Canonical graph families with deterministic port-permutation variants.

use std::fmt;
use std::str::FromStr;

use super::{GraphError, NodeId, Port, PortGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// The two-node graph (n must be 2).
    K2,
    /// Cycle on n >= 3 nodes.
    Ring,
    /// Path on n >= 2 nodes.
    Path,
    /// One center with n-1 leaves, n >= 2.
    Star,
    /// Two n-node stars whose centers are linked by an edge (2n nodes total).
    DoubleStar,
    /// Complete graph on n >= 2 nodes.
    Complete,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::K2 => "k2",
            Family::Ring => "ring",
            Family::Path => "path",
            Family::Star => "star",
            Family::DoubleStar => "double_star",
            Family::Complete => "complete",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k2" => Ok(Family::K2),
            "ring" => Ok(Family::Ring),
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "double_star" => Ok(Family::DoubleStar),
            "complete" => Ok(Family::Complete),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }
}

/// Builds the canonical member of `family` and then relabels ports according
/// to `variant`. Variant 0 is the canonical labeling; distinct variants differ
/// only in local port numbering. `variant` is reduced modulo the number of
/// distinct labelings, so any index is usable.
pub fn generate_family(family: Family, n: usize, variant: u64) -> Result<PortGraph, GraphError> {
    let canonical = canonical_family(family, n)?;
    let g = apply_port_variant(&canonical, variant);
    debug_assert!(g.is_valid(), "family generator produced invalid graph: {g:?}");
    Ok(g)
}

fn canonical_family(family: Family, n: usize) -> Result<PortGraph, GraphError> {
    let illegal = |family, n| Err(GraphError::IllegalSize { family, n });
    match family {
        Family::K2 => {
            if n != 2 {
                return illegal(family, n);
            }
            Ok(from_edges(2, &[(0, 1)]))
        }
        Family::Ring => {
            if n < 3 {
                return illegal(family, n);
            }
            // Port 0 = clockwise (to v+1, entering by port 1), port 1 = counter-clockwise.
            let adjacency = (0..n)
                .map(|v| vec![((v + 1) % n, 1), ((v + n - 1) % n, 0)])
                .collect();
            Ok(PortGraph::from_adjacency(adjacency))
        }
        Family::Path => {
            if n < 2 {
                return illegal(family, n);
            }
            let edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
            Ok(from_edges(n, &edges))
        }
        Family::Star => {
            if n < 2 {
                return illegal(family, n);
            }
            let edges: Vec<_> = (1..n).map(|leaf| (0, leaf)).collect();
            Ok(from_edges(n, &edges))
        }
        Family::DoubleStar => {
            // n is the size of each star; centers are nodes 0 and 1.
            if n < 2 {
                return illegal(family, n);
            }
            let total = 2 * n;
            let mut edges = vec![(0, 1)];
            edges.extend((2..n + 1).map(|leaf| (0, leaf)));
            edges.extend((n + 1..total).map(|leaf| (1, leaf)));
            Ok(from_edges(total, &edges))
        }
        Family::Complete => {
            if n < 2 {
                return illegal(family, n);
            }
            let mut edges = Vec::new();
            for v in 0..n {
                for u in v + 1..n {
                    edges.push((v, u));
                }
            }
            Ok(from_edges(n, &edges))
        }
    }
}

/// Canonical port assignment: each node's ports follow the order in which its
/// edges appear in `edges`, i.e. sorted by (other endpoint id) for the
/// families above.
pub(crate) fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> PortGraph {
    let mut incident: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        incident[a].push(b);
        incident[b].push(a);
    }
    for list in &mut incident {
        list.sort_unstable();
    }
    let port_of = |v: NodeId, u: NodeId| -> Port { incident[v].iter().position(|&w| w == u).unwrap() };
    let adjacency = (0..n)
        .map(|v| incident[v].iter().map(|&u| (u, port_of(u, v))).collect())
        .collect();
    PortGraph::from_adjacency(adjacency)
}

/// Relabels each node's ports by a permutation decoded from `variant`.
///
/// `variant` is a mixed-radix number with one digit per node (node 0 least
/// significant, radix deg(v)!); digit i selects the lexicographic i-th
/// permutation of that node's ports.
pub(crate) fn apply_port_variant(g: &PortGraph, variant: u64) -> PortGraph {
    let n = g.node_count();
    let total: u64 = (0..n).map(|v| factorial(g.degree(v))).product();
    let mut rest = if total == 0 { 0 } else { variant % total };
    let mut perms: Vec<Vec<Port>> = Vec::with_capacity(n);
    for v in 0..n {
        let radix = factorial(g.degree(v));
        let digit = rest % radix;
        rest /= radix;
        perms.push(nth_permutation(g.degree(v), digit));
    }
    let mut adjacency: Vec<Vec<(NodeId, Port)>> = (0..n).map(|v| vec![(0, 0); g.degree(v)]).collect();
    for v in 0..n {
        for p in 0..g.degree(v) {
            let (u, q) = g.neighbor(v, p).unwrap();
            adjacency[v][perms[v][p]] = (u, perms[u][q]);
        }
    }
    PortGraph::from_adjacency(adjacency)
}

pub(crate) fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Lexicographic `index`-th permutation of `0..len` via the factorial number system.
pub(crate) fn nth_permutation(len: usize, index: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..len).collect();
    let mut rest = index;
    let mut out = Vec::with_capacity(len);
    for i in (0..len).rev() {
        let radix = factorial(i);
        let pick = (rest / radix) as usize;
        rest %= radix;
        out.push(pool.remove(pick.min(pool.len().saturating_sub(1))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring3_is_a_three_cycle() {
        let g = generate_family(Family::Ring, 3, 0).unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(g.nodes().all(|v| g.degree(v) == 2));
        // Following port 0 three times returns to the start.
        let mut v = 0;
        for _ in 0..3 {
            v = g.neighbor(v, 0).unwrap().0;
        }
        assert_eq!(v, 0);
    }

    #[test]
    fn double_star_3_has_linked_degree_3_centers() {
        let g = generate_family(Family::DoubleStar, 3, 0).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        assert_eq!((2..6).filter(|&v| g.degree(v) == 1).count(), 4);
        assert!(g.adjacency(0).iter().any(|&(u, _)| u == 1));
    }

    #[test]
    fn k2_is_the_two_node_graph() {
        let g = generate_family(Family::K2, 2, 0).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.neighbor(0, 0).unwrap(), (1, 0));
    }

    #[test]
    fn k2_rejects_other_sizes() {
        assert!(matches!(
            generate_family(Family::K2, 3, 0),
            Err(GraphError::IllegalSize { .. })
        ));
    }

    #[test]
    fn unknown_family_name_is_an_error() {
        assert!(matches!(
            "wheel".parse::<Family>(),
            Err(GraphError::UnknownFamily(_))
        ));
    }

    #[test]
    fn variants_are_valid_and_cycle() {
        // ring(3) has 2^3 = 8 port labelings; variant 8 wraps to canonical.
        let canonical = generate_family(Family::Ring, 3, 0).unwrap();
        let wrapped = generate_family(Family::Ring, 3, 8).unwrap();
        assert_eq!(canonical, wrapped);
        let mut distinct = std::collections::BTreeSet::new();
        for variant in 0..8 {
            let g = generate_family(Family::Ring, 3, variant).unwrap();
            assert!(g.is_valid());
            distinct.insert(g);
        }
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn nth_permutation_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..6).map(|i| nth_permutation(3, i)).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }
}

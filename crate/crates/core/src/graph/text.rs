//! Line-oriented text format for port graphs.
//!
//! ```text
//! nodes 2
//! 0: (1 0)
//! 1: (0 0)
//! ```
//!
//! Line 1 declares the node count; each following line lists one node's
//! (neighbor, entry-port) pairs in port order. Parsing validates the result,
//! so only well-formed graphs round-trip.

use std::fmt::Write as _;

use super::{GraphError, NodeId, Port, PortGraph};

pub fn serialize_port_graph(g: &PortGraph) -> String {
    let mut out = String::new();
    writeln!(out, "nodes {}", g.node_count()).unwrap();
    for v in g.nodes() {
        write!(out, "{v}:").unwrap();
        for &(u, q) in g.adjacency(v) {
            write!(out, " ({u} {q})").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_port_graph(text: &str) -> Result<PortGraph, GraphError> {
    let err = |line: usize, message: &str| GraphError::Parse { line, message: message.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let count: usize = header
        .strip_prefix("nodes ")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| err(line_no, "expected `nodes <count>`"))?;
    if count == 0 {
        return Err(err(line_no, "node count must be positive"));
    }

    let mut adjacency: Vec<Option<Vec<(NodeId, Port)>>> = vec![None; count];
    for (line_no, line) in lines {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `<node>: (u q) ...`"))?;
        let v: NodeId = head
            .trim()
            .parse()
            .map_err(|_| err(line_no, "invalid node id"))?;
        if v >= count {
            return Err(err(line_no, "node id out of range"));
        }
        if adjacency[v].is_some() {
            return Err(err(line_no, "duplicate adjacency line for node"));
        }
        adjacency[v] = Some(parse_pairs(rest).map_err(|message| GraphError::Parse { line: line_no, message })?);
    }

    let adjacency: Vec<Vec<(NodeId, Port)>> = adjacency
        .into_iter()
        .enumerate()
        .map(|(v, entry)| entry.ok_or_else(|| err(v + 1, "missing adjacency line")))
        .collect::<Result<_, _>>()?;

    let g = PortGraph::from_adjacency(adjacency);
    if let Some(violation) = g.validate().into_iter().next() {
        return Err(GraphError::Invalid(violation));
    }
    Ok(g)
}

fn parse_pairs(rest: &str) -> Result<Vec<(NodeId, Port)>, String> {
    let mut pairs = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| "expected `(`".to_string())?;
        let (body, tail) = open
            .split_once(')')
            .ok_or_else(|| "unterminated `(`".to_string())?;
        let mut nums = body.split_whitespace();
        let u: NodeId = nums
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| "expected neighbor id".to_string())?;
        let q: Port = nums
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| "expected entry port".to_string())?;
        if nums.next().is_some() {
            return Err("too many fields in pair".to_string());
        }
        pairs.push((u, q));
        rest = tail.trim_start();
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_port_graphs, generate_family, Family};

    #[test]
    fn k2_fixture_text() {
        let g = generate_family(Family::K2, 2, 0).unwrap();
        assert_eq!(serialize_port_graph(&g), "nodes 2\n0: (1 0)\n1: (0 0)\n");
    }

    #[test]
    fn ring3_round_trips() {
        let g = generate_family(Family::Ring, 3, 0).unwrap();
        assert_eq!(parse_port_graph(&serialize_port_graph(&g)).unwrap(), g);
    }

    #[test]
    fn duplicate_entry_port_is_rejected() {
        // Node 2's two edges both claim entry port 0 at node 0: asymmetric.
        let text = "nodes 3\n0: (1 0) (2 0)\n1: (0 0) (2 1)\n2: (0 0) (1 0)\n";
        let e = parse_port_graph(text).unwrap_err();
        assert!(matches!(e, GraphError::Invalid(_)), "{e}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_port_graph("nodes 2\n0: (1 0)\n1: (0\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: unterminated `(`");
        let e = parse_port_graph("vertices 2\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1:"));
    }

    #[test]
    fn every_enumerated_graph_round_trips() {
        for g in enumerate_port_graphs(3).unwrap() {
            assert_eq!(parse_port_graph(&serialize_port_graph(&g)).unwrap(), g);
        }
    }
}

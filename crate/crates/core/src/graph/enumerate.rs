//! Exhaustive enumeration of connected port-labeled graphs.
//!
//! For each node count `k <= m` this yields every connected simple graph on
//! labeled nodes `0..k`, under every assignment of local port numbers, in a
//! fixed deterministic order. Isomorphic duplicates are yielded on purpose:
//! correctness sweeps quantify over all labeled instances, and deduplication
//! would be an optimization with its own bug surface.

use std::collections::VecDeque;

use super::families::{factorial, nth_permutation};
use super::{GraphError, NodeId, Port, PortGraph};

/// Largest `m` the enumerator accepts by default. Size 5 already has tens of
/// millions of port labelings, so exhaustive sweeps stop at 4.
pub const DEFAULT_ENUMERATION_CAP: usize = 4;

pub fn enumerate_port_graphs(m: usize) -> Result<PortGraphStream, GraphError> {
    enumerate_port_graphs_with_cap(m, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_port_graphs_with_cap(m: usize, cap: usize) -> Result<PortGraphStream, GraphError> {
    if m == 0 {
        return Err(GraphError::ZeroSize);
    }
    if m > cap {
        return Err(GraphError::EnumerationCapExceeded { m, cap });
    }
    Ok(PortGraphStream { m, size: 0, mask: 0, buffer: VecDeque::new() })
}

/// Single-consumer stream over the enumeration, ordered by (node count, edge
/// set as an ascending bitmask, port assignment as a mixed-radix counter).
pub struct PortGraphStream {
    m: usize,
    size: usize,
    mask: u64,
    buffer: VecDeque<PortGraph>,
}

impl Iterator for PortGraphStream {
    type Item = PortGraph;

    fn next(&mut self) -> Option<PortGraph> {
        loop {
            if let Some(g) = self.buffer.pop_front() {
                return Some(g);
            }
            // Advance to the next edge mask (or next size) that is connected.
            loop {
                if self.size == 0 || self.mask >= (1u64 << edge_slots(self.size)) {
                    self.size += 1;
                    if self.size > self.m {
                        return None;
                    }
                    self.mask = 0;
                    if self.size == 1 {
                        self.buffer.push_back(PortGraph::from_adjacency(vec![vec![]]));
                        self.mask = 1; // the only mask for k = 1 is done
                        break;
                    }
                }
                let mask = self.mask;
                self.mask += 1;
                let edges = edges_of_mask(self.size, mask);
                if is_connected(self.size, &edges) {
                    fill_port_assignments(self.size, &edges, &mut self.buffer);
                    break;
                }
            }
        }
    }
}

fn edge_slots(k: usize) -> u32 {
    (k * (k - 1) / 2) as u32
}

/// Edge order: all pairs (i, j) with i < j, sorted lexicographically.
fn edges_of_mask(k: usize, mask: u64) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..k {
        for j in i + 1..k {
            if mask & (1 << bit) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    edges
}

fn is_connected(k: usize, edges: &[(NodeId, NodeId)]) -> bool {
    let mut reached = vec![false; k];
    let mut stack = vec![0];
    reached[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !reached[other] {
                reached[other] = true;
                count += 1;
                stack.push(other);
            }
        }
    }
    count == k
}

/// Emits one graph per assignment of ports, iterating the per-node permutation
/// indices as an odometer with the last node fastest.
fn fill_port_assignments(k: usize, edges: &[(NodeId, NodeId)], out: &mut VecDeque<PortGraph>) {
    let mut incident: Vec<Vec<NodeId>> = vec![Vec::new(); k];
    for &(a, b) in edges {
        incident[a].push(b);
        incident[b].push(a);
    }
    let radixes: Vec<u64> = incident.iter().map(|inc| factorial(inc.len())).collect();
    let mut digits = vec![0u64; k];
    loop {
        let perms: Vec<Vec<Port>> = (0..k).map(|v| nth_permutation(incident[v].len(), digits[v])).collect();
        // perms[v][e] = port at v of its e-th incident edge (base order).
        let mut adjacency: Vec<Vec<(NodeId, Port)>> =
            (0..k).map(|v| vec![(0, 0); incident[v].len()]).collect();
        for v in 0..k {
            for (e, &u) in incident[v].iter().enumerate() {
                let back = incident[u].iter().position(|&w| w == v).unwrap();
                adjacency[v][perms[v][e]] = (u, perms[u][back]);
            }
        }
        let g = PortGraph::from_adjacency(adjacency);
        debug_assert!(g.is_valid(), "enumerator produced invalid graph: {g:?}");
        out.push_back(g);

        // Odometer increment.
        let mut v = k;
        loop {
            if v == 0 {
                return;
            }
            v -= 1;
            digits[v] += 1;
            if digits[v] < radixes[v] {
                break;
            }
            digits[v] = 0;
        }
    }
}

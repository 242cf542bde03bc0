//! Deterministic exploration-sequence miner.
//!
//! The miner walks every (graph, start) pair of the target set in lockstep
//! along the sequence built so far. Pairs are processed in enumeration order;
//! for the first pair that still has unvisited nodes, a shortest steering
//! excursion (BFS over that pair's walk state, smallest-port tie-breaking) is
//! appended to the sequence, advancing every other pair as a side effect.
//! Coverage is monotone, so this terminates; a pruning pass then removes
//! every step whose removal keeps the sequence universal. The result is a
//! pure function of the target set.

use std::collections::VecDeque;

use super::{certify_for_graphs, verify_on_graphs, UxsError, UxsRecord};
use crate::graph::{enumerate_port_graphs, NodeId, Port, PortGraph};
use crate::uxs::exp_step;

/// Hard cap on sequence length during mining; hitting it is an error rather
/// than a silently uncertified result.
pub const MINING_STEP_BUDGET: usize = 10_000;

/// Mines and certifies a sequence universal for all graphs of size at most
/// `m` (within the enumeration cap). Deterministic: same `m`, same record.
pub fn mine_uxs(m: usize) -> Result<UxsRecord, UxsError> {
    let graphs: Vec<PortGraph> = enumerate_port_graphs(m)?.collect();
    let steps = mine_over(&graphs, m, MINING_STEP_BUDGET)?;
    let mut record = UxsRecord::new_unverified(m, steps);
    record.certify()?;
    debug_assert!(record.certified());
    Ok(record)
}

/// Mines a sequence covering exactly the supplied graphs (each of size at
/// most `m`), for size bounds beyond the enumeration cap. The record's
/// certification is scoped to those graphs.
pub fn mine_uxs_for_graphs(m: usize, graphs: &[PortGraph]) -> Result<UxsRecord, UxsError> {
    assert!(
        graphs.iter().all(|g| g.node_count() <= m && g.is_valid()),
        "graph set must be valid and within the size bound"
    );
    let steps = mine_over(graphs, m, MINING_STEP_BUDGET)?;
    let mut record = UxsRecord::new_unverified(m, steps);
    certify_for_graphs(&mut record, graphs)?;
    Ok(record)
}

struct PairState<'g> {
    graph: &'g PortGraph,
    node: NodeId,
    entry: Option<Port>,
    visited: Vec<bool>,
    remaining: usize,
}

impl<'g> PairState<'g> {
    fn new(graph: &'g PortGraph, start: NodeId) -> Self {
        let mut visited = vec![false; graph.node_count()];
        visited[start] = true;
        PairState { graph, node: start, entry: None, visited, remaining: graph.node_count() - 1 }
    }

    fn advance(&mut self, x: usize) {
        let d = self.graph.degree(self.node);
        if d == 0 {
            return;
        }
        let exit = exp_step(self.entry, d, x);
        let (next, q) = self.graph.neighbor(self.node, exit).unwrap();
        self.node = next;
        self.entry = Some(q);
        if !self.visited[next] {
            self.visited[next] = true;
            self.remaining -= 1;
        }
    }
}

fn mine_over(graphs: &[PortGraph], m: usize, budget: usize) -> Result<Vec<usize>, UxsError> {
    let mut pairs: Vec<PairState> = graphs
        .iter()
        .flat_map(|g| g.nodes().map(move |start| PairState::new(g, start)))
        .collect();
    let mut steps: Vec<usize> = Vec::new();
    for focus in 0..pairs.len() {
        while pairs[focus].remaining > 0 {
            let excursion = steer_to_unvisited(&pairs[focus]);
            if steps.len() + excursion.len() > budget {
                return Err(UxsError::BudgetExhausted { m, budget });
            }
            for x in excursion {
                for pair in &mut pairs {
                    pair.advance(x);
                }
                steps.push(x);
            }
        }
    }
    Ok(prune(steps, graphs))
}

/// Shortest step-value sequence that takes the pair's walk to some node it
/// has not visited. BFS over (node, entry-port) states; from a fresh state
/// only the forced port-0 move exists, otherwise every exit port is reachable
/// by choosing `x = (q - p) mod d`. Ports are tried in ascending order, so
/// ties resolve lexicographically.
fn steer_to_unvisited(pair: &PairState) -> Vec<usize> {
    let g = pair.graph;
    // State index: node * (deg_max + 1) + (entry + 1 or 0 for fresh).
    let width = g.nodes().map(|v| g.degree(v)).max().unwrap_or(0) + 1;
    let index = |node: NodeId, entry: Option<Port>| node * width + entry.map_or(0, |p| p + 1);
    let mut seen = vec![false; g.node_count() * width];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.node_count() * width]; // (state, x)
    let start = index(pair.node, pair.entry);
    seen[start] = true;
    let mut queue = VecDeque::from([(pair.node, pair.entry)]);
    while let Some((node, entry)) = queue.pop_front() {
        let d = g.degree(node);
        let exits: Vec<(Port, usize)> = match entry {
            None => {
                if d == 0 {
                    Vec::new()
                } else {
                    vec![(0, 0)]
                }
            }
            Some(p) => (0..d).map(|q| (q, (q + d - p) % d)).collect(),
        };
        for (q, x) in exits {
            let (next, next_entry) = g.neighbor(node, q).unwrap();
            let idx = index(next, Some(next_entry));
            if seen[idx] {
                continue;
            }
            seen[idx] = true;
            parent[idx] = Some((index(node, entry), x));
            if !pair.visited[next] {
                // Reconstruct the x values along the BFS path.
                let mut xs = Vec::new();
                let mut cursor = idx;
                while cursor != start {
                    let (prev, step_x) = parent[cursor].unwrap();
                    xs.push(step_x);
                    cursor = prev;
                }
                xs.reverse();
                return xs;
            }
            queue.push_back((next, Some(next_entry)));
        }
    }
    unreachable!("connected graph always has a reachable unvisited node");
}

/// Removes every step whose removal keeps the sequence covering all pairs,
/// scanning left to right until a full pass removes nothing.
fn prune(mut steps: Vec<usize>, graphs: &[PortGraph]) -> Vec<usize> {
    loop {
        let mut removed = false;
        let mut i = 0;
        while i < steps.len() {
            let mut candidate = steps.clone();
            candidate.remove(i);
            if verify_on_graphs(&candidate, graphs) {
                steps = candidate;
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            return steps;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};
    use crate::uxs::verify_uxs;

    #[test]
    fn mine_m1_is_empty() {
        let record = mine_uxs(1).unwrap();
        assert_eq!(record.steps(), &[] as &[usize]);
        assert!(record.certified());
    }

    #[test]
    fn mine_m2_is_single_zero() {
        let record = mine_uxs(2).unwrap();
        assert_eq!(record.steps(), &[0]);
    }

    #[test]
    fn mine_m3_certifies_against_own_verifier() {
        let record = mine_uxs(3).unwrap();
        assert!(verify_uxs(record.steps(), 3).unwrap());
        assert!(record.certified());
    }

    #[test]
    fn mining_is_deterministic() {
        assert_eq!(mine_uxs(3).unwrap(), mine_uxs(3).unwrap());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let graphs: Vec<PortGraph> = enumerate_port_graphs(3).unwrap().collect();
        let e = mine_over(&graphs, 3, 1).unwrap_err();
        assert!(matches!(e, UxsError::BudgetExhausted { m: 3, budget: 1 }));
    }

    #[test]
    fn family_scoped_mining_covers_exactly_its_graphs() {
        let graphs = vec![
            generate_family(Family::Ring, 6, 0).unwrap(),
            generate_family(Family::Star, 6, 0).unwrap(),
        ];
        let record = mine_uxs_for_graphs(6, &graphs).unwrap();
        assert!(!record.certified()); // not exhaustive for m = 6
        assert!(record.covers(&graphs[0]));
        assert!(record.covers(&graphs[1]));
        let other = generate_family(Family::Path, 6, 0).unwrap();
        assert!(!record.covers(&other));
    }
}

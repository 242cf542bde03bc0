//! Universal exploration sequences.
//!
//! An exploration sequence `x_1 .. x_T` steers a walk through any port-labeled
//! graph: the first step leaves by port 0, and a step entered by port `p` into
//! a degree-`d` node exits by `(p + x_i) mod d`. A sequence is *universal* for
//! size bound `m` when the induced walk visits every node of every connected
//! graph with at most `m` nodes, from every start. `R(m)` is defined here as
//! the length of the mined sequence for bound `m`.
//!
//! Certification is earned at runtime, never parsed from a file: a record
//! loaded from a cache is unverified until [`verify_uxs`] has re-checked it
//! against the full enumeration (or, for bounds beyond the enumeration cap,
//! against an explicit list of graphs).

mod mine;

pub use mine::{mine_uxs, mine_uxs_for_graphs, MINING_STEP_BUDGET};

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{enumerate_port_graphs, GraphError, NodeId, Port, PortGraph};

#[derive(Debug, Error)]
pub enum UxsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("uxs record for m = {m} is not certified")]
    Uncertified { m: usize },
    #[error("no uxs record for m = {m}")]
    Missing { m: usize },
    #[error("uxs record for m = {m} does not cover this graph ({nodes} nodes)")]
    NotCovered { m: usize, nodes: usize },
    #[error("uxs record for m = {m} failed certification")]
    CertificationFailed { m: usize },
    #[error("mining budget of {budget} steps exhausted for m = {m}")]
    BudgetExhausted { m: usize, budget: usize },
    #[error("cache line {line}: {message}")]
    CacheFormat { line: usize, message: String },
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
}

/// What a record's sequence has been verified against.
#[derive(Debug, Clone, PartialEq, Eq)]
enum CertScope {
    Unverified,
    /// Every connected port-labeled graph with at most `size_bound` nodes.
    Exhaustive,
    /// An explicit set of graphs (used for bounds beyond the enumeration cap).
    GraphSet(BTreeSet<PortGraph>),
}

/// An exploration sequence for size bound `m`, with its certification state.
///
/// `R(m)` is exactly `steps().len()`: the number of steps an agent executes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UxsRecord {
    size_bound: usize,
    steps: Vec<usize>,
    cert: CertScope,
}

impl UxsRecord {
    pub fn new_unverified(size_bound: usize, steps: Vec<usize>) -> Self {
        UxsRecord { size_bound, steps, cert: CertScope::Unverified }
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// The walk length `R(m)`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// True once the sequence has passed verification against the full
    /// enumeration for its size bound.
    pub fn certified(&self) -> bool {
        self.cert == CertScope::Exhaustive
    }

    /// True if the sequence has passed any verification at all (full
    /// enumeration or an explicit graph set).
    pub fn verified(&self) -> bool {
        self.cert != CertScope::Unverified
    }

    /// Whether the record's certification admits walking `g`.
    pub fn covers(&self, g: &PortGraph) -> bool {
        match &self.cert {
            CertScope::Unverified => false,
            CertScope::Exhaustive => g.node_count() <= self.size_bound,
            CertScope::GraphSet(set) => set.contains(g),
        }
    }

    /// Runs full-enumeration verification, upgrading the record on success.
    pub fn certify(&mut self) -> Result<(), UxsError> {
        if self.cert == CertScope::Exhaustive {
            return Ok(());
        }
        if verify_uxs(&self.steps, self.size_bound)? {
            self.cert = CertScope::Exhaustive;
            Ok(())
        } else {
            Err(UxsError::CertificationFailed { m: self.size_bound })
        }
    }
}

/// Exit port of the next step: port 0 on a fresh start (no prior entry),
/// otherwise `(p + x) mod d`.
pub fn exp_step(prev_entry_port: Option<Port>, degree: usize, x: usize) -> Port {
    debug_assert!(degree >= 1);
    match prev_entry_port {
        None => 0,
        Some(p) => (p + x) % degree,
    }
}

/// The node sequence of the walk driven by `steps` from `start`; length
/// `steps.len() + 1`. A step at an isolated node stays put (only the
/// single-node graph has one).
pub fn walk_trajectory(g: &PortGraph, start: NodeId, steps: &[usize]) -> Vec<NodeId> {
    let mut trajectory = Vec::with_capacity(steps.len() + 1);
    trajectory.push(start);
    let mut node = start;
    let mut entry: Option<Port> = None;
    for &x in steps {
        let d = g.degree(node);
        if d == 0 {
            trajectory.push(node);
            continue;
        }
        let exit = exp_step(entry, d, x);
        let (next, q) = g.neighbor(node, exit).expect("exit port in range");
        node = next;
        entry = Some(q);
        trajectory.push(node);
    }
    trajectory
}

/// Certified exploration: refuses records whose certification does not cover
/// `g`, then returns the full trajectory (which visits every node of `g`).
pub fn exp_walk(g: &PortGraph, start: NodeId, record: &UxsRecord) -> Result<Vec<NodeId>, UxsError> {
    if record.cert == CertScope::Unverified {
        return Err(UxsError::Uncertified { m: record.size_bound });
    }
    if !record.covers(g) {
        return Err(UxsError::NotCovered { m: record.size_bound, nodes: g.node_count() });
    }
    Ok(walk_trajectory(g, start, &record.steps))
}

fn walk_covers(g: &PortGraph, start: NodeId, steps: &[usize]) -> bool {
    let mut visited = vec![false; g.node_count()];
    let mut remaining = g.node_count();
    for node in walk_trajectory(g, start, steps) {
        if !visited[node] {
            visited[node] = true;
            remaining -= 1;
            if remaining == 0 {
                return true;
            }
        }
    }
    false
}

/// True iff the walk driven by `steps` visits all nodes of every connected
/// port-labeled graph with at most `m` nodes, from every start node.
pub fn verify_uxs(steps: &[usize], m: usize) -> Result<bool, GraphError> {
    for g in enumerate_port_graphs(m)? {
        for start in g.nodes() {
            if !walk_covers(&g, start, steps) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coverage check against an explicit graph list (all starts of each graph).
pub fn verify_on_graphs(steps: &[usize], graphs: &[PortGraph]) -> bool {
    graphs
        .iter()
        .all(|g| g.nodes().all(|start| walk_covers(g, start, steps)))
}

/// In-memory set of records keyed by size bound, with the text cache format
/// `uxs <m> <R(m)> : x1 x2 ... xR` (one record per line).
#[derive(Debug, Clone, Default)]
pub struct UxsCache {
    records: std::collections::BTreeMap<usize, UxsRecord>,
}

/// Sequences shipped with the crate, mined by the excursion miner and frozen;
/// re-mining is available through the harness but never happens implicitly.
const BUILTIN_CACHE: &str = include_str!("../../data/uxs_cache.txt");

impl UxsCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The shipped cache. Records load unverified; call [`UxsCache::certify_all`]
    /// (or certify individual records) before handing them to walks.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_CACHE).expect("builtin cache is well-formed")
    }

    pub fn parse(text: &str) -> Result<Self, UxsError> {
        let mut cache = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let body = trimmed.strip_prefix("uxs ").ok_or_else(|| UxsError::CacheFormat {
                line,
                message: "expected `uxs <m> <len> : steps`".to_string(),
            })?;
            let (head, steps_text) = body.split_once(':').ok_or_else(|| UxsError::CacheFormat {
                line,
                message: "missing `:`".to_string(),
            })?;
            let mut head_fields = head.split_whitespace();
            let m: usize = head_fields
                .next()
                .and_then(|t| t.parse().ok())
                .filter(|&m| m >= 1)
                .ok_or_else(|| UxsError::CacheFormat { line, message: "bad size bound".to_string() })?;
            let len: usize = head_fields
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| UxsError::CacheFormat { line, message: "bad length".to_string() })?;
            if head_fields.next().is_some() {
                return Err(UxsError::CacheFormat { line, message: "too many header fields".to_string() });
            }
            let steps: Vec<usize> = steps_text
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| UxsError::CacheFormat { line, message: "bad step value".to_string() })?;
            if steps.len() != len {
                return Err(UxsError::CacheFormat {
                    line,
                    message: format!("declared length {len} but found {} steps", steps.len()),
                });
            }
            if cache.records.insert(m, UxsRecord::new_unverified(m, steps)).is_some() {
                return Err(UxsError::CacheFormat { line, message: format!("duplicate record for m = {m}") });
            }
        }
        Ok(cache)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for record in self.records.values() {
            write!(out, "uxs {} {} :", record.size_bound, record.len()).unwrap();
            for x in &record.steps {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, UxsError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), UxsError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Fail-fast certification of every record whose bound is within the
    /// enumeration cap. A corrupted cache is rejected here, before any
    /// scenario runs.
    pub fn certify_all(&mut self) -> Result<(), UxsError> {
        for record in self.records.values_mut() {
            record.certify()?;
        }
        Ok(())
    }

    pub fn insert(&mut self, record: UxsRecord) {
        self.records.insert(record.size_bound, record);
    }

    pub fn get(&self, m: usize) -> Option<&UxsRecord> {
        self.records.get(&m)
    }

    /// The record for `m`, which must exist and carry some certification.
    pub fn certified(&self, m: usize) -> Result<&UxsRecord, UxsError> {
        let record = self.records.get(&m).ok_or(UxsError::Missing { m })?;
        if record.cert == CertScope::Unverified {
            return Err(UxsError::Uncertified { m });
        }
        Ok(record)
    }

    pub fn records(&self) -> impl Iterator<Item = &UxsRecord> {
        self.records.values()
    }
}

pub(crate) fn certify_for_graphs(record: &mut UxsRecord, graphs: &[PortGraph]) -> Result<(), UxsError> {
    if verify_on_graphs(&record.steps, graphs) {
        record.cert = CertScope::GraphSet(graphs.iter().cloned().collect());
        Ok(())
    } else {
        Err(UxsError::CertificationFailed { m: record.size_bound })
    }
}

/// Shared test fixture: the shipped cache, certified.
#[cfg(test)]
pub(crate) fn certified_test_cache() -> UxsCache {
    let mut cache = UxsCache::builtin();
    cache.certify_all().expect("builtin cache certifies");
    cache
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn k2() -> PortGraph {
        generate_family(Family::K2, 2, 0).unwrap()
    }

    #[test]
    fn exp_step_examples() {
        assert_eq!(exp_step(None, 3, 7), 0);
        assert_eq!(exp_step(Some(1), 2, 1), 0);
        assert_eq!(exp_step(Some(0), 1, 5), 0);
    }

    #[test]
    fn single_node_walk_covers_without_steps() {
        let g = PortGraph::from_adjacency(vec![vec![]]);
        assert_eq!(walk_trajectory(&g, 0, &[]), vec![0]);
        assert!(walk_covers(&g, 0, &[]));
    }

    #[test]
    fn k2_single_step_covers_both_nodes() {
        assert_eq!(walk_trajectory(&k2(), 0, &[0]), vec![0, 1]);
        assert!(verify_uxs(&[0], 2).unwrap());
    }

    #[test]
    fn empty_sequence_fails_for_two_nodes() {
        assert!(!verify_uxs(&[], 2).unwrap());
    }

    #[test]
    fn exp_walk_refuses_uncertified_records() {
        let record = UxsRecord::new_unverified(2, vec![0]);
        assert!(matches!(
            exp_walk(&k2(), 0, &record),
            Err(UxsError::Uncertified { m: 2 })
        ));
    }

    #[test]
    fn exp_walk_refuses_oversized_graphs() {
        let mut record = UxsRecord::new_unverified(2, vec![0]);
        record.certify().unwrap();
        let ring = generate_family(Family::Ring, 3, 0).unwrap();
        assert!(matches!(
            exp_walk(&ring, 0, &record),
            Err(UxsError::NotCovered { m: 2, nodes: 3 })
        ));
    }

    #[test]
    fn visited_set_grows_monotonically() {
        let mut record = mine_uxs(3).unwrap();
        record.certify().unwrap();
        let ring = generate_family(Family::Ring, 3, 5).unwrap();
        for start in ring.nodes() {
            let trajectory = exp_walk(&ring, start, &record).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            let mut last = 0;
            for node in trajectory {
                seen.insert(node);
                assert!(seen.len() >= last);
                last = seen.len();
            }
            assert_eq!(seen.len(), 3);
        }
    }

    #[test]
    fn cache_round_trips_and_formats_match() {
        let mut cache = UxsCache::new();
        cache.insert(UxsRecord::new_unverified(1, vec![]));
        cache.insert(UxsRecord::new_unverified(2, vec![0]));
        let text = cache.to_text();
        assert_eq!(text, "uxs 1 0 :\nuxs 2 1 : 0\n");
        let reparsed = UxsCache::parse(&text).unwrap();
        assert_eq!(reparsed.get(2).unwrap().steps(), &[0]);
        assert!(!reparsed.get(2).unwrap().certified());
    }

    #[test]
    fn cache_rejects_length_mismatch() {
        let e = UxsCache::parse("uxs 2 3 : 0\n").unwrap_err();
        assert!(e.to_string().contains("declared length 3"));
    }

    #[test]
    fn corrupted_cache_fails_certification() {
        // Well-formed line, wrong content: a single stay cannot cover 3 nodes.
        let mut cache = UxsCache::parse("uxs 3 1 : 0\n").unwrap();
        assert!(matches!(
            cache.certify_all(),
            Err(UxsError::CertificationFailed { m: 3 })
        ));
    }

    #[test]
    fn builtin_cache_certifies() {
        let mut cache = UxsCache::builtin();
        cache.certify_all().unwrap();
        for m in 1..=4 {
            assert!(cache.certified(m).unwrap().certified());
        }
    }
}

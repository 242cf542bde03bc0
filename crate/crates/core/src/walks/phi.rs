//! The label-keyed meeting walk.
//!
//! Two agents that each play this walk for their own (distinct) labels end up
//! at the same node in a round that is a move for exactly one of them — the
//! asymmetry the detection protocols need. The walk runs in phases with
//! doubling size guesses `m = min(2^v, cap)`; within a phase the agent plays
//! its label word `t1(L)` one bit at a time, each bit lasting `2R(m)` rounds:
//!
//! - bit 1: a full exploration (`EXP(m)`) followed by its exact reverse,
//!   backtracking along the remembered entry ports — all rounds moves;
//! - bit 0: idle for `2R(m)` rounds — all rounds stays.
//!
//! Every segment therefore starts and ends at the same anchor node, so an
//! idle bit parks the agent at its anchor while a set bit sweeps the whole
//! graph and returns. Distinct labels have words that disagree under every
//! relative shift (see the rotation-distinctness test in the parent module),
//! which forces one agent to sweep while the other is parked. Phases repeat
//! forever at the cap once reached.

use std::sync::Arc;

use super::{t1_transform, Motion, StreamObs, WalkError};
use crate::graph::{Port, DEFAULT_ENUMERATION_CAP};
use crate::uxs::UxsCache;

/// The per-phase size guesses and their certified sequences: `min(2^v, cap)`
/// for v = 1, 2, ..., deduplicated once the cap is reached.
pub(crate) fn phi_levels(cache: &UxsCache) -> Result<Vec<(usize, Arc<[usize]>)>, WalkError> {
    let cap = DEFAULT_ENUMERATION_CAP;
    let mut levels = Vec::new();
    let mut guess = 2usize;
    loop {
        let m = guess.min(cap);
        let record = cache.certified(m)?;
        if !record.certified() {
            return Err(WalkError::Uxs(crate::uxs::UxsError::Uncertified { m }));
        }
        levels.push((m, Arc::from(record.steps())));
        if m == cap {
            return Ok(levels);
        }
        guess *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pending {
    None,
    /// Last round was a forward exploration move; record its entry port.
    Record,
    /// Last round was a backtracking move; its entry port is already known.
    Discard,
}

/// Infinite motion stream of the meeting walk. Emits no sounds; the beeping
/// wrapper adds them.
pub struct PhiWalk {
    pattern: Vec<bool>,
    levels: Vec<(usize, Arc<[usize]>)>,
    level_idx: usize,
    bit_idx: usize,
    round_in_seg: usize,
    entries: Vec<Port>,
    pending: Pending,
}

impl PhiWalk {
    pub fn new(label: u64, cache: &UxsCache) -> Result<Self, WalkError> {
        Ok(Self::from_levels(t1_transform(label)?, phi_levels(cache)?))
    }

    pub(crate) fn from_levels(pattern: Vec<bool>, levels: Vec<(usize, Arc<[usize]>)>) -> Self {
        assert!(!levels.is_empty());
        PhiWalk {
            pattern,
            levels,
            level_idx: 0,
            bit_idx: 0,
            round_in_seg: 0,
            entries: Vec::new(),
            pending: Pending::None,
        }
    }

    /// Advances one round. `obs` must be the agent's current observation; the
    /// stream uses it to learn the entry port of its previous move and the
    /// degree of the current node.
    pub fn next_motion(&mut self, obs: StreamObs) -> Motion {
        if self.pending == Pending::Record {
            let entry = obs.entry_port.expect("moved last round, entry port must be present");
            self.entries.push(entry);
        }
        self.pending = Pending::None;

        let steps_len = self.levels[self.level_idx].1.len();
        if self.round_in_seg == 2 * steps_len {
            self.round_in_seg = 0;
            self.entries.clear();
            self.bit_idx += 1;
            if self.bit_idx == self.pattern.len() {
                self.bit_idx = 0;
                self.level_idx = (self.level_idx + 1).min(self.levels.len() - 1);
            }
        }

        let steps = &self.levels[self.level_idx].1;
        let half = steps.len();
        let motion = if !self.pattern[self.bit_idx] {
            Motion::Stay
        } else if self.round_in_seg < half {
            // Forward exploration half.
            if obs.degree == 0 {
                Motion::Stay
            } else {
                let port =
                    crate::uxs::exp_step(self.entries.last().copied(), obs.degree, steps[self.round_in_seg]);
                self.pending = Pending::Record;
                Motion::Move(port)
            }
        } else {
            // Backtracking half: replay the recorded entry ports in reverse.
            let back = self.round_in_seg - half;
            if back < self.entries.len() {
                self.pending = Pending::Discard;
                Motion::Move(self.entries[self.entries.len() - 1 - back])
            } else {
                Motion::Stay
            }
        };
        self.round_in_seg += 1;
        motion
    }

    /// Round count of phase `v` (0-indexed): `|t1| * 2R(m_v)`.
    pub fn phase_length(&self, phase: usize) -> u64 {
        let level = phase.min(self.levels.len() - 1);
        (self.pattern.len() * 2 * self.levels[level].1.len()) as u64
    }

    /// Number of distinct size-guess levels; phases beyond this repeat the last.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, NodeId, PortGraph};
    use crate::uxs::certified_test_cache as cache;
    use crate::walks::Motion;

    /// Drives the walk on a graph, returning (motions, positions after each round).
    fn drive(walk: &mut PhiWalk, g: &PortGraph, start: NodeId, rounds: usize) -> (Vec<Motion>, Vec<NodeId>) {
        let mut motions = Vec::new();
        let mut positions = Vec::new();
        let mut node = start;
        let mut entry: Option<usize> = None;
        for _ in 0..rounds {
            let m = walk.next_motion(StreamObs { degree: g.degree(node), entry_port: entry });
            match m {
                Motion::Stay => entry = None,
                Motion::Move(p) => {
                    let (next, q) = g.neighbor(node, p).unwrap();
                    node = next;
                    entry = Some(q);
                }
            }
            motions.push(m);
            positions.push(node);
        }
        (motions, positions)
    }

    #[test]
    fn label_one_phase_one_pattern_on_k2() {
        // t1(1) = 011101 and R(2) = 1: idle 2, move 2, move 2, move 2, idle 2, move 2.
        let g = generate_family(Family::K2, 2, 0).unwrap();
        let mut walk = PhiWalk::new(1, &cache()).unwrap();
        let (motions, _) = drive(&mut walk, &g, 0, 12);
        let active: Vec<bool> = motions.iter().map(|m| m.is_move()).collect();
        assert_eq!(
            active,
            vec![false, false, true, true, true, true, true, true, false, false, true, true]
        );
    }

    #[test]
    fn set_bit_segments_return_to_the_anchor() {
        let g = generate_family(Family::Ring, 3, 4).unwrap();
        let mut walk = PhiWalk::new(3, &cache()).unwrap();
        let phase1 = walk.phase_length(0) as usize;
        let phase2 = walk.phase_length(1) as usize;
        let (_, positions) = drive(&mut walk, &g, 1, phase1 + 2 * phase2);
        // At every segment boundary the agent sits at its anchor (= start,
        // since segments compose from a fixed node).
        let r2 = 2 * cache().get(2).unwrap().len();
        let mut boundary = 0;
        while boundary < phase1 {
            boundary += r2;
            assert_eq!(positions[boundary - 1], 1, "phase-1 boundary {boundary}");
        }
        let r4 = 2 * cache().get(4).unwrap().len();
        while boundary < phase1 + 2 * phase2 {
            boundary += r4;
            assert_eq!(positions[boundary - 1], 1, "phase-2 boundary {boundary}");
        }
    }

    #[test]
    fn phase_lengths_follow_the_word_and_level() {
        let c = cache();
        let walk = PhiWalk::new(1, &c).unwrap();
        let q = 6; // |t1(1)|
        assert_eq!(walk.phase_length(0), (q * 2 * c.get(2).unwrap().len()) as u64);
        assert_eq!(walk.phase_length(1), (q * 2 * c.get(4).unwrap().len()) as u64);
        assert_eq!(walk.phase_length(7), walk.phase_length(1));
    }

    #[test]
    fn uncertified_cache_is_refused() {
        let mut cache = UxsCache::new();
        cache.insert(crate::uxs::UxsRecord::new_unverified(2, vec![0]));
        assert!(PhiWalk::new(1, &cache).is_err());
    }
}

//! Meeting-contract checker for the label-keyed walk.
//!
//! Simulates two walks (or one walk against a permanently idle agent) on a
//! graph with an activation delay and scans for the first round in which both
//! agents occupy the same node while exactly one of them moved. The detection
//! protocols stand or fall with this property, and the verification suites
//! assert it exhaustively at desk scale.

use super::phi::PhiWalk;
use super::{Motion, StreamObs, WalkError};
use crate::graph::{NodeId, PortGraph};
use crate::uxs::UxsCache;

/// One side of the contract check.
#[derive(Debug, Clone, Copy)]
pub enum PhiParty {
    Walker { label: u64 },
    IdleForever,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeetingReport {
    /// Global round of the meeting (rounds start at 1; an agent with
    /// activation round `a` takes its first action in round `a + 1`).
    pub round: u64,
    pub node: NodeId,
    /// Index (0 or 1) of the agent whose round was active.
    pub active_agent: usize,
}

struct PartyState {
    walk: Option<PhiWalk>,
    start: NodeId,
    activation: u64,
    node: NodeId,
    entry: Option<usize>,
}

impl PartyState {
    fn new(party: PhiParty, start: NodeId, activation: u64, cache: &UxsCache) -> Result<Self, WalkError> {
        let walk = match party {
            PhiParty::Walker { label } => Some(PhiWalk::new(label, cache)?),
            PhiParty::IdleForever => None,
        };
        Ok(PartyState { walk, start, activation, node: start, entry: None })
    }

    /// Advances one round if activated; returns whether this round was a move.
    fn step(&mut self, g: &PortGraph, round: u64) -> bool {
        if round <= self.activation {
            return false;
        }
        let Some(walk) = self.walk.as_mut() else {
            return false;
        };
        let obs = StreamObs { degree: g.degree(self.node), entry_port: self.entry };
        match walk.next_motion(obs) {
            Motion::Stay => {
                self.entry = None;
                false
            }
            Motion::Move(p) => {
                let (next, q) = g.neighbor(self.node, p).expect("walk stays port-safe");
                self.node = next;
                self.entry = Some(q);
                true
            }
        }
    }
}

/// Scans up to `horizon` global rounds for an asymmetric co-location of the
/// two parties. `None` means no such round exists within the horizon.
pub fn find_phi_meeting(
    g: &PortGraph,
    a: (PhiParty, NodeId, u64),
    b: (PhiParty, NodeId, u64),
    cache: &UxsCache,
    horizon: u64,
) -> Result<Option<MeetingReport>, WalkError> {
    let mut agents = [
        PartyState::new(a.0, a.1, a.2, cache)?,
        PartyState::new(b.0, b.1, b.2, cache)?,
    ];
    for round in 1..=horizon {
        let moved_a = agents[0].step(g, round);
        let moved_b = agents[1].step(g, round);
        let both_present = round > agents[0].activation && round > agents[1].activation;
        if both_present && agents[0].node == agents[1].node && (moved_a ^ moved_b) {
            return Ok(Some(MeetingReport {
                round,
                node: agents[0].node,
                active_agent: usize::from(moved_b),
            }));
        }
    }
    Ok(None)
}

/// Lengths in rounds of the walk's first phases for this label, one entry per
/// distinct size-guess level (the final level repeats forever).
pub fn phi_phase_lengths(label: u64, cache: &UxsCache) -> Result<Vec<u64>, WalkError> {
    let walk = PhiWalk::new(label, cache)?;
    Ok((0..walk.level_count()).map(|p| walk.phase_length(p)).collect())
}

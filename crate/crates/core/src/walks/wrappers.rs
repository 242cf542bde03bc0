//! Beeping wrappers around the motion procedures.
//!
//! Each wrapper replaces one round of the wrapped procedure by a fixed block
//! of real rounds, keeping the agent at the wrapped procedure's position for
//! the whole block:
//!
//! - [`BeepingWalk`]: 2 rounds per meeting-walk round — a move becomes
//!   (move, beep), (stay, listen); a stay becomes two (stay, listen) rounds.
//! - [`BeepingExploration`]: 3 rounds per exploration step — (move, beep),
//!   (stay, listen), (stay, listen); finite, `3R(n)` rounds total.
//! - [`ModifiedBeepingExploration`]: 2 rounds per exploration step —
//!   (move, beep), (stay, listen); finite, `2R(n)` rounds total.
//!
//! No wrapper ever beeps in two consecutive rounds.

use std::sync::Arc;

use super::phi::PhiWalk;
use super::{ActionStream, Motion, RoundPlan, Sound, StreamObs, WalkError};
use crate::graph::Port;
use crate::uxs::{exp_step, UxsCache, UxsRecord};

/// Infinite beeping walk for an agent with the given label.
pub struct BeepingWalk {
    phi: PhiWalk,
    queued: Option<RoundPlan>,
    phi_entry: Option<Port>,
}

impl BeepingWalk {
    pub fn new(label: u64, cache: &UxsCache) -> Result<Self, WalkError> {
        Ok(Self::from_phi(PhiWalk::new(label, cache)?))
    }

    pub fn from_phi(phi: PhiWalk) -> Self {
        BeepingWalk { phi, queued: None, phi_entry: None }
    }

    pub fn phi(&self) -> &PhiWalk {
        &self.phi
    }
}

impl ActionStream for BeepingWalk {
    fn next_plan(&mut self, obs: StreamObs) -> Option<RoundPlan> {
        if let Some(plan) = self.queued.take() {
            // Second round of the block; the observation carries the entry
            // port of the block's move (if any), which the wrapped walk will
            // need on its next advance.
            self.phi_entry = obs.entry_port;
            return Some(plan);
        }
        let motion = self.phi.next_motion(StreamObs {
            degree: obs.degree,
            entry_port: self.phi_entry.take(),
        });
        self.queued = Some(RoundPlan::STAY_LISTEN);
        Some(match motion {
            Motion::Move(p) => RoundPlan { motion: Motion::Move(p), sound: Sound::Beep },
            Motion::Stay => RoundPlan::STAY_LISTEN,
        })
    }
}

/// Shared core of the finite exploration wrappers: one exploration step per
/// block of `block_len` rounds, beeping on the move.
struct ExplorationBlocks {
    steps: Arc<[usize]>,
    block_len: usize,
    step_idx: usize,
    round_in_block: usize,
    entry: Option<Port>,
    started: bool,
}

impl ExplorationBlocks {
    fn new(steps: Arc<[usize]>, block_len: usize) -> Self {
        ExplorationBlocks { steps, block_len, step_idx: 0, round_in_block: 0, entry: None, started: false }
    }

    fn next_plan(&mut self, obs: StreamObs) -> Option<RoundPlan> {
        if self.started && self.round_in_block == 1 {
            // First round after the block's move: learn the entry port.
            self.entry = obs.entry_port;
        }
        if self.step_idx >= self.steps.len() {
            return None;
        }
        let plan = if self.round_in_block == 0 {
            self.started = true;
            if obs.degree == 0 {
                RoundPlan { motion: Motion::Stay, sound: Sound::Beep }
            } else {
                let port = exp_step(self.entry, obs.degree, self.steps[self.step_idx]);
                RoundPlan { motion: Motion::Move(port), sound: Sound::Beep }
            }
        } else {
            RoundPlan::STAY_LISTEN
        };
        self.round_in_block += 1;
        if self.round_in_block == self.block_len {
            self.round_in_block = 0;
            self.step_idx += 1;
        }
        Some(plan)
    }
}

/// Finite exploration with beeps: `3R(n)` rounds, one move every three.
pub struct BeepingExploration {
    blocks: ExplorationBlocks,
}

impl BeepingExploration {
    pub fn new(record: &UxsRecord) -> Result<Self, WalkError> {
        if !record.verified() {
            return Err(WalkError::Uxs(crate::uxs::UxsError::Uncertified { m: record.size_bound() }));
        }
        Ok(Self::from_steps(Arc::from(record.steps())))
    }

    pub fn from_steps(steps: Arc<[usize]>) -> Self {
        BeepingExploration { blocks: ExplorationBlocks::new(steps, 3) }
    }

    pub fn total_rounds(&self) -> u64 {
        3 * self.blocks.steps.len() as u64
    }
}

impl ActionStream for BeepingExploration {
    fn next_plan(&mut self, obs: StreamObs) -> Option<RoundPlan> {
        self.blocks.next_plan(obs)
    }
}

/// Finite exploration with beeps at double tempo: `2R(n)` rounds.
pub struct ModifiedBeepingExploration {
    blocks: ExplorationBlocks,
}

impl ModifiedBeepingExploration {
    pub fn from_steps(steps: Arc<[usize]>) -> Self {
        ModifiedBeepingExploration { blocks: ExplorationBlocks::new(steps, 2) }
    }

    pub fn total_rounds(&self) -> u64 {
        2 * self.blocks.steps.len() as u64
    }
}

impl ActionStream for ModifiedBeepingExploration {
    fn next_plan(&mut self, obs: StreamObs) -> Option<RoundPlan> {
        self.blocks.next_plan(obs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, NodeId, PortGraph};
    use crate::uxs::{certified_test_cache as cache, walk_trajectory};

    /// Runs a stream on a graph, returning (plans, position after each round).
    fn drive(
        stream: &mut dyn ActionStream,
        g: &PortGraph,
        start: NodeId,
        max_rounds: usize,
    ) -> (Vec<RoundPlan>, Vec<NodeId>) {
        let mut plans = Vec::new();
        let mut positions = Vec::new();
        let mut node = start;
        let mut entry = None;
        for _ in 0..max_rounds {
            let Some(plan) = stream.next_plan(StreamObs { degree: g.degree(node), entry_port: entry }) else {
                break;
            };
            match plan.motion {
                Motion::Stay => entry = None,
                Motion::Move(p) => {
                    let (next, q) = g.neighbor(node, p).unwrap();
                    node = next;
                    entry = Some(q);
                }
            }
            plans.push(plan);
            positions.push(node);
        }
        (plans, positions)
    }

    #[test]
    fn beeping_walk_sound_patterns() {
        let g = generate_family(Family::Ring, 3, 0).unwrap();
        let mut walk = BeepingWalk::new(5, &cache()).unwrap();
        let (plans, _) = drive(&mut walk, &g, 0, 400);
        for block in plans.chunks(2) {
            match block[0].motion {
                Motion::Move(_) => {
                    assert_eq!(block[0].sound, Sound::Beep);
                    assert_eq!(block[1], RoundPlan::STAY_LISTEN);
                }
                Motion::Stay => {
                    assert_eq!(block[0], RoundPlan::STAY_LISTEN);
                    assert_eq!(block[1], RoundPlan::STAY_LISTEN);
                }
            }
        }
        assert!(!plans
            .windows(2)
            .any(|w| w[0].sound == Sound::Beep && w[1].sound == Sound::Beep));
    }

    #[test]
    fn beeping_walk_tracks_phi_positions() {
        let g = generate_family(Family::Ring, 3, 2).unwrap();
        let c = cache();
        let mut plain = PhiWalk::new(3, &c).unwrap();
        let mut node = 2;
        let mut entry = None;
        let mut phi_positions = Vec::new();
        for _ in 0..200 {
            match plain.next_motion(StreamObs { degree: g.degree(node), entry_port: entry }) {
                Motion::Stay => entry = None,
                Motion::Move(p) => {
                    let (next, q) = g.neighbor(node, p).unwrap();
                    node = next;
                    entry = Some(q);
                }
            }
            phi_positions.push(node);
        }
        let mut wrapped = BeepingWalk::new(3, &c).unwrap();
        let (_, positions) = drive(&mut wrapped, &g, 2, 400);
        for (t, &pos) in positions.iter().enumerate() {
            assert_eq!(pos, phi_positions[t / 2], "round {t}");
        }
    }

    #[test]
    fn beeping_exploration_n2_is_exactly_one_block() {
        let c = cache();
        let mut stream = BeepingExploration::new(c.get(2).unwrap()).unwrap();
        let g = generate_family(Family::K2, 2, 0).unwrap();
        let (plans, positions) = drive(&mut stream, &g, 0, 100);
        assert_eq!(
            plans,
            vec![
                RoundPlan { motion: Motion::Move(0), sound: Sound::Beep },
                RoundPlan::STAY_LISTEN,
                RoundPlan::STAY_LISTEN,
            ]
        );
        assert_eq!(positions, vec![1, 1, 1]);
    }

    #[test]
    fn beeping_exploration_moves_and_beeps_match_the_walk() {
        let c = cache();
        let record = c.get(4).unwrap();
        let g = generate_family(Family::Ring, 4, 9).unwrap();
        let mut stream = BeepingExploration::new(record).unwrap();
        let (plans, positions) = drive(&mut stream, &g, 3, 10_000);
        assert_eq!(plans.len() as u64, 3 * record.len() as u64);
        let moves = plans.iter().filter(|p| p.motion.is_move()).count();
        assert_eq!(moves, record.len());
        for (i, plan) in plans.iter().enumerate() {
            let beeping = plan.sound == Sound::Beep;
            assert_eq!(beeping, i % 3 == 0, "round {i}");
        }
        // Position fidelity: every block sits at the walk's position.
        let trajectory = walk_trajectory(&g, 3, record.steps());
        for (i, &pos) in positions.iter().enumerate() {
            assert_eq!(pos, trajectory[i / 3 + 1], "round {i}");
        }
    }

    #[test]
    fn modified_exploration_is_two_rounds_per_step() {
        let c = cache();
        let record = c.get(2).unwrap();
        let g = generate_family(Family::K2, 2, 0).unwrap();
        let mut stream = ModifiedBeepingExploration::from_steps(Arc::from(record.steps()));
        let (plans, _) = drive(&mut stream, &g, 0, 100);
        assert_eq!(
            plans,
            vec![
                RoundPlan { motion: Motion::Move(0), sound: Sound::Beep },
                RoundPlan::STAY_LISTEN,
            ]
        );

        let record4 = c.get(4).unwrap();
        let g4 = generate_family(Family::Star, 4, 5).unwrap();
        let mut stream = ModifiedBeepingExploration::from_steps(Arc::from(record4.steps()));
        let (plans, positions) = drive(&mut stream, &g4, 1, 10_000);
        assert_eq!(plans.len(), 2 * record4.len());
        assert_eq!(plans.iter().filter(|p| p.motion.is_move()).count(), record4.len());
        assert!(!plans.windows(2).any(|w| w[0].sound == Sound::Beep && w[1].sound == Sound::Beep));
        let trajectory = walk_trajectory(&g4, 1, record4.steps());
        for (i, &pos) in positions.iter().enumerate() {
            assert_eq!(pos, trajectory[i / 2 + 1], "round {i}");
        }
    }
}

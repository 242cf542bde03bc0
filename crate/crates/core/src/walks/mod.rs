//! Per-round action streams.
//!
//! Every protocol boils down to an agent playing a deterministic stream of
//! round plans (stay/move x beep/listen), reacting only to what it has
//! observed so far. This module defines the plan vocabulary, the label
//! transformations that key the streams, the label-keyed meeting walk, and
//! the beeping wrappers that protocols consume.

mod contract;
mod phi;
mod wrappers;

pub use contract::{find_phi_meeting, phi_phase_lengths, MeetingReport, PhiParty};
pub use phi::PhiWalk;
pub use wrappers::{BeepingExploration, BeepingWalk, ModifiedBeepingExploration};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Port;
use crate::uxs::UxsError;

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("labels must be positive")]
    ZeroLabel,
    #[error(transparent)]
    Uxs(#[from] UxsError),
}

/// What an agent does with its position in one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Motion {
    Stay,
    Move(Port),
}

impl Motion {
    pub fn is_move(self) -> bool {
        matches!(self, Motion::Move(_))
    }
}

/// What an agent does with its voice in one round. Beeping and listening are
/// mutually exclusive; a beeping agent hears nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sound {
    Beep,
    Listen,
}

/// One round of an agent's plan. A round is *active* when the motion is a
/// move and *passive* otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundPlan {
    pub motion: Motion,
    pub sound: Sound,
}

impl RoundPlan {
    pub const STAY_LISTEN: RoundPlan = RoundPlan { motion: Motion::Stay, sound: Sound::Listen };

    pub fn is_active(self) -> bool {
        self.motion.is_move()
    }
}

/// The slice of an observation a stream needs: the degree of the node the
/// agent currently occupies, and the port by which it entered it in the
/// previous round (`None` if it did not move).
#[derive(Debug, Clone, Copy)]
pub struct StreamObs {
    pub degree: usize,
    pub entry_port: Option<Port>,
}

/// A deterministic, single-consumer generator of round plans. `next_plan` is
/// called exactly once per round, in order, with that round's observation;
/// `None` means the (finite) stream is exhausted.
pub trait ActionStream {
    fn next_plan(&mut self, obs: StreamObs) -> Option<RoundPlan>;
}

/// Binary representation of a label, most significant bit first.
pub fn label_bits(label: u64) -> Result<Vec<bool>, WalkError> {
    if label == 0 {
        return Err(WalkError::ZeroLabel);
    }
    let width = 64 - label.leading_zeros();
    Ok((0..width).rev().map(|i| label & (1 << i) != 0).collect())
}

/// First label transformation: brackets the doubled label bits with `01`
/// markers. For a k-bit label `c1..ck` the result is `0 1 c1 c1 .. ck ck 0 1`,
/// of length `2k + 4`.
pub fn t1_transform(label: u64) -> Result<Vec<bool>, WalkError> {
    let bits = label_bits(label)?;
    let mut out = Vec::with_capacity(2 * bits.len() + 4);
    out.extend([false, true]);
    for b in bits {
        out.extend([b, b]);
    }
    out.extend([false, true]);
    Ok(out)
}

/// Second label transformation: pads every bit of the first with a trailing
/// zero (`0 -> 00`, `1 -> 10`), giving length `2(2k + 4)`. No two consecutive
/// bits are ever 1, so an agent beeping along it never beeps twice in a row.
pub fn t2_transform(label: u64) -> Result<Vec<bool>, WalkError> {
    let t1 = t1_transform(label)?;
    let mut out = Vec::with_capacity(2 * t1.len());
    for b in t1 {
        out.extend([b, false]);
    }
    Ok(out)
}

/// A label together with its derived bit sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelBits {
    pub label: u64,
    pub binary: Vec<bool>,
    pub t1: Vec<bool>,
    pub t2: Vec<bool>,
}

impl LabelBits {
    pub fn new(label: u64) -> Result<Self, WalkError> {
        Ok(LabelBits {
            label,
            binary: label_bits(label)?,
            t1: t1_transform(label)?,
            t2: t2_transform(label)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn t1_examples() {
        assert_eq!(t1_transform(1).unwrap(), bits("011101"));
        assert_eq!(t1_transform(5).unwrap(), bits("0111001101"));
        assert_eq!(t1_transform(2).unwrap(), bits("01110001"));
        assert_eq!(t1_transform(5).unwrap().len(), 2 * 3 + 4);
    }

    #[test]
    fn t2_examples() {
        assert_eq!(t2_transform(1).unwrap(), bits("001010100010"));
        assert_eq!(t2_transform(2).unwrap(), bits("0010101000000010"));
        assert_eq!(t2_transform(2).unwrap().len(), 2 * (2 * 2 + 4));
    }

    #[test]
    fn zero_label_is_rejected() {
        assert!(matches!(t1_transform(0), Err(WalkError::ZeroLabel)));
        assert!(matches!(t2_transform(0), Err(WalkError::ZeroLabel)));
    }

    #[test]
    fn t2_never_has_consecutive_ones() {
        for label in 1..=64u64 {
            let t2 = t2_transform(label).unwrap();
            assert!(!t2.windows(2).any(|w| w[0] && w[1]), "label {label}");
        }
    }

    #[test]
    fn t2_is_injective_over_small_labels() {
        let mut seen = std::collections::BTreeSet::new();
        for label in 1..=64u64 {
            assert!(seen.insert(t2_transform(label).unwrap()), "label {label}");
        }
    }

    /// The meeting walk relies on label words never being cyclic rotations of
    /// one another: the infinite word repetitions of two distinct labels must
    /// disagree somewhere at every relative shift.
    #[test]
    fn t1_words_are_rotation_distinct() {
        let words: Vec<Vec<bool>> = (1..=64u64).map(|l| t1_transform(l).unwrap()).collect();
        for (i, a) in words.iter().enumerate() {
            for b in words.iter().skip(i + 1) {
                if a.len() != b.len() {
                    continue;
                }
                for shift in 0..a.len() {
                    let rotated: Vec<bool> =
                        (0..a.len()).map(|j| a[(j + shift) % a.len()]).collect();
                    assert_ne!(&rotated, b, "rotation collision at shift {shift}");
                }
            }
        }
    }
}

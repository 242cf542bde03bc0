//! The synchronous round engine.
//!
//! Global rounds are numbered 1, 2, 3, ...; an agent with activation round
//! `a` takes its first action in round `a + 1` and counts that as its local
//! round 1. Within a round: both activated agents choose actions
//! simultaneously (neither sees the other's current-round action), motions
//! resolve, beep audibility resolves on the post-move positions, then
//! declarations are checked. An agent reacts in round `t + 1` to what it
//! heard in round `t` — its observation always describes the previous round.
//!
//! Audibility: a listening agent hears the other agent's beep of the same
//! round; in the local model only when co-located, in the global model as a
//! loud beep when co-located and a soft one otherwise. A beeping agent hears
//! nothing, so if both beep neither notices.

mod engine;
pub mod testing;
mod trace;

pub use engine::{run, RunOptions, RunReport};
pub use trace::{classify, write_jsonl, Trace, TraceEnd, TraceRow};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, NodeId, Port, PortGraph};
use crate::walks::{Motion, RoundPlan, Sound, StreamObs};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("scenario: {0}")]
    InvalidScenario(String),
    #[error("agent {agent} played an illegal move in round {round}: {source}")]
    IllegalMove {
        agent: usize,
        round: u64,
        source: GraphError,
    },
}

/// Which beeps carry across the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BeepModel {
    /// A beep is audible only at the beeper's node.
    Local,
    /// A beep is audible everywhere: loud at the beeper's node, soft elsewhere.
    Global,
}

impl fmt::Display for BeepModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BeepModel::Local => "local",
            BeepModel::Global => "global",
        })
    }
}

impl std::str::FromStr for BeepModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "local" => Ok(BeepModel::Local),
            "global" => Ok(BeepModel::Global),
            other => Err(format!("unknown beep model `{other}` (expected local or global)")),
        }
    }
}

/// Move allowance of an agent. Beeps are free; only moves are charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyBudget {
    Unlimited,
    Moves(u64),
}

impl fmt::Display for EnergyBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyBudget::Unlimited => f.write_str("unlimited"),
            EnergyBudget::Moves(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AgentSpec {
    /// Positive, and distinct between the two agents.
    pub label: u64,
    pub start: NodeId,
    /// Global round after which the agent is present; first action in
    /// `activation_round + 1`.
    pub activation_round: u64,
    pub budget: EnergyBudget,
}

/// One adversary choice: a graph, a beep model, two agent placements, and a
/// round limit that separates timeouts from slow successes.
#[derive(Clone)]
pub struct Scenario {
    pub graph: Arc<PortGraph>,
    pub model: BeepModel,
    pub agents: [AgentSpec; 2],
    pub round_limit: u64,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), SimError> {
        let err = |m: String| Err(SimError::InvalidScenario(m));
        if !self.graph.is_valid() {
            return err("graph fails validation".to_string());
        }
        if self.round_limit == 0 {
            return err("round limit must be positive".to_string());
        }
        for (i, a) in self.agents.iter().enumerate() {
            if a.label == 0 {
                return err(format!("agent {i} label must be positive"));
            }
            if a.start >= self.graph.node_count() {
                return err(format!("agent {i} start {} out of range", a.start));
            }
            if a.budget == EnergyBudget::Moves(0) {
                return err(format!("agent {i} budget must be positive or unlimited"));
            }
        }
        if self.agents[0].label == self.agents[1].label {
            return err("agent labels must differ".to_string());
        }
        Ok(())
    }

    /// Activation round of the later agent; execution time is counted from here.
    pub fn later_activation(&self) -> u64 {
        self.agents[0].activation_round.max(self.agents[1].activation_round)
    }
}

/// What a listener picked up in a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeardBeep {
    /// Local model: the other agent beeped at this node.
    Heard,
    /// Global model: the other agent beeped elsewhere.
    Soft,
    /// Global model: the other agent beeped at this node.
    Loud,
}

/// Everything an agent knows about the previous round when choosing its next
/// action. `entry_port` is `None` unless the agent moved; `heard` is `None`
/// unless it listened and the other agent's beep reached it.
#[derive(Debug, Clone, Copy)]
pub struct Observation {
    pub just_activated: bool,
    /// Degree of the node the agent currently occupies.
    pub degree: usize,
    pub entry_port: Option<Port>,
    pub heard: Option<HeardBeep>,
}

impl Observation {
    /// A beep emitted at the agent's own node (local-model hearing; protocols
    /// written for the local model ignore soft beeps when run globally).
    pub fn heard_here(&self) -> bool {
        matches!(self.heard, Some(HeardBeep::Heard | HeardBeep::Loud))
    }

    pub fn heard_loud(&self) -> bool {
        matches!(self.heard, Some(HeardBeep::Loud))
    }

    pub fn stream_obs(&self) -> StreamObs {
        StreamObs { degree: self.degree, entry_port: self.entry_port }
    }
}

/// An agent's choice for one round. `declare` is terminal: the run resolves
/// in the round it is raised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgentAction {
    pub motion: Motion,
    pub sound: Sound,
    pub declare: bool,
}

impl AgentAction {
    pub const STAY_LISTEN: AgentAction =
        AgentAction { motion: Motion::Stay, sound: Sound::Listen, declare: false };

    pub const STAY_BEEP: AgentAction =
        AgentAction { motion: Motion::Stay, sound: Sound::Beep, declare: false };

    /// Stay, listen, and declare rendezvous.
    pub const DECLARE: AgentAction =
        AgentAction { motion: Motion::Stay, sound: Sound::Listen, declare: true };

    pub fn from_plan(plan: RoundPlan) -> Self {
        AgentAction { motion: plan.motion, sound: plan.sound, declare: false }
    }
}

/// A reactive agent program: a pure state machine fed one observation per
/// round. Programs never see the graph, node identities, or the global clock.
pub trait AgentProgram {
    fn step(&mut self, obs: &Observation) -> AgentAction;
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Both agents declared in the same round at the same node.
    Success { round: u64, node: NodeId },
    /// Some declaration happened that does not constitute rendezvous.
    FalseDeclaration { round: u64, declared: [bool; 2], co_located: bool },
    Timeout { limit: u64 },
    /// An agent attempted a move with an empty budget.
    EnergyExhausted { agent: usize, round: u64 },
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Success { round, node } => write!(f, "success(round={round}, node={node})"),
            Outcome::FalseDeclaration { round, declared, co_located } => write!(
                f,
                "false-declaration(round={round}, declared={declared:?}, co_located={co_located})"
            ),
            Outcome::Timeout { limit } => write!(f, "timeout(limit={limit})"),
            Outcome::EnergyExhausted { agent, round } => {
                write!(f, "energy-exhausted(agent={agent}, round={round})")
            }
        }
    }
}

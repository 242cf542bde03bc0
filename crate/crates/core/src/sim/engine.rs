//! Lockstep execution of one scenario.

use super::trace::{Trace, TraceEnd, TraceRow};
use super::{
    AgentAction, AgentProgram, BeepModel, EnergyBudget, HeardBeep, Observation, Outcome, Scenario,
    SimError,
};
use crate::graph::{NodeId, Port};
use crate::walks::{Motion, Sound};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Record per-round rows. Sweeps leave this off; single runs and the
    /// determinism checks turn it on.
    pub record_trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { record_trace: true }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AgentStats {
    pub moves_used: u64,
    pub final_position: NodeId,
    pub declared_round: Option<u64>,
}

#[derive(Debug)]
pub struct RunReport {
    pub outcome: Outcome,
    pub trace: Trace,
    pub agents: [AgentStats; 2],
}

impl RunReport {
    /// Rounds from the later agent's activation to the joint declaration.
    pub fn time_since_later_activation(&self, scenario: &Scenario) -> Option<u64> {
        match self.outcome {
            Outcome::Success { round, .. } => Some(round - scenario.later_activation()),
            _ => None,
        }
    }
}

struct AgentState {
    program: Box<dyn AgentProgram>,
    position: NodeId,
    budget: EnergyBudget,
    moves_used: u64,
    /// Observation the agent will receive at its next step.
    next_obs: Observation,
}

/// Runs the scenario to completion. The factory maps an agent label to its
/// program; both agents run the program their label selects. Identical
/// scenarios and programs produce identical reports, bit for bit.
pub fn run(
    scenario: &Scenario,
    factory: &dyn Fn(u64) -> Box<dyn AgentProgram>,
    opts: &RunOptions,
) -> Result<RunReport, SimError> {
    scenario.validate()?;
    let g = &scenario.graph;
    let mut agents: [AgentState; 2] = [0, 1].map(|i| {
        let spec = &scenario.agents[i];
        AgentState {
            program: factory(spec.label),
            position: spec.start,
            budget: spec.budget,
            moves_used: 0,
            next_obs: Observation {
                just_activated: true,
                degree: g.degree(spec.start),
                entry_port: None,
                heard: None,
            },
        }
    });
    let activation = [scenario.agents[0].activation_round, scenario.agents[1].activation_round];
    let mut rows: Vec<TraceRow> = Vec::new();

    let finish = |outcome: Outcome, rows: Vec<TraceRow>, end: TraceEnd, agents: &[AgentState; 2]| {
        Ok(RunReport {
            agents: [0, 1].map(|i| AgentStats {
                moves_used: agents[i].moves_used,
                final_position: agents[i].position,
                declared_round: match outcome {
                    Outcome::Success { round, .. } => Some(round),
                    Outcome::FalseDeclaration { round, declared, .. } if declared[i] => Some(round),
                    _ => None,
                },
            }),
            outcome,
            trace: Trace { rows, end, recorded: opts.record_trace },
        })
    };

    for round in 1..=scenario.round_limit {
        let present = [round > activation[0], round > activation[1]];

        // 1. Simultaneous action choice.
        let mut actions: [AgentAction; 2] = [AgentAction::STAY_LISTEN; 2];
        for i in 0..2 {
            if present[i] {
                let obs = agents[i].next_obs;
                actions[i] = agents[i].program.step(&obs);
            }
        }

        // 2. Energy, then motion resolution.
        let mut entered: [Option<Port>; 2] = [None, None];
        for i in 0..2 {
            if !present[i] {
                continue;
            }
            if let Motion::Move(p) = actions[i].motion {
                match agents[i].budget {
                    EnergyBudget::Moves(0) => {
                        return finish(
                            Outcome::EnergyExhausted { agent: i, round },
                            rows,
                            TraceEnd::EnergyExhausted { agent: i, round },
                            &agents,
                        );
                    }
                    EnergyBudget::Moves(ref mut left) => *left -= 1,
                    EnergyBudget::Unlimited => {}
                }
                let (next, q) = g
                    .neighbor(agents[i].position, p)
                    .map_err(|source| SimError::IllegalMove { agent: i, round, source })?;
                agents[i].position = next;
                entered[i] = Some(q);
                agents[i].moves_used += 1;
            }
        }

        // 3. Audibility on post-move positions.
        let mut heard: [Option<HeardBeep>; 2] = [None, None];
        for i in 0..2 {
            let o = 1 - i;
            if !present[i] || !present[o] {
                continue;
            }
            if actions[i].sound != Sound::Listen || actions[o].sound != Sound::Beep {
                continue;
            }
            let co_located = agents[i].position == agents[o].position;
            heard[i] = match (scenario.model, co_located) {
                (BeepModel::Local, true) => Some(HeardBeep::Heard),
                (BeepModel::Local, false) => None,
                (BeepModel::Global, true) => Some(HeardBeep::Loud),
                (BeepModel::Global, false) => Some(HeardBeep::Soft),
            };
        }

        if opts.record_trace {
            for i in 0..2 {
                if present[i] {
                    rows.push(TraceRow {
                        round,
                        agent: i,
                        position: agents[i].position,
                        motion: actions[i].motion,
                        sound: actions[i].sound,
                        heard: heard[i],
                        declared: actions[i].declare,
                        moves_used: agents[i].moves_used,
                    });
                }
            }
        }

        // 4. Declaration resolution: terminal either way.
        let declared = [
            present[0] && actions[0].declare,
            present[1] && actions[1].declare,
        ];
        if declared[0] || declared[1] {
            let co_located = agents[0].position == agents[1].position;
            let outcome = if declared[0] && declared[1] && co_located && present[0] && present[1] {
                Outcome::Success { round, node: agents[0].position }
            } else {
                Outcome::FalseDeclaration { round, declared, co_located }
            };
            return finish(outcome, rows, TraceEnd::Declared { round }, &agents);
        }

        // 5. Observations for the next round.
        for i in 0..2 {
            if present[i] {
                agents[i].next_obs = Observation {
                    just_activated: false,
                    degree: g.degree(agents[i].position),
                    entry_port: entered[i],
                    heard: heard[i],
                };
            }
        }
    }

    let limit = scenario.round_limit;
    finish(Outcome::Timeout { limit }, rows, TraceEnd::RoundLimit { limit }, &agents)
}

//! Persuader/mitigator negotiation.
//!
//! A session exchanges utility tables, lets the persuader propose the action
//! its decision procedure picks, and has the mitigator approve or dispute it.
//! Disputes trigger belief synchronization: the persuader discloses its
//! acceptability rules, both sides take turns attacking rules and attacks
//! from a scenario-declared repertoire, and the resulting framework is
//! resolved under the configured semantics. Defeated rules are retracted,
//! surviving ones are adopted by the mitigator, and the persuader proposes
//! again.
//!
//! Everything runs on a single-threaded in-process bus, so a session is a
//! pure function of its scenario and configuration.

mod bus;
mod framework;
mod message;
mod session;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::af::{ArgumentId, ArgumentationFramework, Extension, Semantics};
use crate::agent::{AcceptabilityRule, ActionId, AgentError, UtilityTable, Variant};
use crate::scenario::ScenarioError;
use crate::Execution;

pub use bus::{Ack, Phase, SessionBus, SessionState};
pub use framework::build_framework;
pub use message::{Message, MessageBody, MessageKind};
pub use session::{run_session, Session, SyncOutcome};
pub use trace::{OutcomeStatus, Trace, TraceEvent, TraceHeader, TRACE_FORMAT};

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("session is closed; cannot deliver {0}")]
    Closed(MessageKind),
    #[error("protocol violation: {kind} from {from} to {to} is not allowed in phase {phase}")]
    Violation {
        kind: MessageKind,
        from: Role,
        to: Role,
        phase: Phase,
    },
    #[error("attack `{label}` targets `{target}`, which is not in the argument pool")]
    DanglingTarget { label: ArgumentId, target: String },
    #[error("operation requires phase {expected}, session is in {actual}")]
    WrongPhase { expected: Phase, actual: Phase },
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Persuader,
    Mitigator,
}

impl Role {
    pub fn counterpart(self) -> Role {
        match self {
            Role::Persuader => Role::Mitigator,
            Role::Mitigator => Role::Persuader,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Persuader => "persuader",
            Role::Mitigator => "mitigator",
        })
    }
}

/// What an attack is aimed at.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackTarget {
    /// Every disclosed acceptability rule for this action.
    RuleOf(ActionId),
    /// A rule or attack by argument label.
    Argument(ArgumentId),
}

impl fmt::Display for AttackTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackTarget::RuleOf(a) => write!(f, "rules of {a}"),
            AttackTarget::Argument(id) => write!(f, "{id}"),
        }
    }
}

/// An attack launched under argument label `label`. Reusing an existing
/// label adds a further attack from that argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AttackClaim {
    pub label: ArgumentId,
    pub target: AttackTarget,
}

impl AttackClaim {
    pub fn on_rules_of(label: impl Into<ArgumentId>, action: impl Into<ActionId>) -> Self {
        AttackClaim {
            label: label.into(),
            target: AttackTarget::RuleOf(action.into()),
        }
    }

    pub fn on_argument(label: impl Into<ArgumentId>, target: impl Into<ArgumentId>) -> Self {
        AttackClaim {
            label: label.into(),
            target: AttackTarget::Argument(target.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeliefBase {
    pub utilities: UtilityTable,
    pub counterpart_utilities: Option<UtilityTable>,
    pub rules: Vec<AcceptabilityRule>,
    pub attacks: Vec<AttackClaim>,
}

/// Semantics used to resolve the session framework.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionSemantics {
    #[default]
    MaximalIdeal,
    Grounded,
    /// Arguments contained in every preferred extension.
    PreferredIntersection,
}

impl ResolutionSemantics {
    pub fn resolve(self, af: &ArgumentationFramework) -> Extension {
        match self {
            ResolutionSemantics::MaximalIdeal => af.maximal_ideal_extension(),
            ResolutionSemantics::Grounded => af.grounded_extension(),
            ResolutionSemantics::PreferredIntersection => {
                let preferred = af.solve_with(Semantics::Preferred, Execution::default());
                let mut iter = preferred.into_iter();
                let first = iter.next().unwrap_or_default().into_members();
                Extension::new(iter.fold(first, |acc, p| acc.intersection(p.members()).cloned().collect()))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ResolutionSemantics::MaximalIdeal => "maximal_ideal",
            ResolutionSemantics::Grounded => "grounded",
            ResolutionSemantics::PreferredIntersection => "preferred_intersection",
        }
    }
}

impl fmt::Display for ResolutionSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResolutionSemantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maximal_ideal" => Ok(ResolutionSemantics::MaximalIdeal),
            "grounded" => Ok(ResolutionSemantics::Grounded),
            "preferred_intersection" => Ok(ResolutionSemantics::PreferredIntersection),
            other => Err(format!(
                "unknown resolution semantics `{other}` (expected maximal_ideal, grounded or preferred_intersection)"
            )),
        }
    }
}

fn default_max_rounds() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub semantics: ResolutionSemantics,
    #[serde(default = "default_max_rounds")]
    pub max_rounds: u32,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            variant: Variant::Lazy,
            semantics: ResolutionSemantics::MaximalIdeal,
            max_rounds: default_max_rounds(),
        }
    }
}

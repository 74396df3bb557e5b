//! Declarative negotiation scenarios.
//!
//! A scenario file is JSON with an explicit `schema` version. It declares
//! exactly two agents: the persuader, who owns the action list, and the
//! mitigator, who does not act but rates every persuader action. Both may
//! hold acceptability rules and an attack repertoire.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::af::ArgumentId;
use crate::agent::{AcceptabilityRule, ActionId, AgentError, JointActionProfile, Preference, Utility, UtilityTable};
use crate::protocol::{AttackClaim, AttackTarget, Role, SessionConfig};

pub const SCENARIO_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for ScenarioError {
    fn from(e: serde_json::Error) -> Self {
        ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityDecl {
    pub action: ActionId,
    pub value: Utility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentDecl {
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub actions: Vec<ActionId>,
    pub utilities: Vec<UtilityDecl>,
    #[serde(default)]
    pub rules: Vec<AcceptabilityRule>,
    #[serde(default)]
    pub attacks: Vec<AttackClaim>,
}

impl AgentDecl {
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.role.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub agents: Vec<AgentDecl>,
    #[serde(default)]
    pub config: SessionConfig,
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_owned(),
        source,
    })?;
    Scenario::from_json(&text)
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid(msg.into())
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Scenario = serde_json::from_str(text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Hex SHA-256 of the compact JSON form.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("scenario serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn agent(&self, role: Role) -> &AgentDecl {
        self.agents
            .iter()
            .find(|a| a.role == role)
            .expect("validated scenarios declare both roles")
    }

    /// The persuader's action list; every utility table ranges over it.
    pub fn actions(&self) -> &[ActionId] {
        &self.agent(Role::Persuader).actions
    }

    pub fn utility_table(&self, role: Role) -> Result<UtilityTable, AgentError> {
        let agent = self.agent(role);
        UtilityTable::new(
            agent.display_name(),
            self.actions().iter().map(|action| {
                let value = agent
                    .utilities
                    .iter()
                    .find(|u| &u.action == action)
                    .map(|u| u.value)
                    .expect("validated scenarios cover every action");
                (JointActionProfile::single_actor(action.clone()), value)
            }),
        )
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.schema != SCENARIO_SCHEMA {
            return Err(invalid(format!(
                "unsupported schema {} (expected {SCENARIO_SCHEMA})",
                self.schema
            )));
        }
        if self.name.trim().is_empty() {
            return Err(invalid("scenario name must be non-empty"));
        }
        if self.agents.len() != 2 {
            return Err(invalid(format!(
                "expected exactly two agents, found {}",
                self.agents.len()
            )));
        }
        for role in [Role::Persuader, Role::Mitigator] {
            let count = self.agents.iter().filter(|a| a.role == role).count();
            if count != 1 {
                return Err(invalid(format!("expected exactly one {role}, found {count}")));
            }
        }

        let persuader = self.agent(Role::Persuader);
        if persuader.actions.is_empty() {
            return Err(invalid("persuader must declare at least one action"));
        }
        let mut declared = BTreeSet::new();
        for action in &persuader.actions {
            if action.as_str().is_empty() || action.as_str() == "*" {
                return Err(invalid(format!("invalid action name `{action}`")));
            }
            if !declared.insert(action) {
                return Err(invalid(format!("action `{action}` declared twice")));
            }
        }
        if !self.agent(Role::Mitigator).actions.is_empty() {
            return Err(invalid("the mitigator does not act; its action list must be empty"));
        }

        let mut argument_ids: BTreeSet<ArgumentId> = BTreeSet::new();
        for agent in &self.agents {
            let role = agent.role;
            let mut covered = BTreeSet::new();
            for u in &agent.utilities {
                if !declared.contains(&u.action) {
                    return Err(invalid(format!(
                        "{role} utility references undeclared action `{}`",
                        u.action
                    )));
                }
                if !covered.insert(&u.action) {
                    return Err(invalid(format!("{role} rates action `{}` twice", u.action)));
                }
            }
            if let Some(missing) = declared.iter().find(|a| !covered.contains(*a)) {
                return Err(invalid(format!("{role} utilities do not cover action `{missing}`")));
            }
            for rule in &agent.rules {
                if !declared.contains(&rule.action) {
                    return Err(invalid(format!(
                        "{role} rule references undeclared action `{}`",
                        rule.action
                    )));
                }
                if let Some(id) = &rule.id {
                    if id.as_str().is_empty() {
                        return Err(invalid(format!("{role} rule has an empty id")));
                    }
                }
                if let Preference::Action(p) = &rule.counterpart_preference {
                    if p.as_str().is_empty() {
                        return Err(invalid(format!("{role} rule has an empty preference")));
                    }
                }
                argument_ids.insert(rule.argument_id());
            }
            for claim in &agent.attacks {
                if claim.label.as_str().is_empty() {
                    return Err(invalid(format!("{role} attack has an empty label")));
                }
                argument_ids.insert(claim.label.clone());
            }
        }

        for agent in &self.agents {
            for claim in &agent.attacks {
                match &claim.target {
                    AttackTarget::RuleOf(action) if !declared.contains(action) => {
                        return Err(invalid(format!(
                            "{} attack `{}` targets rules of undeclared action `{action}`",
                            agent.role, claim.label
                        )));
                    }
                    AttackTarget::Argument(id) if !argument_ids.contains(id) => {
                        return Err(invalid(format!(
                            "{} attack `{}` targets unknown argument `{id}`",
                            agent.role, claim.label
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

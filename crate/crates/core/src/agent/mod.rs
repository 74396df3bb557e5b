//! Utility-driven decision kernel of an empathic agent.
//!
//! Each agent holds a utility table over joint action profiles and a set of
//! acceptability rules. The decision procedures pick the profile to execute:
//! the agent's own best profile when nobody objects (or when an objection is
//! covered by an acceptability rule), otherwise the profile maximizing
//! shared utility.

mod decision;
mod utility;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::af::ArgumentId;

pub use decision::{
    argmax_profiles, decide, decide_full, decide_lazy, detect_conflict, is_profile_acceptable, shared_utility,
    DecisionOutcome, Rationale, Variant,
};
pub use utility::Utility;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentError {
    #[error("utility table `{0}` has no entries")]
    EmptyTable(String),
    #[error("argmax family {0} is empty")]
    EmptyFamily(usize),
    #[error("no utility tables given")]
    NoTables,
    #[error("utility table `{table}` lists profile {profile} twice")]
    DuplicateProfile { table: String, profile: String },
    #[error("utility tables `{left}` and `{right}` cover different profiles")]
    MismatchedProfiles { left: String, right: String },
}

/// Name of an action an agent can execute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionId(String);

impl ActionId {
    pub fn new(name: impl Into<String>) -> Self {
        ActionId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ActionId {
    fn from(s: &str) -> Self {
        ActionId(s.to_owned())
    }
}

impl From<String> for ActionId {
    fn from(s: String) -> Self {
        ActionId(s)
    }
}

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One selected action set per agent, in agent order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JointActionProfile(Vec<BTreeSet<ActionId>>);

impl JointActionProfile {
    pub fn new(selections: Vec<BTreeSet<ActionId>>) -> Self {
        JointActionProfile(selections)
    }

    /// Profile of a two-agent interaction where only the first agent acts
    /// and the second contributes the empty action set.
    pub fn single_actor(action: impl Into<ActionId>) -> Self {
        JointActionProfile(vec![BTreeSet::from([action.into()]), BTreeSet::new()])
    }

    pub fn selections(&self) -> &[BTreeSet<ActionId>] {
        &self.0
    }

    /// Union of every agent's selection.
    pub fn actions(&self) -> BTreeSet<&ActionId> {
        self.0.iter().flatten().collect()
    }

    /// The first action of the first non-empty selection.
    pub fn primary_action(&self) -> Option<&ActionId> {
        self.0.iter().flatten().next()
    }
}

impl fmt::Display for JointActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, sel) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let names: Vec<&str> = sel.iter().map(ActionId::as_str).collect();
            write!(f, "{{{}}}", names.join(", "))?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityEntry {
    pub profile: JointActionProfile,
    pub utility: Utility,
}

/// An agent's utility function, kept in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityTable {
    pub owner: String,
    entries: Vec<UtilityEntry>,
}

impl UtilityTable {
    pub fn new(
        owner: impl Into<String>,
        entries: impl IntoIterator<Item = (JointActionProfile, Utility)>,
    ) -> Result<Self, AgentError> {
        let owner = owner.into();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (profile, utility) in entries {
            if !seen.insert(profile.clone()) {
                return Err(AgentError::DuplicateProfile {
                    table: owner,
                    profile: profile.to_string(),
                });
            }
            out.push(UtilityEntry { profile, utility });
        }
        Ok(UtilityTable { owner, entries: out })
    }

    /// Table over single-actor profiles, see [`JointActionProfile::single_actor`].
    pub fn single_actor<'a>(
        owner: impl Into<String>,
        entries: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self, AgentError> {
        Self::new(
            owner,
            entries
                .into_iter()
                .map(|(a, u)| (JointActionProfile::single_actor(a), Utility::from(u))),
        )
    }

    pub fn entries(&self) -> &[UtilityEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, profile: &JointActionProfile) -> Option<Utility> {
        self.entries.iter().find(|e| &e.profile == profile).map(|e| e.utility)
    }

    pub fn profiles(&self) -> impl Iterator<Item = &JointActionProfile> {
        self.entries.iter().map(|e| &e.profile)
    }

    /// Same table with `delta` added to every entry.
    pub fn shifted(&self, delta: f64) -> Self {
        UtilityTable {
            owner: self.owner.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| UtilityEntry {
                    profile: e.profile.clone(),
                    utility: e.utility + Utility::from(delta),
                })
                .collect(),
        }
    }
}

/// The counterpart preference an acceptability rule is conditioned on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preference {
    /// Matches any counterpart preference; written `*`.
    Any,
    Action(ActionId),
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preference::Any => f.write_str("*"),
            Preference::Action(a) => f.write_str(a.as_str()),
        }
    }
}

impl Serialize for Preference {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Preference {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            "*" => Preference::Any,
            _ => Preference::Action(ActionId(s)),
        })
    }
}

/// "Executing `action` is acceptable when the counterpart prefers
/// `counterpart_preference`."
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AcceptabilityRule {
    /// Argument label used when the rule is disputed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<ArgumentId>,
    pub action: ActionId,
    #[serde(rename = "preference")]
    pub counterpart_preference: Preference,
}

impl AcceptabilityRule {
    pub fn new(action: impl Into<ActionId>, preference: impl Into<ActionId>) -> Self {
        AcceptabilityRule {
            id: None,
            action: action.into(),
            counterpart_preference: Preference::Action(preference.into()),
        }
    }

    pub fn wildcard(action: impl Into<ActionId>) -> Self {
        AcceptabilityRule {
            id: None,
            action: action.into(),
            counterpart_preference: Preference::Any,
        }
    }

    pub fn with_id(mut self, id: impl Into<ArgumentId>) -> Self {
        self.id = Some(id.into());
        self
    }

    /// The explicit id, or `acceptable(<action>, <preference>)`.
    pub fn argument_id(&self) -> ArgumentId {
        match &self.id {
            Some(id) => id.clone(),
            None => ArgumentId::from(format!("acceptable({}, {})", self.action, self.counterpart_preference)),
        }
    }

    pub fn matches(&self, action: &ActionId, counterpart_preference: &ActionId) -> bool {
        &self.action == action
            && match &self.counterpart_preference {
                Preference::Any => true,
                Preference::Action(p) => p == counterpart_preference,
            }
    }
}

impl From<&str> for Preference {
    fn from(s: &str) -> Self {
        if s == "*" {
            Preference::Any
        } else {
            Preference::Action(ActionId::from(s))
        }
    }
}

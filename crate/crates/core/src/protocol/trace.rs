//! Line-delimited JSON trace records.
//!
//! The first line is the header, every following line one event. Field
//! order is fixed by the type definitions and nothing time-dependent is
//! recorded, so equal sessions serialize to identical bytes.

use serde::{Deserialize, Serialize};

use super::{Message, MessageKind, Phase, Role, SessionConfig};
use crate::af::{ArgumentId, Attack, Extension};
use crate::agent::{ActionId, DecisionOutcome, UtilityTable, Variant};

pub const TRACE_FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub trace_format: u32,
    pub engine: String,
    pub scenario: String,
    pub scenario_hash: String,
    pub config: SessionConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeStatus {
    Agreed,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum TraceEvent {
    Message(Message),
    Violation {
        kind: MessageKind,
        from: Role,
        to: Role,
        phase: Phase,
    },
    SharedUtility {
        operator: String,
        table: UtilityTable,
    },
    Decision {
        agent: Role,
        variant: Variant,
        outcome: DecisionOutcome,
    },
    Framework {
        round: u32,
        arguments: Vec<ArgumentId>,
        attacks: Vec<Attack>,
    },
    Resolution {
        round: u32,
        semantics: super::ResolutionSemantics,
        extension: Extension,
        retracted: Vec<ArgumentId>,
        adopted: Vec<ArgumentId>,
    },
    Outcome {
        status: OutcomeStatus,
        action: Option<ActionId>,
        rounds: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    record: String,
    #[serde(flatten)]
    header: TraceHeader,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub header: TraceHeader,
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&HeaderLine {
            record: "header".to_owned(),
            header: self.header.clone(),
        })
        .expect("header serializes");
        out.push('\n');
        for event in &self.events {
            out.push_str(&serde_json::to_string(event).expect("event serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().unwrap_or("");
        let header: HeaderLine = serde_json::from_str(first)?;
        let events = lines.map(serde_json::from_str).collect::<Result<_, _>>()?;
        Ok(Trace {
            header: header.header,
            events,
        })
    }

    pub fn messages(&self) -> impl Iterator<Item = &Message> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Message(m) => Some(m),
            _ => None,
        })
    }

    /// The final outcome record, if the session finished.
    pub fn outcome(&self) -> Option<(OutcomeStatus, Option<&ActionId>, u32)> {
        self.events.iter().rev().find_map(|e| match e {
            TraceEvent::Outcome {
                status, action, rounds, ..
            } => Some((*status, action.as_ref(), *rounds)),
            _ => None,
        })
    }

    pub fn resolutions(&self) -> impl Iterator<Item = (&Extension, &[ArgumentId])> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Resolution {
                extension, retracted, ..
            } => Some((extension, retracted.as_slice())),
            _ => None,
        })
    }

    pub fn decisions(&self, agent: Role) -> impl Iterator<Item = &DecisionOutcome> {
        self.events.iter().filter_map(move |e| match e {
            TraceEvent::Decision { agent: a, outcome, .. } if *a == agent => Some(outcome),
            _ => None,
        })
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AttackClaim, ResolutionSemantics, Role};
use crate::af::Extension;
use crate::agent::{AcceptabilityRule, ActionId, UtilityTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageKind {
    AnnounceUtilities,
    RespondUtilities,
    ProposeAction,
    Approve,
    Disapprove,
    RequestRules,
    SendRules,
    SendAttacks,
    AcceptAf,
    CancelSession,
    ExecuteAction,
}

impl fmt::Display for MessageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// Message payloads, tagged by kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum MessageBody {
    AnnounceUtilities {
        utilities: UtilityTable,
    },
    RespondUtilities {
        utilities: UtilityTable,
    },
    ProposeAction {
        action: ActionId,
    },
    Approve {
        action: ActionId,
    },
    Disapprove {
        proposed: ActionId,
        expected: ActionId,
    },
    RequestRules {},
    SendRules {
        rules: Vec<AcceptabilityRule>,
    },
    SendAttacks {
        attacks: Vec<AttackClaim>,
    },
    AcceptAf {
        semantics: ResolutionSemantics,
        extension: Extension,
    },
    CancelSession {
        reason: String,
    },
    ExecuteAction {
        action: ActionId,
    },
}

impl MessageBody {
    pub fn kind(&self) -> MessageKind {
        match self {
            MessageBody::AnnounceUtilities { .. } => MessageKind::AnnounceUtilities,
            MessageBody::RespondUtilities { .. } => MessageKind::RespondUtilities,
            MessageBody::ProposeAction { .. } => MessageKind::ProposeAction,
            MessageBody::Approve { .. } => MessageKind::Approve,
            MessageBody::Disapprove { .. } => MessageKind::Disapprove,
            MessageBody::RequestRules {} => MessageKind::RequestRules,
            MessageBody::SendRules { .. } => MessageKind::SendRules,
            MessageBody::SendAttacks { .. } => MessageKind::SendAttacks,
            MessageBody::AcceptAf { .. } => MessageKind::AcceptAf,
            MessageBody::CancelSession { .. } => MessageKind::CancelSession,
            MessageBody::ExecuteAction { .. } => MessageKind::ExecuteAction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub seq: u64,
    pub from: Role,
    pub to: Role,
    #[serde(flatten)]
    pub body: MessageBody,
}

impl Message {
    pub fn kind(&self) -> MessageKind {
        self.body.kind()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_shape() {
        let msg = Message {
            seq: 3,
            from: Role::Persuader,
            to: Role::Mitigator,
            body: MessageBody::ProposeAction {
                action: "Show vodka ad".into(),
            },
        };
        let json = serde_json::to_string(&msg).unwrap();
        assert_eq!(
            json,
            r#"{"seq":3,"from":"persuader","to":"mitigator","kind":"propose_action","payload":{"action":"Show vodka ad"}}"#
        );
        let back: Message = serde_json::from_str(&json).unwrap();
        assert_eq!(back, msg);
        assert_eq!(MessageKind::SendAttacks.to_string(), "send_attacks");
    }
}

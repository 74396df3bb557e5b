use std::fmt;

use serde::{Deserialize, Serialize};

use super::trace::TraceEvent;
use super::{Message, MessageBody, MessageKind, ProtocolError, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Init,
    UtilitiesExchanged,
    Proposed,
    Arguing,
    Agreed,
    Cancelled,
}

impl Phase {
    /// Position along init → utilities_exchanged → proposed/arguing →
    /// agreed/cancelled. Proposed and arguing share a rank because the
    /// session may alternate between them.
    pub fn rank(self) -> u8 {
        match self {
            Phase::Init => 0,
            Phase::UtilitiesExchanged => 1,
            Phase::Proposed | Phase::Arguing => 2,
            Phase::Agreed | Phase::Cancelled => 3,
        }
    }

    pub fn is_terminal(self) -> bool {
        matches!(self, Phase::Agreed | Phase::Cancelled)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Init => "init",
            Phase::UtilitiesExchanged => "utilities_exchanged",
            Phase::Proposed => "proposed",
            Phase::Arguing => "arguing",
            Phase::Agreed => "agreed",
            Phase::Cancelled => "cancelled",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    pub phase: Phase,
    pub round: u32,
    pub trace: Vec<TraceEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ack {
    pub seq: u64,
}

/// In-process, loss-free, in-order transport for one session. Every
/// delivered message and every rejected one lands in the trace.
#[derive(Debug, Clone)]
pub struct SessionBus {
    state: SessionState,
    seq: u64,
    announced: bool,
    closed: bool,
}

impl Default for SessionBus {
    fn default() -> Self {
        Self::new()
    }
}

impl SessionBus {
    pub fn new() -> Self {
        SessionBus {
            state: SessionState {
                phase: Phase::Init,
                round: 0,
                trace: Vec::new(),
            },
            seq: 0,
            announced: false,
            closed: false,
        }
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn phase(&self) -> Phase {
        self.state.phase
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub(crate) fn round(&self) -> u32 {
        self.state.round
    }

    pub(crate) fn next_round(&mut self) {
        self.state.round += 1;
    }

    pub(crate) fn record(&mut self, event: TraceEvent) {
        self.state.trace.push(event);
    }

    pub(crate) fn into_events(self) -> Vec<TraceEvent> {
        self.state.trace
    }

    pub fn deliver(&mut self, from: Role, to: Role, body: MessageBody) -> Result<Ack, ProtocolError> {
        let kind = body.kind();
        if self.closed {
            return Err(ProtocolError::Closed(kind));
        }
        let phase = self.state.phase;
        let next = match self.transition(kind, from, to) {
            Some(next) => next,
            None => {
                self.record(TraceEvent::Violation { kind, from, to, phase });
                return Err(ProtocolError::Violation { kind, from, to, phase });
            }
        };

        self.seq += 1;
        self.record(TraceEvent::Message(Message {
            seq: self.seq,
            from,
            to,
            body,
        }));
        if kind == MessageKind::AnnounceUtilities {
            self.announced = true;
        }
        self.state.phase = next;
        if matches!(kind, MessageKind::ExecuteAction | MessageKind::CancelSession) {
            self.closed = true;
        }
        Ok(Ack { seq: self.seq })
    }

    /// Phase after delivering `kind`, or `None` if it is not allowed now.
    fn transition(&self, kind: MessageKind, from: Role, to: Role) -> Option<Phase> {
        use MessageKind::*;
        use Phase::*;
        use Role::*;

        if from == to {
            return None;
        }
        let phase = self.state.phase;
        match (kind, from, phase) {
            (AnnounceUtilities, Persuader, Init) if !self.announced => Some(Init),
            (RespondUtilities, Mitigator, Init) if self.announced => Some(UtilitiesExchanged),
            (ProposeAction, Persuader, UtilitiesExchanged | Arguing) => Some(Proposed),
            (Approve, Mitigator, Proposed) => Some(Agreed),
            (Disapprove, Mitigator, Proposed) => Some(Arguing),
            (RequestRules, Mitigator, Arguing) => Some(Arguing),
            (SendRules, Persuader, Arguing) => Some(Arguing),
            (SendAttacks | AcceptAf, _, Arguing) => Some(Arguing),
            (CancelSession, _, p) if !p.is_terminal() => Some(Cancelled),
            (ExecuteAction, Persuader, Agreed) => Some(Agreed),
            _ => None,
        }
    }
}

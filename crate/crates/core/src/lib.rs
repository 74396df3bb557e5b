//! Abstract argumentation semantics and a two-agent empathic negotiation engine.
//!
//! The crate is organized bottom-up:
//!
//! - [`af`]: Dung frameworks with complete, preferred, grounded and maximal
//!   ideal semantics, plus a brute-force oracle used to cross-check them.
//! - [`agent`]: utility argmax, conflict detection, acceptability rules and
//!   the lazy/full decision procedures.
//! - [`protocol`]: the persuader/mitigator message bus, the argumentation
//!   based belief synchronization loop and the trace format.
//! - [`scenario`]: declarative scenario files that drive a session.
//!
//! Enumeration-heavy paths (subset search, the oracle, batch solving) run on
//! rayon when the `parallel` feature is enabled; see [`Execution`].

pub mod af;
pub mod agent;
mod exec;
pub mod protocol;
pub mod scenario;

pub use exec::Execution;

/// Engine identifier written into trace headers.
pub const ENGINE_VERSION: &str = concat!("empathic-core/", env!("CARGO_PKG_VERSION"));

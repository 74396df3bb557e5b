//! Command-line front end and HTTP solver service for `empathic-core`.

pub mod cli;
pub mod service;

use empathic_core::af::{ArgumentationFramework, Extension, FrameworkSpec, Semantics};

/// Parses a framework document (`{"arguments": [...], "attacks": [[x, y], ...]}`).
pub fn parse_framework(text: &str) -> anyhow::Result<ArgumentationFramework> {
    let spec: FrameworkSpec = serde_json::from_str(text)?;
    if spec.schema != 1 {
        anyhow::bail!("unsupported framework schema {} (expected 1)", spec.schema);
    }
    Ok(spec.build()?)
}

/// Extensions rendered as `{a,b}`, one per element, in canonical order.
pub fn render_extensions(af: &ArgumentationFramework, semantics: Semantics) -> Vec<String> {
    af.solve(semantics).iter().map(Extension::to_string).collect()
}

//! Stateless HTTP solver.
//!
//! `POST /solve` takes a framework plus a semantics name and answers with the
//! extensions in canonical order. Unparseable bodies get 400; well-formed
//! requests naming an unknown semantics or an undeclared argument get 422.

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use empathic_core::af::{AfError, FrameworkSpec, Semantics};
use serde::{Deserialize, Serialize};

/// Frameworks above this size are refused with 422; extension search is
/// exponential in the worst case.
pub const MAX_ARGUMENTS: usize = 64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveRequest {
    #[serde(flatten)]
    pub framework: FrameworkSpec,
    pub semantics: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResponse {
    pub semantics: Semantics,
    pub extensions: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub engine: String,
}

pub fn router() -> Router {
    Router::new().route("/solve", post(solve)).route("/health", get(health))
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        engine: empathic_core::ENGINE_VERSION.into(),
    })
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(ErrorBody { error: message.into() })).into_response()
}

async fn solve(body: Bytes) -> Response {
    let request: SolveRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, format!("malformed request: {e}")),
    };
    let semantics: Semantics = match request.semantics.parse() {
        Ok(s) => s,
        Err(e) => return error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
    };
    if request.framework.schema != 1 {
        return error(
            StatusCode::UNPROCESSABLE_ENTITY,
            format!("unsupported framework schema {}", request.framework.schema),
        );
    }
    if request.framework.arguments.len() > MAX_ARGUMENTS {
        return error(
            StatusCode::UNPROCESSABLE_ENTITY,
            AfError::TooLarge {
                size: request.framework.arguments.len(),
                max: MAX_ARGUMENTS,
            }
            .to_string(),
        );
    }
    let af = match request.framework.build() {
        Ok(af) => af,
        Err(e) => return error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
    };
    let solved = tokio::task::spawn_blocking(move || af.solve(semantics)).await;
    match solved {
        Ok(extensions) => Json(SolveResponse {
            semantics,
            extensions: extensions.iter().map(|e| e.to_vec()).collect(),
        })
        .into_response(),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

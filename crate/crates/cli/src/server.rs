//! HTTP/JSON front end for [`SessionStore`].
//!
//! ```text
//! POST /sessions              {"items": [..]}              -> {"id", "pending"}
//! GET  /sessions/{id}                                      -> session view
//! POST /sessions/{id}/answer  {"a", "b", "outcome"}        -> session view
//! GET  /sessions/{id}/result                               -> poset JSON, 409 until done
//! ```
//!
//! Errors come back as `{"error": message}`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use posort_core::{PairOutcome, PosetJson};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::session::{Pair, SessionError, SessionStore, SessionView};

pub struct ApiError(StatusCode, serde_json::Value);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let msg = e.to_string();
        match e {
            SessionError::NotFound(_) => ApiError(StatusCode::NOT_FOUND, json!({ "error": msg })),
            SessionError::InvalidItems(_) | SessionError::Inconsistent { .. } => {
                ApiError(StatusCode::UNPROCESSABLE_ENTITY, json!({ "error": msg }))
            }
            SessionError::NotPending { pending, .. } => ApiError(
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({ "error": msg, "pending": pending }),
            ),
            SessionError::NotDone => ApiError(StatusCode::CONFLICT, json!({ "error": msg })),
            SessionError::CorruptStore { .. } | SessionError::Io(_) => {
                ApiError(StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": msg }))
            }
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(e.status(), json!({ "error": e.body_text() }))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(self.1)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub items: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateResponse {
    pub id: String,
    pub pending: Option<Pair>,
}

#[derive(Debug, Deserialize)]
pub struct AnswerRequest {
    pub a: usize,
    pub b: usize,
    pub outcome: PairOutcome,
}

async fn create(
    State(store): State<Arc<SessionStore>>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<CreateResponse>), ApiError> {
    let Json(req) = body?;
    let view = store.create(req.items)?;
    Ok((
        StatusCode::CREATED,
        Json(CreateResponse {
            id: view.id,
            pending: view.pending,
        }),
    ))
}

async fn show(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<SessionView> {
    Ok(Json(store.view(&id)?))
}

async fn answer(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Result<Json<AnswerRequest>, JsonRejection>,
) -> ApiResult<SessionView> {
    let Json(req) = body?;
    Ok(Json(store.answer(&id, req.a, req.b, req.outcome)?))
}

async fn result(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<PosetJson> {
    Ok(Json(store.result(&id)?))
}

async fn not_found() -> ApiError {
    ApiError(StatusCode::NOT_FOUND, json!({ "error": "no such route" }))
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/answer", post(answer))
        .route("/sessions/{id}/result", get(result))
        .fallback(not_found)
        .with_state(store)
}

pub async fn serve(addr: SocketAddr, store: Arc<SessionStore>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

//! HTTP/JSON service for playing tic-tac-toe on the affine plane of order 4
//! against the winning strategy or the solver.
//!
//! Routes, all under `/v1`:
//!
//! - `POST /games` creates a session, optionally from a record;
//! - `GET /games/{id}` returns the session view;
//! - `POST /games/{id}/moves` plays the human's move and the engine's reply;
//! - `GET /games/{id}/hint` suggests a move for the human;
//! - `GET /games/{id}/record` exports the record as plain text.

mod error;
mod session;
mod store;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use xeno_core::game::Player;

pub use error::{ApiError, ErrorBody, ErrorDetail};
pub use session::{Engine, Engines, Hint, HintTag, PointView, Session, SessionView, Status, ThreatView, ThreatsView};
pub use store::{SessionHandle, SessionStore};

/// Environment variable holding the default bind address.
pub const BIND_ENV: &str = "XENO_BIND";
pub const DEFAULT_BIND: &str = "127.0.0.1:8080";
pub const DEFAULT_CAPACITY: usize = 1024;

#[derive(Debug, Clone, Copy)]
pub struct ServiceConfig {
    pub capacity: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { capacity: DEFAULT_CAPACITY }
    }
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
    pub engines: Arc<Engines>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> AppState {
        AppState { store: Arc::new(SessionStore::new(config.capacity)), engines: Arc::new(Engines::new()) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateGame {
    #[serde(default = "default_engine")]
    pub engine: Engine,
    #[serde(default = "default_human")]
    pub human: Player,
    /// A record to resume from.
    #[serde(default)]
    pub record: Option<String>,
}

fn default_engine() -> Engine {
    Engine::PaperStrategy
}

fn default_human() -> Player {
    Player::Ophelia
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveRequest {
    pub point: String,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/games", post(create_game))
        .route("/v1/games/{id}", get(get_game))
        .route("/v1/games/{id}/moves", post(post_move))
        .route("/v1/games/{id}/hint", get(get_hint))
        .route("/v1/games/{id}/record", get(get_record))
        .fallback(|| async { ApiError::NotFound("no such route".into()) })
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let state = AppState::new(config);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, capacity = config.capacity, "serving");
    axum::serve(listener, router(state)).await
}

async fn create_game(
    State(app): State<AppState>,
    body: Result<Json<CreateGame>, JsonRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Json(req) = body.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::create(id, req.engine, req.human, req.record.as_deref(), &app.engines)?;
    let view = session.view();
    app.store.insert(session)?;
    tracing::debug!(id = %view.id, engine = ?view.engine, "created session");
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let handle = app.store.get(&id)?;
    let session = handle.lock().await;
    Ok(Json(session.view()))
}

async fn post_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<SessionView>, ApiError> {
    let Json(req) = body.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let handle = app.store.get(&id)?;
    let mut session = handle.lock().await;
    session.play(&req.point, &app.engines)?;
    Ok(Json(session.view()))
}

async fn get_hint(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<Hint>, ApiError> {
    let handle = app.store.get(&id)?;
    let session = handle.lock().await;
    Ok(Json(session.hint(&app.engines)?))
}

async fn get_record(State(app): State<AppState>, Path(id): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let handle = app.store.get(&id)?;
    let session = handle.lock().await;
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], session.record()))
}

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ApiError {
    #[error("no game with id `{0}`")]
    NotFound(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("the game is over")]
    GameOver,
    #[error("it is not your turn")]
    NotYourTurn,
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("the record leaves the strategy: {0}")]
    OffStrategy(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("all {0} session slots are in use")]
    CapacityExceeded(usize),
    #[error("engine failure: {0}")]
    Engine(String),
}

impl ApiError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ApiError::NotFound(_) => "not_found",
            ApiError::IllegalMove(_) => "illegal_move",
            ApiError::GameOver => "game_over",
            ApiError::NotYourTurn => "not_your_turn",
            ApiError::InvalidRecord(_) => "invalid_record",
            ApiError::OffStrategy(_) => "off_strategy",
            ApiError::Unsupported(_) => "unsupported",
            ApiError::BadRequest(_) => "bad_request",
            ApiError::CapacityExceeded(_) => "capacity_exceeded",
            ApiError::Engine(_) => "engine_failure",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::IllegalMove(_) | ApiError::InvalidRecord(_) | ApiError::OffStrategy(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            ApiError::GameOver | ApiError::NotYourTurn => StatusCode::CONFLICT,
            ApiError::Unsupported(_) | ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::CapacityExceeded(_) => StatusCode::SERVICE_UNAVAILABLE,
            ApiError::Engine(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

/// Body of every error response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { error: ErrorDetail { code: self.code().to_string(), message: self.to_string() } };
        (self.status(), Json(body)).into_response()
    }
}

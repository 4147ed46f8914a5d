//! Positional games on point/line hypergraphs and the record notation.

mod pointset;
mod record;
mod state;

use thiserror::Error;

pub use pointset::PointSet;
pub use record::{annotate, format_record, parse_record, replay_record, GameRecord, RecordError, RecordMove};
pub(crate) use record::{ophelia_inner, parse_double_threat, parse_move_token, split_items};
pub use state::{GameState, Outcome, Player, PositionalGame, Threat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("point {point} is already taken by {owner}")]
    Occupied { point: String, owner: Player },
    #[error("the game is already over")]
    GameOver,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("games are limited to 32 points, got {0}")]
    TooManyPoints(usize),
    #[error("invalid game definition: {0}")]
    Definition(String),
}

//! The first player's winning strategy on the affine plane of order 4.

mod engine;
mod labeling;
mod tables;
mod verify;

use thiserror::Error;

pub use engine::{case1_reply_orbits, case1_stabilizer, PaperStrategy};
pub use labeling::{extend_labeling, LabelingState, Phase};
pub use tables::{
    Case, CaseTable, RowItem, StrategyTables, TableIndex, TableRow, CASE1_OPENING, CASE2_OPENING, PI4_TABLES,
    TABLES_VERSION,
};
pub use verify::{decision_points, random_decision_points, verify_strategy, Failure, VerificationReport};

use crate::game::{GameError, RecordError};

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("strategy tables, line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("strategy tables, line {line}: `{text}`: {source}")]
    TableCheck { line: usize, text: String, source: RecordError },
    #[error("{0}")]
    Plane(String),
    #[error("labeling failed: {0}")]
    Labeling(String),
    #[error("position belongs to a different game")]
    GameMismatch,
    #[error("the game is already over")]
    GameOver,
    #[error("it is not the first player's turn")]
    NotFirstPlayersTurn,
    #[error("labeling does not match the game history")]
    OutOfSync,
    #[error("ply {ply}: the strategy plays {expected}, the record has {found}")]
    Protocol { ply: usize, expected: String, found: String },
    #[error("no tabled reply in case {case} after {}", moves.join(", "))]
    OffTable { case: Case, moves: Vec<String> },
    #[error(transparent)]
    Game(#[from] GameError),
}

//! Exhaustive game-tree search for positional games on up to 32 points.

mod search;
mod symmetry;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use search::{verify_strategy_positions, AgreementReport, Disagreement, MoveChoice, SearchStats, Solution, Solver};
pub use symmetry::{automorphisms, SymmetryGroup};

use crate::designs::PointId;
use crate::game::{Player, PositionalGame};
use crate::paratopisms::canonical_autoparatopisms;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid symmetry group: {0}")]
    BadSymmetry(String),
    #[error("position belongs to a different game")]
    GameMismatch,
    #[error("the game is already over")]
    GameOver,
}

/// Outcome under optimal play, ordered from the first player's view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GameValue {
    SecondPlayerWin,
    Draw,
    FirstPlayerWin,
}

impl GameValue {
    /// Converts a negamax score for `mover` into a first-player value.
    pub fn from_score(score: i8, mover: Player) -> GameValue {
        let first = if mover == Player::Xeno { score } else { -score };
        match first.signum() {
            1 => GameValue::FirstPlayerWin,
            0 => GameValue::Draw,
            _ => GameValue::SecondPlayerWin,
        }
    }
}

impl std::fmt::Display for GameValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GameValue::FirstPlayerWin => "FirstPlayerWin",
            GameValue::Draw => "Draw",
            GameValue::SecondPlayerWin => "SecondPlayerWin",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub enum Symmetry {
    #[default]
    None,
    /// Every line-preserving point permutation, found by search.
    Automorphisms,
    /// An explicit group given as point permutations.
    Group(Vec<Vec<PointId>>),
}

impl Symmetry {
    /// The autoparatopism group of the canonical order-4 squares, acting on
    /// a game whose points carry the canonical names.
    pub fn paratopisms(game: &PositionalGame) -> Result<Symmetry, SolverError> {
        let group = SymmetryGroup::from_paratopisms(game, canonical_autoparatopisms())?;
        Ok(Symmetry::Group(group.perms().to_vec()))
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub symmetry: Symmetry,
    /// Positions with at most this many occupied points are reduced to a
    /// canonical representative before table lookup.
    pub symmetry_depth: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { symmetry: Symmetry::None, symmetry_depth: 6 }
    }
}

//! Game record notation.
//!
//! ```text
//! record  = [ item { "," item } ] ;
//! item    = move | "(" move ")" | "XW(" point "," point ")" ;
//! move    = [ "!" ] point ;
//! point   = letter { letter | digit | "_" } ;
//! ```
//!
//! Xeno's moves are bare, Ophelia's are parenthesized, `!` marks a forced
//! move, and a trailing `XW(p,q)` records that Xeno holds a double threat on
//! `p` and `q` with Ophelia to move. Canonical text separates items with
//! `", "`.

use std::fmt;

use thiserror::Error;

use super::{GameError, GameState, Player};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordMove {
    pub point: String,
    pub mover: Player,
    pub forced: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GameRecord {
    pub moves: Vec<RecordMove>,
    pub double_threat: Option<(String, String)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("item {index}: malformed token `{token}`: {reason}")]
    Malformed { index: usize, token: String, reason: &'static str },
    #[error("item {index}: expected a move by {expected}")]
    Alternation { index: usize, expected: Player },
    #[error("item {index}: XW must be the last item and follow a Xeno move")]
    MisplacedDoubleThreat { index: usize },
    #[error("move {index}: unknown point `{point}`")]
    UnknownPoint { index: usize, point: String },
    #[error("move {index} ({point}): {source}")]
    Illegal { index: usize, point: String, source: GameError },
    #[error("move {index} ({point}) is marked forced but the opponent has no threat there")]
    NotForced { index: usize, point: String },
    #[error("XW({0},{1}) is not a double threat in the replayed position")]
    NotDoubleThreat(String, String),
}

pub(crate) fn split_items(text: &str) -> Vec<&str> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if !last.is_empty() || !items.is_empty() {
        items.push(last);
    }
    items
}

pub(crate) fn is_point_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `[!]name` into (name, forced).
pub(crate) fn parse_move_token(token: &str, index: usize) -> Result<(String, bool), RecordError> {
    let (forced, name) = match token.strip_prefix('!') {
        Some(rest) => (true, rest.trim()),
        None => (false, token),
    };
    if !is_point_name(name) {
        return Err(RecordError::Malformed { index, token: token.to_string(), reason: "expected a point name" });
    }
    Ok((name.to_string(), forced))
}

pub(crate) fn parse_double_threat(item: &str, index: usize) -> Result<Option<(String, String)>, RecordError> {
    let Some(inner) = item.strip_prefix("XW(").and_then(|s| s.strip_suffix(')')) else {
        return Ok(None);
    };
    let malformed = || RecordError::Malformed { index, token: item.to_string(), reason: "expected XW(p,q)" };
    let (a, b) = inner.split_once(',').ok_or_else(malformed)?;
    let (a, b) = (a.trim(), b.trim());
    if !is_point_name(a) || !is_point_name(b) {
        return Err(malformed());
    }
    Ok(Some((a.to_string(), b.to_string())))
}

/// Strips the parentheses of an Ophelia item, if present.
pub(crate) fn ophelia_inner(item: &str, index: usize) -> Result<Option<&str>, RecordError> {
    match (item.strip_prefix('('), item.ends_with(')')) {
        (Some(rest), true) => Ok(Some(rest[..rest.len() - 1].trim())),
        (None, false) => Ok(None),
        _ => Err(RecordError::Malformed { index, token: item.to_string(), reason: "unbalanced parentheses" }),
    }
}

pub fn parse_record(text: &str) -> Result<GameRecord, RecordError> {
    let mut record = GameRecord::default();
    let items = split_items(text);
    for (index, item) in items.iter().enumerate() {
        if item.is_empty() {
            return Err(RecordError::Malformed { index, token: String::new(), reason: "empty item" });
        }
        if let Some(pair) = parse_double_threat(item, index)? {
            let expected_last = index + 1 == items.len();
            let after_xeno = record.moves.last().is_some_and(|m| m.mover == Player::Xeno);
            if !expected_last || !after_xeno {
                return Err(RecordError::MisplacedDoubleThreat { index });
            }
            record.double_threat = Some(pair);
            continue;
        }
        let (mover, token) = match ophelia_inner(item, index)? {
            Some(inner) => (Player::Ophelia, inner),
            None => (Player::Xeno, *item),
        };
        let expected = if record.moves.len() % 2 == 0 { Player::Xeno } else { Player::Ophelia };
        if mover != expected {
            return Err(RecordError::Alternation { index, expected });
        }
        let (point, forced) = parse_move_token(token, index)?;
        record.moves.push(RecordMove { point, mover, forced });
    }
    Ok(record)
}

impl fmt::Display for RecordMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.forced { "!" } else { "" };
        match self.mover {
            Player::Xeno => write!(f, "{mark}{}", self.point),
            Player::Ophelia => write!(f, "({mark}{})", self.point),
        }
    }
}

impl fmt::Display for GameRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.moves.iter().map(ToString::to_string).collect();
        if let Some((a, b)) = &self.double_threat {
            items.push(format!("XW({a},{b})"));
        }
        f.write_str(&items.join(", "))
    }
}

pub fn format_record(record: &GameRecord) -> String {
    record.to_string()
}

/// Replays `record` from `start`, checking legality, every forced mark and
/// the terminal double threat.
pub fn replay_record(record: &GameRecord, start: GameState) -> Result<GameState, RecordError> {
    let mut state = start;
    let base = state.history().len();
    for (i, mv) in record.moves.iter().enumerate() {
        let index = base + i;
        let game = state.game().clone();
        let p = game.point_id(&mv.point).ok_or_else(|| RecordError::UnknownPoint { index, point: mv.point.clone() })?;
        if state.to_move() != mv.mover {
            return Err(RecordError::Alternation { index, expected: state.to_move() });
        }
        if mv.forced && !state.forced_moves(mv.mover).contains(p) {
            return Err(RecordError::NotForced { index, point: mv.point.clone() });
        }
        state.play(p).map_err(|source| RecordError::Illegal { index, point: mv.point.clone(), source })?;
    }
    if let Some((a, b)) = &record.double_threat {
        let game = state.game().clone();
        let bad = || RecordError::NotDoubleThreat(a.clone(), b.clone());
        let pa = game.point_id(a).ok_or_else(bad)?;
        let pb = game.point_id(b).ok_or_else(bad)?;
        let threats = game.threat_points(state.x_points(), state.o_points());
        let ophelia_threats = game.threat_points(state.o_points(), state.x_points());
        if pa == pb
            || !threats.contains(pa)
            || !threats.contains(pb)
            || state.to_move() != Player::Ophelia
            || state.winner().is_over()
            || !ophelia_threats.is_empty()
        {
            return Err(bad());
        }
    }
    Ok(state)
}

/// The record of a state's history with every forced move marked.
pub fn annotate(state: &GameState) -> GameRecord {
    let mut replay = GameState::new(state.game().clone());
    let mut moves = Vec::with_capacity(state.history().len());
    for &p in state.history() {
        let mover = replay.to_move();
        let forced = replay.forced_moves(mover).contains(p);
        moves.push(RecordMove { point: replay.game().point_name(p).to_string(), mover, forced });
        replay.play(p).expect("history of a valid state replays");
    }
    GameRecord { moves, double_threat: None }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::designs::canonical_pi4;
    use crate::game::{Outcome, PositionalGame};

    const INTRO: &str = "r1, (r2), r3, (c1), a2, (r4), c2, (!b2), a4, (!b1), c4, XW(b3,b4)";

    fn start() -> GameState {
        GameState::new(Arc::new(PositionalGame::from_plane(&canonical_pi4())))
    }

    #[test]
    fn intro_game_parses() {
        let rec = parse_record(INTRO).unwrap();
        assert_eq!(rec.moves.len(), 11);
        let forced: Vec<_> = rec.moves.iter().filter(|m| m.forced).map(|m| m.point.as_str()).collect();
        assert_eq!(forced, ["b2", "b1"]);
        assert!(rec.moves.iter().filter(|m| m.forced).all(|m| m.mover == Player::Ophelia));
        assert_eq!(rec.double_threat, Some(("b3".into(), "b4".into())));
        assert_eq!(format_record(&rec), INTRO);
        let state = replay_record(&rec, start()).unwrap();
        assert_eq!(state.winner(), Outcome::Ongoing);
    }

    #[test]
    fn empty_record() {
        assert_eq!(parse_record("").unwrap(), GameRecord::default());
        assert_eq!(parse_record("   ").unwrap(), GameRecord::default());
        assert_eq!(format_record(&GameRecord::default()), "");
    }

    #[test]
    fn whitespace_is_normalized() {
        let rec = parse_record("r1,(r2) ,  r3,( !c1 )").unwrap();
        assert_eq!(format_record(&rec), "r1, (r2), r3, (!c1)");
    }

    #[test]
    fn alternation_error() {
        assert_eq!(
            parse_record("r1, r2").unwrap_err(),
            RecordError::Alternation { index: 1, expected: Player::Ophelia }
        );
        assert!(matches!(parse_record("(r1)"), Err(RecordError::Alternation { index: 0, .. })));
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(parse_record("r1, (r2"), Err(RecordError::Malformed { index: 1, .. })));
        assert!(matches!(parse_record("r1, , r3"), Err(RecordError::Malformed { index: 1, .. })));
        assert!(matches!(parse_record("1r"), Err(RecordError::Malformed { index: 0, .. })));
        assert!(matches!(parse_record("r1, XW(b3)"), Err(RecordError::Malformed { .. })));
        assert!(matches!(parse_record("r1, (r2), XW(b3,b4)"), Err(RecordError::MisplacedDoubleThreat { index: 2 })));
        assert!(matches!(parse_record("r1, XW(b3,b4), (r2)"), Err(RecordError::MisplacedDoubleThreat { index: 1 })));
    }

    #[test]
    fn replay_errors() {
        let rec = parse_record("r1, (r1)").unwrap();
        assert!(matches!(replay_record(&rec, start()), Err(RecordError::Illegal { index: 1, .. })));
        let rec = parse_record("r1, (zz)").unwrap();
        assert!(matches!(replay_record(&rec, start()), Err(RecordError::UnknownPoint { index: 1, .. })));
        let rec = parse_record("r1, (!r2)").unwrap();
        assert!(matches!(replay_record(&rec, start()), Err(RecordError::NotForced { index: 1, .. })));
        let rec = parse_record("r1, (r2), r3, (c1), a2, (r4), c2, (!b2), a4, (!b1), c4, XW(b3,a1)").unwrap();
        assert!(matches!(replay_record(&rec, start()), Err(RecordError::NotDoubleThreat(..))));
    }

    #[test]
    fn annotate_marks_forced_moves() {
        let rec = parse_record("r1, (r2), r3, (c1), a2, (r4), c2, (b2), a4, (b1), c4, (b3), b4").unwrap();
        let state = replay_record(&rec, start()).unwrap();
        assert_eq!(
            format_record(&annotate(&state)),
            "r1, (r2), r3, (c1), a2, (r4), c2, (!b2), a4, (!b1), c4, (!b3), !b4"
        );
    }
}

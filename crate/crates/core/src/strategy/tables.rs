//! Strategy table files.
//!
//! ```text
//! file    = { comment | blank } header { case } ;
//! header  = "tables" version ;
//! case    = "case" digit ":" record NL { "  " row NL } ;
//! row     = reply { "," item } "," "XW(" point "," point ")" ;
//! reply   = "(" alts ")" ;
//! alts    = move { "|" move } ;
//! item    = move | "(" alts ")" ;
//! ```
//!
//! A case line holds the opening record that defines the case. Rows
//! continue it with the second player to move, alternating from there.
//! Listing several replies in one parenthesized cell means each of them is
//! met by the same continuation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::StrategyError;
use crate::designs::PointId;
use crate::game::{
    format_record, ophelia_inner, parse_double_threat, parse_move_token, parse_record, replay_record, split_items,
    GameRecord, GameState, Player, PositionalGame, RecordMove,
};

/// The tables shipped with the crate.
pub const PI4_TABLES: &str = include_str!("../../data/strategy/pi4.tables");

pub const TABLES_VERSION: u32 = 1;

/// Opening records that define the two cases, in canonical labels.
pub const CASE1_OPENING: &str = "r1, (r2), r3, (r4), c1";
pub const CASE2_OPENING: &str = "r1, (r2), r3, (c1), a2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    One,
    Two,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }

    fn from_number(n: &str) -> Option<Case> {
        match n {
            "1" => Some(Case::One),
            "2" => Some(Case::Two),
            _ => None,
        }
    }

    pub fn opening(self) -> &'static str {
        match self {
            Case::One => CASE1_OPENING,
            Case::Two => CASE2_OPENING,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowItem {
    Xeno {
        point: String,
        forced: bool,
    },
    /// One or more alternative replies, each `(point, forced)`.
    Ophelia(Vec<(String, bool)>),
}

impl fmt::Display for RowItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |forced: bool| if forced { "!" } else { "" };
        match self {
            RowItem::Xeno { point, forced } => write!(f, "{}{point}", mark(*forced)),
            RowItem::Ophelia(alts) => {
                let alts: Vec<String> = alts.iter().map(|(p, forced)| format!("{}{p}", mark(*forced))).collect();
                write!(f, "({})", alts.join("|"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// 1-based line number in the source text.
    pub line: usize,
    pub items: Vec<RowItem>,
    pub double_threat: (String, String),
}

impl TableRow {
    /// Every single-reply reading of the row, as records.
    pub fn expansions(&self) -> Vec<GameRecord> {
        let mut out = vec![GameRecord::default()];
        for item in &self.items {
            match item {
                RowItem::Xeno { point, forced } => {
                    for rec in &mut out {
                        rec.moves.push(RecordMove { point: point.clone(), mover: Player::Xeno, forced: *forced });
                    }
                }
                RowItem::Ophelia(alts) => {
                    out = out
                        .into_iter()
                        .flat_map(|rec| {
                            alts.iter().map(move |(p, forced)| {
                                let mut rec = rec.clone();
                                rec.moves.push(RecordMove {
                                    point: p.clone(),
                                    mover: Player::Ophelia,
                                    forced: *forced,
                                });
                                rec
                            })
                        })
                        .collect();
                }
            }
        }
        for rec in &mut out {
            rec.double_threat = Some(self.double_threat.clone());
        }
        out
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.items.iter().map(ToString::to_string).collect();
        items.push(format!("XW({},{})", self.double_threat.0, self.double_threat.1));
        f.write_str(&items.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseTable {
    pub case: Case,
    pub opening: GameRecord,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTables {
    pub version: u32,
    pub cases: Vec<CaseTable>,
}

fn table_err(line: usize, message: impl Into<String>) -> StrategyError {
    StrategyError::Table { line, message: message.into() }
}

fn parse_row(text: &str, line: usize) -> Result<TableRow, StrategyError> {
    let items = split_items(text);
    let mut row_items = Vec::new();
    let mut double_threat = None;
    for (index, item) in items.iter().enumerate() {
        let wrap = |e: crate::game::RecordError| table_err(line, e.to_string());
        if let Some(pair) = parse_double_threat(item, index).map_err(wrap)? {
            if index + 1 != items.len() {
                return Err(table_err(line, "XW must end the row"));
            }
            double_threat = Some(pair);
            continue;
        }
        let expected = if row_items.len() % 2 == 0 { Player::Ophelia } else { Player::Xeno };
        match ophelia_inner(item, index).map_err(wrap)? {
            Some(inner) => {
                if expected != Player::Ophelia {
                    return Err(table_err(line, format!("item {index}: expected a move by {expected}")));
                }
                let alts = inner
                    .split('|')
                    .map(|a| parse_move_token(a.trim(), index))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(wrap)?;
                row_items.push(RowItem::Ophelia(alts));
            }
            None => {
                if expected != Player::Xeno {
                    return Err(table_err(line, format!("item {index}: expected a move by {expected}")));
                }
                let (point, forced) = parse_move_token(item, index).map_err(wrap)?;
                row_items.push(RowItem::Xeno { point, forced });
            }
        }
    }
    let double_threat = double_threat.ok_or_else(|| table_err(line, "row must end with XW(p,q)"))?;
    if !matches!(row_items.last(), Some(RowItem::Xeno { .. })) {
        return Err(table_err(line, "XW must follow a first-player move"));
    }
    Ok(TableRow { line, items: row_items, double_threat })
}

impl StrategyTables {
    /// Parses the text form. Checks syntax only; see [`StrategyTables::index`].
    pub fn parse(text: &str) -> Result<StrategyTables, StrategyError> {
        let mut version = None;
        let mut cases: Vec<CaseTable> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim_start().starts_with('#') || raw.trim().is_empty() {
                continue;
            }
            if raw.starts_with(' ') || raw.starts_with('\t') {
                let case = cases.last_mut().ok_or_else(|| table_err(line, "row outside of a case"))?;
                case.rows.push(parse_row(raw.trim(), line)?);
                continue;
            }
            if let Some(v) = raw.strip_prefix("tables ") {
                if version.is_some() {
                    return Err(table_err(line, "duplicate header"));
                }
                version = Some(v.trim().parse().map_err(|_| table_err(line, "bad version"))?);
                continue;
            }
            if version.is_none() {
                return Err(table_err(line, "missing `tables <version>` header"));
            }
            let body = raw.strip_prefix("case ").ok_or_else(|| table_err(line, "expected `case N: ...`"))?;
            let (num, opening) = body.split_once(':').ok_or_else(|| table_err(line, "expected `case N: ...`"))?;
            let case = Case::from_number(num.trim()).ok_or_else(|| table_err(line, "case must be 1 or 2"))?;
            if cases.iter().any(|c| c.case == case) {
                return Err(table_err(line, format!("case {case} given twice")));
            }
            let opening = parse_record(opening.trim()).map_err(|e| table_err(line, e.to_string()))?;
            cases.push(CaseTable { case, opening, rows: Vec::new() });
        }
        let version = version.ok_or_else(|| table_err(0, "missing `tables <version>` header"))?;
        if version != TABLES_VERSION {
            return Err(table_err(0, format!("unsupported tables version {version}")));
        }
        Ok(StrategyTables { version, cases })
    }

    pub fn pi4() -> StrategyTables {
        StrategyTables::parse(PI4_TABLES).expect("shipped tables parse")
    }

    /// Canonical text without comments.
    pub fn to_text(&self) -> String {
        let mut out = format!("tables {}\n", self.version);
        for case in &self.cases {
            out.push_str(&format!("case {}: {}\n", case.case, format_record(&case.opening)));
            for row in &case.rows {
                out.push_str(&format!("  {row}\n"));
            }
        }
        out
    }

    pub fn case(&self, case: Case) -> Option<&CaseTable> {
        self.cases.iter().find(|c| c.case == case)
    }

    /// Replays every expanded row on `canonical` from its case opening,
    /// checking legality, forced marks and the final double threat, and
    /// builds the reply index.
    pub fn index(&self, canonical: &Arc<PositionalGame>) -> Result<TableIndex, StrategyError> {
        let mut replies = HashMap::new();
        for case in [Case::One, Case::Two] {
            let table = self.case(case).ok_or_else(|| table_err(0, format!("case {case} is missing")))?;
            let opening_text = format_record(&table.opening);
            if opening_text != case.opening() {
                return Err(table_err(0, format!("case {case} must open with `{}`", case.opening())));
            }
            let start = replay_record(&table.opening, GameState::new(canonical.clone()))
                .map_err(|e| table_err(0, e.to_string()))?;
            for row in &table.rows {
                for rec in row.expansions() {
                    replay_record(&rec, start.clone()).map_err(|source| StrategyError::TableCheck {
                        line: row.line,
                        text: rec.to_string(),
                        source,
                    })?;
                    let ids: Vec<PointId> =
                        rec.moves.iter().map(|m| canonical.point_id(&m.point).expect("replayed")).collect();
                    let mut state = start.clone();
                    for &p in &ids {
                        let blocks = state.forced_moves(state.to_move());
                        if !blocks.is_empty() && !blocks.contains(p) {
                            return Err(table_err(
                                row.line,
                                format!("`{rec}`: {} leaves a threat open", canonical.point_name(p)),
                            ));
                        }
                        state.play(p).expect("replayed");
                    }
                    for k in (1..ids.len()).step_by(2) {
                        let key = (case, ids[..k].to_vec());
                        match replies.insert(key, ids[k]) {
                            Some(prev) if prev != ids[k] => {
                                return Err(table_err(
                                    row.line,
                                    format!(
                                        "conflicting replies {} and {} after `{}`",
                                        canonical.point_name(prev),
                                        canonical.point_name(ids[k]),
                                        ids[..k].iter().map(|&p| canonical.point_name(p)).collect::<Vec<_>>().join(" ")
                                    ),
                                ));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        Ok(TableIndex { replies })
    }
}

/// Replies keyed by case and the moves played since the case opening.
#[derive(Debug, Clone, Default)]
pub struct TableIndex {
    replies: HashMap<(Case, Vec<PointId>), PointId>,
}

impl TableIndex {
    pub fn reply(&self, case: Case, since_opening: &[PointId]) -> Option<PointId> {
        self.replies.get(&(case, since_opening.to_vec())).copied()
    }

    pub fn len(&self) -> usize {
        self.replies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.replies.is_empty()
    }
}

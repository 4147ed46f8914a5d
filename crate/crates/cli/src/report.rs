use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use xeno_core::designs::{plane_from_json, plane_to_text, PlaneFile};
use xeno_core::solver::GameValue;
use xeno_core::strategy::VerificationReport;

/// What a subcommand prints. The text and JSON forms carry the same data.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    PlaneBuild(PlaneBuildReport),
    Validate(ValidateReport),
    Solve(SolveReport),
    Verify(VerifyReport),
    Replay(ReplayReport),
}

impl Report {
    /// Whether the command's claim holds; decides the exit status.
    pub fn success(&self) -> bool {
        match self {
            Report::Validate(r) => r.ok,
            Report::Verify(r) => r.report.is_ok(),
            Report::PlaneBuild(_) | Report::Solve(_) | Report::Replay(_) => true,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Report::PlaneBuild(r) => r.text(),
            Report::Validate(r) => r.text(),
            Report::Solve(r) => r.text(),
            Report::Verify(r) => r.text(),
            Report::Replay(r) => r.text(),
        }
    }

    pub fn json(&self) -> String {
        let value = match self {
            Report::PlaneBuild(r) => serde_json::to_string_pretty(&r.plane),
            Report::Validate(r) => serde_json::to_string_pretty(r),
            Report::Solve(r) => serde_json::to_string_pretty(r),
            Report::Verify(r) => serde_json::to_string_pretty(r),
            Report::Replay(r) => serde_json::to_string_pretty(r),
        };
        value.expect("reports serialize") + "\n"
    }
}

/// `plane build`: the JSON form is the plane file itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneBuildReport {
    pub plane: PlaneFile,
}

impl PlaneBuildReport {
    pub fn text(&self) -> String {
        let json = serde_json::to_string(&self.plane).expect("plane file serializes");
        plane_to_text(&plane_from_json(&json).expect("built planes load"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub source: String,
    pub ok: bool,
    pub points: usize,
    pub lines: usize,
    pub classes: usize,
    pub violations: Vec<String>,
}

impl ValidateReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        if self.ok {
            writeln!(out, "ok: {} points, {} lines, {} parallel classes", self.points, self.lines, self.classes)
                .unwrap();
        } else {
            writeln!(out, "invalid: {} ({} violations)", self.source, self.violations.len()).unwrap();
            for v in &self.violations {
                writeln!(out, "  {v}").unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub plane: String,
    pub points: usize,
    pub lines: usize,
    /// Order of the symmetry group used, if any.
    pub symmetry: Option<usize>,
    /// Record of the starting position.
    pub start: String,
    pub value: GameValue,
    /// The starting record extended by the principal variation.
    pub line: String,
    pub nodes: u64,
    pub table_entries: usize,
    pub elapsed_ms: u64,
}

impl SolveReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "plane: {} ({} points, {} lines)", self.plane, self.points, self.lines).unwrap();
        match self.symmetry {
            Some(order) => writeln!(out, "symmetry: group of order {order}").unwrap(),
            None => writeln!(out, "symmetry: none").unwrap(),
        }
        if !self.start.is_empty() {
            writeln!(out, "start: {}", self.start).unwrap();
        }
        writeln!(out, "value: {}", self.value).unwrap();
        writeln!(out, "line: {}", self.line).unwrap();
        writeln!(out, "nodes: {} ({} table entries)", self.nodes, self.table_entries).unwrap();
        writeln!(out, "time: {} ms", self.elapsed_ms).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub plane: String,
    pub relabel_seed: Option<u64>,
    pub report: VerificationReport,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        write!(out, "plane: {}", self.plane).unwrap();
        if let Some(seed) = self.relabel_seed {
            write!(out, " (relabeled, seed {seed})").unwrap();
        }
        writeln!(out).unwrap();
        writeln!(out, "leaves: {}", r.leaves).unwrap();
        writeln!(out, "xeno wins: {}, draws: {}, ophelia wins: {}", r.xeno_wins, r.draws, r.ophelia_wins).unwrap();
        writeln!(out, "decisions: {}", r.decisions).unwrap();
        writeln!(out, "max length: {}", r.max_length).unwrap();
        let hist: Vec<String> = r.length_histogram.iter().map(|(len, n)| format!("{len}:{n}")).collect();
        writeln!(out, "lengths: {}", hist.join(" ")).unwrap();
        if r.is_ok() {
            writeln!(out, "result: every playout is a Xeno win").unwrap();
        } else {
            writeln!(out, "result: FAILED, {} playouts not won", r.failure_count).unwrap();
            for f in &r.failures {
                writeln!(out, "  {} : {}", f.record, f.reason).unwrap();
            }
        }
        writeln!(out, "time: {} ms", self.elapsed_ms).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub plane: String,
    /// The replayed game, forced moves marked.
    pub record: String,
    pub moves: usize,
    /// `XenoWin`, `OpheliaWin`, `Draw` or `Ongoing`.
    pub outcome: String,
    pub line: Option<Vec<String>>,
    /// The terminal `XW(p,q)` annotation, if the record ends with one.
    pub double_threat: Option<(String, String)>,
}

impl ReplayReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "record: {}", self.record).unwrap();
        writeln!(out, "moves: {}", self.moves).unwrap();
        match (&self.line, &self.double_threat) {
            (Some(line), _) => writeln!(out, "outcome: {} on line {}", self.outcome, line.join(" ")).unwrap(),
            (None, Some((p, q))) => {
                writeln!(out, "outcome: {}, XW({p},{q}) leaves Xeno a win next move", self.outcome).unwrap()
            }
            (None, None) => writeln!(out, "outcome: {}", self.outcome).unwrap(),
        }
        out
    }
}

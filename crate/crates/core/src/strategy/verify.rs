use std::collections::BTreeMap;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LabelingState, PaperStrategy};
use crate::game::{annotate, format_record, GameState, Outcome};

/// Failures kept in a report; the count covers all of them.
const MAX_KEPT_FAILURES: usize = 8;

/// A playout the strategy does not win, as an annotated record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub record: String,
    pub reason: String,
}

/// Result of walking the whole game tree against every second-player
/// behavior.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub leaves: u64,
    pub xeno_wins: u64,
    pub draws: u64,
    pub ophelia_wins: u64,
    /// First-player decisions taken along the way.
    pub decisions: u64,
    pub max_length: usize,
    pub length_histogram: BTreeMap<usize, u64>,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.failure_count == 0 && self.draws == 0 && self.ophelia_wins == 0 && self.leaves == self.xeno_wins
    }

    fn leaf(&mut self, state: &GameState) {
        self.leaves += 1;
        let len = state.history().len();
        *self.length_histogram.entry(len).or_default() += 1;
        self.max_length = self.max_length.max(len);
        match state.winner() {
            Outcome::XenoWin(_) => self.xeno_wins += 1,
            Outcome::OpheliaWin(_) => {
                self.ophelia_wins += 1;
                self.fail(state, "second player completed a line".into());
            }
            Outcome::Draw => {
                self.draws += 1;
                self.fail(state, "board filled without a line".into());
            }
            Outcome::Ongoing => unreachable!("leaves are finished games"),
        }
    }

    fn fail(&mut self, state: &GameState, reason: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_KEPT_FAILURES {
            self.failures.push(Failure { record: format_record(&annotate(state)), reason });
        }
    }

    fn merge(&mut self, other: VerificationReport) {
        self.leaves += other.leaves;
        self.xeno_wins += other.xeno_wins;
        self.draws += other.draws;
        self.ophelia_wins += other.ophelia_wins;
        self.decisions += other.decisions;
        self.max_length = self.max_length.max(other.max_length);
        for (k, v) in other.length_histogram {
            *self.length_histogram.entry(k).or_default() += v;
        }
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// Plays the strategy against every sequence of second-player replies.
/// The first reply level is searched in parallel; results are merged in
/// reply order so the report is deterministic.
pub fn verify_strategy(strategy: &PaperStrategy) -> VerificationReport {
    let mut report = VerificationReport::default();
    let root = GameState::new(strategy.game().clone());
    let (first, lab) = match strategy.next_move(&strategy.initial_labeling(), &root) {
        Ok(v) => v,
        Err(e) => {
            report.fail(&root, e.to_string());
            return report;
        }
    };
    report.decisions += 1;
    let after = root.apply_move(first).expect("first move is legal");
    let parts: Vec<VerificationReport> = after
        .free()
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|reply| {
            let mut part = VerificationReport::default();
            let state = after.apply_move(reply).expect("free point");
            first_player_node(strategy, &lab, state, &mut part);
            part
        })
        .collect();
    for part in parts {
        report.merge(part);
    }
    report
}

fn first_player_node(strategy: &PaperStrategy, lab: &LabelingState, state: GameState, report: &mut VerificationReport) {
    if state.winner().is_over() {
        report.leaf(&state);
        return;
    }
    let (mv, lab) = match strategy.next_move(lab, &state) {
        Ok(v) => v,
        Err(e) => {
            report.fail(&state, e.to_string());
            return;
        }
    };
    report.decisions += 1;
    let state = state.apply_move(mv).expect("strategy plays free points");
    if state.winner().is_over() {
        report.leaf(&state);
        return;
    }
    for reply in state.free().iter() {
        first_player_node(strategy, &lab, state.apply_move(reply).expect("free point"), report);
    }
}

/// Every position with the first player to move, reached when the
/// strategy plays against all replies, with at most `max_plies` plies.
pub fn decision_points(strategy: &PaperStrategy, max_plies: usize) -> Vec<GameState> {
    let mut out = Vec::new();
    collect(strategy, &strategy.initial_labeling(), GameState::new(strategy.game().clone()), max_plies, &mut out);
    out
}

fn collect(strategy: &PaperStrategy, lab: &LabelingState, state: GameState, max: usize, out: &mut Vec<GameState>) {
    if state.winner().is_over() || state.history().len() > max {
        return;
    }
    out.push(state.clone());
    let Ok((mv, lab)) = strategy.next_move(lab, &state) else {
        return;
    };
    let state = state.apply_move(mv).expect("strategy plays free points");
    if state.winner().is_over() {
        return;
    }
    for reply in state.free().iter() {
        collect(strategy, &lab, state.apply_move(reply).expect("free point"), max, out);
    }
}

/// `count` first-player decision points with more than `min_plies` plies,
/// one drawn uniformly from each of a series of playouts against random
/// replies.
pub fn random_decision_points(strategy: &PaperStrategy, count: usize, min_plies: usize, seed: u64) -> Vec<GameState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut state = GameState::new(strategy.game().clone());
        let mut lab = strategy.initial_labeling();
        let mut seen = Vec::new();
        while !state.winner().is_over() {
            if state.history().len() > min_plies {
                seen.push(state.clone());
            }
            let Ok((mv, next)) = strategy.next_move(&lab, &state) else {
                break;
            };
            lab = next;
            state.play(mv).expect("strategy plays free points");
            if state.winner().is_over() {
                break;
            }
            let reply = state.free().iter().choose(&mut rng).expect("free points remain");
            state.play(reply).expect("free point");
        }
        if let Some(pick) = seen.into_iter().choose(&mut rng) {
            out.push(pick);
        }
    }
    out
}

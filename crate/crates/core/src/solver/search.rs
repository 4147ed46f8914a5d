use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{GameValue, SolveOptions, SolverError, Symmetry, SymmetryGroup};
use crate::designs::PointId;
use crate::game::{GameState, Outcome, Player, PositionalGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Exact,
    Lower,
    Upper,
}

/// Counters of one solver instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub table_hits: u64,
    pub table_entries: usize,
}

/// The value of a position with a line of best play from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub value: GameValue,
    pub principal_variation: Vec<PointId>,
    pub stats: SearchStats,
}

/// A move together with the value of the position it leads to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveChoice {
    pub point: PointId,
    pub value: GameValue,
}

/// Alpha-beta negamax over pairs of point bitmasks with a transposition
/// table. Scores are from the side to move: 1 win, 0 draw, -1 loss.
pub struct Solver {
    game: Arc<PositionalGame>,
    lines: Vec<u32>,
    all: u32,
    symmetry: Option<SymmetryGroup>,
    symmetry_depth: usize,
    table: FxHashMap<u64, (i8, Bound)>,
    win_memo: FxHashMap<(u32, u32, u8), bool>,
    stats: SearchStats,
}

impl Solver {
    pub fn new(game: Arc<PositionalGame>, options: &SolveOptions) -> Result<Self, SolverError> {
        let symmetry = match &options.symmetry {
            Symmetry::None => None,
            Symmetry::Automorphisms => Some(SymmetryGroup::automorphisms(&game)),
            Symmetry::Group(perms) => Some(SymmetryGroup::new(&game, perms.clone())?),
        };
        Ok(Solver {
            lines: game.lines().iter().map(|l| l.0).collect(),
            all: game.all_points().0,
            game,
            symmetry,
            symmetry_depth: options.symmetry_depth,
            table: FxHashMap::default(),
            win_memo: FxHashMap::default(),
            stats: SearchStats::default(),
        })
    }

    pub fn game(&self) -> &Arc<PositionalGame> {
        &self.game
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats { table_entries: self.table.len(), ..self.stats }
    }

    pub fn symmetry_order(&self) -> usize {
        self.symmetry.as_ref().map_or(1, SymmetryGroup::order)
    }

    fn check_state(&self, state: &GameState) -> Result<(), SolverError> {
        if !Arc::ptr_eq(state.game(), &self.game) && **state.game() != *self.game {
            return Err(SolverError::GameMismatch);
        }
        Ok(())
    }

    /// Game-theoretic value of `state` under optimal play.
    pub fn value(&mut self, state: &GameState) -> Result<GameValue, SolverError> {
        self.check_state(state)?;
        Ok(match state.winner() {
            Outcome::XenoWin(_) => GameValue::FirstPlayerWin,
            Outcome::OpheliaWin(_) => GameValue::SecondPlayerWin,
            Outcome::Draw => GameValue::Draw,
            Outcome::Ongoing => {
                let (me, opp) = movers(state);
                GameValue::from_score(self.search(me, opp, -1, 1), state.to_move())
            }
        })
    }

    /// Value and a principal variation from `state`.
    pub fn solve(&mut self, state: &GameState) -> Result<Solution, SolverError> {
        let value = self.value(state)?;
        let mut line = Vec::new();
        let mut cur = state.clone();
        while !cur.winner().is_over() {
            let choice = self.best_move(&cur)?;
            debug_assert_eq!(choice.value, value);
            line.push(choice.point);
            cur.play(choice.point).expect("best move is legal");
        }
        Ok(Solution { value, principal_variation: line, stats: self.stats() })
    }

    /// Exact values of every legal move, in point order.
    pub fn move_values(&mut self, state: &GameState) -> Result<Vec<MoveChoice>, SolverError> {
        self.check_state(state)?;
        if state.winner().is_over() {
            return Err(SolverError::GameOver);
        }
        let mut out = Vec::new();
        for p in state.free().iter() {
            let next = state.apply_move(p).expect("free point");
            out.push(MoveChoice { point: p, value: self.value(&next)? });
        }
        Ok(out)
    }

    /// The first move in search order achieving the position's value.
    pub fn best_move(&mut self, state: &GameState) -> Result<MoveChoice, SolverError> {
        self.check_state(state)?;
        if state.winner().is_over() {
            return Err(SolverError::GameOver);
        }
        let mover = state.to_move();
        let (me, opp) = movers(state);
        let target = self.search(me, opp, -1, 1);
        for p in self.ordered_moves(me, opp) {
            let score = if self.completes(me | 1 << p) { 1 } else { -self.search(opp, me | 1 << p, -1, 1) };
            if score == target {
                return Ok(MoveChoice { point: p, value: GameValue::from_score(score, mover) });
            }
        }
        unreachable!("some move realizes the negamax value")
    }

    /// Smallest `k` such that the side to move forces a win with at most
    /// `k` more moves of its own, or `None` if it has no forced win.
    pub fn moves_to_win(&mut self, state: &GameState) -> Result<Option<usize>, SolverError> {
        self.check_state(state)?;
        if state.winner().is_over() {
            return Ok(None);
        }
        let (me, opp) = movers(state);
        let free = (self.all & !(me | opp)).count_ones() as usize;
        Ok((1..=free.div_ceil(2)).find(|&k| self.win_within(me, opp, k as u8)))
    }

    fn completes(&self, own: u32) -> bool {
        self.lines.iter().any(|&l| l & !own == 0)
    }

    fn threat_points(&self, own: u32, opp: u32) -> u32 {
        self.lines.iter().fold(0, |acc, &l| {
            let missing = l & !own;
            if missing.count_ones() == 1 && missing & opp == 0 {
                acc | missing
            } else {
                acc
            }
        })
    }

    /// Candidate moves: an immediate win alone, else the forced block alone,
    /// else every free point in ascending order. Empty when the opponent
    /// holds two threats and the mover cannot win at once.
    fn ordered_moves(&self, me: u32, opp: u32) -> Vec<PointId> {
        let wins = self.threat_points(me, opp);
        if wins != 0 {
            return vec![wins.trailing_zeros() as usize];
        }
        let blocks = self.threat_points(opp, me);
        let pool = match blocks.count_ones() {
            0 => self.all & !(me | opp),
            1 => blocks,
            _ => self.all & !(me | opp),
        };
        bits(pool).collect()
    }

    fn key(&self, me: u32, opp: u32) -> u64 {
        let (a, b) = match &self.symmetry {
            Some(sym) if ((me | opp).count_ones() as usize) <= self.symmetry_depth => sym.canonical(me, opp),
            _ => (me, opp),
        };
        (a as u64) << 32 | b as u64
    }

    fn search(&mut self, me: u32, opp: u32, mut alpha: i8, beta: i8) -> i8 {
        self.stats.nodes += 1;
        let free = self.all & !(me | opp);
        if free == 0 {
            return 0;
        }
        if self.threat_points(me, opp) != 0 {
            return 1;
        }
        let blocks = self.threat_points(opp, me);
        if blocks.count_ones() >= 2 {
            return -1;
        }
        let key = self.key(me, opp);
        let alpha0 = alpha;
        if let Some(&(v, bound)) = self.table.get(&key) {
            self.stats.table_hits += 1;
            match bound {
                Bound::Exact => return v,
                Bound::Lower if v >= beta => return v,
                Bound::Upper if v <= alpha => return v,
                _ => {}
            }
        }
        let pool = if blocks != 0 { blocks } else { free };
        let mut best = -2;
        for p in bits(pool) {
            let score = -self.search(opp, me | 1 << p, -beta, -alpha);
            if score > best {
                best = score;
            }
            if best > alpha {
                alpha = best;
            }
            if alpha >= beta {
                break;
            }
        }
        let bound = if best <= alpha0 {
            Bound::Upper
        } else if best >= beta {
            Bound::Lower
        } else {
            Bound::Exact
        };
        self.table.insert(key, (best, bound));
        best
    }

    fn win_within(&mut self, me: u32, opp: u32, k: u8) -> bool {
        if k == 0 {
            return false;
        }
        if self.threat_points(me, opp) != 0 {
            return true;
        }
        if k == 1 {
            return false;
        }
        let blocks = self.threat_points(opp, me);
        if blocks.count_ones() >= 2 {
            return false;
        }
        if let Some(&hit) = self.win_memo.get(&(me, opp, k)) {
            return hit;
        }
        let free = self.all & !(me | opp);
        let pool = if blocks != 0 { blocks } else { free };
        let mut result = false;
        for p in bits(pool) {
            let mine = me | 1 << p;
            let rest = free & !(1 << p);
            if rest == 0 {
                continue;
            }
            let threats = self.threat_points(mine, opp);
            let wins = match threats.count_ones() {
                0 => bits(rest).all(|r| self.win_within(mine, opp | 1 << r, k - 1)),
                1 => self.win_within(mine, opp | threats, k - 1),
                _ => true,
            };
            if wins {
                result = true;
                break;
            }
        }
        self.win_memo.insert((me, opp, k), result);
        result
    }
}

fn movers(state: &GameState) -> (u32, u32) {
    let (x, o) = (state.x_points().0, state.o_points().0);
    match state.to_move() {
        Player::Xeno => (x, o),
        Player::Ophelia => (o, x),
    }
}

fn bits(mut set: u32) -> impl Iterator<Item = PointId> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let p = set.trailing_zeros() as usize;
            set &= set - 1;
            p
        })
    })
}

/// One Xeno-to-move position the solver failed to confirm as a first-player
/// win, with the solver's line of play from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub history: Vec<PointId>,
    pub value: GameValue,
    pub refutation: Vec<PointId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn is_ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Confirms with the solver that every given position is a first-player win.
pub fn verify_strategy_positions(solver: &mut Solver, positions: &[GameState]) -> Result<AgreementReport, SolverError> {
    let mut report = AgreementReport::default();
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    for state in positions {
        if seen.insert((state.x_points().0, state.o_points().0), ()).is_some() {
            continue;
        }
        report.checked += 1;
        let value = solver.value(state)?;
        if value != GameValue::FirstPlayerWin {
            let refutation = solver.solve(state)?.principal_variation;
            report.disagreements.push(Disagreement { history: state.history().to_vec(), value, refutation });
        }
    }
    Ok(report)
}

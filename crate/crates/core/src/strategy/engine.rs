use std::sync::{Arc, OnceLock};

use super::labeling::{canon, label};
use super::{extend_labeling, Case, LabelingState, Phase, StrategyError, StrategyTables, TableIndex};
use crate::designs::{canonical_mols4, validate_plane, AffinePlane, LineId, PlanePoint, PointId};
use crate::game::{GameState, Player, PointSet, PositionalGame};
use crate::paratopisms::{orbits, stabilizer, Orbit, PermGroup};

/// Plies in each case opening.
pub(crate) const OPENING_PLIES: usize = 5;

/// The autoparatopisms fixing the first case's opening position.
pub fn case1_stabilizer() -> &'static PermGroup {
    static GROUP: OnceLock<PermGroup> = OnceLock::new();
    GROUP.get_or_init(|| {
        let pts = |names: &[&str]| names.iter().map(|n| n.parse::<PlanePoint>().expect("label")).collect::<Vec<_>>();
        stabilizer(&canonical_mols4().truncated(2), &pts(&["r1", "r3", "c1"]), &pts(&["r2", "r4"]))
            .expect("canonical pair")
    })
}

/// Orbits of the eleven free points of the first case's opening position.
pub fn case1_reply_orbits() -> &'static [Orbit] {
    static ORBITS: OnceLock<Vec<Orbit>> = OnceLock::new();
    ORBITS.get_or_init(|| {
        let free: Vec<PlanePoint> = (0..16)
            .map(|id| PlanePoint::from_id(id, 4))
            .filter(|p| !["r1", "r2", "r3", "r4", "c1"].contains(&p.to_string().as_str()))
            .collect();
        orbits(case1_stabilizer(), &free).expect("the stabilizer fixes the free points setwise")
    })
}

/// The first player's winning strategy on an affine plane of order 4: an
/// opening that labels the plane as it is played, then table lookup.
#[derive(Debug, Clone)]
pub struct PaperStrategy {
    game: Arc<PositionalGame>,
    tables: StrategyTables,
    index: Arc<TableIndex>,
}

impl PaperStrategy {
    /// The strategy on the canonical plane with the shipped tables.
    pub fn canonical() -> PaperStrategy {
        static INDEX: OnceLock<Arc<TableIndex>> = OnceLock::new();
        let index = INDEX
            .get_or_init(|| Arc::new(StrategyTables::pi4().index(&canon().game).expect("shipped tables validate")))
            .clone();
        PaperStrategy { game: canon().game.clone(), tables: StrategyTables::pi4(), index }
    }

    /// The shipped tables on any plane of order 4.
    pub fn new(plane: &AffinePlane) -> Result<PaperStrategy, StrategyError> {
        PaperStrategy::with_tables(plane, StrategyTables::pi4())
    }

    pub fn with_tables(plane: &AffinePlane, tables: StrategyTables) -> Result<PaperStrategy, StrategyError> {
        let report = validate_plane(plane);
        if !report.is_ok() || plane.order() != 4 {
            return Err(StrategyError::Plane(format!(
                "expected a valid affine plane of order 4 ({} violations, order {})",
                report.violations.len(),
                plane.order()
            )));
        }
        let index = Arc::new(tables.index(&canon().game)?);
        Ok(PaperStrategy { game: Arc::new(PositionalGame::from_plane(plane)), tables, index })
    }

    pub fn game(&self) -> &Arc<PositionalGame> {
        &self.game
    }

    pub fn tables(&self) -> &StrategyTables {
        &self.tables
    }

    pub fn initial_labeling(&self) -> LabelingState {
        LabelingState::new(self.game.num_points())
    }

    fn line_through(&self, a: PointId, b: PointId) -> LineId {
        let pair = PointSet::single(a).with(b);
        self.game.lines().iter().position(|l| pair.is_subset(*l)).expect("two points lie on a line")
    }

    /// The first player's move in `state`, together with the labeling after
    /// it. `labeling` must account for every ply but the last.
    pub fn next_move(
        &self,
        labeling: &LabelingState,
        state: &GameState,
    ) -> Result<(PointId, LabelingState), StrategyError> {
        if !Arc::ptr_eq(state.game(), &self.game) && **state.game() != *self.game {
            return Err(StrategyError::GameMismatch);
        }
        if state.winner().is_over() {
            return Err(StrategyError::GameOver);
        }
        if state.to_move() != Player::Xeno {
            return Err(StrategyError::NotFirstPlayersTurn);
        }
        let h = state.history();
        let n = h.len();
        if labeling.history.as_slice() != &h[..n.saturating_sub(1)] {
            return Err(StrategyError::OutOfSync);
        }
        let mut lab = labeling.clone();
        let (x, o) = (state.x_points(), state.o_points());

        let wins = self.game.threat_points(x, o);
        let play = if !wins.is_empty() {
            lab.phase = Phase::Finished;
            wins.iter().min_by_key(|&p| lab.labels[p].unwrap_or(16 + p)).expect("non-empty")
        } else {
            match n {
                0 => {
                    lab.labels[0] = Some(label("r1"));
                    0
                }
                2 => self.second_move(&mut lab, h[0], h[1], state.free()),
                4 => self.third_move(&mut lab, h[3], state.free())?,
                _ => self.tabled_move(&mut lab, state)?,
            }
        };
        lab.history = h.to_vec();
        lab.history.push(play);
        Ok((play, lab))
    }

    fn second_move(&self, lab: &mut LabelingState, first: PointId, reply: PointId, free: PointSet) -> PointId {
        lab.labels[reply] = Some(label("r2"));
        let row = self.line_through(first, reply);
        let row_mask = self.game.lines()[row];
        lab.index_class = (0..self.game.lines().len())
            .filter(|&l| l == row || self.game.lines()[l].intersection(row_mask).is_empty())
            .collect();
        let mut rest = row_mask.intersection(free).iter();
        let r3 = rest.next().expect("two free points remain on the row block");
        let r4 = rest.next().expect("two free points remain on the row block");
        lab.labels[r3] = Some(label("r3"));
        lab.labels[r4] = Some(label("r4"));
        lab.phase = Phase::Opening2;
        r3
    }

    fn third_move(&self, lab: &mut LabelingState, reply: PointId, free: PointSet) -> Result<PointId, StrategyError> {
        if lab.phase != Phase::Opening2 {
            return Err(StrategyError::OutOfSync);
        }
        let r4 = lab.abstract_point(label("r4"));
        let play = if reply == r4 {
            let row_mask = self.game.lines()[self.row_line(lab)];
            let c1 = free.difference(row_mask).first().expect("free points off the row block");
            lab.labels[c1] = Some(label("c1"));
            lab.case = Some(Case::One);
            lab.phase = Phase::Case1;
            c1
        } else {
            lab.labels[reply] = Some(label("c1"));
            let r2 = lab.abstract_point(label("r2"));
            let block = self.game.lines()[self.line_through(r2, reply)];
            let mut rest = block.intersection(free).iter();
            let p = rest.next().expect("two free points on the block through r2 and c1");
            let q = rest.next().expect("two free points on the block through r2 and c1");
            // Once r1..r4 and c1 are fixed only one of the two points can
            // carry the label a2; play the smaller one that does.
            lab.case = Some(Case::Two);
            lab.phase = Phase::Case2;
            for (a2, b4) in [(p, q), (q, p)] {
                let mut trial = lab.clone();
                trial.labels[a2] = Some(label("a2"));
                trial.labels[b4] = Some(label("b4"));
                if let Ok(full) = extend_labeling(&self.game, &trial) {
                    lab.labels = full.into_iter().map(Some).collect();
                    return Ok(a2);
                }
            }
            return Err(StrategyError::Labeling("neither point on the block through r2 and c1 extends".into()));
        };
        let full = extend_labeling(&self.game, lab)?;
        lab.labels = full.into_iter().map(Some).collect();
        Ok(play)
    }

    fn row_line(&self, lab: &LabelingState) -> LineId {
        self.line_through(lab.abstract_point(label("r1")), lab.abstract_point(label("r2")))
    }

    fn tabled_move(&self, lab: &mut LabelingState, state: &GameState) -> Result<PointId, StrategyError> {
        let h = state.history();
        match lab.phase {
            Phase::Case1 => {
                let reply = PlanePoint::from_id(lab.canonical(h[OPENING_PLIES]), 4);
                let orbit =
                    case1_reply_orbits().iter().find(|o| o.witness(reply).is_some()).ok_or(StrategyError::OutOfSync)?;
                let back = orbit.witness(reply).expect("member").inverse().point_map();
                for l in lab.labels.iter_mut().flatten() {
                    *l = back[*l];
                }
                lab.phase = Phase::Tabled;
            }
            Phase::Case2 => lab.phase = Phase::Tabled,
            Phase::Tabled => {}
            _ => return Err(StrategyError::OutOfSync),
        }
        let case = lab.case.ok_or(StrategyError::OutOfSync)?;
        let key: Vec<PointId> = h[OPENING_PLIES..].iter().map(|&p| lab.canonical(p)).collect();
        let reply = self.index.reply(case, &key).ok_or_else(|| StrategyError::OffTable {
            case,
            moves: key.iter().map(|&c| canon().game.point_name(c).to_string()).collect(),
        })?;
        let p = lab.abstract_point(reply);
        if state.owner(p).is_some() {
            return Err(StrategyError::Table {
                line: 0,
                message: format!("tabled reply {} is occupied", canon().game.point_name(reply)),
            });
        }
        Ok(p)
    }

    /// Rebuilds the labeling for a game in progress, checking that every
    /// first-player move so far is the one the strategy makes.
    pub fn labeling_for(&self, state: &GameState) -> Result<LabelingState, StrategyError> {
        let mut lab = self.initial_labeling();
        let mut replay = GameState::new(self.game.clone());
        for (i, &p) in state.history().iter().enumerate() {
            if i % 2 == 0 {
                let (mv, next) = self.next_move(&lab, &replay)?;
                if mv != p {
                    return Err(StrategyError::Protocol {
                        ply: i,
                        expected: self.game.point_name(mv).to_string(),
                        found: self.game.point_name(p).to_string(),
                    });
                }
                lab = next;
            }
            replay.play(p).map_err(StrategyError::Game)?;
        }
        Ok(lab)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{format_record, parse_record, replay_record};

    fn play_out(strategy: &PaperStrategy, replies: &[&str]) -> GameState {
        let game = strategy.game().clone();
        let mut state = GameState::new(game.clone());
        let mut lab = strategy.initial_labeling();
        for r in replies {
            let (mv, next) = strategy.next_move(&lab, &state).unwrap();
            lab = next;
            state.play(mv).unwrap();
            if state.winner().is_over() {
                break;
            }
            state.play(game.point_id(r).unwrap()).unwrap();
        }
        if !state.winner().is_over() {
            let (mv, _) = strategy.next_move(&lab, &state).unwrap();
            state.play(mv).unwrap();
        }
        state
    }

    fn names(state: &GameState) -> Vec<&str> {
        state.history().iter().map(|&p| state.game().point_name(p)).collect()
    }

    #[test]
    fn case1_stabilizer_is_generated_by_psi() {
        let g = case1_stabilizer();
        assert_eq!(g.order(), 4);
        let psi = |s: &str| s.parse().unwrap();
        assert!(g.contains(&psi(crate::paratopisms::PSI1)));
        assert!(g.contains(&psi(crate::paratopisms::PSI2)));
        let reps: Vec<String> = case1_reply_orbits().iter().map(|o| o.representative.to_string()).collect();
        assert_eq!(reps, ["c2", "c4", "a1", "a2"]);
    }

    #[test]
    fn opening_follows_the_labeling_protocol() {
        let s = PaperStrategy::canonical();
        let st = play_out(&s, &["r2", "r4", "c2", "b1", "b2"]);
        assert_eq!(names(&st)[..7], ["r1", "r2", "r3", "r4", "c1", "c2", "a1"]);
        let st = play_out(&s, &["r2", "c1", "r4", "b2", "b1"]);
        assert_eq!(names(&st)[..8], ["r1", "r2", "r3", "c1", "a2", "r4", "c2", "b2"]);
    }

    #[test]
    fn case2_r4_line_matches_the_introductory_game() {
        let s = PaperStrategy::canonical();
        let st = play_out(&s, &["r2", "c1", "r4", "b2", "b1", "b3"]);
        let rec = format_record(&crate::game::annotate(&st));
        assert_eq!(rec, "r1, (r2), r3, (c1), a2, (r4), c2, (!b2), a4, (!b1), c4, (!b3), !b4");
    }

    #[test]
    fn case1_symmetric_reply_follows_the_mapped_sequence() {
        let s = PaperStrategy::canonical();
        let g = s.game().clone();
        let id = |n: &str| g.point_id(n).unwrap();
        let mut state =
            GameState::from_history(g.clone(), &[id("r1"), id("r2"), id("r3"), id("r4"), id("c1")]).unwrap();
        let mut lab = s.labeling_for(&state).unwrap();
        state.play(id("c3")).unwrap();
        // c3 lies in the orbit of c2; the reply sequence is the image of
        // a1, (b1), a3, (b2), c3 under the witness.
        let orbit = case1_reply_orbits().iter().find(|o| o.representative.to_string() == "c2").unwrap();
        let w = orbit.witness("c3".parse().unwrap()).unwrap();
        let img = |n: &str| w.apply_to_point(n.parse().unwrap()).to_string();
        let mut xeno = Vec::new();
        while !state.winner().is_over() {
            let (mv, next) = s.next_move(&lab, &state).unwrap();
            lab = next;
            xeno.push(g.point_name(mv).to_string());
            state.play(mv).unwrap();
            if state.winner().is_over() {
                break;
            }
            let block = state.forced_moves(Player::Ophelia).first().unwrap();
            state.play(block).unwrap();
        }
        assert_eq!(xeno[..3], [img("a1"), img("a3"), img("c3")]);
        let rec = crate::game::annotate(&state);
        replay_record(&parse_record(&format_record(&rec)).unwrap(), GameState::new(g.clone())).unwrap();
    }

    #[test]
    fn errors_for_bad_use() {
        let s = PaperStrategy::canonical();
        let g = s.game().clone();
        let lab = s.initial_labeling();
        let st = GameState::from_history(g.clone(), &[0]).unwrap();
        assert!(matches!(s.next_move(&lab, &st), Err(StrategyError::NotFirstPlayersTurn)));
        let st = GameState::from_history(g.clone(), &[0, 1]).unwrap();
        assert!(matches!(s.next_move(&lab, &st), Err(StrategyError::OutOfSync)));
        let st = GameState::from_history(g.clone(), &[3, 1]).unwrap();
        assert!(matches!(s.labeling_for(&st), Err(StrategyError::Protocol { ply: 0, .. })));
        let other = GameState::new(Arc::new(PositionalGame::tic_tac_toe()));
        assert!(matches!(s.next_move(&lab, &other), Err(StrategyError::GameMismatch)));
    }

    #[test]
    fn labeling_for_matches_incremental_labeling() {
        let s = PaperStrategy::canonical();
        let st = play_out(&s, &["r2", "r4", "a1", "a3", "c3", "a4"]);
        let mut prefix = GameState::new(s.game().clone());
        for &p in &st.history()[..8] {
            prefix.play(p).unwrap();
        }
        let lab = s.labeling_for(&prefix).unwrap();
        assert_eq!(lab.phase(), Phase::Tabled);
        assert!(lab.is_complete());
        let (mv, _) = s.next_move(&lab, &prefix).unwrap();
        assert_eq!(mv, st.history()[8]);
    }
}

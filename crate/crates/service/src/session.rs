use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use xeno_core::designs::PointId;
use xeno_core::game::{
    annotate, format_record, parse_record, replay_record, GameState, Outcome, Player, PositionalGame,
};
use xeno_core::solver::{GameValue, SolveOptions, Solver, Symmetry};
use xeno_core::strategy::{LabelingState, PaperStrategy};

use crate::ApiError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// The table-driven first-player strategy. Plays Xeno only.
    PaperStrategy,
    /// Game-tree search. Plays either side.
    Solver,
}

/// Engines shared by every session. The solver keeps its transposition
/// table between requests.
pub struct Engines {
    strategy: PaperStrategy,
    solver: Mutex<Solver>,
}

impl Engines {
    pub fn new() -> Engines {
        let strategy = PaperStrategy::canonical();
        let game = strategy.game().clone();
        let symmetry = Symmetry::paratopisms(&game).expect("canonical point names");
        let options = SolveOptions { symmetry, ..SolveOptions::default() };
        let solver = Solver::new(game, &options).expect("symmetry group of the canonical plane");
        Engines { strategy, solver: Mutex::new(solver) }
    }

    pub fn game(&self) -> &Arc<PositionalGame> {
        self.strategy.game()
    }

    fn solver(&self) -> std::sync::MutexGuard<'_, Solver> {
        // A panic mid-search leaves only cached values behind, which stay valid.
        self.solver.lock().unwrap_or_else(|e| e.into_inner())
    }
}

impl Default for Engines {
    fn default() -> Self {
        Engines::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HintTag {
    ImmediateWin,
    ForcedBlock,
    TableMove,
    SolverBest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub point: String,
    pub tag: HintTag,
    /// Value after the hinted move, from the first player's view.
    pub value: GameValue,
    pub explanation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    XenoWin,
    OpheliaWin,
    Draw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointView {
    pub name: String,
    pub owner: Option<Player>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreatView {
    pub line: Vec<String>,
    pub missing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreatsView {
    pub xeno: Vec<ThreatView>,
    pub ophelia: Vec<ThreatView>,
}

/// The JSON form of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub engine: Engine,
    pub human: Player,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub status: Status,
    /// Absent once the game is over.
    pub to_move: Option<Player>,
    pub winning_line: Option<Vec<String>>,
    pub points: Vec<PointView>,
    pub lines: Vec<Vec<String>>,
    pub threats: ThreatsView,
    /// Points the side to move must take to avoid losing on the next move.
    pub forced_moves: Vec<String>,
    /// Plain-language note about forced moves for the human.
    pub notice: Option<String>,
    /// The engine's reply to the last request, if it moved.
    pub engine_move: Option<String>,
    pub history: Vec<String>,
    pub record: String,
}

pub struct Session {
    id: String,
    engine: Engine,
    human: Player,
    created_at: u64,
    state: GameState,
    labeling: Option<LabelingState>,
    engine_move: Option<PointId>,
}

impl Session {
    /// A new session, optionally resumed from a record. If the engine is to
    /// move it moves before this returns.
    pub fn create(
        id: String,
        engine: Engine,
        human: Player,
        record: Option<&str>,
        engines: &Engines,
    ) -> Result<Session, ApiError> {
        if engine == Engine::PaperStrategy && human == Player::Xeno {
            return Err(ApiError::Unsupported("the table strategy plays Xeno, so the human must play Ophelia".into()));
        }
        let mut state = GameState::new(engines.game().clone());
        if let Some(text) = record.map(str::trim).filter(|t| !t.is_empty()) {
            let rec = parse_record(text).map_err(|e| ApiError::InvalidRecord(e.to_string()))?;
            state = replay_record(&rec, state).map_err(|e| ApiError::InvalidRecord(e.to_string()))?;
        }
        let labeling = match engine {
            Engine::PaperStrategy => {
                Some(engines.strategy.labeling_for(&state).map_err(|e| ApiError::OffStrategy(e.to_string()))?)
            }
            Engine::Solver => None,
        };
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut session = Session { id, engine, human, created_at, state, labeling, engine_move: None };
        session.engine_turn(engines)?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    /// Applies the human's move and the engine's reply.
    pub fn play(&mut self, point: &str, engines: &Engines) -> Result<(), ApiError> {
        if self.state.winner().is_over() {
            return Err(ApiError::GameOver);
        }
        if self.state.to_move() != self.human {
            return Err(ApiError::NotYourTurn);
        }
        let game = self.state.game().clone();
        let p = game.point_id(point).ok_or_else(|| ApiError::IllegalMove(format!("unknown point `{point}`")))?;
        self.state.play(p).map_err(|e| ApiError::IllegalMove(e.to_string()))?;
        self.engine_move = None;
        self.engine_turn(engines)
    }

    fn engine_turn(&mut self, engines: &Engines) -> Result<(), ApiError> {
        if self.state.winner().is_over() || self.state.to_move() == self.human {
            return Ok(());
        }
        let p = match (self.engine, self.labeling.as_ref()) {
            (Engine::PaperStrategy, Some(lab)) => {
                let (p, next) =
                    engines.strategy.next_move(lab, &self.state).map_err(|e| ApiError::Engine(e.to_string()))?;
                self.labeling = Some(next);
                p
            }
            _ => engines.solver().best_move(&self.state).map_err(|e| ApiError::Engine(e.to_string()))?.point,
        };
        self.state.play(p).map_err(|e| ApiError::Engine(e.to_string()))?;
        self.engine_move = Some(p);
        Ok(())
    }

    /// The record in the text notation, forced moves marked.
    pub fn record(&self) -> String {
        format_record(&annotate(&self.state))
    }

    /// A suggested move for the human.
    pub fn hint(&self, engines: &Engines) -> Result<Hint, ApiError> {
        if self.state.winner().is_over() {
            return Err(ApiError::GameOver);
        }
        if self.state.to_move() != self.human {
            return Err(ApiError::NotYourTurn);
        }
        let st = &self.state;
        let game = st.game();
        let me = st.to_move();
        let engine_err = |e: xeno_core::solver::SolverError| ApiError::Engine(e.to_string());
        let value_after = |p: PointId| -> Result<GameValue, ApiError> {
            let after = st.apply_move(p).map_err(|e| ApiError::Engine(e.to_string()))?;
            match after.winner() {
                Outcome::XenoWin(_) => Ok(GameValue::FirstPlayerWin),
                Outcome::OpheliaWin(_) => Ok(GameValue::SecondPlayerWin),
                Outcome::Draw => Ok(GameValue::Draw),
                Outcome::Ongoing => engines.solver().value(&after).map_err(engine_err),
            }
        };
        let hint = |p: PointId, tag: HintTag, explanation: String| -> Result<Hint, ApiError> {
            Ok(Hint { point: game.point_name(p).to_string(), tag, value: value_after(p)?, explanation })
        };

        if let Some(t) = st.threats(me).first() {
            return hint(t.missing, HintTag::ImmediateWin, format!("completes the line {}", line_text(game, t.line)));
        }
        let forced = st.forced_moves(me);
        if forced.len() == 1 {
            let p = forced.iter().next().expect("one point");
            return hint(
                p,
                HintTag::ForcedBlock,
                format!("blocks {}; any other move loses at once", game.point_name(p)),
            );
        }
        if me == Player::Xeno {
            if let Ok(lab) = engines.strategy.labeling_for(st) {
                if let Ok((p, _)) = engines.strategy.next_move(&lab, st) {
                    return hint(p, HintTag::TableMove, "the winning strategy's move".into());
                }
            }
        }
        let choices = engines.solver().move_values(st).map_err(engine_err)?;
        let mine = |v: GameValue| if me == Player::Xeno { v } else { flip(v) };
        let best = choices.iter().map(|c| mine(c.value)).max().expect("the game is ongoing");
        if best == mine(GameValue::SecondPlayerWin) {
            // Every move loses: resist as long as possible.
            let mut deepest: Option<(usize, PointId)> = None;
            for c in &choices {
                let after = st.apply_move(c.point).map_err(|e| ApiError::Engine(e.to_string()))?;
                let depth = if after.winner().is_over() {
                    0
                } else {
                    engines.solver().moves_to_win(&after).map_err(engine_err)?.unwrap_or(0)
                };
                if deepest.is_none_or(|(d, _)| depth > d) {
                    deepest = Some((depth, c.point));
                }
            }
            let (depth, p) = deepest.expect("at least one move");
            let who = me.other();
            return hint(
                p,
                HintTag::SolverBest,
                format!("every move loses; this one delays {who}'s win longest ({depth} more moves)"),
            );
        }
        let p = engines.solver().best_move(st).map_err(engine_err)?.point;
        hint(p, HintTag::SolverBest, "the solver's best move".into())
    }

    pub fn view(&self) -> SessionView {
        let st = &self.state;
        let game = st.game();
        let name = |p: PointId| game.point_name(p).to_string();
        let threats = |player: Player| {
            st.threats(player)
                .into_iter()
                .map(|t| ThreatView {
                    line: game.line_names(t.line).into_iter().map(String::from).collect(),
                    missing: name(t.missing),
                })
                .collect()
        };
        let (status, line) = match st.winner() {
            Outcome::Ongoing => (Status::Ongoing, None),
            Outcome::Draw => (Status::Draw, None),
            Outcome::XenoWin(l) => (Status::XenoWin, Some(l)),
            Outcome::OpheliaWin(l) => (Status::OpheliaWin, Some(l)),
        };
        let ongoing = status == Status::Ongoing;
        let forced: Vec<String> =
            if ongoing { st.forced_moves(st.to_move()).iter().map(name).collect() } else { vec![] };
        SessionView {
            id: self.id.clone(),
            engine: self.engine,
            human: self.human,
            created_at: self.created_at,
            status,
            to_move: ongoing.then(|| st.to_move()),
            winning_line: line.map(|l| game.line_names(l).into_iter().map(String::from).collect()),
            points: (0..game.num_points()).map(|p| PointView { name: name(p), owner: st.owner(p) }).collect(),
            lines: (0..game.lines().len())
                .map(|l| game.line_names(l).into_iter().map(String::from).collect())
                .collect(),
            threats: ThreatsView { xeno: threats(Player::Xeno), ophelia: threats(Player::Ophelia) },
            notice: if ongoing { self.notice(&forced) } else { None },
            forced_moves: forced,
            engine_move: self.engine_move.map(name),
            history: st.history().iter().map(|&p| name(p)).collect(),
            record: self.record(),
        }
    }

    fn notice(&self, forced: &[String]) -> Option<String> {
        let st = &self.state;
        if st.to_move() != self.human {
            return None;
        }
        if let Some(t) = st.threats(self.human).first() {
            return Some(format!("you can win now at {}", st.game().point_name(t.missing)));
        }
        match forced {
            [] => None,
            [p] => Some(format!("your only non-losing reply is {p}")),
            many => Some(format!("{} threatens {}; no reply stops both", self.human.other(), many.join(" and "))),
        }
    }
}

fn flip(v: GameValue) -> GameValue {
    match v {
        GameValue::FirstPlayerWin => GameValue::SecondPlayerWin,
        GameValue::Draw => GameValue::Draw,
        GameValue::SecondPlayerWin => GameValue::FirstPlayerWin,
    }
}

fn line_text(game: &PositionalGame, line: usize) -> String {
    game.line_names(line).join(" ")
}

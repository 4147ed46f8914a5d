use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GameError, PointSet};
use crate::designs::{AffinePlane, LineId, PointId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    /// Moves first.
    Xeno,
    Ophelia,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Xeno => Player::Ophelia,
            Player::Ophelia => Player::Xeno,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Xeno => "Xeno",
            Player::Ophelia => "Ophelia",
        })
    }
}

/// A positional game: players alternately claim points and the first to own
/// every point of some winning line wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalGame {
    points: Vec<String>,
    lines: Vec<PointSet>,
    lines_through: Vec<Vec<LineId>>,
    by_name: HashMap<String, PointId>,
}

impl PositionalGame {
    pub fn new(points: Vec<String>, lines: Vec<Vec<PointId>>) -> Result<Self, GameError> {
        if points.len() > 32 {
            return Err(GameError::TooManyPoints(points.len()));
        }
        let mut by_name = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if by_name.insert(p.clone(), i).is_some() {
                return Err(GameError::Definition(format!("duplicate point `{p}`")));
            }
        }
        let mut masks = Vec::with_capacity(lines.len());
        let mut lines_through = vec![Vec::new(); points.len()];
        for line in &lines {
            let mask: PointSet = line.iter().copied().collect();
            if line.iter().any(|&p| p >= points.len()) || mask.len() != line.len() || mask.len() < 2 {
                return Err(GameError::Definition(format!("bad winning line {line:?}")));
            }
            for p in mask.iter() {
                lines_through[p].push(masks.len());
            }
            masks.push(mask);
        }
        Ok(PositionalGame { points, lines: masks, lines_through, by_name })
    }

    pub fn from_plane(plane: &AffinePlane) -> Self {
        PositionalGame::new(plane.points().to_vec(), plane.lines().to_vec()).expect("plane structure already checked")
    }

    /// Classic 3x3 noughts and crosses; cells are named `t11..t33`.
    pub fn tic_tac_toe() -> Self {
        let points = (1..=3).flat_map(|r| (1..=3).map(move |c| format!("t{r}{c}"))).collect();
        let id = |r: usize, c: usize| r * 3 + c;
        let mut lines = Vec::new();
        for i in 0..3 {
            lines.push((0..3).map(|j| id(i, j)).collect());
            lines.push((0..3).map(|j| id(j, i)).collect());
        }
        lines.push((0..3).map(|i| id(i, i)).collect());
        lines.push((0..3).map(|i| id(i, 2 - i)).collect());
        PositionalGame::new(points, lines).expect("static board")
    }

    /// The projective completion of an affine plane: one extra point per
    /// parallel class (named `inf_<class>`) added to each of its lines, plus
    /// the line at infinity.
    pub fn projective_completion(plane: &AffinePlane) -> Result<Self, GameError> {
        let mut points = plane.points().to_vec();
        let mut lines: Vec<Vec<PointId>> = plane.lines().to_vec();
        let mut infinity = Vec::new();
        for class in plane.classes() {
            let id = points.len();
            points.push(format!("inf_{}", class.name));
            for &l in &class.lines {
                lines[l].push(id);
            }
            infinity.push(id);
        }
        lines.push(infinity);
        PositionalGame::new(points, lines)
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.points.len())
    }

    pub fn point_names(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, p: PointId) -> &str {
        &self.points[p]
    }

    pub fn point_id(&self, name: &str) -> Option<PointId> {
        self.by_name.get(name).copied()
    }

    pub fn lines(&self) -> &[PointSet] {
        &self.lines
    }

    pub fn lines_through(&self, p: PointId) -> &[LineId] {
        &self.lines_through[p]
    }

    pub fn line_names(&self, line: LineId) -> Vec<&str> {
        self.lines[line].iter().map(|p| self.point_name(p)).collect()
    }

    /// Lines fully contained in `owned`.
    pub fn completed_line(&self, owned: PointSet) -> Option<LineId> {
        self.lines.iter().position(|l| l.is_subset(owned))
    }

    /// Threats of the owner of `own` against the owner of `opp`.
    pub fn threats_of(&self, own: PointSet, opp: PointSet) -> Vec<Threat> {
        self.lines
            .iter()
            .enumerate()
            .filter_map(|(line, &mask)| {
                let missing = mask.difference(own);
                (missing.len() == 1 && missing.intersection(opp).is_empty())
                    .then(|| Threat { line, missing: missing.first().unwrap() })
            })
            .collect()
    }

    /// Distinct missing points of the threats of `own`.
    pub fn threat_points(&self, own: PointSet, opp: PointSet) -> PointSet {
        self.lines.iter().fold(PointSet::EMPTY, |acc, &mask| {
            let missing = mask.difference(own);
            if missing.len() == 1 && missing.intersection(opp).is_empty() {
                acc.union(missing)
            } else {
                acc
            }
        })
    }
}

/// A line where a player holds all points but one, the last being free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Threat {
    pub line: LineId,
    pub missing: PointId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "line", rename_all = "snake_case")]
pub enum Outcome {
    XenoWin(LineId),
    OpheliaWin(LineId),
    Draw,
    Ongoing,
}

impl Outcome {
    pub fn is_over(self) -> bool {
        self != Outcome::Ongoing
    }
}

/// A position: the points each player holds plus the move history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    game: Arc<PositionalGame>,
    x: PointSet,
    o: PointSet,
    history: Vec<PointId>,
}

impl GameState {
    pub fn new(game: Arc<PositionalGame>) -> Self {
        GameState { game, x: PointSet::EMPTY, o: PointSet::EMPTY, history: Vec::new() }
    }

    pub fn from_history(game: Arc<PositionalGame>, history: &[PointId]) -> Result<Self, GameError> {
        let mut state = GameState::new(game);
        for &p in history {
            state.play(p)?;
        }
        Ok(state)
    }

    pub fn game(&self) -> &Arc<PositionalGame> {
        &self.game
    }

    pub fn x_points(&self) -> PointSet {
        self.x
    }

    pub fn o_points(&self) -> PointSet {
        self.o
    }

    pub fn points_of(&self, player: Player) -> PointSet {
        match player {
            Player::Xeno => self.x,
            Player::Ophelia => self.o,
        }
    }

    pub fn occupied(&self) -> PointSet {
        self.x.union(self.o)
    }

    pub fn free(&self) -> PointSet {
        self.game.all_points().difference(self.occupied())
    }

    pub fn history(&self) -> &[PointId] {
        &self.history
    }

    pub fn to_move(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::Xeno
        } else {
            Player::Ophelia
        }
    }

    pub fn owner(&self, p: PointId) -> Option<Player> {
        if self.x.contains(p) {
            Some(Player::Xeno)
        } else if self.o.contains(p) {
            Some(Player::Ophelia)
        } else {
            None
        }
    }

    pub fn winner(&self) -> Outcome {
        if let Some(line) = self.game.completed_line(self.x) {
            Outcome::XenoWin(line)
        } else if let Some(line) = self.game.completed_line(self.o) {
            Outcome::OpheliaWin(line)
        } else if self.free().is_empty() {
            Outcome::Draw
        } else {
            Outcome::Ongoing
        }
    }

    /// Claims `p` for the player to move, in place.
    pub fn play(&mut self, p: PointId) -> Result<(), GameError> {
        if p >= self.game.num_points() {
            return Err(GameError::UnknownPoint(p.to_string()));
        }
        if let Some(owner) = self.owner(p) {
            return Err(GameError::Occupied { point: self.game.point_name(p).to_string(), owner });
        }
        if self.winner().is_over() {
            return Err(GameError::GameOver);
        }
        match self.to_move() {
            Player::Xeno => self.x.insert(p),
            Player::Ophelia => self.o.insert(p),
        }
        self.history.push(p);
        Ok(())
    }

    pub fn apply_move(&self, p: PointId) -> Result<GameState, GameError> {
        let mut next = self.clone();
        next.play(p)?;
        Ok(next)
    }

    pub fn threats(&self, player: Player) -> Vec<Threat> {
        let own = self.points_of(player);
        let opp = self.points_of(player.other());
        self.game.threats_of(own, opp)
    }

    /// Points `player` must take now to avoid losing on the opponent's next
    /// move: the missing points of the opponent's threats.
    pub fn forced_moves(&self, player: Player) -> PointSet {
        self.game.threat_points(self.points_of(player.other()), self.points_of(player))
    }

    /// Two distinct missing points of `player`'s threats, if there are at
    /// least two. With the opponent to move this is a win for `player`.
    pub fn double_threat(&self, player: Player) -> Option<(PointId, PointId)> {
        let pts = self.game.threat_points(self.points_of(player), self.points_of(player.other()));
        let mut it = pts.iter();
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::canonical_pi4;

    fn pi4() -> Arc<PositionalGame> {
        Arc::new(PositionalGame::from_plane(&canonical_pi4()))
    }

    fn play(names: &[&str]) -> GameState {
        let game = pi4();
        let ids: Vec<_> = names.iter().map(|n| game.point_id(n).unwrap()).collect();
        GameState::from_history(game, &ids).unwrap()
    }

    fn names(state: &GameState, set: PointSet) -> Vec<String> {
        set.iter().map(|p| state.game().point_name(p).to_string()).collect()
    }

    #[test]
    fn first_move() {
        let s = play(&["r1"]);
        assert_eq!(names(&s, s.x_points()), ["r1"]);
        assert_eq!(s.to_move(), Player::Ophelia);
        assert_eq!(s.winner(), Outcome::Ongoing);
    }

    #[test]
    fn occupied_point_rejected() {
        let s = play(&["r1"]);
        assert!(matches!(s.apply_move(0), Err(GameError::Occupied { owner: Player::Xeno, .. })));
    }

    #[test]
    fn intro_game() {
        let moves = ["r1", "r2", "r3", "c1", "a2", "r4", "c2"];
        let s = play(&moves);
        let t = s.threats(Player::Xeno);
        assert_eq!(t.len(), 1);
        assert_eq!(s.game().line_names(t[0].line), ["r1", "c2", "a2", "b2"]);
        assert_eq!(s.game().point_name(t[0].missing), "b2");
        assert_eq!(names(&s, s.forced_moves(Player::Ophelia)), ["b2"]);

        let s = play(&["r1", "r2", "r3", "c1", "a2", "r4", "c2", "b2", "a4", "b1", "c4"]);
        let (a, b) = s.double_threat(Player::Xeno).unwrap();
        assert_eq!((s.game().point_name(a), s.game().point_name(b)), ("b3", "b4"));

        let full = play(&["r1", "r2", "r3", "c1", "a2", "r4", "c2", "b2", "a4", "b1", "c4", "b3", "b4"]);
        assert_eq!(names(&full, full.x_points()), ["r1", "r3", "c2", "c4", "a2", "a4", "b4"]);
        match full.winner() {
            Outcome::XenoWin(line) => assert_eq!(full.game().line_names(line), ["r1", "c4", "a4", "b4"]),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(full.apply_move(6), Err(GameError::GameOver)));
    }

    #[test]
    fn empty_board() {
        let s = GameState::new(pi4());
        assert_eq!(s.winner(), Outcome::Ongoing);
        assert!(s.threats(Player::Xeno).is_empty());
        assert!(s.double_threat(Player::Xeno).is_none());
    }

    #[test]
    fn full_board_without_lines_is_draw() {
        // Search the 8-subsets for one where neither part holds a line.
        let game = pi4();
        let all = game.all_points();
        let x = (0u32..1 << 16)
            .map(PointSet)
            .find(|&x| {
                x.len() == 8 && game.completed_line(x).is_none() && game.completed_line(all.difference(x)).is_none()
            })
            .expect("a drawn partition exists");
        let o = all.difference(x);
        let history: Vec<_> = x.iter().zip(o.iter()).flat_map(|(a, b)| [a, b]).collect();
        let s = GameState::from_history(game, &history).unwrap();
        assert_eq!(s.winner(), Outcome::Draw);
    }

    #[test]
    fn projective_completion_shape() {
        let g = PositionalGame::projective_completion(&canonical_pi4()).unwrap();
        assert_eq!(g.num_points(), 21);
        assert_eq!(g.lines().len(), 21);
        assert!(g.lines().iter().all(|l| l.len() == 5));
    }

    #[test]
    fn tic_tac_toe_shape() {
        let g = PositionalGame::tic_tac_toe();
        assert_eq!((g.num_points(), g.lines().len()), (9, 8));
    }
}

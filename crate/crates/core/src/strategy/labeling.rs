use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::{Case, StrategyError};
use crate::designs::{canonical_pi4, LineId, PlanePoint, PointId};
use crate::game::{PointSet, PositionalGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    /// Before the first player's first or second move.
    Opening1,
    /// Before the third move, which fixes the case.
    Opening2,
    /// Labeling complete; the next reply is reduced to an orbit representative.
    Case1,
    Case2,
    /// Following the tables.
    Tabled,
    Finished,
}

/// The canonical plane the labels refer to.
pub(crate) struct Canon {
    pub game: Arc<PositionalGame>,
    pub lines: Vec<u32>,
    pub index_lines: [u32; 4],
}

pub(crate) fn canon() -> &'static Canon {
    static CANON: OnceLock<Canon> = OnceLock::new();
    CANON.get_or_init(|| {
        let game = Arc::new(PositionalGame::from_plane(&canonical_pi4()));
        for p in 0..16 {
            assert_eq!(game.point_name(p), PlanePoint::from_id(p, 4).to_string());
        }
        let lines = game.lines().iter().map(|l| l.0).collect();
        Canon { game, lines, index_lines: [0xf, 0xf0, 0xf00, 0xf000] }
    })
}

/// Canonical id of a label such as `r1` or `a2`.
pub(crate) fn label(name: &str) -> PointId {
    canon().game.point_id(name).expect("canonical label")
}

/// The partial isomorphism from the played plane onto the canonical one,
/// built while the opening is played.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingState {
    pub(crate) labels: Vec<Option<PointId>>,
    pub(crate) index_class: Vec<LineId>,
    pub(crate) phase: Phase,
    pub(crate) case: Option<Case>,
    /// The plies already taken into account.
    pub(crate) history: Vec<PointId>,
}

impl LabelingState {
    pub fn new(num_points: usize) -> Self {
        LabelingState {
            labels: vec![None; num_points],
            index_class: Vec::new(),
            phase: Phase::Opening1,
            case: None,
            history: Vec::new(),
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn case(&self) -> Option<Case> {
        self.case
    }

    /// Canonical label of a point of the played plane.
    pub fn label(&self, p: PointId) -> Option<PlanePoint> {
        self.labels.get(p).copied().flatten().map(|c| PlanePoint::from_id(c, 4))
    }

    /// The point carrying a canonical label.
    pub fn point(&self, label: PlanePoint) -> Option<PointId> {
        let c = label.id(4);
        self.labels.iter().position(|&l| l == Some(c))
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Lines of the played plane forming the index class, once known.
    pub fn index_class(&self) -> &[LineId] {
        &self.index_class
    }

    pub(crate) fn canonical(&self, p: PointId) -> PointId {
        self.labels[p].expect("labeled point")
    }

    pub(crate) fn abstract_point(&self, c: PointId) -> PointId {
        self.labels.iter().position(|&l| l == Some(c)).expect("complete labeling")
    }
}

/// Completes a partial labeling to an isomorphism onto the canonical plane
/// that carries the recorded index class onto the canonical index class.
/// Unlabeled points are taken in ascending order and given the smallest
/// consistent label.
pub fn extend_labeling(game: &PositionalGame, partial: &LabelingState) -> Result<Vec<PointId>, StrategyError> {
    let c = canon();
    if game.num_points() != 16 || game.lines().len() != 20 || game.lines().iter().any(|l| l.len() != 4) {
        return Err(StrategyError::Labeling("not an affine plane of order 4".into()));
    }
    let mut labels = partial.labels.clone();
    if labels.len() != 16 {
        return Err(StrategyError::Labeling("labeling does not match the plane".into()));
    }
    let mut used = 0u32;
    for l in labels.iter().flatten() {
        if used >> l & 1 == 1 {
            return Err(StrategyError::Labeling("labeling is not injective".into()));
        }
        used |= 1 << l;
    }
    let is_index: Vec<bool> = (0..game.lines().len()).map(|l| partial.index_class.contains(&l)).collect();
    if (0..16).any(|p| !consistent_at(game, c, &labels, &is_index, p)) {
        return Err(StrategyError::Labeling("anchors are not line-compatible".into()));
    }
    let order: Vec<PointId> = (0..16).filter(|&p| labels[p].is_none()).collect();
    if assign(game, c, &mut labels, &is_index, &order, used) {
        Ok(labels.into_iter().map(|l| l.expect("assigned")).collect())
    } else {
        Err(StrategyError::Labeling("no isomorphism extends the anchors".into()))
    }
}

fn assign(
    game: &PositionalGame,
    c: &Canon,
    labels: &mut [Option<PointId>],
    is_index: &[bool],
    order: &[PointId],
    used: u32,
) -> bool {
    let Some((&u, rest)) = order.split_first() else {
        return true;
    };
    for lbl in 0..16 {
        if used >> lbl & 1 == 1 {
            continue;
        }
        labels[u] = Some(lbl);
        if consistent_at(game, c, labels, is_index, u) && assign(game, c, labels, is_index, rest, used | 1 << lbl) {
            return true;
        }
    }
    labels[u] = None;
    false
}

/// Every line through `p` with two or more labeled points lands inside a
/// canonical line, index lines inside index lines and others elsewhere.
fn consistent_at(game: &PositionalGame, c: &Canon, labels: &[Option<PointId>], is_index: &[bool], p: PointId) -> bool {
    if labels[p].is_none() {
        return true;
    }
    game.lines_through(p).iter().all(|&l| {
        let image = game.lines()[l].iter().filter_map(|q| labels[q]).fold(PointSet::EMPTY, |acc, q| acc.with(q)).0;
        if image.count_ones() < 2 {
            return true;
        }
        match c.lines.iter().find(|&&m| m & image == image) {
            Some(m) => c.index_lines.contains(m) == is_index[l],
            None => false,
        }
    })
}

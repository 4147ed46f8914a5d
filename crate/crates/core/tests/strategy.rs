use std::sync::Arc;

use proptest::prelude::*;
use xeno_core::designs::{canonical_pi4, plane_to_text};
use xeno_core::game::{parse_record, replay_record, GameState, Outcome, PositionalGame};
use xeno_core::strategy::{
    extend_labeling, verify_strategy, PaperStrategy, Phase, StrategyError, StrategyTables, PI4_TABLES,
};

#[test]
fn relabeled_planes_give_identical_reports() {
    let base = verify_strategy(&PaperStrategy::canonical());
    for seed in [1, 7, 99] {
        let plane = canonical_pi4().relabeled(seed);
        assert_ne!(plane_to_text(&plane), plane_to_text(&canonical_pi4()));
        let report = verify_strategy(&PaperStrategy::new(&plane).unwrap());
        assert!(report.is_ok(), "seed {seed}: {:?}", report.failures);
        assert_eq!(report.leaves, base.leaves);
        assert_eq!(report.length_histogram, base.length_histogram);
        assert_eq!(report.decisions, base.decisions);
    }
}

#[test]
fn removing_a_row_is_caught_with_a_refuting_record() {
    let text = PI4_TABLES.replace("  (a1), b2, (!a3), b4, (c3), c4, (!a4), !a2, XW(c2,b3)\n", "");
    assert_ne!(text, PI4_TABLES);
    let tables = StrategyTables::parse(&text).unwrap();
    let strategy = PaperStrategy::with_tables(&canonical_pi4(), tables).unwrap();
    let report = verify_strategy(&strategy);
    assert!(!report.is_ok());
    assert!(report.failure_count > 0);
    let failure = &report.failures[0];
    assert!(failure.reason.contains("no tabled reply"), "{}", failure.reason);
    // The record replays to the position where the strategy has no answer.
    let game = Arc::new(PositionalGame::from_plane(&canonical_pi4()));
    let state = replay_record(&parse_record(&failure.record).unwrap(), GameState::new(game)).unwrap();
    assert_eq!(state.winner(), Outcome::Ongoing);
}

#[test]
fn a_losing_reply_is_rejected_at_load() {
    // Replacing the closing c3 turns the double threat into a single one.
    let text = PI4_TABLES
        .replace("(c2|c4), a1, (!b1), a3, (!b2), c3, XW(b3,b4)", "(c2|c4), a1, (!b1), a3, (!b2), a4, XW(b3,b4)");
    let tables = StrategyTables::parse(&text).unwrap();
    assert!(matches!(PaperStrategy::with_tables(&canonical_pi4(), tables), Err(StrategyError::TableCheck { .. })));
}

#[test]
fn rejects_planes_of_other_orders() {
    let p3 = xeno_core::designs::affine_plane_prime(3).unwrap();
    assert!(matches!(PaperStrategy::new(&p3), Err(StrategyError::Plane(_))));
}

fn play_against(strategy: &PaperStrategy, replies: &[usize]) -> GameState {
    let mut state = GameState::new(strategy.game().clone());
    let mut lab = strategy.initial_labeling();
    let mut k = 0;
    loop {
        let (mv, next) = strategy.next_move(&lab, &state).unwrap();
        lab = next;
        state.play(mv).unwrap();
        if state.winner().is_over() {
            return state;
        }
        let free: Vec<usize> = state.free().iter().collect();
        state.play(free[replies[k] % free.len()]).unwrap();
        k += 1;
        if state.winner().is_over() {
            return state;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategy_wins_against_arbitrary_replies(seed in 0u64..1000, replies in prop::collection::vec(0usize..16, 8)) {
        let strategy = PaperStrategy::new(&canonical_pi4().relabeled(seed)).unwrap();
        let state = play_against(&strategy, &replies);
        prop_assert!(matches!(state.winner(), Outcome::XenoWin(_)));
        prop_assert!(state.history().len() <= 15);
    }

    #[test]
    fn labeling_is_a_line_preserving_bijection(seed in 0u64..1000, replies in prop::collection::vec(0usize..16, 8)) {
        let strategy = PaperStrategy::new(&canonical_pi4().relabeled(seed)).unwrap();
        let state = play_against(&strategy, &replies);
        let mut prefix = GameState::new(strategy.game().clone());
        for &p in &state.history()[..6] {
            prefix.play(p).unwrap();
        }
        let lab = strategy.labeling_for(&prefix).unwrap();
        prop_assert!(matches!(lab.phase(), Phase::Case1 | Phase::Case2));
        prop_assert!(lab.is_complete());
        let canonical = PositionalGame::from_plane(&canonical_pi4());
        let mut images = std::collections::BTreeSet::new();
        for line in strategy.game().lines() {
            let image: Vec<String> = line.iter().map(|p| lab.label(p).unwrap().to_string()).collect();
            let ids: xeno_core::game::PointSet = image.iter().map(|n| canonical.point_id(n).unwrap()).collect();
            prop_assert!(canonical.lines().contains(&ids));
            images.insert(ids.0);
        }
        prop_assert_eq!(images.len(), 20);
    }

    #[test]
    fn extension_agrees_with_given_anchors(seed in 0u64..1000, reply in 0usize..15) {
        let plane = canonical_pi4().relabeled(seed);
        let game = PositionalGame::from_plane(&plane);
        let strategy = PaperStrategy::new(&plane).unwrap();
        let mut state = GameState::new(strategy.game().clone());
        let (first, lab) = strategy.next_move(&strategy.initial_labeling(), &state).unwrap();
        prop_assert_eq!(lab.label(first).unwrap().to_string(), "r1");
        state.play(first).unwrap();
        let free: Vec<usize> = state.free().iter().collect();
        state.play(free[reply]).unwrap();
        let (_, lab) = strategy.next_move(&lab, &state).unwrap();
        prop_assert_eq!(lab.index_class().len(), 4);
        let full = extend_labeling(&game, &lab).unwrap();
        for (p, &image) in full.iter().enumerate() {
            if let Some(l) = lab.label(p) {
                prop_assert_eq!(image, l.id(4));
            }
        }
        let canonical = PositionalGame::from_plane(&canonical_pi4());
        for line in game.lines() {
            let image: xeno_core::game::PointSet = line.iter().map(|p| full[p]).collect();
            prop_assert!(canonical.lines().contains(&image));
        }
    }
}

//! Acceptance suite: one PASS/FAIL line per primary criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines show up in the
//! output of `cargo test`. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use xeno_core::designs::{
    affine_plane_prime, build_affine_plane, canonical_mols4, canonical_pi4, resolve_by_last_square, validate_plane,
    AffinePlane, PlanePoint,
};
use xeno_core::game::{format_record, parse_record, replay_record, GameState, Outcome, PositionalGame};
use xeno_core::paratopisms::{
    autoparatopism_group, is_autoparatopism, orbits, stabilizer, Paratopism, PermGroup, PSI1, PSI2,
};
use xeno_core::solver::{verify_strategy_positions, GameValue, SolveOptions, Solver, Symmetry};
use xeno_core::strategy::{decision_points, random_decision_points, verify_strategy, PaperStrategy, StrategyTables};

// Pinned tolerances.
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(1);
const PAIR_COVERAGE_LIMIT: Duration = Duration::from_secs(1);
const PARATOPISM_LIMIT: Duration = Duration::from_secs(30);
const VERIFY_LIMIT: Duration = Duration::from_secs(60);
const SOLVER_LIMIT: Duration = Duration::from_secs(600);
/// Leaves of the full strategy tree from the empty board.
const STRATEGY_LEAVES: u64 = 61035;
const MAX_GAME_LENGTH: usize = 15;
const AGREEMENT_DEPTH: usize = 7;
const AGREEMENT_SAMPLES: usize = 1000;
const AGREEMENT_SEED: u64 = 2024;

const RESOLVED_BLOCKS: [&str; 16] = [
    "r1 c1 a1 b1",
    "r4 c2 a3 b4",
    "r2 c3 a4 b2",
    "r3 c4 a2 b3",
    "r3 c3 a1 b4",
    "r1 c2 a2 b2",
    "r4 c1 a4 b3",
    "r2 c4 a3 b1",
    "r2 c1 a2 b4",
    "r3 c2 a4 b1",
    "r1 c3 a3 b3",
    "r4 c4 a1 b2",
    "r3 c1 a3 b2",
    "r2 c2 a1 b3",
    "r4 c3 a2 b1",
    "r1 c4 a4 b4",
];
const INDEX_LINES: [&str; 4] = ["r1 r2 r3 r4", "c1 c2 c3 c4", "a1 a2 a3 a4", "b1 b2 b3 b4"];

type Outcome_ = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome_);

fn lines_as_sets(plane: &AffinePlane) -> BTreeSet<BTreeSet<String>> {
    (0..plane.lines().len()).map(|l| plane.line_names(l).into_iter().map(String::from).collect()).collect()
}

fn sets(texts: &[&str]) -> BTreeSet<BTreeSet<String>> {
    texts.iter().map(|t| t.split(' ').map(String::from).collect()).collect()
}

fn construction() -> Outcome_ {
    let rtd = resolve_by_last_square(&canonical_mols4()).map_err(|e| e.to_string())?;
    let plane = build_affine_plane(&rtd).map_err(|e| e.to_string())?;
    let shape = (plane.points().len(), plane.lines().len(), plane.classes().len());
    if shape != (16, 20, 5) {
        return Err(format!("shape {shape:?}"));
    }
    let mut expected = sets(&RESOLVED_BLOCKS);
    expected.extend(sets(&INDEX_LINES));
    if lines_as_sets(&plane) != expected {
        return Err("line set differs from the 16 blocks plus the index class".into());
    }
    // Resolution class k is blocks 4k..4k+4 of the expected list.
    for (k, class) in rtd.resolution().expect("resolved").iter().enumerate() {
        let got: BTreeSet<BTreeSet<String>> =
            class.blocks.iter().map(|&b| rtd.blocks()[b].iter().map(|p| p.to_string()).collect()).collect();
        if got != sets(&RESOLVED_BLOCKS[4 * k..4 * k + 4]) || class.label.to_string() != format!("g{}", k + 1) {
            return Err(format!("parallel class {} differs", class.label));
        }
    }
    Ok("16 points, 20 lines, 5 classes; lines = 16 blocks + 4 groups".into())
}

fn pair_coverage() -> Outcome_ {
    let mut parts = Vec::new();
    for (name, plane, pairs) in [
        ("pi2", affine_plane_prime(2).map_err(|e| e.to_string())?, 6),
        ("pi3", affine_plane_prime(3).map_err(|e| e.to_string())?, 36),
        ("pi4", canonical_pi4(), 120),
    ] {
        let report = validate_plane(&plane);
        if !report.is_ok() {
            return Err(format!("{name}: {}", report.violations[0]));
        }
        // Independent count over point pairs.
        let n = plane.points().len();
        let mut checked = 0;
        for a in 0..n {
            for b in a + 1..n {
                let on = plane.lines().iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                if on != 1 {
                    return Err(format!("{name}: pair {a},{b} on {on} lines"));
                }
                checked += 1;
            }
        }
        if checked != pairs {
            return Err(format!("{name}: {checked} pairs"));
        }
        parts.push(format!("{name} {pairs} pairs"));
    }
    Ok(parts.join(", "))
}

fn pts(names: &[&str]) -> Vec<PlanePoint> {
    names.iter().map(|n| n.parse().expect("point")).collect()
}

fn setwise_fixed(g: &Paratopism, set: &[PlanePoint]) -> bool {
    let image: BTreeSet<PlanePoint> = set.iter().map(|&p| g.apply_to_point(p)).collect();
    image == set.iter().copied().collect()
}

fn autoparatopisms() -> Outcome_ {
    let pair = canonical_mols4().truncated(2);
    let (x1, o1) = (pts(&["r1", "r3", "c1"]), pts(&["r2", "r4"]));
    for text in [PSI1, PSI2] {
        let g: Paratopism = text.parse().map_err(|e: xeno_core::paratopisms::ParatopismError| e.to_string())?;
        if !is_autoparatopism(&g, &pair).map_err(|e| e.to_string())? {
            return Err(format!("{text} is not an autoparatopism"));
        }
        if !setwise_fixed(&g, &x1) || !setwise_fixed(&g, &o1) {
            return Err(format!("{text} moves the case-1 position"));
        }
    }
    let full = autoparatopism_group(&pair).map_err(|e| e.to_string())?;
    let case1 = stabilizer(&pair, &x1, &o1).map_err(|e| e.to_string())?;
    let case2 = stabilizer(&pair, &pts(&["r1", "r3", "a2"]), &pts(&["r2", "c1"])).map_err(|e| e.to_string())?;
    let generated = PermGroup::generate(&[PSI1.parse().unwrap(), PSI2.parse().unwrap()]);
    if case2.order() != 1 {
        return Err(format!("case-2 stabilizer has order {}", case2.order()));
    }
    if case1.elements() != generated.elements() {
        return Err(format!("case-1 stabilizer has order {}, <psi1, psi2> has {}", case1.order(), generated.order()));
    }
    Ok(format!(
        "psi1, psi2 fix the case-1 position; |Atp| = {}, case-1 stabilizer = <psi1,psi2> (order {}), case-2 trivial",
        full.order(),
        case1.order()
    ))
}

fn orbit_reduction() -> Outcome_ {
    let group = PermGroup::generate(&[PSI1.parse().unwrap(), PSI2.parse().unwrap()]);
    let legal = pts(&["c2", "c3", "c4", "a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"]);
    let orbs = orbits(&group, &legal).map_err(|e| e.to_string())?;
    let reps: Vec<String> = orbs.iter().map(|o| o.representative.to_string()).collect();
    if reps != ["c2", "c4", "a1", "a2"] {
        return Err(format!("representatives {reps:?}"));
    }
    Ok(format!("11 replies -> representatives {}", reps.join(", ")))
}

fn strategy_verification() -> Outcome_ {
    let report = verify_strategy(&PaperStrategy::canonical());
    if !report.is_ok() {
        let f = report.failures.first().map(|f| format!("{} ({})", f.record, f.reason)).unwrap_or_default();
        return Err(format!("{} failures, e.g. {f}", report.failure_count));
    }
    if report.leaves != STRATEGY_LEAVES || report.max_length != MAX_GAME_LENGTH {
        return Err(format!("{} leaves, max length {}", report.leaves, report.max_length));
    }
    Ok(format!(
        "{} leaves, all first-player wins, 0 draws, 0 second-player wins, max length {}",
        report.leaves, report.max_length
    ))
}

fn solve(game: PositionalGame, symmetry: bool) -> Result<GameValue, String> {
    let game = Arc::new(game);
    let symmetry = if symmetry { Symmetry::Automorphisms } else { Symmetry::None };
    let mut solver =
        Solver::new(game.clone(), &SolveOptions { symmetry, ..SolveOptions::default() }).map_err(|e| e.to_string())?;
    solver.value(&GameState::new(game)).map_err(|e| e.to_string())
}

fn solver_reproof() -> Outcome_ {
    let pi4 = PositionalGame::from_plane(&canonical_pi4());
    let mut parts = Vec::new();
    for (name, game, expected) in [
        ("pi2", PositionalGame::from_plane(&affine_plane_prime(2).unwrap()), GameValue::FirstPlayerWin),
        ("pi3", PositionalGame::from_plane(&affine_plane_prime(3).unwrap()), GameValue::FirstPlayerWin),
        ("3x3", PositionalGame::tic_tac_toe(), GameValue::Draw),
    ] {
        let (a, b) = (solve(game.clone(), false)?, solve(game, true)?);
        if a != expected || b != expected {
            return Err(format!("{name}: {a} / {b}"));
        }
        parts.push(format!("{name} {a}"));
    }
    let plain = solve(pi4.clone(), false)?;
    let game = Arc::new(pi4);
    let symmetry = Symmetry::paratopisms(&game).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut solver =
        Solver::new(game.clone(), &SolveOptions { symmetry, ..SolveOptions::default() }).map_err(|e| e.to_string())?;
    let reduced = solver.value(&GameState::new(game)).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if plain != GameValue::FirstPlayerWin || reduced != plain {
        return Err(format!("pi4: {plain} without symmetry, {reduced} with"));
    }
    if took > SOLVER_LIMIT {
        return Err(format!("pi4 with symmetry took {took:?}"));
    }
    parts.push(format!("pi4 {plain} (with and without symmetry, {} nodes reduced)", solver.stats().nodes));
    Ok(parts.join(", "))
}

fn agreement() -> Outcome_ {
    let strategy = PaperStrategy::canonical();
    let mut positions = decision_points(&strategy, AGREEMENT_DEPTH);
    let shallow = positions.len();
    positions.extend(random_decision_points(&strategy, AGREEMENT_SAMPLES, AGREEMENT_DEPTH, AGREEMENT_SEED));
    let mut solver = Solver::new(strategy.game().clone(), &SolveOptions::default()).map_err(|e| e.to_string())?;
    let report = verify_strategy_positions(&mut solver, &positions).map_err(|e| e.to_string())?;
    if !report.is_ok() {
        return Err(format!(
            "{} mismatches, first at {:?}",
            report.disagreements.len(),
            report.disagreements[0].history
        ));
    }
    Ok(format!("{shallow} positions to depth {AGREEMENT_DEPTH} + {AGREEMENT_SAMPLES} samples, 0 mismatches"))
}

fn notation() -> Outcome_ {
    let game = Arc::new(PositionalGame::from_plane(&canonical_pi4()));
    let mut texts: Vec<String> = [
        include_str!("../data/records/intro-game.rec"),
        include_str!("../data/records/intro-game-xw.rec"),
        include_str!("../data/records/intro-game-deviation.rec"),
    ]
    .iter()
    .map(|t| t.trim().to_string())
    .collect();
    let tables = StrategyTables::pi4();
    for case in &tables.cases {
        for row in &case.rows {
            for rec in row.expansions() {
                texts.push(format!("{}, {}", format_record(&case.opening), format_record(&rec)));
            }
        }
    }
    for text in &texts {
        let rec = parse_record(text).map_err(|e| format!("`{text}`: {e}"))?;
        replay_record(&rec, GameState::new(game.clone())).map_err(|e| format!("`{text}`: {e}"))?;
        if format_record(&rec) != *text {
            return Err(format!("`{text}` formats as `{}`", format_record(&rec)));
        }
    }
    let intro = replay_record(&parse_record(&texts[0]).unwrap(), GameState::new(game.clone())).unwrap();
    let line = match intro.winner() {
        Outcome::XenoWin(l) => game.line_names(l).join(" "),
        other => return Err(format!("introductory game ends {other:?}")),
    };
    if line != "r1 c4 a4 b4" {
        return Err(format!("introductory game won on {line}"));
    }
    Ok(format!("{} records (3 games + every expanded table row) round-trip", texts.len()))
}

fn out_of_scope() -> Outcome_ {
    let readme = include_str!("../../../README.md");
    if readme.contains("## Out of scope") && readme.contains("n > 4") && readme.contains("projective plane of order 4")
    {
        Ok("n > 4 and projective-plane draws not verified; documented in README".into())
    } else {
        Err("README lacks the out-of-scope section".into())
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("construction fidelity", Some(CONSTRUCTION_LIMIT), construction),
        ("pair coverage", Some(PAIR_COVERAGE_LIMIT), pair_coverage),
        ("autoparatopisms", Some(PARATOPISM_LIMIT), autoparatopisms),
        ("orbit reduction", None, orbit_reduction),
        ("strategy verification", Some(VERIFY_LIMIT), strategy_verification),
        ("independent re-proof", Some(SOLVER_LIMIT), solver_reproof),
        ("solver-strategy agreement", None, agreement),
        ("notation round-trip", None, notation),
        ("out of scope, stated", None, out_of_scope),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS  {name:<26} {took:>10.2?}  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<26} {took:>10.2?}  {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

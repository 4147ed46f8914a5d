use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use xeno_core::designs::{
    affine_plane_prime, build_affine_plane, canonical_mols4, canonical_pi4, plane_from_json, plane_from_text,
    prime_mols, resolve_by_last_square, validate_plane, AffinePlane, PlaneFile,
};
use xeno_core::game::{annotate, format_record, parse_record, replay_record, GameState, Outcome, PositionalGame};
use xeno_core::solver::{SolveOptions, Solver, Symmetry};
use xeno_core::strategy::{verify_strategy, PaperStrategy};

use crate::report::{PlaneBuildReport, ReplayReport, Report, SolveReport, ValidateReport, VerifyReport};
use crate::{CliError, Command, Construction, PlaneCommand, ReplayArgs, SolveArgs, VerifyArgs};

/// Runs every subcommand except `serve`.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Plane(PlaneCommand::Build { order, from }) => build(*order, *from),
        Command::Plane(PlaneCommand::Validate { plane }) => Ok(Report::Validate(validate(plane)?)),
        Command::Solve(args) => solve(args),
        Command::VerifyStrategy(args) => verify(args),
        Command::Replay(args) => replay(args),
        Command::Serve(_) => Err(CliError::Usage("`serve` runs the service and has no report".into())),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// A builtin plane (`pi2`, `pi3`, `pi4`) or a plane file in the text or
/// JSON format.
pub fn load_plane(source: &str) -> Result<AffinePlane, CliError> {
    match source {
        "pi2" => Ok(affine_plane_prime(2)?),
        "pi3" => Ok(affine_plane_prime(3)?),
        "pi4" => Ok(canonical_pi4()),
        path => {
            let text = read(Path::new(path))?;
            if text.trim_start().starts_with('{') {
                Ok(plane_from_json(&text)?)
            } else {
                Ok(plane_from_text(&text)?)
            }
        }
    }
}

/// The game played on a plane source, `ttt` for the classic board.
pub fn load_game(source: &str, stretch: bool) -> Result<PositionalGame, CliError> {
    if source == "ttt" {
        if stretch {
            return Err(CliError::Usage("the 3x3 board has no projective completion".into()));
        }
        return Ok(PositionalGame::tic_tac_toe());
    }
    let plane = load_plane(source)?;
    if stretch {
        Ok(PositionalGame::projective_completion(&plane)?)
    } else {
        Ok(PositionalGame::from_plane(&plane))
    }
}

fn build(order: usize, from: Construction) -> Result<Report, CliError> {
    let plane = match (from, order) {
        (Construction::Mols, 4) => build_affine_plane(&resolve_by_last_square(&canonical_mols4())?)?,
        (Construction::Mols, n) => build_affine_plane(&resolve_by_last_square(&prime_mols(n)?)?)?,
        (Construction::Field, n) => affine_plane_prime(n)?,
    };
    Ok(Report::PlaneBuild(PlaneBuildReport { plane: PlaneFile::from(&plane) }))
}

fn validate(source: &str) -> Result<ValidateReport, CliError> {
    let plane = match load_plane(source) {
        Ok(plane) => plane,
        Err(CliError::Io { path, source }) => return Err(CliError::Io { path, source }),
        Err(e) => {
            return Ok(ValidateReport {
                source: source.to_string(),
                ok: false,
                points: 0,
                lines: 0,
                classes: 0,
                violations: vec![e.to_string()],
            })
        }
    };
    let report = validate_plane(&plane);
    Ok(ValidateReport {
        source: source.to_string(),
        ok: report.is_ok(),
        points: plane.points().len(),
        lines: plane.lines().len(),
        classes: plane.classes().len(),
        violations: report.violations.iter().map(ToString::to_string).collect(),
    })
}

fn solve(args: &SolveArgs) -> Result<Report, CliError> {
    let game = Arc::new(load_game(&args.plane, args.stretch)?);
    let mut state = GameState::new(game.clone());
    if let Some(path) = &args.from {
        state = replay_record(&parse_record(read(path)?.trim())?, state)?;
    }
    let symmetry = if !args.symmetry {
        Symmetry::None
    } else if args.plane == "pi4" && !args.stretch {
        Symmetry::paratopisms(&game)?
    } else {
        Symmetry::Automorphisms
    };
    let started = Instant::now();
    let mut solver = Solver::new(game.clone(), &SolveOptions { symmetry, symmetry_depth: args.symmetry_depth })?;
    let solution = solver.solve(&state)?;
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let mut end = state.clone();
    for &p in &solution.principal_variation {
        end.play(p)?;
    }
    Ok(Report::Solve(SolveReport {
        plane: if args.stretch { format!("{} (projective)", args.plane) } else { args.plane.clone() },
        points: game.num_points(),
        lines: game.lines().len(),
        symmetry: args.symmetry.then(|| solver.symmetry_order()),
        start: format_record(&annotate(&state)),
        value: solution.value,
        line: format_record(&annotate(&end)),
        nodes: solution.stats.nodes,
        table_entries: solution.stats.table_entries,
        elapsed_ms,
    }))
}

fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let mut plane = load_plane(&args.plane)?;
    if let Some(seed) = args.relabel_seed {
        plane = plane.relabeled(seed);
    }
    let started = Instant::now();
    let strategy = PaperStrategy::new(&plane)?;
    let report = verify_strategy(&strategy);
    Ok(Report::Verify(VerifyReport {
        plane: args.plane.clone(),
        relabel_seed: args.relabel_seed,
        report,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }))
}

fn replay(args: &ReplayArgs) -> Result<Report, CliError> {
    let game = Arc::new(load_game(&args.plane, false)?);
    let record = parse_record(read(&args.file)?.trim())?;
    let state = replay_record(&record, GameState::new(game.clone()))?;
    let (outcome, line) = match state.winner() {
        Outcome::XenoWin(l) => ("XenoWin", Some(l)),
        Outcome::OpheliaWin(l) => ("OpheliaWin", Some(l)),
        Outcome::Draw => ("Draw", None),
        Outcome::Ongoing => ("Ongoing", None),
    };
    let mut annotated = annotate(&state);
    annotated.double_threat = record.double_threat.clone();
    Ok(Report::Replay(ReplayReport {
        plane: args.plane.clone(),
        record: format_record(&annotated),
        moves: state.history().len(),
        outcome: outcome.to_string(),
        line: line.map(|l| game.line_names(l).into_iter().map(String::from).collect()),
        double_threat: record.double_threat,
    }))
}

//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 ok, 1 claim disagrees with the oracle, 2 infeasible
//! construction, 3 enumeration guard exceeded, 64 usage, 65 invalid data.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::constructor::{construct, ConstructError, Construction, ConstructionRequest};
use crate::enumerator::{EnumError, EnumerationQuery, Enumerator, ResourceGuard, SearchConfig};
use crate::existence::{
    audit, claimed_yes_pairs, classify_pair, corollary_pair_count, AuditRecord, ExistenceError,
};
use crate::grid::{symmetry_classes, Cell, Direction, GridError, GridSpec, MoveSet, Walk};
use crate::ledger::{entries_for, Measure};
use crate::rectifiable::{concatenate, path_length, polyline_of_walk, Chain};
use crate::svg::{render, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Largest side for which `pairs` also enumerates the pairs directly.
const PAIRS_ENUMERATION_MAX: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "gridwalk",
    version,
    about = "Maximum self-avoiding walks on square grids"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a maximum walk from a start cell, or a covering walk to a target.
    Construct(ConstructArgs),
    /// Count maximum walks by exhaustive search.
    Enumerate(EnumerateArgs),
    /// Classify a cell pair and audit the claim against exhaustive search.
    Check(CheckArgs),
    /// Count adjacent-pair claims on an even grid.
    Pairs(PairsArgs),
    /// Polyline length of a walk.
    Length(WalkInput),
    /// Concatenate endpoint-linked walks and count cell visits.
    Chain(ChainArgs),
    /// Draw a walk as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    start: Cell,
    #[arg(long, conflicts_with = "target")]
    dir: Option<Direction>,
    #[arg(long)]
    target: Option<Cell>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "rook")]
    moves: MoveSet,
    /// Without a start, every start is enumerated and summarised by symmetry class.
    #[arg(long)]
    start: Option<Cell>,
    /// Only count walks ending here.
    #[arg(long, requires = "start")]
    end: Option<Cell>,
    /// Omit the list of maximum walks.
    #[arg(long)]
    count_only: bool,
    /// Cap on listed walks.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    /// Lift the default size guard (rook n <= 6, king n <= 5).
    #[arg(long)]
    force: bool,
    /// Unpruned sequential search.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: Cell,
    #[arg(long)]
    b: Cell,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct PairsArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct WalkInput {
    /// Walk JSON file, or `-` for stdin.
    walk: PathBuf,
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[arg(required = true)]
    walks: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    walk: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 40)]
    cell_px: u32,
    #[arg(long)]
    no_grid: bool,
    #[arg(long)]
    no_markers: bool,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        let code = match e {
            EnumError::ResourceLimit { .. } | EnumError::Capacity { .. } => EXIT_GUARD,
            EnumError::SameEndpoints(_) | EnumError::Grid(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match e {
            ConstructError::Internal(_) => EXIT_DATA,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ExistenceError> for Failure {
    fn from(e: ExistenceError) -> Self {
        Failure::usage(e.to_string())
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string(value).map_err(|e| Failure::data(e.to_string()))?;
        writeln!(self.out, "{text}").map_err(|e| Failure::data(e.to_string()))
    }

    fn read_walk(&mut self, path: &Path) -> Result<Walk, Failure> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        };
        Walk::from_json_str(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, stdin: &mut dyn Read) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { out, err, stdin };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(&mut io, a),
        Command::Enumerate(a) => cmd_enumerate(&mut io, a),
        Command::Check(a) => cmd_check(&mut io, a),
        Command::Pairs(a) => cmd_pairs(&mut io, a),
        Command::Length(a) => cmd_length(&mut io, a),
        Command::Chain(a) => cmd_chain(&mut io, a),
        Command::Render(a) => cmd_render(&mut io, a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn cmd_construct(io: &mut Io<'_>, a: ConstructArgs) -> Result<i32, Failure> {
    let grid = GridSpec::rook(a.n)?;
    let req = ConstructionRequest {
        grid,
        start: a.start,
        first_direction: a.dir,
        target: a.target,
    };
    match construct(&req)? {
        Construction::Walk(w) => {
            io.json(&w.to_json())?;
            Ok(EXIT_OK)
        }
        Construction::Infeasible => {
            let target = a.target.expect("infeasible only with a target");
            let _ = writeln!(
                io.err,
                "infeasible: no walk from {} to {target} covers all {} cells; run `check --n {} --a {},{} --b {},{}` for the exact maximum",
                a.start,
                grid.cell_count(),
                a.n,
                a.start.row,
                a.start.col,
                target.row,
                target.col
            );
            Ok(EXIT_INFEASIBLE)
        }
    }
}

#[derive(Serialize)]
struct EnumerationJson {
    n: usize,
    start: Cell,
    #[serde(skip_serializing_if = "Option::is_none")]
    end: Option<Cell>,
    moves: MoveSet,
    max_steps: Option<usize>,
    count: u64,
    nodes_expanded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    paths: Option<Vec<Vec<Cell>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    discrepancies: Vec<DiscrepancyJson>,
}

#[derive(Serialize)]
struct ClassJson {
    cells: Vec<Cell>,
    max_steps: usize,
    count_each: u64,
    count_total: u64,
}

#[derive(Serialize)]
struct TotalJson {
    n: usize,
    moves: MoveSet,
    total: u64,
    classes: Vec<ClassJson>,
    nodes_expanded: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    discrepancies: Vec<DiscrepancyJson>,
}

#[derive(Serialize)]
struct DiscrepancyJson {
    id: &'static str,
    claimed: u64,
    observed: u64,
    note: &'static str,
}

fn cmd_enumerate(io: &mut Io<'_>, a: EnumerateArgs) -> Result<i32, Failure> {
    let grid = GridSpec::new(a.n, a.moves)?;
    let guard = if a.force {
        ResourceGuard::forced()
    } else {
        ResourceGuard::default()
    };
    let config = if a.oracle {
        SearchConfig::oracle()
    } else {
        SearchConfig::fast()
    }
    .with_guard(guard);
    let engine = Enumerator::new(config);
    let discrepancy = |measure_matches: &dyn Fn(&Measure) -> Option<u64>| -> Vec<DiscrepancyJson> {
        entries_for(&grid)
            .filter_map(|e| {
                let observed = measure_matches(&e.measure)?;
                (observed != e.claimed).then_some(DiscrepancyJson {
                    id: e.id,
                    claimed: e.claimed,
                    observed,
                    note: e.note,
                })
            })
            .collect()
    };

    let Some(start) = a.start else {
        let totals = engine.total_max_walk_count(grid)?;
        let classes: Vec<ClassJson> = symmetry_classes(grid.n())
            .into_iter()
            .map(|cells| {
                let first = totals.for_cell(cells[0]).expect("every cell enumerated");
                let (max_steps, count_each) = (first.max_steps, first.count);
                let count_total = cells
                    .iter()
                    .map(|&c| totals.for_cell(c).expect("enumerated").count)
                    .sum();
                ClassJson {
                    cells,
                    max_steps,
                    count_each,
                    count_total,
                }
            })
            .collect();
        let discrepancies = discrepancy(&|m| match *m {
            Measure::TotalMaxWalkCount => Some(totals.total),
            Measure::MaxWalkCount { representative } => {
                totals.for_cell(representative).map(|s| s.count)
            }
            Measure::LongestFrom { start } => totals.for_cell(start).map(|s| s.max_steps as u64),
            Measure::LongestBetween { .. } => None,
        });
        report_discrepancies(io, &discrepancies);
        io.json(&TotalJson {
            n: grid.n(),
            moves: grid.moves(),
            total: totals.total,
            classes,
            nodes_expanded: totals.nodes_expanded,
            discrepancies,
        })?;
        return Ok(EXIT_OK);
    };

    let mut query = match a.end {
        Some(end) => EnumerationQuery::between(grid, start, end),
        None => EnumerationQuery::from_start(grid, start),
    };
    if !a.count_only {
        query = query.collecting(Some(a.limit));
    }
    let r = engine.run(&query)?;
    let discrepancies = discrepancy(&|m| match *m {
        Measure::MaxWalkCount { representative } if a.end.is_none() && representative == start => {
            Some(r.count_max_walks)
        }
        Measure::LongestFrom { start: s } if a.end.is_none() && s == start => {
            r.max_steps.map(|m| m as u64)
        }
        Measure::LongestBetween { a: x, b: y } if Some(y) == a.end && x == start => {
            r.max_steps.map(|m| m as u64)
        }
        _ => None,
    });
    report_discrepancies(io, &discrepancies);
    io.json(&EnumerationJson {
        n: grid.n(),
        start,
        end: a.end,
        moves: grid.moves(),
        max_steps: r.max_steps,
        count: r.count_max_walks,
        nodes_expanded: r.nodes_expanded,
        paths: r
            .paths
            .map(|ps| ps.into_iter().map(Walk::into_cells).collect()),
        discrepancies,
    })?;
    Ok(EXIT_OK)
}

fn report_discrepancies(io: &mut Io<'_>, items: &[DiscrepancyJson]) {
    for d in items {
        let _ = writeln!(
            io.err,
            "reference discrepancy [{}]: claimed {}, oracle {}",
            d.id, d.claimed, d.observed
        );
    }
}

fn cmd_check(io: &mut Io<'_>, a: CheckArgs) -> Result<i32, Failure> {
    let grid = GridSpec::rook(a.n)?;
    let claim = classify_pair(&grid, a.a, a.b)?;
    let guard = if a.force {
        ResourceGuard::forced()
    } else {
        ResourceGuard::default()
    };
    let oracle = Enumerator::new(SearchConfig::fast().with_guard(guard));
    let verdict = audit(&claim, &oracle)?;
    io.json(&AuditRecord::from(&verdict))?;
    Ok(if verdict.agreement.is_disagreement() {
        EXIT_DISAGREE
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct PairsJson {
    n: usize,
    formula: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn cmd_pairs(io: &mut Io<'_>, a: PairsArgs) -> Result<i32, Failure> {
    if !a.n.is_multiple_of(2) || a.n < 4 {
        return Err(Failure::usage(format!(
            "pairs needs an even side of at least 4, got {}",
            a.n
        )));
    }
    let formula = corollary_pair_count((a.n / 2) as u64);
    let enumerated = (a.n <= PAIRS_ENUMERATION_MAX)
        .then(|| claimed_yes_pairs(&GridSpec::rook(a.n).expect("n >= 4")).len() as u64);
    io.json(&PairsJson {
        n: a.n,
        formula,
        enumerated,
        matches: enumerated.map(|e| e == formula),
    })?;
    Ok(EXIT_OK)
}

fn cmd_length(io: &mut Io<'_>, a: WalkInput) -> Result<i32, Failure> {
    let walk = io.read_walk(&a.walk)?;
    let length = path_length(&polyline_of_walk(&walk));
    writeln!(io.out, "{length:?}").map_err(|e| Failure::data(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_chain(io: &mut Io<'_>, a: ChainArgs) -> Result<i32, Failure> {
    let walks = a
        .walks
        .iter()
        .map(|p| io.read_walk(p))
        .collect::<Result<Vec<_>, _>>()?;
    let chain = Chain::new(walks).map_err(|e| Failure::data(e.to_string()))?;
    io.json(&concatenate(&chain))?;
    Ok(EXIT_OK)
}

fn cmd_render(io: &mut Io<'_>, a: RenderArgs) -> Result<i32, Failure> {
    let mut spec = RenderSpec::with_cell_px(a.cell_px).ok_or_else(|| {
        Failure::usage(format!(
            "--cell-px must be at least {}",
            RenderSpec::MIN_CELL_PX
        ))
    })?;
    spec.show_grid = !a.no_grid;
    spec.start_marker = !a.no_markers;
    spec.end_marker = !a.no_markers;
    let walk = io.read_walk(&a.walk)?;
    let svg = render(&walk, &spec);
    match a.out {
        Some(path) => {
            fs::write(&path, svg).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        None => io
            .out
            .write_all(svg.as_bytes())
            .map_err(|e| Failure::data(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

/// Runs against the process's real stdio.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let stdin = io::stdin();
    run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        &mut stdin.lock(),
    )
}

//! Deterministic construction of maximum-length rook walks.
//!
//! Large grids are reduced by peeling two-line bands off a side that holds
//! no fixed endpoint. A walk through the remaining core is then rerouted
//! through the band: one step along the core boundary, between cells at
//! positions `a` and `a+1`, is replaced by a U-shaped sweep of the whole
//! band that leaves from `a` and comes back at `a+1`. Bands are balanced in
//! colour, so the core keeps the parity structure of the full grid.
//!
//! When both endpoints of a path are fixed and no band can be peeled, the
//! rectangle is cut in two with one endpoint on each side, joining a pair of
//! cells across the cut; the exact Hamiltonian path test in `rect` decides
//! which cuts are usable. Small pieces are solved by bitmask search. Every
//! output is checked with [`validate_walk`](crate::grid::validate_walk)
//! before it is returned.

mod patch;
pub(crate) mod rect;

use thiserror::Error;

use crate::grid::{Cell, Direction, GridError, GridSpec, MoveSet, Symmetry, Walk};
use patch::Patch;
use rect::{hamiltonian_path_exists, Rect, Side};

/// Rectangles up to this area go straight to the bitmask search.
const BASE_AREA: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("construction is only defined for rook grids")]
    NotRook,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("cannot leave {start} towards {dir}")]
    IllegalDirection { start: Cell, dir: Direction },
    #[error("start and target are the same cell {0}")]
    SameEndpoints(Cell),
    #[error("a target cell is required")]
    MissingTarget,
    #[error("a first direction cannot be combined with a target")]
    DirectionWithTarget,
    #[error("internal construction produced an invalid walk: {0}")]
    Internal(String),
}

/// What to build: a walk from `start`, optionally constrained in its first
/// step, or a covering walk from `start` to `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionRequest {
    pub grid: GridSpec,
    pub start: Cell,
    pub first_direction: Option<Direction>,
    pub target: Option<Cell>,
}

impl ConstructionRequest {
    pub fn from_start(grid: GridSpec, start: Cell, first_direction: Option<Direction>) -> Self {
        Self {
            grid,
            start,
            first_direction,
            target: None,
        }
    }

    pub fn between(grid: GridSpec, start: Cell, target: Cell) -> Self {
        Self {
            grid,
            start,
            first_direction: None,
            target: Some(target),
        }
    }

    fn check(&self) -> Result<(), ConstructError> {
        if self.grid.moves() != MoveSet::Rook {
            return Err(ConstructError::NotRook);
        }
        self.grid.check(self.start)?;
        if let Some(t) = self.target {
            self.grid.check(t)?;
            if t == self.start {
                return Err(ConstructError::SameEndpoints(t));
            }
            if self.first_direction.is_some() {
                return Err(ConstructError::DirectionWithTarget);
            }
        }
        if let Some(dir) = self.first_direction {
            if dir.is_diagonal() || self.grid.step(self.start, dir).is_none() {
                return Err(ConstructError::IllegalDirection {
                    start: self.start,
                    dir,
                });
            }
        }
        Ok(())
    }
}

/// Outcome of [`construct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Walk(Walk),
    /// No covering walk joins the requested endpoints.
    Infeasible,
}

/// Row-by-row boustrophedon from `(1,1)`: left to right on odd rows, right
/// to left on even rows.
pub fn serpentine(grid: &GridSpec) -> Result<Walk, ConstructError> {
    if grid.moves() != MoveSet::Rook {
        return Err(ConstructError::NotRook);
    }
    let n = grid.n();
    let cells = (1..=n)
        .flat_map(|row| {
            let cols: Box<dyn Iterator<Item = usize>> = if row % 2 == 1 {
                Box::new(1..=n)
            } else {
                Box::new((1..=n).rev())
            };
            cols.map(move |col| Cell::new(row, col))
        })
        .collect();
    Ok(Walk::from_trusted(*grid, cells))
}

/// Grid whose cells stand for the lattice vertices of `grid`; a walk along
/// vertices of an `n x n` grid is a cell walk on the `(n+1) x (n+1)` one.
pub fn vertex_lattice(grid: &GridSpec) -> GridSpec {
    GridSpec::new(grid.n() + 1, grid.moves()).expect("side only grows")
}

/// Dispatches on whether the request names a target.
pub fn construct(req: &ConstructionRequest) -> Result<Construction, ConstructError> {
    if req.target.is_some() {
        Ok(construct_between(req)?.map_or(Construction::Infeasible, Construction::Walk))
    } else {
        construct_from(req).map(Construction::Walk)
    }
}

/// Longest walk from `req.start` whose first step goes in
/// `req.first_direction`. Without a direction, the first of N, E, S, W that
/// reaches the overall maximum is used.
pub fn construct_from(req: &ConstructionRequest) -> Result<Walk, ConstructError> {
    req.check()?;
    let grid = req.grid;
    match req.first_direction {
        Some(dir) => walk_from(&grid, req.start, dir),
        None => {
            let bound = grid.parity_step_bound(req.start, None);
            let mut best: Option<Walk> = None;
            for dir in Direction::ORTHOGONAL {
                if grid.step(req.start, dir).is_none() {
                    continue;
                }
                let w = walk_from(&grid, req.start, dir)?;
                let reached = w.steps() == bound;
                if best.as_ref().is_none_or(|b| w.steps() > b.steps()) {
                    best = Some(w);
                }
                if reached {
                    break;
                }
            }
            Ok(best.expect("every cell of a grid with n >= 2 has a rook neighbour"))
        }
    }
}

/// Walk from `req.start` to `req.target` through every cell, or `None` if
/// there is none.
pub fn construct_between(req: &ConstructionRequest) -> Result<Option<Walk>, ConstructError> {
    req.check()?;
    let Some(target) = req.target else {
        return Err(ConstructError::MissingTarget);
    };
    let rect = Rect::square(req.grid.n());
    hamiltonian_path(&rect, req.start, target)
        .map(|cells| finish(&req.grid, cells))
        .transpose()
}

fn finish(grid: &GridSpec, cells: Vec<Cell>) -> Result<Walk, ConstructError> {
    Walk::new(*grid, cells).map_err(|v| ConstructError::Internal(v.to_string()))
}

fn walk_from(grid: &GridSpec, start: Cell, dir: Direction) -> Result<Walk, ConstructError> {
    let first = grid
        .step(start, dir)
        .ok_or(ConstructError::IllegalDirection { start, dir })?;
    if grid.is_corner(start) {
        // from a corner, the serpentine turned to face `dir` covers everything
        let n = grid.n();
        let turn = Symmetry::all()
            .find(|s| s.apply(n, Cell::new(1, 1)) == start && s.apply(n, Cell::new(1, 2)) == first)
            .expect(
                "some symmetry maps the top-left corner and its east step onto any corner step",
            );
        return Ok(turn.apply_walk(&serpentine(grid)?));
    }
    let mut rect = Rect::square(grid.n());
    let mut peeled: Vec<(Rect, Side)> = Vec::new();
    'peel: loop {
        for side in Side::ORDER {
            if rect.depth(side) < 6 {
                continue;
            }
            let (band, core) = rect.split_off(side, 2);
            if band.contains(start) || band.contains(first) {
                continue;
            }
            peeled.push((rect, side));
            rect = core;
            continue 'peel;
        }
        break;
    }
    let target = start_bound(&rect, start);
    let mut cells = Patch::new(rect).longest_walk(start, first, target);
    while let Some((outer, side)) = peeled.pop() {
        cells = insert_band(&outer, side, &cells, Some((start, first))).ok_or_else(|| {
            ConstructError::Internal(format!(
                "no boundary step to reroute along {side:?} of {outer:?}"
            ))
        })?;
    }
    finish(grid, cells)
}

/// Colour bound on the steps of a walk from `s` inside `rect`.
fn start_bound(rect: &Rect, s: Cell) -> usize {
    let area = rect.area();
    let major = area.div_ceil(2);
    let (own, other) = if area.is_multiple_of(2) || s.parity() == rect.corner_parity() {
        (major, area - major)
    } else {
        (area - major, major)
    };
    let cells = if own > other { 2 * other + 1 } else { 2 * own };
    cells.min(area) - 1
}

fn hamiltonian_path(rect: &Rect, s: Cell, t: Cell) -> Option<Vec<Cell>> {
    if !hamiltonian_path_exists(rect, s, t) {
        return None;
    }
    if s == t {
        return Some(vec![s]);
    }
    let thin = rect.rows.min(rect.cols) <= 2;
    if rect.area() <= BASE_AREA || (thin && rect.area() <= Patch::MAX_AREA) {
        return Patch::new(*rect).hamiltonian_path(s, t);
    }
    for side in Side::ORDER {
        if rect.depth(side) < 4 {
            continue;
        }
        let (band, core) = rect.split_off(side, 2);
        if band.contains(s) || band.contains(t) {
            continue;
        }
        if let Some(inner) = hamiltonian_path(&core, s, t) {
            if let Some(path) = insert_band(rect, side, &inner, None) {
                return Some(path);
            }
        }
    }
    split_path(rect, s, t)
}

/// Cut `rect` into two pieces separating `s` from `t` and join Hamiltonian
/// paths of the pieces across the cut.
fn split_path(rect: &Rect, s: Cell, t: Cell) -> Option<Vec<Cell>> {
    for side in [Side::North, Side::West] {
        for width in 1..rect.depth(side) {
            let (band, rest) = rect.split_off(side, width);
            let (s_part, t_part, s_in_band) = match (band.contains(s), band.contains(t)) {
                (true, false) => (band, rest, true),
                (false, true) => (rest, band, false),
                _ => continue,
            };
            for pos in 0..rect.side_len(side) {
                let inner = rect.along(side, width - 1, pos);
                let outer = rect.along(side, width, pos);
                let (p, q) = if s_in_band {
                    (inner, outer)
                } else {
                    (outer, inner)
                };
                if !hamiltonian_path_exists(&s_part, s, p)
                    || !hamiltonian_path_exists(&t_part, q, t)
                {
                    continue;
                }
                if let (Some(mut head), Some(tail)) = (
                    hamiltonian_path(&s_part, s, p),
                    hamiltonian_path(&t_part, q, t),
                ) {
                    head.extend(tail);
                    return Some(head);
                }
            }
        }
    }
    None
}

/// Reroute `path`, which covers what is left of `outer` after removing the
/// two-line band on `side`, through that band. The rerouted step is the
/// first one running along the line next to the band, skipping `keep`.
fn insert_band(
    outer: &Rect,
    side: Side,
    path: &[Cell],
    keep: Option<(Cell, Cell)>,
) -> Option<Vec<Cell>> {
    let len = outer.side_len(side);
    let on_boundary = |c: Cell| (0..len).find(|&pos| outer.along(side, 2, pos) == c);
    let (i, a, b) = path.windows(2).enumerate().find_map(|(i, w)| {
        if keep == Some((w[0], w[1])) {
            return None;
        }
        let a = on_boundary(w[0])?;
        let b = on_boundary(w[1])?;
        (a.abs_diff(b) == 1).then_some((i, a, b))
    })?;
    // Inner line from `a` outward to the near end, the whole outer line, then
    // the inner line back to `b`.
    let mut sweep = Vec::with_capacity(2 * len);
    if b == a + 1 {
        sweep.extend((0..=a).rev().map(|p| outer.along(side, 1, p)));
        sweep.extend((0..len).map(|p| outer.along(side, 0, p)));
        sweep.extend((b..len).rev().map(|p| outer.along(side, 1, p)));
    } else {
        sweep.extend((a..len).map(|p| outer.along(side, 1, p)));
        sweep.extend((0..len).rev().map(|p| outer.along(side, 0, p)));
        sweep.extend((0..=b).map(|p| outer.along(side, 1, p)));
    }
    let mut out = Vec::with_capacity(path.len() + sweep.len());
    out.extend_from_slice(&path[..=i]);
    out.extend(sweep);
    out.extend_from_slice(&path[i + 1..]);
    Some(out)
}

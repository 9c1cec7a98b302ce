//! Square grid geometry: cells, checkerboard parity, adjacency under the
//! rook (4-neighbour) and king (8-neighbour) move sets, and walk validation.
//!
//! Coordinates are 1-indexed `(row, col)` with row 1 at the top.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid side must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("cell {cell} is outside the {n}x{n} grid")]
    OutOfBounds { cell: Cell, n: usize },
}

/// Adjacency rule for a step between cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveSet {
    /// Shared edge only.
    Rook,
    /// Shared edge or shared corner.
    King,
}

impl MoveSet {
    pub fn directions(self) -> &'static [Direction] {
        match self {
            MoveSet::Rook => &Direction::ORTHOGONAL,
            MoveSet::King => &Direction::ALL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MoveSet::Rook => "rook",
            MoveSet::King => "king",
        }
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rook" => Ok(MoveSet::Rook),
            "king" => Ok(MoveSet::King),
            other => Err(format!(
                "unknown move set `{other}` (expected rook or king)"
            )),
        }
    }
}

/// An `n x n` arena together with the move set walks on it obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    n: usize,
    moves: MoveSet,
}

impl GridSpec {
    pub fn new(n: usize, moves: MoveSet) -> Result<Self, GridError> {
        if n < 2 {
            return Err(GridError::TooSmall(n));
        }
        Ok(Self { n, moves })
    }

    pub fn rook(n: usize) -> Result<Self, GridError> {
        Self::new(n, MoveSet::Rook)
    }

    pub fn king(n: usize) -> Result<Self, GridError> {
        Self::new(n, MoveSet::King)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn moves(&self) -> MoveSet {
        self.moves
    }

    #[inline]
    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    /// Same side length, different move set.
    pub fn with_moves(&self, moves: MoveSet) -> Self {
        Self { n: self.n, moves }
    }

    #[inline]
    pub fn contains(&self, c: Cell) -> bool {
        (1..=self.n).contains(&c.row) && (1..=self.n).contains(&c.col)
    }

    pub fn check(&self, c: Cell) -> Result<Cell, GridError> {
        if self.contains(c) {
            Ok(c)
        } else {
            Err(GridError::OutOfBounds { cell: c, n: self.n })
        }
    }

    /// Row-major index `(row-1)*n + (col-1)`.
    #[inline]
    pub fn index(&self, c: Cell) -> usize {
        (c.row - 1) * self.n + (c.col - 1)
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index / self.n + 1, index % self.n + 1)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count()).map(move |i| self.cell_at(i))
    }

    /// The cell one step from `c` in direction `d`, if it is on the grid.
    /// Does not consult the move set.
    pub fn step(&self, c: Cell, d: Direction) -> Option<Cell> {
        let (dr, dc) = d.delta();
        let row = c.row as isize + dr;
        let col = c.col as isize + dc;
        if row < 1 || col < 1 {
            return None;
        }
        let next = Cell::new(row as usize, col as usize);
        self.contains(next).then_some(next)
    }

    pub fn neighbors(&self, c: Cell) -> Result<Vec<Cell>, GridError> {
        self.check(c)?;
        Ok(self
            .moves
            .directions()
            .iter()
            .filter_map(|&d| self.step(c, d))
            .collect())
    }

    pub fn is_adjacent(&self, a: Cell, b: Cell) -> Result<bool, GridError> {
        self.check(a)?;
        self.check(b)?;
        Ok(adjacent_under(self.moves, a, b))
    }

    pub fn cell_color(&self, c: Cell) -> Result<Parity, GridError> {
        self.check(c)?;
        Ok(c.parity())
    }

    /// Sizes of the (even, odd) colour classes.
    pub fn color_class_sizes(&self) -> (usize, usize) {
        let total = self.cell_count();
        let even = total.div_ceil(2);
        (even, total - even)
    }

    pub fn is_corner(&self, c: Cell) -> bool {
        (c.row == 1 || c.row == self.n) && (c.col == 1 || c.col == self.n)
    }

    /// Upper bound on the step count of any self-avoiding walk from `a`
    /// (ending at `b` when given), derived from colour alternation.
    ///
    /// King grids are not bipartite, so the bound there is `n^2 - 1`.
    pub fn parity_step_bound(&self, a: Cell, b: Option<Cell>) -> usize {
        let total = self.cell_count();
        if self.moves == MoveSet::King {
            return total - 1;
        }
        let (even, odd) = self.color_class_sizes();
        let class = |p: Parity| match p {
            Parity::Even => even,
            Parity::Odd => odd,
        };
        let own = class(a.parity());
        let other = class(a.parity().flip());
        let cells = match b {
            Some(b) if b == a => 1,
            // Same colour: an odd number of cells, one more of the endpoint colour.
            Some(b) if b.parity() == a.parity() => 2 * (own - 1).min(other) + 1,
            // Opposite colours: an even number of cells, split evenly.
            Some(_) => 2 * own.min(other),
            None if own > other => 2 * other + 1,
            None => 2 * own,
        };
        cells.min(total) - 1
    }
}

pub(crate) fn adjacent_under(moves: MoveSet, a: Cell, b: Cell) -> bool {
    let dr = a.row.abs_diff(b.row);
    let dc = a.col.abs_diff(b.col);
    match moves {
        MoveSet::Rook => dr + dc == 1,
        MoveSet::King => dr <= 1 && dc <= 1 && (dr, dc) != (0, 0),
    }
}

/// A grid cell, `(row, col)`, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    #[inline]
    pub fn parity(self) -> Parity {
        if (self.row + self.col).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = String;

    /// Parses `r,c` (parentheses optional).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (r, c) = trimmed
            .split_once(',')
            .ok_or_else(|| format!("expected `row,col`, got `{s}`"))?;
        let row = r
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("bad row in `{s}`: {e}"))?;
        let col = c
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("bad column in `{s}`: {e}"))?;
        Ok(Cell::new(row, col))
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(deserializer)?;
        Ok(Cell::new(row, col))
    }
}

/// Checkerboard colour; a cell is even when `row + col` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Compass direction. `N` points toward row 1, `E` toward larger columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Direction {
    pub const ORTHOGONAL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    /// `(delta_row, delta_col)`.
    pub const fn delta(self) -> (isize, isize) {
        match self {
            Direction::N => (-1, 0),
            Direction::NE => (-1, 1),
            Direction::E => (0, 1),
            Direction::SE => (1, 1),
            Direction::S => (1, 0),
            Direction::SW => (1, -1),
            Direction::W => (0, -1),
            Direction::NW => (-1, -1),
        }
    }

    pub fn is_diagonal(self) -> bool {
        let (dr, dc) = self.delta();
        dr != 0 && dc != 0
    }

    /// Direction of the single step `from -> to`, if they touch.
    pub fn between(from: Cell, to: Cell) -> Option<Direction> {
        let dr = to.row as isize - from.row as isize;
        let dc = to.col as isize - from.col as isize;
        Direction::ALL.into_iter().find(|d| d.delta() == (dr, dc))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown direction `{s}` (expected one of N, NE, E, SE, S, SW, W, NW)")
            })
    }
}

/// Which walk invariant was broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Empty,
    OutOfBounds,
    Repeat,
    NotAdjacent,
}

/// First offending position in a cell sequence.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("walk violates {kind:?} at index {index}")]
pub struct WalkViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

/// Checks that `cells` is a non-empty, in-bounds, self-avoiding sequence of
/// pairwise consecutive neighbours under `grid`'s move set.
pub fn validate_walk(grid: &GridSpec, cells: &[Cell]) -> Result<(), WalkViolation> {
    if cells.is_empty() {
        return Err(WalkViolation {
            index: 0,
            kind: ViolationKind::Empty,
        });
    }
    let mut seen = vec![false; grid.cell_count()];
    for (index, &c) in cells.iter().enumerate() {
        if !grid.contains(c) {
            return Err(WalkViolation {
                index,
                kind: ViolationKind::OutOfBounds,
            });
        }
        let slot = &mut seen[grid.index(c)];
        if *slot {
            return Err(WalkViolation {
                index,
                kind: ViolationKind::Repeat,
            });
        }
        *slot = true;
        if index > 0 && !adjacent_under(grid.moves(), cells[index - 1], c) {
            return Err(WalkViolation {
                index,
                kind: ViolationKind::NotAdjacent,
            });
        }
    }
    Ok(())
}

/// A validated straight, non-overlapping walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    grid: GridSpec,
    cells: Vec<Cell>,
}

impl Walk {
    pub fn new(grid: GridSpec, cells: Vec<Cell>) -> Result<Self, WalkViolation> {
        validate_walk(&grid, &cells)?;
        Ok(Self { grid, cells })
    }

    /// Caller guarantees `cells` already satisfies [`validate_walk`].
    pub(crate) fn from_trusted(grid: GridSpec, cells: Vec<Cell>) -> Self {
        debug_assert_eq!(validate_walk(&grid, &cells), Ok(()));
        Self { grid, cells }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Cell> {
        self.cells
    }

    pub fn steps(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn first(&self) -> Cell {
        self.cells[0]
    }

    pub fn last(&self) -> Cell {
        *self.cells.last().expect("walks are non-empty")
    }

    pub fn reversed(&self) -> Walk {
        let mut cells = self.cells.clone();
        cells.reverse();
        Walk {
            grid: self.grid,
            cells,
        }
    }

    /// Number of diagonal steps (always zero on rook grids).
    pub fn diagonal_steps(&self) -> usize {
        self.cells
            .windows(2)
            .filter(|w| w[0].row != w[1].row && w[0].col != w[1].col)
            .count()
    }

    pub fn to_json(&self) -> WalkJson {
        WalkJson {
            n: self.grid.n(),
            moves: self.grid.moves(),
            cells: self.cells.clone(),
        }
    }
}

/// Interchange form of a walk: `{"n": 5, "moves": "rook", "cells": [[1,1], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkJson {
    pub n: usize,
    pub moves: MoveSet,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Error)]
pub enum WalkParseError {
    #[error("malformed walk JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Invalid(#[from] WalkViolation),
}

impl TryFrom<WalkJson> for Walk {
    type Error = WalkParseError;

    fn try_from(raw: WalkJson) -> Result<Self, Self::Error> {
        let grid = GridSpec::new(raw.n, raw.moves)?;
        Ok(Walk::new(grid, raw.cells)?)
    }
}

impl Walk {
    pub fn from_json_str(s: &str) -> Result<Walk, WalkParseError> {
        let raw: WalkJson = serde_json::from_str(s)?;
        Walk::try_from(raw)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("walk JSON is always serialisable")
    }
}

/// The eight symmetries of the square acting on cells of an `n x n` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    transpose: bool,
    flip_rows: bool,
    flip_cols: bool,
}

impl Symmetry {
    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|bits| Symmetry {
            transpose: bits & 1 != 0,
            flip_rows: bits & 2 != 0,
            flip_cols: bits & 4 != 0,
        })
    }

    pub fn apply(self, n: usize, c: Cell) -> Cell {
        let (mut r, mut k) = if self.transpose {
            (c.col, c.row)
        } else {
            (c.row, c.col)
        };
        if self.flip_rows {
            r = n + 1 - r;
        }
        if self.flip_cols {
            k = n + 1 - k;
        }
        Cell::new(r, k)
    }

    pub fn apply_walk(self, w: &Walk) -> Walk {
        let n = w.grid().n();
        let cells = w.cells().iter().map(|&c| self.apply(n, c)).collect();
        Walk::from_trusted(*w.grid(), cells)
    }
}

/// Orbits of the grid's cells under the symmetries of the square, each
/// sorted, ordered by their smallest member.
pub fn symmetry_classes(n: usize) -> Vec<Vec<Cell>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut classes = Vec::new();
    for row in 1..=n {
        for col in 1..=n {
            let c = Cell::new(row, col);
            if seen.contains(&c) {
                continue;
            }
            let mut orbit: Vec<Cell> = Symmetry::all().map(|s| s.apply(n, c)).collect();
            orbit.sort();
            orbit.dedup();
            seen.extend(orbit.iter().copied());
            classes.push(orbit);
        }
    }
    classes
}

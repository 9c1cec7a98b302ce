//! Walks as planar polylines: length, variation bound, and chaining.
//!
//! A walk is realised with one knot per cell at the cell centre
//! `(col - 1/2, row - 1/2)`, unit cells, y axis pointing down. A rook step
//! then has length 1 and a diagonal king step length `sqrt(2)`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::grid::{Cell, GridSpec, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn center_of(c: Cell) -> Self {
        Point {
            x: c.col as f64 - 0.5,
            y: c.row as f64 - 0.5,
        }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    knots: Vec<Point>,
}

impl Polyline {
    /// `None` when `knots` is empty or has two equal consecutive knots.
    pub fn new(knots: Vec<Point>) -> Option<Self> {
        let ok = !knots.is_empty() && knots.windows(2).all(|w| w[0] != w[1]);
        ok.then_some(Polyline { knots })
    }

    pub fn knots(&self) -> &[Point] {
        &self.knots
    }
}

impl Serialize for Polyline {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.knots.len()))?;
        for p in &self.knots {
            seq.serialize_element(&[p.x, p.y])?;
        }
        seq.end()
    }
}

pub fn polyline_of_walk(w: &Walk) -> Polyline {
    Polyline {
        knots: w.cells().iter().map(|&c| Point::center_of(c)).collect(),
    }
}

/// Sum of Euclidean distances between consecutive knots.
pub fn path_length(p: &Polyline) -> f64 {
    p.knots.windows(2).map(|w| w[0].distance(w[1])).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Variation {
    pub variation: f64,
    /// Square of the grid side.
    pub bound: f64,
    pub within_bound: bool,
}

/// Total variation of the polyline, which for a polygonal path is its
/// length, compared against `side^2`.
pub fn total_variation(p: &Polyline, side: usize) -> Variation {
    let variation = path_length(p);
    let bound = (side * side) as f64;
    Variation {
        variation,
        bound,
        within_bound: variation < bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("a chain needs at least one segment")]
    Empty,
    #[error("segment {index} is on a different grid from segment 0")]
    GridMismatch { index: usize },
    #[error("segment {index} starts at {found} but segment {} ends at {expected}", index - 1)]
    Disconnected {
        index: usize,
        expected: Cell,
        found: Cell,
    },
}

/// Walks linked end to start. Different segments may share cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    grid: GridSpec,
    segments: Vec<Walk>,
}

impl Chain {
    pub fn new(segments: Vec<Walk>) -> Result<Self, ChainError> {
        let grid = *segments.first().ok_or(ChainError::Empty)?.grid();
        for (index, pair) in segments.windows(2).enumerate() {
            let index = index + 1;
            if *pair[1].grid() != grid {
                return Err(ChainError::GridMismatch { index });
            }
            if pair[0].last() != pair[1].first() {
                return Err(ChainError::Disconnected {
                    index,
                    expected: pair[0].last(),
                    found: pair[1].first(),
                });
            }
        }
        Ok(Chain { grid, segments })
    }

    pub fn segments(&self) -> &[Walk] {
        &self.segments
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }
}

/// Per-cell visit counts, serialised as `[[row, col, count], ...]` in
/// row-major order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VisitCounts(pub BTreeMap<Cell, usize>);

impl VisitCounts {
    pub fn get(&self, c: Cell) -> usize {
        self.0.get(&c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

impl Serialize for VisitCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (c, n) in &self.0 {
            seq.serialize_element(&[c.row, c.col, *n])?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSummary {
    pub knots: Polyline,
    pub length: f64,
    pub visits: VisitCounts,
}

/// Joins the segments into one polyline, writing each junction knot once,
/// and counts how often every cell occurs on it.
pub fn concatenate(chain: &Chain) -> ChainSummary {
    let mut cells: Vec<Cell> = Vec::new();
    for (i, seg) in chain.segments.iter().enumerate() {
        let skip = usize::from(i > 0);
        cells.extend_from_slice(&seg.cells()[skip..]);
    }
    let mut visits = VisitCounts::default();
    for &c in &cells {
        *visits.0.entry(c).or_default() += 1;
    }
    let knots = Polyline {
        knots: cells.iter().map(|&c| Point::center_of(c)).collect(),
    };
    let length = path_length(&knots);
    ChainSummary {
        knots,
        length,
        visits,
    }
}

//! Axis-aligned sub-rectangles of a rook grid and the exact test for a
//! Hamiltonian path between two of their cells.

use crate::grid::{Cell, Parity};

/// A rectangle of cells in absolute grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Rect {
    pub top: usize,
    pub left: usize,
    pub rows: usize,
    pub cols: usize,
}

/// One of the four sides of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    /// Peeling preference order.
    pub const ORDER: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];
}

impl Rect {
    pub fn square(n: usize) -> Self {
        Rect {
            top: 1,
            left: 1,
            rows: n,
            cols: n,
        }
    }

    pub fn bottom(&self) -> usize {
        self.top + self.rows - 1
    }

    pub fn right(&self) -> usize {
        self.left + self.cols - 1
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn contains(&self, c: Cell) -> bool {
        (self.top..=self.bottom()).contains(&c.row) && (self.left..=self.right()).contains(&c.col)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.top..=self.bottom())
            .flat_map(move |r| (self.left..=self.right()).map(move |c| Cell::new(r, c)))
    }

    /// Colour of the majority class when the area is odd (the corner colour).
    pub fn corner_parity(&self) -> Parity {
        Cell::new(self.top, self.left).parity()
    }

    /// Length of the side, i.e. the number of cells along it.
    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::North | Side::South => self.cols,
            Side::East | Side::West => self.rows,
        }
    }

    /// Depth of the rectangle measured away from `side`.
    pub fn depth(&self, side: Side) -> usize {
        match side {
            Side::North | Side::South => self.rows,
            Side::East | Side::West => self.cols,
        }
    }

    /// Cell `offset` lines inward from `side` (0 is the boundary line), at
    /// position `pos` along it (0-based from the low-coordinate end).
    pub fn along(&self, side: Side, offset: usize, pos: usize) -> Cell {
        match side {
            Side::North => Cell::new(self.top + offset, self.left + pos),
            Side::South => Cell::new(self.bottom() - offset, self.left + pos),
            Side::West => Cell::new(self.top + pos, self.left + offset),
            Side::East => Cell::new(self.top + pos, self.right() - offset),
        }
    }

    /// The band of `width` lines along `side`, and what remains.
    pub fn split_off(&self, side: Side, width: usize) -> (Rect, Rect) {
        debug_assert!(width < self.depth(side));
        let Rect {
            top,
            left,
            rows,
            cols,
        } = *self;
        match side {
            Side::North => (
                Rect {
                    top,
                    left,
                    rows: width,
                    cols,
                },
                Rect {
                    top: top + width,
                    left,
                    rows: rows - width,
                    cols,
                },
            ),
            Side::South => (
                Rect {
                    top: top + rows - width,
                    left,
                    rows: width,
                    cols,
                },
                Rect {
                    top,
                    left,
                    rows: rows - width,
                    cols,
                },
            ),
            Side::West => (
                Rect {
                    top,
                    left,
                    rows,
                    cols: width,
                },
                Rect {
                    top,
                    left: left + width,
                    rows,
                    cols: cols - width,
                },
            ),
            Side::East => (
                Rect {
                    top,
                    left: left + cols - width,
                    rows,
                    cols: width,
                },
                Rect {
                    top,
                    left,
                    rows,
                    cols: cols - width,
                },
            ),
        }
    }

    /// Position of `c` in rectangle-relative 1-based `(row, col)`.
    fn relative(&self, c: Cell) -> (usize, usize) {
        (c.row - self.top + 1, c.col - self.left + 1)
    }
}

/// Whether the rook grid restricted to `rect` has a Hamiltonian path from
/// `s` to `t`.
///
/// Colour compatibility is necessary and, apart from three families of thin
/// rectangles, sufficient: a single line only admits its two ends, a
/// two-wide ladder cannot join the two cells of an inner rung, and a
/// three-wide strip of even length has the asymmetric exclusion encoded in
/// [`three_wide_blocked`]. The unit tests check this against exhaustive
/// search on every small rectangle.
pub(crate) fn hamiltonian_path_exists(rect: &Rect, s: Cell, t: Cell) -> bool {
    if !rect.contains(s) || !rect.contains(t) {
        return false;
    }
    if s == t {
        return rect.area() == 1;
    }
    if !color_compatible(rect, s, t) {
        return false;
    }
    let (sr, sc) = rect.relative(s);
    let (tr, tc) = rect.relative(t);
    let (rows, cols) = (rect.rows, rect.cols);
    if rows == 1 || cols == 1 {
        let (a, b) = if rows == 1 { (sc, tc) } else { (sr, tr) };
        let len = rows.max(cols);
        return a.min(b) == 1 && a.max(b) == len;
    }
    if rows == 2 && sc == tc && sc > 1 && sc < cols {
        return false;
    }
    if cols == 2 && sr == tr && sr > 1 && sr < rows {
        return false;
    }
    if rows == 3 && cols % 2 == 0 && three_wide_blocked((sc, sr), (tc, tr)) {
        return false;
    }
    if cols == 3 && rows % 2 == 0 && three_wide_blocked((sr, sc), (tr, tc)) {
        return false;
    }
    true
}

fn color_compatible(rect: &Rect, s: Cell, t: Cell) -> bool {
    if rect.area().is_multiple_of(2) {
        s.parity() != t.parity()
    } else {
        let major = rect.corner_parity();
        s.parity() == major && t.parity() == major
    }
}

/// Exclusion for a `3 x m` strip with `m` even. Coordinates are `(x, y)`
/// with `x` along the strip (1..=m) and `y` across it (1..=3). Of the two
/// oppositely coloured endpoints, let `w` be the one with `x + y` odd and
/// `b` the other: no path exists when `w` lies more than one column before
/// `b`, or on the middle line strictly before it.
fn three_wide_blocked(s: (usize, usize), t: (usize, usize)) -> bool {
    let (w, b) = if (s.0 + s.1) % 2 == 1 { (s, t) } else { (t, s) };
    if (w.0 + w.1) % 2 == (b.0 + b.1) % 2 {
        return false;
    }
    w.0 + 1 < b.0 || (w.1 == 2 && w.0 < b.0)
}

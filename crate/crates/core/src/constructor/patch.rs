//! Bitmask searches confined to a small rectangle: the base cases of the
//! constructor.

use super::rect::Rect;
use crate::grid::{Cell, Parity};

/// A rook-connected rectangle of at most 64 cells, indexed row-major.
pub(crate) struct Patch {
    rect: Rect,
    full: u64,
    even: u64,
    neighbors: Vec<Vec<u8>>,
    neighbor_mask: Vec<u64>,
}

impl Patch {
    pub const MAX_AREA: usize = 64;

    pub fn new(rect: Rect) -> Self {
        assert!(rect.area() <= Self::MAX_AREA, "patch too large: {rect:?}");
        let area = rect.area();
        let mut neighbors = Vec::with_capacity(area);
        let mut neighbor_mask = Vec::with_capacity(area);
        let mut even = 0u64;
        for (i, c) in rect.cells().enumerate() {
            // N, E, S, W
            let mut list = Vec::with_capacity(4);
            if c.row > rect.top {
                list.push((i - rect.cols) as u8);
            }
            if c.col < rect.right() {
                list.push((i + 1) as u8);
            }
            if c.row < rect.bottom() {
                list.push((i + rect.cols) as u8);
            }
            if c.col > rect.left {
                list.push((i - 1) as u8);
            }
            neighbor_mask.push(list.iter().fold(0u64, |m, &j| m | 1 << j));
            neighbors.push(list);
            if c.parity() == Parity::Even {
                even |= 1 << i;
            }
        }
        let full = if area == 64 {
            u64::MAX
        } else {
            (1u64 << area) - 1
        };
        Self {
            rect,
            full,
            even,
            neighbors,
            neighbor_mask,
        }
    }

    fn index(&self, c: Cell) -> u8 {
        ((c.row - self.rect.top) * self.rect.cols + (c.col - self.rect.left)) as u8
    }

    fn cell(&self, i: u8) -> Cell {
        let i = i as usize;
        Cell::new(
            self.rect.top + i / self.rect.cols,
            self.rect.left + i % self.rect.cols,
        )
    }

    fn reachable(&self, from: u8, free: u64) -> u64 {
        let mut region = self.neighbor_mask[from as usize] & free;
        let mut frontier = region;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.neighbor_mask[i];
            }
            frontier = next & free & !region;
            region |= frontier;
        }
        region
    }

    /// Colour-alternation bound on further steps from `cur` into `region`.
    fn extension_bound(&self, cur: u8, region: u64) -> usize {
        let size = region.count_ones() as usize;
        let same_mask = if self.even & (1 << cur) != 0 {
            self.even
        } else {
            !self.even
        };
        let same = (region & same_mask).count_ones() as usize;
        let opposite = size - same;
        let alternating = if opposite > same {
            2 * same + 1
        } else {
            2 * opposite
        };
        alternating.min(size)
    }

    /// First Hamiltonian path from `s` to `t` in compass expansion order.
    pub fn hamiltonian_path(&self, s: Cell, t: Cell) -> Option<Vec<Cell>> {
        let s = self.index(s);
        let t = self.index(t);
        let mut path = vec![s];
        self.ham_dfs(s, t, 1u64 << s, &mut path)
            .then(|| path.iter().map(|&i| self.cell(i)).collect())
    }

    fn ham_dfs(&self, cur: u8, t: u8, visited: u64, path: &mut Vec<u8>) -> bool {
        let free = self.full & !visited;
        if cur == t {
            return free == 0;
        }
        if free == 0 {
            return false;
        }
        // Everything left must be reachable, and every unvisited cell other
        // than `t` needs two usable neighbours.
        if self.reachable(cur, free) != free {
            return false;
        }
        let cur_bit = 1u64 << cur;
        let mut f = free & !(1 << t);
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            f &= f - 1;
            if (self.neighbor_mask[i] & (free | cur_bit)).count_ones() < 2 {
                return false;
            }
        }
        for &next in &self.neighbors[cur as usize] {
            if visited & (1 << next) == 0 {
                path.push(next);
                if self.ham_dfs(next, t, visited | 1 << next, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    /// Longest walk starting `s`, `first`, stopping early once a walk of
    /// `target` steps is found. Ties go to the first walk found in compass
    /// order.
    pub fn longest_walk(&self, s: Cell, first: Cell, target: usize) -> Vec<Cell> {
        let s = self.index(s);
        let first = self.index(first);
        let mut state = Longest {
            path: vec![s, first],
            best: Vec::new(),
            target,
        };
        self.longest_dfs(first, (1u64 << s) | (1u64 << first), &mut state);
        state.best.iter().map(|&i| self.cell(i)).collect()
    }

    fn longest_dfs(&self, cur: u8, visited: u64, st: &mut Longest) -> bool {
        let depth = st.path.len() - 1;
        if depth + 1 > st.best.len() {
            st.best.clone_from(&st.path);
            if depth >= st.target {
                return true;
            }
        }
        let region = self.reachable(cur, self.full & !visited);
        if depth + self.extension_bound(cur, region) < st.best.len() {
            return false;
        }
        for &next in &self.neighbors[cur as usize] {
            if visited & (1 << next) == 0 {
                st.path.push(next);
                if self.longest_dfs(next, visited | 1 << next, st) {
                    return true;
                }
                st.path.pop();
            }
        }
        false
    }
}

struct Longest {
    path: Vec<u8>,
    best: Vec<u8>,
    target: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_hamiltonian_path_in_offset_patch() {
        let rect = Rect {
            top: 3,
            left: 2,
            rows: 3,
            cols: 4,
        };
        let p = Patch::new(rect);
        let path = p
            .hamiltonian_path(Cell::new(3, 2), Cell::new(5, 5))
            .unwrap();
        assert_eq!(path.len(), 12);
        assert_eq!(path[0], Cell::new(3, 2));
        assert_eq!(*path.last().unwrap(), Cell::new(5, 5));
        assert!(path
            .windows(2)
            .all(|w| w[0].row.abs_diff(w[1].row) + w[0].col.abs_diff(w[1].col) == 1));
        // same colour on an even area
        assert!(p
            .hamiltonian_path(Cell::new(3, 2), Cell::new(3, 4))
            .is_none());
    }

    #[test]
    fn longest_walk_respects_first_step() {
        let p = Patch::new(Rect::square(3));
        let w = p.longest_walk(Cell::new(1, 2), Cell::new(2, 2), 8);
        assert_eq!(w.len(), 8);
        assert_eq!(&w[..2], &[Cell::new(1, 2), Cell::new(2, 2)]);
    }
}

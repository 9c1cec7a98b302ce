//! Exhaustive enumeration of self-avoiding walks.
//!
//! This is the ground truth the rest of the crate is checked against. The
//! visited set is a single `u64` over row-major cell indices, so grids are
//! limited to side [`MAX_SIDE`]. The search is plain depth-first
//! backtracking; the optional pruning only discards subtrees whose best
//! possible length is strictly below the current maximum, so counts of
//! maximum walks are unaffected by it.
//!
//! For parallel runs the tree is split into the walks of a fixed prefix
//! depth. Every prefix is searched independently and the partial results are
//! folded by "larger maximum wins, equal maxima add counts", which does not
//! depend on the order of the fold.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{Cell, GridError, GridSpec, MoveSet, Parity, Walk};

/// Largest side whose cells fit in the `u64` visited mask.
pub const MAX_SIDE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{moves} grid of side {n} exceeds the enumeration guard (side <= {limit}); pass --force to override")]
    ResourceLimit {
        n: usize,
        moves: MoveSet,
        limit: usize,
    },
    #[error("side {n} exceeds the hard capacity of the bitmask search (side <= {MAX_SIDE})")]
    Capacity { n: usize },
    #[error("start and end must differ, both are {0}")]
    SameEndpoints(Cell),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Size limits applied before any search starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceGuard {
    pub rook_max_side: usize,
    pub king_max_side: usize,
    /// Ignore the soft limits; the bitmask capacity still applies.
    pub force: bool,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        Self {
            rook_max_side: 6,
            king_max_side: 5,
            force: false,
        }
    }
}

impl ResourceGuard {
    pub fn forced() -> Self {
        Self {
            force: true,
            ..Self::default()
        }
    }

    pub fn limit_for(&self, moves: MoveSet) -> usize {
        match moves {
            MoveSet::Rook => self.rook_max_side,
            MoveSet::King => self.king_max_side,
        }
    }

    pub fn admits(&self, grid: &GridSpec) -> bool {
        grid.n() <= MAX_SIDE && (self.force || grid.n() <= self.limit_for(grid.moves()))
    }

    pub fn check(&self, grid: &GridSpec) -> Result<(), EnumError> {
        let n = grid.n();
        if n > MAX_SIDE {
            return Err(EnumError::Capacity { n });
        }
        let limit = self.limit_for(grid.moves());
        if !self.force && n > limit {
            return Err(EnumError::ResourceLimit {
                n,
                moves: grid.moves(),
                limit,
            });
        }
        Ok(())
    }
}

/// Order in which the neighbours of a cell are expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborOrder {
    /// Compass order N, NE, E, ... as listed by [`crate::grid::Direction::ALL`].
    #[default]
    Compass,
    Reversed,
    /// Per-cell permutation drawn from a seeded ChaCha stream.
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    /// Split the tree at all walk prefixes of `depth` steps and search them on
    /// the rayon pool.
    PrefixParallel { depth: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub pruning: bool,
    pub order: NeighborOrder,
    pub execution: Execution,
    pub guard: ResourceGuard,
}

impl SearchConfig {
    /// Unpruned sequential search: the configuration used as an oracle.
    pub fn oracle() -> Self {
        Self::default()
    }

    /// Pruned search split over the thread pool.
    pub fn fast() -> Self {
        Self {
            pruning: true,
            execution: Execution::PrefixParallel { depth: 3 },
            ..Self::default()
        }
    }

    pub fn with_guard(mut self, guard: ResourceGuard) -> Self {
        self.guard = guard;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub grid: GridSpec,
    pub start: Cell,
    pub end: Option<Cell>,
    pub collect_paths: bool,
    /// Cap on the number of collected paths; `None` keeps all of them.
    pub limit: Option<usize>,
}

impl EnumerationQuery {
    pub fn from_start(grid: GridSpec, start: Cell) -> Self {
        Self {
            grid,
            start,
            end: None,
            collect_paths: false,
            limit: None,
        }
    }

    pub fn between(grid: GridSpec, start: Cell, end: Cell) -> Self {
        Self {
            grid,
            start,
            end: Some(end),
            collect_paths: false,
            limit: None,
        }
    }

    pub fn collecting(mut self, limit: Option<usize>) -> Self {
        self.collect_paths = true;
        self.limit = limit;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationResult {
    /// Longest achievable step count; `None` only when no walk joins the
    /// requested endpoints at all.
    pub max_steps: Option<usize>,
    pub count_max_walks: u64,
    pub paths: Option<Vec<Walk>>,
    pub nodes_expanded: u64,
}

/// Per-start entry of [`Enumerator::total_max_walk_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StartCount {
    pub start: Cell,
    pub max_steps: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalCount {
    pub grid: GridSpec,
    pub total: u64,
    pub per_start: Vec<StartCount>,
    pub nodes_expanded: u64,
}

impl TotalCount {
    pub fn for_cell(&self, c: Cell) -> Option<&StartCount> {
        self.per_start.iter().find(|s| s.start == c)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Enumerator {
    config: SearchConfig,
}

impl Enumerator {
    pub fn new(config: SearchConfig) -> Self {
        Self { config }
    }

    pub fn oracle() -> Self {
        Self::new(SearchConfig::oracle())
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn enumerate_from(
        &self,
        grid: GridSpec,
        start: Cell,
    ) -> Result<EnumerationResult, EnumError> {
        self.run(&EnumerationQuery::from_start(grid, start))
    }

    pub fn longest_between(
        &self,
        grid: GridSpec,
        a: Cell,
        b: Cell,
    ) -> Result<EnumerationResult, EnumError> {
        self.run(&EnumerationQuery::between(grid, a, b))
    }

    /// Sums, over every start cell, the number of walks reaching that start's
    /// own maximum.
    pub fn total_max_walk_count(&self, grid: GridSpec) -> Result<TotalCount, EnumError> {
        self.config.guard.check(&grid)?;
        let mut per_start = Vec::with_capacity(grid.cell_count());
        let mut total = 0;
        let mut nodes = 0;
        for start in grid.cells() {
            let r = self.enumerate_from(grid, start)?;
            let max_steps = r.max_steps.expect("a start-only query always has a walk");
            total += r.count_max_walks;
            nodes += r.nodes_expanded;
            per_start.push(StartCount {
                start,
                max_steps,
                count: r.count_max_walks,
            });
        }
        Ok(TotalCount {
            grid,
            total,
            per_start,
            nodes_expanded: nodes,
        })
    }

    pub fn run(&self, q: &EnumerationQuery) -> Result<EnumerationResult, EnumError> {
        self.config.guard.check(&q.grid)?;
        q.grid.check(q.start)?;
        if let Some(end) = q.end {
            q.grid.check(end)?;
            if end == q.start {
                return Err(EnumError::SameEndpoints(end));
            }
        }
        let board = Board::new(&q.grid, self.config.order);
        let spec = SearchSpec {
            end: q.end.map(|e| q.grid.index(e) as u8),
            pruning: self.config.pruning,
            limit: if q.collect_paths {
                q.limit.unwrap_or(usize::MAX)
            } else {
                0
            },
        };
        let start = q.grid.index(q.start) as u8;
        let tally = match self.config.execution {
            Execution::Sequential => {
                let mut s = Search::new(&board, &spec);
                s.path.push(start);
                s.dfs(start, 1u64 << start, 0);
                s.tally
            }
            Execution::PrefixParallel { depth } => parallel_search(&board, &spec, start, depth),
        };
        let paths = q.collect_paths.then(|| {
            tally
                .paths
                .iter()
                .map(|p| {
                    Walk::from_trusted(
                        q.grid,
                        p.iter().map(|&i| q.grid.cell_at(i as usize)).collect(),
                    )
                })
                .collect()
        });
        Ok(EnumerationResult {
            max_steps: tally.best,
            count_max_walks: tally.count,
            paths,
            nodes_expanded: tally.nodes,
        })
    }
}

/// Precomputed adjacency for one grid and neighbour order.
struct Board {
    n: usize,
    full: u64,
    even: u64,
    bipartite: bool,
    neighbors: Vec<Vec<u8>>,
    neighbor_mask: Vec<u64>,
}

impl Board {
    fn new(grid: &GridSpec, order: NeighborOrder) -> Self {
        let n = grid.n();
        let cells = grid.cell_count();
        let mut rng = match order {
            NeighborOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut neighbors = Vec::with_capacity(cells);
        let mut neighbor_mask = Vec::with_capacity(cells);
        let mut even = 0u64;
        for c in grid.cells() {
            let mut list: Vec<u8> = grid
                .neighbors(c)
                .expect("cell from grid iterator")
                .into_iter()
                .map(|d| grid.index(d) as u8)
                .collect();
            match order {
                NeighborOrder::Compass => {}
                NeighborOrder::Reversed => list.reverse(),
                NeighborOrder::Shuffled(_) => list.shuffle(rng.as_mut().expect("seeded")),
            }
            neighbor_mask.push(list.iter().fold(0u64, |m, &i| m | 1 << i));
            neighbors.push(list);
            if c.parity() == Parity::Even {
                even |= 1 << grid.index(c);
            }
        }
        let full = if cells == 64 {
            u64::MAX
        } else {
            (1u64 << cells) - 1
        };
        Self {
            n,
            full,
            even,
            bipartite: grid.moves() == MoveSet::Rook,
            neighbors,
            neighbor_mask,
        }
    }

    /// Cells of `free` reachable from the neighbours of `from`.
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

    /// Upper bound on additional steps from `cur` into `region`.
    fn extension_bound(&self, cur: u8, region: u64) -> usize {
        let size = region.count_ones() as usize;
        if !self.bipartite {
            return size;
        }
        let cur_even = self.even & (1 << cur) != 0;
        let same = if cur_even {
            region & self.even
        } else {
            region & !self.even
        };
        let same = (same & self.full).count_ones() as usize;
        let opposite = size - same;
        // Steps alternate opposite, same, opposite, ...
        let alternating = if opposite > same {
            2 * same + 1
        } else {
            2 * opposite
        };
        alternating.min(size)
    }
}

struct SearchSpec {
    end: Option<u8>,
    pruning: bool,
    limit: usize,
}

#[derive(Debug, Default)]
struct Tally {
    best: Option<usize>,
    count: u64,
    nodes: u64,
    paths: Vec<Vec<u8>>,
}

impl Tally {
    fn merge(mut self, other: Tally, limit: usize) -> Tally {
        self.nodes += other.nodes;
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => {
                return Tally {
                    nodes: self.nodes,
                    ..other
                };
            }
            (Some(a), Some(b)) if b > a => {
                return Tally {
                    nodes: self.nodes,
                    ..other
                };
            }
            (Some(a), Some(b)) if b == a => {
                self.count += other.count;
                let room = limit.saturating_sub(self.paths.len());
                self.paths.extend(other.paths.into_iter().take(room));
            }
            _ => {}
        }
        self
    }
}

struct Search<'a> {
    board: &'a Board,
    spec: &'a SearchSpec,
    path: Vec<u8>,
    tally: Tally,
}

impl<'a> Search<'a> {
    fn new(board: &'a Board, spec: &'a SearchSpec) -> Self {
        Self {
            board,
            spec,
            path: Vec::with_capacity(board.n * board.n),
            tally: Tally::default(),
        }
    }

    fn record(&mut self, depth: usize) {
        let t = &mut self.tally;
        match t.best {
            Some(b) if depth < b => return,
            Some(b) if depth == b => t.count += 1,
            _ => {
                t.best = Some(depth);
                t.count = 1;
                t.paths.clear();
            }
        }
        if t.paths.len() < self.spec.limit {
            t.paths.push(self.path.clone());
        }
    }

    /// Whether the subtree below `cur` can still reach the current maximum.
    fn promising(&self, cur: u8, visited: u64, depth: usize) -> bool {
        let free = self.board.full & !visited;
        let region = self.board.reachable(cur, free);
        if let Some(end) = self.spec.end {
            if region & (1 << end) == 0 {
                return false;
            }
        }
        match self.tally.best {
            Some(best) => depth + self.board.extension_bound(cur, region) >= best,
            None => true,
        }
    }

    fn dfs(&mut self, cur: u8, visited: u64, depth: usize) {
        self.tally.nodes += 1;
        match self.spec.end {
            Some(end) if cur == end => {
                self.record(depth);
                return;
            }
            Some(_) => {}
            None => self.record(depth),
        }
        if self.spec.pruning && !self.promising(cur, visited, depth) {
            return;
        }
        let board = self.board;
        for &next in &board.neighbors[cur as usize] {
            if visited & (1 << next) == 0 {
                self.path.push(next);
                self.dfs(next, visited | 1 << next, depth + 1);
                self.path.pop();
            }
        }
    }
}

/// Walks of exactly `depth` steps from `start` (fewer if they hit `end`
/// or get stuck), each with its visited mask.
fn prefixes(board: &Board, spec: &SearchSpec, start: u8, depth: usize) -> (Vec<Vec<u8>>, Tally) {
    // Nodes strictly above the split depth are tallied here, exactly as the
    // sequential search would tally them.
    let mut shallow = Search::new(board, spec);
    let mut out = Vec::new();
    let mut stack = vec![start];
    collect_prefixes(&mut shallow, &mut stack, 1u64 << start, depth, &mut out);
    (out, shallow.tally)
}

fn collect_prefixes(
    s: &mut Search<'_>,
    stack: &mut Vec<u8>,
    visited: u64,
    depth: usize,
    out: &mut Vec<Vec<u8>>,
) {
    let cur = *stack.last().expect("non-empty prefix");
    if stack.len() - 1 == depth {
        out.push(stack.clone());
        return;
    }
    s.tally.nodes += 1;
    s.path.clone_from(stack);
    match s.spec.end {
        Some(end) if cur == end => {
            s.record(stack.len() - 1);
            return;
        }
        Some(_) => {}
        None => s.record(stack.len() - 1),
    }
    let board = s.board;
    for &next in &board.neighbors[cur as usize] {
        if visited & (1 << next) == 0 {
            stack.push(next);
            collect_prefixes(s, stack, visited | 1 << next, depth, out);
            stack.pop();
        }
    }
}

fn parallel_search(board: &Board, spec: &SearchSpec, start: u8, depth: usize) -> Tally {
    let (tasks, shallow) = prefixes(board, spec, start, depth);
    let partials: Vec<Tally> = tasks
        .par_iter()
        .map(|prefix| {
            let mut s = Search::new(board, spec);
            s.path.extend_from_slice(prefix);
            let visited = prefix.iter().fold(0u64, |m, &i| m | 1 << i);
            let cur = *prefix.last().expect("non-empty prefix");
            s.dfs(cur, visited, prefix.len() - 1);
            s.tally
        })
        .collect();
    partials
        .into_iter()
        .fold(shallow, |acc, t| acc.merge(t, spec.limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(r: usize, k: usize) -> Cell {
        Cell::new(r, k)
    }

    #[test]
    fn two_by_two_rook() {
        let g = GridSpec::rook(2).unwrap();
        let r = Enumerator::oracle().enumerate_from(g, c(1, 1)).unwrap();
        assert_eq!(r.max_steps, Some(3));
        assert_eq!(r.count_max_walks, 2);
        let r = Enumerator::oracle()
            .longest_between(g, c(1, 1), c(2, 2))
            .unwrap();
        assert_eq!(r.max_steps, Some(2));
        assert_eq!(r.count_max_walks, 2);
        let t = Enumerator::oracle().total_max_walk_count(g).unwrap();
        assert_eq!(t.total, 8);
    }

    #[test]
    fn guard_and_errors() {
        let e = Enumerator::oracle();
        assert_eq!(
            e.enumerate_from(GridSpec::rook(7).unwrap(), c(1, 1)),
            Err(EnumError::ResourceLimit {
                n: 7,
                moves: MoveSet::Rook,
                limit: 6
            })
        );
        assert!(matches!(
            e.enumerate_from(GridSpec::king(6).unwrap(), c(1, 1)),
            Err(EnumError::ResourceLimit { .. })
        ));
        let forced = Enumerator::new(SearchConfig::oracle().with_guard(ResourceGuard::forced()));
        assert_eq!(
            forced.enumerate_from(GridSpec::rook(9).unwrap(), c(1, 1)),
            Err(EnumError::Capacity { n: 9 })
        );
        let g = GridSpec::rook(3).unwrap();
        assert_eq!(
            e.longest_between(g, c(1, 1), c(1, 1)),
            Err(EnumError::SameEndpoints(c(1, 1)))
        );
        assert!(matches!(
            e.enumerate_from(g, c(4, 1)),
            Err(EnumError::Grid(_))
        ));
    }

    #[test]
    fn collected_paths_match_maximum() {
        let g = GridSpec::rook(3).unwrap();
        let q = EnumerationQuery::from_start(g, c(1, 2)).collecting(None);
        let r = Enumerator::oracle().run(&q).unwrap();
        assert_eq!(r.max_steps, Some(7));
        let paths = r.paths.unwrap();
        assert_eq!(paths.len() as u64, r.count_max_walks);
        for p in &paths {
            assert_eq!(p.steps(), 7);
            assert_eq!(p.first(), c(1, 2));
        }
        let capped = Enumerator::oracle()
            .run(&q.clone().collecting(Some(3)))
            .unwrap();
        assert_eq!(capped.paths.unwrap().len(), 3);
        assert_eq!(capped.count_max_walks, r.count_max_walks);
    }

    #[test]
    fn adjacent_pair_on_two_by_two() {
        let g = GridSpec::rook(2).unwrap();
        let r = Enumerator::oracle()
            .longest_between(g, c(1, 1), c(1, 2))
            .unwrap();
        assert_eq!(r.max_steps, Some(3));
        assert_eq!(r.count_max_walks, 1);
    }

    #[test]
    fn merge_is_max_then_sum() {
        let a = Tally {
            best: Some(3),
            count: 2,
            nodes: 5,
            paths: vec![],
        };
        let b = Tally {
            best: Some(4),
            count: 1,
            nodes: 7,
            paths: vec![],
        };
        let c = Tally {
            best: Some(4),
            count: 6,
            nodes: 1,
            paths: vec![],
        };
        let ab_c = a.merge(b, 0).merge(c, 0);
        assert_eq!((ab_c.best, ab_c.count, ab_c.nodes), (Some(4), 7, 13));
        let none = Tally::default();
        let merged = none.merge(
            Tally {
                best: Some(1),
                count: 1,
                nodes: 1,
                paths: vec![],
            },
            0,
        );
        assert_eq!((merged.best, merged.count), (Some(1), 1));
    }
}

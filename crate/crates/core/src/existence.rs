//! Classifiers for the published existence claims about covering walks
//! between two cells, and the audit that checks a claim against exhaustive
//! search.
//!
//! The claim families:
//!
//! * even side, edge-adjacent pair: a covering walk exists (`Thm2+`);
//! * even side, non-adjacent pair: no covering walk exists (`Thm2-`);
//! * odd side, both cells on the principal or the anti-diagonal (`Thm4i`);
//! * odd side, same row or column at least two apart, with neither cell in
//!   the second or second-to-last row or column (`Thm4ii`);
//! * odd side, both cells on one odd-length diagonal parallel to either main
//!   diagonal (`Thm6`).
//!
//! Pairs outside every family are `Unspecified`; no verdict is guessed for
//! them.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerator::{EnumError, Enumerator};
use crate::grid::{Cell, GridError, GridSpec, MoveSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExistenceError {
    #[error("pair claims are stated for rook grids only")]
    NotRook,
    #[error("expected an {expected} side, got {n}")]
    WrongParity { n: usize, expected: &'static str },
    #[error("a pair needs two distinct cells, got {0} twice")]
    SameCell(Cell),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// The rule a claim comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimRule {
    /// Even side, adjacent cells.
    AdjacentPair,
    /// Even side, non-adjacent cells.
    NonAdjacentPair,
    /// Odd side, principal or anti-diagonal.
    MainDiagonal,
    /// Odd side, same row or column.
    SharedLine,
    /// Odd side, odd-length diagonal.
    OddDiagonal,
}

impl ClaimRule {
    pub fn id(self) -> &'static str {
        match self {
            ClaimRule::AdjacentPair => "Thm2+",
            ClaimRule::NonAdjacentPair => "Thm2-",
            ClaimRule::MainDiagonal => "Thm4i",
            ClaimRule::SharedLine => "Thm4ii",
            ClaimRule::OddDiagonal => "Thm6",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    ClaimedYes(ClaimRule),
    ClaimedNo(ClaimRule),
    Unspecified,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::ClaimedYes(r) => write!(f, "ClaimedYes({})", r.id()),
            Claim::ClaimedNo(r) => write!(f, "ClaimedNo({})", r.id()),
            Claim::Unspecified => f.write_str("Unspecified"),
        }
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClaim {
    pub grid: GridSpec,
    pub a: Cell,
    pub b: Cell,
    pub claim: Claim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Agreement {
    Agree,
    PaperOverclaims,
    PaperUnderclaims,
    NotAudited,
}

impl Agreement {
    pub fn is_disagreement(self) -> bool {
        matches!(
            self,
            Agreement::PaperOverclaims | Agreement::PaperUnderclaims
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditVerdict {
    pub claim: PairClaim,
    /// `None` when the oracle was not run.
    pub oracle_max_steps: Option<usize>,
    pub oracle_says_max_walk: bool,
    pub agreement: Agreement,
}

/// Serialised audit line: `{"n", "pair", "claim", "oracle_max", "agreement"}`.
#[derive(Debug, Clone, Serialize)]
pub struct AuditRecord {
    pub n: usize,
    pub pair: [Cell; 2],
    pub claim: Claim,
    pub oracle_max: Option<usize>,
    pub agreement: Agreement,
}

impl From<&AuditVerdict> for AuditRecord {
    fn from(v: &AuditVerdict) -> Self {
        AuditRecord {
            n: v.claim.grid.n(),
            pair: [v.claim.a, v.claim.b],
            claim: v.claim.claim,
            oracle_max: v.oracle_max_steps,
            agreement: v.agreement,
        }
    }
}

fn check_pair(grid: &GridSpec, a: Cell, b: Cell) -> Result<(), ExistenceError> {
    if grid.moves() != MoveSet::Rook {
        return Err(ExistenceError::NotRook);
    }
    grid.check(a)?;
    grid.check(b)?;
    if a == b {
        return Err(ExistenceError::SameCell(a));
    }
    Ok(())
}

pub fn classify_pair_even(grid: &GridSpec, a: Cell, b: Cell) -> Result<PairClaim, ExistenceError> {
    check_pair(grid, a, b)?;
    let n = grid.n();
    if !n.is_multiple_of(2) {
        return Err(ExistenceError::WrongParity {
            n,
            expected: "even",
        });
    }
    let claim = if n < 4 {
        // the claims are stated for sides 2k with k > 1
        Claim::Unspecified
    } else if a.row.abs_diff(b.row) + a.col.abs_diff(b.col) == 1 {
        if grid.is_corner(a) && grid.is_corner(b) {
            Claim::Unspecified
        } else {
            Claim::ClaimedYes(ClaimRule::AdjacentPair)
        }
    } else {
        Claim::ClaimedNo(ClaimRule::NonAdjacentPair)
    };
    Ok(PairClaim {
        grid: *grid,
        a,
        b,
        claim,
    })
}

pub fn classify_pair_odd(grid: &GridSpec, a: Cell, b: Cell) -> Result<PairClaim, ExistenceError> {
    check_pair(grid, a, b)?;
    let n = grid.n();
    if n.is_multiple_of(2) {
        return Err(ExistenceError::WrongParity { n, expected: "odd" });
    }
    let on_principal = |c: Cell| c.row == c.col;
    let on_anti = |c: Cell| c.row + c.col == n + 1;
    let near_edge = |c: Cell| [2, n - 1].iter().any(|&k| c.row == k || c.col == k);
    let diff = |c: Cell| c.row as isize - c.col as isize;
    let sum = |c: Cell| c.row + c.col;

    let claim = if (on_principal(a) && on_principal(b)) || (on_anti(a) && on_anti(b)) {
        Claim::ClaimedYes(ClaimRule::MainDiagonal)
    } else if ((a.row == b.row && a.col.abs_diff(b.col) >= 2)
        || (a.col == b.col && a.row.abs_diff(b.row) >= 2))
        && !near_edge(a)
        && !near_edge(b)
    {
        Claim::ClaimedYes(ClaimRule::SharedLine)
    } else if (diff(a) == diff(b) && diff(a) % 2 == 0)
        || (sum(a) == sum(b) && sum(a).abs_diff(n + 1) % 2 == 0)
    {
        Claim::ClaimedYes(ClaimRule::OddDiagonal)
    } else {
        Claim::Unspecified
    };
    Ok(PairClaim {
        grid: *grid,
        a,
        b,
        claim,
    })
}

/// Picks the classifier matching the parity of the side.
pub fn classify_pair(grid: &GridSpec, a: Cell, b: Cell) -> Result<PairClaim, ExistenceError> {
    if grid.n().is_multiple_of(2) {
        classify_pair_even(grid, a, b)
    } else {
        classify_pair_odd(grid, a, b)
    }
}

/// Closed-form count of pairs joined by covering walks on a side-`2k`
/// grid: `2k * (4k - 2)`.
pub fn corollary_pair_count(half_side: u64) -> u64 {
    2 * half_side * (4 * half_side - 2)
}

/// Unordered pairs classified `ClaimedYes` on the given grid.
pub fn claimed_yes_pairs(grid: &GridSpec) -> Vec<PairClaim> {
    let cells: Vec<Cell> = grid.cells().collect();
    let mut out = Vec::new();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            if let Ok(pc) = classify_pair(grid, a, b) {
                if matches!(pc.claim, Claim::ClaimedYes(_)) {
                    out.push(pc);
                }
            }
        }
    }
    out
}

/// Runs the oracle on `claim`'s pair and compares its verdict.
///
/// Grids the oracle's guard rejects are reported `NotAudited` without a
/// search, unless the guard is forced, in which case the oracle's
/// capacity error is returned.
pub fn audit(claim: &PairClaim, oracle: &Enumerator) -> Result<AuditVerdict, EnumError> {
    let guard = oracle.config().guard;
    if !guard.admits(&claim.grid) && !guard.force {
        return Ok(AuditVerdict {
            claim: *claim,
            oracle_max_steps: None,
            oracle_says_max_walk: false,
            agreement: Agreement::NotAudited,
        });
    }
    let result = oracle.longest_between(claim.grid, claim.a, claim.b)?;
    let max = result
        .max_steps
        .expect("every pair of a grid is joined by some walk");
    let covering = max == claim.grid.cell_count() - 1;
    let agreement = match claim.claim {
        Claim::ClaimedYes(_) if covering => Agreement::Agree,
        Claim::ClaimedYes(_) => Agreement::PaperOverclaims,
        Claim::ClaimedNo(_) if covering => Agreement::PaperUnderclaims,
        Claim::ClaimedNo(_) => Agreement::Agree,
        Claim::Unspecified => Agreement::NotAudited,
    };
    Ok(AuditVerdict {
        claim: *claim,
        oracle_max_steps: Some(max),
        oracle_says_max_walk: covering,
        agreement,
    })
}

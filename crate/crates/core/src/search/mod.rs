//! Looking for graphs whose orbit designs meet a target.

mod exhaustive;
mod families;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use exhaustive::{branches, exhaustive_search, exhaustive_search_with, Branch, SearchOutcome};
pub use families::{family_path, family_cycle, FamilyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SearchTarget {
    /// 2-design under `K`.
    D2,
    /// 3-design under `K`.
    D3,
    /// 2-design under `G`.
    Dhat2,
    /// 3-design under `G`.
    Dhat3,
    /// Flag-transitive 2-design under `G`.
    FtDhat2,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 5] =
        [SearchTarget::D2, SearchTarget::D3, SearchTarget::Dhat2, SearchTarget::Dhat3, SearchTarget::FtDhat2];

    pub fn tag(self) -> &'static str {
        match self {
            SearchTarget::D2 => "d2",
            SearchTarget::D3 => "d3",
            SearchTarget::Dhat2 => "dhat2",
            SearchTarget::Dhat3 => "dhat3",
            SearchTarget::FtDhat2 => "ft-dhat2",
        }
    }

    pub fn needs_square(self) -> bool {
        !matches!(self, SearchTarget::D2 | SearchTarget::D3)
    }

    pub fn t(self) -> u32 {
        match self {
            SearchTarget::D3 | SearchTarget::Dhat3 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SearchTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SearchTarget::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| format!("unknown target `{s}`"))
    }
}

/// Which graphs count as the same result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dedup {
    /// Equal up to row and column permutations.
    SidePreserving,
    /// Equal up to row and column permutations and the transpose.
    AllowTau,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub target: SearchTarget,
    pub dedup: Dedup,
    /// Total realisation steps allowed, summed over branches in order.
    pub max_nodes: Option<u64>,
    /// Index of the first degree-sequence branch to explore.
    pub resume_from: usize,
}

impl SearchSpec {
    pub fn new(m: usize, n: usize, k: usize, target: SearchTarget) -> Self {
        SearchSpec { m, n, k, target, dedup: Dedup::SidePreserving, max_nodes: None, resume_from: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("target {target} needs a square grid, got {m}x{n}")]
    NotSquare { target: SearchTarget, m: usize, n: usize },
    #[error("transpose deduplication needs a square grid, got {m}x{n}")]
    TauOnRectangle { m: usize, n: usize },
    #[error("invalid grid {m}x{n}: sides must lie in 1..={max}")]
    BadGrid { m: usize, n: usize, max: usize },
    #[error("{k} edges do not fit on a {m}x{n} grid")]
    TooManyEdges { k: usize, m: usize, n: usize },
}

//! Bundled witness graphs.

use std::fmt;
use std::str::FromStr;

use crate::bigraph::BiGraph;
use crate::grid_file;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// 36 edges on the 11 x 11 grid; a 3-design under `G` but not even a 2-design under `K`.
    Fig1,
    /// 6 edges on the 8 x 2 grid; a 3-(16,6,80) design under `K`.
    Fig2,
    /// 105 edges on the 38 x 38 grid; a 3-design under both groups.
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    pub fn source(self) -> &'static str {
        match self {
            Figure::Fig1 => include_str!("../data/fig1.grid"),
            Figure::Fig2 => include_str!("../data/fig2.grid"),
            Figure::Fig3 => include_str!("../data/fig3.grid"),
        }
    }

    pub fn graph(self) -> BiGraph {
        grid_file::parse(self.source()).expect("bundled figure parses")
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (expected fig1, fig2 or fig3)"))
    }
}

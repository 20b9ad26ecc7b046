//! Block-transitive 2- and 3-designs on `m x n` grids.
//!
//! A block is the edge set of a subgraph `D` of `K_{m,n}`, read as a set of cells of the
//! grid; the design is the orbit of that block under row/column permutations (`K`), or
//! additionally under the transpose (`G`) when the grid is square. The crate provides
//! local statistics of `D`, its stabilisers, exact design criteria, a brute-force oracle,
//! divisibility scans and searches for new examples.

pub mod arith;
pub mod bigraph;
mod canon;
pub mod criteria;
pub mod figures;
pub mod grid_file;
pub mod oracle;
pub mod permgroup;
pub mod scanner;
pub mod search;

pub use bigraph::{BiGraph, BiGraphError, SubgraphStats};
pub use canon::Variant;
pub use criteria::{check_d, check_dhat, classify_case, CaseLabel, CriteriaReport};
pub use permgroup::{automorphisms, AutReport, GridPerm, GroupKind};

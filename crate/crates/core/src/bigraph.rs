//! Spanning subgraphs of the complete bipartite graph `K_{m,n}`.
//!
//! A [`BiGraph`] is an `m x n` bit matrix: row `i` is the vertex `R_{i+1}`, column `j` the
//! vertex `C_{j+1}`, and a set bit is both an edge of the graph and a cell of the block it
//! encodes. Indices are 0-based in the API; the text format in [`crate::grid_file`] is 1-based.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::binom;
use crate::canon::{self, Variant};

/// Largest supported side length (one `u64` word per row).
pub const MAX_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiGraphError {
    #[error("grid sides must be positive, got {m}x{n}")]
    ZeroSide { m: usize, n: usize },
    #[error("grid side {side} exceeds the supported maximum {MAX_SIDE}")]
    SideTooLarge { side: usize },
    #[error("edge ({i}, {j}) is outside the {m}x{n} grid")]
    IndexOutOfRange { i: usize, j: usize, m: usize, n: usize },
    #[error("edge ({i}, {j}) listed twice")]
    DuplicateEdge { i: usize, j: usize },
    #[error("operation needs a square grid, got {m}x{n}")]
    NotSquare { m: usize, n: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiGraph {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

/// Small-subgraph counts that every design criterion consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SubgraphStats {
    /// 2-paths whose middle vertex is a row vertex.
    pub p2_r: u64,
    /// 2-paths whose middle vertex is a column vertex.
    pub p2_c: u64,
    pub p3: u64,
    /// 3-claws centred at a row vertex.
    pub claw3_r: u64,
    /// 3-claws centred at a column vertex.
    pub claw3_c: u64,
}

impl SubgraphStats {
    pub fn two_paths(&self) -> u64 {
        self.p2_r + self.p2_c
    }

    pub fn claws(&self) -> u64 {
        self.claw3_r + self.claw3_c
    }

    /// The counts of the transposed graph.
    pub fn swapped(&self) -> Self {
        SubgraphStats {
            p2_r: self.p2_c,
            p2_c: self.p2_r,
            p3: self.p3,
            claw3_r: self.claw3_c,
            claw3_c: self.claw3_r,
        }
    }
}

fn check_sides(m: usize, n: usize) -> Result<(), BiGraphError> {
    if m == 0 || n == 0 {
        return Err(BiGraphError::ZeroSide { m, n });
    }
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(BiGraphError::SideTooLarge { side: m.max(n) });
    }
    Ok(())
}

fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BiGraph {
    pub fn empty(m: usize, n: usize) -> Result<Self, BiGraphError> {
        check_sides(m, n)?;
        Ok(BiGraph { m, n, rows: vec![0; m] })
    }

    /// Builds a graph from 1-based `(row, column)` pairs.
    pub fn from_edge_list(
        m: usize,
        n: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, BiGraphError> {
        let mut g = Self::empty(m, n)?;
        for &(i, j) in edges {
            if i == 0 || j == 0 || i > m || j > n {
                return Err(BiGraphError::IndexOutOfRange { i, j, m, n });
            }
            if g.has_edge(i - 1, j - 1) {
                return Err(BiGraphError::DuplicateEdge { i, j });
            }
            g.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(g)
    }

    /// Builds a graph from row bitmasks (bit `j` of `rows[i]` is the cell `(i, j)`).
    pub fn from_rows(m: usize, n: usize, rows: Vec<u64>) -> Result<Self, BiGraphError> {
        check_sides(m, n)?;
        assert_eq!(rows.len(), m, "expected one bitmask per row");
        for (i, &r) in rows.iter().enumerate() {
            if r & !row_mask(n) != 0 {
                let j = 64 - r.leading_zeros() as usize;
                return Err(BiGraphError::IndexOutOfRange { i: i + 1, j, m, n });
            }
        }
        Ok(BiGraph { m, n, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges as 0-based `(row, column)` pairs in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, &r)| {
            (0..self.n).filter(move |&j| r >> j & 1 == 1).map(move |j| (i, j))
        })
    }

    pub fn column_mask(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >> j & 1 == 1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Row degrees `x_i` and column degrees `y_j`.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let x = self.rows.iter().map(|r| r.count_ones() as usize).collect();
        let mut y = vec![0; self.n];
        for (_, j) in self.edges() {
            y[j] += 1;
        }
        (x, y)
    }

    /// Subgraph counts from the degree formulas.
    pub fn stats(&self) -> SubgraphStats {
        let (x, y) = self.degrees();
        let sum = |ds: &[usize], t| ds.iter().map(|&d| binom(d as u64, t)).sum::<u64>();
        let p3 = self
            .edges()
            .map(|(i, j)| (x[i] as u64).saturating_sub(1) * (y[j] as u64).saturating_sub(1))
            .sum();
        SubgraphStats {
            p2_r: sum(&x, 2),
            p2_c: sum(&y, 2),
            p3,
            claw3_r: sum(&x, 3),
            claw3_c: sum(&y, 3),
        }
    }

    /// The graph under `(R_i, C_j) -> (R_j, C_i)`.
    pub fn transpose(&self) -> Result<Self, BiGraphError> {
        if !self.is_square() {
            return Err(BiGraphError::NotSquare { m: self.m, n: self.n });
        }
        let rows = (0..self.n).map(|j| self.column_mask(j)).collect();
        Ok(BiGraph { m: self.n, n: self.m, rows })
    }

    pub fn complement(&self) -> Self {
        let mask = row_mask(self.n);
        BiGraph {
            m: self.m,
            n: self.n,
            rows: self.rows.iter().map(|r| !r & mask).collect(),
        }
    }

    /// Byte string identifying the class of `self` under row and column permutations,
    /// or, with [`Variant::AllowTau`] on a square grid, under the full automorphism
    /// group of `K_{m,m}`.
    pub fn canonical_form(&self, variant: Variant) -> Vec<u8> {
        canon::canonical_form(self, variant)
    }

    /// Permutes rows and columns: row `i` moves to `row_perm[i]`, column `j` to `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut rows = vec![0u64; self.m];
        for (i, j) in self.edges() {
            rows[row_perm[i]] |= 1 << col_perm[j];
        }
        BiGraph { m: self.m, n: self.n, rows }
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }
}

impl fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGraph({}x{}; ", self.m, self.n)?;
        for (idx, r) in self.rows.iter().enumerate() {
            if idx > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.n {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
        }
        f.write_str(")")
    }
}

fn distinct(a: usize, b: usize, c: usize) -> usize {
    1 + usize::from(b != a) + usize::from(c != a && c != b)
}

/// Counts the same quantities as [`BiGraph::stats`] by listing edge pairs and
/// triples explicitly. Quadratic/cubic in the edge count; meant for cross-checks.
pub fn enumerate_stats(g: &BiGraph) -> SubgraphStats {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut s = SubgraphStats::default();
    for (a, &(i1, j1)) in edges.iter().enumerate() {
        for &(i2, j2) in &edges[a + 1..] {
            if i1 == i2 {
                s.p2_r += 1;
            }
            if j1 == j2 {
                s.p2_c += 1;
            }
        }
    }
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            for c in b + 1..edges.len() {
                let (e, f, h) = (edges[a], edges[b], edges[c]);
                let rows = distinct(e.0, f.0, h.0);
                let cols = distinct(e.1, f.1, h.1);
                match (rows, cols) {
                    (1, 3) => s.claw3_r += 1,
                    (3, 1) => s.claw3_c += 1,
                    // two rows and two columns: an L-shape plus one more cell, which is
                    // always a path R-C-R-C since no cell repeats
                    (2, 2) => s.p3 += 1,
                    _ => {}
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> BiGraph {
        // rows 1..8, columns 1..2; row 1 meets both columns
        BiGraph::from_edge_list(8, 2, &[(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (5, 2)]).unwrap()
    }

    #[test]
    fn path_on_two_by_two() {
        let g = BiGraph::from_edge_list(2, 2, &[(1, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), (vec![2, 1], vec![2, 1]));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            BiGraph::from_edge_list(1, 1, &[(1, 2)]),
            Err(BiGraphError::IndexOutOfRange { i: 1, j: 2, m: 1, n: 1 })
        );
        assert_eq!(
            BiGraph::from_edge_list(2, 2, &[(1, 1), (1, 1)]),
            Err(BiGraphError::DuplicateEdge { i: 1, j: 1 })
        );
        assert_eq!(BiGraph::from_edge_list(0, 3, &[]), Err(BiGraphError::ZeroSide { m: 0, n: 3 }));
        assert!(matches!(
            BiGraph::from_edge_list(65, 2, &[]),
            Err(BiGraphError::SideTooLarge { side: 65 })
        ));
    }

    #[test]
    fn degrees_of_small_graphs() {
        let (mut x, y) = fig2().degrees();
        x.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(x, vec![2, 1, 1, 1, 1, 0, 0, 0]);
        assert_eq!(y, vec![4, 2]);
        let empty = BiGraph::empty(3, 3).unwrap();
        assert_eq!(empty.degrees(), (vec![0; 3], vec![0; 3]));
    }

    #[test]
    fn stats_of_fig2_and_single_edge() {
        let s = fig2().stats();
        assert_eq!(
            s,
            SubgraphStats { p2_r: 1, p2_c: 7, p3: 4, claw3_r: 0, claw3_c: 4 }
        );
        assert_eq!(enumerate_stats(&fig2()), s);
        let one = BiGraph::from_edge_list(2, 2, &[(1, 1)]).unwrap();
        assert_eq!(one.stats(), SubgraphStats::default());
    }

    #[test]
    fn transpose_and_complement() {
        let p4 = BiGraph::from_edge_list(3, 3, &[(1, 1), (2, 1), (2, 2), (3, 2)]).unwrap();
        let t = p4.transpose().unwrap();
        assert_eq!(t, BiGraph::from_edge_list(3, 3, &[(1, 1), (1, 2), (2, 2), (2, 3)]).unwrap());
        assert_eq!(t.transpose().unwrap(), p4);
        let sym = BiGraph::from_edge_list(2, 2, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(sym.transpose().unwrap(), sym);
        assert_eq!(
            fig2().transpose(),
            Err(BiGraphError::NotSquare { m: 8, n: 2 })
        );

        let e = BiGraph::empty(2, 3).unwrap();
        assert_eq!(e.complement().edge_count(), 6);
        assert_eq!(e.complement().complement(), e);
        assert_eq!(fig2().complement().edge_count(), 10);
    }

    #[test]
    fn wide_rows_are_supported() {
        let edges: Vec<(usize, usize)> = (1..=64).map(|j| (1, j)).collect();
        let g = BiGraph::from_edge_list(1, 64, &edges).unwrap();
        assert_eq!(g.edge_count(), 64);
        assert_eq!(g.complement().edge_count(), 0);
    }
}

use std::fmt;

use serde::Serialize;

use super::perm::Perm;
use super::PermGroupError;
use crate::bigraph::BiGraph;

/// An element of `K = Sym(R) x Sym(C)` or, with `swap`, of the wreath product `G`.
///
/// With `swap` the transpose is applied first, so the cell `(i, j)` goes to
/// `(row_perm[j], col_perm[i])`; otherwise to `(row_perm[i], col_perm[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GridPerm {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub swap: bool,
}

impl GridPerm {
    pub fn identity(m: usize, n: usize) -> Self {
        GridPerm { row_perm: (0..m).collect(), col_perm: (0..n).collect(), swap: false }
    }

    pub fn tau(m: usize) -> Self {
        GridPerm { swap: true, ..GridPerm::identity(m, m) }
    }

    pub fn m(&self) -> usize {
        self.row_perm.len()
    }

    pub fn n(&self) -> usize {
        self.col_perm.len()
    }

    pub fn cell_image(&self, i: usize, j: usize) -> (usize, usize) {
        if self.swap {
            (self.row_perm[j], self.col_perm[i])
        } else {
            (self.row_perm[i], self.col_perm[j])
        }
    }

    /// The action on the vertex set `R_1..R_m, C_1..C_n` (rows first).
    pub fn vertex_perm(&self) -> Perm {
        let (m, n) = (self.m(), self.n());
        let rows = (0..m).map(|i| if self.swap { m + self.col_perm[i] } else { self.row_perm[i] });
        let cols = (0..n).map(|j| if self.swap { self.row_perm[j] } else { m + self.col_perm[j] });
        let images = rows.chain(cols).collect();
        Perm::from_images(images)
    }

    /// Inverse of [`GridPerm::vertex_perm`]; the permutation must preserve the bipartition.
    pub fn from_vertex_perm(m: usize, n: usize, p: &Perm) -> Self {
        let swap = m > 0 && p.image(0) >= m;
        if swap {
            GridPerm {
                row_perm: (0..n).map(|j| p.image(m + j)).collect(),
                col_perm: (0..m).map(|i| p.image(i) - m).collect(),
                swap,
            }
        } else {
            GridPerm {
                row_perm: (0..m).map(|i| p.image(i)).collect(),
                col_perm: (0..n).map(|j| p.image(m + j) - m).collect(),
                swap,
            }
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GridPerm) -> GridPerm {
        let p = self.vertex_perm().then(&other.vertex_perm());
        GridPerm::from_vertex_perm(self.m(), self.n(), &p)
    }

    pub fn inverse(&self) -> GridPerm {
        GridPerm::from_vertex_perm(self.m(), self.n(), &self.vertex_perm().inverse())
    }

    pub fn is_identity(&self) -> bool {
        !self.swap
            && self.row_perm.iter().enumerate().all(|(i, &r)| i == r)
            && self.col_perm.iter().enumerate().all(|(j, &c)| j == c)
    }

    /// The image `g^p` of a graph.
    pub fn apply(&self, g: &BiGraph) -> Result<BiGraph, PermGroupError> {
        if self.m() != g.m() || self.n() != g.n() {
            return Err(PermGroupError::SizeMismatch { m: g.m(), n: g.n() });
        }
        if self.swap {
            let t = g.transpose().map_err(|_| PermGroupError::NotSquare { m: g.m(), n: g.n() })?;
            Ok(t.permuted(&self.row_perm, &self.col_perm))
        } else {
            Ok(g.permuted(&self.row_perm, &self.col_perm))
        }
    }
}

fn cycle_text(tag: &str, images: &[usize]) -> Option<String> {
    let cycles = Perm::from_images(images.to_vec()).cycles();
    if cycles.is_empty() {
        return None;
    }
    let mut out = tag.to_string();
    for c in cycles {
        let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&format!(" ({})", body.join(" ")));
    }
    Some(out)
}

/// Cycle notation with 1-based indices, e.g. `rowcyc (1 2 3) colcyc (1 2) swap`.
impl fmt::Display for GridPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "identity");
        }
        let mut parts: Vec<String> = [cycle_text("rowcyc", &self.row_perm), cycle_text("colcyc", &self.col_perm)]
            .into_iter()
            .flatten()
            .collect();
        if self.swap {
            parts.push("swap".to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_one_based_cycles() {
        let p = GridPerm { row_perm: vec![1, 2, 0], col_perm: vec![1, 0, 2], swap: true };
        assert_eq!(p.to_string(), "rowcyc (1 2 3) colcyc (1 2) swap");
        assert_eq!(GridPerm::identity(2, 3).to_string(), "identity");
    }

    #[test]
    fn row_three_cycle_has_order_three() {
        let g = BiGraph::from_edge_list(3, 2, &[(1, 1), (2, 2), (1, 2)]).unwrap();
        let p = GridPerm { row_perm: vec![1, 2, 0], col_perm: vec![0, 1], swap: false };
        let once = p.apply(&g).unwrap();
        assert_ne!(once, g);
        let thrice = p.apply(&p.apply(&once).unwrap()).unwrap();
        assert_eq!(thrice, g);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let g = BiGraph::from_edge_list(3, 3, &[(1, 1), (1, 2), (2, 3)]).unwrap();
        let p = GridPerm { row_perm: vec![2, 0, 1], col_perm: vec![0, 2, 1], swap: true };
        let q = GridPerm { row_perm: vec![1, 0, 2], col_perm: vec![2, 1, 0], swap: false };
        let seq = q.apply(&p.apply(&g).unwrap()).unwrap();
        assert_eq!(p.then(&q).apply(&g).unwrap(), seq);
        assert_eq!(p.inverse().apply(&p.apply(&g).unwrap()).unwrap(), g);
        for (i, j) in g.edges() {
            let (a, b) = p.cell_image(i, j);
            assert!(p.apply(&g).unwrap().has_edge(a, b));
        }
    }

    #[test]
    fn swap_needs_square_grid() {
        let g = BiGraph::empty(2, 3).unwrap();
        let p = GridPerm { row_perm: vec![0, 1], col_perm: vec![0, 1, 2], swap: true };
        assert!(p.apply(&g).is_err());
    }
}

//! Explicit infinite families: paths and even cycles laid out along the grid diagonal.

use thiserror::Error;

use crate::bigraph::BiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a {what} with {k} edges needs {rows} rows and {cols} columns, the grid is {m}x{n}")]
    DoesNotFit { what: &'static str, k: usize, rows: usize, cols: usize, m: usize, n: usize },
    #[error("cycles need an even number of edges, at least 4; got {0}")]
    BadCycleLength(usize),
    #[error("a path needs at least one edge")]
    EmptyPath,
}

/// The path `R_1 C_1 R_2 C_2 ...` with `k` edges: `{R_i, C_i}` for `i <= ceil(k/2)` and
/// `{R_{i+1}, C_i}` for `i <= floor(k/2)`.
pub fn family_path(k: usize, m: usize, n: usize) -> Result<BiGraph, FamilyError> {
    if k == 0 {
        return Err(FamilyError::EmptyPath);
    }
    let (rows, cols) = (k / 2 + 1, k.div_ceil(2));
    if rows > m || cols > n {
        return Err(FamilyError::DoesNotFit { what: "path", k, rows, cols, m, n });
    }
    let mut edges: Vec<(usize, usize)> = (1..=cols).map(|i| (i, i)).collect();
    edges.extend((1..=k / 2).map(|i| (i + 1, i)));
    Ok(BiGraph::from_edge_list(m, n, &edges).expect("path edges are distinct and in range"))
}

/// The cycle `R_1 C_1 R_2 ... R_a C_a R_1` with `k = 2a` edges on the `m x m` grid.
pub fn family_cycle(k: usize, m: usize) -> Result<BiGraph, FamilyError> {
    if k < 4 || k % 2 == 1 {
        return Err(FamilyError::BadCycleLength(k));
    }
    let a = k / 2;
    if a > m {
        return Err(FamilyError::DoesNotFit { what: "cycle", k, rows: a, cols: a, m, n: m });
    }
    let mut edges: Vec<(usize, usize)> = (1..=a).map(|i| (i, i)).collect();
    edges.extend((1..a).map(|i| (i + 1, i)));
    edges.push((1, a));
    Ok(BiGraph::from_edge_list(m, m, &edges).expect("cycle edges are distinct and in range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_degrees() {
        let g = family_path(5, 4, 4).unwrap();
        assert_eq!(g.degrees(), (vec![1, 2, 2, 0], vec![2, 2, 1, 0]));
        let g = family_path(4, 3, 3).unwrap();
        assert_eq!(g.degrees(), (vec![1, 2, 1], vec![2, 2, 0]));
        assert_eq!(family_path(3, 2, 2).unwrap().edge_count(), 3);
        assert!(family_path(5, 2, 4).is_err());
        assert!(family_path(0, 2, 2).is_err());
    }

    #[test]
    fn cycle_degrees() {
        let g = family_cycle(6, 4).unwrap();
        assert_eq!(g.degrees(), (vec![2, 2, 2, 0], vec![2, 2, 2, 0]));
        assert_eq!(family_cycle(4, 2).unwrap().edge_count(), 4);
        assert_eq!(family_cycle(7, 4), Err(FamilyError::BadCycleLength(7)));
        assert!(family_cycle(10, 4).is_err());
    }
}

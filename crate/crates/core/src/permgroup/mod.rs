//! Stabilisers of a block inside `K = S_m x S_n` and `G = S_m wr S_2`.
//!
//! Generators come from the refinement search in [`crate::canon`]; exact orders come from
//! a stabiliser chain built on those generators over the `m + n` vertices.

mod grid_perm;
mod perm;
mod schreier;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::arith::factorial;
use crate::bigraph::BiGraph;
use crate::canon::{self, ColoredGraph, Variant};

pub use grid_perm::GridPerm;
pub use perm::Perm;
pub use schreier::StabChain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermGroupError {
    #[error("the group G needs a square grid, got {m}x{n}")]
    NotSquare { m: usize, n: usize },
    #[error("group element does not act on a {m}x{n} grid")]
    SizeMismatch { m: usize, n: usize },
    #[error("edge transitivity is undefined for an empty edge set")]
    EmptyEdgeSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupKind {
    /// Independent row and column permutations.
    K,
    /// `K` together with the transpose; square grids only.
    G,
}

/// Stabilisers of `B(g)` in `K` and, for square grids, in `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    pub k_gens: Vec<GridPerm>,
    pub k_order: BigUint,
    pub g_gens: Option<Vec<GridPerm>>,
    pub g_order: Option<BigUint>,
    pub tau_equivalent: Option<bool>,
}

impl AutReport {
    pub fn order(&self, kind: GroupKind) -> Option<&BigUint> {
        match kind {
            GroupKind::K => Some(&self.k_order),
            GroupKind::G => self.g_order.as_ref(),
        }
    }

    pub fn generators(&self, kind: GroupKind) -> Option<&[GridPerm]> {
        match kind {
            GroupKind::K => Some(&self.k_gens),
            GroupKind::G => self.g_gens.as_deref(),
        }
    }
}

/// `m! n!` for `K`, `2 (m!)^2` for `G`.
pub fn group_order(m: usize, n: usize, kind: GroupKind) -> Result<BigUint, PermGroupError> {
    match kind {
        GroupKind::K => Ok(factorial(m as u64) * factorial(n as u64)),
        GroupKind::G if m == n => Ok(factorial(m as u64).pow(2) * 2u32),
        GroupKind::G => Err(PermGroupError::NotSquare { m, n }),
    }
}

pub fn apply(p: &GridPerm, g: &BiGraph) -> Result<BiGraph, PermGroupError> {
    p.apply(g)
}

/// Generators of the stabiliser, with its order from the refinement search itself.
fn stabilizer(g: &BiGraph, kind: GroupKind) -> (Vec<GridPerm>, BigUint, BigUint) {
    let (m, n) = (g.m(), g.n());
    let cg = ColoredGraph::for_bigraph(g, kind == GroupKind::G);
    let result = canon::search(&cg);
    let gens: Vec<GridPerm> = result
        .generators
        .iter()
        .map(|images| {
            let p = Perm::from_images(images[..m + n].to_vec());
            GridPerm::from_vertex_perm(m, n, &p)
        })
        .collect();
    let vertex_gens: Vec<Perm> = gens.iter().map(GridPerm::vertex_perm).collect();
    let chain_order = StabChain::new(m + n, &vertex_gens).order();
    let search_order = result
        .first_path_orbits
        .iter()
        .fold(BigUint::one(), |acc, &s| acc * s);
    (gens, chain_order, search_order)
}

pub fn automorphisms(g: &BiGraph) -> AutReport {
    let (k_gens, k_order, k_check) = stabilizer(g, GroupKind::K);
    assert_eq!(k_order, k_check, "stabiliser chain and search disagree on |K_D|");
    let mut report = AutReport { k_gens, k_order, g_gens: None, g_order: None, tau_equivalent: None };
    if g.is_square() {
        let (g_gens, g_order, g_check) = stabilizer(g, GroupKind::G);
        assert_eq!(g_order, g_check, "stabiliser chain and search disagree on |G_D|");
        let swaps = g_gens.iter().any(|p| p.swap);
        debug_assert_eq!(swaps, tau_equivalent(g).unwrap());
        debug_assert!(g_order == report.k_order || g_order == &report.k_order * 2u32);
        report.tau_equivalent = Some(swaps);
        report.g_gens = Some(g_gens);
        report.g_order = Some(g_order);
    }
    report
}

/// Whether the transpose of `g` is a side-preserving image of `g`.
pub fn tau_equivalent(g: &BiGraph) -> Result<bool, PermGroupError> {
    let t = g.transpose().map_err(|_| PermGroupError::NotSquare { m: g.m(), n: g.n() })?;
    Ok(g.canonical_form(Variant::SidePreserving) == t.canonical_form(Variant::SidePreserving))
}

/// Orbits of the stabiliser on the edges of `g`, as sorted lists of 0-based cells.
pub fn edge_orbits(
    g: &BiGraph,
    report: &AutReport,
    kind: GroupKind,
) -> Result<Vec<Vec<(usize, usize)>>, PermGroupError> {
    let gens = report
        .generators(kind)
        .ok_or(PermGroupError::NotSquare { m: g.m(), n: g.n() })?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index = |cell: (usize, usize)| edges.binary_search(&cell).expect("generator fixes the edge set");
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in gens {
        for (e, &(i, j)) in edges.iter().enumerate() {
            let f = index(p.cell_image(i, j));
            let (a, b) = (find(&mut parent, e), find(&mut parent, f));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut slot = vec![usize::MAX; edges.len()];
    for (e, &edge) in edges.iter().enumerate() {
        let r = find(&mut parent, e);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(edge);
    }
    Ok(orbits)
}

/// True iff the stabiliser has a single orbit on the edges of `g`, i.e. the design it
/// generates is flag-transitive.
pub fn is_edge_transitive(g: &BiGraph, report: &AutReport, kind: GroupKind) -> Result<bool, PermGroupError> {
    if g.edge_count() == 0 {
        return Err(PermGroupError::EmptyEdgeSet);
    }
    Ok(edge_orbits(g, report, kind)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5_in_4x4() -> BiGraph {
        BiGraph::from_edge_list(4, 4, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]).unwrap()
    }

    fn c6_in_4x4() -> BiGraph {
        BiGraph::from_edge_list(4, 4, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(4, 4, GroupKind::K).unwrap(), BigUint::from(576u32));
        assert_eq!(group_order(4, 4, GroupKind::G).unwrap(), BigUint::from(1152u32));
        assert_eq!(group_order(8, 2, GroupKind::K).unwrap(), BigUint::from(80640u32));
        assert!(group_order(8, 2, GroupKind::G).is_err());
    }

    #[test]
    fn path_stabiliser() {
        let r = automorphisms(&p5_in_4x4());
        assert_eq!(r.g_order, Some(BigUint::from(2u32)));
        assert_eq!(r.k_order, BigUint::one());
        assert_eq!(r.tau_equivalent, Some(true));
        assert!(!is_edge_transitive(&p5_in_4x4(), &r, GroupKind::G).unwrap());
    }

    #[test]
    fn cycle_stabiliser() {
        let g = c6_in_4x4();
        let r = automorphisms(&g);
        assert_eq!(r.g_order, Some(BigUint::from(12u32)));
        assert!(is_edge_transitive(&g, &r, GroupKind::G).unwrap());
        assert_eq!(r.k_order, BigUint::from(6u32));
        assert!(is_edge_transitive(&g, &r, GroupKind::K).unwrap());
    }

    #[test]
    fn generators_fix_the_block() {
        for g in [p5_in_4x4(), c6_in_4x4(), BiGraph::empty(3, 3).unwrap()] {
            let r = automorphisms(&g);
            for p in r.k_gens.iter().chain(r.g_gens.iter().flatten()) {
                assert_eq!(p.apply(&g).unwrap(), g, "{p}");
            }
        }
    }

    #[test]
    fn empty_graph_has_full_group() {
        let r = automorphisms(&BiGraph::empty(3, 3).unwrap());
        assert_eq!(r.k_order, BigUint::from(36u32));
        assert_eq!(r.g_order, Some(BigUint::from(72u32)));
        let r = automorphisms(&BiGraph::empty(5, 2).unwrap());
        assert_eq!(r.k_order, BigUint::from(240u32));
        assert_eq!(r.g_order, None);
    }

    #[test]
    fn single_edge_is_edge_transitive() {
        let g = BiGraph::from_edge_list(2, 2, &[(1, 1)]).unwrap();
        let r = automorphisms(&g);
        assert!(is_edge_transitive(&g, &r, GroupKind::K).unwrap());
        assert_eq!(
            is_edge_transitive(&BiGraph::empty(2, 2).unwrap(), &r, GroupKind::K),
            Err(PermGroupError::EmptyEdgeSet)
        );
    }
}

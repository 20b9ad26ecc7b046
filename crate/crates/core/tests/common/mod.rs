#![allow(dead_code)]

use std::collections::BTreeMap;

use griddesigns::{BiGraph, GridPerm, Variant};

/// All permutations of `0..n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every element of `K`, or of `G` when `with_tau` (square grids only).
pub fn group_elements(m: usize, n: usize, with_tau: bool) -> Vec<GridPerm> {
    let rows = permutations(m);
    let cols = permutations(n);
    let mut out = Vec::new();
    for swap in [false, true] {
        if swap && !with_tau {
            continue;
        }
        for r in &rows {
            for c in &cols {
                out.push(GridPerm { row_perm: r.clone(), col_perm: c.clone(), swap });
            }
        }
    }
    out
}

pub fn all_graphs(m: usize, n: usize) -> impl Iterator<Item = BiGraph> {
    let cells = m * n;
    (0u64..1 << cells).map(move |mask| {
        let rows = (0..m).map(|i| (mask >> (i * n)) & ((1 << n) - 1)).collect();
        BiGraph::from_rows(m, n, rows).unwrap()
    })
}

/// One representative per isomorphism class, keyed by canonical form, found by brute
/// enumeration of every graph on the grid.
pub fn classes(m: usize, n: usize, variant: Variant) -> BTreeMap<Vec<u8>, BiGraph> {
    let mut out = BTreeMap::new();
    for g in all_graphs(m, n) {
        out.entry(g.canonical_form(variant)).or_insert(g);
    }
    out
}

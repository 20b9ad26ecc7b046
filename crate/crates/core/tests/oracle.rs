//! The closed-form criteria against explicit orbit designs.

mod common;

use griddesigns::arith::binom;
use griddesigns::criteria::{check_d, check_dhat, CriteriaReport};
use griddesigns::oracle::{self, Budget};
use griddesigns::permgroup::{automorphisms, group_order, is_edge_transitive, GroupKind};
use griddesigns::search::{family_cycle, family_path};
use griddesigns::{BiGraph, Variant};
use num_bigint::BigUint;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn path_in_four_by_four() {
    let g = family_path(5, 4, 4).unwrap();
    let d = oracle::materialize(&g, GroupKind::G, &budget()).unwrap();
    assert_eq!(d.b(), 576);
    let hist = oracle::lambda_table(&d, 2, &budget()).unwrap();
    assert_eq!(oracle::histogram_is_design(&hist), Some(48));
    assert!(!oracle::flag_transitive_direct(&d));
}

#[test]
fn cycle_in_four_by_four() {
    let g = family_cycle(6, 4).unwrap();
    let d = oracle::materialize(&g, GroupKind::G, &budget()).unwrap();
    assert_eq!(oracle::histogram_is_design(&oracle::lambda_table(&d, 2, &budget()).unwrap()), Some(12));
    assert!(oracle::histogram_is_design(&oracle::lambda_table(&d, 4, &budget()).unwrap()).is_none());
    assert!(oracle::flag_transitive_direct(&d));
    let aut = automorphisms(&g);
    assert!(is_edge_transitive(&g, &aut, GroupKind::G).unwrap());
    assert_eq!(check_dhat(&g, &aut).unwrap().lambda_2, Some(BigUint::from(12u32)));
}

#[test]
fn cycle_in_six_by_six() {
    let g = family_cycle(8, 6).unwrap();
    let aut = automorphisms(&g);
    assert_eq!(aut.g_order, Some(BigUint::from(64u32)));
    assert_eq!(check_dhat(&g, &aut).unwrap().lambda_2, Some(BigUint::from(720u32)));
}

#[test]
fn complete_small_designs() {
    let g = family_path(3, 2, 2).unwrap();
    let r = CriteriaReport::new(&g, &automorphisms(&g)).unwrap();
    assert!(r.d.is_2design && r.d.is_3design);
    assert_eq!(r.d.b, BigUint::from(4u32));
    let g = family_cycle(4, 2).unwrap();
    let d = oracle::materialize(&g, GroupKind::G, &budget()).unwrap();
    assert_eq!(d.b(), 1);
}

/// Every class on the grid, every t: the formulas and the explicit orbit agree, as do the
/// per-orbit ratios, the explicit flag orbits and the structural invariants.
fn sweep(m: usize, n: usize) {
    let b = budget();
    for g in common::classes(m, n, Variant::SidePreserving).into_values() {
        let k = g.edge_count();
        if k == 0 || 2 * k > m * n {
            continue;
        }
        let aut = automorphisms(&g);
        let mut kinds = vec![GroupKind::K];
        if m == n {
            kinds.push(GroupKind::G);
        }
        for kind in kinds {
            let verdict = match kind {
                GroupKind::K => check_d(&g, &aut).unwrap(),
                GroupKind::G => check_dhat(&g, &aut).unwrap(),
            };
            let d = oracle::materialize(&g, kind, &b).unwrap();
            let full = group_order(m, n, kind).unwrap();
            assert_eq!(BigUint::from(d.b()) * aut.order(kind).unwrap(), full);
            assert_eq!(BigUint::from(d.b()), verdict.b);
            assert_eq!(BigUint::from(d.b() * k), &verdict.r * (m * n));
            for t in [2u32, 3] {
                let hist = oracle::lambda_table(&d, t as usize, &b).unwrap();
                let lambda = oracle::histogram_is_design(&hist);
                assert_eq!(lambda.is_some(), verdict.holds(t), "{g:?} {kind:?} t={t}");
                assert_eq!(lambda.map(BigUint::from), verdict.lambda(t).cloned());
                let ratios = oracle::orbit_ratio_check(&g, kind, t).unwrap();
                assert_eq!(ratios.holds, verdict.holds(t), "{g:?} {kind:?} t={t} ratios");
                let total: u64 = ratios.orbits.iter().map(|o| o.in_block).sum();
                assert_eq!(total, binom(k as u64, u64::from(t)));
            }
            assert_eq!(oracle::flag_transitive_direct(&d), is_edge_transitive(&g, &aut, kind).unwrap());
        }
    }
}

#[test]
fn criteria_match_oracle_up_to_three_by_three() {
    for m in 1..=3 {
        for n in 1..=3 {
            sweep(m, n);
        }
    }
}

#[test]
fn criteria_match_oracle_on_rectangles() {
    sweep(2, 4);
    sweep(4, 2);
    sweep(2, 5);
}

#[test]
fn block_export_round_trips_cells() {
    let g = BiGraph::from_edge_list(2, 3, &[(1, 1), (2, 3)]).unwrap();
    let d = oracle::materialize(&g, GroupKind::K, &budget()).unwrap();
    let text = oracle::export_blocks(&d);
    assert_eq!(text.lines().count(), d.b());
    assert!(text.lines().all(|l| l.starts_with("block ") && l.split(' ').count() == 3));
    assert!(text.contains("block 1,1 2,3\n"));
}

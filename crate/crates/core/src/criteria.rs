//! Exact t-design criteria for the block orbits of a grid subgraph.
//!
//! Verdicts depend only on [`SubgraphStats`]; the stabiliser orders in an [`AutReport`]
//! are needed for `b`, `r` and `lambda`. Right-hand sides are exact integer quotients, so
//! a non-integral one simply fails.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{big_binom, exact_div, factorial, product};
use crate::bigraph::{BiGraph, SubgraphStats};
use crate::permgroup::{group_order, AutReport, GroupKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("the transposed design needs a square grid, got {m}x{n}")]
    NotSquare { m: usize, n: usize },
    #[error("t must be 2 or 3, got {0}")]
    UnsupportedT(u32),
    #[error("lambda for a {t}-design is not an integer; stabiliser order {order} is inconsistent with the graph")]
    NonIntegralLambda { t: u32, order: BigUint },
}

/// `num / den` when it is an integer; `None` for a zero or non-dividing denominator.
fn exact_ratio(num: u128, den: u128) -> Option<u64> {
    (den != 0 && num.is_multiple_of(den)).then(|| u64::try_from(num / den).expect("count fits in u64"))
}

fn falling(k: u64, t: u64) -> u128 {
    (0..t).map(|i| u128::from(k.saturating_sub(i))).product()
}

/// The exact subgraph counts a side-preserving orbit design needs; `None` marks a
/// non-integral right-hand side, which no graph can meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DTargets {
    pub p2_r: Option<u64>,
    pub p2_c: Option<u64>,
    pub claw3_r: Option<u64>,
    pub claw3_c: Option<u64>,
    pub p3: Option<u64>,
}

pub fn d_targets(m: u64, n: u64, k: u64) -> DTargets {
    let v = u128::from(m * n);
    let (m, n) = (u128::from(m), u128::from(n));
    let den2 = 2 * (v - 1);
    let den3 = (v - 1) * v.saturating_sub(2);
    DTargets {
        p2_r: exact_ratio(falling(k, 2) * (n - 1), den2),
        p2_c: exact_ratio(falling(k, 2) * (m - 1), den2),
        claw3_r: exact_ratio(falling(k, 3) * (n - 1) * n.saturating_sub(2), 6 * den3),
        claw3_c: exact_ratio(falling(k, 3) * (m - 1) * m.saturating_sub(2), 6 * den3),
        p3: exact_ratio(falling(k, 3) * (m - 1) * (n - 1), den3),
    }
}

/// Totals over both sides that the orbit design under `G` needs (square grids).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DhatTargets {
    pub two_paths: Option<u64>,
    pub claws: Option<u64>,
    pub p3: Option<u64>,
}

pub fn dhat_targets(m: u64, k: u64) -> DhatTargets {
    let m = u128::from(m);
    let q = (m * m).saturating_sub(2);
    DhatTargets {
        two_paths: exact_ratio(falling(k, 2), m + 1),
        claws: exact_ratio(falling(k, 3) * m.saturating_sub(2), 3 * (m + 1) * q),
        p3: exact_ratio(falling(k, 3) * (m - 1), (m + 1) * q),
    }
}

/// Verdicts for the side-preserving orbit design at t = 2 and t = 3.
pub fn d_conditions(m: u64, n: u64, k: u64, s: &SubgraphStats) -> (bool, bool) {
    let t = d_targets(m, n, k);
    let two = k >= 2 && t.p2_r == Some(s.p2_r) && t.p2_c == Some(s.p2_c);
    let three = two
        && k >= 3
        && t.claw3_r == Some(s.claw3_r)
        && t.claw3_c == Some(s.claw3_c)
        && t.p3 == Some(s.p3);
    (two, three)
}

/// Verdicts for the orbit design under the full group `G` of a square grid.
pub fn dhat_conditions(m: u64, k: u64, s: &SubgraphStats) -> (bool, bool) {
    let t = dhat_targets(m, k);
    let two = k >= 2 && t.two_paths == Some(s.two_paths());
    let three = two && k >= 3 && t.claws == Some(s.claws()) && t.p3 == Some(s.p3);
    (two, three)
}

/// The simplified conditions valid when the graph is equivalent to its transpose: the
/// per-side counts agree and twice each equals the balanced total.
fn tau_equivalent_conditions(m: u64, k: u64, s: &SubgraphStats) -> (bool, bool) {
    let m = u128::from(m);
    let q = (m * m).saturating_sub(2);
    let two = k >= 2
        && s.p2_r == s.p2_c
        && exact_ratio(falling(k, 2), m + 1) == Some(2 * s.p2_r);
    let three = two
        && k >= 3
        && s.claw3_r == s.claw3_c
        && exact_ratio(falling(k, 3) * m.saturating_sub(2), 3 * (m + 1) * q) == Some(2 * s.claw3_r)
        && exact_ratio(falling(k, 3) * (m - 1), (m + 1) * q) == Some(s.p3);
    (two, three)
}

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

/// `numerator / (denominator * stabiliser order)`, which must be exact.
fn lambda(t: u32, numerator: BigUint, denominator: BigUint, order: &BigUint) -> Result<BigUint, CriteriaError> {
    exact_div(&numerator, &(denominator * order))
        .ok_or_else(|| CriteriaError::NonIntegralLambda { t, order: order.clone() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignVerdict {
    pub is_2design: bool,
    pub is_3design: bool,
    #[serde(serialize_with = "opt_decimal")]
    pub lambda_2: Option<BigUint>,
    #[serde(serialize_with = "opt_decimal")]
    pub lambda_3: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub b: BigUint,
    /// Replication number `b k / v` of the underlying 1-design.
    #[serde(serialize_with = "decimal")]
    pub r: BigUint,
}

impl DesignVerdict {
    pub fn holds(&self, t: u32) -> bool {
        match t {
            2 => self.is_2design,
            3 => self.is_3design,
            _ => false,
        }
    }

    pub fn lambda(&self, t: u32) -> Option<&BigUint> {
        match t {
            2 => self.lambda_2.as_ref(),
            3 => self.lambda_3.as_ref(),
            _ => None,
        }
    }

    fn check_counting_identity(&self, v: u64, k: u64) {
        for t in [2u32, 3] {
            if let Some(l) = self.lambda(t) {
                assert_eq!(
                    l * big_binom(v, u64::from(t)),
                    &self.b * big_binom(k, u64::from(t)),
                    "lambda C(v,t) = b C(k,t) fails at t={t}"
                );
            }
        }
    }
}

fn replication(b: &BigUint, k: u64, v: u64) -> BigUint {
    exact_div(&(b * k), &BigUint::from(v)).expect("the group is transitive on cells, so v divides bk")
}

/// Side-preserving design: orbit of the block under `K`.
pub fn check_d(g: &BiGraph, aut: &AutReport) -> Result<DesignVerdict, CriteriaError> {
    let (m, n, k) = (g.m() as u64, g.n() as u64, g.edge_count() as u64);
    let s = g.stats();
    let (two, three) = d_conditions(m, n, k, &s);
    if aut.tau_equivalent == Some(true) {
        assert_eq!((two, three), tau_equivalent_conditions(m, k, &s), "transpose-symmetric shortcut disagrees");
    }
    let order = &aut.k_order;
    let b = exact_div(&group_order(g.m(), g.n(), GroupKind::K).unwrap(), order)
        .expect("stabiliser order divides |K|");
    let v = m * n;
    let base = factorial(m - 1) * factorial(n - 1);
    let lambda_2 = two
        .then(|| lambda(2, &base * big(falling(k, 2)), big(u128::from(v - 1)), order))
        .transpose()?;
    let lambda_3 = three
        .then(|| lambda(3, &base * big(falling(k, 3)), product([v - 1, v - 2]), order))
        .transpose()?;
    let verdict = DesignVerdict { is_2design: two, is_3design: three, lambda_2, lambda_3, r: replication(&b, k, v), b };
    verdict.check_counting_identity(v, k);
    Ok(verdict)
}

/// Design under the full group `G` of a square grid.
pub fn check_dhat(g: &BiGraph, aut: &AutReport) -> Result<DesignVerdict, CriteriaError> {
    let (m, n) = (g.m(), g.n());
    let (Some(order), true) = (aut.g_order.as_ref(), g.is_square()) else {
        return Err(CriteriaError::NotSquare { m, n });
    };
    let (m, k) = (m as u64, g.edge_count() as u64);
    let s = g.stats();
    let (two, three) = dhat_conditions(m, k, &s);
    let b = exact_div(&group_order(g.m(), g.n(), GroupKind::G).unwrap(), order)
        .expect("stabiliser order divides |G|");
    let v = m * m;
    let base = factorial(m - 1) * factorial(m.saturating_sub(2)) * 2u32;
    let lambda_2 = two
        .then(|| lambda(2, &base * big(falling(k, 2)), BigUint::from(m + 1), order))
        .transpose()?;
    let lambda_3 = three
        .then(|| lambda(3, &base * big(falling(k, 3)), product([m + 1, m * m - 2]), order))
        .transpose()?;
    let verdict = DesignVerdict { is_2design: two, is_3design: three, lambda_2, lambda_3, r: replication(&b, k, v), b };
    verdict.check_counting_identity(v, k);
    Ok(verdict)
}

/// Which of the three ways a square-grid orbit design can be a t-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// Transpose-equivalent graph, so both orbits coincide, and the design is a t-design.
    Case1,
    /// Distinct orbits, both t-designs.
    Case2,
    /// Only the orbit under `G` is a t-design.
    Case3,
    None,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Case1 => "case1",
            CaseLabel::Case2 => "case2",
            CaseLabel::Case3 => "case3",
            CaseLabel::None => "none",
        }
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseAnalysis {
    pub t: u32,
    pub label: CaseLabel,
    /// `sum C(x_i, 2)` misses its balanced value `k(k-1)/(2(m+1))`.
    pub row_pairs_unbalanced: bool,
    /// `sum C(x_i, 3)` misses `k(k-1)(k-2)(m-2)/(6(m+1)(m^2-2))`; only evaluated for t = 3.
    pub row_triples_unbalanced: Option<bool>,
}

pub fn classify_case(g: &BiGraph, aut: &AutReport, t: u32) -> Result<CaseAnalysis, CriteriaError> {
    if !(2..=3).contains(&t) {
        return Err(CriteriaError::UnsupportedT(t));
    }
    let (Some(tau_eq), true) = (aut.tau_equivalent, g.is_square()) else {
        return Err(CriteriaError::NotSquare { m: g.m(), n: g.n() });
    };
    let (m, k) = (g.m() as u64, g.edge_count() as u64);
    let s = g.stats();
    let d = d_conditions(m, m, k, &s);
    let dhat = dhat_conditions(m, k, &s);
    let (d_t, dhat_t) = if t == 2 { (d.0, dhat.0) } else { (d.1, dhat.1) };
    let label = match (d_t, dhat_t, tau_eq) {
        (true, _, true) => CaseLabel::Case1,
        (true, _, false) => CaseLabel::Case2,
        (false, true, _) => CaseLabel::Case3,
        (false, false, _) => CaseLabel::None,
    };
    if d_t {
        assert!(dhat_t, "a side-preserving t-design must also be a t-design under G");
    }
    let mm = u128::from(m);
    let row_pairs_unbalanced = exact_ratio(falling(k, 2), 2 * (mm + 1)) != Some(s.p2_r);
    let row_triples_unbalanced = (t == 3).then(|| {
        exact_ratio(falling(k, 3) * mm.saturating_sub(2), 6 * (mm + 1) * (mm * mm).saturating_sub(2)) != Some(s.claw3_r)
    });
    let discriminated = dhat_t && (row_pairs_unbalanced || row_triples_unbalanced == Some(true));
    assert_eq!(discriminated, label == CaseLabel::Case3, "case (3) discriminator disagrees with direct verdicts");
    Ok(CaseAnalysis { t, label, row_pairs_unbalanced, row_triples_unbalanced })
}

/// Everything known about one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriteriaReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub v: usize,
    pub stats: SubgraphStats,
    /// `k` lies outside `3 <= k <= mn/2`, where the criteria are usually stated.
    pub outside_standing_range: bool,
    #[serde(serialize_with = "decimal")]
    pub k_order: BigUint,
    #[serde(serialize_with = "opt_decimal")]
    pub g_order: Option<BigUint>,
    pub tau_equivalent: Option<bool>,
    pub d: DesignVerdict,
    pub dhat: Option<DesignVerdict>,
    pub case_t2: Option<CaseAnalysis>,
    pub case_t3: Option<CaseAnalysis>,
}

impl CriteriaReport {
    pub fn new(g: &BiGraph, aut: &AutReport) -> Result<Self, CriteriaError> {
        let k = g.edge_count();
        let v = g.m() * g.n();
        let square = g.is_square();
        Ok(CriteriaReport {
            m: g.m(),
            n: g.n(),
            k,
            v,
            stats: g.stats(),
            outside_standing_range: k < 3 || 2 * k > v,
            k_order: aut.k_order.clone(),
            g_order: aut.g_order.clone(),
            tau_equivalent: aut.tau_equivalent,
            d: check_d(g, aut)?,
            dhat: square.then(|| check_dhat(g, aut)).transpose()?,
            case_t2: square.then(|| classify_case(g, aut, 2)).transpose()?,
            case_t3: square.then(|| classify_case(g, aut, 3)).transpose()?,
        })
    }

    pub fn verdict(&self, kind: GroupKind) -> Option<&DesignVerdict> {
        match kind {
            GroupKind::K => Some(&self.d),
            GroupKind::G => self.dhat.as_ref(),
        }
    }
}

pub(crate) fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

pub(crate) fn opt_decimal<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => decimal(x, s),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::automorphisms;

    fn graph(m: usize, n: usize, e: &[(usize, usize)]) -> BiGraph {
        BiGraph::from_edge_list(m, n, e).unwrap()
    }

    fn fig2() -> BiGraph {
        graph(8, 2, &[(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (5, 2)])
    }

    #[test]
    fn fig2_is_a_3_design_with_lambda_80() {
        let g = fig2();
        let d = check_d(&g, &automorphisms(&g)).unwrap();
        assert!(d.is_2design && d.is_3design);
        assert_eq!(d.lambda_3, Some(BigUint::from(80u32)));
        assert_eq!(d.b, BigUint::from(2240u32));
        assert_eq!(d.r, BigUint::from(840u32));
    }

    #[test]
    fn p5_in_4x4_is_case1() {
        let g = graph(4, 4, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]);
        let aut = automorphisms(&g);
        let d = check_d(&g, &aut).unwrap();
        assert!(d.is_2design && !d.is_3design);
        assert_eq!(d.lambda_2, Some(BigUint::from(48u32)));
        assert_eq!(check_dhat(&g, &aut).unwrap().lambda_2, Some(BigUint::from(48u32)));
        assert_eq!(classify_case(&g, &aut, 2).unwrap().label, CaseLabel::Case1);
        assert_eq!(classify_case(&g, &aut, 3).unwrap().label, CaseLabel::None);
    }

    #[test]
    fn p4_in_3x3_is_case3() {
        let g = graph(3, 3, &[(1, 1), (2, 1), (2, 2), (3, 2)]);
        let aut = automorphisms(&g);
        let d = check_d(&g, &aut).unwrap();
        assert!(!d.is_2design);
        assert_eq!(d.lambda_2, None);
        assert!(check_dhat(&g, &aut).unwrap().is_2design);
        let case = classify_case(&g, &aut, 2).unwrap();
        assert_eq!(case.label, CaseLabel::Case3);
        assert!(case.row_pairs_unbalanced);
    }

    #[test]
    fn c6_in_4x4_lambda_12() {
        let g = graph(4, 4, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)]);
        let dhat = check_dhat(&g, &automorphisms(&g)).unwrap();
        assert!(dhat.is_2design);
        assert_eq!(dhat.lambda_2, Some(BigUint::from(12u32)));
    }

    #[test]
    fn tiny_k_is_never_a_design() {
        let g = graph(2, 2, &[(1, 1)]);
        let d = check_d(&g, &automorphisms(&g)).unwrap();
        assert!(!d.is_2design && !d.is_3design);
        let report = CriteriaReport::new(&g, &automorphisms(&g)).unwrap();
        assert!(report.outside_standing_range);
    }

    #[test]
    fn dhat_needs_square() {
        let g = fig2();
        assert!(matches!(check_dhat(&g, &automorphisms(&g)), Err(CriteriaError::NotSquare { .. })));
        assert!(classify_case(&g, &automorphisms(&g), 2).is_err());
    }
}

//! Divisibility prefilters: parameter tuples for which the exact count targets of the
//! design criteria are integers. Anything failing here has no graph to search for.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Target {
    /// 3-design under `G` on a square grid.
    Dhat3,
    /// 2-design under `G` on a square grid.
    Dhat2,
    /// 3-design under `K`.
    D3,
}

impl Target {
    pub fn tag(self) -> &'static str {
        match self {
            Target::Dhat3 => "dhat3",
            Target::Dhat2 => "dhat2",
            Target::D3 => "d3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ParamTuple {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub target: Target,
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "feasible m={} n={} k={} target={}", self.m, self.n, self.k, self.target.tag())
    }
}

fn divides(d: u128, x: u128) -> bool {
    d != 0 && x.is_multiple_of(d)
}

/// Conditions (1)-(3) for a 3-design under `G` on the `m x m` grid.
pub fn square3_feasible(m: u64, k: u64) -> bool {
    let (m, k) = (u128::from(m), u128::from(k));
    let q = m * m - 2;
    let kkk = k * (k - 1) * (k - 2);
    divides(m + 1, k * (k - 1)) && divides(3 * (m + 1) * q, kkk * (m - 2)) && divides((m + 1) * q, kkk * (m - 1))
}

pub fn square2_feasible(m: u64, k: u64) -> bool {
    divides(u128::from(m) + 1, u128::from(k) * u128::from(k - 1))
}

/// The five count targets of a 3-design under `K` are all integers.
pub fn general3_feasible(m: u64, n: u64, k: u64) -> bool {
    let (m, n, k) = (u128::from(m), u128::from(n), u128::from(k));
    let v = m * n;
    let kk = k * (k - 1);
    let kkk = kk * (k - 2);
    divides(2 * (v - 1), kk * (n - 1))
        && divides(2 * (v - 1), kk * (m - 1))
        && divides(6 * (v - 1) * (v - 2), kkk * (n - 1) * (n - 2))
        && divides(6 * (v - 1) * (v - 2), kkk * (m - 1) * (m - 2))
        && divides((v - 1) * (v - 2), kkk * (m - 1) * (n - 1))
}

fn square_scan(max_m: u64, target: Target, feasible: fn(u64, u64) -> bool) -> Vec<ParamTuple> {
    (2..=max_m)
        .into_par_iter()
        .flat_map_iter(|m| {
            (3..=m * m / 2)
                .filter(move |&k| feasible(m, k))
                .map(move |k| ParamTuple { m, n: m, k, target })
        })
        .collect()
}

/// All `(m, k)` with `m <= max_m` and `3 <= k <= m^2/2` passing conditions (1)-(3).
pub fn scan_square_3design(max_m: u64) -> Vec<ParamTuple> {
    square_scan(max_m, Target::Dhat3, square3_feasible)
}

/// All `(m, k)` with `m <= max_m` and `3 <= k <= m^2/2` such that `m + 1` divides `k(k-1)`.
pub fn scan_square_2design(max_m: u64) -> Vec<ParamTuple> {
    square_scan(max_m, Target::Dhat2, square2_feasible)
}

/// All `(m, n, k)` with `max_m >= m >= n >= 2`, `n <= max_n` and `3 <= k <= mn/2` whose
/// 3-design targets under `K` are integral, ordered by `(m, n, k)`.
pub fn scan_general_3design(max_m: u64, max_n: u64) -> Vec<ParamTuple> {
    (2..=max_m)
        .into_par_iter()
        .flat_map_iter(|m| {
            (2..=m.min(max_n)).flat_map(move |n| {
                (3..=m * n / 2)
                    .filter(move |&k| general3_feasible(m, n, k))
                    .map(move |k| ParamTuple { m, n, k, target: Target::D3 })
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[ParamTuple]) -> Vec<(u64, u64)> {
        v.iter().map(|p| (p.m, p.k)).collect()
    }

    #[test]
    fn square3_small_bounds() {
        assert!(scan_square_3design(10).is_empty());
        assert_eq!(pairs(&scan_square_3design(11)), vec![(11, 36)]);
    }

    #[test]
    fn square2_families() {
        let found = scan_square_2design(12);
        for m in 3..=12 {
            assert!(found.iter().any(|p| p.m == m && p.k == m + 1));
            if m % 2 == 0 && m >= 4 {
                assert!(found.iter().any(|p| p.m == m && p.k == m + 2));
            }
        }
        assert!(!found.iter().any(|p| p.m == 4 && p.k == 7));
    }

    #[test]
    fn general_first_tuples() {
        let found = scan_general_3design(12, 12);
        let firsts: Vec<_> = found.iter().take(2).map(|p| (p.m, p.n, p.k)).collect();
        assert_eq!(firsts, vec![(8, 2, 6), (11, 7, 20)]);
    }

    #[test]
    fn display_line() {
        let p = ParamTuple { m: 11, n: 11, k: 36, target: Target::Dhat3 };
        assert_eq!(p.to_string(), "feasible m=11 n=11 k=36 target=dhat3");
    }
}

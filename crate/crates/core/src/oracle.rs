//! Brute-force ground truth: the block orbit is generated explicitly and t-subset
//! coverage is counted directly, with no use of the closed-form criteria.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::binom;
use crate::bigraph::BiGraph;
use crate::permgroup::GroupKind;

/// Largest grid the oracle handles: blocks are stored as 128-bit cell masks.
pub const MAX_POINTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("block orbit exceeds the budget of {limit} blocks")]
    TooManyBlocks { limit: usize },
    #[error("{needed} t-subsets exceed the budget of {limit}")]
    TooManySubsets { needed: u128, limit: u64 },
    #[error("{v} points exceed the oracle's limit of {MAX_POINTS}")]
    TooManyPoints { v: usize },
    #[error("the group G needs a square grid, got {m}x{n}")]
    NotSquare { m: usize, n: usize },
    #[error("orbit types are tabulated for t = 2 and t = 3 only, got {0}")]
    UnsupportedT(u32),
}

impl OracleError {
    pub fn is_budget(&self) -> bool {
        matches!(self, OracleError::TooManyBlocks { .. } | OracleError::TooManySubsets { .. } | OracleError::TooManyPoints { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_blocks: usize,
    pub max_subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_blocks: 2_000_000, max_subsets: 50_000_000 }
    }
}

/// A block-transitive incidence structure written out in full.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDesign {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub group: GroupKind,
    /// Sorted block masks; cell `(i, j)` is bit `i * n + j`.
    pub blocks: Vec<u128>,
}

impl ExplicitDesign {
    pub fn v(&self) -> usize {
        self.m * self.n
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, Copy)]
enum Generator {
    Rows(usize),
    Cols(usize),
    Tau,
}

struct Action {
    n: usize,
    gens: Vec<Generator>,
    row_mask: u128,
    col_masks: Vec<u128>,
}

impl Action {
    fn new(m: usize, n: usize, kind: GroupKind) -> Self {
        let mut gens: Vec<Generator> = (0..m - 1).map(Generator::Rows).collect();
        gens.extend((0..n - 1).map(Generator::Cols));
        if kind == GroupKind::G {
            gens.push(Generator::Tau);
        }
        let row_mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let col_masks = (0..n).map(|j| (0..m).fold(0u128, |acc, i| acc | 1 << (i * n + j))).collect();
        Action { n, gens, row_mask, col_masks }
    }

    fn cell(&self, c: usize, gen: Generator) -> usize {
        let (i, j) = (c / self.n, c % self.n);
        match gen {
            Generator::Rows(r) if i == r => c + self.n,
            Generator::Rows(r) if i == r + 1 => c - self.n,
            Generator::Cols(s) if j == s => c + 1,
            Generator::Cols(s) if j == s + 1 => c - 1,
            Generator::Tau => j * self.n + i,
            _ => c,
        }
    }

    fn block(&self, x: u128, gen: Generator) -> u128 {
        match gen {
            Generator::Rows(r) => {
                let (lo, hi) = (r * self.n, (r + 1) * self.n);
                let a = (x >> lo) & self.row_mask;
                let b = (x >> hi) & self.row_mask;
                (x & !((self.row_mask << lo) | (self.row_mask << hi))) | (a << hi) | (b << lo)
            }
            Generator::Cols(s) => {
                let (ca, cb) = (self.col_masks[s], self.col_masks[s + 1]);
                (x & !(ca | cb)) | ((x & ca) << 1) | ((x & cb) >> 1)
            }
            Generator::Tau => {
                let mut y = 0u128;
                let mut rest = x;
                while rest != 0 {
                    let c = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    y |= 1 << self.cell(c, gen);
                }
                y
            }
        }
    }
}

fn block_mask(g: &BiGraph) -> u128 {
    g.edges().fold(0u128, |acc, (i, j)| acc | 1 << (i * g.n() + j))
}

fn check_grid(g: &BiGraph, kind: GroupKind) -> Result<(), OracleError> {
    if kind == GroupKind::G && !g.is_square() {
        return Err(OracleError::NotSquare { m: g.m(), n: g.n() });
    }
    if g.m() * g.n() > MAX_POINTS {
        return Err(OracleError::TooManyPoints { v: g.m() * g.n() });
    }
    Ok(())
}

/// The orbit of `B(g)` under `K` or `G`, by breadth-first closure under adjacent
/// transpositions of rows and of columns (and the transpose for `G`).
pub fn materialize(g: &BiGraph, kind: GroupKind, budget: &Budget) -> Result<ExplicitDesign, OracleError> {
    check_grid(g, kind)?;
    let action = Action::new(g.m(), g.n(), kind);
    let start = block_mask(g);
    let mut seen: HashSet<u128> = HashSet::from([start]);
    let mut queue = vec![start];
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next];
        next += 1;
        for &gen in &action.gens {
            let y = action.block(x, gen);
            if seen.insert(y) {
                if seen.len() > budget.max_blocks {
                    return Err(OracleError::TooManyBlocks { limit: budget.max_blocks });
                }
                queue.push(y);
            }
        }
    }
    queue.sort_unstable();
    Ok(ExplicitDesign { m: g.m(), n: g.n(), k: g.edge_count(), group: kind, blocks: queue })
}

fn binom_table(v: usize, t: usize) -> Vec<Vec<u64>> {
    (0..=v).map(|x| (0..=t).map(|s| binom(x as u64, s as u64)).collect()).collect()
}

/// Calls `f` on every `t`-subset of the set bits of `x`, as ascending cell indices.
fn for_each_subset(x: u128, t: usize, mut f: impl FnMut(&[usize])) {
    let cells: Vec<usize> = (0..128).filter(|&c| x >> c & 1 == 1).collect();
    if t > cells.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    let mut sub = vec![0; t];
    loop {
        for (s, &i) in sub.iter_mut().zip(&idx) {
            *s = cells[i];
        }
        f(&sub);
        let mut p = t;
        while p > 0 && idx[p - 1] == cells.len() - t + p - 1 {
            p -= 1;
        }
        if p == 0 {
            return;
        }
        idx[p - 1] += 1;
        for q in p..t {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Histogram `coverage -> number of t-subsets of points with that coverage`.
pub fn lambda_table(d: &ExplicitDesign, t: usize, budget: &Budget) -> Result<BTreeMap<u64, u64>, OracleError> {
    let v = d.v();
    let needed = u128::from(binom(v as u64, t as u64));
    if needed > u128::from(budget.max_subsets) {
        return Err(OracleError::TooManySubsets { needed, limit: budget.max_subsets });
    }
    let table = binom_table(v, t);
    let size = needed as usize;
    let rank = |sub: &[usize]| -> usize { sub.iter().enumerate().map(|(i, &c)| table[c][i + 1] as usize).sum() };
    let counts = d
        .blocks
        .par_iter()
        .fold(
            || vec![0u32; size],
            |mut acc, &block| {
                for_each_subset(block, t, |sub| acc[rank(sub)] += 1);
                acc
            },
        )
        .reduce(
            || vec![0u32; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut hist = BTreeMap::new();
    for c in counts {
        *hist.entry(u64::from(c)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// A t-design needs every t-subset covered the same, positive, number of times.
pub fn histogram_is_design(hist: &BTreeMap<u64, u64>) -> Option<u64> {
    match hist.keys().collect::<Vec<_>>()[..] {
        [&lambda] if lambda > 0 => Some(lambda),
        _ => None,
    }
}

/// One orbit of the group on t-subsets of points, and how many of them lie in the block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub name: &'static str,
    #[serde(serialize_with = "crate::criteria::decimal")]
    pub size: BigUint,
    pub in_block: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRatioReport {
    pub t: u32,
    pub orbits: Vec<OrbitCount>,
    /// `in_block / size` is the same for every orbit, and the block has at least t points.
    pub holds: bool,
}

fn orbit_table(m: u64, n: u64, kind: GroupKind, t: u32) -> Vec<(&'static str, BigUint)> {
    let c2 = |x: u64| binom(x, 2);
    let c3 = |x: u64| binom(x, 3);
    let sizes: Vec<(&'static str, u128)> = match (kind, t) {
        (GroupKind::K, 2) => vec![
            ("same-row", u128::from(m * c2(n))),
            ("same-column", u128::from(n * c2(m))),
            ("independent", 2 * u128::from(c2(m)) * u128::from(c2(n))),
        ],
        (GroupKind::G, 2) => vec![
            ("collinear", u128::from(m * m * (m - 1))),
            ("independent", u128::from(m * m * (m - 1) * (m - 1) / 2)),
        ],
        (GroupKind::K, 3) => vec![
            ("row-claw", u128::from(m * c3(n))),
            ("column-claw", u128::from(n * c3(m))),
            ("3-path", u128::from(m * n * (m - 1) * (n - 1))),
            ("row-pair-plus-one", u128::from(m * c2(n) * (m - 1) * n.saturating_sub(2))),
            ("column-pair-plus-one", u128::from(n * c2(m) * (n - 1) * m.saturating_sub(2))),
            ("independent", u128::from(c3(m)) * u128::from(n * (n - 1) * n.saturating_sub(2))),
        ],
        (GroupKind::G, 3) => {
            let (a, b, c) = (m, m - 1, m.saturating_sub(2));
            vec![
                ("claw", u128::from(a * a * b * c / 3)),
                ("3-path", u128::from(a * a * b * b)),
                ("pair-plus-one", u128::from(a * a * b * b * c)),
                ("independent", u128::from(a * a * b * b * c * c / 6)),
            ]
        }
        _ => unreachable!(),
    };
    sizes.into_iter().map(|(name, s)| (name, BigUint::from(s))).collect()
}

/// Index into [`orbit_table`] for a t-subset of cells.
fn orbit_of(cells: &[(usize, usize)], kind: GroupKind) -> usize {
    let mut rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
    let mut cols: Vec<usize> = cells.iter().map(|c| c.1).collect();
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    match (kind, cells.len(), rows.len(), cols.len()) {
        (GroupKind::K, 2, 1, _) => 0,
        (GroupKind::K, 2, _, 1) => 1,
        (GroupKind::K, 2, _, _) => 2,
        (GroupKind::G, 2, 1, _) | (GroupKind::G, 2, _, 1) => 0,
        (GroupKind::G, 2, _, _) => 1,
        (GroupKind::K, 3, 1, 3) => 0,
        (GroupKind::K, 3, 3, 1) => 1,
        (GroupKind::K, 3, 2, 2) => 2,
        (GroupKind::K, 3, 2, 3) => 3,
        (GroupKind::K, 3, 3, 2) => 4,
        (GroupKind::K, 3, 3, 3) => 5,
        (GroupKind::G, 3, 1, 3) | (GroupKind::G, 3, 3, 1) => 0,
        (GroupKind::G, 3, 2, 2) => 1,
        (GroupKind::G, 3, 2, 3) | (GroupKind::G, 3, 3, 2) => 2,
        (GroupKind::G, 3, 3, 3) => 3,
        other => unreachable!("impossible cell configuration {other:?}"),
    }
}

/// Tests the design property on the single block: the block must meet every orbit of
/// t-subsets in proportion to the orbit's size.
pub fn orbit_ratio_check(g: &BiGraph, kind: GroupKind, t: u32) -> Result<OrbitRatioReport, OracleError> {
    if !(2..=3).contains(&t) {
        return Err(OracleError::UnsupportedT(t));
    }
    if kind == GroupKind::G && !g.is_square() {
        return Err(OracleError::NotSquare { m: g.m(), n: g.n() });
    }
    let table = orbit_table(g.m() as u64, g.n() as u64, kind, t);
    let mut counts = vec![0u64; table.len()];
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let k = edges.len();
    if t == 2 {
        for a in 0..k {
            for b in a + 1..k {
                counts[orbit_of(&[edges[a], edges[b]], kind)] += 1;
            }
        }
    } else {
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    counts[orbit_of(&[edges[a], edges[b], edges[c]], kind)] += 1;
                }
            }
        }
    }
    let orbits: Vec<OrbitCount> = table
        .into_iter()
        .zip(counts)
        .filter(|((_, size), _)| *size > BigUint::ZERO)
        .map(|((name, size), in_block)| OrbitCount { name, size, in_block })
        .collect();
    // a grid with fewer than t cells has no orbits at all, and no t-design
    let proportional = orbits.first().is_some_and(|first| {
        orbits.iter().all(|o| &first.size * o.in_block == &o.size * first.in_block)
    });
    Ok(OrbitRatioReport { t, orbits, holds: proportional && k >= t as usize })
}

/// True iff the group has a single orbit on incident (point, block) pairs.
pub fn flag_transitive_direct(d: &ExplicitDesign) -> bool {
    let flags = d.blocks.len() * d.k;
    if flags == 0 {
        return false;
    }
    let action = Action::new(d.m, d.n, d.group);
    let index: HashMap<u128, usize> = d.blocks.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    // flag (block, cell) is numbered block * k + rank of the cell inside the block
    let flag = |bi: usize, block: u128, c: usize| bi * d.k + (block & ((1u128 << c) - 1)).count_ones() as usize;
    let mut parent: Vec<usize> = (0..flags).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = flags;
    for (bi, &block) in d.blocks.iter().enumerate() {
        for &gen in &action.gens {
            let image = action.block(block, gen);
            let bj = index[&image];
            let mut rest = block;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let a = find(&mut parent, flag(bi, block, c));
                let b = find(&mut parent, flag(bj, image, action.cell(c, gen)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                    components -= 1;
                }
            }
        }
    }
    components == 1
}

/// One `block i,j ...` line per block, 1-based cells in row-major order.
pub fn export_blocks(d: &ExplicitDesign) -> String {
    let mut out = String::new();
    for &block in &d.blocks {
        out.push_str("block");
        for c in 0..d.v() {
            if block >> c & 1 == 1 {
                write!(out, " {},{}", c / d.n + 1, c % d.n + 1).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

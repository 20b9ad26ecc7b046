//! Degree-sequence-first exhaustive search.
//!
//! A branch is a pair of degree sequences `(x, y)`, both non-increasing, that meets the
//! per-side count targets and the Gale-Ryser condition. Within a branch the rows are
//! filled in order (row `i` gets `x_i` ones); columns that agree on all rows placed so far
//! are interchangeable, so a row only ever takes a prefix of each such class. Leaves are
//! deduplicated by canonical form and filtered by the remaining criteria.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Dedup, SearchError, SearchSpec, SearchTarget};
use crate::arith::binom;
use crate::bigraph::{BiGraph, MAX_SIDE};
use crate::canon::Variant;
use crate::criteria::{d_conditions, d_targets, dhat_conditions, dhat_targets};
use crate::permgroup::{automorphisms, is_edge_transitive, GroupKind};

/// Accepts or rejects a (row degrees, column degrees) pair.
type SideFilter = dyn Fn(&[usize], &[usize]) -> bool;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Results in emission order, tagged with their branch index.
    pub found: Vec<(usize, BiGraph)>,
    pub branches: usize,
    /// Realisation steps spent, including any partial branch.
    pub nodes: u64,
    /// First branch not fully explored when the node budget ran out.
    pub frontier: Option<usize>,
}

fn validate(spec: &SearchSpec) -> Result<(), SearchError> {
    let (m, n, k) = (spec.m, spec.n, spec.k);
    if m == 0 || n == 0 || m > MAX_SIDE || n > MAX_SIDE {
        return Err(SearchError::BadGrid { m, n, max: MAX_SIDE });
    }
    if spec.target.needs_square() && m != n {
        return Err(SearchError::NotSquare { target: spec.target, m, n });
    }
    if spec.dedup == Dedup::AllowTau && m != n {
        return Err(SearchError::TauOnRectangle { m, n });
    }
    if k > m * n {
        return Err(SearchError::TooManyEdges { k, m, n });
    }
    Ok(())
}

/// Non-increasing sequences of `len` parts in `0..=cap` summing to `total`, in
/// lexicographically decreasing order.
fn partitions(total: usize, len: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, len: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if total > cap * len {
            return;
        }
        for part in (total.div_ceil(len)..=cap.min(total)).rev() {
            prefix.push(part);
            rec(total - part, len - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, len, cap, &mut Vec::new(), &mut out);
    out
}

fn pair_sum(seq: &[usize], t: u64) -> u64 {
    seq.iter().map(|&d| binom(d as u64, t)).sum()
}

/// Gale-Ryser: a 0-1 matrix with row sums `x` and column sums `y` exists.
fn realizable(x: &[usize], y: &[usize]) -> bool {
    let mut lhs = 0;
    for (r, &xi) in x.iter().enumerate() {
        lhs += xi;
        let rhs: usize = y.iter().map(|&yj| yj.min(r + 1)).sum();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Degree-sequence branches in search order.
pub fn branches(spec: &SearchSpec) -> Result<Vec<Branch>, SearchError> {
    validate(spec)?;
    let (m, n, k) = (spec.m, spec.n, spec.k);
    let (mm, nn, kk) = (m as u64, n as u64, k as u64);
    let t = spec.target.t();
    let xs = partitions(k, m, n);
    let ys = partitions(k, n, m);
    let side_ok: Box<SideFilter> = match spec.target {
        SearchTarget::D2 | SearchTarget::D3 => {
            let tg = d_targets(mm, nn, kk);
            if tg.p2_r.is_none() || tg.p2_c.is_none() || (t == 3 && (tg.claw3_r.is_none() || tg.claw3_c.is_none() || tg.p3.is_none())) {
                return Ok(Vec::new());
            }
            Box::new(move |x, y| {
                Some(pair_sum(x, 2)) == tg.p2_r
                    && Some(pair_sum(y, 2)) == tg.p2_c
                    && (t == 2 || (Some(pair_sum(x, 3)) == tg.claw3_r && Some(pair_sum(y, 3)) == tg.claw3_c))
            })
        }
        _ => {
            let tg = dhat_targets(mm, kk);
            if tg.two_paths.is_none() || (t == 3 && (tg.claws.is_none() || tg.p3.is_none())) {
                return Ok(Vec::new());
            }
            Box::new(move |x, y| {
                Some(pair_sum(x, 2) + pair_sum(y, 2)) == tg.two_paths
                    && (t == 2 || Some(pair_sum(x, 3) + pair_sum(y, 3)) == tg.claws)
            })
        }
    };
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            if spec.dedup == Dedup::AllowTau && x < y {
                continue;
            }
            if side_ok(x, y) && realizable(x, y) {
                out.push(Branch { rows: x.clone(), cols: y.clone() });
            }
        }
    }
    Ok(out)
}

struct Realizer<'a> {
    spec: &'a SearchSpec,
    x: &'a [usize],
    y_desc: Vec<usize>,
    rows: Vec<u64>,
    colsum: Vec<usize>,
    nodes: u64,
    limit: u64,
    seen: HashMap<Vec<u8>, BiGraph>,
}

impl Realizer<'_> {
    /// Columns can still be matched to the target column degrees: sorting both
    /// decreasingly, each current sum must lie within `[y - live, y]`.
    fn columns_feasible(&self, next_row: usize) -> bool {
        let live = self.x[next_row..].iter().filter(|&&d| d > 0).count();
        let mut sums = self.colsum.clone();
        sums.sort_unstable_by(|a, b| b.cmp(a));
        sums.iter().zip(&self.y_desc).all(|(&s, &y)| s <= y && y <= s + live)
    }

    /// Returns false once the node limit is exceeded.
    fn place(&mut self, row: usize, classes: &[(usize, usize)]) -> bool {
        if row == self.x.len() {
            self.leaf();
            return true;
        }
        let mut counts = vec![0; classes.len()];
        self.choose(row, classes, 0, self.x[row], &mut counts)
    }

    fn choose(&mut self, row: usize, classes: &[(usize, usize)], q: usize, need: usize, counts: &mut Vec<usize>) -> bool {
        if q == classes.len() {
            if need > 0 {
                return true;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return false;
            }
            let mut bits = 0u64;
            let mut next = Vec::with_capacity(classes.len() * 2);
            for (&(start, len), &c) in classes.iter().zip(counts.iter()) {
                for j in start..start + c {
                    bits |= 1 << j;
                    self.colsum[j] += 1;
                }
                for part in [(start, c), (start + c, len - c)] {
                    if part.1 > 0 {
                        next.push(part);
                    }
                }
            }
            self.rows[row] = bits;
            let ok = if self.columns_feasible(row + 1) { self.place(row + 1, &next) } else { true };
            for j in 0..self.colsum.len() {
                if bits >> j & 1 == 1 {
                    self.colsum[j] -= 1;
                }
            }
            return ok;
        }
        let rest: usize = classes[q + 1..].iter().map(|c| c.1).sum();
        let len = classes[q].1;
        let lo = need.saturating_sub(rest);
        for c in (lo..=len.min(need)).rev() {
            counts[q] = c;
            if !self.choose(row, classes, q + 1, need - c, counts) {
                return false;
            }
        }
        counts[q] = 0;
        true
    }

    fn leaf(&mut self) {
        let spec = self.spec;
        let g = BiGraph::from_rows(spec.m, spec.n, self.rows.clone()).expect("rows fit the grid");
        let (m, n, k) = (spec.m as u64, spec.n as u64, spec.k as u64);
        let s = g.stats();
        let ok = match spec.target {
            SearchTarget::D2 => d_conditions(m, n, k, &s).0,
            SearchTarget::D3 => d_conditions(m, n, k, &s).1,
            SearchTarget::Dhat2 | SearchTarget::FtDhat2 => dhat_conditions(m, k, &s).0,
            SearchTarget::Dhat3 => dhat_conditions(m, k, &s).1,
        };
        if !ok {
            return;
        }
        let variant = match spec.dedup {
            Dedup::SidePreserving => Variant::SidePreserving,
            Dedup::AllowTau => Variant::AllowTau,
        };
        self.seen.entry(g.canonical_form(variant)).or_insert(g);
    }
}

struct BranchResult {
    found: Vec<BiGraph>,
    nodes: u64,
    aborted: bool,
}

fn run_branch(spec: &SearchSpec, branch: &Branch, limit: u64) -> BranchResult {
    let mut y_desc = branch.cols.clone();
    y_desc.sort_unstable_by(|a, b| b.cmp(a));
    let mut r = Realizer {
        spec,
        x: &branch.rows,
        y_desc,
        rows: vec![0; spec.m],
        colsum: vec![0; spec.n],
        nodes: 0,
        limit,
        seen: HashMap::new(),
    };
    let complete = r.place(0, &[(0, spec.n)]);
    let mut found: Vec<(Vec<u8>, BiGraph)> = r.seen.into_iter().collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut found: Vec<BiGraph> = found.into_iter().map(|(_, g)| g).collect();
    if spec.target == SearchTarget::FtDhat2 {
        found.retain(|g| is_edge_transitive(g, &automorphisms(g), GroupKind::G).unwrap_or(false));
    }
    BranchResult { found, nodes: r.nodes, aborted: !complete }
}

/// Runs the search, handing each branch's results to `emit` in branch order.
///
/// Branches run in parallel but results and budget accounting are independent of the
/// number of workers: the budget is charged branch by branch in order, and the first
/// branch that would overrun it becomes the frontier.
pub fn exhaustive_search_with(
    spec: &SearchSpec,
    mut emit: impl FnMut(usize, &[BiGraph]),
) -> Result<SearchOutcome, SearchError> {
    let all = branches(spec)?;
    let mut outcome = SearchOutcome { found: Vec::new(), branches: all.len(), nodes: 0, frontier: None };
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut idx = spec.resume_from.min(all.len());
    while idx < all.len() {
        let end = (idx + batch).min(all.len());
        let remaining = spec.max_nodes.map_or(u64::MAX, |mx| mx.saturating_sub(outcome.nodes));
        let results: Vec<BranchResult> = all[idx..end].par_iter().map(|b| run_branch(spec, b, remaining)).collect();
        for (offset, r) in results.into_iter().enumerate() {
            outcome.nodes += r.nodes;
            let over = spec.max_nodes.is_some_and(|mx| outcome.nodes > mx);
            if r.aborted || over {
                outcome.frontier = Some(idx + offset);
                return Ok(outcome);
            }
            emit(idx + offset, &r.found);
            outcome.found.extend(r.found.into_iter().map(|g| (idx + offset, g)));
        }
        idx = end;
    }
    Ok(outcome)
}

pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    exhaustive_search_with(spec, |_, _| {})
}

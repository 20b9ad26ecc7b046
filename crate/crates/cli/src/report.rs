//! Text and JSON rendering of verification and oracle results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use griddesigns::criteria::DesignVerdict;
use griddesigns::{AutReport, CriteriaReport, GroupKind};
use serde::Serialize;
use serde_json::{json, Value};

pub fn group_name(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::K => "K",
        GroupKind::G => "G",
    }
}

/// `3-design, v=16 k=6 λ=80` or `not a 2-design`.
pub fn verdict_line(verdict: &DesignVerdict, t: u32, v: usize, k: usize) -> String {
    match verdict.lambda(t) {
        Some(lambda) if verdict.holds(t) => format!("{t}-design, v={v} k={k} λ={lambda}"),
        _ => format!("not a {t}-design"),
    }
}

/// Coverage histogram of one explicit design.
#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub group: &'static str,
    pub t: usize,
    pub blocks: usize,
    /// Coverage value mapped to the number of t-subsets attaining it.
    pub histogram: BTreeMap<String, String>,
    pub lambda: Option<String>,
}

impl OracleSummary {
    pub fn new(kind: GroupKind, t: usize, blocks: usize, hist: &BTreeMap<u64, u64>) -> Self {
        OracleSummary {
            group: group_name(kind),
            t,
            blocks,
            histogram: hist.iter().map(|(c, n)| (c.to_string(), n.to_string())).collect(),
            lambda: griddesigns::oracle::histogram_is_design(hist).map(|l| l.to_string()),
        }
    }

    pub fn text(&self) -> String {
        let cov: Vec<String> = self.histogram.iter().map(|(c, n)| format!("{c}x{n}")).collect();
        let verdict = match &self.lambda {
            Some(l) => format!("{}-design λ={l}", self.t),
            None => format!("not a {}-design", self.t),
        };
        format!("oracle {}: blocks={} coverage {} => {verdict}", self.group, self.blocks, cov.join(" "))
    }
}

pub fn verify_text(
    report: &CriteriaReport,
    aut: &AutReport,
    t: u32,
    groups: &[GroupKind],
    oracle: &[OracleSummary],
) -> String {
    let mut out = String::new();
    let s = &report.stats;
    writeln!(out, "grid {}x{} v={} k={}", report.m, report.n, report.v, report.k).unwrap();
    writeln!(
        out,
        "stats p2_rows={} p2_cols={} p3={} claw3_rows={} claw3_cols={}",
        s.p2_r, s.p2_c, s.p3, s.claw3_r, s.claw3_c
    )
    .unwrap();
    if report.outside_standing_range {
        writeln!(out, "note k lies outside 3 <= k <= mn/2").unwrap();
    }
    if let Some(tau) = report.tau_equivalent {
        writeln!(out, "transpose-equivalent {tau}").unwrap();
    }
    for &kind in groups {
        let (Some(verdict), Some(order)) = (report.verdict(kind), aut.order(kind)) else {
            continue;
        };
        let name = group_name(kind);
        writeln!(out, "{name}: {}", verdict_line(verdict, t, report.v, report.k)).unwrap();
        writeln!(out, "{name}: stabiliser order {order}, b={} r={}", verdict.b, verdict.r).unwrap();
        for g in aut.generators(kind).unwrap_or_default() {
            writeln!(out, "{name}: gen {g}").unwrap();
        }
    }
    let case = if t == 2 { &report.case_t2 } else { &report.case_t3 };
    if let Some(c) = case {
        writeln!(out, "case t={} {}", c.t, c.label.as_str()).unwrap();
    }
    for o in oracle {
        writeln!(out, "{}", o.text()).unwrap();
    }
    out
}

pub fn verify_json(
    report: &CriteriaReport,
    aut: &AutReport,
    t: u32,
    groups: &[GroupKind],
    positive: bool,
    oracle: &[OracleSummary],
) -> Value {
    let generators: BTreeMap<&str, Vec<String>> = groups
        .iter()
        .filter_map(|&kind| {
            let gens = aut.generators(kind)?;
            Some((group_name(kind), gens.iter().map(ToString::to_string).collect()))
        })
        .collect();
    json!({
        "t": t,
        "groups": groups.iter().map(|&g| group_name(g)).collect::<Vec<_>>(),
        "positive": positive,
        "report": report,
        "generators": generators,
        "oracle": if oracle.is_empty() { Value::Null } else { json!(oracle) },
    })
}

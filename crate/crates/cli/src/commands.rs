use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::Path;

use griddesigns::oracle::{self, Budget, OracleError};
use griddesigns::search::{self, Dedup, FamilyError, SearchSpec, SearchTarget};
use griddesigns::{automorphisms, grid_file, scanner, BiGraph, CriteriaReport, GroupKind};
use serde_json::json;

use crate::report::{self, OracleSummary};
use crate::{BudgetArgs, DedupArg, Format, GroupArg, Outcome, SingleGroup};

impl From<BudgetArgs> for Budget {
    fn from(b: BudgetArgs) -> Self {
        Budget { max_blocks: b.max_blocks, max_subsets: b.max_subsets }
    }
}

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers(workers: Option<usize>, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    match workers {
        None => f(),
        Some(0) => Outcome::Usage("--workers must be at least 1".into()),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(f),
            Err(e) => Outcome::Usage(format!("cannot start {w} workers: {e}")),
        },
    }
}

fn read_graph(path: &Path) -> Result<BiGraph, String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    grid_file::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn oracle_failure(e: OracleError) -> Outcome {
    if e.is_budget() {
        Outcome::Budget(e.to_string())
    } else {
        Outcome::Usage(e.to_string())
    }
}

pub fn verify(path: &Path, t: u32, group: Option<GroupArg>, with_oracle: bool, format: Format, budget: BudgetArgs) -> Outcome {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => return Outcome::Usage(e),
    };
    let groups = match group.unwrap_or(if g.is_square() { GroupArg::Both } else { GroupArg::K }) {
        GroupArg::K => vec![GroupKind::K],
        GroupArg::G => vec![GroupKind::G],
        GroupArg::Both => vec![GroupKind::K, GroupKind::G],
    };
    if groups.contains(&GroupKind::G) && !g.is_square() {
        return Outcome::Usage(format!("the group G needs a square grid, got {}x{}", g.m(), g.n()));
    }
    let aut = automorphisms(&g);
    let report = match CriteriaReport::new(&g, &aut) {
        Ok(r) => r,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let positive = groups.iter().all(|&kind| report.verdict(kind).is_some_and(|v| v.holds(t)));

    let mut summaries = Vec::new();
    if with_oracle {
        let budget = Budget::from(budget);
        for &kind in &groups {
            let summary = oracle::materialize(&g, kind, &budget).and_then(|d| {
                let hist = oracle::lambda_table(&d, t as usize, &budget)?;
                Ok(OracleSummary::new(kind, t as usize, d.b(), &hist))
            });
            match summary {
                Ok(s) => summaries.push(s),
                Err(e) => return oracle_failure(e),
            }
        }
    }

    match format {
        Format::Text => print!("{}", report::verify_text(&report, &aut, t, &groups, &summaries)),
        Format::Json => {
            let doc = report::verify_json(&report, &aut, t, &groups, positive, &summaries);
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serialises"));
        }
    }
    if positive { Outcome::Positive } else { Outcome::Negative }
}

pub fn scan(square3: bool, square2: bool, general3: bool, max_m: u64, max_n: Option<u64>) -> Outcome {
    let tuples = if square3 {
        scanner::scan_square_3design(max_m)
    } else if square2 {
        scanner::scan_square_2design(max_m)
    } else {
        debug_assert!(general3);
        scanner::scan_general_3design(max_m, max_n.unwrap_or(max_m))
    };
    let mut out = io::stdout().lock();
    for p in &tuples {
        if writeln!(out, "{p}").is_err() {
            break;
        }
    }
    Outcome::Positive
}

fn result_name(index: usize) -> String {
    format!("result-{index:04}.grid")
}

#[allow(clippy::too_many_arguments)]
pub fn search(
    m: usize,
    n: usize,
    k: usize,
    target: SearchTarget,
    dedup: DedupArg,
    max_nodes: Option<u64>,
    resume_from: usize,
    out_dir: Option<&Path>,
) -> Outcome {
    let mut spec = SearchSpec::new(m, n, k, target);
    spec.dedup = match dedup {
        DedupArg::Side => Dedup::SidePreserving,
        DedupArg::Tau => Dedup::AllowTau,
    };
    spec.max_nodes = max_nodes;
    spec.resume_from = resume_from;
    if let Err(e) = search::branches(&spec) {
        return Outcome::Usage(e.to_string());
    }
    if let Some(dir) = out_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            return Outcome::Usage(format!("{}: {e}", dir.display()));
        }
    }

    let mut count = 0usize;
    let mut failure: Option<String> = None;
    let mut stdout = io::stdout().lock();
    let mut index = Vec::new();
    let outcome = search::exhaustive_search_with(&spec, |branch, found| {
        for g in found {
            count += 1;
            let aut = automorphisms(g);
            let report = CriteriaReport::new(g, &aut).expect("search results satisfy exact criteria");
            let header = format!("result {count} branch {branch} target {target}");
            let text = grid_file::write(g, &[&header]);
            match out_dir {
                Some(dir) => {
                    let name = result_name(count);
                    if let Err(e) = fs::write(dir.join(&name), &text) {
                        failure.get_or_insert(format!("{}: {e}", dir.join(&name).display()));
                    }
                    let line = json!({ "file": name, "branch": branch, "report": report });
                    index.push(serde_json::to_string(&line).expect("report serialises"));
                }
                None => {
                    let _ = writeln!(stdout, "{text}");
                }
            }
        }
        if let Some(dir) = out_dir {
            // Rewritten after every branch so an interrupted run leaves a usable checkpoint.
            let mut body = index.join("\n");
            body.push('\n');
            body.push_str(&format!("# next-branch {}\n", branch + 1));
            if let Err(e) = fs::write(dir.join("index.jsonl"), body) {
                failure.get_or_insert(format!("{}: {e}", dir.join("index.jsonl").display()));
            }
        }
    });
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    if let Some(e) = failure {
        return Outcome::Usage(e);
    }
    eprintln!(
        "searched {} of {} branches, {} nodes, {count} results",
        outcome.frontier.unwrap_or(outcome.branches).saturating_sub(resume_from.min(outcome.branches)),
        outcome.branches,
        outcome.nodes
    );
    match outcome.frontier {
        Some(f) => Outcome::Budget(format!("node budget spent; resume with --resume-from {f}")),
        None if count > 0 => Outcome::Positive,
        None => Outcome::Negative,
    }
}

pub fn family(g: Result<BiGraph, FamilyError>) -> Outcome {
    match g {
        Ok(g) => {
            print!("{}", grid_file::write(&g, &[]));
            Outcome::Positive
        }
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

pub fn oracle(
    path: &Path,
    group: SingleGroup,
    t: usize,
    export: Option<&Path>,
    format: Format,
    budget: BudgetArgs,
) -> Outcome {
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => return Outcome::Usage(e),
    };
    let kind = match group {
        SingleGroup::K => GroupKind::K,
        SingleGroup::G => GroupKind::G,
    };
    let budget = Budget::from(budget);
    let design = match oracle::materialize(&g, kind, &budget) {
        Ok(d) => d,
        Err(e) => return oracle_failure(e),
    };
    if let Some(file) = export {
        if let Err(e) = fs::write(file, oracle::export_blocks(&design)) {
            return Outcome::Usage(format!("{}: {e}", file.display()));
        }
    }
    let hist = match oracle::lambda_table(&design, t, &budget) {
        Ok(h) => h,
        Err(e) => return oracle_failure(e),
    };
    let summary = OracleSummary::new(kind, t, design.b(), &hist);
    match format {
        Format::Text => println!("{}", summary.text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary).expect("summary serialises")),
    }
    if summary.lambda.is_some() { Outcome::Positive } else { Outcome::Negative }
}

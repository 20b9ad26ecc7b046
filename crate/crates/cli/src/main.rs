//! `griddesigns`: verify, scan, search and explore block-transitive grid designs.
//!
//! Exit status: 0 when the requested verdict is positive, 1 when it is negative, 2 for
//! usage or input errors and 3 when a budget was exhausted.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "griddesigns", version, about = "Block-transitive 2- and 3-designs on m x n grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    #[value(name = "K")]
    K,
    #[value(name = "G")]
    G,
    #[value(name = "both")]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SingleGroup {
    #[value(name = "K")]
    K,
    #[value(name = "G")]
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DedupArg {
    Side,
    Tau,
}

#[derive(clap::Args, Clone, Copy, Debug)]
pub struct BudgetArgs {
    /// Largest block orbit the oracle may materialise.
    #[arg(long, env = "GRIDDESIGNS_BUDGET_BLOCKS", default_value_t = 2_000_000)]
    pub max_blocks: usize,
    /// Largest number of t-subsets the oracle may tabulate.
    #[arg(long, env = "GRIDDESIGNS_BUDGET_SUBSETS", default_value_t = 50_000_000)]
    pub max_subsets: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the design criteria for a graph file (`-` reads standard input).
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
        t: u32,
        /// Group whose orbit forms the design; defaults to both on square grids, K otherwise.
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        /// Also count t-subset coverage on the explicitly generated design.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// List parameters passing the divisibility conditions.
    #[command(group(ArgGroup::new("mode").required(true).args(["square3", "square2", "general3"])))]
    Scan {
        /// 3-designs under G on square grids.
        #[arg(long)]
        square3: bool,
        /// 2-designs under G on square grids.
        #[arg(long)]
        square2: bool,
        /// 3-designs under K with m >= n.
        #[arg(long)]
        general3: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_m: u64,
        /// Bound on n for --general3 (defaults to --max-m).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        max_n: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Exhaustive search for graphs meeting a target.
    Search {
        #[arg(long)]
        m: usize,
        /// Defaults to m.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// d2, d3, dhat2, dhat3 or ft-dhat2.
        #[arg(long)]
        target: griddesigns::search::SearchTarget,
        #[arg(long, value_enum, default_value_t = DedupArg::Side)]
        dedup: DedupArg,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Branch index to start from, as reported by an exhausted run.
        #[arg(long, default_value_t = 0)]
        resume_from: usize,
        /// Write one graph file per result plus an index here, instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print a graph from a built-in family.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Generate the design explicitly and count t-subset coverage.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        group: SingleGroup,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        /// Write the block list to this file.
        #[arg(long)]
        export_blocks: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Path with k edges along the diagonal.
    Path {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Defaults to m.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cycle with k edges (k even) on the m x m grid.
    Cycle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// One of the bundled witness graphs: fig1, fig2 or fig3.
    Figure { name: griddesigns::figures::Figure },
}

/// How a command finished.
pub enum Outcome {
    Positive,
    Negative,
    Usage(String),
    Budget(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { file, t, group, with_oracle, format, budget } => {
            commands::verify(&file, t, group, with_oracle, format, budget)
        }
        Command::Scan { square3, square2, general3, max_m, max_n, workers } => {
            commands::with_workers(workers, || commands::scan(square3, square2, general3, max_m, max_n))
        }
        Command::Search { m, n, k, target, dedup, max_nodes, resume_from, out, workers } => {
            commands::with_workers(workers, || {
                commands::search(m, n.unwrap_or(m), k, target, dedup, max_nodes, resume_from, out.as_deref())
            })
        }
        Command::Family { family } => match family {
            Family::Path { k, m, n } => commands::family(griddesigns::search::family_path(k, m, n.unwrap_or(m))),
            Family::Cycle { k, m } => commands::family(griddesigns::search::family_cycle(k, m)),
            Family::Figure { name } => commands::family(Ok(name.graph())),
        },
        Command::Oracle { file, group, t, export_blocks, workers, format, budget } => commands::with_workers(workers, || {
            commands::oracle(&file, group, t as usize, export_blocks.as_deref(), format, budget)
        }),
    };
    match outcome {
        Outcome::Positive => ExitCode::from(0),
        Outcome::Negative => ExitCode::from(1),
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Outcome::Budget(msg) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}

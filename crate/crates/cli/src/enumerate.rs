use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use cdg_core::constructors::{eulerian_catalog, CatalogReport};
use cdg_core::enumerate::{enumerate, EnumerateOptions, FilterSpec, Summary, DEFAULT_MAX_N};
use cdg_core::sweep::sweep_validate;
use cdg_core::ConstructError;
use clap::Args;
use serde::Serialize;

use crate::io::{to_pretty, Run};
use crate::{Failure, Outcome, OutputArgs};

#[derive(Args)]
pub struct RunArgs {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Allow n = 8, which visits 2^28 labelled graphs.
    #[arg(long)]
    large: bool,
}

impl RunArgs {
    fn options(&self, checkpoint: Option<PathBuf>) -> EnumerateOptions {
        let progress: Option<cdg_core::enumerate::Progress> = self.large.then(|| {
            Arc::new(|done: u64, total: u64| {
                eprint!("\r{done}/{total} labelled graphs ({:.1}%)", 100.0 * done as f64 / total as f64);
                if done == total {
                    eprintln!();
                }
                let _ = std::io::stderr().flush();
            }) as cdg_core::enumerate::Progress
        });
        EnumerateOptions { workers: self.workers, checkpoint, allow_large: self.large, chunk_limit: None, progress }
    }
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated predicates that every reported class must satisfy.
    #[arg(long, default_value = "")]
    filter: String,
    /// Plain-text checkpoint; an existing one is resumed.
    #[arg(long, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
    /// Print the catalog as JSON Lines instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Write the catalog as JSON Lines.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the summary JSON.
    #[arg(long, value_name = "FILE")]
    summary: Option<PathBuf>,
}

fn summary_text(s: &Summary) -> String {
    let mut t = String::new();
    let filter = if s.filter.is_empty() { "none" } else { &s.filter };
    let _ = writeln!(t, "n = {}, filter: {filter}", s.n);
    let _ = writeln!(t, "labelled graphs visited: {}{}", s.labeled_graphs, if s.complete { "" } else { " (incomplete)" });
    let _ = writeln!(t, "isomorphism classes: {}", s.classes);
    let _ = writeln!(t, "matching the filter: {}", s.matching);
    for (flag, count) in &s.flag_counts {
        let _ = writeln!(t, "  {flag}: {count}");
    }
    t
}

pub fn run_enumerate(args: &EnumerateArgs, run: &mut Run) -> Outcome {
    let filter: FilterSpec = args.filter.parse()?;
    let e = enumerate(args.n, &filter, &args.run.options(args.checkpoint.clone()))?;
    let jsonl = e.to_jsonl();
    if args.json {
        print!("{jsonl}");
    } else {
        print!("{}", summary_text(&e.summary));
    }
    if let Some(path) = &args.out {
        run.write(path, &jsonl)?;
    }
    if let Some(path) = &args.summary {
        run.write(path, &to_pretty(&e.summary))?;
    }
    Ok(true)
}

#[derive(Args)]
pub struct VerifyBoundArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize)]
struct BoundCheck<'a> {
    n: usize,
    size: usize,
    lower_bound: usize,
    pass: bool,
    report: &'a CatalogReport,
}

pub fn run_verify_bound(args: &VerifyBoundArgs, run: &mut Run) -> Outcome {
    let catalog = match eulerian_catalog(args.n) {
        Ok(c) => c,
        Err(ConstructError::InternalCheckFailed(msg)) => {
            println!("verify-bound n = {}: FAIL ({msg})", args.n);
            return Err(Failure::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let r = &catalog.report;
    let pass = r.size >= r.lower_bound;
    let check = BoundCheck { n: args.n, size: r.size, lower_bound: r.lower_bound, pass, report: r };
    let text = format!(
        "verify-bound n = {}: {} {} {} {}\n",
        args.n,
        if pass { "pass," } else { "FAIL," },
        r.size,
        if pass { ">=" } else { "<" },
        r.lower_bound
    );
    run.emit(&args.output, &check, &text)?;
    Ok(pass)
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run_sweep(args: &SweepArgs, run: &mut Run) -> Outcome {
    if args.n > DEFAULT_MAX_N && !args.run.large {
        return Err(Failure::Input(cdg_core::EnumerateError::LargeRunNotEnabled.to_string()));
    }
    let report = sweep_validate(args.n, &args.run.options(None))?;
    let mut text = format!("sweep n = {}: {} classes\n", report.n, report.classes);
    for (check, count) in &report.examined {
        let _ = writeln!(text, "  {:<28} applied {count:>5}, violations {}", serde_json::to_value(check).unwrap().as_str().unwrap_or(""), report.violations_of(*check));
    }
    let _ = writeln!(text, "strict-mode disagreements: {}", report.strict_disagreements.len());
    let _ = writeln!(text, "{}", if report.passed() { "pass" } else { "FAIL" });
    run.emit(&args.output, &report, &text)?;
    Ok(report.passed())
}

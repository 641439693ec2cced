use std::fmt::Write as _;
use std::path::PathBuf;

use cdg_core::algos::degree_sequence;
use cdg_core::constructors::{
    construct_product, construct_two_component, eulerian_catalog, operation_d, regular_family,
    Catalog, Constructed, PrimePool,
};
use cdg_core::document::{to_dot, to_json};
use cdg_core::{ConstructError, PrimeLabel};
use clap::{Args, Subcommand};

use crate::io::{to_pretty, Run};
use crate::{Failure, Outcome, OutputArgs};

#[derive(Subcommand)]
pub enum ConstructCommand {
    /// The connected (n-2)-regular graph on n vertices.
    Regular {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        files: FileArgs,
    },
    /// Join of two graphs with disjoint labels.
    Product {
        a: String,
        b: String,
        #[arg(long)]
        no_prime_check: bool,
        #[command(flatten)]
        files: FileArgs,
    },
    /// Add two fresh non-adjacent primes joined to every vertex.
    Opd {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[arg(long)]
        no_prime_check: bool,
        #[command(flatten)]
        files: FileArgs,
    },
    /// An isolated odd prime beside a complete graph.
    TwoComponent {
        #[arg(long)]
        p: u64,
        /// Comma-separated primes of the complete component.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[command(flatten)]
        files: FileArgs,
    },
    /// The verified Eulerian catalog on n vertices.
    Catalog {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        files: FileArgs,
    },
}

#[derive(Args)]
pub struct FileArgs {
    /// Write the graph as DOT.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Write the bare graph JSON, readable by `analyze`.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Write the construction recipe.
    #[arg(long, value_name = "FILE")]
    recipe: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::InternalCheckFailed(msg) => {
            eprintln!("verification failed: {msg}");
            Failure::Negative
        }
        other => Failure::Input(other.to_string()),
    }
}

fn describe(title: &str, c: &Constructed) -> String {
    let degrees: Vec<String> = degree_sequence(&c.graph).iter().map(|d| d.to_string()).collect();
    format!(
        "{title}: {} vertices, {} edges\ndegree sequence: {}\ngraph: {}\n",
        c.graph.n(),
        c.graph.edge_count(),
        degrees.join(" "),
        to_json(&c.graph)
    )
}

fn finish(run: &mut Run, files: &FileArgs, title: &str, c: &Constructed) -> Outcome {
    if let Some(path) = &files.dot {
        run.write(path, &to_dot(&c.graph))?;
    }
    if let Some(path) = &files.graph {
        run.write(path, &(to_json(&c.graph) + "\n"))?;
    }
    if let Some(path) = &files.recipe {
        run.write(path, &to_pretty(&c.recipe))?;
    }
    run.emit(&files.output, c, &describe(title, c))?;
    Ok(true)
}

fn catalog_text(c: &Catalog) -> String {
    let mut s = String::new();
    for m in &c.members {
        let degrees: Vec<String> = degree_sequence(&m.built.graph).iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "member {} ({}): degrees {}", m.index, m.stream, degrees.join(" "));
    }
    let r = &c.report;
    let _ = writeln!(s, "n = {}: {} members, lower bound {}", r.n, r.size, r.lower_bound);
    let _ = writeln!(s, "every member: non-regular, block, diameter 2, Eulerian, passes all conditions");
    let _ = writeln!(s, "degree sequences distinct: {}", r.degree_sequences_distinct);
    let canon = match r.canonical_forms_distinct {
        Some(v) => v.to_string(),
        None => "not computed".into(),
    };
    let _ = writeln!(s, "canonical forms distinct: {canon}");
    s
}

pub fn run(cmd: &ConstructCommand, run: &mut Run) -> Outcome {
    match cmd {
        ConstructCommand::Regular { n, files } => {
            let c = regular_family(*n, &mut PrimePool::new()).map_err(failure)?;
            finish(run, files, &format!("regular family, n = {n}"), &c)
        }
        ConstructCommand::Product { a, b, no_prime_check, files } => {
            let ga = run.load_graph(a, *no_prime_check)?.graph;
            let gb = run.load_graph(b, *no_prime_check)?.graph;
            let c = construct_product(&Constructed::base(a, ga), &Constructed::base(b, gb)).map_err(failure)?;
            finish(run, files, "direct product", &c)
        }
        ConstructCommand::Opd { input, no_prime_check, files } => {
            let g = run.load_graph(input, *no_prime_check)?.graph;
            let c = operation_d(&Constructed::base(input, g), &mut PrimePool::new()).map_err(failure)?;
            finish(run, files, "operation D", &c)
        }
        ConstructCommand::TwoComponent { p, q, files } => {
            let p = PrimeLabel::new(*p)?;
            let qs = q.iter().map(|&v| PrimeLabel::new(v)).collect::<Result<Vec<_>, _>>()?;
            let c = construct_two_component(p, &qs).map_err(failure)?;
            finish(run, files, "two-component graph", &c)
        }
        ConstructCommand::Catalog { n, files } => {
            let c = eulerian_catalog(*n).map_err(failure)?;
            if let Some(path) = &files.dot {
                let dot: String = c
                    .members
                    .iter()
                    .map(|m| to_dot(&m.built.graph).replacen("graph {", &format!("graph member{} {{", m.index), 1))
                    .collect();
                run.write(path, &dot)?;
            }
            if let Some(path) = &files.graph {
                let lines: String = c.members.iter().map(|m| to_json(&m.built.graph) + "\n").collect();
                run.write(path, &lines)?;
            }
            if let Some(path) = &files.recipe {
                let recipes: Vec<_> = c.members.iter().map(|m| &m.built.recipe).collect();
                run.write(path, &to_pretty(&recipes))?;
            }
            run.emit(&files.output, &c, &catalog_text(&c))?;
            Ok(c.report.size >= c.report.lower_bound)
        }
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use cdg_core::algos::{degree_sequence, diameter, Distance};
use cdg_core::blocks::{block_decomposition, BlockDecomposition};
use cdg_core::conditions::{all_lewis_partitions, lewis_partition, CdgReport, LewisPartition};
use cdg_core::document::{to_document, to_dot, GraphDocument};
use cdg_core::eulerian::{crosscheck, evaluate_sufficient, CriterionCheck, Crosscheck};
use cdg_core::{necessary_pipeline, LabeledGraph, ParityMode, PrimeLabel};
use clap::Args;
use serde::Serialize;
use serde_json::Value;

use crate::io::Run;
use crate::{Outcome, OutputArgs};

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Graph JSON file, or a bundled fixture name such as `figure4`.
    pub input: String,
    /// Reading of the diameter-three middle condition.
    #[arg(long, default_value = "bipartite", value_parser = parse_mode)]
    pub mode: ParityMode,
    /// Report the partition for every diametral pair, not just the default.
    #[arg(long)]
    pub all_partitions: bool,
    /// Accept labels that are not prime.
    #[arg(long)]
    pub no_prime_check: bool,
    /// Write the graph as DOT.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_mode(s: &str) -> Result<ParityMode, String> {
    s.parse()
}

#[derive(Serialize)]
#[serde(untagged)]
enum PartitionOutcome {
    Valid(LewisPartition),
    Invalid { error: String },
}

impl From<Result<LewisPartition, cdg_core::PartitionError>> for PartitionOutcome {
    fn from(r: Result<LewisPartition, cdg_core::PartitionError>) -> Self {
        match r {
            Ok(p) => PartitionOutcome::Valid(p),
            Err(e) => PartitionOutcome::Invalid { error: e.to_string() },
        }
    }
}

#[derive(Serialize)]
struct Analysis {
    input: String,
    graph: GraphDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<BTreeMap<String, Value>>,
    warnings: Vec<String>,
    vertices: usize,
    edges: usize,
    degree_sequence: Vec<usize>,
    diameter: Distance,
    blocks: BlockDecomposition,
    conditions: CdgReport,
    eulerian: Crosscheck,
    sufficient_criteria: Vec<CriterionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<PartitionOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_partitions: Option<Vec<PartitionOutcome>>,
}

fn list(labels: &[PrimeLabel]) -> String {
    if labels.is_empty() {
        return "none".into();
    }
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn render(a: &Analysis) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph: {} ({} vertices, {} edges)", a.input, a.vertices, a.edges);
    let degrees: Vec<String> = a.degree_sequence.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(s, "degree sequence: {}", degrees.join(" "));
    let _ = writeln!(s, "diameter: {}", a.diameter);
    let _ = writeln!(s, "blocks: {}", a.blocks.blocks.len());
    for b in &a.blocks.blocks {
        let _ = writeln!(s, "  {{{}}}", list(b));
    }
    let _ = writeln!(s, "cut vertices: {}", list(&a.blocks.cut_vertices));
    let bridges: Vec<String> = a.blocks.bridges.iter().map(|(x, y)| format!("{x}-{y}")).collect();
    let _ = writeln!(s, "bridges: {}", if bridges.is_empty() { "none".into() } else { bridges.join(" ") });
    let _ = writeln!(s, "conditions:");
    for c in &a.conditions.conditions {
        let _ = writeln!(s, "  {} {:<30} {}", if c.pass { "pass" } else { "FAIL" }, c.name.as_str(), c.citation);
    }
    let _ = writeln!(s, "pipeline: {}", if a.conditions.overall { "pass" } else { "fail" });
    let v = &a.eulerian.verdict;
    let mode = v.mode.map(|m| format!(", mode {}", m.as_str())).unwrap_or_default();
    let _ = writeln!(s, "eulerian: {} (direct test)", a.eulerian.direct.eulerian);
    let _ = writeln!(s, "classifier: {} via {}{mode}, {}", v.eulerian, v.route, if a.eulerian.agree { "agrees" } else { "DISAGREES" });
    for r in v.reasons.iter().filter(|r| !r.pass) {
        let _ = writeln!(s, "  unmet: {}", r.clause);
    }
    match &a.partition {
        Some(PartitionOutcome::Valid(p)) => {
            let _ = writeln!(
                s,
                "partition from {}: rho1 {{{}}} rho2 {{{}}} rho3 {{{}}} rho4 {{{}}}",
                p.base,
                list(&p.rho1),
                list(&p.rho2),
                list(&p.rho3),
                list(&p.rho4)
            );
        }
        Some(PartitionOutcome::Invalid { error }) => {
            let _ = writeln!(s, "partition: invalid ({error})");
        }
        None => {}
    }
    if let Some(all) = &a.all_partitions {
        let valid = all.iter().filter(|p| matches!(p, PartitionOutcome::Valid(_))).count();
        let _ = writeln!(s, "diametral pairs: {} ({valid} valid partitions)", all.len());
    }
    s
}

fn analyze_graph(input: &str, g: &LabeledGraph, mode: ParityMode, all: bool) -> (Analysis, bool) {
    let d = diameter(g);
    let three = d == Distance::Finite(3);
    let conditions = necessary_pipeline(g);
    let pass = conditions.overall;
    let analysis = Analysis {
        input: input.to_string(),
        graph: to_document(g),
        metadata: None,
        warnings: Vec::new(),
        vertices: g.n(),
        edges: g.edge_count(),
        degree_sequence: degree_sequence(g),
        diameter: d,
        blocks: block_decomposition(g),
        conditions,
        eulerian: crosscheck(g, mode),
        sufficient_criteria: evaluate_sufficient(g),
        partition: three.then(|| lewis_partition(g, None).into()),
        all_partitions: (three && all).then(|| {
            all_lewis_partitions(g)
                .expect("diameter checked")
                .into_iter()
                .map(PartitionOutcome::from)
                .collect()
        }),
    };
    (analysis, pass)
}

pub fn run(args: &AnalyzeArgs, run: &mut Run) -> Outcome {
    let parsed = run.load_graph(&args.input, args.no_prime_check)?;
    let (mut analysis, pass) = analyze_graph(&args.input, &parsed.graph, args.mode, args.all_partitions);
    analysis.metadata = parsed.metadata;
    analysis.warnings = parsed.warnings.iter().map(|w| w.to_string()).collect();
    if let Some(path) = &args.dot {
        run.write(path, &to_dot(&parsed.graph))?;
    }
    run.emit(&args.output, &analysis, &render(&analysis))?;
    Ok(pass)
}

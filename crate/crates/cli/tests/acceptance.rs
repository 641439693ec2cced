//! End-to-end acceptance checks, run through the `cdg` binary.
//!
//! Prints one line per criterion. Set `CDG_ACCEPT_LARGE=1` to add the n = 8
//! sweep.

use std::process::Command;
use std::time::{Duration, Instant};

use cdg_core::canon::{are_isomorphic, canonical_form};
use cdg_core::document::{parse_graph, ParseOptions};
use cdg_core::{fixtures, is_k_regular, LabeledGraph};
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

struct Out {
    code: i32,
    stdout: String,
}

fn cdg(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_cdg")).args(args).output().expect("cdg runs");
    Out { code: out.status.code().unwrap_or(-1), stdout: String::from_utf8(out.stdout).expect("utf-8") }
}

fn cdg_json(args: &[&str], expect_code: i32) -> Result<Value, String> {
    let out = cdg(args);
    if out.code != expect_code {
        return Err(format!("`cdg {}` exited {} (expected {expect_code})", args.join(" "), out.code));
    }
    serde_json::from_str(&out.stdout).map_err(|e| format!("`cdg {}`: bad JSON: {e}", args.join(" ")))
}

fn graph_of(v: &Value) -> LabeledGraph {
    parse_graph(&v.to_string(), ParseOptions::default()).expect("tool emits valid graphs").graph
}

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn figure_fidelity() -> Check {
    let start = Instant::now();
    let a = |name: &str, code| cdg_json(&["analyze", name, "--json"], code);

    let p4 = a("figure1", 1)?;
    ensure(p4["conditions"]["overall"] == false, "figure1 passes the pipeline")?;
    let failed: Vec<&str> = p4["conditions"]["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    ensure(failed.contains(&"not_p4"), format!("figure1 failures {failed:?} lack not_p4"))?;

    let f2 = a("figure2", 0)?;
    ensure(f2["diameter"] == 2, "figure2 diameter")?;
    ensure(f2["blocks"]["blocks"].as_array().unwrap().len() == 2, "figure2 blocks")?;
    ensure(f2["blocks"]["cut_vertices"].as_array().unwrap().len() == 1, "figure2 cut vertices")?;
    ensure(f2["eulerian"]["direct"]["eulerian"] == false, "figure2 is Eulerian")?;
    ensure(f2["eulerian"]["agree"] == true, "figure2 classifier disagrees")?;

    let f3a = a("figure3a", 0)?;
    ensure(f3a["vertices"] == 6 && is_k_regular(&graph_of(&f3a["graph"]), 4), "figure3a not 4-regular on 6")?;

    let f3c = a("figure3c", 0)?;
    ensure(f3c["vertices"] == 8 && is_k_regular(&graph_of(&f3c["graph"]), 6), "figure3c not 6-regular on 8")?;
    ensure(f3c["eulerian"]["verdict"]["eulerian"] == true, "figure3c not Eulerian")?;
    ensure(f3c["eulerian"]["verdict"]["route"] == "regular-even", "figure3c route")?;

    let f4 = a("figure4", 0)?;
    let g4 = graph_of(&f4["graph"]);
    ensure(cdg_core::algos::regular_degree(&g4).is_none(), "figure4 is regular")?;
    ensure(f4["blocks"]["blocks"].as_array().unwrap().len() == 1, "figure4 is not a block")?;
    ensure(f4["diameter"] == 2, "figure4 diameter")?;
    ensure(f4["eulerian"]["direct"]["eulerian"] == true, "figure4 not Eulerian")?;
    within(start, Duration::from_secs(1))
}

fn cocktail_party(labels: &[cdg_core::PrimeLabel]) -> LabeledGraph {
    LabeledGraph::new(labels.to_vec(), labels.chunks(2).map(|c| (c[0], c[1]))).unwrap().complement()
}

fn regular_family() -> Check {
    let start = Instant::now();
    for n in (4..=20).step_by(2) {
        let v = cdg_json(&["construct", "regular", "--n", &n.to_string(), "--json"], 0)?;
        let g = graph_of(&v["graph"]);
        ensure(g.n() == n, format!("n = {n}: wrong order"))?;
        ensure(is_k_regular(&g, n - 2), format!("n = {n}: not (n-2)-regular"))?;
        ensure(cdg_core::algos::is_connected(&g) && !g.is_complete(), format!("n = {n}: disconnected or complete"))?;
        ensure(is_k_regular(&g.complement(), 1), format!("n = {n}: complement is not a perfect matching"))?;
        if n <= 12 {
            ensure(are_isomorphic(&g, &cocktail_party(g.labels())).unwrap(), format!("n = {n}: not the cocktail party graph"))?;
        }
        if n == 6 {
            ensure(are_isomorphic(&g, &fixtures::figure3a()).unwrap(), "n = 6 differs from figure3a")?;
        }
        if n == 8 {
            ensure(are_isomorphic(&g, &fixtures::figure3c()).unwrap(), "n = 8 differs from figure3c")?;
        }
    }
    within(start, Duration::from_secs(1))
}

fn catalog_counts() -> Check {
    let start = Instant::now();
    for n in (6..=24).step_by(2) {
        let v = cdg_json(&["verify-bound", "--n", &n.to_string(), "--json"], 0)?;
        let size = v["size"].as_u64().unwrap();
        let bound = v["lower_bound"].as_u64().unwrap();
        let expected = match n {
            6 => Some(1),
            8 => Some(2),
            10 => Some(3),
            12 => Some(5),
            _ => None,
        };
        match expected {
            Some(e) => ensure(size == e, format!("n = {n}: {size} members, expected {e}"))?,
            None => ensure(size >= bound, format!("n = {n}: {size} < {bound}"))?,
        }
        for m in v["report"]["members"].as_array().unwrap() {
            let ok = m["regular"] == false
                && m["single_block"] == true
                && m["diameter"] == 2
                && m["eulerian"] == true
                && m["passes_conditions"] == true;
            ensure(ok, format!("n = {n}: member {} fails verification", m["index"]))?;
        }
        ensure(v["report"]["degree_sequences_distinct"] == true, format!("n = {n}: repeated degree sequence"))?;
        if n <= 12 {
            ensure(v["report"]["canonical_forms_distinct"] == true, format!("n = {n}: isomorphic members"))?;
        }
    }
    within(start, Duration::from_secs(5))
}

fn product_identities() -> Check {
    let start = Instant::now();
    let v = cdg_json(&["construct", "product", "figure5a", "figure5b", "--json"], 0)?;
    ensure(
        canonical_form(&graph_of(&v["graph"])).unwrap() == canonical_form(&fixtures::figure4()).unwrap(),
        "figure5a x figure5b is not figure4",
    )?;
    let v = cdg_json(&["construct", "product", "figure3a", "figure3b", "--json"], 0)?;
    ensure(
        canonical_form(&graph_of(&v["graph"])).unwrap() == canonical_form(&fixtures::figure3c()).unwrap(),
        "figure3a x figure3b is not figure3c",
    )?;
    within(start, Duration::from_secs(1))
}

fn sweep(n: usize, extra: &[&str]) -> Check {
    let ns = n.to_string();
    let mut args = vec!["sweep", "--n", &ns, "--json"];
    args.extend_from_slice(extra);
    let v = cdg_json(&args, 0)?;
    let violations = v["violations"].as_array().unwrap();
    ensure(violations.is_empty(), format!("n = {n}: {} violations, first {}", violations.len(), violations.first().map(|x| x.to_string()).unwrap_or_default()))
}

fn oracle_sweeps() -> Check {
    let start = Instant::now();
    for n in 1..=7 {
        sweep(n, &[])?;
    }
    let v = cdg_json(&["sweep", "--n", "7", "--json"], 0)?;
    for check in ["sufficient-soundness", "diameter-three-equivalence", "two-components-complete", "pipeline-blocks"] {
        ensure(v["examined"][check].as_u64().unwrap_or(0) > 0, format!("{check} never applied at n = 7"))?;
    }
    within(start, Duration::from_secs(60))
}

fn large_sweep() -> Check {
    let start = Instant::now();
    sweep(8, &["--large"])?;
    within(start, Duration::from_secs(30 * 60))
}

const CLASS_COUNTS: [u64; 7] = [1, 2, 4, 11, 34, 156, 1044];

fn class_counts() -> Check {
    for (i, &expected) in CLASS_COUNTS.iter().enumerate() {
        let n = (i + 1).to_string();
        let dir = std::env::temp_dir().join(format!("cdg-accept-{}", std::process::id()));
        std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        let summary = dir.join(format!("summary{n}.json"));
        let out = cdg(&["enumerate", "--n", &n, "--summary", summary.to_str().unwrap()]);
        ensure(out.code == 0, format!("enumerate --n {n} exited {}", out.code))?;
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&summary).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(v["classes"] == expected, format!("n = {n}: {} classes, expected {expected}", v["classes"]))?;
        ensure(v["labeled_graphs"] == 1u64 << ((i + 1) * i / 2), format!("n = {n}: wrong labelled count"))?;
        let _ = std::fs::remove_dir_all(&dir);
    }
    Ok(())
}

fn determinism() -> Check {
    let commands: [&[&str]; 7] = [
        &["analyze", "figure2", "--json"],
        &["analyze", "d3e", "--json", "--all-partitions"],
        &["construct", "regular", "--n", "12", "--json"],
        &["construct", "catalog", "--n", "18", "--json"],
        &["construct", "product", "figure5a", "figure5b", "--json"],
        &["sweep", "--n", "6", "--json"],
        &["enumerate", "--n", "6", "--json"],
    ];
    for args in commands {
        let a = cdg(args).stdout;
        let b = cdg(args).stdout;
        ensure(!a.is_empty() && a == b, format!("`cdg {}` output differs between runs", args.join(" ")))?;
    }
    let one = cdg(&["enumerate", "--n", "7", "--json", "--workers", "1"]).stdout;
    let many = cdg(&["enumerate", "--n", "7", "--json", "--workers", "8"]).stdout;
    ensure(one.lines().count() == 1044, "enumerate --n 7 --json should print 1044 lines")?;
    ensure(one == many, "worker count changes enumerate output")
}

fn main() {
    let large = std::env::var("CDG_ACCEPT_LARGE").is_ok_and(|v| v == "1");
    let mut criteria: Vec<Criterion> = vec![
        ("1 figure fidelity", figure_fidelity),
        ("2 regular family", regular_family),
        ("3 catalog counts", catalog_counts),
        ("4 direct product identities", product_identities),
        ("5 oracle sweeps n <= 7", oracle_sweeps),
        ("6 isomorphism class counts", class_counts),
        ("7 determinism", determinism),
    ];
    if large {
        criteria.push(("5 oracle sweep n = 8", large_sweep));
    }
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {name}: PASS ({:.2}s)", start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL: {why}");
            }
        }
    }
    if !large {
        println!("criterion 5 oracle sweep n = 8: SKIPPED (set CDG_ACCEPT_LARGE=1)");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Checks the structural results against every isomorphism class of a
//! given order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algos::{component_masks, is_eulerian_direct};
use crate::blocks::block_decomposition;
use crate::canon::CanonicalForm;
use crate::conditions::{
    all_lewis_partitions, block_by_partition, necessary_pipeline,
};
use crate::document::to_document;
use crate::enumerate::{enumerate_classes, EnumerateOptions};
use crate::error::EnumerateError;
use crate::eulerian::{crosscheck, evaluate_sufficient, verdict_from_partition, ParityMode};
use crate::graph::{first_primes, LabeledGraph, PrimeLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// A sufficient criterion fired on a graph the direct test rejects.
    SufficientSoundness,
    /// Bipartite-parity verdict differs from the direct test on a valid
    /// diameter-three partition.
    DiameterThreeEquivalence,
    /// On a pipeline-passing graph, the partition's block verdict or its
    /// cut vertex (the sole vertex of rho2 or of rho3) differs from the
    /// block decomposition.
    PartitionStructure,
    /// A Palfy graph with two components has a non-complete component.
    TwoComponentsComplete,
    /// A pipeline-passing graph has more than two blocks.
    PipelineBlocks,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub canonical: CanonicalForm,
    pub evidence: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrictDisagreement {
    pub canonical: CanonicalForm,
    pub direct: bool,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub classes: usize,
    /// How many times each check was applied.
    pub examined: BTreeMap<Check, usize>,
    pub violations: Vec<Violation>,
    /// Classes where the induced-subgraph reading of the diameter-three
    /// criterion disagrees with the direct test. Informational.
    pub strict_disagreements: Vec<StrictDisagreement>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, check: Check) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }
}

#[derive(Default)]
struct ClassOutcome {
    examined: Vec<Check>,
    violations: Vec<Violation>,
    strict: Vec<StrictDisagreement>,
}

fn examine(g: &LabeledGraph, canonical: CanonicalForm) -> ClassOutcome {
    let mut out = ClassOutcome::default();
    let flag = |out: &mut ClassOutcome, check, evidence: Value| {
        out.violations.push(Violation { check, canonical, evidence })
    };
    let direct = is_eulerian_direct(g);
    let report = necessary_pipeline(g);

    out.examined.push(Check::SufficientSoundness);
    for c in evaluate_sufficient(g).into_iter().filter(|c| c.fired) {
        if !direct.eulerian {
            flag(&mut out, Check::SufficientSoundness, json!({ "route": c.route, "direct": direct, "graph": to_document(g) }));
        }
    }

    if let Ok(partitions) = all_lewis_partitions(g) {
        let blocks = block_decomposition(g);
        for p in partitions.into_iter().flatten() {
            out.examined.push(Check::DiameterThreeEquivalence);
            let v = verdict_from_partition(g, &p, ParityMode::BipartiteParity);
            if v.eulerian != direct.eulerian {
                flag(&mut out, Check::DiameterThreeEquivalence, json!({ "partition": p, "verdict": v, "direct": direct }));
            }
            if !report.overall {
                continue;
            }
            out.examined.push(Check::PartitionStructure);
            let mut predicted: Vec<PrimeLabel> = [&p.rho2, &p.rho3]
                .into_iter()
                .filter_map(|part| match part.as_slice() {
                    [only] => Some(*only),
                    _ => None,
                })
                .collect();
            predicted.sort_unstable();
            if block_by_partition(&p) != blocks.is_single_block() || predicted != blocks.cut_vertices {
                flag(&mut out, Check::PartitionStructure, json!({ "partition": p, "blocks": blocks, "predicted": predicted }));
            }
        }
        let strict = crosscheck(g, ParityMode::InducedSubgraphStrict);
        if strict.verdict.mode.is_some() && !strict.agree {
            out.strict.push(StrictDisagreement { canonical, direct: direct.eulerian, strict: strict.verdict.eulerian });
        }
    }

    let comps = component_masks(g);
    if report.passes(crate::conditions::ConditionName::Palfy) && comps.len() == 2 {
        out.examined.push(Check::TwoComponentsComplete);
        let incomplete = comps.iter().any(|&m| !g.induced_by_mask(m).is_complete());
        if incomplete {
            flag(&mut out, Check::TwoComponentsComplete, json!({ "graph": to_document(g) }));
        }
    }
    if report.overall {
        out.examined.push(Check::PipelineBlocks);
        let blocks = block_decomposition(g);
        if blocks.blocks.len() > 2 || blocks.cut_vertices.len() > 1 || blocks.bridges.len() > 2 {
            flag(&mut out, Check::PipelineBlocks, json!({ "blocks": blocks }));
        }
    }
    out
}

/// Runs every check over all classes on `n` vertices.
pub fn sweep_validate(n: usize, options: &EnumerateOptions) -> Result<SweepReport, EnumerateError> {
    let set = enumerate_classes(n, options)?;
    let labels: Vec<PrimeLabel> = first_primes(n).into_iter().map(|p| PrimeLabel::new(p).expect("prime")).collect();
    let forms: Vec<CanonicalForm> = set.forms().collect();
    let outcomes: Vec<ClassOutcome> = forms
        .par_iter()
        .map(|&f| examine(&f.to_graph(&labels).expect("canonical forms decode"), f))
        .collect();

    let mut report = SweepReport {
        n,
        classes: forms.len(),
        examined: BTreeMap::new(),
        violations: Vec::new(),
        strict_disagreements: Vec::new(),
    };
    for o in outcomes {
        for c in o.examined {
            *report.examined.entry(c).or_insert(0) += 1;
        }
        report.violations.extend(o.violations);
        report.strict_disagreements.extend(o.strict);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_are_clean() {
        for n in 1..=5 {
            let r = sweep_validate(n, &EnumerateOptions::default()).unwrap();
            assert!(r.passed(), "n = {n}: {:?}", r.violations);
        }
    }
}

//! Eulerian classification through block and diameter structure, checked
//! against the direct even-degree test.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algos::{component_masks, degree_sequence, diameter, is_eulerian_direct, regular_degree, Distance, EulerTest};
use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::conditions::{block_by_partition, lewis_partition, LewisPartition};
use crate::document::to_document;
use crate::error::PartitionError;
use crate::graph::{bits, LabeledGraph};

/// Which classification produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Complete graph on an odd number (at least 3) of vertices.
    CompleteOdd,
    /// Non-complete regular graph on an even number (at least 4) of vertices.
    RegularEven,
    /// Not a block, diameter at most 2, every block of odd order.
    OddBlocks,
    /// Diameter 3, decided through the four-part partition.
    DiameterThree,
    /// No structural criterion applies; the direct test decides.
    DirectOnly,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::CompleteOdd => "complete-odd",
            Route::RegularEven => "regular-even",
            Route::OddBlocks => "odd-blocks",
            Route::DiameterThree => "diameter-three",
            Route::DirectOnly => "direct-only",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reading of the middle-part condition of the diameter-three criterion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityMode {
    /// Every rho2/rho3 vertex has an even number of neighbours across the
    /// rho2-rho3 cut.
    #[default]
    BipartiteParity,
    /// The subgraph induced on rho2 u rho3 is itself connected with all
    /// degrees even.
    InducedSubgraphStrict,
}

impl ParityMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParityMode::BipartiteParity => "bipartite-parity",
            ParityMode::InducedSubgraphStrict => "induced-subgraph-strict",
        }
    }
}

impl FromStr for ParityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bipartite" | "bipartite-parity" => Ok(ParityMode::BipartiteParity),
            "strict" | "induced-subgraph-strict" => Ok(ParityMode::InducedSubgraphStrict),
            other => Err(format!("unknown parity mode {other:?} (expected bipartite or strict)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reason {
    pub clause: &'static str,
    pub citation: &'static str,
    pub pass: bool,
    pub witness: Option<Value>,
}

fn reason(clause: &'static str, citation: &'static str, pass: bool, witness: Option<Value>) -> Reason {
    Reason { clause, citation, pass, witness }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerianVerdict {
    pub eulerian: bool,
    pub route: Route,
    pub mode: Option<ParityMode>,
    pub reasons: Vec<Reason>,
}

/// Evaluation of one sufficient criterion, fired or not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionCheck {
    pub route: Route,
    pub fired: bool,
    pub reasons: Vec<Reason>,
}

const CITE_COMPLETE: &str = "complete graph of odd order is Eulerian";
const CITE_REGULAR: &str = "Morresi Zuccari: a non-complete regular graph is (n-2)-regular";
const CITE_BLOCKS: &str = "Ebrahimi: with diameter <= 2 and not a block, every block is complete";
const CITE_D3: &str = "diameter-three partition criterion";

/// Evaluates all three sufficient criteria, in order, without stopping.
pub fn evaluate_sufficient(g: &LabeledGraph) -> Vec<CriterionCheck> {
    let n = g.n();
    let complete = g.is_complete();

    let complete_odd = vec![
        reason("complete", CITE_COMPLETE, complete, None),
        reason("order-odd-at-least-3", CITE_COMPLETE, n >= 3 && n % 2 == 1, Some(json!(n))),
    ];

    let degree = regular_degree(g);
    let regular_even = vec![
        reason("non-complete", CITE_REGULAR, !complete, None),
        reason("regular", CITE_REGULAR, degree.is_some(), degree.map(|d| json!(d))),
        reason("order-even-at-least-4", CITE_REGULAR, n >= 4 && n.is_multiple_of(2), Some(json!(n))),
        reason(
            "degree-is-n-minus-2",
            CITE_REGULAR,
            n >= 2 && degree == Some(n - 2),
            Some(json!({ "degree": degree, "n_minus_2": n.checked_sub(2) })),
        ),
    ];

    let blocks = block_decomposition(g);
    let d = diameter(g);
    let even_block = blocks.blocks.iter().find(|b| b.len() % 2 == 0);
    let incomplete_block = blocks.blocks.iter().find(|b| {
        let m = g.mask_of(b).expect("block of this graph");
        bits(m).any(|i| m & !g.neighbors(i) & !(1u64 << i) != 0)
    });
    let odd_blocks = vec![
        reason("order-at-least-3", CITE_BLOCKS, n >= 3, Some(json!(n))),
        reason("not-a-block", CITE_BLOCKS, !blocks.is_single_block(), Some(json!(blocks.blocks.len()))),
        reason("diameter-at-most-2", CITE_BLOCKS, d <= Distance::Finite(2), Some(json!(d))),
        reason("blocks-complete", CITE_BLOCKS, incomplete_block.is_none(), incomplete_block.map(|b| json!(b))),
        reason("blocks-odd-order", CITE_BLOCKS, even_block.is_none(), even_block.map(|b| json!(b))),
    ];

    [
        (Route::CompleteOdd, complete_odd),
        (Route::RegularEven, regular_even),
        (Route::OddBlocks, odd_blocks),
    ]
    .into_iter()
    .map(|(route, reasons)| CriterionCheck { route, fired: reasons.iter().all(|r| r.pass), reasons })
    .collect()
}

/// First sufficient criterion that fires, or `None` when none applies.
pub fn classify_sufficient(g: &LabeledGraph) -> Option<EulerianVerdict> {
    evaluate_sufficient(g).into_iter().find(|c| c.fired).map(|c| EulerianVerdict {
        eulerian: true,
        route: c.route,
        mode: None,
        reasons: c.reasons,
    })
}

/// Decides a diameter-three graph through its default partition.
pub fn classify_diameter_three(
    g: &LabeledGraph,
    mode: ParityMode,
) -> Result<EulerianVerdict, PartitionError> {
    let p = lewis_partition(g, None)?;
    Ok(verdict_from_partition(g, &p, mode))
}

pub fn verdict_from_partition(g: &LabeledGraph, p: &LewisPartition, mode: ParityMode) -> EulerianVerdict {
    let parts = p.masks(g);
    let block = block_by_partition(p);
    let left = p.rho1.len() + p.rho2.len();
    let right = p.rho3.len() + p.rho4.len();

    let middle = parts.rho2 | parts.rho3;
    let middle_reason = match mode {
        ParityMode::BipartiteParity => {
            let odd = bits(middle).find(|&v| {
                let across = if parts.rho2 >> v & 1 == 1 { parts.rho3 } else { parts.rho2 };
                (g.neighbors(v) & across).count_ones() % 2 == 1
            });
            reason(
                "middle-cross-degrees-even",
                CITE_D3,
                odd.is_none(),
                odd.map(|v| {
                    let across = if parts.rho2 >> v & 1 == 1 { parts.rho3 } else { parts.rho2 };
                    json!({ "vertex": g.label(v), "cross_degree": (g.neighbors(v) & across).count_ones() })
                }),
            )
        }
        ParityMode::InducedSubgraphStrict => {
            let sub = g.induced_by_mask(middle);
            let test = is_eulerian_direct(&sub);
            reason("middle-induced-eulerian", CITE_D3, test.eulerian, (!test.eulerian).then(|| json!(test.reason)))
        }
    };

    let reasons = vec![
        reason(
            "block",
            "block iff |rho2| >= 2 and |rho3| >= 2",
            block,
            Some(json!({ "rho2": p.rho2.len(), "rho3": p.rho3.len() })),
        ),
        reason(
            "side-orders-odd",
            CITE_D3,
            left % 2 == 1 && right % 2 == 1,
            Some(json!({ "rho1_rho2": left, "rho3_rho4": right })),
        ),
        middle_reason,
    ];
    EulerianVerdict {
        eulerian: reasons.iter().all(|r| r.pass),
        route: Route::DiameterThree,
        mode: Some(mode),
        reasons,
    }
}

/// Everything needed to inspect a disagreement by hand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub graph: crate::document::GraphDocument,
    pub degree_sequence: Vec<usize>,
    pub diameter: Distance,
    pub blocks: BlockDecomposition,
    pub partition: Option<LewisPartition>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crosscheck {
    pub direct: EulerTest,
    pub verdict: EulerianVerdict,
    pub agree: bool,
    /// Why the diameter-three route could not be used, if it was attempted.
    pub partition_error: Option<String>,
    pub evidence: Option<Box<Evidence>>,
}

/// Runs the direct test next to whichever structural criterion applies.
pub fn crosscheck(g: &LabeledGraph, mode: ParityMode) -> Crosscheck {
    let direct = is_eulerian_direct(g);
    let mut partition_error = None;
    let mut partition = None;
    let mut verdict = None;
    if component_masks(g).len() == 1 && diameter(g) == Distance::Finite(3) {
        match lewis_partition(g, None) {
            Ok(p) => {
                verdict = Some(verdict_from_partition(g, &p, mode));
                partition = Some(p);
            }
            Err(e) => partition_error = Some(e.to_string()),
        }
    }
    let verdict = verdict.or_else(|| classify_sufficient(g)).unwrap_or_else(|| EulerianVerdict {
        eulerian: direct.eulerian,
        route: Route::DirectOnly,
        mode: None,
        reasons: vec![reason("even-degrees-and-connected", "Euler", direct.eulerian, Some(json!(direct.reason)))],
    });
    let agree = verdict.eulerian == direct.eulerian;
    let evidence = (!agree).then(|| {
        Box::new(Evidence {
            graph: to_document(g),
            degree_sequence: degree_sequence(g),
            diameter: diameter(g),
            blocks: block_decomposition(g),
            partition,
        })
    });
    Crosscheck { direct, verdict, agree, partition_error, evidence }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{first_primes, PrimeLabel};

    fn labels(n: usize) -> Vec<PrimeLabel> {
        first_primes(n).into_iter().map(|p| PrimeLabel::new(p).unwrap()).collect()
    }

    #[test]
    fn complete_odd() {
        let v = classify_sufficient(&LabeledGraph::complete(labels(5)).unwrap()).unwrap();
        assert_eq!(v.route, Route::CompleteOdd);
        assert!(v.eulerian);
        assert!(classify_sufficient(&LabeledGraph::complete(labels(4)).unwrap()).is_none());
    }

    #[test]
    fn six_regular_on_eight() {
        let v = classify_sufficient(&fixtures::figure3c()).unwrap();
        assert_eq!(v.route, Route::RegularEven);
    }

    #[test]
    fn regular_but_not_n_minus_2_is_not_classified() {
        // C6 is 2-regular on 6 vertices.
        let l = labels(6);
        let c6 = LabeledGraph::new(l.clone(), (0..6).map(|i| (l[i], l[(i + 1) % 6]))).unwrap();
        let checks = evaluate_sufficient(&c6);
        assert!(!checks[1].fired);
        assert!(!checks[1].reasons.iter().find(|r| r.clause == "degree-is-n-minus-2").unwrap().pass);
        assert!(classify_sufficient(&c6).is_none());
    }

    #[test]
    fn figure2_misses_only_odd_block_order() {
        let g = fixtures::figure2();
        assert!(classify_sufficient(&g).is_none());
        let odd_blocks = &evaluate_sufficient(&g)[2];
        let failed: Vec<_> = odd_blocks.reasons.iter().filter(|r| !r.pass).map(|r| r.clause).collect();
        assert_eq!(failed, vec!["blocks-odd-order"]);
    }

    #[test]
    fn bowtie_fires_odd_blocks() {
        let l = labels(5);
        let g = LabeledGraph::new(
            l.clone(),
            [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)].map(|(a, b)| (l[a], l[b])),
        )
        .unwrap();
        let v = classify_sufficient(&g).unwrap();
        assert_eq!(v.route, Route::OddBlocks);
        assert!(is_eulerian_direct(&g).eulerian);
    }

    #[test]
    fn diameter_three_fixtures() {
        let e = classify_diameter_three(&fixtures::d3e(), ParityMode::BipartiteParity).unwrap();
        assert!(e.eulerian);
        let o = classify_diameter_three(&fixtures::d3o(), ParityMode::BipartiteParity).unwrap();
        assert!(!o.eulerian);
        let failed: Vec<_> = o.reasons.iter().filter(|r| !r.pass).map(|r| r.clause).collect();
        assert_eq!(failed, vec!["middle-cross-degrees-even"]);
        let c = classify_diameter_three(&fixtures::d3c(), ParityMode::BipartiteParity).unwrap();
        assert!(!c.eulerian);
        assert!(!c.reasons[0].pass);
        assert!(matches!(
            classify_diameter_three(&fixtures::figure2(), ParityMode::BipartiteParity),
            Err(PartitionError::NotDiameterThree(_))
        ));
    }

    #[test]
    fn strict_mode_disagrees_on_d3e() {
        // rho2 = {3, 5} is an edge, so inside rho2 u rho3 vertex 3 has degree 3.
        let v = classify_diameter_three(&fixtures::d3e(), ParityMode::InducedSubgraphStrict).unwrap();
        assert!(!v.eulerian);
        let x = crosscheck(&fixtures::d3e(), ParityMode::InducedSubgraphStrict);
        assert!(!x.agree);
        assert!(x.evidence.is_some());
    }

    #[test]
    fn crosscheck_examples() {
        let f4 = crosscheck(&fixtures::figure4(), ParityMode::BipartiteParity);
        assert!(f4.agree);
        assert!(f4.direct.eulerian);
        assert_eq!(f4.verdict.route, Route::DirectOnly);

        let d3e = crosscheck(&fixtures::d3e(), ParityMode::BipartiteParity);
        assert!(d3e.agree);
        assert_eq!(d3e.verdict.route, Route::DiameterThree);
        assert!(d3e.evidence.is_none());

        let f2 = crosscheck(&fixtures::figure2(), ParityMode::BipartiteParity);
        assert!(f2.agree);
        assert!(!f2.verdict.eulerian);
    }

    #[test]
    fn parity_mode_parsing() {
        assert_eq!("strict".parse::<ParityMode>(), Ok(ParityMode::InducedSubgraphStrict));
        assert_eq!("bipartite".parse::<ParityMode>(), Ok(ParityMode::BipartiteParity));
        assert!("loose".parse::<ParityMode>().is_err());
    }
}

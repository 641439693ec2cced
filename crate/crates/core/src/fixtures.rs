//! Figure graphs and small diameter-three test graphs shipped with the crate.
//!
//! Each fixture is a Graph JSON document whose `metadata.figure` names it.

use crate::document::{parse_graph, ParseOptions};
use crate::graph::LabeledGraph;

/// `(name, Graph JSON)` for every bundled fixture.
pub const ALL: &[(&str, &str)] = &[
    ("figure1", include_str!("../fixtures/figure1.json")),
    ("figure2", include_str!("../fixtures/figure2.json")),
    ("figure3a", include_str!("../fixtures/figure3a.json")),
    ("figure3b", include_str!("../fixtures/figure3b.json")),
    ("figure3c", include_str!("../fixtures/figure3c.json")),
    ("figure4", include_str!("../fixtures/figure4.json")),
    ("figure5a", include_str!("../fixtures/figure5a.json")),
    ("figure5b", include_str!("../fixtures/figure5b.json")),
    ("d3e", include_str!("../fixtures/d3e.json")),
    ("d3c", include_str!("../fixtures/d3c.json")),
    ("d3o", include_str!("../fixtures/d3o.json")),
];

/// Raw JSON of a fixture; a trailing `.json` on the name is ignored.
pub fn source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Option<LabeledGraph> {
    source(name).map(|s| {
        parse_graph(s, ParseOptions::default())
            .expect("bundled fixtures are valid")
            .graph
    })
}

macro_rules! fixture_fns {
    ($($name:ident),*) => {$(
        pub fn $name() -> LabeledGraph {
            load(stringify!($name)).unwrap()
        }
    )*};
}

fixture_fns!(figure1, figure2, figure3a, figure3b, figure3c, figure4, figure5a, figure5b, d3e, d3c, d3o);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_and_is_tagged() {
        for (name, text) in ALL {
            let parsed = parse_graph(text, ParseOptions::default()).unwrap();
            assert!(parsed.warnings.is_empty(), "{name}");
            assert_eq!(parsed.metadata.unwrap()["figure"], *name);
        }
        assert!(load("figure4.json").is_some());
        assert!(load("figure9").is_none());
    }
}

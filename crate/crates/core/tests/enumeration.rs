mod support;

use std::collections::BTreeSet;

use fishgraph::canon::canonical_form;
use fishgraph::search::{connected_graphs, enumerate_graphs, EnumConfig};

// Frozen after the Pólya oracle run below.
const CLASSES: [usize; 13] = [1, 1, 2, 5, 11, 26, 68, 177, 497, 1476, 4613, 15216, 52944];
const CONNECTED: [usize; 12] = [1, 1, 3, 5, 12, 30, 79, 227, 710, 2322, 8071, 29503];

#[test]
fn golden_counts_match_polya() {
    for (m, &want) in CLASSES.iter().enumerate() {
        assert_eq!(support::polya_no_isolated(m), want as u64, "m = {m}");
    }
    let totals: Vec<u64> = CLASSES.iter().map(|&x| x as u64).collect();
    let connected = support::connected_from_totals(&totals);
    for (k, &want) in CONNECTED.iter().enumerate() {
        assert_eq!(connected[k + 1], want as i128, "k = {}", k + 1);
    }
}

#[test]
fn enumeration_matches_golden_counts() {
    let cfg = EnumConfig::with_budget(12);
    for (m, &want) in CLASSES.iter().enumerate().take(12) {
        assert_eq!(enumerate_graphs(m, &cfg).unwrap().len(), want, "m = {m}");
    }
    for (k, &want) in CONNECTED.iter().enumerate().take(11) {
        assert_eq!(connected_graphs(k + 1).len(), want, "k = {}", k + 1);
    }
}

#[test]
fn enumeration_matches_labeled_brute_force() {
    for m in 1..=5 {
        let got: BTreeSet<String> = enumerate_graphs(m, &EnumConfig::default())
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).as_str().to_string())
            .collect();
        assert_eq!(got, support::brute_classes(m), "m = {m}");
    }
}

#[test]
fn emitted_graphs_are_distinct_and_well_formed() {
    for m in 1..=9 {
        let graphs = enumerate_graphs(m, &EnumConfig::default()).unwrap();
        let forms: BTreeSet<_> = graphs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), graphs.len());
        for g in &graphs {
            assert_eq!(g.m(), m);
            assert!(g.min_degree() >= 1);
            assert!(g.n() <= 2 * m);
        }
    }
}

#[test]
fn sharded_run_is_deterministic() {
    let seq = EnumConfig { parallel: false, ..Default::default() };
    for m in 1..=9 {
        let a = enumerate_graphs(m, &seq).unwrap();
        let b = enumerate_graphs(m, &EnumConfig::default()).unwrap();
        assert_eq!(a, b, "m = {m}");
    }
}

mod support;

use fishgraph::canon::canonical_form;
use fishgraph::forbidden::{brute_force_contains, contains_h_l3, fish_graph};
use fishgraph::io::{from_graph6, to_graph6};
use fishgraph::spectral::{perron_vector, spectral_radius, SpectralConfig};
use fishgraph::Graph;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| support::graph_from_bits(n, &bits))
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn cfg() -> SpectralConfig {
    SpectralConfig::default()
}

#[test]
fn jacobi_reproduces_closed_forms() {
    let ev = support::jacobi_eigenvalues(support::adjacency(&Graph::cycle(6).unwrap()));
    let want = [-2.0, -1.0, -1.0, 1.0, 1.0, 2.0];
    for (a, b) in ev.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!((support::jacobi_radius(&Graph::path(3).unwrap()) - 2f64.sqrt()).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn power_iteration_matches_jacobi(g in graph_strategy(12)) {
        let lambda = spectral_radius(&g, &cfg()).unwrap().lambda;
        prop_assert!((lambda - support::jacobi_radius(&g)).abs() < 1e-9);
    }

    #[test]
    fn lambda_is_relabel_invariant((g, perm) in graph_strategy(12).prop_flat_map(|g| { let n = g.n(); (Just(g), perm_strategy(n)) })) {
        let a = spectral_radius(&g, &cfg()).unwrap().lambda;
        let b = spectral_radius(&g.permuted(&perm), &cfg()).unwrap().lambda;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn adding_an_edge_never_lowers_lambda(g in graph_strategy(10), pick in any::<prop::sample::Index>()) {
        let non_edges: Vec<(usize, usize)> = (0..g.n()).flat_map(|v| (0..v).map(move |u| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let h = g.with_edge(u, v).unwrap();
        let a = spectral_radius(&g, &cfg()).unwrap().lambda;
        let b = spectral_radius(&h, &cfg()).unwrap().lambda;
        prop_assert!(b >= a - 1e-10);
        if h.is_connected() {
            prop_assert!(b > a + 1e-10);
        }
    }

    #[test]
    fn degree_bounds(g in graph_strategy(12)) {
        prop_assume!(g.m() > 0);
        let lambda = spectral_radius(&g, &cfg()).unwrap().lambda;
        let avg = 2.0 * g.m() as f64 / g.n() as f64;
        prop_assert!(lambda >= avg - 1e-10);
        prop_assert!(lambda <= g.max_degree() as f64 + 1e-10);
        prop_assert!(lambda >= (g.max_degree() as f64).sqrt() - 1e-10);
    }

    #[test]
    fn perron_vector_is_positive(g in graph_strategy(12)) {
        prop_assume!(g.is_connected() && g.n() > 1);
        let r = perron_vector(&g, &cfg()).unwrap();
        prop_assert!(r.vector.iter().all(|&x| x > 0.0 && x < 1.0));
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn detector_agrees_with_brute_force(g in graph_strategy(9)) {
        let fish = fish_graph(4).unwrap();
        let w = contains_h_l3(&g, 4).unwrap();
        prop_assert_eq!(w.is_some(), brute_force_contains(&g, &fish));
        if let Some(w) = w {
            prop_assert!(w.validate(&g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_is_relabel_invariant((g, perm) in graph_strategy(16).prop_flat_map(|g| { let n = g.n(); (Just(g), perm_strategy(n)) })) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
    }
}

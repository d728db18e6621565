use proptest::prelude::*;

use treeconn::constructions::{build_h, figure_fixture, smooth, smoothable_vertex};
use treeconn::extremal::verify_lemma5;
use treeconn::graph::{Graph, VertexSet};
use treeconn::io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use treeconn::oracle::brute_force_kappa_of_set;
use treeconn::packing::{kappa3, kappa_of_set, validate_certificate, Solver};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn any_graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Random graph made connected by a spanning path in a shuffled order.
fn connected_graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, order)| {
                let mut edges: Vec<(usize, usize)> = graph_from_bits(n, &bits).edges();
                for w in order.windows(2) {
                    let e = (w[0].min(w[1]), w[0].max(w[1]));
                    if !edges.contains(&e) {
                        edges.push(e);
                    }
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

fn with_perm(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.order();
    (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn triple(n: usize) -> impl Strategy<Value = VertexSet> {
    prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3)
        .prop_map(|v| VertexSet::new(v).unwrap())
}

proptest! {
    #[test]
    fn handshake(g in any_graph(1, 20)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
        prop_assert_eq!(g.edges().len(), g.size());
    }

    #[test]
    fn edge_list_round_trip(g in any_graph(1, 12)) {
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(g in any_graph(1, 12)) {
        let line = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&line).unwrap(), g);
    }

    #[test]
    fn parsers_reject_without_panicking(s in ".{0,40}") {
        let _ = parse_graph6(&s);
        let _ = parse_edge_list(&s);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in any_graph(1, 10).prop_flat_map(with_perm)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
        prop_assert!(g.is_isomorphic(&h).unwrap());
    }
}

#[test]
fn each_figure_survives_a_hundred_relabelings() {
    use rand::seq::SliceRandom;
    let mut rng = treeconn::extremal::campaign_rng(99);
    for id in 1..=6 {
        let g = figure_fixture(id).unwrap();
        let key = g.canonical_form().unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            assert_eq!(
                g.relabel(&perm).canonical_form().unwrap(),
                key,
                "figure {id}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa3_is_isomorphism_invariant((g, perm) in connected_graph(3, 8).prop_flat_map(with_perm)) {
        prop_assert_eq!(kappa3(&g).unwrap().kappa, kappa3(&g.relabel(&perm)).unwrap().kappa);
    }

    #[test]
    fn adding_an_edge_never_lowers_kappa(
        (g, s, pick) in connected_graph(3, 8)
            .prop_flat_map(|g| { let n = g.order(); (Just(g), triple(n), any::<prop::sample::Index>()) })
    ) {
        let n = g.order();
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let before = kappa_of_set(&g, &s).unwrap().kappa;
        let after = kappa_of_set(&g.with_edge(u, v).unwrap(), &s).unwrap().kappa;
        prop_assert!(after >= before);
    }

    #[test]
    fn solver_families_validate((g, s) in connected_graph(3, 9).prop_flat_map(|g| { let n = g.order(); (Just(g), triple(n)) })) {
        let r = kappa_of_set(&g, &s).unwrap();
        prop_assert_eq!(r.family.len(), r.kappa);
        prop_assert!(validate_certificate(&g, &r.family).is_empty());
        let min_deg = s.iter().map(|v| g.degree(v).unwrap()).min().unwrap();
        prop_assert!(r.kappa <= min_deg);
    }

    #[test]
    fn solver_matches_oracle((g, s) in connected_graph(3, 6).prop_flat_map(|g| { let n = g.order(); (Just(g), triple(n)) })) {
        prop_assert_eq!(kappa_of_set(&g, &s).unwrap().kappa, brute_force_kappa_of_set(&g, &s).unwrap());
    }

    #[test]
    fn kappa3_respects_minimum_degree(g in connected_graph(3, 9)) {
        let k = kappa3(&g).unwrap().kappa;
        let delta = g.min_degree();
        prop_assert!(k <= delta);
        let low: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v).unwrap() == delta).collect();
        if low.iter().any(|&a| low.iter().any(|&b| g.has_edge(a, b))) {
            prop_assert!(k < delta);
        }
    }

    #[test]
    fn smoothing_preserves_other_degrees(g in connected_graph(4, 12)) {
        let u = smoothable_vertex(&g);
        prop_assume!(u.is_some());
        let u = u.unwrap();
        let h = smooth(&g, u).unwrap();
        prop_assert_eq!((h.order(), h.size()), (g.order() - 1, g.size() - 1));
        let mut before = g.degrees();
        before.remove(u);
        prop_assert_eq!(before, h.degrees());
    }
}

#[test]
fn smoothing_monotonicity_over_seeds() {
    let solver = Solver::new();
    for seed in [1, 2, 3] {
        let report = verify_lemma5(&solver, 200, seed).unwrap();
        assert_eq!(report.candidates, 200);
        assert!(report.passed(), "{}", report.to_text());
    }
}

#[test]
fn h_family_shape() {
    for k in 1..=6 {
        let h = build_h(k).unwrap();
        let deg2 = h.degree_two_set();
        assert_eq!(deg2.len(), 3 * k);
        assert!(h.is_stable_set(&deg2).unwrap());
    }
}

//! Property tests for the library's stated invariants, checked through the
//! public API against the oracles in `common`.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute, charpoly};
use graph_stretch::generators::{generate, Family, FamilyParams};
use graph_stretch::gossip::{simulate_rounds, ValueVector};
use graph_stretch::graph::{
    count_cycles_of_length, cycle_edges, cycles_of_length, girth, moore_min_nodes, shortest_cycles,
};
use graph_stretch::leafmin::{eligible_pairs, minimise_leaves, LeafMinMethod};
use graph_stretch::metrics::{eigenratio, laplacian_spectrum};
use graph_stretch::optimizer::addition_candidates;
use graph_stretch::seed::Seed;
use graph_stretch::stretch::{rebuild_incidence, select_edge, stretch, StretchMethod};
use graph_stretch::{Edge, Girth, Graph};

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask[k] {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.2f64..0.9, any::<u64>()).prop_map(|(n, p, s)| {
        brute::random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(s))
    })
}

fn edge_set(cycle: &[usize]) -> Vec<Edge> {
    let mut es: Vec<Edge> = cycle_edges(cycle).collect();
    es.sort();
    es
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shortest_cycles_agree_with_girth_and_graph(g in small_graph(9)) {
        match girth(&g) {
            Girth::Acyclic => prop_assert!(shortest_cycles(&g).is_err()),
            Girth::Finite(k) => {
                let cs = shortest_cycles(&g).unwrap();
                prop_assert_eq!(cs.length, k);
                prop_assert_eq!(cs.len() as u64, brute::cycle_count(&g, k));
                for c in cs.iter() {
                    prop_assert_eq!(c.len(), k);
                    prop_assert_eq!(c.iter().collect::<BTreeSet<_>>().len(), k);
                    for e in cycle_edges(c) {
                        prop_assert!(g.has_edge(e.u(), e.v()));
                    }
                }
            }
        }
    }

    #[test]
    fn cycle_counts_match_exhaustive_walks(g in small_graph(8), len in 3usize..=8) {
        prop_assert_eq!(count_cycles_of_length(&g, len), brute::cycle_count(&g, len));
        prop_assert_eq!(cycles_of_length(&g, len).len() as u64, brute::cycle_count(&g, len));
    }

    #[test]
    fn moore_bound_is_monotone(d in 2u64..12, g in 3u64..14) {
        let here = moore_min_nodes(d, g).unwrap();
        prop_assert!(moore_min_nodes(d + 1, g).unwrap() >= here);
        prop_assert!(moore_min_nodes(d, g + 1).unwrap() >= here);
    }

    #[test]
    fn spectrum_matches_characteristic_polynomial(g in small_graph(6)) {
        let got = laplacian_spectrum(&g).unwrap();
        let want = charpoly::real_roots(&charpoly::characteristic_polynomial(&brute::laplacian(&g)), 1e-12);
        prop_assert_eq!(want.len(), g.n());
        for (a, b) in got.values().iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-6, "{} vs {}", a, b);
        }
    }

    #[test]
    fn eigenvalues_grow_with_edges(g in connected_graph(12), pick in any::<prop::sample::Index>()) {
        let absent: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!absent.is_empty());
        let (u, v) = absent[pick.index(absent.len())];
        let mut h = g.clone();
        h.add_edge(u, v);
        let (before, after) = (laplacian_spectrum(&g).unwrap(), laplacian_spectrum(&h).unwrap());
        for (a, b) in before.values().iter().zip(after.values()) {
            prop_assert!(*a <= b + 1e-8);
        }
    }

    #[test]
    fn eigenratio_is_a_ratio(g in connected_graph(12)) {
        let r = eigenratio(&g).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&r));
    }

    #[test]
    fn generated_graphs_are_simple_and_reproducible(
        family in prop::sample::select(Family::ALL.to_vec()),
        n in 6usize..30,
        x in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let params = match family {
            Family::Er => FamilyParams::Er { n, p: x },
            Family::Ws => FamilyParams::Ws { n, k: 1 + (x * (n / 2 - 1) as f64) as usize, p: x },
            Family::Ba => FamilyParams::Ba { n, m: 1 + (x * (n - 2) as f64) as usize },
            Family::Geo => FamilyParams::Geo { n, r: 0.1 + 0.8 * x },
        };
        prop_assume!(params.validate().is_ok());
        let g = generate(&params, Seed::new(seed)).unwrap();
        prop_assert_eq!(g.n(), n);
        for u in 0..n {
            let nb = g.neighbors(u);
            prop_assert!(!nb.contains(&u));
            prop_assert_eq!(nb.iter().collect::<BTreeSet<_>>().len(), nb.len());
        }
        let again = generate(&params, Seed::new(seed)).unwrap();
        prop_assert_eq!(&g, &again);
        if let FamilyParams::Ba { m, .. } = params {
            prop_assert_eq!(g.edge_count(), m + m * (n - m - 1));
        }
    }

    #[test]
    fn unrewired_lattice_is_regular(n in 8usize..40, k in 2usize..4, seed in any::<u64>()) {
        prop_assume!(k < n / 2);
        let g = generate(&FamilyParams::Ws { n, k, p: 0.0 }, Seed::new(seed)).unwrap();
        prop_assert!((0..n).all(|v| g.degree(v) == 2 * k));
        prop_assert_eq!(girth(&g), Girth::Finite(3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stretching_keeps_incidence_fresh(g in connected_graph(14), seed in any::<u64>(), m in 0usize..3) {
        let method = StretchMethod::ALL[m];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = g;
        let Ok(mut inc) = rebuild_incidence(&g) else { return Ok(()) };
        let mut steps = 0;
        let edges = g.edge_count();
        while girth(&g).value().is_some_and(|k| k < 8) {
            let e = select_edge(&inc, method, &mut rng).unwrap();
            let before = girth(&g);
            g.remove_edge(e.u(), e.v());
            inc.remove_edge(e);
            steps += 1;
            prop_assert!(brute::connected(&g), "removed a bridge {}", e);
            prop_assert!(girth(&g) >= before);
            if inc.is_empty() {
                prop_assert!(girth(&g) > Girth::Finite(inc.length()));
                match rebuild_incidence(&g) {
                    Ok(fresh) => inc = fresh,
                    Err(_) => break,
                }
            } else {
                prop_assert_eq!(girth(&g), Girth::Finite(inc.length()));
                let mut rows: Vec<Vec<Edge>> = inc.rows().map(|r| { let mut r = r.to_vec(); r.sort(); r }).collect();
                let mut want: Vec<Vec<Edge>> = cycles_of_length(&g, inc.length()).iter().map(edge_set).collect();
                rows.sort();
                want.sort();
                prop_assert_eq!(rows, want);
            }
            prop_assert!(steps <= edges);
        }
    }

    #[test]
    fn stretch_report_replays(g in connected_graph(16), target in 3usize..8, seed in any::<u64>()) {
        for method in StretchMethod::ALL {
            let r = stretch(&g, target, method, Seed::new(seed)).unwrap();
            prop_assert_eq!(&r.replay(&g), &r.graph);
            prop_assert!(r.removals.len() <= g.edge_count());
            prop_assert!(r.removals.windows(2).all(|w| w[0].girth <= w[1].girth));
        }
    }

    #[test]
    fn leafmin_picks_by_distance(g in connected_graph(20), floor in 4usize..7, seed in any::<u64>()) {
        let s = stretch(&g, floor, StretchMethod::LeastCycles, Seed::new(seed)).unwrap().graph;
        for method in [LeafMinMethod::Closest, LeafMinMethod::Furthest] {
            let report = minimise_leaves(&s, floor, method, Seed::new(seed)).unwrap();
            let mut h = s.clone();
            for a in &report.additions {
                let pairs = eligible_pairs(&h, floor, a.phase);
                let ds = pairs.iter().map(|p| p.distance);
                let want = if method == LeafMinMethod::Closest { ds.min() } else { ds.max() };
                prop_assert_eq!(Some(a.distance), want);
                prop_assert!(pairs.iter().any(|p| p.edge == a.edge && p.distance == a.distance));
                prop_assert!(a.distance as usize + 1 >= floor);
                h.add_edge(a.edge.u(), a.edge.v());
            }
            prop_assert_eq!(&h, &report.graph);
        }
    }

    #[test]
    fn addition_candidates_respect_floor(g in connected_graph(14), floor in 3usize..7, seed in any::<u64>()) {
        let s = stretch(&g, floor, StretchMethod::Random, Seed::new(seed)).unwrap().graph;
        for e in addition_candidates(&s, floor) {
            let mut h = s.clone();
            h.add_edge(e.u(), e.v());
            prop_assert!(girth(&h).at_least(floor));
        }
    }

    #[test]
    fn averaging_contracts_the_range(g in connected_graph(20), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let init: Vec<f64> = (0..g.n()).map(|i| ((i * 37 + 11) % 51) as f64).collect();
        let mut v = ValueVector::new(init);
        let sum = v.sum();
        let (mut lo, mut hi) = (f64::MIN, f64::MAX);
        for _ in 0..500 {
            simulate_rounds(&g, &mut v, 1, &mut rng);
            let min = v.values().iter().copied().fold(f64::MAX, f64::min);
            let max = v.values().iter().copied().fold(f64::MIN, f64::max);
            prop_assert!(min >= lo && max <= hi);
            lo = min;
            hi = max;
        }
        prop_assert!((v.sum() - sum).abs() <= 1e-9 * sum.abs());
    }
}

#[test]
fn complete_graph_triangles_are_binomial() {
    for n in 3..=10u64 {
        let want = n * (n - 1) * (n - 2) / 6;
        assert_eq!(cycles_of_length(&Graph::complete(n as usize), 3).len() as u64, want);
    }
}

#[test]
fn complete_graph_eigenratio_is_one() {
    for n in 2..=15 {
        assert!((eigenratio(&Graph::complete(n)).unwrap() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn petersen_has_girth_five_and_twelve_pentagons() {
    let g = Graph::petersen();
    assert_eq!(girth(&g), Girth::Finite(5));
    assert_eq!(shortest_cycles(&g).unwrap().len(), 12);
    assert_eq!(brute::cycle_count(&g, 5), 12);
}

#[test]
fn polynomial_roots_with_multiplicity() {
    // (x − 1)²(x − 3)(x + 2) = x⁴ − 3x³ − 3x² + 11x − 6
    let p: charpoly::Poly = [-6, 11, -3, -3, 1].iter().map(|&c| charpoly::q(c)).collect();
    let r = charpoly::real_roots(&p, 1e-12);
    let want = [-2.0, 1.0, 1.0, 3.0];
    assert_eq!(r.len(), 4);
    for (a, b) in r.iter().zip(want) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn path_laplacian_polynomial() {
    // L(P3) has eigenvalues 0, 1, 3: x³ − 4x² + 3x.
    let m = vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]];
    let q = charpoly::q;
    assert_eq!(charpoly::characteristic_polynomial(&m), vec![q(0), q(3), q(-4), q(1)]);
}

use super::*;
use crate::rat;
use crate::wgraph::Graph;
use num_traits::Zero;
use proptest::prelude::*;

/// Rejection probability by walking every length-`s` draw sequence.
fn enumerate_sequences(wg: &WeightedGraph, p: &Property, s: usize) -> Rational {
    let n = wg.n();
    let mut total = Rational::zero();
    let mut seq = vec![0usize; s];
    loop {
        let mut pr = Rational::one();
        for &v in &seq {
            pr *= wg.dist().weight(v);
        }
        let u: VertexSet = seq.iter().collect();
        if !pr.is_zero() && !p.satisfies(&wg.graph().induced(u)) {
            total += pr;
        }
        let mut i = 0;
        while i < s {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == s {
            return total;
        }
    }
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 0..n {
        for i in 0..j {
            if bits >> k & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

fn small_instance() -> impl Strategy<Value = WeightedGraph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), any::<u64>(), prop::collection::vec(0u64..4, n)))
        .prop_map(|(n, bits, mut masses)| {
            if masses.iter().all(|&m| m == 0) {
                masses[0] = 1;
            }
            let d = VertexDistribution::from_masses(&masses).unwrap();
            WeightedGraph::new(graph_from_bits(n, bits), d).unwrap()
        })
}

fn props() -> Vec<Property> {
    vec![
        Property::triangle_free(),
        Property::edge_free(),
        Property::complete(),
        Property::k_colorable(2),
        Property::induced_h_free(Graph::path(2)),
    ]
}

#[test]
fn k3_rejection_law_is_two_ninths() {
    let wg = WeightedGraph::uniform(Graph::complete(3));
    let p = Property::triangle_free();
    assert_eq!(enumerate_sequences(&wg, &p, 3), rat(2, 9));
    assert_eq!(exact_rejection_probability(&wg, &p, 3).unwrap(), rat(2, 9));
}

#[test]
fn point_mass_gives_constant_sample() {
    let d = VertexDistribution::point_mass(5, 3);
    assert_eq!(sample_vertices(&d, 20, 9), vec![3; 20]);
}

#[test]
fn zero_weight_vertex_is_never_drawn() {
    let d = VertexDistribution::from_masses(&[1, 0, 1]).unwrap();
    assert!(sample_vertices(&d, 5000, 1).iter().all(|&v| v != 1));
}

#[test]
fn uniform_pair_frequency() {
    let d = VertexDistribution::uniform(2);
    let s = sample_vertices(&d, 100_000, 42);
    let zeros = s.iter().filter(|&&v| v == 0).count() as f64 / 1e5;
    assert!((zeros - 0.5).abs() < 0.01, "{zeros}");
}

#[test]
fn single_draw_accepts_when_vertices_satisfy() {
    let wg = WeightedGraph::uniform(Graph::complete(6));
    for seed in 0..50 {
        assert!(vdf_tester(&wg, &Property::triangle_free(), 1, seed).unwrap().accepted());
    }
}

#[test]
fn rejection_carries_evidence() {
    let wg = WeightedGraph::uniform(Graph::complete(3));
    let p = Property::triangle_free();
    let mut rejects = 0;
    for seed in 0..200 {
        let out = vdf_tester(&wg, &p, 3, seed).unwrap();
        match out.decision {
            Decision::Accept => assert!(out.evidence.is_none()),
            Decision::Reject => {
                rejects += 1;
                let ev = out.evidence.unwrap();
                assert_eq!(ev, vec![0, 1, 2]);
                assert!(!p.satisfies(&wg.graph().induced_ordered(&ev)));
            }
        }
    }
    assert!(rejects > 0);
}

#[test]
fn outcomes_are_deterministic() {
    let wg = WeightedGraph::new(
        Graph::cycle(5),
        VertexDistribution::from_masses(&[1, 2, 3, 4, 5]).unwrap(),
    )
    .unwrap();
    let p = Property::k_colorable(2);
    for v in Variant::ALL {
        let mut cfg = TesterConfig::new(v, 4);
        cfg.m = Some(5);
        let a = run_tester(&wg, &p, &cfg, 77);
        let b = run_tester(&wg, &p, &cfg, 77);
        assert_eq!(format!("{a:?}"), format!("{b:?}"), "{v}");
    }
}

#[test]
fn members_are_always_accepted() {
    let instances = [
        (Graph::cycle(6), vec![1, 1, 1, 1, 1, 1]),
        (Graph::path(5), vec![3, 1, 4, 1, 5, 9]),
        (Graph::from_edges(7, &[(0, 1), (2, 3), (4, 5), (5, 6)]).unwrap(), vec![2, 2, 2, 2, 2, 2, 2]),
    ];
    let p = Property::k_colorable(2);
    for (g, masses) in instances {
        assert!(p.satisfies(&g));
        let wg = WeightedGraph::new(g, VertexDistribution::from_masses(&masses).unwrap()).unwrap();
        let n = wg.n();
        let delta = wg.dist().min_weight() * Rational::from_integer(n.into());
        let eps = rat(1, 4);
        for seed in 0..100 {
            assert!(vdf_tester(&wg, &p, 5, seed).unwrap().accepted());
            assert!(standard_tester(&wg, &p, 5, seed).unwrap().accepted());
            assert!(large_inputs_tester(&wg, &p, 5, n, seed).unwrap().accepted());
            assert!(size_aware_tester(&wg, &p, n, &eps, n, 5, seed).unwrap().accepted());
            assert!(size_aware_tester(&wg, &p, n, &eps, n + 1, 5, seed).unwrap().accepted());
            assert!(nlw_tester(&wg, &p, &delta, 5, seed).unwrap().accepted());
            for b in [TrivialBranch::LargeInputs, TrivialBranch::Nlw, TrivialBranch::SizeAware] {
                assert!(trivial_property_tester(&wg, &p, b, n, &delta, &eps, seed).unwrap().accepted());
            }
        }
    }
}

#[test]
fn nhw_weight_cap() {
    let wg = WeightedGraph::uniform(Graph::cycle(12));
    assert!(nhw_tester(&wg, &Property::triangle_free(), 2, 0).unwrap().accepted());
    assert!(matches!(
        nhw_tester(&wg, &Property::triangle_free(), 3, 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn nlw_weight_floor() {
    let wg = WeightedGraph::new(Graph::empty(3), VertexDistribution::from_masses(&[1, 1, 2]).unwrap()).unwrap();
    assert!(nlw_tester(&wg, &Property::edge_free(), &rat(3, 4), 3, 0).unwrap().accepted());
    assert!(matches!(
        nlw_tester(&wg, &Property::edge_free(), &rat(4, 5), 3, 0),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn extendable_property_large_inputs_matches_vdf() {
    let wg = WeightedGraph::uniform(Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap());
    let p = Property::triangle_free();
    for seed in 0..100 {
        assert_eq!(
            vdf_tester(&wg, &p, 4, seed).unwrap(),
            large_inputs_tester(&wg, &p, 4, 6, seed).unwrap()
        );
    }
}

#[test]
fn cycle_star_free_cycle_passes_large_inputs() {
    let wg = WeightedGraph::uniform(Graph::cycle(7));
    let p = Property::cycle_star_free();
    for seed in 0..50 {
        assert!(large_inputs_tester(&wg, &p, 7, 7, seed).unwrap().accepted());
    }
}

#[test]
fn large_inputs_rejects_non_core_on_full_sample() {
    // K3 satisfies P but has no 4-vertex extension in P; the isolated vertex is never drawn
    let p = Property::hereditary("triangle-free-or-small", |g: &Graph| !g.has_triangle() || g.n() <= 3);
    let g = Graph::complete(3).disjoint_union(&Graph::empty(1)).unwrap();
    let wg = WeightedGraph::new(g, VertexDistribution::from_masses(&[1, 1, 1, 0]).unwrap()).unwrap();
    assert!(vdf_tester(&wg, &p, 200, 3).unwrap().accepted());
    let out = large_inputs_tester(&wg, &p, 200, 4, 3).unwrap();
    assert_eq!(out.decision, Decision::Reject);
    assert_eq!(out.evidence, Some(vec![0, 1, 2]));
}

#[test]
fn size_aware_checks_declared_size() {
    let wg = WeightedGraph::uniform(Graph::cycle(5));
    assert!(matches!(
        size_aware_tester(&wg, &Property::triangle_free(), 6, &rat(1, 4), 10, 3, 0),
        Err(Error::Input(_))
    ));
}

#[test]
fn size_aware_sample_size_formula() {
    // ⌈4·ln 12 / (1/2)⌉ = ⌈19.88⌉
    assert_eq!(size_aware_sample_size(4, &rat(1, 2)).unwrap(), 20);
}

#[test]
fn trivial_tester_branches() {
    let disconnected = WeightedGraph::uniform(Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
    let conn = Property::connected();
    let one = Rational::one();
    let eps = rat(1, 4);
    // full collection on four vertices with M = 5 falls back to exact membership
    for seed in 0..20 {
        let out = trivial_property_tester(&disconnected, &conn, TrivialBranch::Nlw, 5, &one, &eps, seed).unwrap();
        assert_eq!(out.decision, Decision::Reject);
        let out = trivial_property_tester(&disconnected, &conn, TrivialBranch::LargeInputs, 4, &one, &eps, seed).unwrap();
        assert!(out.accepted() && out.sample.is_empty());
    }
    let c5 = WeightedGraph::uniform(Graph::cycle(5));
    let ham = Property::hamiltonian();
    for b in [TrivialBranch::LargeInputs, TrivialBranch::Nlw, TrivialBranch::SizeAware] {
        assert!(trivial_property_tester(&c5, &ham, b, 5, &one, &eps, 1).unwrap().accepted());
    }
}

#[test]
fn variant_ids_round_trip() {
    for v in Variant::ALL {
        assert_eq!(Variant::from_id(v.id()).unwrap(), v);
    }
    assert!(Variant::from_id("nope").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_law_matches_sequence_enumeration(wg in small_instance(), s in 1usize..=4, pi in 0usize..5) {
        let p = &props()[pi];
        prop_assert_eq!(exact_rejection_probability(&wg, p, s).unwrap(), enumerate_sequences(&wg, p, s));
    }

    #[test]
    fn rejection_is_monotone_in_sample_size(wg in small_instance(), pi in 0usize..5) {
        let p = &props()[pi];
        let probs: Vec<Rational> = (1..=4).map(|s| enumerate_sequences(&wg, p, s)).collect();
        for w in probs.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn tester_sample_has_requested_length(wg in small_instance(), s in 1usize..30, seed in any::<u64>()) {
        let out = vdf_tester(&wg, &Property::triangle_free(), s, seed).unwrap();
        prop_assert_eq!(out.sample.len(), s);
        prop_assert!(out.sample.iter().all(|&v| wg.dist().mass(v) > 0));
    }
}

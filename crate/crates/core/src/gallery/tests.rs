use super::*;
use crate::rat;
use num_traits::ToPrimitive;

#[test]
fn ab_free_c5_pair_is_certified() {
    let pair = non_extendable_pair(&Property::ab_free(), &Graph::cycle(5), VertexSet::singleton(0)).unwrap();
    assert_eq!(pair.distance, rat(1, 25));
    assert!(pair.certified());
    assert!(identical_sample_laws(&pair.first, &pair.second).unwrap());
    assert_eq!(pair.certificate().distance, "1/25");
    assert_eq!(pair.certificate().method, "brute-force");
}

#[test]
fn extendable_property_is_rejected() {
    let e = non_extendable_pair(&Property::triangle_free(), &Graph::cycle(5), VertexSet::default()).unwrap_err();
    assert!(matches!(e, Error::Precondition(_)));
}

#[test]
fn connectivity_pair() {
    let s: VertexSet = [0, 2].iter().collect();
    let pair = non_hereditary_pair(&Property::connected(), &Graph::path(2), s).unwrap();
    assert_eq!(pair.distance, rat(1, 4));
    assert!(pair.certified());
    assert!(identical_sample_laws(&pair.first, &pair.second).unwrap());
}

#[test]
fn hamiltonicity_pair() {
    let s: VertexSet = [0, 1, 2].iter().collect();
    let pair = non_hereditary_pair(&Property::hamiltonian(), &Graph::cycle(4), s).unwrap();
    assert!(pair.distance >= rat(1, 9));
    assert!(pair.certified());
}

#[test]
fn hereditary_property_is_rejected() {
    let e = non_hereditary_pair(&Property::triangle_free(), &Graph::cycle(4), VertexSet::full(2)).unwrap_err();
    assert!(matches!(e, Error::Precondition(_)));
}

#[test]
fn cycle_star_sample_laws_coincide() {
    for m in 3..=6 {
        let pair = cycle_star_pair(m).unwrap();
        assert!(pair.first_member);
        assert!(identical_sample_laws(&pair.first, &pair.second).unwrap());
        for q in 0..4 {
            let tv = tv_distance_estimate(&pair.first, &pair.second, q, 2000, 5).unwrap();
            assert!(tv.estimate < 0.1);
        }
    }
}

#[test]
fn cycle_star_second_instance_is_one_over_m_squared_far() {
    for m in 3..=12 {
        let pair = cycle_star_pair(m).unwrap();
        assert_eq!(pair.distance, rat(1, (m * m) as i64));
        assert!(pair.certified());
        // joining the weightless vertex to the cycle is free but does not help
        let mut g = pair.second.graph().clone();
        g.add_edge(0, m);
        assert!(!pair.property.satisfies(&g));
        g.remove_edge(0, 1);
        assert!(pair.property.satisfies(&g));
    }
}

#[test]
fn density_pair_exact_densities() {
    let pair = density_pair(8).unwrap();
    assert_eq!(edge_density(pair.first.graph()), rat(3, 16));
    assert_eq!(edge_density(pair.second.graph()), rat(15, 32));
    assert!(pair.first_member);
    // 15 edges, 8 allowed, each of weight (1/12)²
    assert_eq!(pair.distance, rat(7, 144));
    assert!(pair.certified());
    assert!(density_pair(6).is_err());
}

#[test]
fn zero_draws_give_identical_laws() {
    let pair = density_pair(8).unwrap();
    let tv = tv_distance_estimate(&pair.first, &pair.second, 0, 100, 1).unwrap();
    assert_eq!(tv.estimate, 0.0);
    assert_eq!(tv.classes, 1);
}

#[test]
fn identical_inputs_have_small_tv() {
    let wg = WeightedGraph::uniform(Graph::cycle(6));
    let tv = tv_distance_estimate(&wg, &wg, 3, 20_000, 2).unwrap();
    assert!(tv.estimate < 0.03);
    assert!(tv.ci.0 <= tv.estimate && tv.estimate <= tv.ci.1 + 1e-12);
}

#[test]
fn exact_clique_law_matches_enumeration() {
    let pair = density_pair(8).unwrap();
    let [c1, c2] = pair.cliques.unwrap();
    for (wg, c) in [(&pair.first, c1), (&pair.second, c2)] {
        for q in 0..=3 {
            let law = exact_clique_size_law(wg, c, q).unwrap();
            let mut brute = vec![Rational::zero(); q + 1];
            let n = wg.n();
            for code in 0..n.pow(q as u32) {
                let mut pr = Rational::one();
                let mut u = VertexSet::default();
                let mut x = code;
                for _ in 0..q {
                    let v = x % n;
                    x /= n;
                    pr *= wg.dist().weight(v);
                    u.insert(v);
                }
                brute[(u & c).len()] += pr;
            }
            assert_eq!(law, brute);
        }
    }
}

#[test]
fn histogram_tracks_exact_law() {
    let pair = density_pair(20).unwrap();
    let [c1, _] = pair.cliques.unwrap();
    let trials = 50_000;
    let h = clique_size_histogram(&pair.first, c1, 3, trials, 3);
    let law = exact_clique_size_law(&pair.first, c1, 3).unwrap();
    for (k, p) in law.iter().enumerate() {
        let p = p.to_f64().unwrap();
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        let f = h[k] as f64 / trials as f64;
        assert!((f - p).abs() <= 4.0 * sd, "bin {k}: {f} vs {p}");
    }
}

#[test]
fn binomial_law() {
    assert_eq!(binomial_half_law(3), vec![rat(1, 8), rat(3, 8), rat(3, 8), rat(1, 8)]);
}

#[test]
fn pair_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("vdflab-gallery-{}", std::process::id()));
    let pair = density_pair(8).unwrap();
    pair.write(&dir).unwrap();
    let second = crate::wgraph::io::read_wgraph(dir.join("density-8.2.wgraph")).unwrap();
    assert_eq!(second, pair.second);
    let cert: Certificate =
        serde_json::from_str(&std::fs::read_to_string(dir.join("density-8.cert.json")).unwrap()).unwrap();
    assert_eq!(cert, pair.certificate());
    std::fs::remove_dir_all(dir).unwrap();
}

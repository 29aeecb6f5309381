use super::*;
use crate::distance::{distance_to_property, edit_distance};
use crate::rat;
use crate::wgraph::canon::graphs_up_to;
use crate::wgraph::VertexDistribution;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn wg(g: Graph, masses: &[u64]) -> WeightedGraph {
    WeightedGraph::new(g, VertexDistribution::from_masses(masses).unwrap()).unwrap()
}

fn edge() -> Graph {
    Graph::complete(2)
}

/// Mass vectors of length `n` summing to `q`, zeros allowed.
fn compositions(n: usize, q: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![q]];
    }
    (0..=q)
        .flat_map(|first| {
            compositions(n - 1, q - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn identity_blowup() {
    let base = WeightedGraph::uniform(Graph::cycle(5));
    let b = dn_blowup(&base, 5, InternalPolicy::Empty).unwrap();
    assert_eq!(b.result(), base.graph());
    assert_eq!(b.sizes(), vec![1; 5]);
}

#[test]
fn half_half_edge_is_k22() {
    let b = dn_blowup(&wg(edge(), &[1, 1]), 4, InternalPolicy::Empty).unwrap();
    let expect = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    assert_eq!(b.result(), &expect);
    assert_eq!(b.project(0).unwrap(), 0);
    assert_eq!(b.project(3).unwrap(), 1);
}

#[test]
fn two_thirds_edge_sizes() {
    let b = dn_blowup(&wg(edge(), &[2, 1]), 3, InternalPolicy::Clique).unwrap();
    assert_eq!(b.sizes(), vec![2, 1]);
    assert_eq!(b.project(1).unwrap(), 0);
    assert_eq!(b.project(2).unwrap(), 1);
    assert_eq!(b.result(), &Graph::complete(3));
    assert!(b.project(3).is_err());
}

#[test]
fn unsuitable_n_names_vertex() {
    let e = dn_blowup(&wg(edge(), &[2, 1]), 4, InternalPolicy::Empty).unwrap_err();
    assert!(matches!(&e, Error::Input(m) if m.contains("v0")), "{e}");
    assert_eq!(least_suitable_n(&wg(Graph::empty(3), &[1, 2, 3])), 6);
}

#[test]
fn zero_weight_gives_empty_block() {
    let b = dn_blowup(&wg(Graph::path(2), &[1, 0, 1]), 4, InternalPolicy::Empty).unwrap();
    assert_eq!(b.sizes(), vec![2, 0, 2]);
    assert_eq!(b.result().edge_count(), 0);
    assert_eq!(b.project(2).unwrap(), 2);
}

#[test]
fn custom_policy_checks_sizes() {
    let base = wg(edge(), &[1, 1]);
    let ok = InternalPolicy::Custom(vec![Graph::complete(2), Graph::empty(2)]);
    let b = dn_blowup(&base, 4, ok).unwrap();
    assert!(b.result().has_edge(0, 1) && !b.result().has_edge(2, 3));
    let bad = InternalPolicy::Custom(vec![Graph::complete(3), Graph::empty(1)]);
    assert!(dn_blowup(&base, 4, bad).is_err());
}

#[test]
fn text_round_trip() {
    let base = wg(Graph::path(2), &[1, 2, 3]);
    for policy in [
        InternalPolicy::Empty,
        InternalPolicy::Clique,
        InternalPolicy::Custom(vec![Graph::empty(1), Graph::complete(2), Graph::path(2)]),
    ] {
        let b = dn_blowup(&base, 6, policy).unwrap();
        let text = b.to_text();
        assert!(text.contains("sets 0 1 3 6"));
        assert_eq!(Blowup::parse(&text).unwrap(), b);
    }
    let broken = dn_blowup(&base, 6, InternalPolicy::Empty).unwrap().to_text().replace("sets 0 1 3 6", "sets 0 2 3 6");
    assert!(matches!(Blowup::parse(&broken), Err(Error::Parse { .. })));
}

#[test]
fn edge_free_farness_closed_form() {
    let base = wg(Graph::path(2), &[1, 2, 3]);
    for (policy, extra) in [(InternalPolicy::Empty, 0u64), (InternalPolicy::Clique, 1 + 3)] {
        let b = dn_blowup(&base, 6, policy).unwrap();
        let (d0, d1) = verify_farness_of(&b, &Property::edge_free()).unwrap();
        // base edges v0v1, v1v2: 1·2/36 + 2·3/36
        assert_eq!(d0, rat(8, 36));
        assert_eq!(d1, Rational::new((8 + extra).into(), 36u64.into()));
    }
    let empty = wg(Graph::empty(3), &[1, 1, 2]);
    assert_eq!(
        verify_blowup_farness(&empty, &Property::edge_free(), 8).unwrap(),
        (Rational::zero(), Rational::zero())
    );
}

#[test]
fn triangle_free_farness_small_instances() {
    let p = Property::triangle_free();
    for g in graphs_up_to(3).unwrap() {
        if g.n() == 0 {
            continue;
        }
        for q in 1..=4 {
            for masses in compositions(g.n(), q) {
                let base = wg(g.clone(), &masses);
                let n = least_suitable_n(&base);
                let (d0, d1) = verify_blowup_farness(&base, &p, n).unwrap();
                assert!(d1 >= d0);
            }
        }
    }
}

#[test]
fn avoiding_blowups_verify() {
    let base = wg(Graph::cycle(5), &[1, 1, 1, 1, 2]);
    let c4 = Property::induced_h_free(Graph::cycle(4));
    let b = avoiding_blowup(&base, &c4, 12).unwrap();
    assert_eq!(b.policy(), &InternalPolicy::Clique);
    let k3 = Property::triangle_free();
    let b = avoiding_blowup(&wg(Graph::cycle(5), &[1, 1, 1, 1, 1]), &k3, 10).unwrap();
    assert_eq!(b.policy(), &InternalPolicy::Empty);
    let singletons = WeightedGraph::uniform(Graph::path(3));
    assert!(avoiding_blowup(&singletons, &c4, 4).is_ok());
}

#[test]
fn wrong_policy_yields_counterexample() {
    // empty blocks over an edge form an induced C4 meeting both blocks twice
    let base = wg(edge(), &[1, 1]);
    let b = dn_blowup(&base, 4, InternalPolicy::Empty).unwrap();
    let (f, copy) = repeated_block_copy(&b, &[Graph::cycle(4)]).unwrap();
    assert_eq!(f, Graph::cycle(4));
    assert_eq!(copy.len(), 4);
    assert!(matches!(avoiding_blowup(&base, &Property::ab_free(), 4), Err(Error::Precondition(_))));
}

#[test]
fn contraction_of_own_blowup_is_base() {
    let base = wg(Graph::cycle(4), &[1, 2, 1, 2]);
    let b = dn_blowup(&base, 6, InternalPolicy::Clique).unwrap();
    for seed in 0..30 {
        assert_eq!(&random_contraction(&b, b.result(), seed).unwrap(), base.graph());
    }
    assert!(expected_contraction_distance(&b, b.result()).unwrap().is_zero());
}

#[test]
fn contraction_of_singleton_blowup_is_relabeled_h() {
    let base = WeightedGraph::uniform(Graph::path(3));
    let b = dn_blowup(&base, 4, InternalPolicy::Empty).unwrap();
    let h = Graph::cycle(4);
    assert_eq!(random_contraction(&b, &h, 5).unwrap(), h);
}

#[test]
fn contraction_mean_matches_expectation() {
    let base = wg(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), &[1, 2, 3]);
    let b = dn_blowup(&base, 6, InternalPolicy::Empty).unwrap();
    let mut r = rng(11, 0);
    let mut h = Graph::empty(6);
    for j in 0..6 {
        for i in 0..j {
            if rand::Rng::gen_bool(&mut r, 0.5) {
                h.add_edge(i, j);
            }
        }
    }
    let expect = expected_contraction_distance(&b, &h).unwrap().to_f64().unwrap();
    let trials = 20_000;
    let (mut sum, mut sq) = (0.0, 0.0);
    for seed in 0..trials {
        let c = random_contraction(&b, &h, seed).unwrap();
        let d = edit_distance(&c, base.graph(), base.dist()).unwrap().to_f64().unwrap();
        sum += d;
        sq += d * d;
    }
    let mean = sum / trials as f64;
    let se = ((sq / trials as f64 - mean * mean).max(0.0) / trials as f64).sqrt();
    assert!((mean - expect).abs() <= 3.0 * se + 1e-12, "{mean} vs {expect} (se {se})");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocks_match_weights(bits in any::<u64>(), masses in prop::collection::vec(0u64..5, 1..6), k in 1usize..4) {
        prop_assume!(masses.iter().any(|&m| m > 0));
        let n = masses.len();
        let mut g = Graph::empty(n);
        let mut t = 0;
        for j in 0..n {
            for i in 0..j {
                if bits >> t & 1 == 1 { g.add_edge(i, j); }
                t += 1;
            }
        }
        let base = wg(g, &masses);
        let nn = least_suitable_n(&base) * k;
        prop_assume!(nn <= MAX_VERTICES);
        let b = dn_blowup(&base, nn, InternalPolicy::Empty).unwrap();
        prop_assert_eq!(b.sizes().iter().sum::<usize>(), nn);
        for (i, s) in b.sizes().into_iter().enumerate() {
            prop_assert_eq!(Rational::new(s.into(), nn.into()), base.dist().weight(i).clone());
        }
        for u in 0..nn {
            let i = b.project(u).unwrap();
            prop_assert!(b.set(i).contains(&u));
        }
        for u in 0..nn {
            for w in 0..u {
                let (i, j) = (b.project(u).unwrap(), b.project(w).unwrap());
                if i != j {
                    prop_assert_eq!(b.result().has_edge(u, w), base.graph().has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_tiny_blowups(masses in prop::collection::vec(1u64..3, 2..4)) {
        let base = wg(Graph::complete(masses.len()), &masses);
        let nn = least_suitable_n(&base);
        prop_assume!(nn <= 6);
        let b = dn_blowup(&base, nn, InternalPolicy::Empty).unwrap();
        let bf = distance_to_property(&b.to_weighted(), &Property::complete()).unwrap().distance;
        prop_assert_eq!(bf, verify_farness_of(&b, &Property::complete()).unwrap().1);
    }
}

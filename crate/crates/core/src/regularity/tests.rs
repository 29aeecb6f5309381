use super::*;
use crate::rat;
use crate::sampling::rng;
use crate::wgraph::{Graph, WeightedGraph};
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn set(v: &[usize]) -> VertexSet {
    v.iter().collect()
}

fn random_graph(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed, 0);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_wg(n: usize, seed: u64) -> WeightedGraph {
    let mut r = rng(seed, 1);
    let masses: Vec<u64> = (0..n).map(|_| r.gen_range(1..5)).collect();
    WeightedGraph::new(random_graph(n, seed), VertexDistribution::from_masses(&masses).unwrap()).unwrap()
}

#[test]
fn internal_weight_examples() {
    let u6 = VertexDistribution::uniform(6);
    assert_eq!(internal_pair_weight(&Partition::singletons(VertexSet::full(6)), &u6).unwrap(), rat(0, 1));
    assert_eq!(internal_pair_weight(&Partition::trivial(VertexSet::full(6)), &u6).unwrap(), rat(15, 36));
    let p = Partition::new(vec![set(&[0, 1, 2, 3]), set(&[4, 5])]).unwrap();
    // direct sum over pairs inside parts
    let direct = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .filter(|&(a, b)| p.part_of(a) == p.part_of(b))
        .count();
    assert_eq!(internal_pair_weight(&p, &u6).unwrap(), rat(direct as i64, 36));
}

#[test]
fn low_internal_examples() {
    let u2 = VertexDistribution::uniform(2);
    let p = low_internal_partition(VertexSet::full(2), &u2, &rat(1, 1)).unwrap();
    assert_eq!(p.len(), 1);
    let u8 = VertexDistribution::uniform(8);
    let p = low_internal_partition(VertexSet::full(8), &u8, &rat(1, 4)).unwrap();
    assert_eq!(p.len(), 4);
    assert!(internal_pair_weight(&p, &u8).unwrap() <= rat(1, 4));
    let p = low_internal_partition(set(&[1, 4, 6]), &u8, &rat(1, 5)).unwrap();
    assert_eq!(p, Partition::singletons(set(&[1, 4, 6])));
}

#[test]
fn balanced_examples() {
    let u4 = VertexDistribution::uniform(4);
    let p = balanced_partition(VertexSet::full(4), &u4, 2).unwrap();
    assert_eq!(p.len(), 2);
    // the first part is a smallest set reaching 1/4
    assert_eq!(p.parts().iter().map(|&q| u4.set_weight(q)).collect::<Vec<_>>(), vec![rat(1, 4), rat(3, 4)]);
    let d = VertexDistribution::new(vec![rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 8), rat(1, 8)]).unwrap();
    let p = balanced_partition(VertexSet::full(5), &d, 2).unwrap();
    assert!(p.parts().iter().all(|&q| d.set_weight(q) >= rat(1, 4)));
    let p = balanced_partition(VertexSet::full(5), &d, 1).unwrap();
    assert_eq!(p.len(), 1);
    let heavy = VertexDistribution::new(vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
    assert!(matches!(balanced_partition(VertexSet::full(3), &heavy, 2), Err(Error::Input(_))));
}

/// Straightforward double loop over all subset pairs with rational arithmetic.
fn naive_witness(wg: &WeightedGraph, x: VertexSet, y: VertexSet, eps: &Rational) -> Option<(VertexSet, VertexSet)> {
    let d = wg.pair_density(x, y).unwrap();
    let dist = wg.dist();
    let (wx, wy) = (dist.set_weight(x), dist.set_weight(y));
    for xp in x.subsets() {
        if dist.set_weight(xp) < eps * &wx {
            continue;
        }
        for yp in y.subsets() {
            if dist.set_weight(yp) < eps * &wy {
                continue;
            }
            if (wg.pair_density(xp, yp).unwrap() - &d).abs() > *eps {
                return Some((xp, yp));
            }
        }
    }
    None
}

#[test]
fn certify_examples() {
    let kb = WeightedGraph::uniform(Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap());
    for e in [rat(1, 100), rat(1, 2)] {
        assert!(certify_pair(&kb, set(&[0, 1]), set(&[2, 3]), &e).unwrap().is_regular());
    }
    let empty = WeightedGraph::uniform(Graph::empty(4));
    assert!(certify_pair(&empty, set(&[0, 1]), set(&[2, 3]), &rat(1, 10)).unwrap().is_regular());
    // X1 = {0, 1} complete to Y = {4, 5}, X2 = {2, 3} empty to Y
    let g = Graph::from_edges(6, &[(0, 4), (0, 5), (1, 4), (1, 5)]).unwrap();
    let wg = WeightedGraph::uniform(g);
    let r = certify_pair(&wg, set(&[0, 1, 2, 3]), set(&[4, 5]), &rat(1, 4)).unwrap();
    assert_eq!(r.status, PairStatus::Irregular);
    let w = r.witness.unwrap();
    assert_eq!((w.x, w.y), naive_witness(&wg, set(&[0, 1, 2, 3]), set(&[4, 5]), &rat(1, 4)).unwrap());
    assert!((w.density - rat(1, 2)).abs() > rat(1, 4));
    let big = WeightedGraph::uniform(Graph::empty(30));
    assert!(matches!(
        certify_pair(&big, VertexSet::full(15), VertexSet::full(30) - VertexSet::full(15), &rat(1, 4)),
        Err(Error::Resource { .. })
    ));
}

#[test]
fn certify_matches_naive_double_loop() {
    for seed in 0..100u64 {
        let mut r = rng(seed, 9);
        let kx = r.gen_range(1..=8usize);
        let ky = r.gen_range(1..=if seed % 4 == 0 { 8 } else { 5 });
        let wg = random_wg(kx + ky, seed);
        let x = VertexSet::full(kx);
        let y = VertexSet::full(kx + ky) - x;
        let eps = [rat(1, 10), rat(1, 4), rat(1, 3), rat(1, 2)][seed as usize % 4].clone();
        let got = certify_pair(&wg, x, y, &eps).unwrap();
        let want = naive_witness(&wg, x, y, &eps);
        assert_eq!(got.witness.map(|w| (w.x, w.y)), want, "seed {seed}");
    }
}

#[test]
fn subpair_and_atypical() {
    let kb = WeightedGraph::uniform(Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap());
    let (x, y) = (set(&[0, 1]), set(&[2, 3]));
    let r = subpair_bounds_check(&kb, (x, y), (x, y), &rat(1, 10), &rat(1, 1)).unwrap();
    assert_eq!(r.density, r.sub_density);
    assert_eq!(r.eps_prime, rat(1, 5));
    let r = subpair_bounds_check(&kb, (x, y), (set(&[0]), set(&[3])), &rat(1, 10), &rat(1, 2)).unwrap();
    assert_eq!(r.sub_density, rat(1, 1));
    assert_eq!(atypical_vertices(&kb, x, y, &rat(1, 10)).unwrap(), VertexSet::EMPTY);
    let empty = WeightedGraph::uniform(Graph::empty(4));
    assert_eq!(atypical_vertices(&empty, x, y, &rat(1, 10)).unwrap(), VertexSet::EMPTY);
    let g = Graph::from_edges(6, &[(0, 4), (0, 5), (1, 4), (1, 5)]).unwrap();
    let wg = WeightedGraph::uniform(g);
    let at = atypical_vertices(&wg, set(&[0, 1, 2, 3]), set(&[4, 5]), &rat(1, 4)).unwrap();
    assert_eq!(at, set(&[0, 1, 2, 3]));
}

#[test]
fn subpair_slicing_on_random_regular_pairs() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let wg = random_wg(8, seed);
        let (x, y) = (VertexSet::full(4), VertexSet::full(8) - VertexSet::full(4));
        let eps = rat(1, 2);
        if !certify_pair(&wg, x, y, &eps).unwrap().is_regular() {
            continue;
        }
        let d = wg.dist();
        for xp in x.subsets().filter(|s| d.set_weight(*s) >= &eps * d.set_weight(x)) {
            for yp in y.subsets().filter(|s| d.set_weight(*s) >= &eps * d.set_weight(y)) {
                let rep = subpair_bounds_check(&wg, (x, y), (xp, yp), &eps, &eps).unwrap();
                assert!(rep.within_bounds && rep.sub_regular);
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn delta_recurrence() {
    for e in [rat(1, 2), rat(1, 3), rat(9, 10)] {
        assert_eq!(delta_counting(2, &e).unwrap(), e);
    }
    assert_eq!(delta_counting(3, &rat(1, 2)).unwrap(), rat(1, 128));
    // δ(3, 1/4) = min{1/8, 1/8, ½·(1/8)²·(1/8)} = 1/1024
    assert_eq!(delta_counting(3, &rat(1, 4)).unwrap(), rat(1, 1024));
    // δ(4, 1/2) = min{1/12, 1/4, ½·(1/4)³·δ(3, 1/4)}
    assert_eq!(delta_counting(4, &rat(1, 2)).unwrap(), rat(1, 128) * rat(1, 1024));
    assert!(delta_counting(1, &rat(1, 2)).is_err());
    assert!(delta_counting(3, &rat(1, 1)).is_err());
}

fn blowup_of(h: &Graph, sizes: &[usize]) -> (Graph, Vec<VertexSet>) {
    let n: usize = sizes.iter().sum();
    let mut owner = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat(i).take(s));
    }
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if owner[a] != owner[b] && h.has_edge(owner[a], owner[b]) {
                g.add_edge(a, b);
            }
        }
    }
    let sets = (0..sizes.len()).map(|i| (0..n).filter(|&v| owner[v] == i).collect()).collect();
    (g, sets)
}

#[test]
fn copy_mass_examples() {
    let (g, sets) = blowup_of(&Graph::complete(2), &[2, 3]);
    let wg = WeightedGraph::uniform(g);
    let edge = Graph::complete(2);
    assert_eq!(weighted_copy_mass(&wg, &edge, &sets).unwrap(), rat(2, 5) * rat(3, 5));
    let e = WeightedGraph::uniform(Graph::empty(5));
    assert_eq!(weighted_copy_mass(&e, &edge, &sets).unwrap(), rat(0, 1));
    // triangle across three sets of a perturbed blowup, against a direct triple sum
    let (mut g, sets) = blowup_of(&Graph::complete(3), &[2, 2, 3]);
    g.remove_edge(0, 2);
    g.remove_edge(1, 5);
    let d = VertexDistribution::from_masses(&[1, 2, 1, 3, 1, 1, 2]).unwrap();
    let wg = WeightedGraph::new(g.clone(), d.clone()).unwrap();
    let mut direct = Rational::from_integer(0.into());
    for a in sets[0].iter() {
        for b in sets[1].iter() {
            for c in sets[2].iter() {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    direct += d.weight(a) * d.weight(b) * d.weight(c);
                }
            }
        }
    }
    assert_eq!(weighted_copy_mass(&wg, &Graph::complete(3), &sets).unwrap(), direct);
}

#[test]
fn counting_lemma_instances() {
    // complete tripartite: every pair homogeneous, so every regularity level holds
    let (g, sets) = blowup_of(&Graph::complete(3), &[2, 2, 2]);
    let wg = WeightedGraph::uniform(g);
    let c = counting_lemma_check(&wg, &Graph::complete(3), &sets, &rat(1, 2)).unwrap();
    assert_eq!(c.copy_mass, rat(1, 27));
    assert!(c.margin > rat(0, 1));
    // path role pattern in a blowup of P2 with weights
    let p2 = Graph::path(2);
    let (g, sets) = blowup_of(&p2, &[1, 2, 3]);
    let wg = WeightedGraph::new(g, VertexDistribution::from_masses(&[2, 1, 3, 1, 1, 2]).unwrap()).unwrap();
    let c = counting_lemma_check(&wg, &p2, &sets, &rat(1, 3)).unwrap();
    let prod = wg.dist().set_weight(sets[0]) * wg.dist().set_weight(sets[1]) * wg.dist().set_weight(sets[2]);
    assert_eq!(c.copy_mass, prod);
    // a pair below the density threshold is a precondition failure
    let (mut g, sets) = blowup_of(&Graph::complete(2), &[1, 1]);
    g.remove_edge(0, 1);
    let wg = WeightedGraph::uniform(g);
    assert!(matches!(counting_lemma_check(&wg, &Graph::complete(2), &sets, &rat(1, 2)), Err(Error::Precondition(_))));
}

#[test]
fn index_examples() {
    let p = Partition::new(vec![set(&[0, 2]), set(&[1, 3])]).unwrap();
    assert_eq!(partition_index(&WeightedGraph::uniform(Graph::empty(4)), &p).unwrap(), rat(0, 1));
    assert_eq!(partition_index(&WeightedGraph::uniform(Graph::complete(4)), &p).unwrap(), rat(1, 4));
    let c4 = WeightedGraph::uniform(Graph::cycle(4));
    assert_eq!(partition_index(&c4, &p).unwrap(), rat(1, 4));
    let q = Partition::new(vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
    assert_eq!(partition_index(&c4, &q).unwrap(), rat(1, 16));
    let s = Partition::singletons(VertexSet::full(4));
    assert_eq!(partition_index(&WeightedGraph::uniform(Graph::complete(4)), &s).unwrap(), rat(6, 16));
}

#[test]
fn boost_on_half_split_pair() {
    let g = Graph::from_edges(6, &[(0, 4), (0, 5), (1, 4), (1, 5)]).unwrap();
    let wg = WeightedGraph::uniform(g);
    let p = Partition::new(vec![set(&[0, 1, 2, 3]), set(&[4, 5])]).unwrap();
    // the irregular pair weighs 2/9, so the partition is irregular only below that
    assert!(irregular_pairs(&wg, &p, &rat(1, 4)).unwrap().len() == 1);
    assert!(matches!(
        boost_refinement(&wg, &p, &rat(1, 4), &irregular_pairs(&wg, &p, &rat(1, 4)).unwrap()),
        Err(Error::Contract(_))
    ));
    let eps = rat(1, 5);
    let irr = irregular_pairs(&wg, &p, &eps).unwrap();
    assert_eq!(irr.len(), 1);
    let b = boost_refinement(&wg, &p, &eps, &irr).unwrap();
    let e5 = &eps * &eps * &eps * &eps * &eps;
    assert!(b.index_after >= &b.index_before + e5);
    assert!(b.partition.len() <= p.len() << p.len());
    assert!(b.partition.refines(&p));
    let regular = Partition::new(vec![set(&[0, 1]), set(&[2, 3]), set(&[4, 5])]).unwrap();
    assert!(matches!(boost_refinement(&wg, &regular, &eps, &[]), Err(Error::Contract(_))));
}

#[test]
fn serialization_round_trip() {
    let p = Partition::new(vec![set(&[3, 5]), set(&[0, 2]), set(&[1, 4])]).unwrap();
    let text = p.to_text();
    assert_eq!(text, "0 2\n1 4\n3 5\n");
    assert_eq!(Partition::parse(&text).unwrap(), p);
    assert!(Partition::parse("0 1\n1 2\n").is_err());
    assert!(Partition::new(vec![set(&[0]), VertexSet::EMPTY]).is_err());
}

#[test]
fn szemeredi_examples() {
    let halves = Partition::new(vec![VertexSet::full(6), VertexSet::full(12) - VertexSet::full(6)]).unwrap();
    for g in [Graph::complete(12), Graph::empty(12)] {
        let wg = WeightedGraph::uniform(g);
        assert_eq!(szemeredi_partition(&wg, &rat(1, 10), &halves).unwrap(), halves);
    }
    let eps = rat(1, 4);
    let wg = WeightedGraph::uniform(random_graph(12, 3));
    let p = szemeredi_partition(&wg, &eps, &halves).unwrap();
    assert!(p.refines(&halves));
    let irr = irregular_pairs(&wg, &p, &eps).unwrap();
    for r in &irr {
        let naive = naive_witness(&wg, p.parts()[r.i], p.parts()[r.j], &eps);
        assert!(naive.is_some());
    }
    assert!(irregular_mass(&wg, &p, &irr) <= eps);
}

#[test]
fn strong_examples() {
    let wg = WeightedGraph::uniform(Graph::complete(8));
    let p0 = Partition::new(vec![VertexSet::full(4), VertexSet::full(8) - VertexSet::full(4)]).unwrap();
    let s = strong_partition(&wg, &|_| rat(1, 2), 2, &p0).unwrap();
    assert_eq!(s.rounds, 2);
    assert_eq!(s.p, p0);
    let wg = random_wg(12, 5);
    let p0 = Partition::new(vec![VertexSet::full(6), VertexSet::full(12) - VertexSet::full(6)]).unwrap();
    let e = |_: usize| rat(1, 4);
    let s = strong_partition(&wg, &e, 2, &p0).unwrap();
    assert!(s.p.refines(&p0) && s.q.refines(&s.p));
    let irr = irregular_pairs(&wg, &s.q, &rat(1, 4)).unwrap();
    assert!(irregular_mass(&wg, &s.q, &irr) <= rat(1, 4));
    assert!(s.deviation.abs <= rat(1, 4));
    // Cauchy–Schwarz: (Σ w|δ|)² ≤ Σ w δ² · Σ w ≤ Σ w δ²
    assert!(&s.deviation.abs * &s.deviation.abs <= s.deviation.sq);
    assert!(s.deviation.sq <= rat(1, 16));
    assert!(matches!(strong_partition(&wg, &e, 1, &p0), Err(Error::Input(_))));
}

#[test]
fn turan_ramsey_examples() {
    let wg = WeightedGraph::uniform(Graph::cycle(5));
    let r = turan_ramsey_sets(&wg, 1, &rat(1, 10), &rat(1, 2), 1).unwrap();
    assert_eq!(r.sets, vec![VertexSet::full(5)]);
    // blowup of a 16-vertex graph whose classes match the balanced parts
    let h = random_graph(16, 77);
    let mut sizes = vec![2; 15];
    sizes.push(3);
    let (g, _) = blowup_of(&h, &sizes);
    let wg = WeightedGraph::uniform(g);
    let delta = rat(1, 10);
    let zeta = rat(2, 33);
    let r = turan_ramsey_sets(&wg, 2, &delta, &zeta, 42).unwrap();
    assert_eq!(r.sets.len(), 2);
    assert!(r.sets.iter().all(|&s| wg.dist().set_weight(s) >= zeta));
    assert!(r.sets[0].is_disjoint(r.sets[1]));
    let rep = certify_pair(&wg, r.sets[0], r.sets[1], &delta).unwrap();
    assert!(rep.is_regular());
    assert_eq!(rep.density >= rat(1, 2), r.dense);
    let uniform32 = WeightedGraph::uniform(Graph::empty(32));
    assert!(matches!(turan_ramsey_sets(&uniform32, 2, &delta, &rat(1, 32), 0), Err(Error::Precondition(_))));
}

#[test]
fn ramsey_pairs_always_exist() {
    for seed in 0..20 {
        let g = random_graph(16, seed);
        let (s, clique) = ramsey_set(&g, 2).unwrap();
        assert_eq!(s, vec![0, 1]);
        assert_eq!(clique, g.has_edge(0, 1));
        assert!(ramsey_set(&g, 3).is_some());
    }
}

#[test]
fn representatives_examples() {
    let wg = WeightedGraph::uniform(Graph::complete(6));
    let p0 = Partition::new(vec![VertexSet::full(3), VertexSet::full(6) - VertexSet::full(3)]).unwrap();
    let r = representatives(&wg, &|_| rat(1, 2), 2, &p0, 3).unwrap();
    assert_eq!(r.parts.len(), r.reps.len());
    let r = representatives(&wg, &|_| rat(1, 1), 2, &p0, 3).unwrap();
    assert!(wg.dist().set_weight(r.exceptional) < rat(1, 1));
    let wg = random_wg(12, 8);
    let p0 = Partition::new(vec![VertexSet::full(6), VertexSet::full(12) - VertexSet::full(6)]).unwrap();
    let e = |_: usize| rat(1, 4);
    let r = representatives(&wg, &e, 2, &p0, 11).unwrap();
    assert!(wg.dist().set_weight(r.exceptional) < rat(1, 4));
    for (i, (&p, &q)) in r.parts.iter().zip(&r.reps).enumerate() {
        assert!(q.is_subset(p));
        assert!(p0.parts().iter().any(|&c| p.is_subset(c)));
        assert!(wg.dist().set_weight(q) >= r.mass_floor, "rep {i}");
    }
    for i in 0..r.reps.len() {
        for j in i + 1..r.reps.len() {
            assert!(certify_pair(&wg, r.reps[i], r.reps[j], &rat(1, 4)).unwrap().is_regular());
        }
    }
}

fn arb_case() -> impl Strategy<Value = (u64, usize, Vec<u8>, Vec<u8>)> {
    (any::<u64>(), 2usize..=12).prop_flat_map(|(seed, n)| {
        (Just(seed), Just(n), prop::collection::vec(0u8..4, n), prop::collection::vec(0u8..3, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refinement_never_lowers_index((seed, n, coarse, fine) in arb_case()) {
        let wg = random_wg(n, seed);
        let p = Partition::from_nonempty((0..4u8).map(|c| (0..n).filter(|&v| coarse[v] == c).collect())).unwrap();
        let classes: Vec<VertexSet> = (0..3u8).map(|c| (0..n).filter(|&v| fine[v] == c).collect()).collect();
        let q = Partition::from_nonempty(
            p.parts().iter().flat_map(|&part| classes.iter().map(move |&c| part & c))
        ).unwrap();
        prop_assert!(q.refines(&p));
        prop_assert!(partition_index(&wg, &q).unwrap() >= partition_index(&wg, &p).unwrap());
    }

    #[test]
    fn density_mean_and_variance_identities((seed, n, side, fine) in arb_case()) {
        let wg = random_wg(n, seed);
        let x: VertexSet = (0..n).filter(|&v| side[v] % 2 == 0).collect();
        let y = VertexSet::full(n) - x;
        prop_assume!(!x.is_empty() && !y.is_empty());
        let split = |s: VertexSet| Partition::from_nonempty((0..3u8).map(|c| s & (0..n).filter(|&v| fine[v] == c).collect())).unwrap();
        let (px, py) = (split(x), split(y));
        let d = wg.dist();
        let dxy = wg.pair_density(x, y).unwrap();
        let mut mean = Rational::from_integer(0.into());
        let mut lhs = Rational::from_integer(0.into());
        let mut dev = Rational::from_integer(0.into());
        for &a in px.parts() {
            for &b in py.parts() {
                let w = d.set_weight(a) * d.set_weight(b);
                let dab = wg.pair_density(a, b).unwrap();
                mean += &w * &dab;
                lhs += &w * &dab * &dab;
                dev += &w * (&dab - &dxy) * (&dab - &dxy);
            }
        }
        let wxy = d.set_weight(x) * d.set_weight(y);
        prop_assert_eq!(mean, &wxy * &dxy);
        prop_assert_eq!(lhs, wxy * &dxy * &dxy + dev);
    }

    #[test]
    fn low_internal_bound_holds(masses in prop::collection::vec(1u64..20, 1..16), k in 1i64..6) {
        let d = VertexDistribution::from_masses(&masses).unwrap();
        let eta = rat(1, k);
        let all = VertexSet::full(masses.len());
        let p = low_internal_partition(all, &d, &eta).unwrap();
        prop_assert!(p.len() as i64 <= k);
        prop_assert_eq!(p.ground(), all);
        prop_assert!(internal_pair_weight(&p, &d).unwrap() <= eta);
    }

    #[test]
    fn balanced_parts_are_heavy(masses in prop::collection::vec(1u64..6, 4..24), a in 1usize..4) {
        let d = VertexDistribution::from_masses(&masses).unwrap();
        let all = VertexSet::full(masses.len());
        match balanced_partition(all, &d, a) {
            Ok(p) => {
                prop_assert_eq!(p.len(), a);
                for &q in p.parts() {
                    prop_assert!(d.set_weight(q) * rat(2 * a as i64, 1) >= rat(1, 1));
                }
            }
            Err(Error::Input(_)) => prop_assert!(d.max_weight() * rat(2 * a as i64, 1) > rat(1, 1)),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

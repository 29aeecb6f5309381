//! Quick invariant batteries runnable from the command line.

use serde::{Deserialize, Serialize};

use crate::blowup::{least_suitable_n, verify_blowup_farness};
use crate::distance::{distance_auto, distance_to_property, distance_to_property_closed_form};
use crate::error::{Error, Result};
use crate::gallery::{density_pair, edge_density, gallery_by_name, identical_sample_laws};
use crate::property::Property;
use crate::rat;
use crate::regularity::{
    delta_counting, irregular_mass, irregular_pairs, partition_index, szemeredi_partition, Partition,
};
use crate::sampling::rng;
use crate::structure::psi_family;
use crate::tester::{exact_rejection_probability, run_tester, TesterConfig, Variant};
use crate::wgraph::canon::graphs_up_to;
use crate::wgraph::{Graph, VertexDistribution, VertexSet, WeightedGraph};

use rand::Rng;

pub const SUITES: [&str; 8] = ["distance", "tester", "regularity", "counting", "structure", "blowup", "gallery", "all"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

type Check = (&'static str, fn() -> Result<(bool, String)>);

/// Runs the named suite (`all` runs every suite).
pub fn verify_suite(name: &str) -> Result<SuiteReport> {
    let suites: Vec<&str> = match name {
        "all" => SUITES[..SUITES.len() - 1].to_vec(),
        s if SUITES.contains(&s) => vec![s],
        _ => return Err(Error::input(format!("unknown suite '{name}'; known: {}", SUITES.join(", ")))),
    };
    let mut checks = Vec::new();
    for s in suites {
        for (cname, f) in checks_of(s) {
            let (pass, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            checks.push(CheckResult {
                suite: s.to_string(),
                name: cname.to_string(),
                pass,
                detail,
            });
        }
    }
    Ok(SuiteReport {
        name: name.to_string(),
        checks,
    })
}

fn checks_of(suite: &str) -> Vec<Check> {
    match suite {
        "distance" => vec![
            ("closed forms agree with brute force", closed_forms_agree),
            ("triangle-free distance at most edge-free distance", triangle_below_edge_free),
        ],
        "tester" => vec![
            ("K3 rejection law is 2/9", k3_law),
            ("members accepted by every variant", members_accepted),
        ],
        "regularity" => vec![
            ("index grows under refinement", index_monotone),
            ("regular partition at eps 1/4", regular_partition),
        ],
        "counting" => vec![("delta recurrence values", delta_values)],
        "structure" => vec![("psi of {K3} at m = 1", psi_k3)],
        "blowup" => vec![("blowups are no closer", blowup_farness)],
        "gallery" => vec![
            ("AB-free pair at distance 1/25", ab_pair),
            ("density pair densities", density_values),
            ("cycle-star sample laws coincide", cycle_star_laws),
        ],
        _ => Vec::new(),
    }
}

fn random_instance(r: &mut impl Rng, n: usize) -> WeightedGraph {
    let mut g = Graph::empty(n);
    for j in 0..n {
        for i in 0..j {
            if r.gen_bool(0.5) {
                g.add_edge(i, j);
            }
        }
    }
    let masses: Vec<u64> = (0..n).map(|_| r.gen_range(1..6)).collect();
    WeightedGraph::new(g, VertexDistribution::from_masses(&masses).unwrap()).unwrap()
}

fn closed_forms_agree() -> Result<(bool, String)> {
    let mut r = rng(1, 0);
    for _ in 0..40 {
        let n = r.gen_range(1..6);
        let wg = random_instance(&mut r, n);
        for p in [Property::edge_free(), Property::complete()] {
            let cf = distance_to_property_closed_form(&wg, &p)?;
            let bf = distance_to_property(&wg, &p)?.distance;
            if cf != bf {
                return Ok((false, format!("{}: {cf} vs {bf}", p.name())));
            }
        }
    }
    Ok((true, "40 instances".into()))
}

fn triangle_below_edge_free() -> Result<(bool, String)> {
    let mut r = rng(2, 0);
    for _ in 0..40 {
        let n = r.gen_range(1..7);
        let wg = random_instance(&mut r, n);
        let t = distance_auto(&wg, &Property::triangle_free())?.distance;
        let e = distance_auto(&wg, &Property::edge_free())?.distance;
        if t > e {
            return Ok((false, format!("{t} > {e}")));
        }
    }
    Ok((true, "40 instances".into()))
}

fn k3_law() -> Result<(bool, String)> {
    let p = exact_rejection_probability(&WeightedGraph::uniform(Graph::complete(3)), &Property::triangle_free(), 3)?;
    Ok((p == rat(2, 9), format!("{p}")))
}

fn members_accepted() -> Result<(bool, String)> {
    // q = 2 keeps every weight 1/12 within the 1/(3q²) cap
    let wg = WeightedGraph::uniform(Graph::cycle(12));
    let p = Property::k_colorable(2);
    for v in Variant::ALL {
        let mut cfg = TesterConfig::new(v, 2);
        cfg.m = Some(6);
        for seed in 0..50 {
            if !run_tester(&wg, &p, &cfg, seed)?.accepted() {
                return Ok((false, format!("{v} rejected C12 at seed {seed}")));
            }
        }
    }
    Ok((true, "7 variants x 50 seeds".into()))
}

fn index_monotone() -> Result<(bool, String)> {
    let mut r = rng(3, 0);
    for _ in 0..50 {
        let n = r.gen_range(2..9);
        let wg = random_instance(&mut r, n);
        let k = r.gen_range(1..=n);
        let mut parts = vec![VertexSet::default(); k];
        for v in 0..n {
            parts[r.gen_range(0..k)].insert(v);
        }
        let p = Partition::from_nonempty(parts)?;
        let q = p.common_refinement(&Partition::singletons(VertexSet::full(n)))?;
        if partition_index(&wg, &q)? < partition_index(&wg, &p)? {
            return Ok((false, "index dropped".into()));
        }
    }
    Ok((true, "50 refinements".into()))
}

fn regular_partition() -> Result<(bool, String)> {
    let mut r = rng(4, 0);
    let wg = random_instance(&mut r, 8);
    let eps = rat(1, 4);
    let part = szemeredi_partition(&wg, &eps, &Partition::trivial(VertexSet::full(8)))?;
    let irr = irregular_pairs(&wg, &part, &eps)?;
    let m = irregular_mass(&wg, &part, &irr);
    Ok((m <= eps, format!("{} parts, irregular mass {m}", part.len())))
}

fn delta_values() -> Result<(bool, String)> {
    let a = delta_counting(2, &rat(1, 3))?;
    let b = delta_counting(3, &rat(1, 2))?;
    Ok((a == rat(1, 3) && b == rat(1, 128), format!("delta(2,1/3) = {a}, delta(3,1/2) = {b}")))
}

fn psi_k3() -> Result<(bool, String)> {
    let v = psi_family(&[Graph::complete(3)], 1)?;
    Ok((v == 3, format!("{v}")))
}

fn blowup_farness() -> Result<(bool, String)> {
    let mut count = 0;
    for g in graphs_up_to(3)? {
        if g.n() == 0 {
            continue;
        }
        for masses in 0..4u64.pow(g.n() as u32) {
            let ms: Vec<u64> = (0..g.n()).map(|i| masses / 4u64.pow(i as u32) % 4).collect();
            if ms.iter().all(|&m| m == 0) {
                continue;
            }
            let wg = WeightedGraph::new(g.clone(), VertexDistribution::from_masses(&ms)?)?;
            let n = least_suitable_n(&wg);
            if n > 7 {
                continue;
            }
            for p in [Property::edge_free(), Property::complete(), Property::triangle_free()] {
                verify_blowup_farness(&wg, &p, n)?;
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} instances")))
}

fn ab_pair() -> Result<(bool, String)> {
    let p = gallery_by_name("ab-c5")?;
    Ok((p.distance == rat(1, 25), p.distance.to_string()))
}

fn density_values() -> Result<(bool, String)> {
    let p = density_pair(8)?;
    let a = edge_density(p.first.graph());
    let b = edge_density(p.second.graph());
    Ok((a == rat(3, 16) && b == rat(15, 32) && p.certified(), format!("{a} vs {b}")))
}

fn cycle_star_laws() -> Result<(bool, String)> {
    for m in 3..=6 {
        let p = gallery_by_name(&format!("cycle-star:{m}"))?;
        if !identical_sample_laws(&p.first, &p.second)? {
            return Ok((false, format!("M = {m}")));
        }
    }
    Ok((true, "M = 3..6".into()))
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vdflab::blowup::{avoiding_blowup, dn_blowup, least_suitable_n, verify_farness_of, InternalPolicy};
use vdflab::distance::distance_auto;
use vdflab::gallery::{gallery_by_name, tv_distance_estimate, GALLERY_NAMES};
use vdflab::harness::{
    certified_distance, persist, sweep, verify_suite, ExperimentConfig, ExperimentReport, InputSpec, SUITES,
};
use vdflab::property::Property;
use vdflab::regularity::{irregular_mass, irregular_pairs, partition_index, szemeredi_partition, Partition};
use vdflab::tester::{TesterConfig, TrivialBranch, Variant};
use vdflab::wgraph::io::read_wgraph;
use vdflab::wgraph::parse_rational;
use vdflab::{Graph, VertexSet, WeightedGraph};

#[derive(Parser)]
#[command(name = "vdflab", version, about = "Property testing of graphs under vertex distributions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Default)]
struct Output {
    /// Write results as JSON to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Write results as CSV to this file.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact distance of a weighted graph from a property.
    Dist {
        /// A .wgraph file or a graph name such as C5 (uniform weights).
        wgraph: String,
        #[arg(long)]
        property: String,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo rejection rate of a tester.
    Test {
        wgraph: String,
        #[arg(long)]
        property: String,
        #[arg(long, default_value = "vdf")]
        variant: String,
        /// Sample size (for nhw: the parameter q).
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size threshold M for the large-inputs, size-aware and trivial testers.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[arg(long, default_value = "1")]
        delta: String,
        /// Branch of the trivial-property tester.
        #[arg(long, value_enum)]
        branch: Option<Branch>,
        #[command(flatten)]
        out: Output,
    },
    /// Runs a sample-size sweep from a TOML config.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Computes a certified eps-regular partition.
    Regularity {
        wgraph: String,
        #[arg(long, default_value = "1/4")]
        eps: String,
        #[command(flatten)]
        out: Output,
    },
    /// Builds a (D, N)-blowup.
    Blowup {
        wgraph: String,
        /// Total vertex count; defaults to the least suitable value.
        #[arg(long = "N")]
        n_total: Option<usize>,
        #[arg(long, value_enum, default_value_t = Policy::Empty)]
        policy: Policy,
        /// Checks that the blowup is at least as far as the base instance.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "triangle-free")]
        property: String,
        /// Writes the blowup in text form.
        #[arg(long, value_name = "FILE")]
        write: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Shows a gallery pair, optionally writing it and estimating sample TV distance.
    Gallery {
        /// One of ab-c5, connected-p2, hamiltonian-c4, cycle-star:<M>, density:<n>.
        name: String,
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
        /// Estimate the TV distance of q-vertex samples.
        #[arg(long)]
        tv_q: Option<usize>,
        #[arg(long, default_value_t = 10000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Runs an invariant suite.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    LargeInputs,
    Nlw,
    SizeAware,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Policy {
    Empty,
    Clique,
    /// Fills blocks so that no forbidden graph uses two vertices of one block.
    Avoiding,
}

/// A human table plus the JSON value written by `--json`.
struct Rendered {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(arg: &str) -> Result<WeightedGraph> {
    let path = Path::new(arg);
    if path.exists() {
        return read_wgraph(path).with_context(|| format!("reading {arg}"));
    }
    match Graph::from_name(arg) {
        Some(g) => Ok(WeightedGraph::uniform(g)),
        None => bail!("'{arg}' is neither a file nor a graph name"),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Dist { wgraph, property, out } => {
            let wg = load_graph(&wgraph)?;
            let p = Property::from_id(&property)?;
            let r = distance_auto(&wg, &p)?;
            let method = certified_distance(&wg, &p).map_or_else(|| "brute-force".to_string(), |(_, m)| m);
            let witness: Vec<String> = r.witness.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            emit(
                Rendered {
                    headers: vec!["input", "property", "distance", "method", "witness edges"],
                    rows: vec![vec![
                        wgraph.clone(),
                        p.name().to_string(),
                        r.distance.to_string(),
                        method.clone(),
                        witness.join(" "),
                    ]],
                    json: json!({
                        "input": wgraph, "property": p.name(), "distance": r.distance.to_string(),
                        "method": method, "witness_edges": witness,
                    }),
                },
                &out,
            )?;
            Ok(true)
        }
        Cmd::Test {
            wgraph,
            property,
            variant,
            s,
            trials,
            seed,
            m,
            eps,
            delta,
            branch,
            out,
        } => {
            let mut tester = TesterConfig::new(Variant::from_id(&variant)?, s);
            tester.m = m;
            tester.eps = eps;
            tester.delta = delta;
            tester.branch = branch.map(|b| match b {
                Branch::LargeInputs => TrivialBranch::LargeInputs,
                Branch::Nlw => TrivialBranch::Nlw,
                Branch::SizeAware => TrivialBranch::SizeAware,
            });
            let input = if Path::new(&wgraph).exists() {
                InputSpec {
                    file: Some(PathBuf::from(&wgraph)),
                    ..Default::default()
                }
            } else {
                InputSpec {
                    graph: Some(wgraph.clone()),
                    ..Default::default()
                }
            };
            let cfg = ExperimentConfig {
                name: None,
                input,
                property,
                tester,
                trials,
                seed,
                sweep: None,
                output: None,
            };
            cfg.validate()?;
            let start = Instant::now();
            let report = vdflab::harness::run_experiment(&cfg)?;
            let elapsed = start.elapsed();
            print_reports(std::slice::from_ref(&report));
            println!("runtime: {:.3}s", elapsed.as_secs_f64());
            persist_reports(std::slice::from_ref(&report), &out)?;
            Ok(true)
        }
        Cmd::Sweep { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let start = Instant::now();
            let r = sweep(&cfg)?;
            print_reports(&r.reports);
            match r.minimal_sample_size {
                Some(s) => println!("smallest sample size with lower bound >= {}: {s}", r.target),
                None => println!("no swept sample size reached lower bound {}", r.target),
            }
            println!("runtime: {:.3}s", start.elapsed().as_secs_f64());
            persist_reports(&r.reports, &out)?;
            Ok(true)
        }
        Cmd::Regularity { wgraph, eps, out } => {
            let wg = load_graph(&wgraph)?;
            let eps = parse_rational(&eps)?;
            let part = szemeredi_partition(&wg, &eps, &Partition::trivial(VertexSet::full(wg.n())))?;
            let irr = irregular_pairs(&wg, &part, &eps)?;
            let mass = irregular_mass(&wg, &part, &irr);
            let index = partition_index(&wg, &part)?;
            let mut rows = Vec::new();
            for (i, set) in part.parts().iter().enumerate() {
                let members: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                rows.push(vec![i.to_string(), members.join(" "), wg.set_weight(*set)?.to_string()]);
            }
            println!("eps {eps}: {} parts, index {index}, irregular mass {mass}", part.len());
            let irregular: Vec<[usize; 2]> = irr.iter().map(|r| [r.i, r.j]).collect();
            emit(
                Rendered {
                    headers: vec!["part", "vertices", "weight"],
                    rows,
                    json: json!({
                        "eps": eps.to_string(), "parts": part.to_vecs(), "index": index.to_string(),
                        "irregular_pairs": irregular, "irregular_mass": mass.to_string(),
                    }),
                },
                &out,
            )?;
            Ok(mass <= eps)
        }
        Cmd::Blowup {
            wgraph,
            n_total,
            policy,
            verify,
            property,
            write,
            out,
        } => {
            let wg = load_graph(&wgraph)?;
            let n = n_total.unwrap_or_else(|| least_suitable_n(&wg));
            let p = Property::from_id(&property)?;
            let b = match policy {
                Policy::Empty => dn_blowup(&wg, n, InternalPolicy::Empty)?,
                Policy::Clique => dn_blowup(&wg, n, InternalPolicy::Clique)?,
                Policy::Avoiding => avoiding_blowup(&wg, &p, n)?,
            };
            if let Some(path) = &write {
                std::fs::write(path, b.to_text()).with_context(|| format!("writing {}", path.display()))?;
            }
            let rows: Vec<Vec<String>> = b
                .sets()
                .into_iter()
                .enumerate()
                .map(|(i, r)| vec![i.to_string(), format!("{}..{}", r.start, r.end), r.len().to_string()])
                .collect();
            let mut j = json!({
                "N": n, "sizes": b.sizes(), "edges": b.result().edge_count(),
            });
            println!("N = {n}, {} edges", b.result().edge_count());
            let mut ok = true;
            if verify {
                match verify_farness_of(&b, &p) {
                    Ok((base, blown)) => {
                        println!("{}: base distance {base}, blowup distance {blown}", p.name());
                        j["base_distance"] = json!(base.to_string());
                        j["blowup_distance"] = json!(blown.to_string());
                    }
                    Err(vdflab::Error::Counterexample(msg)) => {
                        println!("verification failed: {msg}");
                        j["counterexample"] = json!(msg);
                        ok = false;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            emit(
                Rendered {
                    headers: vec!["block", "vertices", "size"],
                    rows,
                    json: j,
                },
                &out,
            )?;
            Ok(ok)
        }
        Cmd::Gallery {
            name,
            out_dir,
            tv_q,
            trials,
            seed,
            out,
        } => {
            let pair = gallery_by_name(&name)
                .with_context(|| format!("known gallery names: {}", GALLERY_NAMES.join(", ")))?;
            let cert = pair.certificate();
            let target = pair.target.as_ref().map_or_else(|| "-".to_string(), |t| t.to_string());
            let mut j = json!({
                "name": pair.name, "property": cert.property, "first_member": pair.first_member,
                "distance": cert.distance, "target": target, "method": cert.method,
                "certified": pair.certified(),
            });
            let mut rows = vec![vec![
                pair.name.clone(),
                cert.property.clone(),
                pair.first_member.to_string(),
                cert.distance.clone(),
                target,
                pair.certified().to_string(),
            ]];
            if let Some(q) = tv_q {
                let tv = tv_distance_estimate(&pair.first, &pair.second, q, trials, seed)?;
                println!(
                    "TV estimate over {q}-vertex samples: {:.4} (95% bootstrap {:.4}..{:.4}, {} classes)",
                    tv.estimate, tv.ci.0, tv.ci.1, tv.classes
                );
                j["tv"] = json!({"q": q, "trials": trials, "estimate": tv.estimate, "ci": [tv.ci.0, tv.ci.1]});
                rows[0].push(format!("{:.4}", tv.estimate));
            }
            if let Some(dir) = &out_dir {
                pair.write(dir)?;
                println!("wrote {} files to {}", pair.name, dir.display());
            }
            let mut headers = vec!["pair", "property", "first in P", "distance", "target", "certified"];
            if tv_q.is_some() {
                headers.push("TV");
            }
            emit(Rendered { headers, rows, json: j }, &out)?;
            Ok(true)
        }
        Cmd::Verify { suite, out } => {
            let r = verify_suite(&suite).with_context(|| format!("suites: {}", SUITES.join(", ")))?;
            let rows = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.clone(),
                        c.name.clone(),
                        if c.pass { "PASS" } else { "FAIL" }.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            emit(
                Rendered {
                    headers: vec!["suite", "check", "result", "detail"],
                    rows,
                    json: serde_json::to_value(&r)?,
                },
                &out,
            )?;
            Ok(r.passed())
        }
    }
}

fn print_table(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(headers.to_vec());
    line(widths.iter().map(|w| &"----------------------------------------------------------------"[..(*w).min(64)]).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
}

fn emit(r: Rendered, out: &Output) -> Result<()> {
    print_table(&r.headers, &r.rows);
    if let Some(path) = &out.json {
        std::fs::write(path, serde_json::to_string_pretty(&r.json)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &out.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(&r.headers)?;
        for row in &r.rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn print_reports(reports: &[ExperimentReport]) {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.input.clone(),
                r.property.clone(),
                r.variant.clone(),
                r.sample_size.to_string(),
                r.trials.to_string(),
                r.rejects.to_string(),
                format!("{:.4}", r.reject_estimate),
                format!("[{:.4}, {:.4}]", r.ci_low, r.ci_high),
                r.distance.clone().unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    print_table(
        &["input", "property", "variant", "s", "trials", "rejects", "rate", "95% CI", "distance"],
        &rows,
    );
}

fn persist_reports(reports: &[ExperimentReport], out: &Output) -> Result<()> {
    if let Some(p) = &out.json {
        if p.extension().and_then(|e| e.to_str()) == Some("csv") {
            bail!("--json path ends in .csv");
        }
        persist(reports, p)?;
    }
    if let Some(p) = &out.csv {
        std::fs::write(p, vdflab::harness::reports_to_csv(reports)?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

//! TOML experiment configs.
//!
//! ```toml
//! name = "k3-law"
//! property = "triangle-free"
//! trials = 100000
//! seed = 7
//! output = "k3.json"          # optional; .json or .csv
//!
//! [input]
//! graph = "K3"                # or: file = "g.wgraph", or: gallery = "density:120"
//! weights = ["1/3", "1/3", "1/3"]
//! side = "second"             # gallery pairs only: first | second
//!
//! [tester]
//! variant = "vdf"
//! sample_size = 3
//!
//! [sweep]
//! sizes = [1, 2, 4, 8]        # or: from = 1, to = 16
//! target = "2/3"
//! stop_at_first = true
//! ```
//!
//! Relative paths are resolved against the config file's directory. The
//! environment variable `VDFLAB_SEED` overrides `seed` when loading from a file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gallery::gallery_by_name;
use crate::property::Property;
use crate::tester::TesterConfig;
use crate::wgraph::io::read_wgraph;
use crate::wgraph::{parse_rational, Graph, Rational, VertexDistribution, WeightedGraph};

pub const SEED_ENV: &str = "VDFLAB_SEED";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub input: InputSpec,
    pub property: String,
    pub tester: TesterConfig,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default)]
    pub file: Option<PathBuf>,
    /// A graph name such as `C5`, `K3`, `P4`, `E2`.
    #[serde(default)]
    pub graph: Option<String>,
    /// Weights for `graph`, as `p/q`; uniform when absent.
    #[serde(default)]
    pub weights: Option<Vec<String>>,
    /// A gallery pair name; see [`crate::gallery::gallery_by_name`].
    #[serde(default)]
    pub gallery: Option<String>,
    #[serde(default)]
    pub side: Option<String>,
}

impl InputSpec {
    pub fn describe(&self) -> String {
        if let Some(f) = &self.file {
            return f.display().to_string();
        }
        if let Some(g) = &self.gallery {
            return format!("gallery:{g}:{}", self.side.as_deref().unwrap_or("second"));
        }
        match (&self.graph, &self.weights) {
            (Some(g), Some(w)) => format!("{g}[{}]", w.join(" ")),
            (Some(g), None) => g.clone(),
            _ => "?".into(),
        }
    }

    pub fn load(&self) -> Result<WeightedGraph> {
        let given = [self.file.is_some(), self.graph.is_some(), self.gallery.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(Error::input("input needs exactly one of file, graph, gallery"));
        }
        if let Some(f) = &self.file {
            if !f.exists() {
                return Err(Error::input(format!("input file {} does not exist", f.display())));
            }
            return read_wgraph(f);
        }
        if let Some(name) = &self.gallery {
            let pair = gallery_by_name(name)?;
            return match self.side.as_deref().unwrap_or("second") {
                "first" => Ok(pair.first),
                "second" => Ok(pair.second),
                s => Err(Error::input(format!("side must be first or second, not '{s}'"))),
            };
        }
        let name = self.graph.as_ref().unwrap();
        let g = Graph::from_name(name).ok_or_else(|| Error::input(format!("unknown graph name '{name}'")))?;
        match &self.weights {
            None => Ok(WeightedGraph::uniform(g)),
            Some(ws) => {
                let ws = ws.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>()?;
                WeightedGraph::new(g, VertexDistribution::new(ws)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub from: Option<usize>,
    #[serde(default)]
    pub to: Option<usize>,
    #[serde(default = "default_target")]
    pub target: String,
    #[serde(default)]
    pub stop_at_first: bool,
}

fn default_target() -> String {
    "2/3".into()
}

impl SweepSpec {
    pub fn sizes(&self) -> Result<Vec<usize>> {
        let v = match (&self.sizes, self.from, self.to) {
            (Some(v), None, None) => v.clone(),
            (None, Some(a), Some(b)) if a <= b => (a..=b).collect(),
            _ => return Err(Error::input("sweep needs either sizes or from <= to")),
        };
        if v.is_empty() || v.contains(&0) {
            return Err(Error::input("sweep sizes must be positive"));
        }
        Ok(v)
    }

    pub fn target_value(&self) -> Result<f64> {
        use num_traits::ToPrimitive;
        let t: Rational = parse_rational(&self.target)?;
        Ok(t.to_f64().unwrap())
    }
}

impl ExperimentConfig {
    /// Parses and validates a config; relative paths are taken against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |s| text[..s.start].lines().count().max(1)),
            msg: e.message().to_string(),
        })?;
        if let Some(f) = &cfg.input.file {
            if f.is_relative() {
                cfg.input.file = Some(base.join(f));
            }
        }
        if let Some(o) = &cfg.output {
            if o.is_relative() {
                cfg.output = Some(base.join(o));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file and applies the `VDFLAB_SEED` override.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text, path.parent().unwrap_or(Path::new(".")))?;
        if let Ok(s) = std::env::var(SEED_ENV) {
            cfg.seed = s
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("{SEED_ENV} must be an unsigned integer")))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        if self.tester.sample_size == 0 {
            return Err(Error::input("sample_size must be at least 1"));
        }
        Property::from_id(&self.property)?;
        if let Some(f) = &self.input.file {
            if !f.exists() {
                return Err(Error::input(format!("input file {} does not exist", f.display())));
            }
        }
        if let Some(s) = &self.sweep {
            s.sizes()?;
            s.target_value()?;
        }
        Ok(())
    }

    pub fn load_input(&self) -> Result<WeightedGraph> {
        self.input.load()
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }
}

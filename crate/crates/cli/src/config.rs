use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, ValueEnum};
use gwl::ged::EditCostModel;
use gwl::kernels::KernelKind;
use gwl::refinement::{ClusteringParams, UpdateSpec};

use crate::error::CliError;

/// Refinement iterations for `gram` and `features` when `--h` is not given.
pub const DEFAULT_H: usize = 5;
/// Clusters per split color for the k-means update when `--k` is not given.
pub const DEFAULT_K: usize = 2;
/// Neighbors used by `knn` when neither `--knn-k` nor `--k` is given.
pub const DEFAULT_KNN_K: usize = 1;
/// Preset used by `gen` when `--preset` is not given.
pub const DEFAULT_PRESET: &str = "S_1.0_0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Refine a dataset and export the color hierarchy.
    Refine,
    /// Pairwise kernel matrix.
    Gram,
    /// Sparse per-graph feature vectors.
    Features,
    /// Pairwise edit distance upper bounds.
    Ged,
    /// k-nearest-neighbor accuracy from a distance matrix.
    Knn,
    /// Synthetic block-graph dataset.
    Gen,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Refine => "refine",
            Command::Gram => "gram",
            Command::Features => "features",
            Command::Ged => "ged",
            Command::Knn => "knn",
            Command::Gen => "gen",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UpdateKind {
    /// Classical refinement: every signature gets its own color.
    Wl,
    /// Split each color into at most k clusters of signatures.
    Kmeans,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Subtree,
    Oa,
}

#[derive(Debug, Parser)]
#[command(name = "gwl", version, about = "Gradual Weisfeiler-Leman graph toolkit")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

/// Every flag is optional; unset flags fall back to the `--config` file and
/// then to the listed default.
#[derive(Debug, Default, Clone, Args)]
pub struct Opts {
    /// Flat `key = value` file supplying any of the long flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// TUDataset directory containing `<NAME>_A.txt` and friends.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Update function [default: wl].
    #[arg(long, value_enum)]
    pub update: Option<UpdateKind>,
    /// Clusters per color for `--update kmeans`; neighbors for `knn` when
    /// `--knn-k` is absent [default: 2].
    #[arg(long)]
    pub k: Option<usize>,
    /// Refinement iterations [default: 5 for gram and features, fixpoint for
    /// refine and ged].
    #[arg(long)]
    pub h: Option<usize>,
    /// Kernel for `gram` [default: subtree].
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    /// Normalize the gram matrix to unit diagonal [default: off].
    #[arg(long)]
    pub normalize: bool,
    /// Edit costs as `key = value` lines, keys vertex_insert, vertex_delete,
    /// vertex_relabel, edge_insert, edge_delete, edge_relabel [default: all 1].
    #[arg(long)]
    pub costs: Option<PathBuf>,
    /// Output directory, created if missing. Optional for `knn`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Random seed for k-means++ seeding and dataset generation [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads, 0 for all cores [default: 0]. Does not affect output.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Generator preset for `gen`, `S_<p>_<m>` or `L1` to `L4` [default: S_1.0_0].
    #[arg(long)]
    pub preset: Option<String>,
    /// Neighbors for `knn` [default: 1].
    #[arg(long)]
    pub knn_k: Option<usize>,
    /// Distance matrix CSV for `knn`.
    #[arg(long)]
    pub distances: Option<PathBuf>,
    /// Class label file for `knn`, one label per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Overrides the preset's graphs per class for `gen`.
    #[arg(long)]
    pub graphs_per_class: Option<usize>,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub dataset_path: Option<PathBuf>,
    pub update: UpdateKind,
    pub k: usize,
    pub h: Option<usize>,
    pub kernel: KernelKind,
    pub normalize: bool,
    pub costs: EditCostModel<f64>,
    pub output_path: Option<PathBuf>,
    pub rng_seed: u64,
    pub threads: usize,
    pub preset: String,
    pub knn_k: usize,
    pub distances: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub graphs_per_class: Option<usize>,
}

const KEYS: &[&str] = &[
    "dataset",
    "update",
    "k",
    "h",
    "kernel",
    "normalize",
    "costs",
    "out",
    "seed",
    "threads",
    "preset",
    "knn_k",
    "distances",
    "labels",
    "graphs_per_class",
];

/// Parses `key = value` lines; `#` starts a comment, dashes in keys are
/// read as underscores.
pub fn parse_key_values(text: &str, source: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Input(format!("{}:{}: expected key = value", source.display(), i + 1))
        })?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_owned());
    }
    Ok(out)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_costs(path: &Path) -> Result<EditCostModel<f64>, CliError> {
    let mut costs = EditCostModel::<f64>::default();
    for (key, value) in parse_key_values(&read_text(path)?, path)? {
        let slot = costs
            .field_mut(&key)
            .ok_or_else(|| CliError::Input(format!("{}: unknown cost {key:?}", path.display())))?;
        *slot = value.parse().map_err(|_| {
            CliError::Input(format!("{}: cost {key} = {value:?} is not a number", path.display()))
        })?;
    }
    costs
        .validate()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(costs)
}

struct Layer<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layer<'_> {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config: bad value {v:?} for {key}")))
            })
            .transpose()
    }

    fn get_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| {
                T::from_str(v, true)
                    .map_err(|_| CliError::Usage(format!("config: bad value {v:?} for {key}")))
            })
            .transpose()
    }
}

impl RunConfig {
    /// Merges flags over the config file over defaults and checks the
    /// fields the command needs.
    pub fn resolve(command: Command, opts: Opts) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(p) => parse_key_values(&read_text(p)?, p)?,
            None => BTreeMap::new(),
        };
        if let Some(key) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Usage(format!("config: unknown key {key:?}")));
        }
        let l = Layer { file: &file };

        let normalize = opts.normalize || l.get::<bool>(None, "normalize")?.unwrap_or(false);
        let update = l.get_enum(opts.update, "update")?.unwrap_or(UpdateKind::Wl);
        let k_flag = l.get(opts.k, "k")?;
        let kernel = match l.get_enum(opts.kernel, "kernel")?.unwrap_or(KernelArg::Subtree) {
            KernelArg::Subtree => KernelKind::Subtree,
            KernelArg::Oa => KernelKind::OptimalAssignment,
        };
        let costs = match l.get(opts.costs, "costs")? {
            Some(p) => load_costs(&p)?,
            None => EditCostModel::default(),
        };
        let knn_k = match command {
            Command::Knn => l.get(opts.knn_k, "knn_k")?.or(k_flag).unwrap_or(DEFAULT_KNN_K),
            _ => l.get(opts.knn_k, "knn_k")?.unwrap_or(DEFAULT_KNN_K),
        };
        let h = l.get(opts.h, "h")?.or(match command {
            Command::Gram | Command::Features => Some(DEFAULT_H),
            _ => None,
        });

        let cfg = RunConfig {
            command,
            dataset_path: l.get(opts.dataset, "dataset")?,
            update,
            k: k_flag.unwrap_or(DEFAULT_K),
            h,
            kernel,
            normalize,
            costs,
            output_path: l.get(opts.out, "out")?,
            rng_seed: l.get(opts.seed, "seed")?.unwrap_or(0),
            threads: l.get(opts.threads, "threads")?.unwrap_or(0),
            preset: l.get(opts.preset, "preset")?.unwrap_or_else(|| DEFAULT_PRESET.to_owned()),
            knn_k,
            distances: l.get(opts.distances, "distances")?,
            labels: l.get(opts.labels, "labels")?,
            graphs_per_class: l.get(opts.graphs_per_class, "graphs_per_class")?,
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        let need = |present: bool, what: &str| {
            if present {
                Ok(())
            } else {
                Err(CliError::Usage(format!("{} requires {what}", self.command.name())))
            }
        };
        if self.update == UpdateKind::Kmeans && self.k < 2 {
            return Err(CliError::Usage("--k must be at least 2 for the kmeans update".into()));
        }
        match self.command {
            Command::Refine | Command::Gram | Command::Features | Command::Ged => {
                need(self.dataset_path.is_some(), "--dataset")?;
                need(self.output_path.is_some(), "--out")
            }
            Command::Knn => need(
                self.dataset_path.is_some() || self.distances.is_some() && self.labels.is_some(),
                "--dataset or both --distances and --labels",
            ),
            Command::Gen => {
                if self.graphs_per_class == Some(0) {
                    return Err(CliError::Usage("--graphs-per-class must be positive".into()));
                }
                need(self.output_path.is_some(), "--out")
            }
        }
    }

    pub fn update_spec(&self) -> UpdateSpec {
        match self.update {
            UpdateKind::Wl => UpdateSpec::Wl,
            UpdateKind::Kmeans => {
                UpdateSpec::KMeans(ClusteringParams::new(self.k).with_seed(self.rng_seed))
            }
        }
    }

    /// Settings echoed into artifact headers. Thread count and output path
    /// are left out so that reruns elsewhere produce identical bytes.
    pub fn provenance(&self) -> Vec<String> {
        let mut lines = vec![
            format!("gwl {}", env!("CARGO_PKG_VERSION")),
            format!("command = {}", self.command.name()),
        ];
        let mut push = |k: &str, v: String| lines.push(format!("{k} = {v}"));
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let update = || match self.update {
            UpdateKind::Wl => "wl".to_owned(),
            UpdateKind::Kmeans => format!("kmeans k={}", self.k),
        };
        let h = || self.h.map_or("fixpoint".to_owned(), |h| h.to_string());
        match self.command {
            Command::Refine | Command::Gram | Command::Features | Command::Ged => {
                push("dataset", path(&self.dataset_path).unwrap_or_default());
                push("update", update());
                push("h", h());
                push("seed", self.rng_seed.to_string());
                if self.command == Command::Gram {
                    push("kernel", self.kernel.name().to_owned());
                    push("normalize", self.normalize.to_string());
                }
                if self.command == Command::Ged {
                    for (k, v) in self.costs.fields() {
                        push(k, format!("{v:?}"));
                    }
                }
            }
            Command::Knn => {
                push("knn_k", self.knn_k.to_string());
                match (&self.dataset_path, &self.distances) {
                    (_, Some(d)) => {
                        push("distances", d.display().to_string());
                        push("labels", path(&self.labels).unwrap_or_default());
                    }
                    (Some(d), None) => {
                        push("dataset", d.display().to_string());
                        push("update", update());
                        push("h", h());
                        push("seed", self.rng_seed.to_string());
                    }
                    (None, None) => {}
                }
            }
            Command::Gen => {
                push("preset", self.preset.clone());
                push("seed", self.rng_seed.to_string());
                if let Some(n) = self.graphs_per_class {
                    push("graphs_per_class", n.to_string());
                }
            }
        }
        lines
    }
}

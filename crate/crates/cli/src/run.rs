use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use gwl::datagen::{generate_dataset, preset, DatagenError};
use gwl::export::{read_labels, read_matrix_csv, write_comments, write_features, write_labels, MatrixCsvWriter};
use gwl::ged::{gwlt_distance_matrix, gwlt_hierarchy, knn_classify, stream_distance_matrix, EvalSplit, GedError};
use gwl::kernels::{dataset_features, gram, KernelError};
use gwl::refinement::{refine_to_depth, refine_to_fixpoint};
use gwl::tudataset::{load_tudataset, write_tudataset, TuError};
use gwl::Dataset;

use crate::config::{Command, RunConfig};
use crate::error::CliError;

/// Largest dataset for which a dense matrix is held in memory.
pub const MAX_DENSE_GRAPHS: usize = 20_000;
/// Rows computed per block when streaming distances to disk.
const DISTANCE_BLOCK_ROWS: usize = 64;

impl From<TuError> for CliError {
    fn from(e: TuError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DatagenError> for CliError {
    fn from(e: DatagenError) -> Self {
        match e {
            DatagenError::SeedBudgetExhausted(_) => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GedError> for CliError {
    fn from(e: GedError) -> Self {
        match e {
            GedError::InvalidK { .. } | GedError::NegativeCost(_) => CliError::Usage(e.to_string()),
            GedError::Io(_) | GedError::TooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Runs one command on a thread pool of the configured size.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Resource(format!("thread pool: {e}")))?;
    pool.install(|| execute(cfg))
}

fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    match cfg.command {
        Command::Refine => refine(cfg),
        Command::Gram => gram_cmd(cfg),
        Command::Features => features(cfg),
        Command::Ged => ged(cfg),
        Command::Knn => knn(cfg),
        Command::Gen => gen(cfg),
    }
}

/// Loads the TUDataset found in `dir`, named after its graph indicator file.
pub fn load_dataset(dir: &Path) -> Result<Dataset, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut names: Vec<String> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            e.file_name()
                .to_str()
                .and_then(|s| s.strip_suffix("_graph_indicator.txt"))
                .map(str::to_owned)
        })
        .collect();
    names.sort();
    match names.as_slice() {
        [name] => Ok(load_tudataset(dir, name)?),
        [] => Err(CliError::Input(format!("{}: no *_graph_indicator.txt found", dir.display()))),
        _ => Err(CliError::Input(format!("{}: several datasets: {}", dir.display(), names.join(", ")))),
    }
}

fn out_dir(cfg: &RunConfig) -> Result<&Path, CliError> {
    let dir = cfg.output_path.as_deref().expect("checked by RunConfig");
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir)
}

fn write_file(
    path: PathBuf,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let result = File::create(&path).and_then(|f| {
        let mut w = BufWriter::new(f);
        body(&mut w)?;
        w.flush()
    });
    result.map_err(|source| CliError::Write { path, source })
}

fn dataset(cfg: &RunConfig) -> Result<Dataset, CliError> {
    load_dataset(cfg.dataset_path.as_deref().expect("checked by RunConfig"))
}

fn guard_dense(n: usize) -> Result<(), CliError> {
    if n > MAX_DENSE_GRAPHS {
        return Err(CliError::Resource(format!(
            "{n} graphs exceed the dense matrix limit of {MAX_DENSE_GRAPHS}; use `ged`, which streams"
        )));
    }
    Ok(())
}

fn refine(cfg: &RunConfig) -> Result<(), CliError> {
    let ds = dataset(cfg)?;
    let union = ds.disjoint_union().map_err(|e| CliError::Input(e.to_string()))?;
    let mut update = cfg.update_spec().build();
    let labels = union.graph.vertex_labels();
    let r = match cfg.h {
        Some(h) => refine_to_depth(&union.graph, labels, &mut update, h),
        None => refine_to_fixpoint(&union.graph, labels, &mut update),
    };
    let dir = out_dir(cfg)?;
    let comments = cfg.provenance();

    let doc = serde_json::json!({
        "provenance": comments,
        "stable_at": r.stable_at,
        "hierarchy": r.hierarchy.export(false),
    });
    write_file(dir.join("hierarchy.json"), |w| {
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    })?;
    write_file(dir.join("color_counts.txt"), |w| {
        write_comments(w, &comments)?;
        writeln!(w, "iteration colors")?;
        for (i, c) in r.color_counts().iter().enumerate() {
            writeln!(w, "{i} {c}")?;
        }
        Ok(())
    })
}

fn ids(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn gram_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let ds = dataset(cfg)?;
    guard_dense(ds.len())?;
    let h = cfg.h.expect("defaulted for gram");
    let k = gram::<f64>(&ds, cfg.kernel, &cfg.update_spec(), h, cfg.normalize)?;
    let dir = out_dir(cfg)?;
    let comments = cfg.provenance();
    write_file(dir.join("gram.csv"), |w| {
        let mut m = MatrixCsvWriter::new(w, &comments, &ids(ds.len()))?;
        for i in 0..k.size() {
            m.write_row(k.row(i))?;
        }
        m.finish().map(drop)
    })?;
    write_file(dir.join("labels.txt"), |w| write_labels(w, &comments, ds.class_labels()))
}

fn features(cfg: &RunConfig) -> Result<(), CliError> {
    let ds = dataset(cfg)?;
    let h = cfg.h.expect("defaulted for features");
    let (_, _, f) = dataset_features(&ds, &cfg.update_spec(), h)?;
    let dir = out_dir(cfg)?;
    let comments = cfg.provenance();
    write_file(dir.join("features.svm"), |w| write_features(w, &comments, &f, ds.class_labels()))
}

fn ged(cfg: &RunConfig) -> Result<(), CliError> {
    let ds = dataset(cfg)?;
    let (union, hierarchy) = gwlt_hierarchy(ds.graphs(), &cfg.update_spec(), cfg.h);
    let dir = out_dir(cfg)?;
    let comments = cfg.provenance();
    let path = dir.join("distances.csv");
    let file = File::create(&path).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    let wrap = |source| CliError::Write {
        path: path.clone(),
        source,
    };
    let mut m = MatrixCsvWriter::new(BufWriter::new(file), &comments, &ids(ds.len())).map_err(wrap)?;
    stream_distance_matrix(ds.graphs(), &union, &hierarchy, &cfg.costs, &mut m, DISTANCE_BLOCK_ROWS)?;
    m.finish().map_err(wrap)?;
    write_file(dir.join("labels.txt"), |w| write_labels(w, &comments, ds.class_labels()))
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn knn(cfg: &RunConfig) -> Result<(), CliError> {
    let (labels, distances, source) = match (&cfg.distances, &cfg.labels) {
        (Some(d), Some(l)) => {
            let m = read_matrix_csv(open(d)?).map_err(|e| CliError::Input(format!("{}: {e}", d.display())))?;
            let labels = read_labels(open(l)?).map_err(|e| CliError::Input(format!("{}: {e}", l.display())))?;
            (labels, m.rows, d.display().to_string())
        }
        _ => {
            let ds = dataset(cfg)?;
            guard_dense(ds.len())?;
            let (union, hierarchy) = gwlt_hierarchy(ds.graphs(), &cfg.update_spec(), cfg.h);
            let d = gwlt_distance_matrix(ds.graphs(), &union, &hierarchy, &cfg.costs)?;
            (ds.class_labels().to_vec(), d, format!("gwlt {}", ds.name))
        }
    };
    let report = knn_classify(&labels, &distances, cfg.knn_k, &EvalSplit::LeaveOneOut)?;
    let mut text = Vec::new();
    write_comments(&mut text, &cfg.provenance()).expect("write to memory");
    text.extend_from_slice(report.render(&source).as_bytes());
    std::io::stdout()
        .write_all(&text)
        .map_err(|e| CliError::Resource(format!("stdout: {e}")))?;
    if cfg.output_path.is_some() {
        let dir = out_dir(cfg)?;
        write_file(dir.join("knn_report.txt"), |w| w.write_all(&text))?;
    }
    Ok(())
}

fn gen(cfg: &RunConfig) -> Result<(), CliError> {
    let mut params = preset(&cfg.preset)?;
    params.rng_seed = cfg.rng_seed;
    if let Some(n) = cfg.graphs_per_class {
        params.graphs_per_class = n;
    }
    let ds = generate_dataset(&params)?;
    let dir = out_dir(cfg)?;
    write_tudataset(&ds, dir).map_err(|e| CliError::Resource(e.to_string()))?;
    let mut comments = cfg.provenance();
    comments.push(format!(
        "b = {}, r = {}, p = {:?}, m = {}, graphs_per_class = {}",
        params.b, params.r, params.p, params.m, params.graphs_per_class
    ));
    write_file(dir.join("PROVENANCE.txt"), |w| write_comments(w, &comments))
}

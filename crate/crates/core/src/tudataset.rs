//! Reader and writer for the TUDataset plain-text benchmark format.
//!
//! A dataset `NAME` is a directory holding
//!
//! * `NAME_A.txt`: one `u, v` line per directed edge, 1-based global vertex
//!   ids; every undirected edge appears in both directions,
//! * `NAME_graph_indicator.txt`: the 1-based graph id of each vertex,
//! * `NAME_graph_labels.txt`: one class label per graph,
//! * optionally `NAME_node_labels.txt` and `NAME_edge_labels.txt`, aligned
//!   with the indicator and edge files respectively.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dataset::{Dataset, DatasetError};
use crate::graph::{Graph, Label};

#[derive(Debug, Error)]
pub enum TuError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("structural error: {0}")]
    Structural(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

fn file_path(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

fn read(path: &Path) -> Result<String, TuError> {
    fs::read_to_string(path).map_err(|source| TuError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_ints(path: &Path) -> Result<Vec<i64>, TuError> {
    let text = read(path)?;
    let file = file_name(path);
    lines(&text)
        .map(|(line, l)| {
            l.parse::<i64>().map_err(|e| TuError::Parse {
                file: file.clone(),
                line,
                message: format!("expected an integer, found {l:?} ({e})"),
            })
        })
        .collect()
}

fn parse_edges(path: &Path) -> Result<Vec<(usize, usize)>, TuError> {
    let text = read(path)?;
    let file = file_name(path);
    lines(&text)
        .map(|(line, l)| {
            let err = |message: String| TuError::Parse {
                file: file.clone(),
                line,
                message,
            };
            let mut parts = l.split(',').map(str::trim);
            let mut next = || -> Result<usize, TuError> {
                let field = parts
                    .next()
                    .ok_or_else(|| err(format!("expected `u, v`, found {l:?}")))?;
                match field.parse::<usize>() {
                    Ok(0) => Err(err("vertex ids are 1-based".into())),
                    Ok(v) => Ok(v - 1),
                    Err(e) => Err(err(format!("bad vertex id {field:?} ({e})"))),
                }
            };
            let edge = (next()?, next()?);
            if parts.next().is_some() {
                return Err(err(format!("expected two fields, found {l:?}")));
            }
            Ok(edge)
        })
        .collect()
}

/// Dense relabeling in increasing order of original value.
fn densify(values: &[i64]) -> (Vec<Label>, Vec<i64>) {
    let mut alphabet = values.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let index: HashMap<i64, Label> = alphabet
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Label))
        .collect();
    (values.iter().map(|v| index[v]).collect(), alphabet)
}

pub fn load_tudataset(dir: impl AsRef<Path>, name: &str) -> Result<Dataset, TuError> {
    let dir = dir.as_ref();
    let indicator_path = file_path(dir, name, "graph_indicator");
    let indicator = parse_ints(&indicator_path)?;
    let class_labels = parse_ints(&file_path(dir, name, "graph_labels"))?;
    let graph_count = class_labels.len();
    let vertex_count = indicator.len();

    // graph index and local id of every global vertex
    let mut sizes = vec![0usize; graph_count];
    let mut placement = Vec::with_capacity(vertex_count);
    for (v, &gid) in indicator.iter().enumerate() {
        if gid < 1 || gid as usize > graph_count {
            return Err(TuError::Parse {
                file: file_name(&indicator_path),
                line: v + 1,
                message: format!("graph id {gid} outside 1..={graph_count}"),
            });
        }
        let g = gid as usize - 1;
        placement.push((g, sizes[g]));
        sizes[g] += 1;
    }

    let node_path = file_path(dir, name, "node_labels");
    let raw_node_labels = if node_path.exists() {
        let labels = parse_ints(&node_path)?;
        if labels.len() != vertex_count {
            return Err(TuError::Structural(format!(
                "{} node labels for {vertex_count} vertices",
                labels.len()
            )));
        }
        labels
    } else {
        vec![0; vertex_count]
    };
    let (node_labels, vertex_alphabet) = densify(&raw_node_labels);

    let edges_path = file_path(dir, name, "A");
    let directed = parse_edges(&edges_path)?;
    let edge_label_path = file_path(dir, name, "edge_labels");
    let (edge_labels, edge_alphabet) = if edge_label_path.exists() {
        let raw = parse_ints(&edge_label_path)?;
        if raw.len() != directed.len() {
            return Err(TuError::Structural(format!(
                "{} edge labels for {} edge lines",
                raw.len(),
                directed.len()
            )));
        }
        let (dense, alphabet) = densify(&raw);
        (Some(dense), Some(alphabet))
    } else {
        (None, None)
    };

    // per graph: directed (local u, local v) -> label
    let mut arcs: Vec<BTreeMap<(usize, usize), Label>> = vec![BTreeMap::new(); graph_count];
    for (line, &(u, v)) in directed.iter().enumerate() {
        for x in [u, v] {
            if x >= vertex_count {
                return Err(TuError::Parse {
                    file: file_name(&edges_path),
                    line: line + 1,
                    message: format!("vertex {} exceeds vertex count {vertex_count}", x + 1),
                });
            }
        }
        let (gu, lu) = placement[u];
        let (gv, lv) = placement[v];
        if gu != gv {
            return Err(TuError::Structural(format!(
                "edge line {}: vertices {} and {} belong to graphs {} and {}",
                line + 1,
                u + 1,
                v + 1,
                gu + 1,
                gv + 1
            )));
        }
        if lu == lv {
            return Err(TuError::Structural(format!(
                "edge line {}: self-loop at vertex {}",
                line + 1,
                u + 1
            )));
        }
        let label = edge_labels.as_ref().map_or(0, |l| l[line]);
        if arcs[gu].insert((lu, lv), label).is_some() {
            return Err(TuError::Structural(format!(
                "edge line {}: duplicate directed edge {}, {}",
                line + 1,
                u + 1,
                v + 1
            )));
        }
    }

    let mut graphs = Vec::with_capacity(graph_count);
    let mut labels_by_graph: Vec<Vec<Label>> =
        sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    for (v, &(g, _)) in placement.iter().enumerate() {
        labels_by_graph[g].push(node_labels[v]);
    }
    for (g, (map, vertex_labels)) in arcs.iter().zip(labels_by_graph).enumerate() {
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for (&(u, v), &label) in map {
            match map.get(&(v, u)) {
                None => {
                    return Err(TuError::Structural(format!(
                        "graph {}: directed edge ({u}, {v}) has no reverse",
                        g + 1
                    )))
                }
                Some(&back) if back != label => {
                    return Err(TuError::Structural(format!(
                        "graph {}: edge ({u}, {v}) labeled differently in each direction",
                        g + 1
                    )))
                }
                Some(_) if u < v => {
                    edges.push((u, v));
                    labels.push(label);
                }
                Some(_) => {}
            }
        }
        let graph = if edge_alphabet.is_some() {
            Graph::with_edge_labels(vertex_labels, edges, labels)
        } else {
            Graph::new(vertex_labels, edges)
        }
        .map_err(DatasetError::from)?;
        graphs.push(graph);
    }

    Ok(Dataset::with_alphabets(
        name,
        graphs,
        class_labels,
        vertex_alphabet,
        edge_alphabet,
    )?)
}

/// Writes `dataset` under `dir` using `dataset.name` as the file prefix.
/// Node labels are always written, in their original values.
pub fn write_tudataset(dataset: &Dataset, dir: impl AsRef<Path>) -> Result<(), TuError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| TuError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let name = &dataset.name;
    let write = |suffix: &str, body: &dyn Fn(&mut dyn Write) -> io::Result<()>| {
        let path = file_path(dir, name, suffix);
        let result = fs::File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            body(&mut w)?;
            w.flush()
        });
        result.map_err(|source| TuError::Io { path, source })
    };

    let offsets: Vec<usize> = dataset
        .graphs()
        .iter()
        .scan(0, |acc, g| {
            let start = *acc;
            *acc += g.vertex_count();
            Some(start)
        })
        .collect();
    // directed arcs in (source, target) order with their dense edge label
    let arcs: Vec<(usize, usize, Label)> = dataset
        .graphs()
        .iter()
        .zip(&offsets)
        .flat_map(|(g, &off)| {
            let mut local: Vec<(usize, usize, Label)> = g
                .edges()
                .iter()
                .enumerate()
                .flat_map(|(e, &(u, v))| {
                    let l = g.edge_label(e).unwrap_or(0);
                    [(u + off, v + off, l), (v + off, u + off, l)]
                })
                .collect();
            local.sort_unstable();
            local
        })
        .collect();

    write("A", &|w| {
        for &(u, v, _) in &arcs {
            writeln!(w, "{}, {}", u + 1, v + 1)?;
        }
        Ok(())
    })?;
    write("graph_indicator", &|w| {
        for (i, g) in dataset.graphs().iter().enumerate() {
            for _ in 0..g.vertex_count() {
                writeln!(w, "{}", i + 1)?;
            }
        }
        Ok(())
    })?;
    write("graph_labels", &|w| {
        for c in dataset.class_labels() {
            writeln!(w, "{c}")?;
        }
        Ok(())
    })?;
    let alphabet = dataset.vertex_alphabet();
    write("node_labels", &|w| {
        for g in dataset.graphs() {
            for &l in g.vertex_labels() {
                writeln!(w, "{}", alphabet[l as usize])?;
            }
        }
        Ok(())
    })?;
    if let Some(edge_alphabet) = dataset.edge_alphabet() {
        write("edge_labels", &|w| {
            for &(_, _, l) in &arcs {
                writeln!(w, "{}", edge_alphabet[l as usize])?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

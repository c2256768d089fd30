//! Plain-text artifacts: CSV matrices, sparse feature lines and class label
//! sidecars. Lines starting with `#` are comments and are skipped by readers.

use std::fmt::Debug;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::kernels::SparseFeatureVector;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn write_comments<W: Write>(w: &mut W, lines: &[String]) -> io::Result<()> {
    for l in lines {
        writeln!(w, "# {l}")?;
    }
    Ok(())
}

/// Writes a square matrix row by row. The header row lists graph ids.
pub struct MatrixCsvWriter<W: Write> {
    out: W,
    columns: usize,
}

impl<W: Write> MatrixCsvWriter<W> {
    pub fn new(mut out: W, comments: &[String], ids: &[usize]) -> io::Result<Self> {
        write_comments(&mut out, comments)?;
        let header: Vec<String> = ids.iter().map(usize::to_string).collect();
        writeln!(out, "{}", header.join(","))?;
        Ok(Self {
            out,
            columns: ids.len(),
        })
    }

    pub fn write_row<T: Debug>(&mut self, row: &[T]) -> io::Result<()> {
        assert_eq!(row.len(), self.columns, "row width mismatch");
        let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        writeln!(self.out, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn write_matrix_csv<W: Write, T: Debug>(
    out: W,
    comments: &[String],
    ids: &[usize],
    rows: &[Vec<T>],
) -> io::Result<()> {
    let mut w = MatrixCsvWriter::new(out, comments, ids)?;
    for r in rows {
        w.write_row(r)?;
    }
    w.finish().map(drop)
}

/// A matrix read back from CSV together with its header ids.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvMatrix {
    pub ids: Vec<usize>,
    pub rows: Vec<Vec<f64>>,
}

fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String), ExportError>> {
    r.lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(ExportError::from))
        .filter(|l| match l {
            Ok((_, s)) => !s.trim().is_empty() && !s.starts_with('#'),
            Err(_) => true,
        })
}

pub fn read_matrix_csv<R: BufRead>(r: R) -> Result<CsvMatrix, ExportError> {
    let mut lines = content_lines(r);
    let parse_err = |line, message: String| ExportError::Parse { line, message };
    let (hl, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing header row".into()))??;
    let ids = header
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| parse_err(hl, format!("bad header id: {e}")))?;
    let mut rows = Vec::new();
    for l in lines {
        let (n, text) = l?;
        let row = text
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| parse_err(n, format!("bad value: {e}")))?;
        if row.len() != ids.len() {
            return Err(parse_err(
                n,
                format!("expected {} values, found {}", ids.len(), row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != ids.len() {
        return Err(parse_err(
            0,
            format!("matrix has {} rows but {} columns", rows.len(), ids.len()),
        ));
    }
    Ok(CsvMatrix { ids, rows })
}

/// One line per graph: `<class> <key>:<count> ...` with ascending keys.
pub fn write_features<W: Write>(
    mut w: W,
    comments: &[String],
    features: &[SparseFeatureVector],
    class_labels: &[i64],
) -> io::Result<()> {
    write_comments(&mut w, comments)?;
    for (f, class) in features.iter().zip(class_labels) {
        write!(w, "{class}")?;
        for (k, n) in f.entries() {
            write!(w, " {k}:{n}")?;
        }
        writeln!(w)?;
    }
    w.flush()
}

pub fn read_features<R: BufRead>(r: R) -> Result<Vec<(i64, SparseFeatureVector)>, ExportError> {
    let mut out = Vec::new();
    for l in content_lines(r) {
        let (n, text) = l?;
        let bad = |m: &str| ExportError::Parse {
            line: n,
            message: m.to_owned(),
        };
        let mut parts = text.split_whitespace();
        let class = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad class label"))?;
        let mut pairs = Vec::new();
        for p in parts {
            let (k, c) = p.split_once(':').ok_or_else(|| bad("expected key:count"))?;
            let k = k.parse().map_err(|_| bad("bad key"))?;
            let c = c.parse().map_err(|_| bad("bad count"))?;
            pairs.push((k, c));
        }
        out.push((class, SparseFeatureVector::from_pairs(pairs)));
    }
    Ok(out)
}

pub fn write_labels<W: Write>(mut w: W, comments: &[String], labels: &[i64]) -> io::Result<()> {
    write_comments(&mut w, comments)?;
    for l in labels {
        writeln!(w, "{l}")?;
    }
    w.flush()
}

pub fn read_labels<R: BufRead>(r: R) -> Result<Vec<i64>, ExportError> {
    content_lines(r)
        .map(|l| {
            let (n, text) = l?;
            text.trim().parse().map_err(|_| ExportError::Parse {
                line: n,
                message: format!("bad class label {:?}", text.trim()),
            })
        })
        .collect()
}

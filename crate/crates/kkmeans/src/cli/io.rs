use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::{ClusteringResult, DenseMatrix, Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Libsvm,
    Csv,
}

impl InputFormat {
    /// `.csv` files are CSV; otherwise the first non-blank line decides:
    /// any `idx:val` token means libsvm.
    pub fn detect(path: &Path) -> Result<Self> {
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            return Ok(InputFormat::Csv);
        }
        let reader = BufReader::new(File::open(path).map_err(|e| Error::io(path, e))?);
        for line in reader.lines() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            return Ok(if line.contains(':') { InputFormat::Libsvm } else { InputFormat::Csv });
        }
        Ok(InputFormat::Csv)
    }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// One parsed libsvm line: the features as 0-based `(index, value)` pairs.
fn parse_libsvm_line(path: &Path, lineno: usize, line: &str) -> Result<Vec<(usize, f64)>> {
    let body = line.split('#').next().unwrap_or("");
    let mut tokens = body.split_whitespace();
    let label = tokens
        .next()
        .ok_or_else(|| parse_err(path, lineno, "missing label"))?;
    label
        .parse::<f64>()
        .map_err(|_| parse_err(path, lineno, format!("invalid label `{label}`")))?;
    tokens
        .map(|tok| {
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(path, lineno, format!("expected idx:val, got `{tok}`")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("invalid feature index `{idx}`")))?;
            if idx == 0 {
                return Err(parse_err(path, lineno, "feature indices are 1-based"));
            }
            let val: f64 = val
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("invalid feature value `{val}`")))?;
            Ok((idx - 1, val))
        })
        .collect()
}

fn read_libsvm(path: &Path, n: Option<usize>) -> Result<Vec<Vec<(usize, f64)>>> {
    let reader = BufReader::new(File::open(path).map_err(|e| Error::io(path, e))?);
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        if n.is_some_and(|n| rows.len() == n) {
            break;
        }
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(parse_libsvm_line(path, i + 1, &line)?);
    }
    Ok(rows)
}

fn densify<T: Scalar>(path: &Path, rows: &[Vec<(usize, f64)>], d: usize) -> Result<DenseMatrix<T>> {
    let mut out = DenseMatrix::zeros(rows.len(), d);
    for (i, feats) in rows.iter().enumerate() {
        for &(idx, val) in feats {
            if idx >= d {
                return Err(parse_err(
                    path,
                    i + 1,
                    format!("feature index {} exceeds d={d}", idx + 1),
                ));
            }
            out.set(i, idx, T::from_f64(val));
        }
    }
    Ok(out)
}

/// Reads the first `n` points of a libsvm file (`label idx:val …`, 1-based
/// indices) into an `n×d` matrix. Labels are discarded and missing features
/// are zero.
pub fn load_libsvm<T: Scalar>(path: impl AsRef<Path>, n: usize, d: usize) -> Result<DenseMatrix<T>> {
    let path = path.as_ref();
    let rows = read_libsvm(path, Some(n))?;
    if rows.len() < n {
        return Err(parse_err(
            path,
            rows.len() + 1,
            format!("expected {n} points, found {}", rows.len()),
        ));
    }
    densify(path, &rows, d)
}

fn is_numeric(cell: &str) -> bool {
    cell.trim().parse::<f64>().is_ok()
}

fn read_csv(path: &Path) -> Result<Vec<(usize, Vec<f64>)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, i + 1, e.to_string()))?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        if i == 0 && record.iter().all(|c| !is_numeric(c)) {
            continue;
        }
        let lineno = record.position().map_or(i + 1, |p| p.line() as usize);
        let vals = record
            .iter()
            .map(|c| {
                c.parse::<f64>()
                    .map_err(|_| parse_err(path, lineno, format!("non-numeric cell `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((lineno, vals));
    }
    Ok(rows)
}

fn csv_matrix<T: Scalar>(path: &Path, rows: &[(usize, Vec<f64>)], d: usize) -> Result<DenseMatrix<T>> {
    let mut data = Vec::with_capacity(rows.len() * d);
    for (lineno, vals) in rows {
        if vals.len() != d {
            return Err(parse_err(
                path,
                *lineno,
                format!("expected {d} columns, found {}", vals.len()),
            ));
        }
        data.extend(vals.iter().map(|&v| T::from_f64(v)));
    }
    DenseMatrix::new(rows.len(), d, data)
}

/// Reads a headerless (or single-header-row) CSV with exactly `n` rows of
/// `d` numeric cells.
pub fn load_csv<T: Scalar>(path: impl AsRef<Path>, n: usize, d: usize) -> Result<DenseMatrix<T>> {
    let path = path.as_ref();
    let rows = read_csv(path)?;
    if rows.len() != n {
        return Err(parse_err(
            path,
            rows.last().map_or(1, |r| r.0),
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    csv_matrix(path, &rows, d)
}

/// Loads a dataset in either format, inferring `n` and `d` from the file
/// when they are not given. With libsvm, `d` defaults to the largest
/// feature index present.
pub fn load_dataset<T: Scalar>(
    path: impl AsRef<Path>,
    n: Option<usize>,
    d: Option<usize>,
) -> Result<DenseMatrix<T>> {
    let path = path.as_ref();
    match InputFormat::detect(path)? {
        InputFormat::Libsvm => {
            let rows = read_libsvm(path, n)?;
            if let Some(n) = n {
                if rows.len() < n {
                    return Err(parse_err(
                        path,
                        rows.len() + 1,
                        format!("expected {n} points, found {}", rows.len()),
                    ));
                }
            }
            let d = d.unwrap_or_else(|| {
                rows.iter()
                    .flat_map(|r| r.iter().map(|&(i, _)| i + 1))
                    .max()
                    .unwrap_or(1)
            });
            densify(path, &rows, d)
        }
        InputFormat::Csv => {
            let rows = read_csv(path)?;
            if let Some(n) = n {
                if rows.len() != n {
                    return Err(parse_err(path, 1, format!("expected {n} rows, found {}", rows.len())));
                }
            }
            let d = d.or_else(|| rows.first().map(|r| r.1.len())).unwrap_or(0);
            csv_matrix(path, &rows, d)
        }
    }
}

/// `<path>.timings.csv`
pub fn timings_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".timings.csv");
    PathBuf::from(s)
}

/// Writes one label per line to `path` and the phase timings to
/// `<path>.timings.csv`.
pub fn write_results(result: &ClusteringResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut labels = String::with_capacity(result.labels.len() * 3);
    for l in result.labels.labels() {
        labels.push_str(&l.to_string());
        labels.push('\n');
    }
    std::fs::write(path, labels).map_err(|e| Error::io(path, e))?;

    let tpath = timings_path(path);
    let file = File::create(&tpath).map_err(|e| Error::io(&tpath, e))?;
    let mut w = BufWriter::new(file);
    let t = &result.timings;
    let body = format!(
        "phase,seconds\nkernel_matrix,{}\npairwise_distances,{}\nargmin_update,{}\n",
        t.kernel_matrix_seconds, t.pairwise_distances_seconds, t.argmin_update_seconds
    );
    w.write_all(body.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(&tpath, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Assignments, TimingBreakdown};

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn libsvm_lines() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.svm", "1 1:0.5 3:2.0\n-1 2:1\n");
        let m = load_libsvm::<f64>(&p, 2, 3).unwrap();
        assert_eq!(m.row(0), &[0.5, 0.0, 2.0]);
        assert_eq!(m.row(1), &[0.0, 1.0, 0.0]);
        let m = load_libsvm::<f64>(&p, 1, 3).unwrap();
        assert_eq!(m.rows(), 1);
    }

    #[test]
    fn libsvm_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.svm", "1 1:0.5\n1 4:1\n");
        match load_libsvm::<f32>(&p, 2, 3) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(load_libsvm::<f32>(&p, 3, 4), Err(Error::Parse { .. })));
        let p = write(&dir, "b.svm", "1 1:0.5\n1 2=3\n");
        match load_libsvm::<f32>(&p, 2, 3) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "c.svm", "1 0:1\n");
        assert!(load_libsvm::<f32>(&p, 1, 3).is_err());
        let err = load_libsvm::<f32>(dir.path().join("missing.svm"), 1, 1).unwrap_err();
        assert!(err.to_string().contains("missing.svm"));
    }

    #[test]
    fn csv_basic_and_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.csv", "1,2\n3,4\n");
        assert_eq!(load_csv::<f64>(&p, 2, 2).unwrap().as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        let p = write(&dir, "b.csv", "x,y\n1,2\n");
        assert_eq!(load_csv::<f64>(&p, 1, 2).unwrap().as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn csv_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "a.csv", "1,2\n3\n");
        assert!(matches!(load_csv::<f32>(&p, 2, 2), Err(Error::Parse { line: 2, .. })));
        let p = write(&dir, "b.csv", "1,2\n3,abc\n");
        assert!(matches!(load_csv::<f32>(&p, 2, 2), Err(Error::Parse { line: 2, .. })));
        let p = write(&dir, "c.csv", "1,2\n");
        assert!(load_csv::<f32>(&p, 2, 2).is_err());
    }

    #[test]
    fn dataset_detection_and_inference() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "data.txt", "1 2:1.5\n0 5:2\n");
        let m = load_dataset::<f64>(&p, None, None).unwrap();
        assert_eq!(m.shape(), (2, 5));
        let p = write(&dir, "data2.txt", "1.0,2.0,3.0\n4,5,6\n");
        assert_eq!(load_dataset::<f64>(&p, None, None).unwrap().shape(), (2, 3));
    }

    #[test]
    fn writes_labels_and_timings() {
        let dir = tempfile::tempdir().unwrap();
        let result = ClusteringResult {
            labels: Assignments::new(vec![0, 1, 0], 2).unwrap(),
            iterations_run: 1,
            objective_history: vec![1.0],
            final_objective: 1.0,
            converged: false,
            empty_cluster_repairs: 0,
            timings: TimingBreakdown {
                kernel_matrix_seconds: 1.0,
                pairwise_distances_seconds: 2.0,
                argmin_update_seconds: 0.5,
            },
        };
        let p = dir.path().join("out.txt");
        write_results(&result, &p).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "0\n1\n0\n");
        assert_eq!(
            std::fs::read_to_string(dir.path().join("out.txt.timings.csv")).unwrap(),
            "phase,seconds\nkernel_matrix,1\npairwise_distances,2\nargmin_update,0.5\n"
        );
        let err = write_results(&result, dir.path().join("nope/out.txt")).unwrap_err();
        assert!(err.to_string().contains("nope"));
    }
}

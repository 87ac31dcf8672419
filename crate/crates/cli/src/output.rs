//! CSV writing: comma separated, header row, `\n` terminators, floats with 17
//! significant digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub fn row(values: &[f64]) -> String {
    values.iter().map(|&v| float(v)).collect::<Vec<_>>().join(",")
}

/// Line-oriented writer that tags I/O errors with the path.
pub struct CsvFile {
    path: PathBuf,
    inner: BufWriter<File>,
}

impl CsvFile {
    pub fn create(path: &Path, header: &str) -> Result<Self, CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
        }
        let file = File::create(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut out = Self {
            path: path.to_path_buf(),
            inner: BufWriter::new(file),
        };
        out.line(header)?;
        Ok(out)
    }

    pub fn line(&mut self, text: &str) -> Result<(), CliError> {
        writeln!(self.inner, "{text}").map_err(|source| CliError::Io {
            path: self.path.clone(),
            source,
        })
    }

    pub fn values(&mut self, values: &[f64]) -> Result<(), CliError> {
        self.line(&row(values))
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.inner.flush().map_err(|source| CliError::Io {
            path: self.path.clone(),
            source,
        })
    }
}

/// Reads blank-line-separated polylines of `gamma,phi,beta` rows.
pub fn read_polylines(path: &Path) -> Result<Vec<Vec<[f64; 3]>>, CliError> {
    let file = File::open(path).map_err(|source| CliError::MissingInput {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = Vec::new();
    let mut current = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() {
            if !current.is_empty() {
                lines.push(std::mem::take(&mut current));
            }
            continue;
        }
        if line.starts_with("gamma") {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Config(format!("{}:{}: {e}", path.display(), k + 1)))?;
        if fields.len() != 3 {
            return Err(CliError::Config(format!(
                "{}:{}: expected gamma,phi,beta",
                path.display(),
                k + 1
            )));
        }
        current.push([fields[0], fields[1], fields[2]]);
    }
    if !current.is_empty() {
        lines.push(current);
    }
    Ok(lines)
}

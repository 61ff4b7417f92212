//! Matrix file format: one matrix per file as a JSON object with `rows`,
//! `cols` and a flat row-major `data` list of [re, im] pairs. Numbers are
//! written with 17 significant digits, so write-then-read is exact for
//! doubles and the textual form round-trips bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use abssum::matlin::ComplexMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// 17 significant digits: enough to reproduce any f64 exactly on parse.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a matrix to the textual format.
pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    let mut out = String::with_capacity(64 + 48 * m.data().len());
    out.push_str("{\n");
    out.push_str(&format!("  \"rows\": {},\n", m.rows()));
    out.push_str(&format!("  \"cols\": {},\n", m.cols()));
    out.push_str("  \"data\": [\n");
    for (i, z) in m.data().iter().enumerate() {
        out.push_str(&format!("    [{}, {}]", fmt_f64(z.re), fmt_f64(z.im)));
        if i + 1 < m.data().len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    fs::write(path, matrix_to_string(m))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

#[derive(Deserialize)]
struct RawMatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawMatrixFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed matrix file {}: {e}", path.display())))?;
    if raw.data.len() != raw.rows * raw.cols {
        return Err(CliError::Usage(format!(
            "matrix file {} declares {}x{} but carries {} entries",
            path.display(),
            raw.rows,
            raw.cols,
            raw.data.len()
        )));
    }
    let entries: Vec<Complex64> = raw
        .data
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    ComplexMatrix::new(raw.rows, raw.cols, entries)
        .map_err(|e| CliError::Usage(format!("invalid matrix in {}: {e}", path.display())))
}

/// Writes the members of a tuple as `a_01.json`, `a_02.json`, ... inside
/// `dir`, creating it if needed; returns the file paths in order.
pub fn write_tuple(dir: &Path, members: &[ComplexMatrix]) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let mut paths = Vec::with_capacity(members.len());
    for (k, m) in members.iter().enumerate() {
        let path = dir.join(format!("a_{:02}.json", k + 1));
        write_matrix(&path, m)?;
        paths.push(path);
    }
    Ok(paths)
}

//! Plain-text generator matrices: a line with `N`, then `N` whitespace
//! separated rows.

use std::fmt::Write as _;
use std::path::Path;

use latbound::lattice::{normalize_generator, GeneratorMatrix, Matrix};

use crate::CliError;

pub fn parse_matrix(text: &str) -> Result<Matrix, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines.next().ok_or("empty file")?.parse().map_err(|_| "first line must be the dimension")?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row: Vec<f64> = line.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| format!("row {}: not a number", i + 1))?;
        if row.len() != n {
            return Err(format!("row {} has {} entries, expected {n}", i + 1, row.len()));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(format!("found {} rows, expected {n}", rows.len()));
    }
    Matrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut s = format!("{}\n", m.dim());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

/// Reads a matrix and scales it to unit determinant.
pub fn read_generator(path: &Path) -> Result<GeneratorMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let m = parse_matrix(&text).map_err(|e| CliError::config("lattice", format!("{}: {e}", path.display())))?;
    normalize_generator(&m).map_err(|e| CliError::config("lattice", format!("{}: {e}", path.display())))
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), CliError> {
    std::fs::write(path, format_matrix(m)).map_err(|e| CliError::io(path, e))
}

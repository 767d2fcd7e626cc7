//! CSV, JSON and gnuplot writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::sweep::SweepResult;
use crate::CliError;

/// Columns as stored in a CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub snr_db: Vec<f64>,
    /// `(target, values, stderr)`.
    pub columns: Vec<(String, Vec<f64>, Vec<f64>)>,
}

impl From<&SweepResult> for Table {
    fn from(r: &SweepResult) -> Self {
        Table { snr_db: r.snr_db.clone(), columns: r.columns.iter().map(|c| (c.name.clone(), c.values.clone(), c.stderr.clone())).collect() }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_string(r: &SweepResult) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["snr_db".to_string()];
    for c in &r.columns {
        header.push(c.name.clone());
        header.push(format!("{}_stderr", c.name));
    }
    w.write_record(&header).map_err(CliError::csv)?;
    for (i, snr) in r.snr_db.iter().enumerate() {
        let mut row = vec![num(*snr)];
        for c in &r.columns {
            row.push(num(c.values[i]));
            row.push(num(c.stderr[i]));
        }
        w.write_record(&row).map_err(CliError::csv)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn parse_csv(text: &str) -> Result<Table, CliError> {
    let bad = |m: String| CliError::Format(m);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().map_err(CliError::csv)?.iter().map(str::to_string).collect();
    if header.first().map(String::as_str) != Some("snr_db") || header.len() % 2 != 1 {
        return Err(bad("header must be snr_db followed by value/stderr pairs".into()));
    }
    let mut columns: Vec<(String, Vec<f64>, Vec<f64>)> = Vec::new();
    for pair in header[1..].chunks(2) {
        if pair[1] != format!("{}_stderr", pair[0]) {
            return Err(bad(format!("column {} lacks its stderr column", pair[0])));
        }
        columns.push((pair[0].clone(), Vec::new(), Vec::new()));
    }
    let mut snr_db = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(CliError::csv)?;
        let vals: Vec<f64> = rec.iter().map(str::parse).collect::<Result<_, _>>().map_err(|e| bad(format!("{e}")))?;
        snr_db.push(vals[0]);
        for (j, c) in columns.iter_mut().enumerate() {
            c.1.push(vals[1 + 2 * j]);
            c.2.push(vals[2 + 2 * j]);
        }
    }
    Ok(Table { snr_db, columns })
}

pub fn json_string(r: &SweepResult) -> String {
    serde_json::to_string_pretty(r).expect("sweep results serialize") + "\n"
}

/// A standalone gnuplot script drawing every column of `csv_name` on a
/// log-y axis.
pub fn plot_script(r: &SweepResult, csv_name: &str, image_name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 900,650");
    let _ = writeln!(s, "set output '{image_name}'");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale y");
    let _ = writeln!(s, "set format y '10^{{%L}}'");
    let _ = writeln!(s, "set grid");
    let _ = writeln!(s, "set key bottom left");
    let _ = writeln!(s, "set xlabel 'SNR (dB)'");
    let _ = writeln!(s, "set ylabel 'Frame error probability'");
    let _ = writeln!(s, "set title '{}'", r.name.replace('\'', ""));
    let mut plots = Vec::new();
    for (j, c) in r.columns.iter().enumerate() {
        let col = 2 + 2 * j;
        let style = if c.sim.is_some() { "linespoints pt 7" } else { "lines lw 2" };
        plots.push(format!("'{csv_name}' every ::1 using 1:(${col} > 0 ? ${col} : 1/0) with {style} title '{}'", c.name));
    }
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Files written for one sweep.
#[derive(Clone, Debug)]
pub struct Written {
    pub csv: String,
    pub json: String,
    pub plot: Option<String>,
}

pub fn emit(r: &SweepResult, prefix: &str, plot: bool) -> Result<Written, CliError> {
    let csv = format!("{prefix}.csv");
    let json = format!("{prefix}.json");
    write(Path::new(&csv), &csv_string(r)?)?;
    write(Path::new(&json), &json_string(r))?;
    let plot = if plot {
        let gp = format!("{prefix}.gp");
        let base = |p: &str| Path::new(p).file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        write(Path::new(&gp), &plot_script(r, &base(&csv), &base(&format!("{prefix}.png"))))?;
        Some(gp)
    } else {
        None
    };
    Ok(Written { csv, json, plot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Column, SweepInfo};

    fn sample() -> SweepResult {
        let col = |name: &str, v: Vec<f64>| Column { name: name.into(), stderr: v.iter().map(|x| x * 1e-3).collect(), values: v, methods: vec![], sim: None };
        SweepResult {
            name: "t".into(),
            info: SweepInfo { lattices: vec!["zn".into()], n: 2, k: None, l: 1, m: 1.0, d_min: 1.0, w: 1.0, seed: 1, frames: 1, decode_window: 4, samples: 1000 },
            snr_db: vec![0.0, 2.5, 30.0],
            columns: vec![col("slb", vec![0.1, 1.0 / 3.0, 1.234_567_890_123_456_7e-17]), col("sub", vec![0.9, 0.5, f64::MIN_POSITIVE])],
        }
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let r = sample();
        let text = csv_string(&r).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "snr_db,slb,slb_stderr,sub,sub_stderr");
        assert!(lines.iter().all(|l| l.split(',').count() == 5));
        assert_eq!(parse_csv(&text).unwrap(), Table::from(&r));
    }

    #[test]
    fn malformed_csv_rejected() {
        assert!(parse_csv("x,slb,slb_stderr\n").is_err());
        assert!(parse_csv("snr_db,slb,sub\n").is_err());
        assert!(parse_csv("snr_db,slb,slb_stderr\n0,a,0\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: SweepResult = serde_json::from_str(&json_string(&r)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn plot_script_references_every_column() {
        let s = plot_script(&sample(), "t.csv", "t.png");
        assert!(s.contains("set logscale y"));
        assert!(s.contains("title 'slb'") && s.contains("title 'sub'"));
        assert!(s.contains("using 1:($4"));
    }
}

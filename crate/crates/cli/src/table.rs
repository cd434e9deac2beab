//! CSV and JSON emission for row-oriented output.
//!
//! CSV: a header row, then one line per row, values in scientific notation
//! with 15 significant digits. JSON: an array of objects whose keys are the
//! CSV column names in the same order.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::OutputFormat;

pub trait Row: Serialize {
    const COLUMNS: &'static [&'static str];

    fn values(&self) -> Vec<f64>;
}

pub fn format_value(v: f64) -> String {
    format!("{v:.14e}")
}

pub fn write_rows<R: Row, W: Write>(
    rows: &[R],
    format: OutputFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{}", R::COLUMNS.join(","))?;
            for row in rows {
                let line: Vec<String> = row.values().into_iter().map(format_value).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolveRow {
    pub t: f64,
    pub re_s: f64,
    pub im_s: f64,
    pub re_d: f64,
    pub im_d: f64,
    pub gamma: f64,
    pub center: f64,
    pub delta_phase: f64,
    pub norm_error: f64,
}

impl Row for EvolveRow {
    const COLUMNS: &'static [&'static str] = &[
        "t",
        "re_s",
        "im_s",
        "re_d",
        "im_d",
        "gamma",
        "center",
        "delta_phase",
        "norm_error",
    ];

    fn values(&self) -> Vec<f64> {
        vec![
            self.t,
            self.re_s,
            self.im_s,
            self.re_d,
            self.im_d,
            self.gamma,
            self.center,
            self.delta_phase,
            self.norm_error,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavefunctionRow {
    pub x: f64,
    pub re_psi: f64,
    pub im_psi: f64,
    pub density: f64,
}

impl Row for WavefunctionRow {
    const COLUMNS: &'static [&'static str] = &["x", "re_psi", "im_psi", "density"];

    fn values(&self) -> Vec<f64> {
        vec![self.x, self.re_psi, self.im_psi, self.density]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticRow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub det: f64,
    pub re_s2: f64,
    pub im_s2: f64,
}

impl Row for SymplecticRow {
    const COLUMNS: &'static [&'static str] = &["a", "b", "c", "d", "det", "re_s2", "im_s2"];

    fn values(&self) -> Vec<f64> {
        vec![
            self.a, self.b, self.c, self.d, self.det, self.re_s2, self.im_s2,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_fifteen_significant_digits() {
        assert_eq!(format_value(1.0), "1.00000000000000e0");
        assert_eq!(format_value(-0.1), "-1.00000000000000e-1");
        let v = std::f64::consts::PI;
        let parsed: f64 = format_value(v).parse().unwrap();
        assert!((parsed - v).abs() < 1e-14);
    }

    #[test]
    fn json_keys_match_csv_columns() {
        let row = WavefunctionRow {
            x: 1.0,
            re_psi: 0.5,
            im_psi: -0.5,
            density: 0.5,
        };
        let mut buf = Vec::new();
        write_rows(&[row], OutputFormat::Json, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&str> = value[0]
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut expected = WavefunctionRow::COLUMNS.to_vec();
        expected.sort();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort();
        assert_eq!(keys_sorted, expected);
    }

    #[test]
    fn csv_layout() {
        let row = SymplecticRow {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            det: 1.0,
            re_s2: 2.0,
            im_s2: 0.0,
        };
        let mut buf = Vec::new();
        write_rows(&[row], OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,b,c,d,det,re_s2,im_s2");
        assert_eq!(lines[1].split(',').count(), 7);
        assert!(text.ends_with('\n'));
    }
}

//! Gnuplot-style data files: `#` header lines, then one row per point with
//! whitespace-separated columns.

use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// `x` with `digits` significant digits, without exponent where practical.
/// Integral values print as integers.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.fract() == 0.0 && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Renders columns of equal length under a header.
pub fn render(header: &str, columns: &[Vec<f64>]) -> Result<String> {
    let rows = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::UnequalColumns);
    }
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for i in 0..rows {
        let row: Vec<String> = columns
            .iter()
            .map(|c| format_significant(c[i], 12))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    Ok(out)
}

pub fn write_plotdata(path: &Path, header: &str, columns: &[Vec<f64>]) -> Result<()> {
    let text = render(header, columns)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// Parses data rows back into columns, skipping `#` lines.
pub fn parse(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidScenario(format!("plot data line {}: {e}", i + 1)))?;
        if columns.is_empty() {
            columns = vec![Vec::new(); values.len()];
        }
        if values.len() != columns.len() {
            return Err(Error::UnequalColumns);
        }
        for (c, v) in columns.iter_mut().zip(values) {
            c.push(v);
        }
    }
    Ok(columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let s = render("t bits", &[vec![0.0, 1.0], vec![0.0, 8.0]]).unwrap();
        assert_eq!(s, "# t bits\n0 0\n1 8\n");
    }

    #[test]
    fn empty_series_is_header_only() {
        assert_eq!(render("x", &[vec![], vec![]]).unwrap(), "# x\n");
        assert_eq!(render("x", &[]).unwrap(), "# x\n");
    }

    #[test]
    fn unequal_columns() {
        assert!(matches!(
            render("", &[vec![1.0], vec![]]),
            Err(Error::UnequalColumns)
        ));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.375, 12), "0.375");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(300.08863, 5), "300.09");
        assert_eq!(format_significant(1e-9, 3), "1.00e-9");
        assert_eq!(format_significant(-2.5, 12), "-2.5");
    }

    #[test]
    fn round_trip() {
        let cols = vec![vec![1.0, 2.0, 3.0], vec![0.5, 0.25, 0.125]];
        assert_eq!(parse(&render("h\nsecond", &cols).unwrap()).unwrap(), cols);
    }
}

//! `vertex score` rank files, one line per vertex, sorted by vertex id.

use std::collections::btree_map::Entry;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use hotgraph_core::{RankVector, VertexId};

use crate::error::{CliError, CliResult};

/// Formats like C's `%.12g`.
pub fn format_score(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_ranks(path: &Path, ranks: &RankVector) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::in_file(path)(e.into());
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    for (v, score) in ranks.iter() {
        writeln!(out, "{v} {}", format_score(score)).map_err(io)?;
    }
    out.flush().map_err(io)?;
    Ok(())
}

pub fn read_ranks(path: &Path) -> CliResult<RankVector> {
    let io = |e: std::io::Error| CliError::in_file(path)(e.into());
    let reader = BufReader::new(File::open(path).map_err(io)?);
    let mut ranks = RankVector::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::Data(format!("{}:{}: {what}", path.display(), i + 1));
        let mut tokens = line.split_whitespace();
        let (Some(v), Some(s), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(bad("expected `vertex score`"));
        };
        let v: u64 = v.parse().map_err(|_| bad("invalid vertex id"))?;
        let s: f64 = s.parse().map_err(|_| bad("invalid score"))?;
        match ranks.scores.entry(VertexId(v)) {
            Entry::Occupied(_) => return Err(bad(&format!("duplicate vertex {v}"))),
            Entry::Vacant(slot) => {
                slot.insert(s);
            }
        }
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        let cases = [
            (1.0, "1"),
            (0.15, "0.15"),
            (0.0, "0"),
            (1234567.1234567, "1234567.12346"),
            (1e-5, "1e-05"),
            (0.000123456789012345, "0.000123456789012"),
            (123456789012345.0, "1.23456789012e+14"),
            (9.9999999999999, "10"),
            (-2.5, "-2.5"),
            (1.0 / 3.0, "0.333333333333"),
        ];
        for (x, want) in cases {
            assert_eq!(format_score(x), want, "{x}");
        }
    }

    #[test]
    fn round_trip_within_precision() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.txt");
        let mut rv = RankVector::default();
        for i in 0..50u64 {
            rv.scores.insert(VertexId(i * 3), 0.15 + i as f64 / 7.0);
        }
        write_ranks(&path, &rv).unwrap();
        let back = read_ranks(&path).unwrap();
        assert_eq!(back.len(), rv.len());
        for ((a, x), (b, y)) in rv.iter().zip(back.iter()) {
            assert_eq!(a, b);
            assert!((x - y).abs() <= 1e-11 * x.abs());
        }
    }
}

//! Line-oriented instance files.
//!
//! ```text
//! P L scheme [h_min] seed
//! h_0 h_1 ... h_{P-1}
//! <peak 0 as L characters of 0/1>
//! ...
//! <peak P-1>
//! ```
//!
//! `scheme` is `equal` or `linear`; `h_min` is present iff the scheme is
//! linear. Heights are written in shortest round-trip decimal form, so a
//! parse of a serialized instance is bit-identical to the original. A single
//! trailing newline is allowed; anything else out of place is rejected.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{assign_heights, BitString, HeightScheme, ProblemInstance};

// Parsed heights may come from writers with other float formatting.
const HEIGHT_TOLERANCE: f64 = 1e-12;

pub fn serialize_instance(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{} {} {}",
        instance.peak_count(),
        instance.length(),
        instance.scheme()
    );
    let _ = writeln!(out, " {}", instance.seed());
    let heights: Vec<String> = instance.heights().iter().map(|h| h.to_string()).collect();
    out.push_str(&heights.join(" "));
    out.push('\n');
    for p in instance.peaks() {
        let _ = writeln!(out, "{p}");
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {tok:?}")))
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();

    let header: Vec<&str> = lines[0].split(' ').collect();
    let (peaks, length, scheme, seed) = match header.as_slice() {
        [p, l, "equal", seed] => (p, l, HeightScheme::Equal, seed),
        [p, l, "linear", h, seed] => (
            p,
            l,
            HeightScheme::Linear {
                h_min: parse_num(h, 1, "h_min")?,
            },
            seed,
        ),
        _ => {
            return Err(Error::parse(
                1,
                "expected `P L equal seed` or `P L linear h_min seed`",
            ))
        }
    };
    let peaks: usize = parse_num(peaks, 1, "peak count")?;
    let length: usize = parse_num(length, 1, "length")?;
    let seed: u64 = parse_num(seed, 1, "seed")?;
    if peaks == 0 || length == 0 {
        return Err(Error::parse(1, "peak count and length must be positive"));
    }
    let expected = assign_heights(peaks, scheme).map_err(|e| Error::parse(1, e.to_string()))?;

    let Some(height_line) = lines.get(1) else {
        return Err(Error::parse(2, "missing heights line"));
    };
    let heights = height_line
        .split(' ')
        .map(|t| parse_num::<f64>(t, 2, "height"))
        .collect::<Result<Vec<_>>>()?;
    if heights.len() != peaks {
        return Err(Error::parse(
            2,
            format!("expected {peaks} heights, found {}", heights.len()),
        ));
    }
    for (i, (&h, &want)) in heights.iter().zip(&expected).enumerate() {
        if (h - want).abs() > HEIGHT_TOLERANCE {
            return Err(Error::parse(
                2,
                format!("height {i} is {h}, but the {} scheme gives {want}", scheme.name()),
            ));
        }
    }

    let peak_lines = &lines[2.min(lines.len())..];
    if peak_lines.len() != peaks {
        // Point at the first missing line, or the first surplus one.
        let line = 3 + peak_lines.len().min(peaks);
        return Err(Error::parse(
            line,
            format!(
                "header declares {peaks} peaks but {} peak lines follow",
                peak_lines.len()
            ),
        ));
    }
    let mut parsed = Vec::with_capacity(peaks);
    for (i, l) in peak_lines.iter().enumerate() {
        let lineno = i + 3;
        if l.len() != length {
            return Err(Error::parse(
                lineno,
                format!("peak has {} characters, expected {length}", l.len()),
            ));
        }
        let p: BitString = l.parse().map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
        if let Some(j) = parsed.iter().position(|q| q == &p) {
            return Err(Error::parse(lineno, format!("duplicates peak on line {}", j + 3)));
        }
        parsed.push(p);
    }
    ProblemInstance::new(parsed, heights, scheme, seed)
}

//! Plain-text file formats: one-value-per-line inputs, CSV projections,
//! locale-independent number formatting.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hexagram::Ordering;
use crate::metrics::{hamming, SurpriseModel};
use crate::schedules::CurriculumMapping;

/// Formats `x` with `digits` significant digits in plain decimal notation.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Parses one real per non-blank line; `#` starts a comment line.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split(',').next().unwrap_or("").trim();
        let v: f64 = field.parse().map_err(|_| {
            Error::validation(format!("line {}: {field:?} is not a number", lineno + 1))
        })?;
        if !v.is_finite() {
            return Err(Error::validation(format!(
                "line {}: non-finite value",
                lineno + 1
            )));
        }
        values.push(v);
    }
    Ok(values)
}

pub fn read_values(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_values(&text)
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Writes to `path`, or stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| Error::io(p, e)),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

/// Pretty JSON, refusing any non-finite number.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)
        .map_err(|e| Error::validation(format!("cannot serialize report: {e}")))?;
    if contains_null(&tree) {
        return Err(Error::undefined("report contains a non-finite number"));
    }
    let mut s = serde_json::to_string_pretty(&tree)
        .map_err(|e| Error::validation(format!("cannot serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn contains_null(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(items) => items.iter().any(contains_null),
        Value::Object(map) => map.values().any(contains_null),
        _ => false,
    }
}

pub fn ordering_csv(ordering: &Ordering) -> String {
    let mut out = String::from("position,code,lines,yang_count\n");
    for (i, h) in ordering.sequence().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            h.code(),
            h.line_string(),
            h.yang_count()
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct OrderingEntry {
    pub position: usize,
    pub code: u8,
    pub lines: String,
    pub yang_count: u32,
}

pub fn ordering_entries(ordering: &Ordering) -> Vec<OrderingEntry> {
    ordering
        .sequence()
        .iter()
        .enumerate()
        .map(|(i, h)| OrderingEntry {
            position: i + 1,
            code: h.code(),
            lines: h.line_string(),
            yang_count: h.yang_count(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct TransitionRow {
    pub index: usize,
    pub from_code: u8,
    pub to_code: u8,
    pub hamming: u32,
    pub surprise: f64,
}

pub fn transition_rows(ordering: &Ordering, model: &SurpriseModel) -> Vec<TransitionRow> {
    ordering
        .sequence()
        .windows(2)
        .enumerate()
        .map(|(i, w)| TransitionRow {
            index: i + 1,
            from_code: w[0].code(),
            to_code: w[1].code(),
            hamming: hamming(w[0], w[1]),
            surprise: model.surprise(w[0], w[1]),
        })
        .collect()
}

pub fn transitions_csv(rows: &[TransitionRow]) -> String {
    let mut out = String::from("index,from_code,to_code,hamming,surprise\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.index,
            r.from_code,
            r.to_code,
            r.hamming,
            fmt_sig(r.surprise, 9)
        ));
    }
    out
}

/// One multiplier per line, 9 significant digits.
pub fn multipliers_csv(multipliers: &[f64]) -> String {
    let mut out = String::with_capacity(multipliers.len() * 12);
    for m in multipliers {
        out.push_str(&fmt_sig(*m, 9));
        out.push('\n');
    }
    out
}

/// `buffer_index,emit_position`, one line per buffer slot.
pub fn mapping_csv(mapping: &CurriculumMapping) -> String {
    let mut out = String::new();
    for (buffer, pos) in mapping.emit_position.iter().enumerate() {
        out.push_str(&format!("{buffer},{pos}\n"));
    }
    out
}

pub fn parse_mapping_csv(text: &str) -> Result<Vec<usize>> {
    let mut slots = Vec::new();
    for (lineno, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let (b, p) = line.split_once(',').ok_or_else(|| {
            Error::validation(format!(
                "line {}: expected buffer_index,emit_position",
                lineno + 1
            ))
        })?;
        let parse = |s: &str| {
            s.trim().parse::<usize>().map_err(|_| {
                Error::validation(format!("line {}: {s:?} is not an index", lineno + 1))
            })
        };
        let (b, p) = (parse(b)?, parse(p)?);
        if b != slots.len() {
            return Err(Error::validation(format!(
                "line {}: buffer index {b} out of sequence",
                lineno + 1
            )));
        }
        slots.push(p);
    }
    Ok(slots)
}

//! Delimited coefficient-monitor tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{is_uniform, Channel, CoefficientSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonitorError {
    #[error("no header line found")]
    EmptyDocument,
    #[error("no time column in header (line {line}); accepted names: {accepted}")]
    MissingTimeColumn { line: usize, accepted: String },
    #[error("no CL, CD or CM column in header (line {line})")]
    NoCoefficientColumn { line: usize },
    #[error("column '{column}' appears twice in header (line {line})")]
    DuplicateColumn { column: String, line: usize },
    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("row {row}: time {time} does not increase")]
    NonMonotonicTime { row: usize, time: f64 },
    #[error("row {row}, column '{column}': value '{value}' is not a finite number")]
    NonFiniteValue { row: usize, column: String, value: String },
    #[error("no data rows")]
    NoRows,
}

/// Header names accepted for each column, compared case-insensitively.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AliasTable {
    #[serde(default)]
    pub time: Vec<String>,
    #[serde(default, rename = "CL")]
    pub lift: Vec<String>,
    #[serde(default, rename = "CD")]
    pub drag: Vec<String>,
    #[serde(default, rename = "CM")]
    pub moment: Vec<String>,
}

impl Default for AliasTable {
    fn default() -> Self {
        let v = |names: &[&str]| names.iter().map(|s| s.to_string()).collect();
        Self {
            time: v(&["t", "time", "flow-time"]),
            lift: v(&["cl", "lift-coeff"]),
            drag: v(&["cd", "drag-coeff"]),
            moment: v(&["cm", "pitch-mom-coeff"]),
        }
    }
}

impl AliasTable {
    /// Defaults plus the names in `extra`.
    pub fn extended(extra: &AliasTable) -> Self {
        let mut t = Self::default();
        t.time.extend(extra.time.iter().cloned());
        t.lift.extend(extra.lift.iter().cloned());
        t.drag.extend(extra.drag.iter().cloned());
        t.moment.extend(extra.moment.iter().cloned());
        t
    }

    fn is_time(&self, name: &str) -> bool {
        self.time.iter().any(|a| a.eq_ignore_ascii_case(name))
    }

    fn channel(&self, name: &str) -> Option<Channel> {
        let hit = |list: &[String]| list.iter().any(|a| a.eq_ignore_ascii_case(name));
        if hit(&self.lift) {
            Some(Channel::Lift)
        } else if hit(&self.drag) {
            Some(Channel::Drag)
        } else if hit(&self.moment) {
            Some(Channel::Moment)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Delimiter {
    Char(char),
    Whitespace,
}

fn detect_delimiter(header: &str) -> Delimiter {
    [',', ';', '\t']
        .into_iter()
        .find(|c| header.contains(*c))
        .map_or(Delimiter::Whitespace, Delimiter::Char)
}

fn unquote(f: &str) -> &str {
    let f = f.trim();
    f.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .or_else(|| f.strip_prefix('\'').and_then(|s| s.strip_suffix('\'')))
        .unwrap_or(f)
        .trim()
}

fn split(line: &str, d: Delimiter) -> Vec<&str> {
    match d {
        Delimiter::Char(c) => line.split(c).map(unquote).collect(),
        Delimiter::Whitespace => line.split_whitespace().map(unquote).collect(),
    }
}

pub fn parse_monitor_table(text: &str) -> Result<CoefficientSeries, MonitorError> {
    parse_monitor_table_with(text, &AliasTable::default())
}

/// Rows are reported by 1-based line number in `text`.
pub fn parse_monitor_table_with(
    text: &str,
    aliases: &AliasTable,
) -> Result<CoefficientSeries, MonitorError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_line, header) = lines.next().ok_or(MonitorError::EmptyDocument)?;
    let delim = detect_delimiter(header);
    let names = split(header, delim);

    let mut time_col = None;
    let mut channel_cols: BTreeMap<usize, Channel> = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        if aliases.is_time(name) {
            if time_col.is_some() {
                return Err(MonitorError::DuplicateColumn {
                    column: name.to_string(),
                    line: header_line,
                });
            }
            time_col = Some(i);
        } else if let Some(ch) = aliases.channel(name) {
            if channel_cols.values().any(|c| *c == ch) {
                return Err(MonitorError::DuplicateColumn {
                    column: name.to_string(),
                    line: header_line,
                });
            }
            channel_cols.insert(i, ch);
        }
    }
    let time_col = time_col.ok_or_else(|| MonitorError::MissingTimeColumn {
        line: header_line,
        accepted: aliases.time.join(", "),
    })?;
    if channel_cols.is_empty() {
        return Err(MonitorError::NoCoefficientColumn { line: header_line });
    }

    let mut times = Vec::new();
    let mut columns: BTreeMap<Channel, Vec<f64>> =
        channel_cols.values().map(|c| (*c, Vec::new())).collect();
    for (row, line) in lines {
        let fields = split(line, delim);
        if fields.len() != names.len() {
            return Err(MonitorError::RaggedRow {
                row,
                expected: names.len(),
                found: fields.len(),
            });
        }
        let number = |i: usize| -> Result<f64, MonitorError> {
            fields[i]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| MonitorError::NonFiniteValue {
                    row,
                    column: names[i].to_string(),
                    value: fields[i].to_string(),
                })
        };
        let t = number(time_col)?;
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(MonitorError::NonMonotonicTime { row, time: t });
            }
        }
        times.push(t);
        for (&i, ch) in &channel_cols {
            columns.get_mut(ch).expect("column registered").push(number(i)?);
        }
    }
    if times.is_empty() {
        return Err(MonitorError::NoRows);
    }

    let uniform = is_uniform(&times);
    let mut series = CoefficientSeries {
        times,
        phases: None,
        lift: columns.remove(&Channel::Lift),
        drag: columns.remove(&Channel::Drag),
        moment: columns.remove(&Channel::Moment),
        metadata: Default::default(),
    };
    series.metadata.uniform = uniform;
    Ok(series)
}

/// Fixed notation with 17 significant digits; parses back to the same bits.
pub fn format_fixed17(v: f64) -> String {
    if v == 0.0 {
        return format!("{:.16}", v);
    }
    let sci = format!("{:.16e}", v);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format has an exponent");
    let decimals = (16 - exp).max(0) as usize;
    format!("{:.*}", decimals, v)
}

/// Canonical form: header `t,CL,CD,CM` without absent channels, `\n` endings.
pub fn write_series(series: &CoefficientSeries) -> String {
    let channels: Vec<(Channel, &[f64])> = series.channels().collect();
    let mut out = String::from("t");
    for (ch, _) in &channels {
        out.push(',');
        out.push_str(ch.column());
    }
    out.push('\n');
    for (i, t) in series.times.iter().enumerate() {
        out.push_str(&format_fixed17(*t));
        for (_, values) in &channels {
            out.push(',');
            out.push_str(&format_fixed17(values[i]));
        }
        out.push('\n');
    }
    out
}

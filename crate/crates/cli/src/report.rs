//! Versioned run reports and their JSON, CSV and plain-text renderings.
//!
//! JSON is canonical. CSV is a projection of the rows only; its columns are
//! `index`, `status`, the report type's fixed columns, `deviation`, `message`.

use std::fmt::Write as _;

use hilbert_coth::Error;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Fields left out of the canonical form used for determinism comparisons.
pub const NON_CANONICAL_FIELDS: [&str; 2] = ["timestamp", "timing"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NonConvergence,
    ConfigError,
}

impl Status {
    pub fn from_error(err: &Error) -> Self {
        match err {
            Error::NonConvergence { .. } | Error::NanIntegrand { .. } | Error::InsufficientDecay { .. } => {
                Status::NonConvergence
            }
            Error::Domain { .. } | Error::Overflow { .. } | Error::InvalidParams(_) | Error::Divergent(_) => {
                Status::ConfigError
            }
        }
    }

    pub fn from_flag(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::ConfigError => 2,
            Status::NonConvergence => 3,
        }
    }

    /// Which status wins when several rows disagree: configuration errors,
    /// then non-convergence, then plain failures.
    fn severity(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::NonConvergence => 2,
            Status::ConfigError => 3,
        }
    }

    pub fn worst(statuses: impl IntoIterator<Item = Status>) -> Status {
        statuses.into_iter().max_by_key(|s| s.severity()).unwrap_or(Status::Pass)
    }
}

/// One grid point. `data` holds the report type's columns; `deviation` is
/// the quantity compared against a tolerance, when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub index: usize,
    pub status: Status,
    pub data: Map<String, Value>,
    pub deviation: Option<f64>,
    pub message: Option<String>,
}

impl Row {
    pub fn checked(index: usize, data: Value, passed: bool, deviation: Option<f64>) -> Self {
        Self {
            index,
            status: Status::from_flag(passed),
            data: into_map(data),
            deviation,
            message: None,
        }
    }

    /// A row whose computation raised; `data` carries the grid coordinates.
    pub fn errored(index: usize, data: Value, err: &Error) -> Self {
        Self {
            index,
            status: Status::from_error(err),
            data: into_map(data),
            deviation: None,
            message: Some(err.to_string()),
        }
    }

    pub fn from_result(index: usize, grid: Value, result: hilbert_coth::Result<(Value, bool, Option<f64>)>) -> Self {
        match result {
            Ok((data, passed, deviation)) => {
                let mut map = into_map(grid);
                map.extend(into_map(data));
                Self::checked(index, Value::Object(map), passed, deviation)
            }
            Err(e) => Self::errored(index, grid, &e),
        }
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.data.len() + 4))?;
        map.serialize_entry("index", &self.index)?;
        map.serialize_entry("status", &self.status)?;
        for (k, v) in &self.data {
            map.serialize_entry(k, v)?;
        }
        map.serialize_entry("deviation", &self.deviation)?;
        map.serialize_entry("message", &self.message)?;
        map.end()
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        Value::Null => Map::new(),
        other => panic!("row data must be a JSON object, got {other}"),
    }
}

/// An aggregate check over several rows, or one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, measured: f64, tolerance: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            measured,
            tolerance: tolerance.into(),
        }
    }
}

/// Wall-clock time of one stage against its budget. Not canonical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub label: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl Timing {
    pub fn within_budget(&self) -> bool {
        self.seconds <= self.budget_seconds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub non_converged: usize,
    pub config_errors: usize,
    pub checks_failed: usize,
    pub worst_deviation: Option<f64>,
    pub worst_row: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub timestamp: String,
    pub command: String,
    pub config: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Timing>>,
}

impl Report {
    /// Rows are sorted by grid index and padded with nulls so that every row
    /// carries exactly `columns`.
    pub fn new(command: &str, config: Value, columns: &[&str], mut rows: Vec<Row>, checks: Vec<Check>) -> Self {
        rows.sort_by_key(|r| r.index);
        for row in &mut rows {
            let mut ordered = Map::new();
            for c in columns {
                ordered.insert((*c).to_string(), row.data.remove(*c).unwrap_or(Value::Null));
            }
            assert!(row.data.is_empty(), "{command}: undeclared columns {:?}", row.data.keys().collect::<Vec<_>>());
            row.data = ordered;
        }
        let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
        let worst = rows
            .iter()
            .filter_map(|r| r.deviation.filter(|d| d.is_finite()).map(|d| (r.index, d)))
            .fold(None, |acc: Option<(usize, f64)>, (i, d)| match acc {
                Some((_, w)) if w >= d => acc,
                _ => Some((i, d)),
            });
        let summary = Summary {
            rows: rows.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            non_converged: count(Status::NonConvergence),
            config_errors: count(Status::ConfigError),
            checks_failed: checks.iter().filter(|c| !c.passed).count(),
            worst_deviation: worst.map(|w| w.1),
            worst_row: worst.map(|w| w.0),
        };
        Self {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.into(),
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            checks,
            summary,
            timing: None,
        }
    }

    pub fn with_timing(mut self, timing: Vec<Timing>) -> Self {
        self.timing = Some(timing);
        self
    }

    pub fn status(&self) -> Status {
        let rows = self.rows.iter().map(|r| r.status);
        let checks = self.checks.iter().map(|c| Status::from_flag(c.passed));
        let timing = self.timing.iter().flatten().map(|t| Status::from_flag(t.within_budget()));
        Status::worst(rows.chain(checks).chain(timing))
    }

    pub fn exit_code(&self) -> i32 {
        self.status().exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The JSON document without its run-specific fields.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            for k in NON_CANONICAL_FIELDS {
                m.remove(k);
            }
        }
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["index".to_string(), "status".to_string()];
        header.extend(self.columns.iter().cloned());
        header.extend(["deviation".to_string(), "message".to_string()]);
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![row.index.to_string(), status_str(row.status)];
            rec.extend(row.data.values().map(csv_cell));
            rec.push(row.deviation.map(|d| Value::from(d)).as_ref().map(csv_cell).unwrap_or_default());
            rec.push(row.message.clone().unwrap_or_default());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} rows, {} pass, {} fail, {} non-converged, {} config errors",
            self.command, s.rows, s.passed, s.failed, s.non_converged, s.config_errors
        );
        if !self.rows.is_empty() {
            let mut header = vec!["#".to_string(), "status".to_string()];
            header.extend(self.columns.iter().cloned());
            header.push("deviation".into());
            let mut table = vec![header];
            for row in &self.rows {
                let mut line = vec![row.index.to_string(), status_str(row.status)];
                line.extend(row.data.values().map(human_cell));
                line.push(row.deviation.map(fmt_num).unwrap_or_else(|| "-".into()));
                table.push(line);
            }
            out.push_str(&render_table(&table));
            for row in self.rows.iter().filter(|r| r.message.is_some()) {
                let _ = writeln!(out, "  row {}: {}", row.index, row.message.as_deref().unwrap_or(""));
            }
        }
        if !self.checks.is_empty() {
            let mut table = vec![vec!["check".into(), "result".into(), "measured".into(), "tolerance".into()]];
            for c in &self.checks {
                table.push(vec![
                    c.name.clone(),
                    if c.passed { "PASS" } else { "FAIL" }.into(),
                    fmt_num(c.measured),
                    c.tolerance.clone(),
                ]);
            }
            out.push('\n');
            out.push_str(&render_table(&table));
        }
        if let Some(timing) = &self.timing {
            out.push('\n');
            for t in timing {
                let _ = writeln!(
                    out,
                    "{:<34} {:>8.2} s (budget {} s){}",
                    t.label,
                    t.seconds,
                    t.budget_seconds,
                    if t.within_budget() { "" } else { "  OVER BUDGET" }
                );
            }
        }
        if let Some(w) = s.worst_deviation {
            let _ = writeln!(out, "worst deviation {} (row {})", fmt_num(w), s.worst_row.unwrap_or(0));
        }
        let _ = writeln!(out, "exit status {}", self.exit_code());
        out
    }
}

fn status_str(s: Status) -> String {
    match serde_json::to_value(s) {
        Ok(Value::String(s)) => s,
        _ => unreachable!(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn human_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Number(n) if n.is_f64() => fmt_num(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Compact number formatting for terminal tables.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{x:.10}");
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        format!("{x:.6e}")
    }
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

//! Report rows and the CSV/JSON emitters.
//!
//! Rows keep exact integer cycle sums so the speedup identity
//! `speedup * avg_total == software avg_total` holds without float
//! slack; averages are only rounded at the rendering edge.

use super::run::VectorRecord;
use crate::error::{Error, Result};
use crate::pipelines::Mode;

/// Aggregate figures for one mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub mode: Mode,
    /// Vectors that ran without error.
    pub count: u64,
    pub sw_sum: u128,
    pub hw_sum: u128,
    pub total_sum: u128,
    /// Exact speedup vs the software row as numerator/denominator;
    /// absent when software did not run (or this mode ran nothing).
    pub speedup: Option<(u128, u128)>,
}

impl ReportRow {
    pub fn avg_sw(&self) -> f64 {
        self.avg(self.sw_sum)
    }

    pub fn avg_hw(&self) -> f64 {
        self.avg(self.hw_sum)
    }

    pub fn avg_total(&self) -> f64 {
        self.avg(self.total_sum)
    }

    fn avg(&self, sum: u128) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            sum as f64 / self.count as f64
        }
    }

    pub fn speedup_f64(&self) -> Option<f64> {
        self.speedup.map(|(num, den)| num as f64 / den as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Renders the fixed-column CSV: averages with six decimals, speedup
/// with two.
pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("mode,count,avg_sw_cycles,avg_hw_cycles,avg_total,speedup_vs_software\n");
    for row in rows {
        let speedup = row.speedup_f64().map(|s| format!("{s:.2}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{:.6},{}\n",
            row.mode,
            row.count,
            row.avg_sw(),
            row.avg_hw(),
            row.avg_total(),
            speedup
        ));
    }
    out
}

/// Renders the JSON mirror of the CSV columns, optionally with the
/// per-vector records and a time proxy at the given clock.
pub fn render_json(
    rows: &[ReportRow],
    records: Option<&[VectorRecord]>,
    clock_hz: Option<u64>,
) -> String {
    let mut row_docs = Vec::with_capacity(rows.len());
    for row in rows {
        let mut doc = serde_json::Map::new();
        doc.insert("mode".into(), row.mode.name().into());
        doc.insert("count".into(), row.count.into());
        doc.insert("avg_sw_cycles".into(), fixed(row.avg_sw(), 6).into());
        doc.insert("avg_hw_cycles".into(), fixed(row.avg_hw(), 6).into());
        doc.insert("avg_total".into(), fixed(row.avg_total(), 6).into());
        doc.insert(
            "speedup_vs_software".into(),
            row.speedup_f64().map(|s| fixed(s, 2).into()).unwrap_or(serde_json::Value::Null),
        );
        if let Some(hz) = clock_hz {
            doc.insert("avg_time_s".into(), fixed(row.avg_total() / hz as f64, 9).into());
        }
        row_docs.push(serde_json::Value::Object(doc));
    }
    let mut top = serde_json::Map::new();
    top.insert("rows".into(), row_docs.into());
    if let Some(records) = records {
        top.insert("records".into(), serde_json::to_value(records).unwrap());
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(top)).unwrap()
}

/// Decimal string with a fixed number of places, for deterministic bytes.
fn fixed(value: f64, places: usize) -> String {
    format!("{value:.places$}")
}

/// Writes the report file.
pub fn emit_report(
    rows: &[ReportRow],
    records: Option<&[VectorRecord]>,
    format: ReportFormat,
    clock_hz: Option<u64>,
    path: &std::path::Path,
) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Input("report has no rows".into()));
    }
    let body = match format {
        ReportFormat::Csv => render_csv(rows),
        ReportFormat::Json => render_json(rows, records, clock_hz),
    };
    std::fs::write(path, body)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<ReportRow> {
        vec![
            ReportRow {
                mode: Mode::Software,
                count: 4,
                sw_sum: 1200,
                hw_sum: 0,
                total_sum: 1200,
                speedup: Some((1, 1)),
            },
            ReportRow {
                mode: Mode::Method1,
                count: 4,
                sw_sum: 300,
                hw_sum: 100,
                total_sum: 400,
                speedup: Some((1200 * 4, 400 * 4)),
            },
        ]
    }

    #[test]
    fn csv_has_fixed_columns_and_decimals() {
        let csv = render_csv(&sample_rows());
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "mode,count,avg_sw_cycles,avg_hw_cycles,avg_total,speedup_vs_software"
        );
        assert_eq!(lines.next().unwrap(), "software,4,300.000000,0.000000,300.000000,1.00");
        assert_eq!(lines.next().unwrap(), "method1,4,75.000000,25.000000,100.000000,3.00");
    }

    #[test]
    fn json_mirrors_fields() {
        let json = render_json(&sample_rows(), None, None);
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["rows"][1]["mode"], "method1");
        assert_eq!(doc["rows"][1]["speedup_vs_software"], "3.00");
        assert!(doc.get("records").is_none());

        let json = render_json(&sample_rows(), None, Some(1_000_000));
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["rows"][0]["avg_time_s"], "0.000300000");
    }

    #[test]
    fn emit_is_deterministic_and_checks_paths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        emit_report(&sample_rows(), None, ReportFormat::Csv, None, &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        emit_report(&sample_rows(), None, ReportFormat::Csv, None, &path).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());

        let missing = dir.path().join("no/such/dir/report.csv");
        assert!(emit_report(&sample_rows(), None, ReportFormat::Csv, None, &missing).is_err());
        assert!(emit_report(&[], None, ReportFormat::Csv, None, &path).is_err());
    }
}

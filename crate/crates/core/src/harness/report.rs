//! Aggregation, CSV output, and SVG plots of benchmark records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::experiment::RunRecord;

pub const RECORDS_HEADER: &str = "algo,k,seed,value,queries,wall_ms,failed";
pub const SUMMARY_HEADER: &str = "algo,k,mean_value,std_value,mean_queries,failure_rate";

/// Aggregate of all repetitions of one (algorithm, k) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algo: String,
    pub k: usize,
    pub mean_value: f64,
    pub std_value: f64,
    pub mean_queries: f64,
    pub failure_rate: f64,
}

/// Groups by (algorithm name, k) and reports means, population standard deviation of the
/// value, and the failure rate. Rows are ordered by algorithm name, then k.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no records to summarize"));
    }
    let mut groups: BTreeMap<(&str, usize), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.algo.name(), r.k)).or_default().push(r);
    }
    Ok(groups
        .into_iter()
        .map(|((algo, k), rs)| {
            let n = rs.len() as f64;
            let mean_value = rs.iter().map(|r| r.value).sum::<f64>() / n;
            let var = rs.iter().map(|r| (r.value - mean_value).powi(2)).sum::<f64>() / n;
            SummaryRow {
                algo: algo.to_string(),
                k,
                mean_value,
                std_value: var.sqrt(),
                mean_queries: rs.iter().map(|r| r.queries as f64).sum::<f64>() / n,
                failure_rate: rs.iter().filter(|r| r.failed).count() as f64 / n,
            }
        })
        .collect())
}

/// `x` rounded to 9 significant digits, printed as a plain decimal when possible.
pub fn fmt_sig9(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().expect("scientific output parses");
    format!("{rounded}")
}

fn csv_string(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn records_to_csv(records: &[RunRecord]) -> String {
    csv_string(
        RECORDS_HEADER,
        records.iter().map(|r| {
            vec![
                r.algo.name().to_string(),
                r.k.to_string(),
                r.seed.to_string(),
                fmt_sig9(r.value),
                r.queries.to_string(),
                fmt_sig9(r.wall_ms),
                r.failed.to_string(),
            ]
        }),
    )
}

pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    csv_string(
        SUMMARY_HEADER,
        rows.iter().map(|r| {
            vec![
                r.algo.clone(),
                r.k.to_string(),
                fmt_sig9(r.mean_value),
                fmt_sig9(r.std_value),
                fmt_sig9(r.mean_queries),
                fmt_sig9(r.failure_rate),
            ]
        }),
    )
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn write_records_csv(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &records_to_csv(records))
}

pub fn write_summary_csv(rows: &[SummaryRow], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &summary_to_csv(rows))
}

/// Reads a CSV file with the given header, handing each row and its line number to `parse`.
fn read_csv<T>(path: &Path, header: &str, mut parse: impl FnMut(&Row<'_>) -> Result<T>) -> Result<Vec<T>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let parse_err = |line: u64, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line: line as usize,
        msg,
    };
    let found = reader.headers().map_err(|e| parse_err(1, e.to_string()))?;
    if found.iter().ne(header.split(',')) {
        return Err(parse_err(1, format!("expected header '{header}'")));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line()) as usize;
        out.push(parse(&Row {
            path,
            line,
            record: &record,
        })?);
    }
    Ok(out)
}

struct Row<'a> {
    path: &'a Path,
    line: usize,
    record: &'a csv::StringRecord,
}

impl Row<'_> {
    fn get<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        let cell = &self.record[i];
        cell.parse().map_err(|_| Error::Parse {
            path: self.path.to_path_buf(),
            line: self.line,
            msg: format!("cannot parse '{cell}'"),
        })
    }
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    read_csv(path.as_ref(), RECORDS_HEADER, |row| {
        Ok(RunRecord {
            algo: row.get(0)?,
            k: row.get(1)?,
            seed: row.get(2)?,
            value: row.get(3)?,
            queries: row.get(4)?,
            wall_ms: row.get(5)?,
            failed: row.get(6)?,
        })
    })
}

pub fn read_summary_csv(path: impl AsRef<Path>) -> Result<Vec<SummaryRow>> {
    read_csv(path.as_ref(), SUMMARY_HEADER, |row| {
        Ok(SummaryRow {
            algo: row.get(0)?,
            k: row.get(1)?,
            mean_value: row.get(2)?,
            std_value: row.get(3)?,
            mean_queries: row.get(4)?,
            failure_rate: row.get(5)?,
        })
    })
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Data-to-pixel transform of the plot area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotLayout {
    pub k_min: f64,
    pub k_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl PlotLayout {
    /// Fits the k range and the band extremes of `rows`; degenerate ranges are widened by 1.
    pub fn fit(rows: &[SummaryRow]) -> Self {
        let ks = rows.iter().map(|r| r.k as f64);
        let mut k_min = ks.clone().fold(f64::INFINITY, f64::min);
        let mut k_max = ks.fold(f64::NEG_INFINITY, f64::max);
        let mut v_min = rows.iter().map(|r| r.mean_value - r.std_value).fold(0.0, f64::min);
        let mut v_max = rows
            .iter()
            .map(|r| r.mean_value + r.std_value)
            .fold(f64::NEG_INFINITY, f64::max);
        if k_max <= k_min {
            k_min -= 1.0;
            k_max += 1.0;
        }
        if v_max <= v_min {
            v_min -= 1.0;
            v_max += 1.0;
        }
        Self {
            k_min,
            k_max,
            v_min,
            v_max,
        }
    }

    pub fn x(&self, k: f64) -> f64 {
        LEFT + (k - self.k_min) / (self.k_max - self.k_min) * (WIDTH - LEFT - RIGHT)
    }

    pub fn y(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.v_min) * self.y_scale()
    }

    /// Pixels per unit of value.
    pub fn y_scale(&self) -> f64 {
        (HEIGHT - TOP - BOTTOM) / (self.v_max - self.v_min)
    }
}

/// Mean value against k, one polyline and ±1 std band per algorithm. Band polygons carry
/// `id="band-<algo>"` and lines `id="line-<algo>"`.
pub fn svg_string(rows: &[SummaryRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("no summary rows to plot"));
    }
    let layout = PlotLayout::fit(rows);
    let mut by_algo: BTreeMap<&str, Vec<&SummaryRow>> = BTreeMap::new();
    for r in rows {
        by_algo.entry(r.algo.as_str()).or_default().push(r);
    }

    let mut s = String::new();
    writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#).unwrap();
    writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#).unwrap();

    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    for k in ks {
        let x = layout.x(k as f64);
        writeln!(
            s,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{}" stroke="black"/>"#,
            y0 + 4.0
        )
        .unwrap();
        writeln!(s, r#"<text x="{x}" y="{}" text-anchor="middle">{k}</text>"#, y0 + 18.0).unwrap();
    }
    for i in 0..=4 {
        let v = layout.v_min + (layout.v_max - layout.v_min) * i as f64 / 4.0;
        let y = layout.y(v);
        writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{x0}" y2="{y}" stroke="black"/>"#,
            x0 - 4.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            tick_label(v)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">k</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">mean value</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();

    for (i, (algo, group)) in by_algo.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let upper = group
            .iter()
            .map(|r| (layout.x(r.k as f64), layout.y(r.mean_value + r.std_value)));
        let lower = group
            .iter()
            .rev()
            .map(|r| (layout.x(r.k as f64), layout.y(r.mean_value - r.std_value)));
        let band: Vec<String> = upper.chain(lower).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        writeln!(
            s,
            r#"<polygon id="band-{algo}" points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            band.join(" ")
        )
        .unwrap();
        let line: Vec<String> = group
            .iter()
            .map(|r| format!("{:.3},{:.3}", layout.x(r.k as f64), layout.y(r.mean_value)))
            .collect();
        writeln!(
            s,
            r#"<polyline id="line-{algo}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            line.join(" ")
        )
        .unwrap();
        for r in group {
            writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{color}"/>"#,
                layout.x(r.k as f64),
                layout.y(r.mean_value)
            )
            .unwrap();
        }
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        )
        .unwrap();
        writeln!(s, r#"<text x="{}" y="{}">{algo}</text>"#, lx + 26.0, ly + 4.0).unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn tick_label(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

pub fn render_svg(rows: &[SummaryRow], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &svg_string(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Algorithm;

    fn record(algo: Algorithm, k: usize, value: f64, failed: bool) -> RunRecord {
        RunRecord {
            algo,
            k,
            seed: 1,
            value,
            queries: 10,
            wall_ms: 0.5,
            failed,
        }
    }

    #[test]
    fn single_record_has_zero_std() {
        let rows = summarize(&[record(Algorithm::Main, 3, 2.5, false)]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].std_value, 0.0);
    }

    #[test]
    fn population_std() {
        let rows = summarize(&[
            record(Algorithm::Main, 3, 1.0, false),
            record(Algorithm::Main, 3, 3.0, false),
        ])
        .unwrap();
        assert_eq!(rows[0].mean_value, 2.0);
        assert_eq!(rows[0].std_value, 1.0);
    }

    #[test]
    fn failure_rate_and_order() {
        let mut rs: Vec<RunRecord> = (0..8).map(|i| record(Algorithm::Main, 5, 1.0, i < 2)).collect();
        rs.push(record(Algorithm::Warmup, 2, 1.0, false));
        rs.push(record(Algorithm::Main, 2, 1.0, false));
        let rows = summarize(&rs).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.algo.as_str(), r.k)).collect();
        assert_eq!(keys, vec![("main", 2), ("main", 5), ("warmup", 2)]);
        assert_eq!(rows[1].failure_rate, 0.25);
        assert!(matches!(summarize(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(2.0), "2");
        assert_eq!(fmt_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_sig9(123456789012.0), "123456789000");
        assert_eq!(fmt_sig9(0.0), "0");
    }

    #[test]
    fn empty_records_give_header_only() {
        assert_eq!(records_to_csv(&[]), format!("{RECORDS_HEADER}\n"));
    }

    #[test]
    fn svg_single_point() {
        let rows = summarize(&[record(Algorithm::Main, 3, 2.0, false)]).unwrap();
        let svg = svg_string(&rows).unwrap();
        assert!(svg.contains("band-main") && svg.contains("line-main"));
        assert!(svg_string(&[]).is_err());
    }
}

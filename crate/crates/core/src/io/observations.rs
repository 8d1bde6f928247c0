use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::{read_text, write_text, DataError, Result};
use crate::autotune::{DatasetKind, ObservationRow, ObservationSet};
use crate::Precision;

pub const OBSERVATIONS_HEADER: &str = "N,precision,device,streams,m,time_ms,is_opt,corrected_m,opt_R";

const COLUMNS: [&str; 9] = ["N", "precision", "device", "streams", "m", "time_ms", "is_opt", "corrected_m", "opt_R"];

struct Record {
    line: u64,
    n: u64,
    precision: Precision,
    device: String,
    streams: Option<u32>,
    m: u32,
    time_ms: Option<f64>,
    is_opt: bool,
    corrected_m: Option<u32>,
    opt_r: Option<u32>,
}

fn number<T: std::str::FromStr>(line: u64, col: usize, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| DataError::BadNumber { line, column: COLUMNS[col], value: raw.to_string() })
}

fn optional<T: std::str::FromStr>(line: u64, col: usize, raw: &str) -> Result<Option<T>> {
    if raw.is_empty() {
        Ok(None)
    } else {
        number(line, col, raw).map(Some)
    }
}

fn parse_record(line: u64, rec: &csv::StringRecord) -> Result<Record> {
    if rec.len() != COLUMNS.len() {
        return Err(DataError::BadRecord { line, reason: format!("expected {} fields, found {}", COLUMNS.len(), rec.len()) });
    }
    let precision = rec[1]
        .parse()
        .map_err(|reason| DataError::BadRecord { line, reason })?;
    if rec[2].is_empty() {
        return Err(DataError::BadRecord { line, reason: "empty device".into() });
    }
    let time_ms: Option<f64> = optional(line, 5, &rec[5])?;
    if time_ms.is_some_and(|t| !t.is_finite() || t < 0.0) {
        return Err(DataError::BadNumber { line, column: COLUMNS[5], value: rec[5].to_string() });
    }
    let is_opt = match &rec[6] {
        "0" => false,
        "1" => true,
        other => return Err(DataError::BadNumber { line, column: COLUMNS[6], value: other.to_string() }),
    };
    Ok(Record {
        line,
        n: number(line, 0, &rec[0])?,
        precision,
        device: rec[2].to_string(),
        streams: optional(line, 3, &rec[3])?,
        m: number(line, 4, &rec[4])?,
        time_ms,
        is_opt,
        corrected_m: optional(line, 7, &rec[7])?,
        opt_r: optional(line, 8, &rec[8])?,
    })
}

fn same<T: PartialEq + std::fmt::Debug>(records: &[Record], field: impl Fn(&Record) -> T, name: &str) -> Result<T> {
    let first = field(&records[0]);
    if let Some(bad) = records.iter().find(|r| field(r) != first) {
        return Err(DataError::BadRecord {
            line: bad.line,
            reason: format!("{name} differs from other rows with N={}", bad.n),
        });
    }
    Ok(first)
}

fn build_row(records: &[Record], kind: DatasetKind) -> Result<ObservationRow> {
    let n = records[0].n;
    let streams = same(records, |r| r.streams, "streams")?;
    let corrected = same(records, |r| r.corrected_m, "corrected_m")?;
    let opt_r = same(records, |r| r.opt_r, "opt_R")?;

    let mut seen = BTreeSet::new();
    for r in records {
        if !seen.insert(r.m) {
            return Err(DataError::BadRecord { line: r.line, reason: format!("duplicate m={} for N={n}", r.m) });
        }
    }
    let opts: Vec<&Record> = records.iter().filter(|r| r.is_opt).collect();
    if opts.len() != 1 {
        return Err(DataError::BadRecord {
            line: records[0].line,
            reason: format!("N={n} has {} rows with is_opt=1, expected one", opts.len()),
        });
    }
    let label = opts[0].m;
    if kind == DatasetKind::RecursionDepth && opt_r != Some(label) {
        return Err(DataError::BadRecord { line: opts[0].line, reason: "opt_R disagrees with the is_opt row".into() });
    }

    let timed = records.iter().filter(|r| r.time_ms.is_some()).count();
    let times = if timed == records.len() {
        Some(records.iter().map(|r| (r.m, r.time_ms.unwrap_or_default())).collect::<BTreeMap<_, _>>())
    } else if timed == 0 && records.len() == 1 {
        None
    } else {
        return Err(DataError::BadRecord {
            line: records[0].line,
            reason: format!("N={n}: time_ms must be given on every row, or the optimum must be the only row"),
        });
    };

    Ok(ObservationRow { n, label, corrected_label: corrected, streams, times })
}

/// Parses every `(precision, device)` group in the file.
pub fn parse_observation_sets(text: &str) -> Result<Vec<ObservationSet>> {
    let header = text.lines().next().unwrap_or_default();
    if header != OBSERVATIONS_HEADER {
        return Err(DataError::MalformedHeader { found: header.to_string() });
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut groups: BTreeMap<(Precision, String), BTreeMap<u64, Vec<Record>>> = BTreeMap::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        if i == 0 {
            continue;
        }
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        let r = parse_record(line, &rec)?;
        groups.entry((r.precision, r.device.clone())).or_default().entry(r.n).or_default().push(r);
    }

    groups
        .into_iter()
        .map(|((precision, device), by_n)| {
            let all: Vec<&Record> = by_n.values().flatten().collect();
            let depth_rows = all.iter().filter(|r| r.opt_r.is_some()).count();
            let kind = if depth_rows == 0 {
                DatasetKind::SubsystemSize
            } else if depth_rows == all.len() {
                DatasetKind::RecursionDepth
            } else {
                let bad = all.iter().find(|r| r.opt_r.is_none()).expect("mixed group");
                return Err(DataError::BadRecord { line: bad.line, reason: "opt_R must be set on all rows of a group or none".into() });
            };
            let rows = by_n.values().map(|recs| build_row(recs, kind)).collect::<Result<Vec<_>>>()?;
            Ok(ObservationSet::new(kind, precision, device, rows)?)
        })
        .collect()
}

pub fn read_observation_sets(path: impl AsRef<Path>) -> Result<Vec<ObservationSet>> {
    parse_observation_sets(&read_text(path.as_ref())?)
}

/// Reads a file holding exactly one `(precision, device)` group.
pub fn read_observations(path: impl AsRef<Path>) -> Result<ObservationSet> {
    let mut sets = read_observation_sets(path)?;
    if sets.len() != 1 {
        return Err(DataError::GroupCount(sets.len()));
    }
    Ok(sets.remove(0))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Canonical text: groups by `(precision, device)`, rows by `(N, m)`.
pub fn format_observation_sets(sets: &[ObservationSet]) -> String {
    let mut ordered: Vec<&ObservationSet> = sets.iter().collect();
    ordered.sort_by(|a, b| (a.precision(), a.device()).cmp(&(b.precision(), b.device())));

    let mut out = String::new();
    out.push_str(OBSERVATIONS_HEADER);
    out.push('\n');
    for set in ordered {
        let depth = set.kind() == DatasetKind::RecursionDepth;
        for row in set.rows() {
            let opt_r = if depth { row.label.to_string() } else { String::new() };
            let lines: Vec<(u32, Option<f64>)> = match &row.times {
                Some(times) => times.iter().map(|(&m, &t)| (m, Some(t))).collect(),
                None => vec![(row.label, None)],
            };
            for (m, t) in lines {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    row.n,
                    set.precision(),
                    set.device(),
                    opt(row.streams),
                    m,
                    opt(t),
                    u8::from(m == row.label),
                    opt(row.corrected_label),
                    opt_r,
                ));
            }
        }
    }
    out
}

pub fn write_observation_sets(sets: &[ObservationSet], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_observation_sets(sets))
}

pub fn write_observations(set: &ObservationSet, path: impl AsRef<Path>) -> Result<()> {
    write_observation_sets(std::slice::from_ref(set), path)
}

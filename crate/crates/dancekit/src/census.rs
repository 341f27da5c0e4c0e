//! Knot-census ingestion, per-knot danceability analysis, and report
//! generation.
//!
//! A census is a CSV file (`#` comment lines allowed) with header
//! `name,pd,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial`;
//! the `pd` and `braid` columns hold the [`crate::codecs`] grammars and an
//! empty cell means absent. Analysis computes exact per-diagram minima,
//! runs the theorem checks C1..C4, and raises the scan flags F1..F3.
//!
//! Danceability of a knot is reported as an interval: the lower bound is
//! 2 for nontrivial knots (1 otherwise), the upper bound is the best
//! computed upper bound over the examined diagrams; `da_exact` is set
//! only when the two meet.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::braid::{braid_closure, strand_cuts};
use crate::choreography::{braid_schedule, verify_schedule};
use crate::codecs::{parse_braid, parse_pd, SCHEMA_VERSION};
use crate::diagram::{BraidWord, GaussSequence, PdCode};
use crate::engine::{is_descending_start, min_dancers};
use crate::error::CensusError;

/// Bundled table: the unknot row plus the 35 prime knots with 3 to 8
/// crossings.
pub const BUNDLED_CSV: &str = include_str!("../data/rolfsen.csv");

/// One census row.
#[derive(Debug, Clone)]
pub struct KnotRecord {
    pub name: String,
    pub pd: Option<PdCode>,
    pub braid: Option<BraidWord>,
    pub crossing_number: Option<u32>,
    pub braid_index: Option<u32>,
    pub bridge_index: Option<u32>,
    pub alternating: Option<bool>,
    pub nontrivial: bool,
}

/// Loaded records plus lenient-mode warnings for skipped rows.
#[derive(Debug)]
pub struct CensusLoad {
    pub records: Vec<KnotRecord>,
    pub warnings: Vec<String>,
}

fn parse_record(
    headers: &csv::StringRecord,
    row: &csv::StringRecord,
) -> Result<KnotRecord, String> {
    let get = |col: &str| -> Option<&str> {
        headers
            .iter()
            .position(|h| h == col)
            .and_then(|i| row.get(i))
            .map(str::trim)
            .filter(|s| !s.is_empty())
    };
    let name = get("name").ok_or("missing name")?.to_string();
    let pd = match get("pd") {
        Some(text) => Some(parse_pd(text).map_err(|e| format!("pd: {e}"))?),
        None => None,
    };
    let braid = match get("braid") {
        Some(text) => Some(parse_braid(text).map_err(|e| format!("braid: {e}"))?),
        None => None,
    };
    if pd.is_none() && braid.is_none() {
        return Err("missing both pd and braid".into());
    }
    let parse_u32 = |col: &str| -> Result<Option<u32>, String> {
        get(col)
            .map(|s| s.parse::<u32>().map_err(|_| format!("bad {col}: {s:?}")))
            .transpose()
    };
    let parse_bool = |col: &str| -> Result<Option<bool>, String> {
        get(col)
            .map(|s| match s {
                "true" | "1" => Ok(true),
                "false" | "0" => Ok(false),
                other => Err(format!("bad {col}: {other:?}")),
            })
            .transpose()
    };
    let braid_index = parse_u32("braid_index")?;
    let bridge_index = parse_u32("bridge_index")?;
    if braid_index == Some(0) || bridge_index == Some(0) {
        return Err("braid_index and bridge_index must be >= 1".into());
    }
    Ok(KnotRecord {
        name,
        pd,
        braid,
        crossing_number: parse_u32("crossing_number")?,
        braid_index,
        bridge_index,
        alternating: parse_bool("alternating")?,
        // Named table knots default to nontrivial.
        nontrivial: parse_bool("nontrivial")?.unwrap_or(true),
    })
}

/// Parses census CSV from any reader. In strict mode the first malformed
/// row aborts; in lenient mode malformed rows are skipped with a warning.
pub fn load_census_reader(reader: impl Read, strict: bool) -> Result<CensusLoad, CensusError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 2; // header is line 1 of the csv body
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                if strict {
                    return Err(e.into());
                }
                warnings.push(format!("record {line}: {e}"));
                continue;
            }
        };
        match parse_record(&headers, &row) {
            Ok(rec) => records.push(rec),
            Err(message) => {
                if strict {
                    return Err(CensusError::Format {
                        record: line,
                        message,
                    });
                }
                warnings.push(format!("record {line}: {message} (skipped)"));
            }
        }
    }
    Ok(CensusLoad { records, warnings })
}

pub fn load_census(path: &Path, strict: bool) -> Result<CensusLoad, CensusError> {
    let file = std::fs::File::open(path)?;
    load_census_reader(file, strict)
}

/// The bundled table, which must always parse cleanly.
pub fn bundled() -> CensusLoad {
    let load = load_census_reader(BUNDLED_CSV.as_bytes(), true)
        .expect("bundled census parses");
    assert!(load.warnings.is_empty());
    load
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Notable findings that are reported, not failed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flag {
    /// F1: an alternating knot with braid index >= 3 and a 2-dancer upper
    /// bound; would contradict the alternating conjecture.
    ConjectureCandidate,
    /// F2: best upper bound strictly below the braid index.
    StrictInequality { best_upper: u32, braid_index: u32 },
    /// F3: sign of best_upper - bridge_index.
    BridgeComparison { sign: i8 },
    /// Braid strand count below the claimed braid index.
    MetadataSuspect { detail: String },
    /// The published three-dancer bound for 8_15 was not reproduced by
    /// the examined diagrams.
    PaperGap { detail: String },
}

impl Flag {
    /// Compact code for the CSV mirror.
    pub fn code(&self) -> String {
        match self {
            Flag::ConjectureCandidate => "F1".into(),
            Flag::StrictInequality {
                best_upper,
                braid_index,
            } => format!("F2({best_upper}<{braid_index})"),
            Flag::BridgeComparison { sign } => format!("F3({sign:+})"),
            Flag::MetadataSuspect { .. } => "metadata-suspect".into(),
            Flag::PaperGap { .. } => "paper-gap".into(),
        }
    }
}

/// Per-knot analysis output.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub diagram_min: Option<u32>,
    pub diagram_witness: Option<String>,
    pub closure_min: Option<u32>,
    pub closure_witness: Option<String>,
    pub strand_bound: Option<u32>,
    pub best_upper: Option<u32>,
    pub da_lower: u32,
    pub da_exact: Option<u32>,
    pub checks: Vec<CheckResult>,
    pub flags: Vec<Flag>,
    pub failures: Vec<String>,
}

fn check(
    id: &'static str,
    name: &'static str,
    applicable: bool,
    pass: impl FnOnce() -> (bool, String),
) -> CheckResult {
    if !applicable {
        return CheckResult {
            id,
            name,
            status: CheckStatus::Skipped,
            detail: "not applicable".into(),
        };
    }
    let (ok, detail) = pass();
    CheckResult {
        id,
        name,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail,
    }
}

/// Analyzes one record: exact minima for every available diagram, the
/// theorem checks, and the scan flags. Sub-computation errors are
/// recorded as row-level failures and never abort the run.
pub fn analyze(record: &KnotRecord) -> ReportRow {
    let mut failures = Vec::new();

    let diagram_seq: Option<GaussSequence> = record.pd.as_ref().and_then(|pd| {
        pd.to_gauss()
            .map_err(|e| failures.push(format!("pd: {e}")))
            .ok()
    });
    let closure_seq: Option<GaussSequence> = record.braid.as_ref().and_then(|b| {
        braid_closure(b)
            .map_err(|e| failures.push(format!("braid: {e}")))
            .ok()
    });

    let diagram = diagram_seq.as_ref().map(min_dancers);
    let closure = closure_seq.as_ref().map(min_dancers);
    let strand_bound = record
        .braid
        .as_ref()
        .filter(|_| closure_seq.is_some())
        .map(|b| b.strands() as u32);

    let diagram_min = diagram.as_ref().map(|r| r.count as u32);
    let closure_min = closure.as_ref().map(|r| r.count as u32);
    let best_upper = [diagram_min, closure_min, strand_bound]
        .into_iter()
        .flatten()
        .min();
    let da_lower = if record.nontrivial { 2 } else { 1 };
    let da_exact = best_upper.filter(|&u| u == da_lower);

    let examined: Vec<&GaussSequence> = diagram_seq
        .iter()
        .chain(closure_seq.iter())
        .collect();
    let descending: Vec<bool> = examined
        .iter()
        .map(|seq| is_descending_start(seq).is_some())
        .collect();

    let c1 = check(
        "C1",
        "crossing bound",
        diagram_min.is_some() && record.crossing_number.is_some(),
        || {
            let dm = diagram_min.unwrap();
            let cn = record.crossing_number.unwrap();
            (dm <= cn, format!("diagram_min {dm} <= crossing_number {cn}"))
        },
    );
    let c2 = check(
        "C2",
        "braid bound",
        record.braid.is_some() && closure_seq.is_some(),
        || {
            let b = record.braid.as_ref().unwrap();
            match braid_schedule(b).and_then(|s| Ok((s, strand_cuts(b)?))) {
                Ok((schedule, cuts)) => {
                    let seq = closure_seq.as_ref().unwrap();
                    let verified = verify_schedule(seq, &cuts, &schedule).ok();
                    let dancers_match = schedule.dancer_count() == b.strands().max(1)
                        || seq.is_empty();
                    let bound_ok = best_upper
                        .map(|u| u <= b.strands() as u32)
                        .unwrap_or(false);
                    (
                        verified && dancers_match && bound_ok,
                        format!(
                            "braid schedule verified with {} dancer(s); best_upper {:?} <= strands {}",
                            schedule.dancer_count(),
                            best_upper,
                            b.strands()
                        ),
                    )
                }
                Err(e) => (false, format!("braid schedule failed: {e}")),
            }
        },
    );
    let c3 = check(
        "C3",
        "braid-index-2 corollary",
        record.braid_index == Some(2) && record.nontrivial,
        || {
            let upper_ok = best_upper == Some(2);
            let no_solo = !descending.iter().any(|&d| d);
            (
                upper_ok && no_solo,
                format!(
                    "best_upper {best_upper:?} == 2 and no examined diagram is 1-danceable"
                ),
            )
        },
    );
    let c4 = check(
        "C4",
        "unknot consistency",
        record.nontrivial && !examined.is_empty(),
        || {
            let no_solo = !descending.iter().any(|&d| d);
            (
                no_solo,
                "no examined diagram of a nontrivial knot is 1-danceable".into(),
            )
        },
    );

    let mut flags = Vec::new();
    if record.alternating == Some(true)
        && record.braid_index.map_or(false, |b| b >= 3)
        && best_upper == Some(2)
    {
        flags.push(Flag::ConjectureCandidate);
    }
    if let (Some(u), Some(b)) = (best_upper, record.braid_index) {
        if u < b {
            flags.push(Flag::StrictInequality {
                best_upper: u,
                braid_index: b,
            });
        }
    }
    if let (Some(u), Some(br)) = (best_upper, record.bridge_index) {
        let sign = (u as i64 - br as i64).signum() as i8;
        flags.push(Flag::BridgeComparison { sign });
    }
    if let (Some(b), Some(bi)) = (record.braid.as_ref(), record.braid_index) {
        if (b.strands() as u32) < bi {
            flags.push(Flag::MetadataSuspect {
                detail: format!(
                    "braid word has {} strand(s) but braid_index is {bi}",
                    b.strands()
                ),
            });
        }
    }
    if record.name == "8_15" {
        match best_upper {
            Some(u) if u <= 3 => {}
            _ => flags.push(Flag::PaperGap {
                detail: format!(
                    "three-dancer bound for 8_15 not reproduced; best computed upper bound is {best_upper:?}"
                ),
            }),
        }
    }

    ReportRow {
        name: record.name.clone(),
        diagram_min,
        diagram_witness: diagram.map(|r| r.witness.to_string()),
        closure_min,
        closure_witness: closure.map(|r| r.witness.to_string()),
        strand_bound,
        best_upper,
        da_lower,
        da_exact,
        checks: vec![c1, c2, c3, c4],
        flags,
        failures,
    }
}

#[derive(Debug, Clone, Default)]
pub struct CensusOptions {
    /// Worker count for row analysis; None uses the default pool.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub records: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub checks_skipped: usize,
    pub flags: BTreeMap<String, usize>,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DanceReport {
    pub schema_version: u32,
    pub source: String,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl DanceReport {
    pub fn has_check_failures(&self) -> bool {
        self.summary.checks_failed > 0 || self.summary.failures > 0
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// CSV mirror with one row per knot, flags and checks flattened.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "name",
            "diagram_min",
            "closure_min",
            "strand_bound",
            "best_upper",
            "da_lower",
            "da_exact",
            "diagram_witness",
            "closure_witness",
            "checks",
            "flags",
            "failures",
        ])
        .expect("csv header");
        let fmt_opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.rows {
            let checks = row
                .checks
                .iter()
                .map(|c| {
                    let s = match c.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Skipped => "skip",
                    };
                    format!("{}={s}", c.id)
                })
                .collect::<Vec<_>>()
                .join("|");
            let flags = row
                .flags
                .iter()
                .map(Flag::code)
                .collect::<Vec<_>>()
                .join("|");
            w.write_record([
                row.name.clone(),
                fmt_opt(row.diagram_min),
                fmt_opt(row.closure_min),
                fmt_opt(row.strand_bound),
                fmt_opt(row.best_upper),
                row.da_lower.to_string(),
                fmt_opt(row.da_exact),
                row.diagram_witness.clone().unwrap_or_default(),
                row.closure_witness.clone().unwrap_or_default(),
                checks,
                flags,
                row.failures.join("|"),
            ])
            .expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }
}

/// Sort key: numeric (crossings, index) for `c_i` names, then the name.
fn name_key(name: &str) -> (u64, u64, String) {
    let mut parts = name.splitn(2, '_');
    let c = parts.next().and_then(|s| s.parse().ok());
    let i = parts.next().and_then(|s| s.parse().ok());
    match (c, i) {
        (Some(c), Some(i)) => (c, i, name.to_string()),
        _ => (u64::MAX, u64::MAX, name.to_string()),
    }
}

fn summarize(rows: &[ReportRow]) -> Summary {
    let mut summary = Summary {
        records: rows.len(),
        checks_passed: 0,
        checks_failed: 0,
        checks_skipped: 0,
        flags: BTreeMap::new(),
        failures: 0,
    };
    for row in rows {
        for c in &row.checks {
            match c.status {
                CheckStatus::Pass => summary.checks_passed += 1,
                CheckStatus::Fail => summary.checks_failed += 1,
                CheckStatus::Skipped => summary.checks_skipped += 1,
            }
        }
        for f in &row.flags {
            let key = match f {
                Flag::ConjectureCandidate => "F1",
                Flag::StrictInequality { .. } => "F2",
                Flag::BridgeComparison { .. } => "F3",
                Flag::MetadataSuspect { .. } => "metadata_suspect",
                Flag::PaperGap { .. } => "paper_gap",
            };
            *summary.flags.entry(key.to_string()).or_insert(0) += 1;
        }
        summary.failures += row.failures.len();
    }
    summary
}

/// Analyzes every record (rows are independent; with the `parallel`
/// feature they fan out over a rayon pool sized by `options.jobs`) and
/// aggregates a deterministic report sorted by knot name.
pub fn run_census(records: &[KnotRecord], source: &str, options: &CensusOptions) -> DanceReport {
    #[cfg(feature = "parallel")]
    let mut rows: Vec<ReportRow> = {
        use rayon::prelude::*;
        let run = || records.par_iter().map(analyze).collect::<Vec<_>>();
        match options.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("worker pool")
                .install(run),
            None => run(),
        }
    };
    #[cfg(not(feature = "parallel"))]
    let mut rows: Vec<ReportRow> = {
        let _ = options;
        records.iter().map(analyze).collect()
    };
    rows.sort_by_key(|r| name_key(&r.name));
    let summary = summarize(&rows);
    DanceReport {
        schema_version: SCHEMA_VERSION,
        source: source.to_string(),
        rows,
        summary,
    }
}

/// Writes `dance_report.json` and `dance_report.csv` into `dir`.
pub fn write_reports(report: &DanceReport, dir: &Path) -> Result<(), CensusError> {
    std::fs::create_dir_all(dir)?;
    let mut json = std::fs::File::create(dir.join("dance_report.json"))?;
    json.write_all(report.to_json().as_bytes())?;
    let mut csv_file = std::fs::File::create(dir.join("dance_report.csv"))?;
    csv_file.write_all(report.to_csv().as_bytes())?;
    Ok(())
}

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use hodgekp_core::checks::{find_check, run_check, CheckOptions, CheckOutcome};
use hodgekp_core::curve::CurveParams;
use hodgekp_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Format, EXIT_FAIL, EXIT_INVARIANT, EXIT_USAGE};

#[derive(Clone, Debug)]
pub struct Job {
    pub check: &'static str,
    pub point: Option<CurveParams>,
}

impl Job {
    fn file_stem(&self) -> String {
        match &self.point {
            Some(p) => format!("{}__{}", self.check, p.slug()),
            None => self.check.to_string(),
        }
    }

    fn label(&self) -> String {
        self.point.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "-".into())
    }
}

pub struct JobResult {
    pub job: Job,
    pub outcome: Result<CheckOutcome, Error>,
    pub millis: u128,
}

pub fn jobs(names: &[&'static str], points: &[CurveParams], opts: &CheckOptions) -> Vec<Job> {
    let mut out = Vec::new();
    for name in names {
        let info = find_check(name).expect("resolved check");
        let once = !info.per_point || (*name == "identification" && opts.perturbed);
        if once {
            out.push(Job { check: info.name, point: None });
        } else {
            out.extend(points.iter().map(|p| Job { check: info.name, point: Some(p.clone()) }));
        }
    }
    out
}

/// Runs every job on the current pool; results keep job order.
pub fn run_all(jobs: &[Job], opts: &CheckOptions) -> Vec<JobResult> {
    jobs.par_iter()
        .map(|job| {
            let start = Instant::now();
            let outcome = run_check(job.check, job.point.as_ref(), opts);
            JobResult { job: job.clone(), outcome, millis: start.elapsed().as_millis() }
        })
        .collect()
}

#[derive(Serialize)]
struct SummaryEntry {
    check: String,
    point: String,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    status: &'static str,
    total: usize,
    passed: usize,
    failed: usize,
    errors: usize,
    results: Vec<SummaryEntry>,
}

#[derive(Serialize)]
struct Timings {
    #[serde(rename = "perCheckMs")]
    per_check: BTreeMap<String, u128>,
    #[serde(rename = "totalMs")]
    total: u128,
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), String> {
    std::fs::write(dir.join(name), text).map_err(|e| format!("{}: {e}", dir.join(name).display()))
}

/// Writes reports, prints the summary and returns the exit status.
pub fn emit(results: &[JobResult], format: Format, out: Option<&Path>) -> u8 {
    let mut entries = Vec::new();
    let mut per_check: BTreeMap<String, u128> = BTreeMap::new();
    let (mut passed, mut failed, mut usage, mut invariant) = (0, 0, 0, 0);
    let mut files: Vec<(String, String)> = Vec::new();
    for r in results {
        *per_check.entry(r.job.check.to_string()).or_default() += r.millis;
        let stem = r.job.file_stem();
        let (status, report, error) = match &r.outcome {
            Ok(o) => {
                if o.passed() {
                    passed += 1;
                } else {
                    failed += 1;
                }
                files.push((format!("{stem}.json"), pretty(o)));
                (o.status.to_string(), Some(format!("{stem}.json")), None)
            }
            Err(e) if e.is_usage() => {
                usage += 1;
                ("error".to_string(), None, Some(e.to_string()))
            }
            Err(e) => {
                invariant += 1;
                files.push((format!("{stem}.invariant.txt"), format!("{e}\n")));
                ("invariant".to_string(), None, Some(e.to_string()))
            }
        };
        entries.push(SummaryEntry { check: r.job.check.to_string(), point: r.job.label(), status, report, error });
    }
    let code = if invariant > 0 {
        EXIT_INVARIANT
    } else if usage > 0 {
        EXIT_USAGE
    } else if failed > 0 {
        EXIT_FAIL
    } else {
        0
    };
    let summary = Summary {
        status: if code == 0 { "pass" } else { "fail" },
        total: results.len(),
        passed,
        failed,
        errors: usage + invariant,
        results: entries,
    };
    let timings = Timings { total: per_check.values().sum(), per_check };

    if let Some(dir) = out {
        let written = std::fs::create_dir_all(dir)
            .map_err(|e| format!("{}: {e}", dir.display()))
            .and_then(|_| files.iter().try_for_each(|(name, text)| write(dir, name, text)))
            .and_then(|_| write(dir, "summary.json", &pretty(&summary)))
            .and_then(|_| write(dir, "timings.json", &pretty(&timings)));
        if let Err(e) = written {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }

    match format {
        Format::Json => {
            let v = serde_json::json!({ "summary": summary, "timings": timings });
            print!("{}", pretty(&v));
        }
        Format::Text => {
            for (r, e) in results.iter().zip(&summary.results) {
                let tag = e.status.to_uppercase();
                let weight = r.outcome.as_ref().map(|o| format!("W={}", o.weight)).unwrap_or_default();
                println!("{tag:<9} {:<20} {:<14} {weight:<5} {:>7} ms", e.check, e.point, r.millis);
                if let Some(err) = &e.error {
                    println!("          {err}");
                }
            }
            println!("{} passed, {} failed, {} errors", passed, failed, usage + invariant);
            for (check, ms) in &timings.per_check {
                println!("  {check:<20} {ms:>7} ms");
            }
        }
    }
    for e in &summary.results {
        if e.status == "error" || e.status == "invariant" {
            eprintln!("error: {} {}: {}", e.check, e.point, e.error.as_deref().unwrap_or(""));
        }
    }
    code
}

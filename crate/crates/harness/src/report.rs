//! Suite reports: deterministic JSON plus flat CSV tables. Timing goes to
//! the console only, never into the files, so identical configs produce
//! byte-identical artifacts.

use anyhow::{Context, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

/// One failed inequality with its witness data.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub experiment: String,
    pub case: usize,
    pub inequality: String,
    /// Witness point, formatted as the JSON complex-vector encoding.
    pub witness: String,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs for `lhs < rhs` inequalities; negative when violated.
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub label: String,
    pub cases: usize,
    pub violation_count: usize,
    /// Smallest slack seen across all checked inequalities.
    pub worst_slack: Option<f64>,
    /// Named scalar outcomes (estimates, margins, reference gaps).
    pub metrics: BTreeMap<String, f64>,
    /// Named sequences (ratio trends, scale vectors, series over t).
    pub series: BTreeMap<String, Vec<f64>>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(label: impl Into<String>) -> Self {
        ExperimentReport {
            label: label.into(),
            cases: 0,
            violation_count: 0,
            worst_slack: None,
            metrics: BTreeMap::new(),
            series: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn observe_slack(&mut self, slack: f64) {
        self.worst_slack = Some(match self.worst_slack {
            Some(w) => w.min(slack),
            None => slack,
        });
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub experiments: Vec<ExperimentReport>,
    pub violation_count: usize,
    pub passed: bool,
    /// All violation records, in deterministic discovery order.
    pub violations: Vec<ViolationRecord>,
}

/// A suite's complete output: the report plus an optional grid table.
pub struct SuiteOutcome {
    pub report: SuiteReport,
    /// CSV body for grid.csv (slice suite only).
    pub grid: Option<String>,
}

pub struct SuiteBuilder {
    suite: String,
    seed: Option<u64>,
    experiments: Vec<ExperimentReport>,
    violations: Vec<ViolationRecord>,
}

impl SuiteBuilder {
    pub fn new(suite: impl Into<String>, seed: Option<u64>) -> Self {
        SuiteBuilder {
            suite: suite.into(),
            seed,
            experiments: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn violation(
        &mut self,
        exp: &mut ExperimentReport,
        case: usize,
        inequality: impl Into<String>,
        witness: String,
        lhs: f64,
        rhs: f64,
    ) {
        exp.violation_count += 1;
        self.violations.push(ViolationRecord {
            experiment: exp.label.clone(),
            case,
            inequality: inequality.into(),
            witness,
            lhs,
            rhs,
            slack: rhs - lhs,
        });
    }

    /// Checks `lhs < rhs + tol`, recording a violation otherwise; feeds the
    /// slack tracker either way. Returns whether the check passed.
    #[allow(clippy::too_many_arguments)]
    pub fn check_lt(
        &mut self,
        exp: &mut ExperimentReport,
        case: usize,
        inequality: &str,
        witness: impl Fn() -> String,
        lhs: f64,
        rhs: f64,
        tol: f64,
    ) -> bool {
        exp.observe_slack(rhs - lhs);
        let ok = lhs < rhs + tol;
        if !ok {
            self.violation(exp, case, inequality, witness(), lhs, rhs);
        }
        ok
    }

    pub fn push(&mut self, exp: ExperimentReport) {
        self.experiments.push(exp);
    }

    pub fn finish(self) -> SuiteOutcome {
        let violation_count = self.violations.len();
        SuiteOutcome {
            report: SuiteReport {
                suite: self.suite,
                seed: self.seed,
                experiments: self.experiments,
                violation_count,
                passed: violation_count == 0,
                violations: self.violations,
            },
            grid: None,
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn violations_csv(violations: &[ViolationRecord]) -> String {
    let mut out = String::from("experiment,case,inequality,witness,lhs,rhs,slack\n");
    for v in violations {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_escape(&v.experiment),
            v.case,
            csv_escape(&v.inequality),
            csv_escape(&v.witness),
            v.lhs,
            v.rhs,
            v.slack
        ));
    }
    out
}

pub fn write_outputs(out_dir: &Path, outcome: &SuiteOutcome) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let report_path = out_dir.join("report.json");
    let json = serde_json::to_vec_pretty(&outcome.report).context("serializing report")?;
    std::fs::write(&report_path, json)
        .with_context(|| format!("writing {}", report_path.display()))?;
    let csv_path = out_dir.join("violations.csv");
    std::fs::write(&csv_path, violations_csv(&outcome.report.violations))
        .with_context(|| format!("writing {}", csv_path.display()))?;
    if let Some(grid) = &outcome.grid {
        let grid_path = out_dir.join("grid.csv");
        std::fs::write(&grid_path, grid)
            .with_context(|| format!("writing {}", grid_path.display()))?;
    }
    Ok(())
}

/// Console summary; the only place wall-clock time is allowed to appear.
pub fn print_summary(outcome: &SuiteOutcome, elapsed: std::time::Duration) {
    let r = &outcome.report;
    println!(
        "suite {}: {} ({} experiments, {} violations, {:.2?})",
        r.suite,
        if r.passed { "PASS" } else { "FAIL" },
        r.experiments.len(),
        r.violation_count,
        elapsed
    );
    for e in &r.experiments {
        let slack = e
            .worst_slack
            .map(|s| format!(", worst slack {s:.3e}"))
            .unwrap_or_default();
        println!(
            "  {}: {} cases, {} violations{}",
            e.label, e.cases, e.violation_count, slack
        );
    }
}

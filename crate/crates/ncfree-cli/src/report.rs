//! Machine-readable and tabular rendering of the randomized reports.

use crate::docs::write_json;
use ncfree_core::haar::{OrthogonalityReport, RecoveredCoefficient};
use ncfree_core::matricial::AxiomsReport;
use serde::Serialize;
use std::path::Path;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum OutputArg {
    Json,
    Table,
}

#[derive(Serialize)]
struct AxiomsJson {
    trials: usize,
    max_direct_sum_residual: f64,
    max_similarity_residual: f64,
    violations: Vec<String>,
    passed: bool,
}

pub fn emit_axioms(report: &AxiomsReport, output: OutputArg) -> anyhow::Result<()> {
    match output {
        OutputArg::Json => write_json(
            &AxiomsJson {
                trials: report.trials,
                max_direct_sum_residual: report.max_direct_sum_residual,
                max_similarity_residual: report.max_similarity_residual,
                violations: report.violations.clone(),
                passed: report.is_clean(),
            },
            None,
        ),
        OutputArg::Table => {
            println!("nc-function axioms over {} trials", report.trials);
            println!(
                "  max direct-sum residual  {:.3e}",
                report.max_direct_sum_residual
            );
            println!(
                "  max similarity residual  {:.3e}",
                report.max_similarity_residual
            );
            println!(
                "  result                   {}",
                if report.is_clean() { "pass" } else { "FAIL" }
            );
            for v in &report.violations {
                println!("  violation: {v}");
            }
            Ok(())
        }
    }
}

fn word_display(word: &[usize]) -> String {
    if word.is_empty() {
        "()".to_string()
    } else {
        format!(
            "({})",
            word.iter()
                .map(|j| (j + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Serialize)]
struct OrthogonalityRowJson {
    word_i: Vec<usize>,
    word_j: Vec<usize>,
    mean: [f64; 2],
    stderr: f64,
    target: f64,
    band: f64,
    exact_zero_claim: bool,
    passed: bool,
}

#[derive(Serialize)]
struct OrthogonalityJson {
    k: usize,
    level: usize,
    samples: usize,
    seed: u64,
    max_len: usize,
    band: f64,
    rows: Vec<OrthogonalityRowJson>,
    failures: usize,
    passed: bool,
}

pub fn emit_orthogonality(
    report: &OrthogonalityReport,
    band: f64,
    output: OutputArg,
    path: Option<&Path>,
) -> anyhow::Result<()> {
    match output {
        OutputArg::Json => write_json(
            &OrthogonalityJson {
                k: report.cfg.k,
                level: report.cfg.level,
                samples: report.cfg.samples,
                seed: report.cfg.seed,
                max_len: report.max_len,
                band,
                rows: report
                    .rows
                    .iter()
                    .map(|r| OrthogonalityRowJson {
                        word_i: r.word_i.iter().map(|j| j + 1).collect(),
                        word_j: r.word_j.iter().map(|j| j + 1).collect(),
                        mean: [r.estimate.mean.re, r.estimate.mean.im],
                        stderr: r.estimate.stderr,
                        target: r.target,
                        band: r.band,
                        exact_zero_claim: r.exact_zero_claim,
                        passed: r.passed,
                    })
                    .collect(),
                failures: report.failures,
                passed: report.is_clean(),
            },
            path,
        ),
        OutputArg::Table => {
            println!(
                "Haar trace moments: k={} N={} samples={} seed={}",
                report.cfg.k, report.cfg.level, report.cfg.samples, report.cfg.seed
            );
            println!(
                "{:<14}{:<14}{:>12}{:>12}{:>10}{:>10}  {}",
                "word_i", "word_j", "mean_re", "mean_im", "stderr", "target", "status"
            );
            for r in &report.rows {
                println!(
                    "{:<14}{:<14}{:>12.6}{:>12.6}{:>10.6}{:>10.4}  {}",
                    word_display(&r.word_i),
                    word_display(&r.word_j),
                    r.estimate.mean.re,
                    r.estimate.mean.im,
                    r.estimate.stderr,
                    r.target,
                    if r.passed { "pass" } else { "FAIL" }
                );
            }
            println!(
                "{} rows, {} failures",
                report.rows.len(),
                report.failures
            );
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RecoveredRowJson {
    word: Vec<usize>,
    raw_mean: [f64; 2],
    stderr: f64,
    scaled: [f64; 2],
}

pub fn emit_recovered(
    rows: &[RecoveredCoefficient],
    output: OutputArg,
    path: Option<&Path>,
) -> anyhow::Result<()> {
    match output {
        OutputArg::Json => {
            let rows: Vec<RecoveredRowJson> = rows
                .iter()
                .map(|r| RecoveredRowJson {
                    word: r.word.iter().map(|j| j + 1).collect(),
                    raw_mean: [r.raw.mean.re, r.raw.mean.im],
                    stderr: r.raw.stderr,
                    scaled: [r.scaled.re, r.scaled.im],
                })
                .collect();
            write_json(&serde_json::json!({ "coefficients": rows }), path)
        }
        OutputArg::Table => {
            println!(
                "{:<16}{:>12}{:>12}{:>10}{:>12}{:>12}",
                "word", "raw_re", "raw_im", "stderr", "scaled_re", "scaled_im"
            );
            for r in rows {
                println!(
                    "{:<16}{:>12.6}{:>12.6}{:>10.6}{:>12.6}{:>12.6}",
                    word_display(&r.word),
                    r.raw.mean.re,
                    r.raw.mean.im,
                    r.raw.stderr,
                    r.scaled.re,
                    r.scaled.im
                );
            }
            Ok(())
        }
    }
}

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::plots::{concentration_chart, energies_chart, solutions_chart};
use super::sweep::{LambdaOutcome, SweepResult};
use super::verdict::SUMMARY_HEADER;
use crate::error::ModelResult;
use crate::vi_solver::SolveReport;

pub const SUMMARY_CSV: &str = "summary.csv";
pub const VERDICT_JSON: &str = "verdict.json";
pub const SVG_FILES: [&str; 3] = [
    "summary_solutions.svg",
    "summary_energies.svg",
    "summary_concentration.svg",
];

fn write_json(path: &Path, value: &impl Serialize) -> ModelResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn with_csv_path(report: &impl Serialize, csv: &str, error: Option<&str>) -> ModelResult<Value> {
    let mut v = serde_json::to_value(report)?;
    if let Value::Object(map) = &mut v {
        map.insert("solution_csv".into(), Value::String(csv.into()));
        map.insert("error".into(), error.map_or(Value::Null, |e| Value::String(e.into())));
    }
    Ok(v)
}

fn write_solution(dir: &Path, stem: &str, report: &SolveReport) -> ModelResult<String> {
    let name = format!("{stem}.csv");
    let mut w = BufWriter::new(File::create(dir.join(&name))?);
    report.solution.write_csv(&mut w)?;
    w.flush()?;
    Ok(name)
}

/// Writes `u.csv`, `u_report.json`, `w.csv`, `w_report.json` and `trace.csv` for one `λ`.
pub fn write_lambda_dir(dir: &Path, outcome: &LambdaOutcome) -> ModelResult<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let u_json = match &outcome.u {
        Some(r) => {
            let csv = write_solution(dir, "u", r)?;
            written.push(dir.join(&csv));
            with_csv_path(r, &csv, outcome.u_error.as_deref())?
        }
        None => json!({ "lambda": outcome.lambda, "error": outcome.u_error }),
    };
    write_json(&dir.join("u_report.json"), &u_json)?;
    written.push(dir.join("u_report.json"));

    let w_json = match &outcome.w {
        Some(r) => {
            let csv = write_solution(dir, "w", &r.solve)?;
            written.push(dir.join(&csv));
            let mut w = BufWriter::new(File::create(dir.join("trace.csv"))?);
            r.write_trace(&mut w)?;
            w.flush()?;
            written.push(dir.join("trace.csv"));
            with_csv_path(r, &csv, outcome.w_error.as_deref())?
        }
        None => json!({ "lambda": outcome.lambda, "error": outcome.w_error }),
    };
    write_json(&dir.join("w_report.json"), &w_json)?;
    written.push(dir.join("w_report.json"));
    Ok(written)
}

pub fn lambda_dir_name(index: usize, lambda: f64) -> String {
    format!("lambda_{index:02}_{lambda}")
}

pub fn summary_csv(result: &SweepResult) -> String {
    let mut s = String::from(SUMMARY_HEADER);
    s.push('\n');
    for r in &result.verdict.records {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

/// Writes the whole sweep under `out`. An empty sweep writes nothing.
pub fn write_sweep(out: &Path, result: &SweepResult) -> ModelResult<Vec<PathBuf>> {
    if result.outcomes.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(out)?;
    let mut written = Vec::new();
    for (i, o) in result.outcomes.iter().enumerate() {
        written.extend(write_lambda_dir(&out.join(lambda_dir_name(i, o.lambda)), o)?);
    }
    let limit_json = match &result.limit {
        Some(l) => {
            let csv = write_solution(out, "limit", &l.report)?;
            written.push(out.join(&csv));
            with_csv_path(&l.report, &csv, None)?
        }
        None => json!({ "error": result.limit_error }),
    };
    write_json(&out.join("limit_report.json"), &limit_json)?;
    written.push(out.join("limit_report.json"));

    fs::write(out.join(SUMMARY_CSV), summary_csv(result))?;
    written.push(out.join(SUMMARY_CSV));
    write_json(&out.join(VERDICT_JSON), &result.verdict)?;
    written.push(out.join(VERDICT_JSON));

    let charts = [
        solutions_chart(result),
        energies_chart(result),
        concentration_chart(result),
    ];
    for (name, chart) in SVG_FILES.iter().zip(charts) {
        fs::write(out.join(name), chart.render())?;
        written.push(out.join(name));
    }
    Ok(written)
}

use std::path::Path;
use std::time::Instant;

use fock_core::dynamics::{scaled_iterate_norms, supercyclicity_report, DynamicsConfig, Evidence, SequenceReport};
use fock_core::fockspace::{fock_norm, membership};
use fock_core::iterates::{convergence_residual, formal_limit, iterate_coeffs};
use fock_core::json::OperatorSpec;
use fock_core::{EntireFunction, ExpQuadratic, WeightedCompOp};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{Report, VERSION};
use crate::verify;

/// A finished run: the report plus the exit code it maps to.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data always serializes")
}

/// Validates, executes, and writes the report (and CSV) when paths are set.
pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    config.validate()?;
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut echo = config.clone();
    let mut exit_code = 0;

    let results = match config.command {
        Command::Classify => {
            let w = build(config, &mut echo)?;
            to_value(&w.classify()?)
        }
        Command::Norm => {
            let spec = config.function.clone().expect("validated");
            let f = EntireFunction::try_from(spec)?;
            let ctx = config.norm_context()?;
            let norm = fock_norm(&f, &ctx, config.tol)?;
            let mut v = to_value(&norm);
            v["membership"] = to_value(&membership(&f, &ctx));
            v
        }
        Command::Iterate => {
            let w = build(config, &mut echo)?;
            iterate(config, &w, &mut warnings)?
        }
        Command::Dynamics => {
            let w = build(config, &mut echo)?;
            dynamics(config, &w, &mut warnings)?
        }
        Command::Verify => {
            let outcomes = verify::run_all(config.seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                warnings.push(format!("{failed} acceptance criteria failed"));
                exit_code = 3;
            }
            json!({ "passed": failed == 0, "criteria": outcomes })
        }
    };

    let report = Report {
        config: echo,
        results,
        version: VERSION,
        wall_time_s: start.elapsed().as_secs_f64(),
        warnings,
        seed: config.seed,
    };
    if let Some(out) = &config.out {
        report.write(out)?;
    }
    Ok(Outcome { report, exit_code })
}

/// Builds the operator and records its canonical spec in the echo.
fn build(config: &RunConfig, echo: &mut RunConfig) -> CliResult<WeightedCompOp> {
    let spec = config.effective_op().expect("validated");
    let w = spec.build()?;
    echo.op = Some(OperatorSpec::from_operator(&w));
    echo.p = None;
    echo.alpha = None;
    echo.flavor = None;
    Ok(w)
}

#[derive(Serialize)]
struct IterateRow {
    n: u32,
    c0n: [f64; 2],
    c1n: [f64; 2],
    c2n: [f64; 2],
    sup_deviation: Option<f64>,
}

fn iterate(config: &RunConfig, w: &WeightedCompOp, warnings: &mut Vec<String>) -> CliResult<Value> {
    let n_max = config.n.unwrap_or(32);
    let limit = match formal_limit(w) {
        Ok(l) => Some(l),
        Err(e) => {
            warnings.push(format!("no coefficient limit, sup_deviation omitted: {e}"));
            None
        }
    };
    let one: EntireFunction = ExpQuadratic::one().into();
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let it = iterate_coeffs(w, n)?;
        let sup_deviation = match &limit {
            Some(l) => Some(convergence_residual(w, l, &one, n, config.grid_radius, config.grid_size)?),
            None => None,
        };
        rows.push(IterateRow {
            n,
            c0n: [it.c0n.re, it.c0n.im],
            c1n: [it.c1n.re, it.c1n.im],
            c2n: [it.c2n.re, it.c2n.im],
            sup_deviation,
        });
    }
    if let Some(path) = &config.csv {
        write_iterate_csv(path, &rows)?;
    }
    Ok(json!({
        "grid_radius": config.grid_radius,
        "grid_size": config.grid_size,
        "limit": limit,
        "rows": rows,
    }))
}

fn write_iterate_csv(path: &Path, rows: &[IterateRow]) -> CliResult<()> {
    let mut wtr = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
    let io = |e: csv::Error| CliError::io(path, e);
    wtr.write_record([
        "n", "c0n_re", "c0n_im", "c1n_re", "c1n_im", "c2n_re", "c2n_im", "sup_deviation",
    ])
    .map_err(io)?;
    for r in rows {
        let dev = r.sup_deviation.map(|d| format!("{d:e}")).unwrap_or_default();
        wtr.write_record([
            r.n.to_string(),
            format!("{:e}", r.c0n[0]),
            format!("{:e}", r.c0n[1]),
            format!("{:e}", r.c1n[0]),
            format!("{:e}", r.c1n[1]),
            format!("{:e}", r.c2n[0]),
            format!("{:e}", r.c2n[1]),
            dev,
        ])
        .map_err(io)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

fn dynamics(config: &RunConfig, w: &WeightedCompOp, warnings: &mut Vec<String>) -> CliResult<Value> {
    let cfg = DynamicsConfig {
        n_max: config.n.unwrap_or(64),
        ..DynamicsConfig::default()
    };
    let verdict = supercyclicity_report(w, &cfg)?;
    let mut sequences: Vec<SequenceReport> = Vec::new();
    match &verdict.evidence {
        Evidence::AngleCriterion(seq) => {
            sequences.push(seq.clone());
            let one: EntireFunction = ExpQuadratic::one().into();
            sequences.push(scaled_iterate_norms(w, &one, cfg.n_max)?);
        }
        Evidence::LimitOperator { residuals, .. } => sequences.push(residuals.clone()),
        _ => {}
    }
    if let Some(path) = &config.csv {
        if sequences.is_empty() {
            warnings.push("this proof case has no sequence; CSV holds only the header".into());
        }
        write_sequence_csv(path, &sequences)?;
    }
    Ok(json!({ "supercyclicity": verdict, "sequences": sequences }))
}

fn write_sequence_csv(path: &Path, seqs: &[SequenceReport]) -> CliResult<()> {
    let mut wtr = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
    let io = |e: csv::Error| CliError::io(path, e);
    wtr.write_record(["sequence", "n", "value", "log_value"]).map_err(io)?;
    for s in seqs {
        for p in &s.values {
            wtr.write_record([
                s.name.clone(),
                p.n.to_string(),
                format!("{:e}", p.value),
                format!("{:e}", p.log_value),
            ])
            .map_err(io)?;
        }
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}

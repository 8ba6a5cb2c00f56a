//! Plot-ready CSV output.
//!
//! Trace files have header `t,trans_err_m,rot_err_rad,vel_err_mps`; aggregate
//! files carry a `_mean`/`_std` pair per metric. Numbers are written with nine
//! significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::metrics::{ErrorRecord, ErrorTrace};
use super::run::AggregateRecord;

pub const TRACE_HEADER: &str = "t,trans_err_m,rot_err_rad,vel_err_mps";
pub const AGGREGATE_HEADER: &str = "t,trans_err_m_mean,trans_err_m_std,rot_err_rad_mean,rot_err_rad_std,vel_err_mps_mean,vel_err_mps_std";

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

fn push_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:.8e}");
    }
    out.push('\n');
}

pub fn trace_to_csv(trace: &ErrorTrace) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    for r in &trace.records {
        push_row(&mut out, &[r.t, r.translation, r.rotation, r.velocity]);
    }
    out
}

pub fn aggregate_to_csv(rows: &[AggregateRecord]) -> String {
    let mut out = format!("{AGGREGATE_HEADER}\n");
    for r in rows {
        push_row(
            &mut out,
            &[
                r.t,
                r.translation_mean,
                r.translation_std,
                r.rotation_mean,
                r.rotation_std,
                r.velocity_mean,
                r.velocity_std,
            ],
        );
    }
    out
}

fn write(path: &Path, body: &str) -> Result<(), CsvError> {
    fs::write(path, body).map_err(|source| CsvError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_trace_csv(trace: &ErrorTrace, path: &Path) -> Result<(), CsvError> {
    write(path, &trace_to_csv(trace))
}

pub fn write_aggregate_csv(rows: &[AggregateRecord], path: &Path) -> Result<(), CsvError> {
    write(path, &aggregate_to_csv(rows))
}

/// Reads a file written by [`write_trace_csv`].
pub fn read_trace_csv(path: &Path) -> Result<ErrorTrace, CsvError> {
    let text = fs::read_to_string(path).map_err(|source| CsvError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_err = |line: usize, reason: String| CsvError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_HEADER) {
        return Err(parse_err(1, "missing trace header".into()));
    }
    let records = lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Result<Vec<f64>, _> = line.split(',').map(str::parse).collect();
            match fields
                .map_err(|e| parse_err(i + 2, format!("{e}")))?
                .as_slice()
            {
                &[t, translation, rotation, velocity] => Ok(ErrorRecord {
                    t,
                    translation,
                    rotation,
                    velocity,
                }),
                f => Err(parse_err(
                    i + 2,
                    format!("expected 4 fields, got {}", f.len()),
                )),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(ErrorTrace { records })
}

//! JSON and CSV renderings. Rationals are `p/q` strings and floating values
//! are decimal strings at the working precision; see `docs/schema.json`.

use std::io::Write;

use biracah::numcore::rational;
use biracah::racah::RacahMatrix;
use biracah::spherewave::ContextEcho;
use biracah::{BiParams, Hp, VerifyReport};
use clap::ValueEnum;
use serde::Serialize;

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // reader went away, e.g. `| head`
            return Failure::Closed;
        }
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => io.into(),
            other => Failure::Usage(format!("cannot write output: {other:?}")),
        }
    }
}

#[derive(Serialize)]
struct BiTable {
    rho1: String,
    rho2: String,
    r1: String,
    r2: String,
    #[serde(rename = "N")]
    n: usize,
    grid: Vec<String>,
    weights: Vec<String>,
    eigenvalues: Vec<String>,
    a: Vec<String>,
    c: Vec<String>,
    #[serde(rename = "h_N")]
    h_n: String,
    /// `values[S][n] = B_n(x_S)`
    values: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct RacahOut {
    context: ContextEcho,
    precision: u32,
    corrupt_phase: bool,
    /// `matrix[S][K]`
    matrix: Vec<Vec<String>>,
    orthogonality_residual: String,
}

fn json<T: Serialize>(v: &T, out: &mut impl Write) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| match e.io_error_kind() {
        Some(kind) => std::io::Error::from(kind).into(),
        None => Failure::Usage(e.to_string()),
    })?;
    writeln!(out)?;
    Ok(())
}

fn long_csv(rows: Vec<[String; 4]>, out: &mut impl Write) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["quantity", "i", "j", "value"])?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

fn row(q: &str, i: Option<usize>, j: Option<usize>, v: String) -> [String; 4] {
    let idx = |x: Option<usize>| x.map(|x| x.to_string()).unwrap_or_default();
    [q.to_string(), idx(i), idx(j), v]
}

fn hp(v: &Hp) -> String {
    v.to_sci_string(v.precision().decimal_digits())
}

pub fn bi_table(p: &BiParams, format: Format, out: &mut impl Write) -> Result<(), Failure> {
    let s = rational::to_string;
    let size = p.truncation() + 1;
    let coeffs = (0..size).map(|n| p.recurrence_coeffs(n)).collect::<Result<Vec<_>, _>>()?;
    let table = BiTable {
        rho1: s(p.rho1()),
        rho2: s(p.rho2()),
        r1: s(p.r1()),
        r2: s(p.r2()),
        n: p.truncation(),
        grid: (0..size).map(|i| s(&p.grid(i))).collect(),
        weights: p.weights()?.iter().map(s).collect(),
        eigenvalues: (0..size).map(|n| s(&p.eigenvalue(n))).collect(),
        a: coeffs.iter().map(|(a, _)| s(a)).collect(),
        c: coeffs.iter().map(|(_, c)| s(c)).collect(),
        h_n: s(&p.h_n()?),
        values: (0..size).map(|i| p.bi_values(&p.grid(i)).iter().map(s).collect()).collect(),
    };
    match format {
        Format::Json => json(&table, out),
        Format::Csv => {
            let mut rows = Vec::new();
            for (name, v) in [("x", &table.grid), ("w", &table.weights), ("lambda", &table.eigenvalues), ("a", &table.a), ("c", &table.c)] {
                rows.extend(v.iter().enumerate().map(|(i, x)| row(name, Some(i), None, x.clone())));
            }
            rows.push(row("h_N", None, None, table.h_n.clone()));
            for (i, vals) in table.values.iter().enumerate() {
                rows.extend(vals.iter().enumerate().map(|(n, x)| row("B", Some(i), Some(n), x.clone())));
            }
            long_csv(rows, out)
        }
    }
}

pub fn racah(m: &RacahMatrix, corrupt_phase: bool, format: Format, out: &mut impl Write) -> Result<(), Failure> {
    let matrix: Vec<Vec<String>> = m.entries.iter().map(|r| r.iter().map(hp).collect()).collect();
    match format {
        Format::Json => json(
            &RacahOut {
                context: m.context.echo(),
                precision: m.precision.decimal_digits(),
                corrupt_phase,
                matrix,
                orthogonality_residual: hp(&m.orthogonality_residual),
            },
            out,
        ),
        Format::Csv => {
            let mut rows = Vec::new();
            for (s, r) in matrix.into_iter().enumerate() {
                rows.extend(r.into_iter().enumerate().map(|(k, v)| row("R", Some(s), Some(k), v)));
            }
            rows.push(row("residual", None, None, hp(&m.orthogonality_residual)));
            long_csv(rows, out)
        }
    }
}

pub fn report(r: &VerifyReport, format: Format, out: &mut impl Write) -> Result<(), Failure> {
    match format {
        Format::Json => json(r, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "max_abs_err", "max_rel_err", "tolerance", "pass"])?;
            for c in &r.checks {
                w.write_record([&c.name, &c.max_abs_err, &c.max_rel_err, &c.tolerance, &c.pass.to_string()])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

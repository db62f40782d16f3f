//! Batch tables: one row per `(q, p, ideal)`, written as CSV or JSON with
//! the same values in both.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{Map, Value};

use tricover_core::covers::{analyze, ClassifyOptions, CoverReport, GenusLevel};
use tricover_core::numtheory::{check_q, is_prime};
use tricover_core::residue::{primes_above, TriangleParams};
use tricover_core::{Error, Result};

use crate::json::big;

pub const COLUMNS: [&str; 13] = [
    "q",
    "p",
    "ideal_index",
    "e",
    "f",
    "residue_order",
    "galois_label",
    "index_mu_bar",
    "genus_full",
    "genus_borel",
    "degenerate",
    "oracle_checked",
    "note",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(BigUint),
    Text(String),
    Flag(bool),
    Blank,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Blank => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => big(n),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Blank => Value::Null,
        }
    }
}

/// One table record, cells in [`COLUMNS`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow(pub Vec<Cell>);

impl TableRow {
    pub fn from_report(r: &CoverReport) -> Self {
        let int = |n: u64| Cell::Int(BigUint::from(n));
        let opt = |n: &Option<BigUint>| n.clone().map_or(Cell::Blank, Cell::Int);
        TableRow(vec![
            int(r.q),
            int(r.p),
            int(r.ideal.index as u64),
            int(r.ideal.e as u64),
            int(r.ideal.f as u64),
            Cell::Int(r.residue_order()),
            Cell::Text(r.galois.label()),
            Cell::Int(r.index_mu_bar.clone()),
            opt(&r.genus_full),
            opt(&r.genus_borel),
            Cell::Flag(r.degenerate),
            Cell::Flag(r.oracle_checked),
            if r.notes.is_empty() {
                Cell::Blank
            } else {
                Cell::Text(r.notes.join("; "))
            },
        ])
    }

    pub fn get(&self, column: &str) -> Option<&Cell> {
        COLUMNS
            .iter()
            .position(|c| *c == column)
            .map(|i| &self.0[i])
    }
}

/// Rows for every ideal above every `p` in `ps`, for every `q` in `qs`,
/// ordered by q, then p, then ideal index. Rows are computed in parallel.
pub fn build_rows(
    qs: &[u64],
    ps: &[u64],
    level: GenusLevel,
    opts: ClassifyOptions,
) -> Result<Vec<TableRow>> {
    for &q in qs {
        check_q(q)?;
    }
    for &p in ps {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let mut qs = qs.to_vec();
    let mut ps = ps.to_vec();
    qs.sort_unstable();
    qs.dedup();
    ps.sort_unstable();
    ps.dedup();

    let mut jobs = Vec::new();
    for &q in &qs {
        let params = TriangleParams::new(q)?;
        for &p in &ps {
            for ideal in primes_above(q, p)? {
                jobs.push((params.clone(), ideal));
            }
        }
    }
    jobs.par_iter()
        .map(|(params, ideal)| {
            analyze(params, ideal, opts, level).map(|r| TableRow::from_report(&r))
        })
        .collect()
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory write");
    for row in rows {
        w.write_record(row.0.iter().map(Cell::csv))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

pub fn to_json(rows: &[TableRow]) -> String {
    let records: Vec<Value> = rows
        .iter()
        .map(|row| {
            let m: Map<String, Value> = COLUMNS
                .iter()
                .zip(&row.0)
                .map(|(k, c)| (k.to_string(), c.json()))
                .collect();
            Value::Object(m)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(records)).expect("serializable");
    s.push('\n');
    s
}

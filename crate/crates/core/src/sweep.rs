//! Exhaustive verification over every admissible (p, e, alpha, a, c) below a
//! bound on q.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{CodeSpec, Theorem};
use crate::cwe::{verify, Mode, Verdict};
use crate::error::{Error, Result};
use crate::field::{Field, FieldParams};
use crate::poly::is_prime;

/// One (p, e, alpha, a, c) with a closed-form regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub p: u32,
    pub e: u32,
    pub alpha: u32,
    pub a: u32,
    pub c: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(flatten)]
    pub cell: Cell,
    pub d: u32,
    pub theorem: Theorem,
    pub n: u64,
    /// Absent in single-side modes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub diffs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub max_q: u64,
    pub primes: Vec<u32>,
    pub rows: Vec<SweepRow>,
    pub mismatches: Vec<Cell>,
}

impl SweepSummary {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn check_primes(primes: &[u32]) -> Result<()> {
    match primes.iter().find(|&&p| p < 3 || !is_prime(p as u64)) {
        Some(p) => Err(Error::param(format!("{p} is not an odd prime"))),
        None => Ok(()),
    }
}

/// Fields (p, e) with e even, e >= `min_e` and p^e <= max_q, in increasing
/// (p, e) order.
pub fn fields_up_to(max_q: u64, primes: &[u32], min_e: u32) -> Vec<(u32, u32)> {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        let mut e = min_e.max(2);
        e += e % 2;
        while (p as u128).pow(e) <= max_q as u128 {
            out.push((p, e));
            e += 2;
        }
    }
    out
}

/// alpha in 1..e with d = gcd(alpha, e) dividing m = e/2.
pub fn admissible_alphas(e: u32) -> Vec<u32> {
    (1..e).filter(|&alpha| (e / 2).is_multiple_of(gcd(alpha, e))).collect()
}

/// Every cell with e >= 4, p^e <= max_q, alpha admissible, a in F_p and
/// c in F_p^*. Extension degree 2 is left out: there a = 0 gives an empty
/// defining set.
pub fn admissible_cells(max_q: u64, primes: &[u32]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (p, e) in fields_up_to(max_q, primes, 4) {
        for alpha in admissible_alphas(e) {
            for a in 0..p {
                for c in 1..p {
                    cells.push(Cell { p, e, alpha, a, c });
                }
            }
        }
    }
    cells
}

/// Runs [`verify`] on every admissible cell. Rows come out in cell order
/// regardless of scheduling.
pub fn run_sweep(max_q: u64, primes: &[u32], cap: u64, mode: Mode) -> Result<SweepSummary> {
    check_primes(primes)?;
    let cells = admissible_cells(max_q, primes);
    if cells.is_empty() {
        return Err(Error::param("no admissible parameters"));
    }
    let mut field_keys: Vec<(u32, u32, u32)> = cells.iter().map(|c| (c.p, c.e, c.alpha)).collect();
    field_keys.dedup();
    let fields = field_keys
        .par_iter()
        .map(|&(p, e, alpha)| Ok(((p, e, alpha), Arc::new(Field::new(FieldParams::with_cap(p, e, alpha, cap)?)?))))
        .collect::<Result<std::collections::HashMap<_, _>>>()?;

    let rows = cells
        .par_iter()
        .map(|cell| {
            let field = fields[&(cell.p, cell.e, cell.alpha)].clone();
            let d = field.params().d();
            let spec = CodeSpec::new(field, cell.a, cell.c)?;
            let report = verify(&spec, mode)?;
            Ok(SweepRow { cell: *cell, d, theorem: report.theorem, n: report.n, verdict: report.verdict, diffs: report.diffs.len() })
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = rows.iter().filter(|r| r.verdict == Some(Verdict::Mismatch)).map(|r| r.cell).collect();
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    Ok(SweepSummary { max_q, primes, rows, mismatches })
}

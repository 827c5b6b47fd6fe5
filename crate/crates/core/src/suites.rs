//! Oracle suites comparing each closed-form identity with direct evaluation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::char_sums::{
    additive_sums_all, coulter_case, coulter_histograms_all_b, coulter_sum_closed_with, eta, gauss_sum, l_p_closed,
    l_p_sum, legendre, prime_gauss_sum, residue_class_cardinalities, residue_class_cardinalities_closed, s_p_closed,
    s_p_sum, CoulterCase, CyclotomicInt, LinearizedMap,
};
use crate::code::{n_a_closed, solvable_b_census};
use crate::error::{Error, Result};
use crate::field::{Field, FieldParams, MdParity, PrimeResidue};
use crate::sweep::check_primes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Legendre,
    Gauss,
    Census,
    Coulter,
}

/// Aggregated result of one check over a family of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub check: String,
    pub params: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteRow {
    fn new(check: &str, params: String) -> Self {
        SuiteRow { check: check.into(), params, cases: 0, failures: 0, note: None }
    }

    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

/// Literal Coulter closed form versus enumeration for one
/// (field, alpha, case) family where they disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoulterWarning {
    pub p: u32,
    pub e: u32,
    pub alpha: u32,
    pub case: CoulterCase,
    pub pairs: u64,
    /// Disagreements where the closed form is exactly the negated sum.
    pub sign_flips: u64,
    /// Any other disagreement; nonzero fails the suite.
    pub other: u64,
    /// First disagreeing pair, by lexicographic index of a then b.
    pub example_a: Vec<u32>,
    pub example_b: Vec<u32>,
    pub brute: CyclotomicInt,
    pub closed: CyclotomicInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub kind: SuiteKind,
    pub rows: Vec<SuiteRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<CoulterWarning>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(kind: SuiteKind, rows: Vec<SuiteRow>, warnings: Vec<CoulterWarning>) -> Self {
        let pass = rows.iter().all(|r| r.failures == 0) && warnings.iter().all(|w| w.other == 0);
        SuiteReport { kind, rows, warnings, pass }
    }
}

/// Which fields a field-based suite visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSelection {
    /// (p, e) pairs.
    pub fields: Vec<(u32, u32)>,
    /// Restrict to one alpha; otherwise every alpha in 1..e applicable to
    /// the suite.
    pub alpha: Option<u32>,
    pub cap: u64,
}

/// The two weighted Legendre sums over F_p and the residue-class
/// cardinalities, closed form against direct count, for each prime.
pub fn legendre_suite(primes: &[u32]) -> Result<SuiteReport> {
    check_primes(primes)?;
    let mut rows = Vec::new();
    for &p in primes {
        let pi = p as i64;
        let mut s_rows = SuiteRow::new("s_p_sum", format!("p={p}"));
        for a in 1..pi {
            for i in 1..pi {
                s_rows.record(s_p_sum(a, i, p)? == s_p_closed(a, i, p)?);
            }
        }
        let mut l_rows = SuiteRow::new("l_p_sum", format!("p={p}"));
        for c in 1..pi {
            l_rows.record(l_p_sum(c, p)? == l_p_closed(p)?);
        }
        let mut card = SuiteRow::new("residue_class_cardinalities", format!("p={p}"));
        let closed = residue_class_cardinalities_closed(p)?;
        for a in 1..pi {
            for c in 1..pi {
                card.record(residue_class_cardinalities(a, c, p)? == closed);
            }
        }
        card.note = Some(format!(
            "N+={} N-={} M+={} M-={}",
            closed.n_plus, closed.n_minus, closed.m_plus, closed.m_minus
        ));
        rows.extend([s_rows, l_rows, card]);
    }
    Ok(SuiteReport::new(SuiteKind::Legendre, rows, Vec::new()))
}

fn field_label(p: u32, e: u32) -> String {
    format!("p={p} e={e}")
}

/// Additive orthogonality and G^2 = eta(-1) q for each field, plus the
/// prime-field Gauss sum.
pub fn gauss_suite(sel: &FieldSelection) -> Result<SuiteReport> {
    let per_field = sel
        .fields
        .par_iter()
        .map(|&(p, e)| -> Result<Vec<SuiteRow>> {
            let field = Field::new(FieldParams::with_cap(p, e, 1, sel.cap)?)?;
            let q = field.q() as i64;
            let mut orth = SuiteRow::new("orthogonality", field_label(p, e));
            for (i, s) in additive_sums_all(&field).iter().enumerate() {
                let expected = if i == 0 { q } else { 0 };
                orth.record(*s == CyclotomicInt::from_integer(p, expected));
            }
            let mut gauss = SuiteRow::new("gauss_square", field_label(p, e));
            let g = gauss_sum(&field);
            let sign = eta(&field, &field.neg(&field.one()))?.value();
            gauss.record(&g * &g == CyclotomicInt::from_integer(p, sign * q));
            gauss.note = Some(format!("eta(-1)={sign}"));
            Ok(vec![orth, gauss])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<SuiteRow> = per_field.into_iter().flatten().collect();
    let mut primes: Vec<u32> = sel.fields.iter().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let mut row = SuiteRow::new("prime_gauss_square", format!("p={p}"));
        let g = prime_gauss_sum(p);
        row.record(&g * &g == CyclotomicInt::from_integer(p, legendre(-1, p).value() * p as i64));
        rows.push(row);
    }
    Ok(SuiteReport::new(SuiteKind::Gauss, rows, Vec::new()))
}

fn alphas_for(e: u32, sel: &FieldSelection, require_d_divides_m: bool) -> Vec<u32> {
    match sel.alpha {
        Some(alpha) => vec![alpha],
        None if require_d_divides_m => crate::sweep::admissible_alphas(e),
        None => (1..e).collect(),
    }
}

/// Census of solvable b against the |S| counts; the census itself checks
/// that every solution set has a single trace class.
pub fn census_suite(sel: &FieldSelection) -> Result<SuiteReport> {
    let jobs: Vec<(u32, u32, u32)> = sel
        .fields
        .iter()
        .flat_map(|&(p, e)| alphas_for(e, sel, true).into_iter().map(move |alpha| (p, e, alpha)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(p, e, alpha)| -> Result<SuiteRow> {
            let field = Field::new(FieldParams::with_cap(p, e, alpha, sel.cap)?)?;
            let params = field.params();
            let parity = params.md_parity().ok_or_else(|| {
                Error::param(format!("alpha = {alpha} gives d = {} not dividing m = {}", params.d(), params.m()))
            })?;
            let mut row = SuiteRow::new("census", format!("p={p} e={e} alpha={alpha}"));
            let census = solvable_b_census(&field)?;
            let kernel = match parity {
                MdParity::Even => params.p_pow(2 * params.d()),
                MdParity::Odd => 1,
            };
            row.record(census.solvable() * kernel == field.q());
            for (t, &count) in census.classes.iter().enumerate() {
                let n_a = n_a_closed(params, PrimeResidue::new(t as i64, p))?;
                row.record(count * kernel == n_a);
            }
            let classes: Vec<String> = census.classes.iter().enumerate().map(|(t, n)| format!("{t}={n}")).collect();
            row.note = Some(format!("unsolvable={} {}", census.unsolvable, classes.join(" ")));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new(SuiteKind::Census, rows, Vec::new()))
}

struct CoulterTally {
    row: SuiteRow,
    warnings: Vec<CoulterWarning>,
}

fn coulter_field(p: u32, e: u32, alpha: u32, cap: u64) -> Result<CoulterTally> {
    let field = Field::new(FieldParams::with_cap(p, e, alpha, cap)?)?;
    let q = field.q();
    let mut row = SuiteRow::new("coulter_total", format!("p={p} e={e} alpha={alpha}"));
    let mut warnings: Vec<CoulterWarning> = Vec::new();
    for a in field.elements().skip(1) {
        let map = LinearizedMap::new(&field, &a)?;
        let case = coulter_case(&field, &a)?;
        for (i, hist) in coulter_histograms_all_b(&field, &a)?.iter().enumerate() {
            // substituting zeta = 1 in the unreduced sum counts the terms
            row.record(hist.iter().sum::<u64>() == q);
            let b = field.element_at(i as u64);
            let brute = CyclotomicInt::from_counts(hist);
            let closed = coulter_sum_closed_with(&field, &map, case, &a, &b)?;
            let slot = match warnings.iter().position(|w| w.case == case) {
                Some(k) => k,
                None => {
                    warnings.push(CoulterWarning {
                        p,
                        e,
                        alpha,
                        case,
                        pairs: 0,
                        sign_flips: 0,
                        other: 0,
                        example_a: Vec::new(),
                        example_b: Vec::new(),
                        brute: CyclotomicInt::zero(p),
                        closed: CyclotomicInt::zero(p),
                    });
                    warnings.len() - 1
                }
            };
            let w = &mut warnings[slot];
            w.pairs += 1;
            if closed == brute {
                continue;
            }
            if closed == -&brute {
                w.sign_flips += 1;
            } else {
                w.other += 1;
            }
            if w.example_a.is_empty() {
                w.example_a = a.coeffs().to_vec();
                w.example_b = b.coeffs().to_vec();
                w.brute = brute;
                w.closed = closed;
            }
        }
    }
    warnings.retain(|w| w.sign_flips + w.other > 0);
    Ok(CoulterTally { row, warnings })
}

/// Enumerated S_alpha(a, b) for every a != 0 and b against the literal
/// closed form. Sign-only disagreements become warnings.
pub fn coulter_suite(sel: &FieldSelection) -> Result<SuiteReport> {
    let jobs: Vec<(u32, u32, u32)> = sel
        .fields
        .iter()
        .flat_map(|&(p, e)| alphas_for(e, sel, false).into_iter().map(move |alpha| (p, e, alpha)))
        .collect();
    let tallies = jobs
        .par_iter()
        .map(|&(p, e, alpha)| coulter_field(p, e, alpha, sel.cap))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for t in tallies {
        rows.push(t.row);
        warnings.extend(t.warnings);
    }
    Ok(SuiteReport::new(SuiteKind::Coulter, rows, warnings))
}

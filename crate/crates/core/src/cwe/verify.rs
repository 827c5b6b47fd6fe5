use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::code::{solvable_b_census, Census, Code, CodeSpec, Composition, Theorem};
use crate::error::{Error, Result};
use crate::field::FieldParams;

use super::brute::cwe_of_code;
use super::closed::cwe_closed_tagged;
use super::{table_closed, table_rows, weight_distribution_of, CwePolynomial, WeightDistribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Both,
    Brute,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedTerm {
    pub composition: Composition,
    pub frequency: u64,
    pub tags: Vec<String>,
}

/// The closed-form CWE with each merged term labelled by the formal terms
/// it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedCwe {
    pub n: u64,
    pub terms: Vec<TaggedTerm>,
}

impl TaggedCwe {
    fn new(cwe: &CwePolynomial, mut tags: BTreeMap<Composition, Vec<String>>) -> Self {
        let terms = cwe
            .terms()
            .iter()
            .map(|(c, &f)| TaggedTerm { composition: c.clone(), frequency: f, tags: tags.remove(c).unwrap_or_default() })
            .collect();
        TaggedCwe { n: cwe.n(), terms }
    }

    pub fn to_cwe(&self) -> Result<CwePolynomial> {
        let mut cwe = CwePolynomial::new(self.n);
        for t in &self.terms {
            cwe.add(t.composition.clone(), t.frequency)?;
        }
        Ok(cwe)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Diff {
    /// A composition whose frequency differs between the two CWEs.
    Term { composition: Composition, brute: u64, closed: u64 },
    /// A weight whose multiplicity differs between the enumerated
    /// distribution and the closed-form table.
    Weight { w: u64, brute: u64, table: u64 },
}

/// A formal table row as printed: expressions and their values, before
/// zero rows are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalRow {
    pub weight_expr: String,
    pub w: i64,
    pub multiplicity_expr: String,
    #[serde(rename = "A")]
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSetSummary {
    pub a: u32,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: FieldParams,
    pub a: u32,
    pub c: u32,
    pub theorem: Theorem,
    pub mode: Mode,
    pub n: u64,
    pub defining_set: DefiningSetSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<CwePolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<TaggedCwe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_distribution: Option<WeightDistribution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_distribution: Option<WeightDistribution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<FormalRow>>,
    /// Present only when both sides were computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub diffs: Vec<Diff>,
}

impl VerificationReport {
    pub fn is_match(&self) -> bool {
        self.verdict != Some(Verdict::Mismatch)
    }
}

fn term_diffs(brute: &CwePolynomial, closed: &CwePolynomial) -> Vec<Diff> {
    let keys: BTreeSet<&Composition> = brute.terms().keys().chain(closed.terms().keys()).collect();
    keys.into_iter()
        .filter_map(|c| {
            let (b, k) = (brute.frequency(c), closed.frequency(c));
            (b != k).then(|| Diff::Term { composition: c.clone(), brute: b, closed: k })
        })
        .collect()
}

fn weight_diffs(brute: &WeightDistribution, table: &WeightDistribution) -> Vec<Diff> {
    let keys: BTreeSet<u64> = brute.rows().keys().chain(table.rows().keys()).copied().collect();
    keys.into_iter()
        .filter_map(|w| {
            let b = brute.rows().get(&w).copied().unwrap_or(0);
            let t = table.rows().get(&w).copied().unwrap_or(0);
            (b != t).then_some(Diff::Weight { w, brute: b, table: t })
        })
        .collect()
}

/// Builds the report for one spec. Mismatches are an outcome, not an error.
pub fn verify(spec: &CodeSpec, mode: Mode) -> Result<VerificationReport> {
    let theorem = spec.theorem()?;
    let run_brute = mode != Mode::Closed;
    let run_closed = mode != Mode::Brute;

    let closed = if run_closed {
        let (cwe, tags) = cwe_closed_tagged(spec)?;
        let table = table_closed(spec)?;
        let formal = table_rows(spec)?
            .into_iter()
            .map(|r| {
                Ok(FormalRow {
                    weight_expr: r.weight_expr.into(),
                    w: i64::try_from(r.weight).map_err(|_| Error::Internal("table weight overflow".into()))?,
                    multiplicity_expr: r.multiplicity_expr.into(),
                    a: i64::try_from(r.multiplicity)
                        .map_err(|_| Error::Internal("table multiplicity overflow".into()))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some((cwe, tags, table, formal))
    } else {
        None
    };
    let brute = if run_brute {
        let code = Code::new(spec.clone())?;
        let cwe = cwe_of_code(&code)?;
        let census = solvable_b_census(spec.field())?;
        Some((cwe, census))
    } else {
        None
    };

    let n = match (&brute, &closed) {
        (Some((cwe, _)), _) => cwe.n(),
        (None, Some((cwe, _, _, _))) => cwe.n(),
        (None, None) => unreachable!("at least one side always runs"),
    };

    let mut report = VerificationReport {
        field: spec.params().clone(),
        a: spec.a().value(),
        c: spec.c().value(),
        theorem,
        mode,
        n,
        defining_set: DefiningSetSummary { a: spec.a().value(), n, census: None },
        brute: None,
        closed: None,
        brute_distribution: None,
        table_distribution: None,
        table: None,
        verdict: None,
        diffs: Vec::new(),
    };
    if let Some((cwe, census)) = brute {
        report.brute_distribution = Some(weight_distribution_of(&cwe));
        report.defining_set.census = Some(census);
        report.brute = Some(cwe);
    }
    if let Some((cwe, tags, table, formal)) = closed {
        report.closed = Some(TaggedCwe::new(&cwe, tags));
        report.table_distribution = Some(table);
        report.table = Some(formal);
        if let (Some(b), Some(bd), Some(td)) = (&report.brute, &report.brute_distribution, &report.table_distribution) {
            report.diffs = term_diffs(b, &cwe);
            report.diffs.extend(weight_diffs(bd, td));
            report.verdict = Some(if report.diffs.is_empty() { Verdict::Match } else { Verdict::Mismatch });
        }
    }
    Ok(report)
}

/// Recomputes the verdict after the closed side was edited; used to check
/// that the comparison is sensitive to every frequency.
#[cfg(test)]
pub(crate) fn reverdict(report: &mut VerificationReport) -> Result<()> {
    let brute = report.brute.as_ref().expect("brute side");
    let closed = report.closed.as_ref().expect("closed side").to_cwe()?;
    report.diffs = term_diffs(brute, &closed);
    report.diffs.extend(weight_diffs(
        report.brute_distribution.as_ref().expect("brute distribution"),
        &weight_distribution_of(&closed),
    ));
    report.verdict = Some(if report.diffs.is_empty() { Verdict::Match } else { Verdict::Mismatch });
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Field;

    fn spec(p: u32, e: u32, alpha: u32, a: u32, c: u32) -> CodeSpec {
        CodeSpec::new(Arc::new(Field::build(p, e, alpha).unwrap()), a, c).unwrap()
    }

    #[test]
    fn small_cases_match() {
        for (p, e, alpha, a, c) in [(3, 4, 1, 1, 1), (3, 6, 1, 0, 1), (3, 4, 1, 0, 2), (5, 4, 1, 2, 1)] {
            let r = verify(&spec(p, e, alpha, a, c), Mode::Both).unwrap();
            assert_eq!(r.verdict, Some(Verdict::Match), "{:?}", r.diffs);
            assert!(r.diffs.is_empty());
        }
    }

    #[test]
    fn single_side_modes_have_no_verdict() {
        let s = spec(3, 4, 1, 1, 1);
        let brute = verify(&s, Mode::Brute).unwrap();
        assert!(brute.closed.is_none() && brute.verdict.is_none());
        assert!(brute.defining_set.census.is_some());
        let closed = verify(&s, Mode::Closed).unwrap();
        assert!(closed.brute.is_none() && closed.verdict.is_none());
        assert_eq!(closed.n, 36);
    }

    #[test]
    fn perturbing_any_frequency_flips_the_verdict() {
        let s = spec(3, 4, 1, 1, 1);
        let base = verify(&s, Mode::Both).unwrap();
        let terms = base.closed.as_ref().unwrap().terms.len();
        for i in 0..terms {
            for delta in [1i64, -1] {
                let mut r = base.clone();
                let t = &mut r.closed.as_mut().unwrap().terms[i];
                t.frequency = (t.frequency as i64 + delta) as u64;
                reverdict(&mut r).unwrap();
                assert_eq!(r.verdict, Some(Verdict::Mismatch));
                assert!(r.diffs.iter().any(|d| matches!(d, Diff::Term { .. })));
            }
        }
        let mut same = base.clone();
        reverdict(&mut same).unwrap();
        assert_eq!(same.verdict, Some(Verdict::Match));
    }

    #[test]
    fn report_json_round_trips() {
        let r = verify(&spec(3, 4, 1, 1, 1), Mode::Both).unwrap();
        let json = serde_json::to_string_pretty(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}

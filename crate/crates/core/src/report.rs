//! Rendering of verification, sweep and suite results as JSON, CSV or
//! aligned text tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::char_sums::CoulterCase;
use crate::code::Composition;
use crate::cwe::{Mode, Verdict, VerificationReport};
use crate::error::{Error, Result};
use crate::suites::SuiteReport;
use crate::sweep::SweepSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn hyphenated(c: &Composition) -> String {
    c.counts().iter().map(u64::to_string).collect::<Vec<_>>().join("-")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn verdict_str(v: Option<Verdict>) -> &'static str {
    match v {
        Some(Verdict::Match) => "match",
        Some(Verdict::Mismatch) => "mismatch",
        None => "-",
    }
}

fn mode_str(m: Mode) -> &'static str {
    match m {
        Mode::Both => "both",
        Mode::Brute => "brute",
        Mode::Closed => "closed",
    }
}

fn case_str(c: CoulterCase) -> &'static str {
    match c {
        CoulterCase::OddQuotient => "odd_quotient",
        CoulterCase::EvenPermutation => "even_permutation",
        CoulterCase::EvenNonPermutation => "even_non_permutation",
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Left-aligned columns separated by two spaces.
fn text_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

/// (kind, key, brute, closed) rows: one per composition, then one per
/// weight. Blank cells mark a side that was not computed.
fn verify_rows(r: &VerificationReport) -> Vec<[String; 4]> {
    let mut keys: Vec<&Composition> = Vec::new();
    if let Some(b) = &r.brute {
        keys.extend(b.terms().keys());
    }
    if let Some(c) = &r.closed {
        keys.extend(c.terms.iter().map(|t| &t.composition));
    }
    keys.sort();
    keys.dedup();
    let closed_freq = |k: &Composition| {
        r.closed.as_ref().map(|c| c.terms.iter().find(|t| &t.composition == k).map_or(0, |t| t.frequency))
    };
    let mut rows: Vec<[String; 4]> = keys
        .into_iter()
        .map(|k| {
            ["term".into(), hyphenated(k), opt(r.brute.as_ref().map(|b| b.frequency(k))), opt(closed_freq(k))]
        })
        .collect();

    let mut weights: Vec<u64> = Vec::new();
    for d in [&r.brute_distribution, &r.table_distribution].into_iter().flatten() {
        weights.extend(d.rows().keys());
    }
    weights.sort_unstable();
    weights.dedup();
    let at = |d: &Option<crate::cwe::WeightDistribution>, w: u64| {
        d.as_ref().map(|d| d.rows().get(&w).copied().unwrap_or(0))
    };
    rows.extend(weights.into_iter().map(|w| {
        ["weight".into(), w.to_string(), opt(at(&r.brute_distribution, w)), opt(at(&r.table_distribution, w))]
    }));
    rows
}

pub fn render_verify(r: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut rows = vec![["kind", "key", "brute", "closed"].map(String::from).to_vec()];
            rows.extend(verify_rows(r).into_iter().map(|r| r.to_vec()));
            csv_string(rows)
        }
        Format::Text => Ok(verify_text(r)),
    }
}

fn verify_text(r: &VerificationReport) -> String {
    let f = &r.field;
    let mut out = String::new();
    let modulus = f.modulus().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "field    p={} e={} alpha={} d={} modulus=[{modulus}]", f.p(), f.e(), f.alpha(), f.d());
    let _ = writeln!(out, "code     a={} c={} theorem={} n={} mode={}", r.a, r.c, r.theorem, r.n, mode_str(r.mode));
    if let Some(c) = &r.defining_set.census {
        let classes: Vec<String> = c.classes.iter().enumerate().map(|(i, n)| format!("{i}={n}")).collect();
        let _ = writeln!(out, "census   unsolvable={} {}", c.unsolvable, classes.join(" "));
    }

    let rows = verify_rows(r);
    let tags = |key: &str| -> String {
        r.closed
            .as_ref()
            .and_then(|c| c.terms.iter().find(|t| hyphenated(&t.composition) == key))
            .map(|t| t.tags.join(" "))
            .unwrap_or_default()
    };
    let term_rows: Vec<Vec<String>> = rows
        .iter()
        .filter(|r| r[0] == "term")
        .map(|r| {
            let comp = format!("({})", r[1].replace('-', ","));
            vec![comp, dash(&r[2]), dash(&r[3]), tags(&r[1])]
        })
        .collect();
    out.push_str("\ncomplete weight enumerator\n");
    out.push_str(&text_table(&["composition", "brute", "closed", "terms"], &term_rows));

    let weight_rows: Vec<Vec<String>> = rows
        .iter()
        .filter(|r| r[0] == "weight")
        .map(|r| vec![r[1].clone(), dash(&r[2]), dash(&r[3])])
        .collect();
    out.push_str("\nweight distribution\n");
    out.push_str(&text_table(&["w", "brute", "table"], &weight_rows));

    if let Some(table) = &r.table {
        let formal: Vec<Vec<String>> = table
            .iter()
            .map(|t| vec![t.weight_expr.clone(), t.w.to_string(), t.multiplicity_expr.clone(), t.a.to_string()])
            .collect();
        out.push_str("\nformal table rows\n");
        out.push_str(&text_table(&["weight", "w", "multiplicity", "A"], &formal));
    }

    if !r.diffs.is_empty() {
        out.push_str("\ndifferences\n");
        for d in &r.diffs {
            let _ = writeln!(out, "{}", serde_json::to_string(d).unwrap_or_default());
        }
    }
    let _ = writeln!(out, "\nverdict: {}", verdict_str(r.verdict));
    out
}

fn dash(s: &str) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.into()
    }
}

pub fn render_sweep(s: &SweepSummary, format: Format) -> Result<String> {
    const HEADERS: [&str; 10] = ["p", "e", "alpha", "d", "a", "c", "theorem", "n", "verdict", "diffs"];
    let rows: Vec<Vec<String>> = s
        .rows
        .iter()
        .map(|r| {
            let c = r.cell;
            vec![
                c.p.to_string(),
                c.e.to_string(),
                c.alpha.to_string(),
                r.d.to_string(),
                c.a.to_string(),
                c.c.to_string(),
                r.theorem.to_string(),
                r.n.to_string(),
                verdict_str(r.verdict).into(),
                r.diffs.to_string(),
            ]
        })
        .collect();
    match format {
        Format::Json => to_json(s),
        Format::Csv => {
            let mut all = vec![HEADERS.map(String::from).to_vec()];
            all.extend(rows);
            csv_string(all)
        }
        Format::Text => {
            let mut out = text_table(&HEADERS, &rows);
            let primes: Vec<String> = s.primes.iter().map(u32::to_string).collect();
            let _ = writeln!(
                out,
                "\n{} specs, max_q={}, primes={}, {} mismatches",
                s.rows.len(),
                s.max_q,
                primes.join(","),
                s.mismatches.len()
            );
            for c in &s.mismatches {
                let _ = writeln!(out, "mismatch p={} e={} alpha={} a={} c={}", c.p, c.e, c.alpha, c.a, c.c);
            }
            Ok(out)
        }
    }
}

pub fn render_suite(r: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut rows = vec![["kind", "check", "params", "cases", "failures", "note"].map(String::from).to_vec()];
            for row in &r.rows {
                rows.push(vec![
                    "row".into(),
                    row.check.clone(),
                    row.params.clone(),
                    row.cases.to_string(),
                    row.failures.to_string(),
                    row.note.clone().unwrap_or_default(),
                ]);
            }
            for w in &r.warnings {
                rows.push(vec![
                    "warning".into(),
                    case_str(w.case).into(),
                    format!("p={} e={} alpha={}", w.p, w.e, w.alpha),
                    w.pairs.to_string(),
                    w.other.to_string(),
                    format!("sign_flips={} brute={} closed={}", w.sign_flips, w.brute, w.closed),
                ]);
            }
            csv_string(rows)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.check.clone(),
                        row.params.clone(),
                        row.cases.to_string(),
                        row.failures.to_string(),
                        if row.failures == 0 { "pass" } else { "FAIL" }.into(),
                        row.note.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            let mut out = text_table(&["check", "params", "cases", "failures", "result", "note"], &rows);
            if !r.warnings.is_empty() {
                let warn: Vec<Vec<String>> = r
                    .warnings
                    .iter()
                    .map(|w| {
                        let idx = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                        vec![
                            format!("p={} e={} alpha={}", w.p, w.e, w.alpha),
                            case_str(w.case).into(),
                            w.pairs.to_string(),
                            w.sign_flips.to_string(),
                            w.other.to_string(),
                            format!("a=[{}] b=[{}]", idx(&w.example_a), idx(&w.example_b)),
                            w.brute.to_string(),
                            w.closed.to_string(),
                        ]
                    })
                    .collect();
                out.push_str("\nwarnings: enumerated sum and literal closed form disagree\n");
                out.push_str(&text_table(
                    &["field", "case", "pairs", "sign_flips", "other", "example", "brute", "closed"],
                    &warn,
                ));
            }
            let _ = writeln!(out, "\n{}: {}", format!("{:?}", r.kind).to_lowercase(), if r.pass { "pass" } else { "FAIL" });
            Ok(out)
        }
    }
}

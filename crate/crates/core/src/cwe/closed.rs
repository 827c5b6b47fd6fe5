//! Closed-form CWEs and weight-distribution tables for the four regimes.
//!
//! Exponents and frequencies are evaluated as signed integers first: some
//! formal terms have a negative exponent at small parameters, which is only
//! admissible when their frequency is zero.

use std::collections::BTreeMap;

use crate::char_sums::leg;
use crate::code::{CodeSpec, Composition, Theorem};
use crate::error::{Error, Result};

use super::{CwePolynomial, WeightDistribution};

/// One formal term: `frequency` codewords with `exponents[s]` coordinates
/// equal to symbol s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedTerm {
    /// C0, C1, ... in order of appearance; summation terms carry their index,
    /// e.g. `C4[i=2]`.
    pub tag: String,
    pub exponents: Vec<i128>,
    pub frequency: i128,
}

/// One formal row of a weight-distribution table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub weight_expr: &'static str,
    pub multiplicity_expr: &'static str,
    pub weight: i128,
    pub multiplicity: i128,
}

struct Consts {
    p: i128,
    pi: i64,
    e: u32,
    m: u32,
    d: u32,
    a: i64,
    c: usize,
}

impl Consts {
    fn new(spec: &CodeSpec) -> Self {
        let params = spec.params();
        Consts {
            p: params.p() as i128,
            pi: params.p() as i64,
            e: params.e(),
            m: params.m(),
            d: params.d(),
            a: spec.a().value() as i64,
            c: spec.c().value() as usize,
        }
    }

    fn pow(&self, k: u32) -> i128 {
        self.p.pow(k)
    }

    fn leg(&self, n: i64) -> i128 {
        leg(n, self.pi as u32) as i128
    }

    /// `at_c` at symbol c, `rest` everywhere else.
    fn split(&self, at_c: i128, rest: i128) -> Vec<i128> {
        let mut v = vec![rest; self.p as usize];
        v[self.c] = at_c;
        v
    }

    /// `at_c` at symbol c and `shifted(i)` at symbol i + c for 1 <= i < p.
    fn shifted(&self, at_c: i128, shifted: impl Fn(i64) -> i128) -> Vec<i128> {
        let p = self.p as usize;
        let mut v = vec![0; p];
        v[self.c] = at_c;
        for i in 1..p {
            v[(i + self.c) % p] = shifted(i as i64);
        }
        v
    }

    fn excluded_index(&self) -> i64 {
        let pi = self.pi;
        let four_a = (4 * self.a).rem_euclid(pi) as u32;
        let c = self.c as i64;
        (c * c % pi) * crate::poly::inv_mod(four_a, pi as u32) as i64 % pi
    }
}

fn term(tag: impl Into<String>, frequency: i128, exponents: Vec<i128>) -> ClosedTerm {
    ClosedTerm { tag: tag.into(), exponents, frequency }
}

/// The summation terms shared by the a != 0 regimes, scaled by `unit`
/// (p^{m-1} or p^{m+d-1}) and with per-term frequency `freq`.
fn quadratic_terms(k: &Consts, first_tag: usize, unit: i128, freq: i128, out: &mut Vec<ClosedTerm>) {
    let base = k.pow(k.e - 2);
    let l_minus_one = k.leg(-1);
    let c = k.c as i64;
    out.push(term(
        format!("C{first_tag}"),
        freq,
        k.shifted(base - l_minus_one * unit, |i| base - k.leg(i * i - c * c) * unit),
    ));
    let excluded = k.excluded_index();
    let l_a = k.leg(k.a);
    for i in 1..k.pi {
        if i != excluded && k.leg(i) == l_a {
            out.push(term(
                format!("C{}[i={i}]", first_tag + 1),
                freq,
                k.shifted(base - l_minus_one * unit, |j| base - k.leg(j * j - 4 * k.a * i) * unit),
            ));
        }
    }
    for i in 1..k.pi {
        if k.leg(i) != l_a {
            out.push(term(
                format!("C{}[i={i}]", first_tag + 2),
                freq,
                k.shifted(base + l_minus_one * unit, |j| base - k.leg(j * j - 4 * k.a * i) * unit),
            ));
        }
    }
}

/// Formal length n of the code for the spec's regime.
fn closed_length(k: &Consts, theorem: Theorem) -> i128 {
    let (m, d, e) = (k.m, k.d, k.e);
    let p = k.p;
    match theorem {
        Theorem::One => k.pow(e - 1) - (p - 1) * k.pow(m - 1) - 1,
        Theorem::Two => k.pow(e - 1) + k.pow(m - 1),
        Theorem::Three => k.pow(e - 1) - (p - 1) * k.pow(m + d - 1) - 1,
        Theorem::Four => k.pow(e - 1) + k.pow(m + d - 1),
    }
}

/// Every formal term of the applicable closed-form CWE, zero-frequency
/// terms included.
pub fn closed_terms(spec: &CodeSpec) -> Result<Vec<ClosedTerm>> {
    let theorem = spec.theorem()?;
    let k = Consts::new(spec);
    let (m, d, e) = (k.m, k.d, k.e);
    let p = k.p;
    let n = closed_length(&k, theorem);
    let base = k.pow(e - 2);
    let mut out = vec![term("C0", 1, k.split(n, 0))];
    match theorem {
        Theorem::One => {
            let u = k.pow(m - 1);
            out.push(term("C1", n, k.split(base - (p - 1) * u - 1, base)));
            out.push(term("C2", (p - 1) * (k.pow(e - 1) + u), k.split(base - 1, base - u)));
        }
        Theorem::Two => {
            let u = k.pow(m - 1);
            out.push(term("C1", k.pow(e - 1) - (p - 1) * u - 1, k.shifted(base + u, |_| base)));
            quadratic_terms(&k, 2, u, k.pow(e - 1) + u, &mut out);
        }
        Theorem::Three => {
            let u = k.pow(m + d - 1);
            let v = k.pow(m + d - 2);
            let class = k.pow(e - 2 * d - 1) + k.pow(m - d - 1);
            out.push(term("C1", k.pow(e) - k.pow(e - 2 * d), k.split(base - (p - 1) * v - 1, base - (p - 1) * v)));
            out.push(term(
                "C2",
                k.pow(e - 2 * d - 1) - (p - 1) * k.pow(m - d - 1) - 1,
                k.split(base - (p - 1) * u - 1, base),
            ));
            out.push(term("C3", (p - 1) * class, k.split(base - 1, base - u)));
        }
        Theorem::Four => {
            let u = k.pow(m + d - 1);
            let v = k.pow(m + d - 2);
            let class = k.pow(e - 2 * d - 1) + k.pow(m - d - 1);
            out.push(term("C1", k.pow(e) - k.pow(e - 2 * d), k.split(base + v, base + v)));
            out.push(term(
                "C2",
                k.pow(e - 2 * d - 1) - (p - 1) * k.pow(m - d - 1) - 1,
                k.shifted(base + u, |_| base),
            ));
            quadratic_terms(&k, 3, u, class, &mut out);
        }
    }
    Ok(out)
}

fn to_u64(x: i128, what: &str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Internal(format!("{what} {x} does not fit in u64")))
}

/// The closed-form CWE with identical compositions merged, plus the tags of
/// the formal terms that produced each composition.
pub(crate) fn cwe_closed_tagged(spec: &CodeSpec) -> Result<(CwePolynomial, BTreeMap<Composition, Vec<String>>)> {
    let theorem = spec.theorem()?;
    let k = Consts::new(spec);
    let n = closed_length(&k, theorem);
    if n <= 0 {
        return Err(Error::DegenerateCode);
    }
    let mut cwe = CwePolynomial::new(to_u64(n, "length")?);
    let mut tags: BTreeMap<Composition, Vec<String>> = BTreeMap::new();
    for t in closed_terms(spec)? {
        if t.frequency == 0 {
            continue;
        }
        if t.frequency < 0 {
            return Err(Error::Internal(format!("term {} has negative frequency {}", t.tag, t.frequency)));
        }
        if let Some(bad) = t.exponents.iter().find(|&&x| x < 0) {
            return Err(Error::Internal(format!(
                "term {} has negative exponent {bad} with frequency {}",
                t.tag, t.frequency
            )));
        }
        let composition = Composition(t.exponents.iter().map(|&x| x as u64).collect());
        cwe.add(composition.clone(), to_u64(t.frequency, "frequency")?)?;
        tags.entry(composition).or_default().push(t.tag);
    }
    Ok((cwe, tags))
}

pub fn cwe_closed(spec: &CodeSpec) -> Result<CwePolynomial> {
    Ok(cwe_closed_tagged(spec)?.0)
}

fn row(weight_expr: &'static str, weight: i128, multiplicity_expr: &'static str, multiplicity: i128) -> TableRow {
    TableRow { weight_expr, multiplicity_expr, weight, multiplicity }
}

/// The formal rows of the applicable weight-distribution table, in table
/// order, zero multiplicities included.
pub fn table_rows(spec: &CodeSpec) -> Result<Vec<TableRow>> {
    let theorem = spec.theorem()?;
    let k = Consts::new(spec);
    let (m, d, e) = (k.m, k.d, k.e);
    let p = k.p;
    let pw = |x: u32| k.pow(x);
    Ok(match theorem {
        Theorem::One => vec![
            row(
                "(p-1)(p^(e-2)-p^(m-1))-1",
                (p - 1) * (pw(e - 2) - pw(m - 1)) - 1,
                "p^(e-1)-(p-1)p^(m-1)-1",
                pw(e - 1) - (p - 1) * pw(m - 1) - 1,
            ),
            row(
                "(p-1)p^(e-2)-(p-2)p^(m-1)-1",
                (p - 1) * pw(e - 2) - (p - 2) * pw(m - 1) - 1,
                "(p-1)(p^(e-1)+p^(m-1))",
                (p - 1) * (pw(e - 1) + pw(m - 1)),
            ),
            row("p^(e-1)-(p-1)p^(m-1)-1", pw(e - 1) - (p - 1) * pw(m - 1) - 1, "1", 1),
        ],
        Theorem::Two => {
            let class = pw(e - 1) + pw(m - 1);
            vec![
                row("(p-1)p^(e-2)", (p - 1) * pw(e - 2), "(p-1)(p^(e-1)+p^(m-1))/2", (p - 1) * class / 2),
                row(
                    "(p-1)p^(e-2)+p^(m-1)",
                    (p - 1) * pw(e - 2) + pw(m - 1),
                    "2p^(e-1)-(p-2)p^(m-1)-1",
                    2 * pw(e - 1) - (p - 2) * pw(m - 1) - 1,
                ),
                row(
                    "(p-1)p^(e-2)+2p^(m-1)",
                    (p - 1) * pw(e - 2) + 2 * pw(m - 1),
                    "(p-3)(p^(e-1)+p^(m-1))/2",
                    (p - 3) * class / 2,
                ),
                row("p^(e-1)+p^(m-1)", class, "1", 1),
            ]
        }
        Theorem::Three => {
            let class = pw(e - 2 * d - 1) + pw(m - d - 1);
            vec![
                row(
                    "(p-1)(p^(e-2)-(p-1)p^(m+d-2))-1",
                    (p - 1) * (pw(e - 2) - (p - 1) * pw(m + d - 2)) - 1,
                    "p^e-p^(e-2d)",
                    pw(e) - pw(e - 2 * d),
                ),
                row(
                    "(p-1)(p^(e-2)-p^(m+d-1))-1",
                    (p - 1) * (pw(e - 2) - pw(m + d - 1)) - 1,
                    "p^(e-2d-1)-(p-1)p^(m-d-1)-1",
                    pw(e - 2 * d - 1) - (p - 1) * pw(m - d - 1) - 1,
                ),
                row(
                    "(p-1)p^(e-2)-(p-2)p^(m+d-1)-1",
                    (p - 1) * pw(e - 2) - (p - 2) * pw(m + d - 1) - 1,
                    "(p-1)(p^(e-2d-1)+p^(m-d-1))",
                    (p - 1) * class,
                ),
                row("p^(e-1)-(p-1)p^(m+d-1)-1", pw(e - 1) - (p - 1) * pw(m + d - 1) - 1, "1", 1),
            ]
        }
        Theorem::Four => {
            let class = pw(e - 2 * d - 1) + pw(m - d - 1);
            vec![
                row(
                    "(p-1)(p^(e-2)+p^(m+d-2))",
                    (p - 1) * (pw(e - 2) + pw(m + d - 2)),
                    "p^e-p^(e-2d)",
                    pw(e) - pw(e - 2 * d),
                ),
                row(
                    "(p-1)p^(e-2)+p^(m+d-1)",
                    (p - 1) * pw(e - 2) + pw(m + d - 1),
                    "2p^(e-2d-1)-(p-2)p^(m-d-1)-1",
                    2 * pw(e - 2 * d - 1) - (p - 2) * pw(m - d - 1) - 1,
                ),
                row(
                    "(p-1)p^(e-2)+2p^(m+d-1)",
                    (p - 1) * pw(e - 2) + 2 * pw(m + d - 1),
                    "(p-3)(p^(e-2d-1)+p^(m-d-1))/2",
                    (p - 3) * class / 2,
                ),
                row("(p-1)p^(e-2)", (p - 1) * pw(e - 2), "(p-1)(p^(e-2d-1)+p^(m-d-1))/2", (p - 1) * class / 2),
                row("p^(e-1)+p^(m+d-1)", pw(e - 1) + pw(m + d - 1), "1", 1),
            ]
        }
    })
}

/// The applicable table with zero-multiplicity rows dropped and equal
/// weights merged.
pub fn table_closed(spec: &CodeSpec) -> Result<WeightDistribution> {
    let mut wd = WeightDistribution::new();
    for r in table_rows(spec)? {
        if r.multiplicity == 0 {
            continue;
        }
        if r.multiplicity < 0 || r.weight < 0 {
            return Err(Error::Internal(format!(
                "table row w = {} has weight {} and multiplicity {}",
                r.weight_expr, r.weight, r.multiplicity
            )));
        }
        wd.add(to_u64(r.weight, "weight")?, to_u64(r.multiplicity, "multiplicity")?);
    }
    Ok(wd)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Field;

    fn spec(p: u32, e: u32, alpha: u32, a: u32, c: u32) -> CodeSpec {
        CodeSpec::new(Arc::new(Field::build(p, e, alpha).unwrap()), a, c).unwrap()
    }

    fn terms(cwe: &CwePolynomial) -> Vec<(Vec<u64>, u64)> {
        cwe.terms().iter().map(|(c, &f)| (c.0.clone(), f)).collect()
    }

    fn rows(wd: &WeightDistribution) -> Vec<(u64, u64)> {
        wd.rows().iter().map(|(&w, &a)| (w, a)).collect()
    }

    #[test]
    fn theorem_one_instance() {
        let s = spec(3, 6, 1, 0, 1);
        let cwe = cwe_closed(&s).unwrap();
        assert_eq!(terms(&cwe), vec![(vec![0, 224, 0], 1), (vec![72, 80, 72], 504), (vec![81, 62, 81], 224)]);
        assert_eq!(rows(&table_closed(&s).unwrap()), vec![(143, 224), (152, 504), (224, 1)]);
    }

    #[test]
    fn theorem_four_term_tags() {
        let s = spec(3, 4, 1, 1, 1);
        let all = closed_terms(&s).unwrap();
        let freq: Vec<(String, i128)> = all.iter().map(|t| (t.tag.clone(), t.frequency)).collect();
        // C4 has no admissible index at p = 3: i = 1 is c^2/(4a)
        assert_eq!(
            freq,
            vec![("C0".into(), 1), ("C1".into(), 72), ("C2".into(), 0), ("C3".into(), 4), ("C5[i=2]".into(), 4)]
        );
        let (cwe, tags) = cwe_closed_tagged(&s).unwrap();
        assert_eq!(
            terms(&cwe),
            vec![(vec![0, 36, 0], 1), (vec![9, 18, 9], 4), (vec![12, 12, 12], 72), (vec![18, 0, 18], 4)]
        );
        assert_eq!(tags[&Composition(vec![12, 12, 12])], vec!["C1".to_string()]);
    }

    #[test]
    fn theorem_three_skips_the_negative_formal_row() {
        let s = spec(3, 4, 1, 0, 1);
        let formal = table_rows(&s).unwrap();
        assert_eq!(formal[1].multiplicity, 0);
        assert!(formal[1].weight < 0);
        assert_eq!(rows(&table_closed(&s).unwrap()), vec![(5, 72), (8, 9)]);
        let term = &closed_terms(&s).unwrap()[2];
        assert_eq!(term.frequency, 0);
        assert!(term.exponents.iter().any(|&x| x < 0));
        assert_eq!(cwe_closed(&s).unwrap().n(), 8);
    }

    #[test]
    fn frequencies_sum_to_q() {
        for (p, e, alpha) in [(3, 4, 1), (3, 6, 1), (5, 4, 1), (5, 6, 1), (7, 4, 1), (3, 8, 2), (11, 4, 1), (13, 2, 1)] {
            let field = Arc::new(Field::build(p, e, alpha).unwrap());
            for a in 0..p {
                for c in 1..p {
                    let s = CodeSpec::new(field.clone(), a, c).unwrap();
                    match cwe_closed(&s) {
                        Ok(cwe) => {
                            assert_eq!(cwe.total(), field.q());
                            assert_eq!(cwe.weight_distribution(), table_closed(&s).unwrap(), "{p} {e} {alpha} {a} {c}");
                        }
                        Err(Error::DegenerateCode) => assert!(e == 2 && a == 0),
                        Err(err) => panic!("{err}"),
                    }
                }
            }
        }
    }

    #[test]
    fn no_theorem_for_zero_offset() {
        assert!(matches!(cwe_closed(&spec(3, 4, 1, 1, 0)), Err(Error::NoApplicableTheorem(_))));
        assert!(matches!(table_closed(&spec(3, 4, 1, 0, 0)), Err(Error::NoApplicableTheorem(_))));
    }
}

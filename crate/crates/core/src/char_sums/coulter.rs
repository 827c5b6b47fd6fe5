//! S_alpha(a, b) = sum_{x in F_q} chi(a x^{p^alpha + 1} + b x), by enumeration
//! and by the literal closed forms in terms of solutions of
//! a^{p^alpha} X^{p^{2 alpha}} + a X = -b^{p^alpha}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::words::TraceWords;

use super::characters::eta;
use super::cyclotomic::CyclotomicInt;
use super::linearized::{f_target, LinearizedMap};

/// Which closed-form case applies to a coefficient a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoulterCase {
    /// e/d odd; f_a is always a permutation.
    OddQuotient,
    /// e/d even and f_a is a permutation.
    EvenPermutation,
    /// e/d even and f_a has a nontrivial kernel.
    EvenNonPermutation,
}

fn nonzero(a: &FieldElement) -> Result<()> {
    if a.is_zero() {
        Err(Error::param("a must be nonzero"))
    } else {
        Ok(())
    }
}

/// Counts of Tr(a x^{p^alpha+1} + b x) over all x; the sum of the counts is q.
pub fn coulter_histogram(field: &Field, a: &FieldElement, b: &FieldElement) -> Result<Vec<u64>> {
    nonzero(a)?;
    let mut counts = vec![0u64; field.p() as usize];
    for x in field.elements() {
        let v = field.add(&field.mul(a, &field.power_map(&x)), &field.mul(b, &x));
        counts[field.trace(&v).value() as usize] += 1;
    }
    Ok(counts)
}

pub fn coulter_sum_brute(field: &Field, a: &FieldElement, b: &FieldElement) -> Result<CyclotomicInt> {
    Ok(CyclotomicInt::from_counts(&coulter_histogram(field, a, b)?))
}

/// Histograms for every b at once, indexed by the lexicographic index of b.
pub fn coulter_histograms_all_b(field: &Field, a: &FieldElement) -> Result<Vec<Vec<u64>>> {
    nonzero(a)?;
    let points: Vec<FieldElement> = field.elements().collect();
    let offsets: Vec<u32> = points.iter().map(|x| field.trace(&field.mul(a, &field.power_map(x))).value()).collect();
    let words = TraceWords::new(field, &points, &offsets);
    let mut out = Vec::with_capacity(field.q() as usize);
    words.for_each_histogram(0..field.q(), |_, hist| out.push(hist.to_vec()));
    Ok(out)
}

/// Whether x -> a^{p^alpha} x^{p^{2 alpha}} + a x permutes F_q, by the
/// closed criterion on a^{(q-1)/(p^d+1)}.
pub fn is_f_permutation(field: &Field, a: &FieldElement) -> Result<bool> {
    nonzero(a)?;
    let params = field.params();
    if params.e_over_d_odd() {
        return Ok(true);
    }
    let d = params.d();
    let lhs = field.pow(a, (field.q() - 1) / (params.p_pow(d) + 1));
    let sign = if (params.m() / d).is_multiple_of(2) { field.one() } else { field.neg(&field.one()) };
    Ok(lhs != sign)
}

pub fn coulter_case(field: &Field, a: &FieldElement) -> Result<CoulterCase> {
    Ok(if field.params().e_over_d_odd() {
        CoulterCase::OddQuotient
    } else if is_f_permutation(field, a)? {
        CoulterCase::EvenPermutation
    } else {
        CoulterCase::EvenNonPermutation
    })
}

/// The closed form for S_alpha(a, b), transcribed literally.
///
/// In the even permutation case this differs from the enumerated value by a
/// global sign; see the coulter suite.
pub fn coulter_sum_closed(field: &Field, a: &FieldElement, b: &FieldElement) -> Result<CyclotomicInt> {
    let map = LinearizedMap::new(field, a)?;
    coulter_sum_closed_with(field, &map, coulter_case(field, a)?, a, b)
}

pub(crate) fn coulter_sum_closed_with(
    field: &Field,
    map: &LinearizedMap<'_>,
    case: CoulterCase,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<CyclotomicInt> {
    let params = field.params();
    let p = field.p();
    let m = params.m();
    let d = params.d();
    let Some(x0) = map.solve_one(&f_target(field, b)) else {
        return Ok(CyclotomicInt::zero(p));
    };
    // conj(chi(a x0^{p^alpha+1})) = zeta^{-Tr(a x0^{p^alpha+1})}
    let t = field.trace(&field.mul(a, &field.power_map(&x0))).value() as i64;
    let pm = (p as i64).pow(m);
    let md_sign = if (m / d).is_multiple_of(2) { 1 } else { -1 };
    let coefficient = match case {
        CoulterCase::OddQuotient => {
            // (-1)^{e-1} = -1 since e is even; sqrt(-1)^{3e} = (-1)^{3m}
            let mut k = -pm * eta(field, &field.neg(a))?.value();
            if p % 4 == 3 && m % 2 == 1 {
                k = -k;
            }
            k
        }
        CoulterCase::EvenPermutation => -md_sign * pm,
        CoulterCase::EvenNonPermutation => -md_sign * pm * (p as i64).pow(d),
    };
    Ok(CyclotomicInt::zeta_multiple(p, coefficient, -t))
}

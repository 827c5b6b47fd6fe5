//! The quadratic character eta, the canonical additive character chi and the
//! quadratic Gauss sum, all valued exactly in Z[zeta_p].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::words::TraceWords;

use super::cyclotomic::CyclotomicInt;
use super::legendre::{leg, SignSymbol};

/// eta(x) = x^{(q-1)/2} read as +-1, with eta(0) = 0.
pub fn eta(field: &Field, x: &FieldElement) -> Result<SignSymbol> {
    if x.is_zero() {
        return Ok(SignSymbol::Zero);
    }
    let r = field.pow(x, (field.q() - 1) / 2);
    if r == field.one() {
        Ok(SignSymbol::Plus)
    } else if r == field.neg(&field.one()) {
        Ok(SignSymbol::Minus)
    } else {
        Err(Error::Internal(format!("{x}^((q-1)/2) = {r} is not +-1")))
    }
}

/// chi(x) = zeta^{Tr(x)}.
pub fn chi(field: &Field, x: &FieldElement) -> CyclotomicInt {
    CyclotomicInt::zeta_pow(field.p(), field.trace(x).value() as i64)
}

/// G(eta, chi) = sum over nonzero x of eta(x) chi(x).
///
/// Walks the powers of the primitive element, where eta(theta^k) = (-1)^k.
pub fn gauss_sum(field: &Field) -> CyclotomicInt {
    let p = field.p();
    let theta = field.primitive();
    let mut counts = vec![0i64; p as usize];
    let mut x = field.one();
    for k in 0..field.q() - 1 {
        let t = field.trace(&x).value() as usize;
        counts[t] += if k % 2 == 0 { 1 } else { -1 };
        x = field.mul(&x, theta);
    }
    CyclotomicInt::from_unreduced(counts)
}

/// The same sum evaluated literally with [`eta`] and [`chi`]; slow, used as
/// an oracle.
pub fn gauss_sum_literal(field: &Field) -> Result<CyclotomicInt> {
    let mut acc = CyclotomicInt::zero(field.p());
    for x in field.elements().skip(1) {
        let term = chi(field, &x).scale(eta(field, &x)?.value());
        acc = &acc + &term;
    }
    Ok(acc)
}

/// The Gauss sum of the prime field, sum_{x=1}^{p-1} (x/p) zeta^x.
pub fn prime_gauss_sum(p: u32) -> CyclotomicInt {
    let mut raw = vec![0i64; p as usize];
    for x in 1..p as i64 {
        raw[x as usize] = leg(x, p);
    }
    CyclotomicInt::from_unreduced(raw)
}

/// sum_{x in F_q} chi(b x), by direct summation.
pub fn additive_sum(field: &Field, b: &FieldElement) -> CyclotomicInt {
    let mut counts = vec![0u64; field.p() as usize];
    for x in field.elements() {
        counts[field.trace(&field.mul(b, &x)).value() as usize] += 1;
    }
    CyclotomicInt::from_counts(&counts)
}

/// [`additive_sum`] for every b, indexed by the lexicographic index of b.
pub fn additive_sums_all(field: &Field) -> Vec<CyclotomicInt> {
    let points: Vec<FieldElement> = field.elements().collect();
    let words = TraceWords::new(field, &points, &vec![0; points.len()]);
    let mut out = Vec::with_capacity(field.q() as usize);
    words.for_each_histogram(0..field.q(), |_, hist| out.push(CyclotomicInt::from_counts(hist)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_on_powers_of_the_generator() {
        let field = Field::build(3, 4, 1).unwrap();
        let theta = field.primitive().clone();
        assert_eq!(eta(&field, &field.zero()).unwrap(), SignSymbol::Zero);
        assert_eq!(eta(&field, &theta).unwrap(), SignSymbol::Minus);
        assert_eq!(eta(&field, &field.mul(&theta, &theta)).unwrap(), SignSymbol::Plus);
        let mut x = field.one();
        for k in 0..field.q() - 1 {
            let expected = if k % 2 == 0 { SignSymbol::Plus } else { SignSymbol::Minus };
            assert_eq!(eta(&field, &x).unwrap(), expected);
            x = field.mul(&x, &theta);
        }
    }

    #[test]
    fn chi_is_a_homomorphism() {
        let field = Field::build(5, 2, 1).unwrap();
        assert_eq!(chi(&field, &field.zero()), CyclotomicInt::from_integer(5, 1));
        let all: Vec<_> = field.elements().collect();
        for x in all.iter().step_by(3) {
            for y in all.iter().step_by(4) {
                assert_eq!(&chi(&field, x) * &chi(&field, y), chi(&field, &field.add(x, y)));
            }
        }
    }

    #[test]
    fn prime_field_gauss_sum_for_five() {
        let g = prime_gauss_sum(5);
        // zeta + zeta^4 - zeta^2 - zeta^3
        assert_eq!(g, CyclotomicInt::from_unreduced(vec![0, 1, -1, -1, 1]));
        assert_eq!(&g * &g, CyclotomicInt::from_integer(5, 5));
    }

    #[test]
    fn gauss_sum_walk_matches_literal_sum() {
        for (p, e) in [(3, 2), (3, 4), (5, 2), (7, 2), (5, 4)] {
            let field = Field::build(p, e, 1).unwrap();
            assert_eq!(gauss_sum(&field), gauss_sum_literal(&field).unwrap());
        }
    }

    #[test]
    fn gauss_sum_square_and_galois_invariance() {
        for (p, e) in [(3, 2), (3, 4), (5, 2), (7, 2), (11, 2), (3, 6)] {
            let field = Field::build(p, e, 1).unwrap();
            let g = gauss_sum(&field);
            let minus_one = field.neg(&field.one());
            let sign = eta(&field, &minus_one).unwrap().value();
            assert_eq!(&g * &g, CyclotomicInt::from_integer(p, sign * field.q() as i64));
            for s in 1..p as i64 {
                if leg(s, p) == 1 {
                    assert_eq!(g.galois(s), g);
                }
            }
        }
    }

    #[test]
    fn orthogonality_batch_matches_direct_sums() {
        let field = Field::build(3, 4, 1).unwrap();
        let sums = additive_sums_all(&field);
        for (i, s) in sums.iter().enumerate() {
            let b = field.element_at(i as u64);
            assert_eq!(*s, additive_sum(&field, &b));
            let expected = if b.is_zero() { field.q() as i64 } else { 0 };
            assert_eq!(*s, CyclotomicInt::from_integer(3, expected));
        }
    }
}

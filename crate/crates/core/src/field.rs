//! Exact arithmetic in F_{p^e}, elements stored as coefficient vectors in the
//! power basis of a monic irreducible modulus.
//!
//! A [`Field`] owns the precomputed Frobenius matrices and the trace
//! functional; it is immutable after construction and can be shared across
//! threads. [`FieldElement`] is plain data carrying a tag of the field it was
//! created in, so elements of different fields never compare equal and the
//! checked operations can reject them.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Default upper bound on q = p^e accepted by the constructors.
pub const DEFAULT_Q_CAP: u64 = 1 << 26;

/// Largest supported extension degree; keeps scratch buffers on the stack.
pub const MAX_DEGREE: u32 = 32;

/// A residue modulo p, always in `[0, p-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeResidue(u32);

impl PrimeResidue {
    pub fn new(value: i64, p: u32) -> Self {
        PrimeResidue(value.rem_euclid(p as i64) as u32)
    }

    pub const fn zero() -> Self {
        PrimeResidue(0)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for PrimeResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parity of m/d; `None` from [`FieldParams::md_parity`] means d does not
/// divide m (equivalently e/d is odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MdParity {
    Odd,
    Even,
}

/// The tuple (p, e = 2m, alpha, d = gcd(alpha, e)) and the chosen modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    p: u32,
    e: u32,
    alpha: u32,
    d: u32,
    /// Coefficients c_0..c_e, lowest degree first; c_e = 1.
    modulus: Vec<u32>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn validate_shape(p: u32, e: u32, alpha: u32, cap: u64) -> Result<()> {
    if p < 3 || !poly::is_prime(p as u64) {
        return Err(Error::param("p must be an odd prime"));
    }
    // word symbols are u16 and p + p must not overflow
    if p >= 1 << 15 {
        return Err(Error::param("p must be below 32768"));
    }
    if e < 2 || !e.is_multiple_of(2) {
        return Err(Error::param("e must be even and at least 2"));
    }
    if e > MAX_DEGREE {
        return Err(Error::param(format!("e must be at most {MAX_DEGREE}")));
    }
    if alpha == 0 {
        return Err(Error::param("alpha must be a positive integer"));
    }
    let q = (p as u128).pow(e);
    if q > cap as u128 {
        return Err(Error::CapExceeded { q, cap });
    }
    Ok(())
}

impl FieldParams {
    /// Parameters with the lexicographically smallest irreducible modulus and
    /// the default cap.
    pub fn new(p: u32, e: u32, alpha: u32) -> Result<Self> {
        Self::with_cap(p, e, alpha, DEFAULT_Q_CAP)
    }

    pub fn with_cap(p: u32, e: u32, alpha: u32, cap: u64) -> Result<Self> {
        validate_shape(p, e, alpha, cap)?;
        let modulus = find_irreducible(p, e);
        Ok(FieldParams { p, e, alpha, d: gcd(alpha, e), modulus })
    }

    /// Parameters with a caller-chosen modulus, checked for irreducibility.
    pub fn with_modulus(p: u32, e: u32, alpha: u32, modulus: Vec<u32>, cap: u64) -> Result<Self> {
        validate_shape(p, e, alpha, cap)?;
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
            return Err(Error::param("modulus must be monic of degree e"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::param("modulus coefficients must lie in [0, p-1]"));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::param("modulus is not irreducible over Z_p"));
        }
        Ok(FieldParams { p, e, alpha, d: gcd(alpha, e), modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.e / 2
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn e_over_d_odd(&self) -> bool {
        (self.e / self.d) % 2 == 1
    }

    pub fn md_parity(&self) -> Option<MdParity> {
        let m = self.m();
        if !m.is_multiple_of(self.d) {
            return None;
        }
        Some(if (m / self.d).is_multiple_of(2) { MdParity::Even } else { MdParity::Odd })
    }

    /// p^k as an exact integer.
    pub fn p_pow(&self, k: u32) -> u64 {
        (self.p as u64).pow(k)
    }
}

/// Lexicographically smallest monic irreducible of degree e over Z_p, with
/// candidates compared on (c_0, c_1, ..., c_{e-1}).
pub fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let mut coeffs = vec![0u32; e];
    loop {
        // c_0 = 0 means X divides the candidate
        if coeffs[0] != 0 {
            let mut f = coeffs.clone();
            f.push(1);
            if poly::is_irreducible(&f, p) {
                return f;
            }
        }
        // odometer with c_{e-1} varying fastest keeps lexicographic order
        let mut k = e;
        loop {
            assert!(k > 0, "no irreducible polynomial of degree {e} over Z_{p}");
            k -= 1;
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
        }
    }
}

/// An element of F_{p^e}: coordinates in the power basis 1, X, ..., X^{e-1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    tag: u64,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// F_{p^e} with its precomputed tables.
#[derive(Debug, Clone)]
pub struct Field {
    params: FieldParams,
    q: u64,
    tag: u64,
    /// `frobenius[t]` is the row-major e x e matrix of x -> x^{p^t}, t < e.
    frobenius: Vec<Vec<u32>>,
    /// Tr(X^k) for k < 2e - 1.
    trace_of_powers: Vec<u32>,
    primitive: FieldElement,
}

impl Field {
    pub fn new(params: FieldParams) -> Result<Self> {
        let p = params.p;
        let e = params.e as usize;
        let q = params.q();
        let mut hasher = DefaultHasher::new();
        (p, &params.modulus).hash(&mut hasher);
        let tag = hasher.finish();

        // column j of the p-power matrix is (X^j)^p = (X^p)^j
        let x_p = poly::x_pow_mod(p as u128, &params.modulus, p);
        let mut column = vec![1u32];
        let mut frob1 = vec![0u32; e * e];
        for j in 0..e {
            for (i, &c) in column.iter().enumerate() {
                frob1[i * e + j] = c;
            }
            column = poly::mul_mod(&column, &x_p, &params.modulus, p);
        }
        let mut frobenius = Vec::with_capacity(e);
        let mut identity = vec![0u32; e * e];
        for i in 0..e {
            identity[i * e + i] = 1;
        }
        frobenius.push(identity);
        for t in 1..e {
            let prev = &frobenius[t - 1];
            frobenius.push(mat_mul(&frob1, prev, e, p));
        }

        let mut field = Field {
            params,
            q,
            tag,
            frobenius,
            trace_of_powers: Vec::new(),
            primitive: FieldElement { tag, coeffs: vec![0; e] },
        };

        // Tr(X^k) from the conjugate sums of the basis monomials
        let mut trace_of_powers = Vec::with_capacity(2 * e - 1);
        let mut power = field.one();
        let x = field.x();
        for _ in 0..(2 * e - 1) {
            trace_of_powers.push(field.trace_conjugate_sum(&power)?.value());
            power = field.mul(&power, &x);
        }
        field.trace_of_powers = trace_of_powers;
        field.primitive = field.search_primitive();
        Ok(field)
    }

    /// Shorthand for `Field::new(FieldParams::new(p, e, alpha)?)`.
    pub fn build(p: u32, e: u32, alpha: u32) -> Result<Self> {
        Field::new(FieldParams::new(p, e, alpha)?)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn e(&self) -> usize {
        self.params.e as usize
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn residue(&self, value: i64) -> PrimeResidue {
        PrimeResidue::new(value, self.params.p)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { tag: self.tag, coeffs: vec![0; self.e()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime(PrimeResidue(1))
    }

    /// The class of X, a root of the modulus.
    pub fn x(&self) -> FieldElement {
        let mut coeffs = vec![0; self.e()];
        // e >= 2 so X is reduced already
        coeffs[1] = 1;
        FieldElement { tag: self.tag, coeffs }
    }

    pub fn from_prime(&self, r: PrimeResidue) -> FieldElement {
        let mut coeffs = vec![0; self.e()];
        coeffs[0] = r.value() % self.params.p;
        FieldElement { tag: self.tag, coeffs }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.e() {
            return Err(Error::param(format!(
                "element needs {} coefficients, got {}",
                self.e(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.params.p) {
            return Err(Error::param("element coefficients must lie in [0, p-1]"));
        }
        Ok(FieldElement { tag: self.tag, coeffs: coeffs.to_vec() })
    }

    pub(crate) fn wrap(&self, coeffs: Vec<u32>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.e());
        FieldElement { tag: self.tag, coeffs }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.tag == self.tag && x.coeffs.len() == self.e()
    }

    /// Element number `index` in lexicographic coefficient order
    /// (c_0 most significant).
    pub fn element_at(&self, mut index: u64) -> FieldElement {
        assert!(index < self.q, "element index out of range");
        let p = self.params.p as u64;
        let mut coeffs = vec![0u32; self.e()];
        for c in coeffs.iter_mut().rev() {
            *c = (index % p) as u32;
            index /= p;
        }
        self.wrap(coeffs)
    }

    pub fn index_of(&self, x: &FieldElement) -> u64 {
        let p = self.params.p as u64;
        x.coeffs.iter().fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// All q elements in lexicographic coefficient order.
    pub fn elements(&self) -> Elements<'_> {
        Elements { field: self, next: Some(vec![0; self.e()]) }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let p = self.params.p;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        self.wrap(coeffs)
    }

    pub fn try_add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        let p = self.params.p;
        self.wrap(x.coeffs.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect())
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: PrimeResidue, x: &FieldElement) -> FieldElement {
        let p = self.params.p as u64;
        self.wrap(x.coeffs.iter().map(|&a| (a as u64 * k.value() as u64 % p) as u32).collect())
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let mut out = vec![0u32; self.e()];
        self.mul_raw(&x.coeffs, &y.coeffs, &mut out);
        self.wrap(out)
    }

    pub fn try_mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Polynomial product of two coordinate vectors reduced by the modulus.
    pub(crate) fn mul_raw(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        let e = self.e();
        let p = self.params.p as u64;
        let modulus = &self.params.modulus;
        let mut acc = [0u64; 2 * MAX_DEGREE as usize];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        // X^e = -(m_0 + ... + m_{e-1} X^{e-1})
        for k in (e..2 * e - 1).rev() {
            let c = acc[k] % p;
            if c == 0 {
                continue;
            }
            for t in 0..e {
                acc[k - e + t] += (p - modulus[t] as u64) * c;
            }
            acc[k] = 0;
        }
        for (o, &a) in out.iter_mut().zip(acc.iter()) {
            *o = (a % p) as u32;
        }
    }

    /// x^k by square-and-multiply, with x^0 = 1 for every x including 0.
    pub fn pow(&self, x: &FieldElement, mut k: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            None
        } else {
            Some(self.pow(x, self.q - 2))
        }
    }

    /// x^{p^t}, via the precomputed matrix of the p^{t mod e} power map.
    pub fn frobenius(&self, x: &FieldElement, t: u32) -> FieldElement {
        let e = self.e();
        let p = self.params.p as u64;
        let matrix = &self.frobenius[t as usize % e];
        let coeffs = (0..e)
            .map(|i| {
                let row = &matrix[i * e..(i + 1) * e];
                (row.iter().zip(&x.coeffs).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            })
            .collect();
        self.wrap(coeffs)
    }

    /// Tr(x) by the linear functional derived from the conjugate sums of the
    /// basis monomials.
    pub fn trace(&self, x: &FieldElement) -> PrimeResidue {
        PrimeResidue(self.trace_raw(&x.coeffs))
    }

    pub(crate) fn trace_raw(&self, x: &[u32]) -> u32 {
        let p = self.params.p as u64;
        (x.iter().zip(&self.trace_of_powers).map(|(&a, &t)| a as u64 * t as u64).sum::<u64>() % p) as u32
    }

    /// Tr(x) = sum of x^{p^t} for t < e, computed literally.
    pub fn trace_conjugate_sum(&self, x: &FieldElement) -> Result<PrimeResidue> {
        let mut acc = self.zero();
        for t in 0..self.params.e {
            acc = self.add(&acc, &self.frobenius(x, t));
        }
        if acc.coeffs[1..].iter().any(|&c| c != 0) {
            return Err(Error::Internal(format!(
                "conjugate sum {acc} is not in the prime subfield; the modulus is broken"
            )));
        }
        Ok(PrimeResidue(acc.coeffs[0]))
    }

    /// (Tr(X^k x)) for k < e, so that Tr(b x) = sum_k b_k * dual_k(x).
    pub fn dual_coordinates(&self, x: &FieldElement) -> Vec<u32> {
        let e = self.e();
        let p = self.params.p as u64;
        (0..e)
            .map(|k| {
                let s: u64 = x
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| c as u64 * self.trace_of_powers[k + j] as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    /// x^{p^alpha + 1}.
    pub fn power_map(&self, x: &FieldElement) -> FieldElement {
        self.mul(&self.frobenius(x, self.params.alpha), x)
    }

    pub fn primitive(&self) -> &FieldElement {
        &self.primitive
    }

    /// Multiplicative order of a nonzero element, by prime-power stripping.
    pub fn order(&self, x: &FieldElement) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut order = self.q - 1;
        for r in poly::prime_factors(self.q - 1) {
            while order.is_multiple_of(r) && self.pow(x, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// First element in lexicographic coefficient order of order q - 1.
    pub fn find_primitive(&self) -> FieldElement {
        self.search_primitive()
    }

    fn search_primitive(&self) -> FieldElement {
        let one = self.one();
        let factors = poly::prime_factors(self.q - 1);
        self.elements()
            .skip(1)
            .find(|x| factors.iter().all(|&r| self.pow(x, (self.q - 1) / r) != one))
            .expect("the multiplicative group is cyclic")
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

fn mat_mul(a: &[u32], b: &[u32], e: usize, p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut out = vec![0u32; e * e];
    for i in 0..e {
        for j in 0..e {
            let s: u64 = (0..e).map(|k| a[i * e + k] as u64 * b[k * e + j] as u64).sum();
            out[i * e + j] = (s % p) as u32;
        }
    }
    out
}

/// Iterator over all field elements in lexicographic coefficient order.
pub struct Elements<'a> {
    field: &'a Field,
    next: Option<Vec<u32>>,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let current = self.next.take()?;
        let p = self.field.params.p;
        let mut succ = current.clone();
        let mut k = succ.len();
        let mut done = true;
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < p {
                done = false;
                break;
            }
            succ[k] = 0;
        }
        if !done {
            self.next = Some(succ);
        }
        Some(self.field.wrap(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, e: u32) -> Field {
        Field::build(p, e, 1).unwrap()
    }

    #[test]
    fn lexicographically_first_moduli() {
        // Oracle: every monic quadratic with c_0 < 1 or (c_0 = 1, c_1 < 0) has
        // a root mod 3, so X^2 + 1 is first.
        assert_eq!(find_irreducible(3, 2), vec![1, 0, 1]);
        // X^2 + X + 1 has discriminant -3 = 2, a non-square mod 5
        assert_eq!(find_irreducible(5, 2), vec![1, 1, 1]);
        for (p, e) in [(3, 4), (3, 6), (5, 4), (7, 2), (7, 4)] {
            let m = find_irreducible(p, e);
            assert!(poly::is_irreducible(&m, p));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldParams::new(4, 2, 1), Err(Error::param("p must be an odd prime")));
        assert_eq!(FieldParams::new(2, 2, 1), Err(Error::param("p must be an odd prime")));
        assert!(matches!(FieldParams::new(3, 3, 1), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(3, 4, 0), Err(Error::Parameter(_))));
        assert!(matches!(FieldParams::new(3, 18, 1), Err(Error::CapExceeded { .. })));
        assert!(FieldParams::with_modulus(3, 2, 1, vec![2, 0, 1], DEFAULT_Q_CAP).is_err());
        assert!(FieldParams::with_modulus(5, 2, 1, vec![2, 0, 1], DEFAULT_Q_CAP).is_ok());
    }

    #[test]
    fn small_arithmetic() {
        let k = f(3, 2);
        let x = k.element(&[1, 2]).unwrap();
        let y = k.element(&[2, 2]).unwrap();
        assert_eq!(k.add(&x, &y).coeffs(), &[0, 1]);
        assert_eq!(k.add(&x, &k.zero()), x);
        assert_eq!(k.add(&x, &k.neg(&x)), k.zero());
        assert_eq!(k.mul(&x, &k.one()), x);
        assert_eq!(k.mul(&x, &k.zero()), k.zero());
        assert_eq!(k.pow(&k.zero(), 0), k.one());
        assert_eq!(k.pow(&x, 1), x);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let k1 = f(3, 2);
        let k2 = f(5, 2);
        let k3 = Field::new(FieldParams::with_modulus(3, 2, 1, vec![2, 1, 1], DEFAULT_Q_CAP).unwrap()).unwrap();
        assert_eq!(k1.try_add(&k1.one(), &k2.one()), Err(Error::FieldMismatch));
        assert_eq!(k1.try_mul(&k1.one(), &k3.one()), Err(Error::FieldMismatch));
        assert_ne!(k1.one(), k3.one());
    }

    #[test]
    fn primitive_in_f9() {
        let k = f(3, 2);
        // X has order 4 under X^2 + 1; X + 1 is the first of order 8
        assert_eq!(k.order(&k.x()), Some(4));
        let theta = k.primitive().clone();
        assert_eq!(theta.coeffs(), &[1, 1]);
        assert_eq!(k.pow(&theta, 8), k.one());
        assert_eq!(k.pow(&theta, 4), k.neg(&k.one()));
        // brute chain of multiplications
        let mut acc = k.one();
        let mut order = 0;
        loop {
            acc = k.mul(&acc, &theta);
            order += 1;
            if acc == k.one() {
                break;
            }
        }
        assert_eq!(order, 8);
        assert_eq!(k.mul(&theta, &k.pow(&theta, k.q() - 2)), k.one());
        // power map x -> x^4 sends theta to theta^4 = -1
        assert_eq!(k.power_map(&theta), k.neg(&k.one()));
        assert_eq!(k.power_map(&k.zero()), k.zero());
        assert_eq!(k.power_map(&k.one()), k.one());
    }

    #[test]
    fn trace_of_one() {
        assert_eq!(f(3, 2).trace(&f(3, 2).one()).value(), 2);
        assert_eq!(f(3, 6).trace(&f(3, 6).one()).value(), 0);
        assert_eq!(f(5, 4).trace(&f(5, 4).one()).value(), 4);
        assert_eq!(f(3, 4).trace(&f(3, 4).zero()).value(), 0);
    }

    #[test]
    fn frobenius_matches_iterated_pow() {
        for (p, e) in [(3, 4), (5, 2), (3, 6)] {
            let k = f(p, e);
            for x in k.elements().step_by(7) {
                assert_eq!(k.frobenius(&x, 0), x);
                assert_eq!(k.frobenius(&x, e), x);
                let mut y = x.clone();
                for t in 1..=e {
                    y = k.pow(&y, p as u64);
                    assert_eq!(k.frobenius(&x, t), y);
                }
            }
        }
    }

    #[test]
    fn trace_functional_matches_conjugate_sum() {
        let k = f(3, 4);
        for x in k.elements() {
            assert_eq!(k.trace(&x), k.trace_conjugate_sum(&x).unwrap());
        }
    }

    #[test]
    fn trace_is_balanced() {
        for (p, e) in [(3, 2), (3, 4), (5, 4), (7, 2), (3, 8)] {
            let k = f(p, e);
            let mut counts = vec![0u64; p as usize];
            for x in k.elements() {
                counts[k.trace(&x).value() as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == k.q() / p as u64), "{p} {e}: {counts:?}");
        }
    }

    #[test]
    fn element_indexing_is_lexicographic() {
        let k = f(3, 4);
        let all: Vec<_> = k.elements().collect();
        assert_eq!(all.len() as u64, k.q());
        for (i, x) in all.iter().enumerate() {
            assert_eq!(k.index_of(x), i as u64);
            assert_eq!(&k.element_at(i as u64), x);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn power_map_on_the_cyclic_group() {
        for (p, e, alpha) in [(3, 4, 1), (5, 4, 3), (3, 6, 2)] {
            let k = Field::build(p, e, alpha).unwrap();
            let theta = k.primitive().clone();
            let exp = (p as u64).pow(alpha) + 1;
            for j in [1u64, 2, 5, 17, k.q() - 2] {
                let lhs = k.power_map(&k.pow(&theta, j));
                let rhs = k.pow(&theta, (j * exp) % (k.q() - 1));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

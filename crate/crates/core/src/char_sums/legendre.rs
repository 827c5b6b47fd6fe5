//! Legendre symbols and the prime-field sums built from them.
//!
//! Each sum comes in two flavours: a direct summation (`*_sum`) and the
//! closed form it is supposed to equal (`*_closed`). The lemma suite checks
//! one against the other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{inv_mod, pow_mod};

/// A value in {-1, 0, +1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignSymbol {
    Minus,
    Zero,
    Plus,
}

impl SignSymbol {
    pub fn value(self) -> i64 {
        match self {
            SignSymbol::Minus => -1,
            SignSymbol::Zero => 0,
            SignSymbol::Plus => 1,
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p < 3 || !crate::poly::is_prime(p as u64) {
        return Err(Error::param("p must be an odd prime"));
    }
    Ok(())
}

fn nonzero(x: i64, p: u32, what: &str) -> Result<i64> {
    let r = x.rem_euclid(p as i64);
    if r == 0 {
        return Err(Error::param(format!("{what} must be nonzero mod p")));
    }
    Ok(r)
}

/// (n/p) by Euler's criterion n^{(p-1)/2} mod p.
pub fn legendre(n: i64, p: u32) -> SignSymbol {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return SignSymbol::Zero;
    }
    match pow_mod(r, (p as u64 - 1) / 2, p as u64) {
        1 => SignSymbol::Plus,
        x if x == p as u64 - 1 => SignSymbol::Minus,
        x => unreachable!("Euler's criterion gave {x} mod {p}"),
    }
}

/// L(n) as an integer, the form every exponent expression uses.
pub(crate) fn leg(n: i64, p: u32) -> i64 {
    legendre(n, p).value()
}

/// sum_{x=0}^{p-1} ((a x^2 + b x + c)/p), summed directly.
pub fn quadratic_sum(a: i64, b: i64, c: i64, p: u32) -> i64 {
    (0..p as i64).map(|x| leg(a * x * x + b * x + c, p)).sum()
}

/// The classical evaluation of [`quadratic_sum`] for p not dividing a.
pub fn quadratic_sum_closed(a: i64, b: i64, c: i64, p: u32) -> i64 {
    let disc = (b * b - 4 * a * c).rem_euclid(p as i64);
    if disc != 0 {
        -leg(a, p)
    } else {
        (p as i64 - 1) * leg(a, p)
    }
}

/// S_p(a, i) = sum_{j=1}^{p-1} ((j^2 - 4ai)/p).
pub fn s_p_sum(a: i64, i: i64, p: u32) -> Result<i64> {
    check_prime(p)?;
    let a = nonzero(a, p, "a")?;
    let i = nonzero(i, p, "i")?;
    Ok((1..p as i64).map(|j| leg(j * j - 4 * a * i, p)).sum())
}

pub fn s_p_closed(a: i64, i: i64, p: u32) -> Result<i64> {
    check_prime(p)?;
    let a = nonzero(a, p, "a")?;
    let i = nonzero(i, p, "i")?;
    let same_class = legendre(a, p) == legendre(i, p);
    Ok(match (p % 4 == 1, same_class) {
        (true, true) | (false, false) => -2,
        (true, false) | (false, true) => 0,
    })
}

/// L_p(c) = sum_{j=1}^{p-1} ((j^2 - c^2)/p).
pub fn l_p_sum(c: i64, p: u32) -> Result<i64> {
    check_prime(p)?;
    let c = nonzero(c, p, "c")?;
    Ok((1..p as i64).map(|j| leg(j * j - c * c, p)).sum())
}

pub fn l_p_closed(p: u32) -> Result<i64> {
    check_prime(p)?;
    Ok(if p % 4 == 1 { -2 } else { 0 })
}

/// Sizes of N_p^+, N_p^-, M_p^+, M_p^- for a pair (a, c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassCounts {
    pub n_plus: u64,
    pub n_minus: u64,
    pub m_plus: u64,
    pub m_minus: u64,
}

impl ResidueClassCounts {
    pub fn total(&self) -> u64 {
        self.n_plus + self.n_minus + self.m_plus + self.m_minus
    }
}

/// Classifies i in 1..p-1, i != c^2/(4a), by ((c^2 - 4ai)/p) and whether
/// (i/p) = (a/p).
pub fn residue_class_cardinalities(a: i64, c: i64, p: u32) -> Result<ResidueClassCounts> {
    check_prime(p)?;
    let a = nonzero(a, p, "a")?;
    let c = nonzero(c, p, "c")?;
    let pi = p as i64;
    let excluded = (c * c % pi) * inv_mod((4 * a % pi) as u32, p) as i64 % pi;
    let mut counts = ResidueClassCounts { n_plus: 0, n_minus: 0, m_plus: 0, m_minus: 0 };
    for i in 1..pi {
        if i == excluded {
            continue;
        }
        let same = legendre(i, p) == legendre(a, p);
        match (legendre(c * c - 4 * a * i, p), same) {
            (SignSymbol::Plus, true) => counts.n_plus += 1,
            (SignSymbol::Minus, true) => counts.n_minus += 1,
            (SignSymbol::Plus, false) => counts.m_plus += 1,
            (SignSymbol::Minus, false) => counts.m_minus += 1,
            (SignSymbol::Zero, _) => {}
        }
    }
    Ok(counts)
}

pub fn residue_class_cardinalities_closed(p: u32) -> Result<ResidueClassCounts> {
    check_prime(p)?;
    let p = p as u64;
    Ok(if p % 4 == 1 {
        ResidueClassCounts { n_plus: (p - 5) / 4, n_minus: (p - 1) / 4, m_plus: (p - 1) / 4, m_minus: (p - 1) / 4 }
    } else {
        ResidueClassCounts { n_plus: (p - 3) / 4, n_minus: (p - 3) / 4, m_plus: (p - 3) / 4, m_minus: (p + 1) / 4 }
    })
}

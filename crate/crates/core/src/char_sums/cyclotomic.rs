//! Exact elements of Z[zeta_p].
//!
//! An element is stored as `c_0 + c_1 zeta + ... + c_{p-1} zeta^{p-1}` and
//! kept canonical by subtracting `c_{p-1}` from every coefficient, using
//! `1 + zeta + ... + zeta^{p-1} = 0`. Canonical vectors are unique, so
//! structural equality is equality in the ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { coeffs: vec![0; p as usize] }
    }

    pub fn from_integer(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n;
        z
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        Self::zeta_multiple(p, 1, k)
    }

    /// n * zeta^k.
    pub fn zeta_multiple(p: u32, n: i64, k: i64) -> Self {
        let mut raw = vec![0; p as usize];
        raw[k.rem_euclid(p as i64) as usize] = n;
        Self::from_unreduced(raw)
    }

    /// Canonicalizes an arbitrary length-p coefficient vector.
    pub fn from_unreduced(mut coeffs: Vec<i64>) -> Self {
        assert!(coeffs.len() >= 2, "need at least two coefficients");
        let top = *coeffs.last().unwrap();
        if top != 0 {
            for c in coeffs.iter_mut() {
                *c -= top;
            }
        }
        CyclotomicInt { coeffs }
    }

    /// The sum of `counts[t] * zeta^t`, e.g. a histogram of trace values.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_unreduced(counts.iter().map(|&c| i64::try_from(c).expect("count fits in i64")).collect())
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Canonical coefficients c_0..c_{p-1}; the last is always zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn zeta_coeffs(&self) -> &[i64] {
        &self.coeffs[..self.coeffs.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) iff the element is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInt { coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }

    /// The Galois automorphism zeta -> zeta^s, s coprime to p.
    pub fn galois(&self, s: i64) -> Self {
        let p = self.coeffs.len() as i64;
        assert!(s.rem_euclid(p) != 0, "zeta -> zeta^s needs s coprime to p");
        let mut raw = vec![0; p as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[(i as i64 * s).rem_euclid(p) as usize] += c;
        }
        Self::from_unreduced(raw)
    }

    /// Complex conjugation, zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "cyclotomic integers over different p");
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(rhs);
        // sum of canonical vectors is canonical
        CyclotomicInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(rhs);
        CyclotomicInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;

    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(rhs);
        let p = self.coeffs.len();
        let mut raw = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                raw[(i + j) % p] += a as i128 * b as i128;
            }
        }
        let top = raw[p - 1];
        let coeffs = raw
            .into_iter()
            .map(|c| i64::try_from(c - top).expect("cyclotomic coefficient overflow"))
            .collect();
        CyclotomicInt { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CyclotomicInt {
            type Output = CyclotomicInt;

            fn $method(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicInt {
    type Output = CyclotomicInt;

    fn neg(self) -> CyclotomicInt {
        -&self
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if wrote { "+" } else { "" };
            let sep = if wrote { " " } else { "" };
            let mag = c.unsigned_abs();
            let sp = if wrote { " " } else { "" };
            match k {
                0 => write!(f, "{sep}{sign}{sp}{mag}")?,
                _ if mag == 1 => write!(f, "{sep}{sign}{sp}z^{k}")?,
                _ => write!(f, "{sep}{sign}{sp}{mag}z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    zeta_coeffs: Vec<i64>,
}

impl Serialize for CyclotomicInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr { zeta_coeffs: self.zeta_coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let Repr { mut zeta_coeffs } = Repr::deserialize(d)?;
        if zeta_coeffs.is_empty() {
            return Err(serde::de::Error::custom("zeta_coeffs must be nonempty"));
        }
        zeta_coeffs.push(0);
        Ok(CyclotomicInt { coeffs: zeta_coeffs })
    }
}

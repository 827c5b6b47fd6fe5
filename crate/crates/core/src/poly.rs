//! Dense polynomials over Z_p, lowest degree first. Only what the field
//! constructor needs: remainder, modular multiplication and powering, gcd.

pub(crate) fn trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `f` modulo `g` (g nonzero).
pub(crate) fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut g = g.to_vec();
    trim(&mut g);
    assert!(!g.is_empty(), "division by the zero polynomial");
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p) as u64;
    let p64 = p as u64;
    while r.len() > dg {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % p64;
        let shift = top - dg;
        for (i, &gi) in g.iter().enumerate() {
            let sub = factor * gi as u64 % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(f: &[u32], g: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(f, g, p), modulus, p)
}

/// X^k mod `modulus`.
pub(crate) fn x_pow_mod(mut k: u128, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], modulus, p);
    let mut base = rem(&[0, 1], modulus, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(&acc, &base, modulus, p);
        }
        base = mul_mod(&base, &base, modulus, p);
        k >>= 1;
    }
    acc
}

pub(crate) fn sub(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let len = f.len().max(g.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    a
}

/// Ben-Or style test: a monic `f` of degree e is irreducible over Z_p iff
/// gcd(f, X^{p^k} - X) = 1 for every k <= e/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut x_pk = rem(&x, &f, p);
    for _ in 1..=e / 2 {
        // X^{p^k} = (X^{p^{k-1}})^p
        x_pk = pow_poly_mod(&x_pk, p as u64, &f, p);
        let g = gcd(&f, &sub(&x_pk, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn pow_poly_mod(base: &[u32], mut k: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        k >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

//! Polynomial arithmetic over a prime field `F_q`, used for modulus
//! validation and for the non-table multiplication backend.
//!
//! Polynomials are coefficient vectors over `0..q`, little-endian (index =
//! power of x), with no trailing zeros.

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

/// Prime factors of `n`, ascending, without multiplicity.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn deg(v: &[u32]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn mul(a: &[u32], b: &[u32], q: u64) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u64 * bj as u64) % q;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], q: u64) -> Vec<u32> {
    assert!(!m.is_empty() && *m.last().unwrap() == 1, "modulus must be monic");
    let dm = m.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while r.len() > dm {
        let c = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let idx = shift + j;
                let v = (r[idx] as u64 + q - c * mj as u64 % q) % q;
                r[idx] = v as u32;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u32], b: &[u32], q: u64) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let mut bm = b.clone();
        // make monic for rem()
        let lead = *bm.last().unwrap() as u64;
        if lead != 1 {
            let inv = inv_mod_prime(lead, q);
            for c in bm.iter_mut() {
                *c = (*c as u64 * inv % q) as u32;
            }
        }
        let r = rem(&a, &bm, q);
        a = b;
        b = r;
    }
    // monic normalization
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = inv_mod_prime(lead as u64, q);
            for c in a.iter_mut() {
                *c = (*c as u64 * inv % q) as u32;
            }
        }
    }
    a
}

pub(crate) fn inv_mod_prime(a: u64, q: u64) -> u64 {
    // Fermat
    pow_mod(a % q, q - 2, q)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `x^(q^e) mod m` for monic `m`, by repeated q-th powering.
fn frob_pow_mod(e: usize, m: &[u32], q: u64) -> Vec<u32> {
    let mut x = vec![0u32, 1];
    x = rem(&x, m, q);
    for _ in 0..e {
        x = pow_poly_mod(&x, q, m, q);
    }
    x
}

fn pow_poly_mod(base: &[u32], mut e: u64, m: &[u32], q: u64) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, q), m, q);
        }
        b = rem(&mul(&b, &b, q), m, q);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial over `F_q` (Rabin's test).
pub(crate) fn is_irreducible(f: &[u32], q: u64) -> bool {
    let n = match deg(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    // x^(q^n) == x mod f
    let xqn = frob_pow_mod(n, f, q);
    let x = rem(&[0, 1], f, q);
    if xqn != x {
        return false;
    }
    for p in prime_factors(n as u64) {
        let e = n / p as usize;
        let mut t = frob_pow_mod(e, f, q);
        // t - x
        while t.len() < 2 {
            t.push(0);
        }
        t[1] = ((t[1] as u64 + q - 1) % q) as u32;
        trim(&mut t);
        let g = gcd(&t, f, q);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Multiplicative order of `x` in `F_q[x]/(f)` equals `q^n - 1`?
fn x_is_primitive(f: &[u32], q: u64, size: u64) -> bool {
    let order = size - 1;
    for p in prime_factors(order) {
        let t = pow_poly_mod(&rem(&[0, 1], f, q), order / p, f, q);
        if t == vec![1u32] {
            return false;
        }
    }
    true
}

/// Deterministic search for the canonical modulus of `F_{q^m}`: the monic
/// degree-m irreducible polynomial, smallest in the constant-first counter
/// order, whose root x is a primitive element.
pub(crate) fn search_primitive_modulus(q: u64, m: usize) -> Option<Vec<u32>> {
    assert!(m >= 1);
    let mut size: u64 = 1;
    for _ in 0..m {
        size = size.checked_mul(q)?;
    }
    if m == 1 {
        // x - c with c a primitive root mod q (x == c in the quotient)
        for c in 1..q {
            let mut ok = true;
            for p in prime_factors(q - 1) {
                if pow_mod(c, (q - 1) / p, q) == 1 {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Some(vec![(q - c) as u32, 1]); // x - c
            }
        }
        return None;
    }
    let lower: u64 = size / q; // q^(m-1) candidate count for the non-leading coefficients
    for counter in 0..lower * q {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut c = counter;
        for _ in 0..m {
            coeffs.push((c % q) as u32);
            c /= q;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue; // x divides it
        }
        if is_irreducible(&coeffs, q) && x_is_primitive(&coeffs, q, size) {
            return Some(coeffs);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(4));
        assert!(is_prime_u64(65537));
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
    }

    #[test]
    fn gcd_and_rem() {
        let q = 3;
        // (x^2 + 1)(x + 2) over F_3
        let f = mul(&[1, 0, 1], &[2, 1], q);
        let g = gcd(&f, &[1, 0, 1], q);
        assert_eq!(g, vec![1, 0, 1]);
        assert_eq!(rem(&f, &[1, 0, 1], q), vec![]);
    }

    #[test]
    fn irreducible_known() {
        assert!(is_irreducible(&[1, 1, 1], 2)); // x^2+x+1
        assert!(!is_irreducible(&[1, 0, 1], 2)); // x^2+1 = (x+1)^2
        assert!(is_irreducible(&[2, 2, 1], 3)); // x^2+2x+2
    }

    #[test]
    fn canonical_moduli_are_primitive() {
        let f = search_primitive_modulus(2, 2).unwrap();
        assert_eq!(f, vec![1, 1, 1]);
        let f9 = search_primitive_modulus(3, 2).unwrap();
        assert!(is_irreducible(&f9, 3));
    }
}

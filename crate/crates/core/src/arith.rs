//! Integer helpers: extended gcd, primality, factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Returns (g, x, y) with g = gcd(a, b) ≥ 0 and a·x + b·y = g.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// gcd of a list with Bézout coefficients: Σ cᵢ·xsᵢ = g ≥ 0.
pub fn ext_gcd_many(xs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut cs: Vec<BigInt> = Vec::with_capacity(xs.len());
    for x in xs {
        let (g2, s, t) = ext_gcd(&g, x);
        for c in cs.iter_mut() {
            *c = &*c * &s;
        }
        cs.push(t);
        g = g2;
    }
    (g, cs)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn miller_rabin(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of |n| as (prime, multiplicity), primes ascending.
/// Trial division up to 10⁴, Pollard rho beyond. n = 0 yields an empty list.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p < 10_000 && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut k = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
        p += 1;
    }
    let mut stack = vec![n];
    let mut big: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if miller_rabin(&m) {
            big.push(m);
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((p, k)) if *p == q => *k += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

/// Product of the distinct primes dividing n; radical(0) = 0.
pub fn radical(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    factor(n).into_iter().map(|(p, _)| p).product()
}

/// Removes from d every prime factor it shares with g. With g = 0 every prime
/// is shared, so the result is 1.
pub fn strip_shared(d: &BigInt, g: &BigInt) -> BigInt {
    let mut h = d.abs();
    if h.is_zero() {
        return if g.is_zero() { BigInt::one() } else { h };
    }
    loop {
        let c = h.gcd(g);
        if c.is_one() {
            return h;
        }
        h /= c;
    }
}

/// Least n ≥ 1 with d | fⁿ, or None when some prime of d misses f.
pub fn least_power_divisible(f: &BigInt, d: &BigInt) -> Option<u32> {
    if d.is_zero() {
        return if f.is_zero() { Some(1) } else { None };
    }
    if !strip_shared(d, f).is_one() {
        return None;
    }
    let mut n = 1u32;
    let mut p = f.clone();
    while !(&p % d).is_zero() {
        p *= f;
        n += 1;
    }
    Some(n)
}

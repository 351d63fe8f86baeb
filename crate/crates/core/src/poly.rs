//! Sparse multivariate polynomials over ℚ or 𝔽_p.
//!
//! Terms live in a `BTreeMap` keyed by [`Mono`], whose `Ord` is graded reverse
//! lexicographic, so the last entry is the leading term. No zero coefficient is
//! ever stored; over 𝔽_p every coefficient is an integer in [0, p).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ext_gcd;

/// Exponent vector; the derived order is grevlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Mono {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// o / self, assuming self divides o.
    pub fn quo(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn norm(&self, q: BigRational) -> BigRational {
        match self {
            Field::Q => q,
            Field::Fp(p) => {
                let p = BigInt::from(*p);
                let num = q.numer().mod_floor(&p);
                let den = q.denom().mod_floor(&p);
                let (_, inv, _) = ext_gcd(&den, &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_int(&self, v: BigInt) -> BigRational {
        self.norm(BigRational::from_integer(v))
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(-a)
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: &BigRational) -> BigRational {
        match self {
            Field::Q => a.recip(),
            Field::Fp(_) => self.norm(BigRational::new(BigInt::one(), a.to_integer())),
        }
    }

    pub fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.mul(a, &self.inv(b))
    }

    /// Whether a rational is representable (denominator invertible).
    pub fn admits(&self, q: &BigRational) -> bool {
        match self {
            Field::Q => true,
            Field::Fp(p) => !(q.denom() % BigInt::from(*p)).is_zero(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(n: usize, c: BigRational) -> Poly {
        Poly::monomial(Mono::one(n), c)
    }

    pub fn monomial(m: Mono, c: BigRational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(n: usize, i: usize) -> Poly {
        Poly::monomial(Mono::var(n, i), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Leading (grevlex-largest) term.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, f: &Field, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = f.add(v, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(f, m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, c: &BigRational, f: &Field) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &BigRational, f: &Field) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), f.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(f, m1.mul(m2), f.mul(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, e: u32, f: &Field, n: usize) -> Poly {
        let mut acc = Poly::constant(n, BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Substitutes `vals[i]` (polynomials in `m` variables) for variable i.
    pub fn substitute(&self, vals: &[Poly], f: &Field, m: usize) -> Poly {
        let mut r = Poly::zero();
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&vals[i].pow(e, f, m), f);
                }
            }
            r = r.add(&t, f);
        }
        r
    }

    /// Makes the leading coefficient 1 (no-op on zero).
    pub fn monic(&self, f: &Field) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&f.inv(c), f),
            None => Poly::zero(),
        }
    }

    /// Largest absolute numerator or denominator, a size measure for tie breaks.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs().max(c.denom().abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        // X² > XY > Y² > X > Y > 1 with X first.
        let ms = [vec![2, 0], vec![1, 1], vec![0, 2], vec![1, 0], vec![0, 1], vec![0, 0]];
        for w in ms.windows(2) {
            assert_eq!(grevlex(&w[0], &w[1]), Ordering::Greater);
        }
        // Equal degree and last exponent: more Y makes the monomial smaller.
        assert_eq!(grevlex(&[1, 1, 1], &[2, 0, 1]), Ordering::Less);
    }

    #[test]
    fn fp_normalisation() {
        let f = Field::Fp(5);
        let half = f.norm(BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(half, BigRational::from_integer(BigInt::from(3)));
        assert_eq!(f.inv(&half), BigRational::from_integer(BigInt::from(2)));
    }
}

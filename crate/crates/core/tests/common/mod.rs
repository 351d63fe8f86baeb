//! Independent re-evaluation of certificate identities. Each ring maps into
//! a target with its own arithmetic: ℤ and ℤ/n exactly, polynomial rings by
//! evaluation at points, extensions by coordinates reduced modulo the monic.
//! Injective images (ℤ, ℤ/n, extensions of those) decide zero exactly; point
//! evaluation is a necessary condition checked at several points.

#![allow(dead_code)]

use krull_core::chain::{CollapseCertificate, IdealisticChain};
use krull_core::ring::Kind;
use krull_core::{Elem, Field, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coordinates over the base image; length 1 outside extensions.
pub type Val = Vec<BigRational>;

pub struct Hom {
    modulus: Option<BigInt>,
    point: Vec<BigRational>,
    /// f₀..f_{d−1} of the monic, as base images.
    tail: Option<Vec<BigRational>>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Hom {
    fn reduce(&self, x: BigRational) -> BigRational {
        match &self.modulus {
            Some(n) => {
                let num = x.numer().mod_floor(n);
                let den = x.denom().mod_floor(n);
                let inv = den.extended_gcd(n).x.mod_floor(n);
                BigRational::from_integer((num * inv).mod_floor(n))
            }
            None => x,
        }
    }

    fn base_image(&self, x: &Elem) -> BigRational {
        match x {
            Elem::Int(v) => self.reduce(BigRational::from_integer(v.clone())),
            Elem::Poly(p) => {
                let mut acc = BigRational::zero();
                for (m, c) in &p.terms {
                    let mut t = c.clone();
                    for (e, v) in m.0.iter().zip(&self.point) {
                        for _ in 0..*e {
                            t *= v;
                        }
                    }
                    acc += t;
                }
                self.reduce(acc)
            }
            Elem::Ext(_) => panic!("nested extensions are not supported"),
        }
    }

    pub fn image(&self, x: &Elem) -> Val {
        match (x, &self.tail) {
            (Elem::Ext(cs), Some(_)) => cs.iter().map(|c| self.base_image(c)).collect(),
            _ => vec![self.base_image(x)],
        }
    }

    fn d(&self) -> usize {
        self.tail.as_ref().map_or(1, Vec::len)
    }

    pub fn zero(&self) -> Val {
        vec![BigRational::zero(); self.d()]
    }

    pub fn one(&self) -> Val {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }

    pub fn add(&self, a: &Val, b: &Val) -> Val {
        a.iter().zip(b).map(|(x, y)| self.reduce(x + y)).collect()
    }

    pub fn neg(&self, a: &Val) -> Val {
        a.iter().map(|x| self.reduce(-x)).collect()
    }

    /// Schoolbook product, then Yᵈ = −Σ fᵢYⁱ from the top degree down.
    pub fn mul(&self, a: &Val, b: &Val) -> Val {
        let d = self.d();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        if let Some(tail) = &self.tail {
            for k in (d..prod.len()).rev() {
                let top = std::mem::take(&mut prod[k]);
                for (i, f) in tail.iter().enumerate() {
                    prod[k - d + i] -= &top * f;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().map(|x| self.reduce(x)).collect()
    }

    pub fn pow(&self, a: &Val, e: u64) -> Val {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &Val) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, cs: &[Elem], gs: &[Elem]) -> Val {
        cs.iter().zip(gs).fold(self.zero(), |acc, (c, g)| self.add(&acc, &self.mul(&self.image(c), &self.image(g))))
    }

    pub fn monoid(&self, gs: &[Elem], exp: &[u64]) -> Val {
        gs.iter().zip(exp).fold(self.one(), |acc, (g, &e)| self.mul(&acc, &self.pow(&self.image(g), e)))
    }
}

fn points(field: &Field, n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| match field {
                    Field::Q => BigRational::new(BigInt::from(rng.gen_range(-40i64..41)), BigInt::from(rng.gen_range(1i64..6))),
                    Field::Fp(p) => q(rng.gen_range(0..*p as i64)),
                })
                .collect()
        })
        .collect()
}

/// Homomorphisms out of `r`; a single exact one unless `r` involves
/// polynomial variables.
pub fn homs(r: &Ring, rng: &mut ChaCha8Rng) -> Vec<Hom> {
    match &r.kind {
        Kind::Z => vec![Hom { modulus: None, point: vec![], tail: None }],
        Kind::Zmod(n) => vec![Hom { modulus: Some(n.clone()), point: vec![], tail: None }],
        Kind::Poly { field, vars } => {
            let modulus = match field {
                Field::Q => None,
                Field::Fp(p) => Some(BigInt::from(*p)),
            };
            points(field, vars.len(), 6, rng)
                .into_iter()
                .map(|point| Hom { modulus: modulus.clone(), point, tail: None })
                .collect()
        }
        Kind::Ext { base, tail, .. } => homs(base, rng)
            .into_iter()
            .map(|h| {
                let t = tail.iter().map(|f| h.base_image(f)).collect();
                Hom { tail: Some(t), ..h }
            })
            .collect(),
    }
}

/// u₀(u₁(⋯(u_ℓ + j_ℓ)⋯) + j₁) + j₀ in the image.
pub fn nested(h: &Hom, c: &IdealisticChain, cert: &CollapseCertificate) -> Option<Val> {
    if cert.levels.len() != c.primes.len() {
        return None;
    }
    let mut acc: Option<Val> = None;
    for (p, lv) in c.primes.iter().zip(&cert.levels).rev() {
        if lv.exp.len() != p.u.len() || lv.cof.len() != p.j.len() {
            return None;
        }
        let u = h.monoid(&p.u, &lv.exp);
        let j = h.dot(&lv.cof, &p.j);
        acc = Some(match acc {
            None => h.add(&u, &j),
            Some(inner) => h.add(&h.mul(&u, &inner), &j),
        });
    }
    acc
}

pub fn collapse_holds(r: &Ring, c: &IdealisticChain, cert: &CollapseCertificate, rng: &mut ChaCha8Rng) -> bool {
    homs(r, rng).iter().all(|h| nested(h, c, cert).is_some_and(|v| h.is_zero(&v)))
}

/// x^e = Σ cᵢgᵢ.
pub fn membership_holds(r: &Ring, x: &Elem, e: u64, cof: &[Elem], gens: &[Elem], rng: &mut ChaCha8Rng) -> bool {
    cof.len() == gens.len()
        && homs(r, rng).iter().all(|h| h.is_zero(&h.add(&h.pow(&h.image(x), e), &h.neg(&h.dot(cof, gens)))))
}

/// Σ values = 0 for arbitrary images; used for identities like u + j = 0.
pub fn sum_is_zero(r: &Ring, xs: &[Elem], rng: &mut ChaCha8Rng) -> bool {
    homs(r, rng).iter().all(|h| h.is_zero(&xs.iter().fold(h.zero(), |acc, x| h.add(&acc, &h.image(x)))))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

//! Dense univariate polynomials over a base ring, coefficients low to high.
//! The zero polynomial is the empty vector; otherwise the top entry is nonzero.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};
use crate::ring::{Elem, Kind, Ring};

pub type UPoly = Vec<Elem>;

pub fn trim(r: &Ring, mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| r.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn deg(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn is_monic(r: &Ring, p: &[Elem]) -> bool {
    p.last().is_some_and(|c| r.is_one(c))
}

pub fn add(r: &Ring, a: &[Elem], b: &[Elem]) -> UPoly {
    let z = r.zero();
    let n = a.len().max(b.len());
    trim(r, (0..n).map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
}

pub fn neg(r: &Ring, a: &[Elem]) -> UPoly {
    a.iter().map(|c| r.neg(c)).collect()
}

pub fn sub(r: &Ring, a: &[Elem], b: &[Elem]) -> UPoly {
    add(r, a, &neg(r, b))
}

pub fn mul(r: &Ring, a: &[Elem], b: &[Elem]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = r.add(&c[i + j], &r.mul(x, y));
        }
    }
    trim(r, c)
}

pub fn scale(r: &Ring, a: &[Elem], c: &Elem) -> UPoly {
    trim(r, a.iter().map(|x| r.mul(x, c)).collect())
}

/// p(u·X): coefficient i multiplied by uⁱ.
pub fn scale_var(r: &Ring, p: &[Elem], u: &Elem) -> UPoly {
    let mut acc = r.one();
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        out.push(r.mul(c, &acc));
        acc = r.mul(&acc, u);
    }
    trim(r, out)
}

/// u^d·p(X/u) for d = deg p: coefficient i multiplied by u^{d−i}.
pub fn homogenize(r: &Ring, p: &[Elem], u: &Elem) -> UPoly {
    let d = p.len().saturating_sub(1);
    trim(r, p.iter().enumerate().map(|(i, c)| r.mul(c, &r.pow(u, (d - i) as u64))).collect())
}

/// Quotient and remainder by a monic divisor.
pub fn divrem_monic(r: &Ring, a: &[Elem], b: &[Elem]) -> (UPoly, UPoly) {
    assert!(is_monic(r, b), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(r, rem));
    }
    let mut q = vec![r.zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if r.is_zero(&c) {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = r.sub(&rem[k + i], &r.mul(&c, bi));
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(r, q), trim(r, rem))
}

pub fn show(r: &Ring, p: &[Elem], var: &str) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if r.is_zero(c) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = r.show(c);
        parts.push(match (i, cs.as_str()) {
            (0, _) => format!("({cs})"),
            (_, "1") => mono,
            _ => format!("({cs})*{mono}"),
        });
    }
    parts.join(" + ")
}

/// Exact quotient a/b in a base domain (ℤ or K[t]), if it exists.
pub fn exact_div(r: &Ring, a: &Elem, b: &Elem) -> Option<Elem> {
    if r.is_zero(b) {
        return r.is_zero(a).then(|| r.zero());
    }
    match &r.kind {
        Kind::Z => {
            let (q, m) = a.as_int().div_rem(b.as_int());
            m.is_zero().then_some(Elem::Int(q))
        }
        Kind::Poly { field, vars } if vars.len() == 1 => {
            let (q, m) = uni_divrem(field, a.as_poly(), b.as_poly());
            m.is_zero().then_some(Elem::Poly(q))
        }
        _ => None,
    }
}

fn lead_t(p: &Poly) -> (u32, num_rational::BigRational) {
    let (m, c) = p.terms.iter().max_by_key(|(m, _)| m.0[0]).expect("nonzero");
    (m.0[0], c.clone())
}

/// Division with remainder in K[t].
fn uni_divrem(f: &crate::poly::Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let (db, lb) = lead_t(b);
    let mut q = Poly::zero();
    let mut rem = a.clone();
    while !rem.is_zero() {
        let (dr, lr) = lead_t(&rem);
        if dr < db {
            break;
        }
        let t = Poly::monomial(Mono(vec![dr - db]), f.div(&lr, &lb));
        q = q.add(&t, f);
        rem = rem.sub(&t.mul(b, f), f);
    }
    (q, rem)
}

/// gcd in ℤ (nonnegative) or K[t] (monic); gcd(0, 0) = 0.
pub fn base_gcd(r: &Ring, a: &Elem, b: &Elem) -> Result<Elem> {
    match &r.kind {
        Kind::Z => Ok(Elem::Int(a.as_int().gcd(b.as_int()))),
        Kind::Poly { field, vars } if vars.len() == 1 => {
            let (mut x, mut y) = (a.as_poly().clone(), b.as_poly().clone());
            while !y.is_zero() {
                let (_, m) = uni_divrem(field, &x, &y);
                x = y;
                y = m;
            }
            Ok(Elem::Poly(if x.is_zero() { x } else { monic_t(&x, field) }))
        }
        _ => Err(Error::PreconditionBreach(format!("gcds need base ℤ or K[t], got {}", r.name()))),
    }
}

fn monic_t(p: &Poly, f: &crate::poly::Field) -> Poly {
    let (_, l) = lead_t(p);
    p.scale(&f.inv(&l), f)
}

/// Normal form of a denominator: positive in ℤ, monic in K[t].
fn normalize_den(r: &Ring, n: Elem, d: Elem) -> (Elem, Elem) {
    match &r.kind {
        Kind::Z if d.as_int().is_negative() => (r.neg(&n), r.neg(&d)),
        Kind::Poly { field, .. } => {
            let (_, l) = lead_t(d.as_poly());
            let inv = field.inv(&l);
            (Elem::Poly(n.as_poly().scale(&inv, field)), Elem::Poly(d.as_poly().scale(&inv, field)))
        }
        _ => (n, d),
    }
}

/// A fraction n/d over ℤ or K[t] in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frac {
    n: Elem,
    d: Elem,
}

fn frac(r: &Ring, n: Elem, d: Elem) -> Result<Frac> {
    if r.is_zero(&n) {
        return Ok(Frac { n, d: r.one() });
    }
    let g = base_gcd(r, &n, &d)?;
    let n = exact_div(r, &n, &g).expect("gcd divides");
    let d = exact_div(r, &d, &g).expect("gcd divides");
    let (n, d) = normalize_den(r, n, d);
    Ok(Frac { n, d })
}

fn fadd(r: &Ring, a: &Frac, b: &Frac) -> Result<Frac> {
    frac(r, r.add(&r.mul(&a.n, &b.d), &r.mul(&b.n, &a.d)), r.mul(&a.d, &b.d))
}

fn fmul(r: &Ring, a: &Frac, b: &Frac) -> Result<Frac> {
    frac(r, r.mul(&a.n, &b.n), r.mul(&a.d, &b.d))
}

fn finv(r: &Ring, a: &Frac) -> Result<Frac> {
    frac(r, a.d.clone(), a.n.clone())
}

fn ftrim(r: &Ring, mut p: Vec<Frac>) -> Vec<Frac> {
    while p.last().is_some_and(|c| r.is_zero(&c.n)) {
        p.pop();
    }
    p
}

/// Monic gcd over the fraction field of ℤ or K[t], brought back to the base
/// ring. Fails when a coefficient of the monic gcd is not integral.
pub fn monic_gcd_over_fractions(r: &Ring, a: &[Elem], b: &[Elem]) -> Result<UPoly> {
    let lift = |p: &[Elem]| -> Result<Vec<Frac>> { p.iter().map(|c| frac(r, c.clone(), r.one())).collect() };
    let (mut x, mut y) = (ftrim(r, lift(a)?), ftrim(r, lift(b)?));
    while !y.is_empty() {
        let inv = finv(r, y.last().unwrap())?;
        let dy = y.len() - 1;
        while x.len() > dy {
            let k = x.len() - 1 - dy;
            let c = fmul(r, x.last().unwrap(), &inv)?;
            for (i, yi) in y.iter().enumerate() {
                let t = fmul(r, &c, yi)?;
                let minus = Frac { n: r.neg(&t.n), d: t.d };
                x[k + i] = fadd(r, &x[k + i], &minus)?;
            }
            x = ftrim(r, x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    let Some(top) = x.last() else {
        return Ok(Vec::new());
    };
    let inv = finv(r, top)?;
    x.iter()
        .map(|c| {
            let m = fmul(r, c, &inv)?;
            exact_div(r, &m.n, &m.d).ok_or_else(|| {
                Error::PreconditionBreach(format!("monic gcd has the non-integral coefficient ({})/({})", r.show(&m.n), r.show(&m.d)))
            })
        })
        .collect()
}

//! Algebraic dependences of ℓ+1 polynomials in fewer than ℓ+1 variables, and
//! the pseudo-singular certificate they induce.
//!
//! Formal sequence variables t₁..t_s are ordered lexicographically with t₁
//! most significant. The distinguished monomial of a dependence Q is its
//! lexicographically smallest one: every other monomial β then exceeds it at
//! the first index k where they differ, which is what places β in the
//! x₁^{m₁}⋯x_{k−1}^{m_{k−1}}·x_k^{1+m_k}·R_k part of the decomposition.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::PseudoSingularCertificate;
use crate::error::{Error, Result};
use crate::poly::{lex, Field, Mono, Poly};
use crate::ring::{Elem, Kind, Ring};

/// Columns of the evaluation map processed before giving up.
const COLUMN_CAP: usize = 40_000;

fn poly_ring(r: &Ring) -> Result<(Field, usize)> {
    match &r.kind {
        Kind::Poly { field, vars } => Ok((field.clone(), vars.len())),
        _ => Err(Error::UnsupportedRing(format!("{r} is not a polynomial ring over a field"))),
    }
}

/// K[t1..ts] holding dependences of a sequence of length s over `r`.
pub fn sequence_ring(r: &Ring, s: usize) -> Result<Ring> {
    let (field, _) = poly_ring(r)?;
    let names: Vec<String> = (1..=s).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(Ring::poly(field, &refs))
}

fn lex_first(q: &Poly) -> Option<(&Mono, &BigRational)> {
    q.terms.iter().min_by(|a, b| lex(&a.0 .0, &b.0 .0))
}

/// Certificate read off a dependence Q (Q(seq) = 0), after scaling Q so its
/// lexicographically first coefficient is 1.
pub fn dependence_to_certificate(r: &Ring, seq: &[Elem], q: &Poly) -> Result<PseudoSingularCertificate> {
    let (field, n) = poly_ring(r)?;
    let s = seq.len();
    let Some((m0, c0)) = lex_first(q) else { return Err(Error::NotADependence("Q = 0".into())) };
    if m0.0.len() != s {
        return Err(Error::ShapeMismatch(format!("Q has {} variables for {s} elements", m0.0.len())));
    }
    let vals: Vec<Poly> = seq.iter().map(|x| x.as_poly().clone()).collect();
    if !q.substitute(&vals, &field, n).is_zero() {
        return Err(Error::NotADependence("Q does not vanish on the sequence".into()));
    }
    let inv = field.inv(c0);
    let q = q.scale(&inv, &field);
    let m = m0.clone();
    let mut rs: Vec<Poly> = vec![Poly::zero(); s];
    for (beta, c) in &q.terms {
        if *beta == m {
            continue;
        }
        let k = (0..s).find(|&i| beta.0[i] != m.0[i]).expect("distinct monomials differ somewhere");
        if beta.0[k] < m.0[k] {
            return Err(Error::InternalMismatch("distinguished monomial is not lexicographically first".into()));
        }
        let mut e = vec![0u32; s];
        e[k] = beta.0[k] - m.0[k] - 1;
        e[k + 1..].copy_from_slice(&beta.0[k + 1..]);
        rs[k] = rs[k].add(&Poly::monomial(Mono(e), c.clone()), &field);
    }
    let a: Vec<Elem> = rs.iter().map(|rk| Elem::Poly(rk.substitute(&vals, &field, n))).collect();
    let cert = PseudoSingularCertificate { m: m.0.iter().map(|&e| e as u64).collect(), a };
    if !cert.verify(r, seq) {
        return Err(Error::InternalMismatch("certificate read off the dependence does not verify".into()));
    }
    Ok(cert)
}

fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Smallest m with more formal monomials of degree ≤ m in s variables than
/// monomials of degree ≤ d·m in n variables.
fn counting_bound(s: u64, n: u64, d: u64) -> u32 {
    let mut m = 1u64;
    while binom(m + s, s) <= binom(d * m + n, n) {
        m += 1;
    }
    m as u32
}

/// Exponent vectors of total degree `deg` in `s` variables, first coordinate
/// descending.
fn monomials_of_degree(s: usize, deg: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if cur.len() + 1 == s {
        cur.push(deg);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for e in (0..=deg).rev() {
        cur.push(e);
        monomials_of_degree(s, deg - e, out, cur);
        cur.pop();
    }
}

struct Row {
    v: Poly,
    comb: Poly,
}

/// A nonzero Q with Q(seq) = 0 of least total degree, found by incremental
/// elimination over the formal monomials in graded order. `degree_bound`
/// bounds the degrees of the sequence (default: their maximum); `m_override`
/// replaces the counting bound on deg Q, and `Ok(None)` means it was too low.
pub fn find_algebraic_dependence(
    r: &Ring,
    seq: &[Elem],
    degree_bound: Option<u32>,
    m_override: Option<u32>,
) -> Result<Option<Poly>> {
    let (field, n) = poly_ring(r)?;
    let s = seq.len();
    if s < n + 1 {
        return Err(Error::PreconditionBreach(format!("{s} elements in {n} variables need not be dependent")));
    }
    let actual = seq.iter().map(|x| r.degree(x)).max().unwrap_or(0);
    if let Some(d) = degree_bound {
        if d < actual {
            return Err(Error::BoundTooLow(format!("degree bound {d} below the sequence degree {actual}")));
        }
    }
    let d = degree_bound.unwrap_or(actual).max(1);
    let m_lim = m_override.unwrap_or_else(|| counting_bound(s as u64, n as u64, d as u64));
    let vals: Vec<Poly> = seq.iter().map(|x| x.as_poly().clone()).collect();
    let mut cache: HashMap<Vec<u32>, Poly> = HashMap::new();
    cache.insert(vec![0; s], Poly::constant(n, BigRational::one()));
    let mut pivots: HashMap<Mono, Row> = HashMap::new();
    let mut columns = 0usize;
    for deg in 0..=m_lim {
        let mut alphas = Vec::new();
        monomials_of_degree(s, deg, &mut alphas, &mut Vec::new());
        for alpha in alphas {
            columns += 1;
            if columns > COLUMN_CAP {
                return Err(Error::ResourceExhausted(format!("more than {COLUMN_CAP} formal monomials")));
            }
            let val = match cache.get(&alpha) {
                Some(v) => v.clone(),
                None => {
                    let i = alpha.iter().position(|&e| e > 0).expect("nonconstant");
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    let v = cache[&beta].mul(&vals[i], &field);
                    cache.insert(alpha.clone(), v.clone());
                    v
                }
            };
            let mut v = val;
            let mut comb = Poly::monomial(Mono(alpha.clone()), BigRational::one());
            loop {
                let Some((lm, lc)) = v.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                    return Ok(Some(normalize(&comb, &field)));
                };
                match pivots.get(&lm) {
                    Some(row) => {
                        v = v.sub(&row.v.scale(&lc, &field), &field);
                        comb = comb.sub(&row.comb.scale(&lc, &field), &field);
                    }
                    None => {
                        let inv = field.inv(&lc);
                        pivots.insert(lm, Row { v: v.scale(&inv, &field), comb: comb.scale(&inv, &field) });
                        break;
                    }
                }
            }
        }
    }
    if m_override.is_some() {
        return Ok(None);
    }
    Err(Error::InternalMismatch("no dependence within the counting bound".into()))
}

fn normalize(q: &Poly, field: &Field) -> Poly {
    let (_, c) = lex_first(q).expect("nonzero dependence");
    let inv = field.inv(c);
    q.scale(&inv, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(r: &Ring, s: usize, q: &str) -> Poly {
        sequence_ring(r, s).unwrap().parse(q).unwrap().as_poly().clone()
    }

    #[test]
    fn counting_bound_exceeds() {
        assert_eq!(counting_bound(2, 1, 1), 1);
        let m = counting_bound(3, 2, 2) as u64;
        assert!(binom(m + 3, 3) > binom(2 * m + 2, 2));
        assert!(binom(m + 2, 3) <= binom(2 * (m - 1) + 2, 2));
    }

    #[test]
    fn dependences_up_to_scalar() {
        let r = Ring::poly(Field::Q, &["X"]);
        let seq = r.parse_all(&["X", "X+1"]).unwrap();
        let q = find_algebraic_dependence(&r, &seq, None, None).unwrap().unwrap();
        // t₂ − t₁ − 1, scaled so the constant (lexicographically first) term is 1.
        assert_eq!(q, t(&r, 2, "-t2 + t1 + 1"));
        let r2 = Ring::poly(Field::Q, &["X", "Y"]);
        let seq = r2.parse_all(&["X", "Y", "X*Y"]).unwrap();
        let q = find_algebraic_dependence(&r2, &seq, None, None).unwrap().unwrap();
        assert_eq!(q, t(&r2, 3, "t3 - t1*t2"));
        let err = find_algebraic_dependence(&r, &r.parse_all(&["X"]).unwrap(), None, None);
        assert!(matches!(err, Err(Error::PreconditionBreach(_))));
    }

    #[test]
    fn certificates_from_dependences() {
        let r = Ring::poly(Field::Q, &["X"]);
        let seq = r.parse_all(&["X", "X"]).unwrap();
        let c = dependence_to_certificate(&r, &seq, &t(&r, 2, "t1 - t2")).unwrap();
        assert_eq!(c.m, vec![0, 1]);
        assert!(c.verify(&r, &seq));
        let seq = r.parse_all(&["X^2", "X^3"]).unwrap();
        let c = dependence_to_certificate(&r, &seq, &t(&r, 2, "t1^3 - t2^2")).unwrap();
        assert_eq!(c.m, vec![0, 2]);
        assert!(c.verify(&r, &seq));
        assert!(matches!(dependence_to_certificate(&r, &seq, &Poly::zero()), Err(Error::NotADependence(_))));
        assert!(matches!(
            dependence_to_certificate(&r, &seq, &t(&r, 2, "t1 - t2")),
            Err(Error::NotADependence(_))
        ));
    }

    #[test]
    fn override_too_low() {
        let r = Ring::poly(Field::Q, &["X", "Y"]);
        let seq = r.parse_all(&["X", "Y", "X*Y"]).unwrap();
        assert_eq!(find_algebraic_dependence(&r, &seq, None, Some(1)).unwrap(), None);
        assert!(matches!(find_algebraic_dependence(&r, &seq, Some(1), None), Err(Error::BoundTooLow(_))));
    }
}

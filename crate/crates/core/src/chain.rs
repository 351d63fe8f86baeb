//! Idealistic primes and chains, collapse certificates and their nested
//! evaluation, and characteristic polynomials of multiplication maps.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groebner::zmodule::echelon;
use crate::ring::{Elem, Kind, Ring};

/// (J, U): J generates the ideal part, U the monoid part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealisticPrime {
    pub j: Vec<Elem>,
    pub u: Vec<Elem>,
}

impl IdealisticPrime {
    pub fn new(j: Vec<Elem>, u: Vec<Elem>) -> Self {
        IdealisticPrime { j, u }
    }
}

/// Nonempty list of idealistic primes; its length is the count minus one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealisticChain {
    pub primes: Vec<IdealisticPrime>,
}

impl IdealisticChain {
    pub fn new(primes: Vec<IdealisticPrime>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Invalid("a chain needs at least one idealistic prime".into()));
        }
        Ok(IdealisticChain { primes })
    }

    pub fn single(j: Vec<Elem>, u: Vec<Elem>) -> Self {
        IdealisticChain { primes: vec![IdealisticPrime { j, u }] }
    }

    /// ((0, x₁), (x₁, x₂), …, (x_ℓ, 1)).
    pub fn elementary(r: &Ring, xs: &[Elem]) -> Self {
        let mut primes = Vec::with_capacity(xs.len() + 1);
        let mut prev = r.zero();
        for x in xs {
            primes.push(IdealisticPrime { j: vec![prev], u: vec![x.clone()] });
            prev = x.clone();
        }
        primes.push(IdealisticPrime { j: vec![prev], u: vec![r.one()] });
        IdealisticChain { primes }
    }

    pub fn len(&self) -> usize {
        self.primes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn from_json(r: &Ring, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("chain must be an object".into()))?;
        reject_unknown(obj, &["chain"])?;
        let arr = obj
            .get("chain")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("\"chain\" must be a list".into()))?;
        let primes = arr.iter().map(|p| prime_from_json(r, p)).collect::<Result<Vec<_>>>()?;
        IdealisticChain::new(primes)
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({ "chain": self.primes.iter().map(|p| prime_to_json(r, p)).collect::<Vec<_>>() })
    }
}

pub fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Invalid(format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

pub fn elems_from_json(r: &Ring, v: Option<&Value>, what: &str) -> Result<Vec<Elem>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| Error::Invalid(format!("{what} must be a list")))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => r.parse(s),
            Value::Number(n) => r.parse(&n.to_string()),
            _ => Err(Error::Invalid(format!("{what}: elements are strings"))),
        })
        .collect()
}

pub fn elems_to_json(r: &Ring, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(r.show(x))).collect())
}

pub fn prime_from_json(r: &Ring, v: &Value) -> Result<IdealisticPrime> {
    let obj = v.as_object().ok_or_else(|| Error::Invalid("idealistic prime must be an object".into()))?;
    reject_unknown(obj, &["J", "U"])?;
    Ok(IdealisticPrime { j: elems_from_json(r, obj.get("J"), "J")?, u: elems_from_json(r, obj.get("U"), "U")? })
}

pub fn prime_to_json(r: &Ring, p: &IdealisticPrime) -> Value {
    json!({ "J": elems_to_json(r, &p.j), "U": elems_to_json(r, &p.u) })
}

/// Exponents on the U-generators and cofactors on the J-generators of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub exp: Vec<u64>,
    pub cof: Vec<Elem>,
}

/// One level per idealistic prime; `eval_nested` of a valid certificate is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub levels: Vec<Level>,
}

impl CollapseCertificate {
    fn check_shape(&self, c: &IdealisticChain) -> Result<()> {
        if self.levels.len() != c.primes.len() {
            return Err(Error::ShapeMismatch(format!("{} levels for {} primes", self.levels.len(), c.primes.len())));
        }
        for (i, (l, p)) in self.levels.iter().zip(&c.primes).enumerate() {
            if l.exp.len() != p.u.len() || l.cof.len() != p.j.len() {
                return Err(Error::ShapeMismatch(format!("level {i}")));
            }
        }
        Ok(())
    }

    /// uᵢ = ∏ g^e over the level's monoid generators.
    pub fn u(&self, r: &Ring, c: &IdealisticChain, i: usize) -> Elem {
        let mut acc = r.one();
        for (g, &e) in c.primes[i].u.iter().zip(&self.levels[i].exp) {
            if e > 0 {
                acc = r.mul(&acc, &r.pow(g, e));
            }
        }
        acc
    }

    /// jᵢ = Σ c·g over the level's ideal generators.
    pub fn j(&self, r: &Ring, c: &IdealisticChain, i: usize) -> Elem {
        r.dot(&self.levels[i].cof, &c.primes[i].j)
    }

    pub fn verify(&self, r: &Ring, c: &IdealisticChain) -> bool {
        eval_nested(r, c, self).map(|v| r.is_zero(&v)).unwrap_or(false)
    }

    pub fn total_exponent(&self) -> u64 {
        self.levels.iter().flat_map(|l| l.exp.iter()).sum()
    }

    pub fn to_json(&self, r: &Ring, c: &IdealisticChain) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .zip(&c.primes)
            .map(|(l, p)| {
                let mut exp = Map::new();
                for (g, e) in p.u.iter().zip(&l.exp) {
                    let k = r.show(g);
                    let prev = exp.get(&k).and_then(Value::as_u64).unwrap_or(0);
                    exp.insert(k, json!(prev + e));
                }
                let mut cof: Vec<(String, Elem)> = Vec::new();
                for (g, x) in p.j.iter().zip(&l.cof) {
                    let k = r.show(g);
                    match cof.iter_mut().find(|(kk, _)| *kk == k) {
                        Some((_, v)) => *v = r.add(v, x),
                        None => cof.push((k, x.clone())),
                    }
                }
                let cof: Map<String, Value> = cof.into_iter().map(|(k, v)| (k, json!(r.show(&v)))).collect();
                json!({ "exp": exp, "cof": cof })
            })
            .collect();
        json!({ "levels": levels })
    }

    pub fn from_json(r: &Ring, c: &IdealisticChain, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("certificate must be an object".into()))?;
        reject_unknown(obj, &["levels"])?;
        let arr = obj
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("\"levels\" must be a list".into()))?;
        if arr.len() != c.primes.len() {
            return Err(Error::ShapeMismatch(format!("{} levels for {} primes", arr.len(), c.primes.len())));
        }
        let mut levels = Vec::new();
        for (lv, p) in arr.iter().zip(&c.primes) {
            let lo = lv.as_object().ok_or_else(|| Error::Invalid("level must be an object".into()))?;
            reject_unknown(lo, &["exp", "cof"])?;
            let mut exp = vec![0u64; p.u.len()];
            if let Some(m) = lo.get("exp").and_then(Value::as_object) {
                for (k, e) in m {
                    let e = e.as_u64().ok_or_else(|| Error::Invalid(format!("exponent of {k} must be a natural")))?;
                    let g = r.parse(k)?;
                    let i = p.u.iter().position(|x| *x == g).ok_or_else(|| Error::ShapeMismatch(format!("{k} is not a U-generator")))?;
                    exp[i] += e;
                }
            }
            let mut cof = vec![r.zero(); p.j.len()];
            if let Some(m) = lo.get("cof").and_then(Value::as_object) {
                for (k, x) in m {
                    let x = x.as_str().ok_or_else(|| Error::Invalid(format!("cofactor of {k} must be a string")))?;
                    let g = r.parse(k)?;
                    let i = p.j.iter().position(|y| *y == g).ok_or_else(|| Error::ShapeMismatch(format!("{k} is not a J-generator")))?;
                    cof[i] = r.add(&cof[i], &r.parse(x)?);
                }
            }
            levels.push(Level { exp, cof });
        }
        Ok(CollapseCertificate { levels })
    }
}

/// u₀·(u₁·(⋯(u_ℓ + j_ℓ)⋯) + j₁) + j₀.
pub fn eval_nested(r: &Ring, c: &IdealisticChain, cert: &CollapseCertificate) -> Result<Elem> {
    cert.check_shape(c)?;
    let l = c.len();
    let mut v = r.add(&cert.u(r, c, l), &cert.j(r, c, l));
    for i in (0..l).rev() {
        v = r.add(&r.mul(&cert.u(r, c, i), &v), &cert.j(r, c, i));
    }
    Ok(v)
}

/// det(T·I − M) by Berkowitz's division-free algorithm; coefficients low to
/// high, the last one being 1.
pub fn char_poly(r: &Ring, m: &[Vec<Elem>]) -> Vec<Elem> {
    let n = m.len();
    // High-to-low coefficient vector of the trailing k×k submatrix.
    let mut acc = vec![r.one()];
    for k in (0..n).rev() {
        let sz = n - k;
        let a11 = &m[k][k];
        let row: Vec<&Elem> = (k + 1..n).map(|j| &m[k][j]).collect();
        let mut col: Vec<Elem> = (k + 1..n).map(|i| m[i][k].clone()).collect();
        let mut q = vec![r.one(), r.neg(a11)];
        for _ in 0..sz.saturating_sub(1) {
            let rc = row.iter().zip(&col).fold(r.zero(), |s, (a, b)| r.add(&s, &r.mul(a, b)));
            q.push(r.neg(&rc));
            col = (k + 1..n)
                .map(|i| (k + 1..n).zip(&col).fold(r.zero(), |s, (j, c)| r.add(&s, &r.mul(&m[i][j], c))))
                .collect();
        }
        let mut next = vec![r.zero(); sz + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, a) in acc.iter().enumerate() {
                if i >= j {
                    *slot = r.add(slot, &r.mul(&q[i - j], a));
                }
            }
        }
        acc = next;
    }
    acc.reverse();
    acc
}

/// Matrix (over the base ring) of multiplication by x on the power basis of
/// an extension: column j holds the coordinates of x·Yʲ.
pub fn multiplication_matrix(s: &Ring, x: &Elem) -> Vec<Vec<Elem>> {
    let (base, _, tail) = s.ext_parts().expect("extension ring");
    let d = tail.len();
    let y = s.var(base.nvars());
    let mut cols = Vec::with_capacity(d);
    let mut cur = x.clone();
    for _ in 0..d {
        cols.push(cur.coords().to_vec());
        cur = s.mul(&cur, &y);
    }
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Characteristic polynomial (over the base ring, low to high) of
/// multiplication by x on the module spanned by `gens`. The power basis is
/// always accepted; other spans need a base ring with integer linear algebra.
pub fn char_poly_of_multiplication(s: &Ring, gens: &[Elem], x: &Elem) -> Result<Vec<Elem>> {
    let (base, _, tail) = s.ext_parts().ok_or_else(|| Error::UnsupportedRing("not an extension".into()))?;
    let d = tail.len();
    let y = s.var(base.nvars());
    let power: Vec<Elem> = (0..d).map(|k| s.pow(&y, k as u64)).collect();
    if gens == power.as_slice() {
        return Ok(char_poly(base, &multiplication_matrix(s, x)));
    }
    if !matches!(base.kind, Kind::Z | Kind::Zmod(_)) {
        return Err(Error::NotExpressible("non-basis spans need base Z or Z/n".into()));
    }
    let vec_of = |e: &Elem| -> Vec<num_bigint::BigInt> { e.coords().iter().map(|c| c.as_int().clone()).collect() };
    let mut rows: Vec<Vec<num_bigint::BigInt>> = gens.iter().map(vec_of).collect();
    if let Some(n) = base.modulus() {
        for k in 0..d {
            let mut v = vec![num_bigint::BigInt::from(0); d];
            v[k] = n.clone();
            rows.push(v);
        }
    }
    let ech = echelon(&rows, d);
    let k = gens.len();
    let mut m = vec![vec![base.zero(); k]; k];
    for (j, g) in gens.iter().enumerate() {
        let img = s.mul(x, g);
        let c = ech
            .solve(&vec_of(&img))
            .ok_or_else(|| Error::NotExpressible(format!("x·{} leaves the span", s.show(g))))?;
        for i in 0..k {
            m[i][j] = base.from_int(&c[i]);
        }
    }
    Ok(char_poly(base, &m))
}

/// Evaluates a univariate polynomial with base coefficients (low to high) at an
/// element of the extension.
pub fn eval_univariate(s: &Ring, coeffs: &[Elem], x: &Elem) -> Elem {
    let mut acc = s.zero();
    for c in coeffs.iter().rev() {
        acc = s.add(&s.mul(&acc, x), &s.embed(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    #[test]
    fn eval_nested_examples() {
        let z4 = Ring::zmod(4);
        let c = IdealisticChain::new(vec![
            IdealisticPrime::new(vec![], vec![z4.from_i64(2)]),
            IdealisticPrime::new(vec![z4.from_i64(2)], vec![z4.one()]),
        ])
        .unwrap();
        let cert = CollapseCertificate {
            levels: vec![Level { exp: vec![2], cof: vec![] }, Level { exp: vec![0], cof: vec![z4.zero()] }],
        };
        assert_eq!(eval_nested(&z4, &c, &cert).unwrap(), z4.zero());
        let z = Ring::integers();
        let cz = IdealisticChain::new(vec![
            IdealisticPrime::new(vec![], vec![z.from_i64(2)]),
            IdealisticPrime::new(vec![z.from_i64(2)], vec![z.one()]),
        ])
        .unwrap();
        let cert = CollapseCertificate {
            levels: vec![Level { exp: vec![1], cof: vec![] }, Level { exp: vec![1], cof: vec![z.zero()] }],
        };
        assert_eq!(eval_nested(&z, &cz, &cert).unwrap(), z.from_i64(2));
        let q = Ring::poly(Field::Q, &["X"]);
        let cq = IdealisticChain::new(vec![
            IdealisticPrime::new(vec![], vec![q.parse("X").unwrap()]),
            IdealisticPrime::new(vec![q.parse("X").unwrap()], vec![q.one()]),
        ])
        .unwrap();
        let cert = CollapseCertificate {
            levels: vec![Level { exp: vec![1], cof: vec![] }, Level { exp: vec![1], cof: vec![q.from_i64(-1)] }],
        };
        assert_eq!(eval_nested(&q, &cq, &cert).unwrap(), q.parse("X - X^2").unwrap());
        let bad = CollapseCertificate { levels: vec![Level { exp: vec![], cof: vec![] }] };
        assert!(matches!(eval_nested(&q, &cq, &bad), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn char_poly_examples() {
        let z = Ring::integers();
        let s = Ring::extension(&z, "Y", "Y^2-2").unwrap();
        let basis = vec![s.one(), s.var(0)];
        let p = char_poly_of_multiplication(&s, &basis, &s.var(0)).unwrap();
        assert_eq!(p, vec![z.from_i64(-2), z.zero(), z.one()]);
        let zi = Ring::extension(&z, "Y", "Y^2+1").unwrap();
        let p = char_poly_of_multiplication(&zi, &[zi.one(), zi.var(0)], &zi.parse("1+Y").unwrap()).unwrap();
        assert_eq!(p, vec![z.from_i64(2), z.from_i64(-2), z.one()]);
        let p = char_poly_of_multiplication(&zi, &[zi.one(), zi.var(0)], &zi.zero()).unwrap();
        assert_eq!(p, vec![z.zero(), z.zero(), z.one()]);
    }

    #[test]
    fn chain_json_round_trip() {
        let r = Ring::poly(Field::Q, &["x", "y"]);
        let v: Value = serde_json::from_str(r#"{"chain":[{"J":["x"],"U":["y"]},{"J":[],"U":["x*y+1"]}]}"#).unwrap();
        let c = IdealisticChain::from_json(&r, &v).unwrap();
        assert_eq!(IdealisticChain::from_json(&r, &c.to_json(&r)).unwrap(), c);
        let bad: Value = serde_json::from_str(r#"{"chain":[{"J":["x"],"W":[]}]}"#).unwrap();
        assert!(IdealisticChain::from_json(&r, &bad).is_err());
    }
}

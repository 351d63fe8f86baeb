//! Ring contexts and their elements.
//!
//! A [`Ring`] is immutable after construction and supplies arithmetic,
//! parsing and printing. Four families are supported: ℤ, ℤ/n, polynomial
//! rings over ℚ or 𝔽_p, and monogenic extensions R[Y]/(f) with f monic over
//! one of the first three.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::parse;
use crate::poly::{Field, Mono, Poly};

/// External description of a base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Modular(BigInt),
    Polynomial { field: Field, vars: Vec<String> },
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integers => Ok(()),
            RingDescriptor::Modular(n) => {
                if *n < BigInt::from(2) {
                    Err(Error::InvalidDescriptor(format!("modulus {n} < 2")))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::Polynomial { field, vars } => {
                if let Field::Fp(p) = field {
                    if !is_prime_u64(*p) {
                        return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
                    }
                }
                if vars.is_empty() {
                    return Err(Error::InvalidDescriptor("no variables".into()));
                }
                for (i, v) in vars.iter().enumerate() {
                    if !parse::is_identifier(v) {
                        return Err(Error::InvalidDescriptor(format!("bad variable name {v:?}")));
                    }
                    if vars[..i].contains(v) {
                        return Err(Error::InvalidDescriptor(format!("duplicate variable {v}")));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<RingDescriptor> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidDescriptor("descriptor must be an object".into()))?;
        let kind = obj
            .get("ring")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidDescriptor("missing \"ring\"".into()))?;
        let allowed: &[&str] = match kind {
            "Z" => &["ring"],
            "Zmod" => &["ring", "n"],
            "Poly" => &["ring", "coeff", "vars"],
            other => return Err(Error::InvalidDescriptor(format!("unknown ring {other:?}"))),
        };
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidDescriptor(format!("unknown field {k:?}")));
        }
        let d = match kind {
            "Z" => RingDescriptor::Integers,
            "Zmod" => {
                let n = obj
                    .get("n")
                    .and_then(json_int)
                    .ok_or_else(|| Error::InvalidDescriptor("\"n\" must be an integer".into()))?;
                RingDescriptor::Modular(n)
            }
            _ => {
                let field = match obj.get("coeff") {
                    Some(Value::String(s)) if s == "Q" => Field::Q,
                    Some(Value::Object(o)) if o.len() == 1 && o.contains_key("Fp") => {
                        let p = o["Fp"]
                            .as_u64()
                            .ok_or_else(|| Error::InvalidDescriptor("\"Fp\" must be a natural".into()))?;
                        Field::Fp(p)
                    }
                    _ => return Err(Error::InvalidDescriptor("\"coeff\" must be \"Q\" or {\"Fp\":p}".into())),
                };
                let vars = obj
                    .get("vars")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidDescriptor("\"vars\" must be a list".into()))?
                    .iter()
                    .map(|x| {
                        x.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::InvalidDescriptor("variable names must be strings".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                RingDescriptor::Polynomial { field, vars }
            }
        };
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> Value {
        match self {
            RingDescriptor::Integers => json!({"ring": "Z"}),
            RingDescriptor::Modular(n) => json!({"ring": "Zmod", "n": json_of_int(n)}),
            RingDescriptor::Polynomial { field, vars } => {
                let coeff = match field {
                    Field::Q => json!("Q"),
                    Field::Fp(p) => json!({ "Fp": p }),
                };
                json!({"ring": "Poly", "coeff": coeff, "vars": vars})
            }
        }
    }
}

fn json_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn json_of_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// A ring element in canonical form. Integers and residues use `Int`;
/// extension elements are coordinate vectors over the power basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Elem {
    Int(BigInt),
    Poly(Poly),
    Ext(Vec<Elem>),
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(BigInt::from(v))
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Elem::Int(v) => v,
            _ => panic!("expected an integer element"),
        }
    }

    pub fn as_poly(&self) -> &Poly {
        match self {
            Elem::Poly(p) => p,
            _ => panic!("expected a polynomial element"),
        }
    }

    pub fn coords(&self) -> &[Elem] {
        match self {
            Elem::Ext(c) => c,
            _ => panic!("expected an extension element"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Z,
    Zmod(BigInt),
    Poly { field: Field, vars: Vec<String> },
    /// R[var]/(var^d + Σ fᵢ·varⁱ); `tail` holds f₀..f_{d−1}.
    Ext { base: Box<Ring>, var: String, tail: Vec<Elem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub kind: Kind,
}

impl Ring {
    pub fn make(d: &RingDescriptor) -> Result<Ring> {
        d.validate()?;
        let kind = match d {
            RingDescriptor::Integers => Kind::Z,
            RingDescriptor::Modular(n) => Kind::Zmod(n.clone()),
            RingDescriptor::Polynomial { field, vars } => Kind::Poly { field: field.clone(), vars: vars.clone() },
        };
        Ok(Ring { kind })
    }

    pub fn integers() -> Ring {
        Ring { kind: Kind::Z }
    }

    pub fn zmod(n: u64) -> Ring {
        Ring::make(&RingDescriptor::Modular(BigInt::from(n))).expect("modulus ≥ 2")
    }

    pub fn poly(field: Field, vars: &[&str]) -> Ring {
        Ring::make(&RingDescriptor::Polynomial {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
        .expect("valid polynomial descriptor")
    }

    /// R[var]/(f) for monic f given by its parsed form in `var`.
    pub fn extension(base: &Ring, var: &str, monic: &str) -> Result<Ring> {
        if matches!(base.kind, Kind::Ext { .. }) {
            return Err(Error::InvalidDescriptor("nested extensions are not supported".into()));
        }
        if !parse::is_identifier(var) || base.var_names().iter().any(|v| v == var) {
            return Err(Error::InvalidDescriptor(format!("bad extension variable {var:?}")));
        }
        let coeffs = parse::parse_univariate(base, var, monic)?;
        let d = coeffs.len().saturating_sub(1);
        if d == 0 {
            return Err(Error::InvalidDescriptor("monic polynomial must have degree ≥ 1".into()));
        }
        if !base.is_one(&coeffs[d]) {
            return Err(Error::InvalidDescriptor(format!("{monic} is not monic")));
        }
        Ok(Ring {
            kind: Kind::Ext { base: Box::new(base.clone()), var: var.to_string(), tail: coeffs[..d].to_vec() },
        })
    }

    pub fn descriptor(&self) -> Option<RingDescriptor> {
        match &self.kind {
            Kind::Z => Some(RingDescriptor::Integers),
            Kind::Zmod(n) => Some(RingDescriptor::Modular(n.clone())),
            Kind::Poly { field, vars } => Some(RingDescriptor::Polynomial { field: field.clone(), vars: vars.clone() }),
            Kind::Ext { .. } => None,
        }
    }

    pub fn nvars(&self) -> usize {
        match &self.kind {
            Kind::Poly { vars, .. } => vars.len(),
            _ => 0,
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        match &self.kind {
            Kind::Poly { vars, .. } => vars.clone(),
            Kind::Ext { base, var, .. } => {
                let mut v = base.var_names();
                v.push(var.clone());
                v
            }
            _ => Vec::new(),
        }
    }

    pub fn field(&self) -> Option<&Field> {
        match &self.kind {
            Kind::Poly { field, .. } => Some(field),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match &self.kind {
            Kind::Zmod(n) => Some(n),
            _ => None,
        }
    }

    pub fn ext_parts(&self) -> Option<(&Ring, &str, &[Elem])> {
        match &self.kind {
            Kind::Ext { base, var, tail } => Some((base, var, tail)),
            _ => None,
        }
    }

    /// Degree of the extension; 1 for base rings.
    pub fn rank(&self) -> usize {
        match &self.kind {
            Kind::Ext { tail, .. } => tail.len(),
            _ => 1,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.kind {
            Kind::Z | Kind::Zmod(_) => Elem::Int(BigInt::zero()),
            Kind::Poly { .. } => Elem::Poly(Poly::zero()),
            Kind::Ext { base, tail, .. } => Elem::Ext(vec![base.zero(); tail.len()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_int(&BigInt::from(v))
    }

    pub fn from_int(&self, v: &BigInt) -> Elem {
        match &self.kind {
            Kind::Z => Elem::Int(v.clone()),
            Kind::Zmod(n) => Elem::Int(v.mod_floor(n)),
            Kind::Poly { field, vars } => Elem::Poly(Poly::constant(vars.len(), field.from_int(v.clone()))),
            Kind::Ext { base, .. } => self.embed(&base.from_int(v)),
        }
    }

    /// A rational constant; fails unless the ring contains it.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        if q.is_integer() {
            return Ok(self.from_int(&q.to_integer()));
        }
        match &self.kind {
            Kind::Poly { field, vars } => {
                if !field.admits(q) {
                    return Err(Error::Parse(format!("{q} has a zero denominator in {field:?}")));
                }
                Ok(Elem::Poly(Poly::constant(vars.len(), field.norm(q.clone()))))
            }
            Kind::Ext { base, .. } => Ok(self.embed(&base.from_rational(q)?)),
            _ => Err(Error::Parse(format!("fraction {q} is not an element of this ring"))),
        }
    }

    /// The i-th variable (extension variable last for extensions).
    pub fn var(&self, i: usize) -> Elem {
        match &self.kind {
            Kind::Poly { vars, .. } => Elem::Poly(Poly::var(vars.len(), i)),
            Kind::Ext { base, tail, .. } => {
                let nb = base.nvars();
                if i < nb {
                    self.embed(&base.var(i))
                } else {
                    let mut c = vec![base.zero(); tail.len()];
                    if tail.len() == 1 {
                        return self.embed(&base.neg(&tail[0]));
                    }
                    c[1] = base.one();
                    Elem::Ext(c)
                }
            }
            _ => panic!("ring has no variables"),
        }
    }

    pub fn var_by_name(&self, name: &str) -> Option<Elem> {
        self.var_names().iter().position(|v| v == name).map(|i| self.var(i))
    }

    /// Base element as a constant extension element.
    pub fn embed(&self, b: &Elem) -> Elem {
        match &self.kind {
            Kind::Ext { base, tail, .. } => {
                let mut c = vec![base.zero(); tail.len()];
                c[0] = b.clone();
                Elem::Ext(c)
            }
            _ => b.clone(),
        }
    }

    /// The base-ring value of an extension element lying in the base.
    pub fn in_base(&self, x: &Elem) -> Option<Elem> {
        match &self.kind {
            Kind::Ext { base, .. } => {
                let c = x.coords();
                c[1..].iter().all(|v| base.is_zero(v)).then(|| c[0].clone())
            }
            _ => Some(x.clone()),
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(v) => v.is_zero(),
            Elem::Poly(p) => p.is_zero(),
            Elem::Ext(c) => match &self.kind {
                Kind::Ext { base, .. } => c.iter().all(|v| base.is_zero(v)),
                _ => false,
            },
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Z, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Kind::Zmod(n), Elem::Int(x), Elem::Int(y)) => Elem::Int((x + y).mod_floor(n)),
            (Kind::Poly { field, .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y, field)),
            (Kind::Ext { base, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("element does not belong to the ring"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.kind, a) {
            (Kind::Z, Elem::Int(x)) => Elem::Int(-x),
            (Kind::Zmod(n), Elem::Int(x)) => Elem::Int((-x).mod_floor(n)),
            (Kind::Poly { field, .. }, Elem::Poly(x)) => Elem::Poly(x.neg(field)),
            (Kind::Ext { base, .. }, Elem::Ext(x)) => Elem::Ext(x.iter().map(|u| base.neg(u)).collect()),
            _ => panic!("element does not belong to the ring"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Z, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Kind::Zmod(n), Elem::Int(x), Elem::Int(y)) => Elem::Int((x * y).mod_floor(n)),
            (Kind::Poly { field, .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.mul(y, field)),
            (Kind::Ext { base, tail, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                let d = tail.len();
                let mut c = vec![base.zero(); 2 * d - 1];
                for (i, u) in x.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        c[i + j] = base.add(&c[i + j], &base.mul(u, v));
                    }
                }
                Elem::Ext(reduce_monic(base, tail, c))
            }
            _ => panic!("element does not belong to the ring"),
        }
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Σ cᵢ·gᵢ.
    pub fn dot(&self, cs: &[Elem], gs: &[Elem]) -> Elem {
        let mut acc = self.zero();
        for (c, g) in cs.iter().zip(gs) {
            acc = self.add(&acc, &self.mul(c, g));
        }
        acc
    }

    /// Unit test for ℤ, ℤ/n and constant polynomials; None when undecided.
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        match (&self.kind, a) {
            (Kind::Z, Elem::Int(x)) => (x.abs().is_one()).then(|| Elem::Int(x.clone())),
            (Kind::Zmod(n), Elem::Int(x)) => {
                let (g, s, _) = crate::arith::ext_gcd(x, n);
                g.is_one().then(|| Elem::Int(s.mod_floor(n)))
            }
            (Kind::Poly { field, vars }, Elem::Poly(p)) => {
                let c = p.as_constant()?;
                (!c.is_zero()).then(|| Elem::Poly(Poly::constant(vars.len(), field.inv(&c))))
            }
            _ => None,
        }
    }

    /// Total degree of a polynomial (extension: max over coordinates, counting the
    /// extension variable); 0 for integers.
    pub fn degree(&self, a: &Elem) -> u32 {
        match (&self.kind, a) {
            (Kind::Poly { .. }, Elem::Poly(p)) => p.degree().unwrap_or(0),
            (Kind::Ext { base, .. }, Elem::Ext(c)) => c
                .iter()
                .enumerate()
                .filter(|(_, v)| !base.is_zero(v))
                .map(|(i, v)| base.degree(v) + i as u32)
                .max()
                .unwrap_or(0),
            _ => 0,
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        parse::parse_elem(self, s)
    }

    pub fn parse_all(&self, xs: &[&str]) -> Result<Vec<Elem>> {
        xs.iter().map(|s| self.parse(s)).collect()
    }

    pub fn show(&self, a: &Elem) -> String {
        match (&self.kind, a) {
            (Kind::Z | Kind::Zmod(_), Elem::Int(x)) => x.to_string(),
            (Kind::Poly { vars, .. }, Elem::Poly(p)) => show_poly(p, vars),
            (Kind::Ext { base, var, .. }, Elem::Ext(c)) => show_ext(base, var, c),
            _ => panic!("element does not belong to the ring"),
        }
    }

    /// Display-friendly name.
    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Z => "Z".into(),
            Kind::Zmod(n) => format!("Z/{n}"),
            Kind::Poly { field, vars } => {
                let f = match field {
                    Field::Q => "Q".to_string(),
                    Field::Fp(p) => format!("F{p}"),
                };
                format!("{f}[{}]", vars.join(","))
            }
            Kind::Ext { base, var, tail } => {
                let mut c = tail.to_vec();
                c.push(base.one());
                let m = show_ext_poly(base, var, &c);
                format!("{}[{var}]/({m})", base.name())
            }
        }
    }

    /// Whether every generator-free test for zero-divisors is trivial: ℤ, fields
    /// of polynomials, ℤ/p.
    pub fn is_domain_hint(&self) -> bool {
        match &self.kind {
            Kind::Z | Kind::Poly { .. } => true,
            Kind::Zmod(n) => n.to_u64().is_some_and(is_prime_u64),
            Kind::Ext { .. } => false,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Reduces a coefficient vector modulo the monic Y^d + Σ tailᵢYⁱ.
pub fn reduce_monic(base: &Ring, tail: &[Elem], mut c: Vec<Elem>) -> Vec<Elem> {
    let d = tail.len();
    for k in (d..c.len()).rev() {
        let lead = std::mem::replace(&mut c[k], base.zero());
        if base.is_zero(&lead) {
            continue;
        }
        for (i, t) in tail.iter().enumerate() {
            let idx = k - d + i;
            c[idx] = base.sub(&c[idx], &base.mul(&lead, t));
        }
    }
    c.truncate(d);
    while c.len() < d {
        c.push(base.zero());
    }
    c
}

fn show_mono(m: &Mono, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}

pub fn show_poly(p: &Poly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = show_mono(m, vars);
        if ms.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&ms);
        } else {
            out.push_str(&format!("{a}*{ms}"));
        }
    }
    out
}

fn show_ext_poly(base: &Ring, var: &str, c: &[Elem]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, v) in c.iter().enumerate().rev() {
        if base.is_zero(v) {
            continue;
        }
        let pw = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let s = base.show(v);
        let simple = !s.contains(' ');
        let t = if pw.is_empty() {
            if simple { s } else { format!("({s})") }
        } else if base.is_one(v) {
            pw
        } else if s == "-1" {
            format!("-{pw}")
        } else if simple {
            format!("{s}*{pw}")
        } else {
            format!("({s})*{pw}")
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(r) => {
                out.push_str(" - ");
                out.push_str(r);
            }
            None => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

fn show_ext(base: &Ring, var: &str, c: &[Elem]) -> String {
    show_ext_poly(base, var, c)
}

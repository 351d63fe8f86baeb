//! Sparse polynomials R[X₁..X_n] over any base ring R, and the restriction of
//! a pseudo-singularity certificate of (a₁..a_r, X₁..X_n) to one of (a₁..a_r).

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::collapse::PseudoSingularCertificate;
use crate::error::{Error, Result};
use crate::parse::{is_identifier, run, Target};
use crate::ring::{Elem, Kind, Ring};

/// Exponent vector → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BasePoly {
    pub terms: BTreeMap<Vec<u32>, Elem>,
}

/// R[X₁..X_n] with R a non-extension ring and Xᵢ distinct from R's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePolyRing {
    pub base: Ring,
    pub vars: Vec<String>,
}

impl BasePolyRing {
    pub fn new(base: &Ring, vars: &[&str]) -> Result<Self> {
        if matches!(base.kind, Kind::Ext { .. }) {
            return Err(Error::UnsupportedRing("polynomials over an extension".into()));
        }
        let taken = base.var_names();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || taken.iter().any(|t| t == v) || vars[..i].contains(v) {
                return Err(Error::InvalidDescriptor(format!("bad variable {v:?}")));
            }
        }
        Ok(BasePolyRing { base: base.clone(), vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> BasePoly {
        BasePoly::default()
    }

    pub fn constant(&self, c: &Elem) -> BasePoly {
        let mut p = BasePoly::default();
        if !self.base.is_zero(c) {
            p.terms.insert(vec![0; self.n()], c.clone());
        }
        p
    }

    pub fn one(&self) -> BasePoly {
        self.constant(&self.base.one())
    }

    pub fn var(&self, i: usize) -> BasePoly {
        let mut e = vec![0; self.n()];
        e[i] = 1;
        let mut p = BasePoly::default();
        p.terms.insert(e, self.base.one());
        p
    }

    pub fn coeff(&self, p: &BasePoly, m: &[u32]) -> Elem {
        p.terms.get(m).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// The base element when p is constant.
    pub fn as_constant(&self, p: &BasePoly) -> Option<Elem> {
        let zero = vec![0; self.n()];
        p.terms.keys().all(|m| *m == zero).then(|| self.coeff(p, &zero))
    }

    fn add_term(&self, p: &mut BasePoly, m: Vec<u32>, c: Elem) {
        let v = match p.terms.get(&m) {
            Some(old) => self.base.add(old, &c),
            None => c,
        };
        if self.base.is_zero(&v) {
            p.terms.remove(&m);
        } else {
            p.terms.insert(m, v);
        }
    }

    pub fn add(&self, a: &BasePoly, b: &BasePoly) -> BasePoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &BasePoly) -> BasePoly {
        BasePoly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect() }
    }

    pub fn sub(&self, a: &BasePoly, b: &BasePoly) -> BasePoly {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &BasePoly, b: &BasePoly) -> BasePoly {
        let mut out = BasePoly::default();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, m, self.base.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, a: &BasePoly, e: u64) -> BasePoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &BasePoly) -> bool {
        a.terms.is_empty()
    }

    pub fn parse(&self, s: &str) -> Result<BasePoly> {
        run(self, s)
    }

    pub fn parse_all(&self, xs: &[&str]) -> Result<Vec<BasePoly>> {
        xs.iter().map(|s| self.parse(s)).collect()
    }

    pub fn show_mono(&self, m: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(m)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn show(&self, p: &BasePoly) -> String {
        if p.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = self.show_mono(m);
                let cs = self.base.show(c);
                match (mono.as_str(), cs.as_str()) {
                    ("1", _) => format!("({cs})"),
                    (_, "1") => mono,
                    _ => format!("({cs})*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Target for BasePolyRing {
    type E = BasePoly;
    fn constant(&self, q: &BigRational) -> Result<BasePoly> {
        Ok(BasePolyRing::constant(self, &self.base.from_rational(q)?))
    }
    fn ident(&self, name: &str) -> Result<BasePoly> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(BasePolyRing::var(self, i));
        }
        let c = self.base.var_by_name(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        Ok(BasePolyRing::constant(self, &c))
    }
    fn add(&self, a: &BasePoly, b: &BasePoly) -> BasePoly {
        BasePolyRing::add(self, a, b)
    }
    fn neg(&self, a: &BasePoly) -> BasePoly {
        BasePolyRing::neg(self, a)
    }
    fn mul(&self, a: &BasePoly, b: &BasePoly) -> BasePoly {
        BasePolyRing::mul(self, a, b)
    }
    fn one(&self) -> BasePoly {
        BasePolyRing::one(self)
    }
}

/// x₁^{m₁}(⋯(x_s^{m_s}(1 + a_s x_s) + ⋯) + a₁x₁) = 0 in R[X].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCertificate {
    pub m: Vec<u64>,
    pub a: Vec<BasePoly>,
}

impl BaseCertificate {
    pub fn eval(&self, pr: &BasePolyRing, seq: &[BasePoly]) -> Result<BasePoly> {
        if self.m.len() != seq.len() || self.a.len() != seq.len() {
            return Err(Error::ShapeMismatch(format!("certificate for {} elements, sequence of {}", self.m.len(), seq.len())));
        }
        let mut acc = pr.one();
        for k in (0..seq.len()).rev() {
            let inner = pr.add(&acc, &pr.mul(&self.a[k], &seq[k]));
            acc = pr.mul(&pr.pow(&seq[k], self.m[k]), &inner);
        }
        Ok(acc)
    }

    pub fn to_json(&self, pr: &BasePolyRing) -> Value {
        json!({ "m": self.m, "a": self.a.iter().map(|p| pr.show(p)).collect::<Vec<_>>() })
    }
}

/// From a certificate for (a₁..a_r, X₁..X_n) in R[X] (aᵢ ∈ R) to one for
/// (a₁..a_r) in R: with p the exponents on the Xs, the coefficient of X^p in
/// the identity is the same nested form with each αₖ replaced by its X^p
/// coefficient, and the X-part contributes exactly 1.
pub fn restrict_certificate(pr: &BasePolyRing, seq: &[BasePoly], cert: &BaseCertificate) -> Result<PseudoSingularCertificate> {
    let n = pr.n();
    let r = seq.len().checked_sub(n).ok_or_else(|| Error::NotVariableTail(format!("{} elements for {n} variables", seq.len())))?;
    for j in 0..n {
        if seq[r + j] != pr.var(j) {
            return Err(Error::NotVariableTail(format!("element {} is {}, not {}", r + j, pr.show(&seq[r + j]), pr.vars[j])));
        }
    }
    let consts: Vec<Elem> = seq[..r]
        .iter()
        .map(|p| pr.as_constant(p).ok_or_else(|| Error::Invalid(format!("{} is not an element of the base ring", pr.show(p)))))
        .collect::<Result<_>>()?;
    let v = cert.eval(pr, seq)?;
    if !pr.is_zero(&v) {
        return Err(Error::NotACollapse(format!("the identity evaluates to {}", pr.show(&v))));
    }
    let p: Vec<u32> = cert.m[r..].iter().map(|&e| e as u32).collect();
    let out = PseudoSingularCertificate { m: cert.m[..r].to_vec(), a: cert.a[..r].iter().map(|a| pr.coeff(a, &p)).collect() };
    if !out.verify(&pr.base, &consts) {
        return Err(Error::InternalMismatch("restricted certificate does not verify".into()));
    }
    Ok(out)
}

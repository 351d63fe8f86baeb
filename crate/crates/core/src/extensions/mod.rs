//! Integral extensions S = R[Y]/(f) with f monic: traces of idealistic
//! primes, Lying Over, Going Up, Going Down and the supporting algebra.

mod above;
mod basepoly;
mod down;
mod linalg;
pub mod upoly;

pub use above::{above_chain, collapse_above, integral_alist, integral_alist_from, AboveReport, AlistCase, IntegralAlist};
pub use basepoly::{restrict_certificate, BaseCertificate, BasePoly, BasePolyRing};
pub use down::{
    gd_monic_gcd, going_down_flat, going_down_flat_ext, going_down_flat_poly, going_down_step, going_down_step_with, FlatCollapse,
    GoingDownStep,
};
pub use linalg::{determinant, minors_decompose, MinorStep, MinorsDecomposition};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::chain::{char_poly, elems_to_json, reject_unknown, multiplication_matrix, CollapseCertificate, IdealisticChain, IdealisticPrime, Level};
use crate::collapse::{certify_collapse, chain_collapses, final_ideal, in_saturated_ideal, in_saturated_monoid};
use crate::error::{Error, Result};
use crate::groebner::zmodule::echelon;
use crate::groebner::{groebner_basis, ideal_member, radical_member, Order};
use crate::poly::{Mono, Poly};
use crate::ring::{Elem, Kind, Ring, RingDescriptor};

/// The base ring of an extension, or an error naming the operation.
pub fn base_of(s: &Ring) -> Result<&Ring> {
    s.ext_parts()
        .map(|(b, _, _)| b)
        .ok_or_else(|| Error::UnsupportedRing(format!("{} is not an extension R[Y]/(f)", s.name())))
}

/// `{"base":{…},"monic":"Y^2+1"}` with an optional `"var"`; by default the
/// variable is the one identifier of `monic` that is not a base variable.
pub fn extension_from_json(v: &Value) -> Result<Ring> {
    let obj = v.as_object().ok_or_else(|| Error::InvalidDescriptor("extension must be an object".into()))?;
    reject_unknown(obj, &["base", "monic", "var"]).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
    let base = Ring::make(&RingDescriptor::from_json(
        obj.get("base").ok_or_else(|| Error::InvalidDescriptor("missing \"base\"".into()))?,
    )?)?;
    let monic = obj
        .get("monic")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidDescriptor("\"monic\" must be a string".into()))?;
    let var = match obj.get("var") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::InvalidDescriptor("\"var\" must be a string".into())),
        None => {
            let taken = base.var_names();
            let mut found: Vec<&str> = monic
                .split(|c: char| !(c.is_alphanumeric() || c == '_'))
                .filter(|t| t.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_'))
                .filter(|t| !taken.iter().any(|v| v == t))
                .collect();
            found.sort_unstable();
            found.dedup();
            match found.as_slice() {
                [] => "Y".to_string(),
                [one] => one.to_string(),
                _ => return Err(Error::InvalidDescriptor(format!("cannot tell the variable of {monic:?}; give \"var\""))),
            }
        }
    };
    Ring::extension(&base, &var, monic)
}

pub fn extension_to_json(s: &Ring) -> Value {
    let (base, var, tail) = s.ext_parts().expect("extension");
    let mut parts = vec![format!("{var}^{}", tail.len())];
    for (k, c) in tail.iter().enumerate().rev() {
        if base.is_zero(c) {
            continue;
        }
        parts.push(match k {
            0 => format!("({})", base.show(c)),
            1 => format!("({})*{var}", base.show(c)),
            _ => format!("({})*{var}^{k}", base.show(c)),
        });
    }
    json!({ "base": base.descriptor().expect("base ring").to_json(), "monic": parts.join(" + "), "var": var })
}

/// An element of S as an expression string or a coordinate array over the
/// power basis.
pub fn s_elem_from_json(s: &Ring, v: &Value) -> Result<Elem> {
    match v {
        Value::String(x) => s.parse(x),
        Value::Number(n) => s.parse(&n.to_string()),
        Value::Array(xs) => {
            let base = base_of(s)?;
            if xs.len() != s.rank() {
                return Err(Error::Invalid(format!("{} coordinates for rank {}", xs.len(), s.rank())));
            }
            let coords = xs
                .iter()
                .map(|x| match x {
                    Value::String(t) => base.parse(t),
                    Value::Number(n) => base.parse(&n.to_string()),
                    _ => Err(Error::Invalid("coordinates are strings".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            let y = s.var(base.nvars());
            let mut acc = s.zero();
            for c in coords.iter().rev() {
                acc = s.add(&s.mul(&acc, &y), &s.embed(c));
            }
            Ok(acc)
        }
        _ => Err(Error::Invalid("an element is a string or a coordinate array".into())),
    }
}

fn prod(r: &Ring, xs: &[Elem]) -> Elem {
    r.product(xs)
}

/// Generators of ⟨J⟩_S ∩ R. Over K[x…] by elimination of Y from ⟨J, f⟩; over
/// ℤ and ℤ/n from the Hermite form of the R-module J·S with the constant
/// coordinate ordered last.
pub fn trace_ideal(s: &Ring, j: &[Elem]) -> Result<Vec<Elem>> {
    let (base, var, tail) = s.ext_parts().ok_or_else(|| Error::UnsupportedRing("not an extension".into()))?;
    let d = tail.len();
    let out = match &base.kind {
        Kind::Z | Kind::Zmod(_) => {
            let y = s.var(base.nvars());
            let mut rows = Vec::new();
            for g in j {
                let mut cur = g.clone();
                for _ in 0..d {
                    rows.push(cur.coords().iter().rev().map(|c| c.as_int().clone()).collect::<Vec<BigInt>>());
                    cur = s.mul(&cur, &y);
                }
            }
            if let Some(n) = base.modulus() {
                for k in 0..d {
                    let mut v = vec![BigInt::from(0); d];
                    v[k] = n.clone();
                    rows.push(v);
                }
            }
            let ech = echelon(&rows, d);
            ech.pivots
                .iter()
                .position(|&p| p == d - 1)
                .map(|i| vec![base.from_int(&ech.rows[i][d - 1])])
                .unwrap_or_default()
        }
        Kind::Poly { field, vars } => {
            let mut names = vec![var.to_string()];
            names.extend(vars.iter().cloned());
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let big = Ring::poly(field.clone(), &name_refs);
            let lift = |e: &Elem| -> Elem {
                let mut p = Poly::zero();
                for (k, c) in e.coords().iter().enumerate() {
                    for (m, q) in &c.as_poly().terms {
                        let mut ex = vec![k as u32];
                        ex.extend_from_slice(&m.0);
                        p = p.add(&Poly::monomial(Mono(ex), q.clone()), field);
                    }
                }
                Elem::Poly(p)
            };
            let mut gens: Vec<Elem> = j.iter().map(lift).collect();
            let mut f = big.pow(&big.var(0), d as u64);
            for (k, t) in tail.iter().enumerate() {
                f = big.add(&f, &big.mul(&lift(&s.embed(t)), &big.pow(&big.var(0), k as u64)));
            }
            gens.push(f);
            groebner_basis(&big, &gens, Order::Elim(1))?
                .into_iter()
                .filter(|g| g.as_poly().degree_in(0) == 0)
                .map(|g| {
                    let mut p = Poly::zero();
                    for (m, q) in &g.as_poly().terms {
                        p = p.add(&Poly::monomial(Mono(m.0[1..].to_vec()), q.clone()), field);
                    }
                    Elem::Poly(p)
                })
                .collect()
        }
        Kind::Ext { .. } => return Err(Error::UnsupportedRing("nested extension".into())),
    };
    Ok(if out.is_empty() { vec![base.zero()] } else { out })
}

/// The trace (J_S ∩ R ; U_S ∩ R) of an idealistic prime of S. The monoid part
/// keeps the generators lying in R; `monoid_exact` is false when some were
/// dropped, in which case the trace monoid is only a lower approximation.
#[derive(Clone, Debug)]
pub struct Trace {
    pub prime: IdealisticPrime,
    pub monoid_exact: bool,
}

pub fn trace_prime(s: &Ring, p: &IdealisticPrime) -> Result<Trace> {
    let j = trace_ideal(s, &p.j)?;
    let kept: Vec<Elem> = p.u.iter().filter_map(|u| s.in_base(u)).collect();
    let monoid_exact = kept.len() == p.u.len();
    Ok(Trace { prime: IdealisticPrime::new(j, kept), monoid_exact })
}

/// xⁿ = Σ jᵢbᵢ with jᵢ ∈ I, bᵢ ∈ S, turned into x^{n·m} = Σ cₖgₖ over the
/// generators gₖ of I in R, via the characteristic polynomial of
/// multiplication by xⁿ written as Σ jᵢ·Mat(bᵢ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyingOver {
    pub n: u64,
    pub m: u64,
    pub cofactors: Vec<Elem>,
}

impl LyingOver {
    pub fn exponent(&self) -> u64 {
        self.n * self.m
    }

    pub fn verify(&self, r: &Ring, gens: &[Elem], x: &Elem) -> bool {
        self.cofactors.len() == gens.len() && r.pow(x, self.exponent()) == r.dot(&self.cofactors, gens)
    }

    pub fn to_json(&self, r: &Ring, gens: &[Elem], x: &Elem) -> Value {
        json!({
            "x": r.show(x),
            "n": self.n,
            "m": self.m,
            "exponent": self.exponent(),
            "ideal": elems_to_json(r, gens),
            "cofactors": elems_to_json(r, &self.cofactors),
        })
    }
}

pub fn lying_over(s: &Ring, gens: &[Elem], x: &Elem, n: u64, js: &[Elem], bs: &[Elem]) -> Result<LyingOver> {
    let base = base_of(s)?;
    if js.len() != bs.len() {
        return Err(Error::MalformedWitness(format!("{} coefficients for {} elements", js.len(), bs.len())));
    }
    let mut member = Vec::with_capacity(js.len());
    for j in js {
        let c = ideal_member(base, j, gens)?
            .ok_or_else(|| Error::MalformedWitness(format!("{} is not in the ideal", base.show(j))))?;
        member.push(c);
    }
    let lhs = s.embed(&base.pow(x, n));
    let rhs = js.iter().zip(bs).fold(s.zero(), |acc, (j, b)| s.add(&acc, &s.mul(&s.embed(j), b)));
    if lhs != rhs {
        return Err(Error::MalformedWitness(format!("{}^{n} ≠ Σ jᵢbᵢ in S", base.show(x))));
    }
    let d = s.rank();
    let mut mat = vec![vec![base.zero(); d]; d];
    for (j, b) in js.iter().zip(bs) {
        let mb = multiplication_matrix(s, b);
        for (row, mrow) in mat.iter_mut().zip(&mb) {
            for (e, v) in row.iter_mut().zip(mrow) {
                *e = base.add(e, &base.mul(j, v));
            }
        }
    }
    // χ(T) = T^d + Σ_{i<d} cᵢTⁱ with every cᵢ ∈ I, and χ(xⁿ) = 0.
    let chi = char_poly(base, &mat);
    let xn = base.pow(x, n);
    let mut cofactors = vec![base.zero(); gens.len()];
    for (i, c) in chi[..d].iter().enumerate() {
        let cof = ideal_member(base, c, gens)?
            .ok_or_else(|| Error::InternalMismatch(format!("characteristic coefficient {} escapes the ideal", base.show(c))))?;
        let w = base.neg(&base.pow(&xn, i as u64));
        for (acc, k) in cofactors.iter_mut().zip(&cof) {
            *acc = base.add(acc, &base.mul(&w, k));
        }
    }
    let out = LyingOver { n, m: d as u64, cofactors };
    if !out.verify(base, gens, x) {
        return Err(Error::InternalMismatch("lying-over identity does not verify".into()));
    }
    Ok(out)
}

/// When ∏U ∈ √(I·S) for a prime (I;U) of R: the R-side membership and the
/// one-level collapse certificate of (I;U) it yields.
pub fn lying_over_collapse(s: &Ring, p: &IdealisticPrime) -> Result<Option<(LyingOver, CollapseCertificate)>> {
    let base = base_of(s)?;
    let x = prod(base, &p.u);
    let gens: Vec<Elem> = if p.j.is_empty() { vec![base.zero()] } else { p.j.clone() };
    let sgens: Vec<Elem> = gens.iter().map(|g| s.embed(g)).collect();
    let Some((n, cof)) = radical_member(s, &s.embed(&x), &sgens)? else {
        return Ok(None);
    };
    let lo = lying_over(s, &gens, &x, n as u64, &gens, &cof)?;
    let mut neg: Vec<Elem> = lo.cofactors.iter().map(|c| base.neg(c)).collect();
    if p.j.is_empty() {
        neg.clear();
    }
    let cert = CollapseCertificate { levels: vec![Level { exp: vec![lo.exponent(); p.u.len()], cof: neg }] };
    let single = IdealisticChain::single(p.j.clone(), p.u.clone());
    if !cert.verify(base, &single) {
        return Err(Error::InternalMismatch("lying-over certificate does not verify".into()));
    }
    Ok(Some((lo, cert)))
}

/// Outcome of a Going Up transfer for C₁ • C₂ with C₁ in S and C₂ in R.
#[derive(Clone, Debug)]
pub struct GoingUpReport {
    /// C₁ • C₂ collapses in S.
    pub in_s: bool,
    /// Trace(C₁) • C₂ collapses in R.
    pub in_r: bool,
    /// The trace of C₁ saturated by the probes (empty when C₁ is empty).
    pub trace: Vec<IdealisticPrime>,
    /// False when the verdicts differ, which means the trace was not saturated
    /// enough; a collapse in R always lifts.
    pub agree: bool,
    /// For an empty C₁: the R-membership of ∏U_ℓ in the final ideal, from S.
    pub final_membership: Option<(Vec<Elem>, Elem, LyingOver)>,
    pub certificate: Option<CollapseCertificate>,
}

impl GoingUpReport {
    pub fn to_json(&self, s: &Ring) -> Value {
        let base = base_of(s).expect("extension");
        json!({
            "in_S": self.in_s,
            "in_R": self.in_r,
            "agree": self.agree,
            "trace": self.trace.iter().map(|p| crate::chain::prime_to_json(base, p)).collect::<Vec<_>>(),
            "final_membership": self.final_membership.as_ref().map(|(g, x, lo)| lo.to_json(base, g, x)),
        })
    }
}

fn embed_chain(s: &Ring, c: &IdealisticChain) -> IdealisticChain {
    let e = |xs: &[Elem]| xs.iter().map(|x| s.embed(x)).collect::<Vec<_>>();
    IdealisticChain { primes: c.primes.iter().map(|p| IdealisticPrime::new(e(&p.j), e(&p.u))).collect() }
}

/// Going Up: C₁ • C₂ collapses in S iff Trace(C₁) • C₂ collapses in R, for C₁
/// saturated. The trace is computed level by level and then saturated by
/// the probes: a probe joins the trace ideal (monoid) of level i when it
/// lies in the saturated ideal (monoid) of C₁ restricted to levels ≤ i.
pub fn going_up_transfer(s: &Ring, c1: &[IdealisticPrime], probes: &[Elem], c2: &IdealisticChain) -> Result<GoingUpReport> {
    let base = base_of(s)?;
    let mut trace: Vec<IdealisticPrime> = Vec::with_capacity(c1.len());
    for (i, p) in c1.iter().enumerate() {
        let mut t = trace_prime(s, p)?.prime;
        let prefix = &c1[..=i];
        for x in probes {
            let ex = s.embed(x);
            let mut up = prefix.to_vec();
            up[i].u.push(ex.clone());
            if chain_collapses(s, &IdealisticChain::new(up)?)? {
                t.j.push(x.clone());
            }
            let mut down = prefix.to_vec();
            down[i].j.push(ex);
            if chain_collapses(s, &IdealisticChain::new(down)?)? {
                t.u.push(x.clone());
            }
        }
        trace.push(t);
    }
    let mut over_r = trace.clone();
    over_r.extend(c2.primes.iter().cloned());
    let mut over_s = c1.to_vec();
    over_s.extend(embed_chain(s, c2).primes);
    let over_r = IdealisticChain::new(over_r)?;
    let in_s = chain_collapses(s, &IdealisticChain::new(over_s)?)?;
    let in_r = chain_collapses(base, &over_r)?;
    if in_r && !in_s {
        return Err(Error::InternalMismatch("a collapse of the trace chain in R does not lift to S".into()));
    }
    if c1.is_empty() && in_s != in_r {
        return Err(Error::InternalMismatch("collapse in S and in R disagree for a chain of R".into()));
    }
    let mut final_membership = None;
    let mut certificate = None;
    if in_r {
        if c1.is_empty() {
            let k = final_ideal(base, &over_r)?;
            let x = prod(base, &over_r.primes[over_r.len()].u);
            let sk: Vec<Elem> = k.iter().map(|g| s.embed(g)).collect();
            let (n, cof) = radical_member(s, &s.embed(&x), &sk)?
                .ok_or_else(|| Error::InternalMismatch("collapse in S without radical membership".into()))?;
            let lo = lying_over(s, &k, &x, n as u64, &k, &cof)?;
            final_membership = Some((k, x, lo));
        }
        certificate = certify_collapse(base, &over_r)?;
        if let Some(c) = &certificate {
            if !c.verify(base, &over_r) {
                return Err(Error::InternalMismatch("R-side certificate does not verify".into()));
            }
        }
    }
    Ok(GoingUpReport { in_s, in_r, trace, agree: in_s == in_r, final_membership, certificate })
}

/// x ∈ the saturated ideal (monoid) of the S-prime, compared with the same
/// question for its trace in R. Used to test that traces respect saturation.
pub fn saturation_agrees(s: &Ring, p: &IdealisticPrime, x: &Elem) -> Result<(bool, bool)> {
    let base = base_of(s)?;
    let t = trace_prime(s, p)?.prime;
    let ex = s.embed(x);
    let ideal = (in_saturated_ideal(s, p, &ex)?, in_saturated_ideal(base, &t, x)?);
    let monoid = (in_saturated_monoid(s, p, &ex)?, in_saturated_monoid(base, &t, x)?);
    Ok((ideal.0 == ideal.1, monoid.0 == monoid.1))
}

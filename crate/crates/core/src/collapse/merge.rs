//! Merging the collapses of (J, x; U) and (J; x, U) into a collapse of (J; U).

use serde_json::{json, Value};

use crate::chain::{elems_to_json, IdealisticPrime};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// u₁ + j₁ + a·x = 0: a collapse of (J, x; U).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabIn {
    pub u_exp: Vec<u64>,
    pub j_cof: Vec<Elem>,
    pub a: Elem,
}

/// u₂·x^m + j₂ = 0: a collapse of (J; x, U).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabOut {
    pub u_exp: Vec<u64>,
    pub m: u64,
    pub j_cof: Vec<Elem>,
}

/// u + j = 0 with u ∈ M(U), j ∈ ⟨J⟩: a collapse of (J; U).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCollapse {
    pub u_exp: Vec<u64>,
    pub j_cof: Vec<Elem>,
}

impl PrimeCollapse {
    pub fn u(&self, r: &Ring, p: &IdealisticPrime) -> Elem {
        monoid_elem(r, &p.u, &self.u_exp)
    }

    pub fn j(&self, r: &Ring, p: &IdealisticPrime) -> Elem {
        r.dot(&self.j_cof, &p.j)
    }

    pub fn verify(&self, r: &Ring, p: &IdealisticPrime) -> bool {
        self.u_exp.len() == p.u.len()
            && self.j_cof.len() == p.j.len()
            && r.is_zero(&r.add(&self.u(r, p), &self.j(r, p)))
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({ "u_exp": self.u_exp, "j_cof": elems_to_json(r, &self.j_cof) })
    }
}

pub(crate) fn monoid_elem(r: &Ring, gens: &[Elem], exp: &[u64]) -> Elem {
    let mut acc = r.one();
    for (g, &e) in gens.iter().zip(exp) {
        if e > 0 {
            acc = r.mul(&acc, &r.pow(g, e));
        }
    }
    acc
}

/// S = Σ_{k<m} (u₁+j₁)^k·u₁^{m−1−k}, so (u₁+j₁)^m − u₁^m = j₁·S.
fn power_difference_quotient(r: &Ring, c: &Elem, d: &Elem, m: u64) -> Elem {
    let mut s = r.zero();
    let mut cp = r.one();
    for k in 0..m {
        s = r.add(&s, &r.mul(&cp, &r.pow(d, m - 1 - k)));
        cp = r.mul(&cp, c);
    }
    s
}

/// u₃ = u₂·u₁^m and j₃ = u₂((u₁+j₁)^m − u₁^m) + (−a)^m·j₂, so u₃ + j₃ = 0.
#[allow(clippy::too_many_arguments)]
pub fn rabinovitch_identity(
    r: &Ring,
    u1: &Elem,
    j1: &Elem,
    a: &Elem,
    x: &Elem,
    u2: &Elem,
    m: u64,
    j2: &Elem,
) -> Result<(Elem, Elem)> {
    let lhs_in = r.add(&r.add(u1, j1), &r.mul(a, x));
    if !r.is_zero(&lhs_in) {
        return Err(Error::NotACollapse(format!("u₁ + j₁ + a·x = {}", r.show(&lhs_in))));
    }
    let lhs_out = r.add(&r.mul(u2, &r.pow(x, m)), j2);
    if !r.is_zero(&lhs_out) {
        return Err(Error::NotACollapse(format!("u₂·x^m + j₂ = {}", r.show(&lhs_out))));
    }
    let u3 = r.mul(u2, &r.pow(u1, m));
    let s = power_difference_quotient(r, &r.add(u1, j1), u1, m);
    let j3 = r.add(&r.mul(&r.mul(u2, &s), j1), &r.mul(&r.pow(&r.neg(a), m), j2));
    debug_assert!(r.is_zero(&r.add(&u3, &j3)));
    Ok((u3, j3))
}

/// Collapse of (J; U) from collapses of (J, x; U) and (J; x, U), with the
/// cofactors of j₃ over J.
pub fn rabinovitch_merge(r: &Ring, p: &IdealisticPrime, x: &Elem, cin: &RabIn, cout: &RabOut) -> Result<PrimeCollapse> {
    for (name, ue, jc) in [("first", &cin.u_exp, &cin.j_cof), ("second", &cout.u_exp, &cout.j_cof)] {
        if ue.len() != p.u.len() || jc.len() != p.j.len() {
            return Err(Error::ShapeMismatch(format!("{name} collapse does not match (J; U)")));
        }
    }
    let u1 = monoid_elem(r, &p.u, &cin.u_exp);
    let j1 = r.dot(&cin.j_cof, &p.j);
    let u2 = monoid_elem(r, &p.u, &cout.u_exp);
    let j2 = r.dot(&cout.j_cof, &p.j);
    let (u3, j3) = rabinovitch_identity(r, &u1, &j1, &cin.a, x, &u2, cout.m, &j2)?;
    let m = cout.m;
    let s = power_difference_quotient(r, &r.add(&u1, &j1), &u1, m);
    let u2s = r.mul(&u2, &s);
    let am = r.pow(&r.neg(&cin.a), m);
    let j_cof: Vec<Elem> =
        cin.j_cof.iter().zip(&cout.j_cof).map(|(c1, c2)| r.add(&r.mul(&u2s, c1), &r.mul(&am, c2))).collect();
    let u_exp: Vec<u64> = cout.u_exp.iter().zip(&cin.u_exp).map(|(e2, e1)| e2 + m * e1).collect();
    let out = PrimeCollapse { u_exp, j_cof };
    if out.u(r, p) != u3 || out.j(r, p) != j3 || !out.verify(r, p) {
        return Err(Error::InternalMismatch("merged collapse does not re-evaluate".into()));
    }
    Ok(out)
}

//! Comaximal monoids, covers, gluing of local collapses and clearing of
//! denominators in a localization.

use serde_json::{json, Value};

use super::merge::monoid_elem;
use crate::chain::{elems_to_json, CollapseCertificate, IdealisticChain, IdealisticPrime, Level};
use crate::error::{Error, Result};
use crate::groebner::ideal_member;
use crate::ring::{Elem, Ring};

/// Some(a) with Σ aᵢ·sᵢ = 1, None iff 1 ∉ ⟨s₁..s_n⟩.
pub fn comaximal_check(r: &Ring, picks: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if picks.is_empty() {
        return Ok(None);
    }
    let w = ideal_member(r, &r.one(), picks)?;
    if let Some(a) = &w {
        debug_assert!(r.is_one(&r.dot(a, picks)));
    }
    Ok(w)
}

/// Runs `comaximal_check` on every tuple of the cartesian product of the pick
/// sets; returns the first tuple without a witness.
pub fn comaximal_for_picks(r: &Ring, pick_sets: &[Vec<Elem>]) -> Result<Option<Vec<Elem>>> {
    let mut idx = vec![0usize; pick_sets.len()];
    if pick_sets.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    loop {
        let tuple: Vec<Elem> = idx.iter().zip(pick_sets).map(|(&i, s)| s[i].clone()).collect();
        if comaximal_check(r, &tuple)?.is_none() {
            return Ok(Some(tuple));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < pick_sets[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// S₀ = S(u₁..u_n; 1) and S_k = S((u_i)_{i>k}; u_k), as (I; U) pairs whose
/// monoid is M(U) + ⟨I⟩. These monoids are comaximal.
pub fn s_monoids(r: &Ring, us: &[Elem]) -> Vec<IdealisticPrime> {
    let mut out = vec![IdealisticPrime::new(us.to_vec(), vec![r.one()])];
    for k in 0..us.len() {
        out.push(IdealisticPrime::new(us[k + 1..].to_vec(), vec![us[k].clone()]));
    }
    out
}

/// ∏ U^exp + Σ cof·I, an element of the monoid M(U) + ⟨I⟩.
pub fn monoid_pick(r: &Ring, p: &IdealisticPrime, exp: &[u64], cof: &[Elem]) -> Elem {
    r.add(&monoid_elem(r, &p.u, exp), &r.dot(cof, &p.j))
}

/// x = u₁·a^k + j₁ with u₁ ∈ M(U), j₁ ∈ ⟨I⟩.
#[derive(Clone, Debug)]
pub struct XDecomposition {
    pub u_exp: Vec<u64>,
    pub k: u64,
    pub j_cof: Vec<Elem>,
}

/// y = (u₂ + j₂) − a·z with u₂ ∈ M(U), j₂ ∈ ⟨I⟩.
#[derive(Clone, Debug)]
pub struct YDecomposition {
    pub u_exp: Vec<u64>,
    pub j_cof: Vec<Elem>,
    pub z: Elem,
}

/// x₁·x + y₁·y = ∏U^u_exp + Σ j_cof·I.
#[derive(Clone, Debug)]
pub struct CoverWitness {
    pub x1: Elem,
    pub y1: Elem,
    pub u_exp: Vec<u64>,
    pub j_cof: Vec<Elem>,
}

impl CoverWitness {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "x1": r.show(&self.x1),
            "y1": r.show(&self.y1),
            "u_exp": self.u_exp,
            "j_cof": elems_to_json(r, &self.j_cof),
        })
    }
}

/// Σ_{t<k} c^t·d^{k−1−t}, so (c − d)·it = c^k − d^k.
fn geometric(r: &Ring, c: &Elem, d: &Elem, k: u64) -> Elem {
    let mut s = r.zero();
    let mut cp = r.one();
    for t in 0..k {
        s = r.add(&s, &r.mul(&cp, &r.pow(d, k - 1 - t)));
        cp = r.mul(&cp, c);
    }
    s
}

/// For x ∈ S(I; U, a) and y ∈ S(I, a; U), a combination x₁x + y₁y in
/// S(I; U): x₁ = z^k, y₁ = u₁·y₂ with y₂·y = (u₂+j₂)^k − (az)^k.
pub fn cover_witness(
    r: &Ring,
    i_gens: &[Elem],
    u_gens: &[Elem],
    a: &Elem,
    x: &Elem,
    xd: &XDecomposition,
    y: &Elem,
    yd: &YDecomposition,
) -> Result<CoverWitness> {
    if xd.u_exp.len() != u_gens.len() || yd.u_exp.len() != u_gens.len() {
        return Err(Error::MalformedDecomposition("exponent vectors do not match U".into()));
    }
    if xd.j_cof.len() != i_gens.len() || yd.j_cof.len() != i_gens.len() {
        return Err(Error::MalformedDecomposition("cofactor vectors do not match I".into()));
    }
    let u1 = monoid_elem(r, u_gens, &xd.u_exp);
    let j1 = r.dot(&xd.j_cof, i_gens);
    let u2 = monoid_elem(r, u_gens, &yd.u_exp);
    let j2 = r.dot(&yd.j_cof, i_gens);
    let k = xd.k;
    if r.add(&r.mul(&u1, &r.pow(a, k)), &j1) != *x {
        return Err(Error::MalformedDecomposition("x ≠ u₁·a^k + j₁".into()));
    }
    if r.sub(&r.add(&u2, &j2), &r.mul(a, &yd.z)) != *y {
        return Err(Error::MalformedDecomposition("y ≠ u₂ + j₂ − a·z".into()));
    }
    let c = r.add(&u2, &j2);
    let y2 = geometric(r, &c, &r.mul(a, &yd.z), k);
    let x1 = r.pow(&yd.z, k);
    let y1 = r.mul(&u1, &y2);
    // (u₂+j₂)^k − u₂^k = j₂·T.
    let t = geometric(r, &c, &u2, k);
    let u1t = r.mul(&u1, &t);
    let j_cof: Vec<Elem> =
        yd.j_cof.iter().zip(&xd.j_cof).map(|(c2, c1)| r.add(&r.mul(&u1t, c2), &r.mul(&x1, c1))).collect();
    let u_exp: Vec<u64> = xd.u_exp.iter().zip(&yd.u_exp).map(|(e1, e2)| e1 + k * e2).collect();
    let w = CoverWitness { x1, y1, u_exp, j_cof };
    let lhs = r.add(&r.mul(&w.x1, x), &r.mul(&w.y1, y));
    let rhs = r.add(&monoid_elem(r, u_gens, &w.u_exp), &r.dot(&w.j_cof, i_gens));
    if lhs != rhs {
        return Err(Error::InternalMismatch("cover combination does not re-evaluate".into()));
    }
    Ok(w)
}

/// A collapse in a localization with the denominator cleared:
/// s·u₀⋯u_ℓ + u₀⋯u_{ℓ−1}·j_ℓ + ⋯ + j₀ = 0 over R, s = ∏ monoid^s_exp.
#[derive(Clone, Debug)]
pub struct LocalCollapse {
    pub monoid: Vec<Elem>,
    pub s_exp: Vec<u64>,
    pub cert: CollapseCertificate,
}

impl LocalCollapse {
    pub fn s(&self, r: &Ring) -> Elem {
        monoid_elem(r, &self.monoid, &self.s_exp)
    }

    /// Left-hand side of the cleared identity.
    pub fn residual(&self, r: &Ring, c: &IdealisticChain) -> Result<Elem> {
        let l = c.len();
        if self.cert.levels.len() != l + 1 {
            return Err(Error::ShapeMismatch("local certificate has the wrong number of levels".into()));
        }
        for (lv, p) in self.cert.levels.iter().zip(&c.primes) {
            if lv.exp.len() != p.u.len() || lv.cof.len() != p.j.len() {
                return Err(Error::ShapeMismatch("local certificate level does not match the chain".into()));
            }
        }
        let mut acc = r.mul(&self.s(r), &self.cert.u(r, c, l));
        acc = r.add(&acc, &self.cert.j(r, c, l));
        for k in (0..l).rev() {
            acc = r.add(&r.mul(&self.cert.u(r, c, k), &acc), &self.cert.j(r, c, k));
        }
        Ok(acc)
    }
}

/// Global certificate from local collapses (E_i) and Σ aᵢsᵢ = 1: with
/// u_k = ∏ᵢ u_{k,i}, each (E_i) is multiplied by ∏_{t} ∏_{i'≠i} u_{t,i'}
/// and by aᵢ, and the results are summed.
pub fn glue_collapse(r: &Ring, c: &IdealisticChain, locals: &[LocalCollapse], comax: &[Elem]) -> Result<CollapseCertificate> {
    if locals.is_empty() || comax.len() != locals.len() {
        return Err(Error::NotComaximal(format!("{} coefficients for {} localizations", comax.len(), locals.len())));
    }
    let ss: Vec<Elem> = locals.iter().map(|lc| lc.s(r)).collect();
    let total = r.dot(comax, &ss);
    if !r.is_one(&total) {
        return Err(Error::NotComaximal(format!("Σ aᵢ·sᵢ = {}", r.show(&total))));
    }
    for (i, lc) in locals.iter().enumerate() {
        let v = lc.residual(r, c)?;
        if !r.is_zero(&v) {
            return Err(Error::NotLocalCollapse(format!("local identity {i} evaluates to {}", r.show(&v))));
        }
    }
    let l = c.len();
    let n = locals.len();
    // us[i][k] = u_{k,i}.
    let us: Vec<Vec<Elem>> = locals.iter().map(|lc| (0..=l).map(|k| lc.cert.u(r, c, k)).collect()).collect();
    let mut levels: Vec<Level> =
        c.primes.iter().map(|p| Level { exp: vec![0; p.u.len()], cof: vec![r.zero(); p.j.len()] }).collect();
    for (k, lv) in levels.iter_mut().enumerate() {
        for lc in locals {
            for (e, le) in lv.exp.iter_mut().zip(&lc.cert.levels[k].exp) {
                *e += le;
            }
        }
    }
    for i in 0..n {
        // q_{t,i} = ∏_{i'≠i} u_{t,i'}; the level-k multiplier is ∏_{t≥k} q_{t,i}.
        let q: Vec<Elem> = (0..=l)
            .map(|t| r.product((0..n).filter(|&j| j != i).map(|j| &us[j][t]).collect::<Vec<_>>()))
            .collect();
        let mut tail = r.one();
        for k in (0..=l).rev() {
            tail = r.mul(&tail, &q[k]);
            let scale = r.mul(&comax[i], &tail);
            for (slot, cf) in levels[k].cof.iter_mut().zip(&locals[i].cert.levels[k].cof) {
                *slot = r.add(slot, &r.mul(&scale, cf));
            }
        }
    }
    let cert = CollapseCertificate { levels };
    if !cert.verify(r, c) {
        return Err(Error::InternalMismatch("glued certificate does not evaluate to 0".into()));
    }
    Ok(cert)
}

/// One level of a collapse over a localization: cofactors as (numerator,
/// denominator) pairs.
#[derive(Clone, Debug)]
pub struct FracLevel {
    pub exp: Vec<u64>,
    pub cof: Vec<(Elem, Elem)>,
}

/// Clears the denominators of a local collapse. m is the product of every
/// denominator; the returned datum satisfies m^e·u₀⋯u_ℓ + ⋯ + j₀ = 0 over R.
pub fn collapse_denominator(r: &Ring, c: &IdealisticChain, levels: &[FracLevel]) -> Result<(Elem, LocalCollapse)> {
    if levels.len() != c.primes.len() {
        return Err(Error::ShapeMismatch(format!("{} levels for {} primes", levels.len(), c.primes.len())));
    }
    let mut dens: Vec<Elem> = Vec::new();
    for (lv, p) in levels.iter().zip(&c.primes) {
        if lv.exp.len() != p.u.len() || lv.cof.len() != p.j.len() {
            return Err(Error::ShapeMismatch("fractional level does not match the chain".into()));
        }
        for (_, d) in &lv.cof {
            if r.is_zero(d) {
                return Err(Error::MalformedFraction("zero denominator".into()));
            }
            dens.push(d.clone());
        }
    }
    let m = r.product(&dens);
    let mut idx = 0usize;
    let mut cleared: Vec<Level> = Vec::new();
    for lv in levels {
        let mut cof = Vec::new();
        for (num, _) in &lv.cof {
            let others = r.product(dens.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, d)| d).collect::<Vec<_>>());
            cof.push(r.mul(num, &others));
            idx += 1;
        }
        cleared.push(Level { exp: lv.exp.clone(), cof });
    }
    let base = LocalCollapse { monoid: vec![m.clone()], s_exp: vec![1], cert: CollapseCertificate { levels: cleared } };
    let v = base.residual(r, c)?;
    let mut mp = r.one();
    for e in 0..=64u64 {
        if r.is_zero(&r.mul(&mp, &v)) {
            let mut out = base.clone();
            out.s_exp = vec![1 + e];
            for lv in &mut out.cert.levels {
                for x in &mut lv.cof {
                    *x = r.mul(&mp, x);
                }
            }
            debug_assert!(r.is_zero(&out.residual(r, c)?));
            return Ok((m, out));
        }
        mp = r.mul(&mp, &m);
    }
    Err(Error::NotLocalCollapse("the cleared identity is not annihilated by a power of the denominator".into()))
}

//! Collapse of idealistic chains: the decision procedure, certificate search
//! and back-substitution, pseudo-regular sequences, saturated membership and
//! dimension reports.

mod dependence;
mod local;
mod merge;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::chain::{elems_from_json, elems_to_json, reject_unknown, CollapseCertificate, IdealisticChain, IdealisticPrime, Level};
use crate::error::{Error, Result};
use crate::groebner::{in_radical, radical_member, saturate, saturate_tracked, Ideal, SatGen};
use crate::ring::{Elem, Kind, Ring};

pub use dependence::{dependence_to_certificate, find_algebraic_dependence, sequence_ring};
pub use local::{
    collapse_denominator, comaximal_check, comaximal_for_picks, cover_witness, glue_collapse, monoid_pick, s_monoids,
    CoverWitness, FracLevel, LocalCollapse, XDecomposition, YDecomposition,
};
pub use merge::{rabinovitch_identity, rabinovitch_merge, PrimeCollapse, RabIn, RabOut};

/// Product of a generator list (1 for the empty list).
fn prod(r: &Ring, xs: &[Elem]) -> Elem {
    r.product(xs)
}

fn or_zero(r: &Ring, xs: Vec<Elem>) -> Vec<Elem> {
    if xs.is_empty() {
        vec![r.zero()]
    } else {
        xs
    }
}

/// Ideals I_k = ⟨J₀ ∪ ⋯ ∪ J_k⟩ and monoid generators of the completed chain,
/// with the closed form of each V-level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedChain {
    pub ideals: Vec<Vec<Elem>>,
    pub monoids: Vec<Vec<Elem>>,
    pub closed_forms: Vec<String>,
}

/// V_k = u_k⋯u_ℓ + u_k⋯u_{ℓ−1}·j_ℓ + ⋯ + j_k.
fn closed_form(k: usize, l: usize) -> String {
    let us = |a: usize, b: usize| (a..=b).map(|i| format!("u{i}")).collect::<Vec<_>>().join("*");
    let mut parts = vec![us(k, l)];
    for t in (k + 1..=l).rev() {
        parts.push(format!("{}*j{t}", us(k, t - 1)));
    }
    parts.push(format!("j{k}"));
    parts.join(" + ")
}

pub fn complete_chain(c: &IdealisticChain) -> CompletedChain {
    let l = c.len();
    let mut ideals = Vec::new();
    let mut acc: Vec<Elem> = Vec::new();
    for p in &c.primes {
        acc.extend(p.j.iter().cloned());
        ideals.push(acc.clone());
    }
    CompletedChain {
        ideals,
        monoids: c.primes.iter().map(|p| p.u.clone()).collect(),
        closed_forms: (0..=l).map(|k| closed_form(k, l)).collect(),
    }
}

impl CompletedChain {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "levels": self.ideals.iter().zip(&self.monoids).zip(&self.closed_forms).map(|((i, m), f)| json!({
                "I": elems_to_json(r, i),
                "U": elems_to_json(r, m),
                "V": f,
            })).collect::<Vec<_>>()
        })
    }
}

/// K := ⟨J₀⟩; K := (K : (∏U_k)^∞) + ⟨J_{k+1}⟩ for k < ℓ.
pub fn final_ideal(r: &Ring, c: &IdealisticChain) -> Result<Vec<Elem>> {
    let mut k = or_zero(r, c.primes[0].j.clone());
    for i in 0..c.len() {
        let p = prod(r, &c.primes[i].u);
        if !r.is_one(&p) {
            k = saturate(r, &k, &p)?;
        }
        k.extend(c.primes[i + 1].j.iter().cloned());
    }
    Ok(k)
}

/// The chain collapses iff ∏U_ℓ ∈ √K for the final ideal K.
pub fn chain_collapses(r: &Ring, c: &IdealisticChain) -> Result<bool> {
    let k = final_ideal(r, c)?;
    in_radical(r, &prod(r, &c.primes[c.len()].u), &k)
}

/// Caps for the bounded certificate search before back-substitution.
#[derive(Clone, Copy, Debug)]
pub struct SearchCaps {
    pub max_exponent: u64,
    pub max_candidates: usize,
}

impl SearchCaps {
    pub fn for_ring(r: &Ring) -> SearchCaps {
        let max_candidates = match r.kind {
            Kind::Z | Kind::Zmod(_) => 2_000,
            _ => 120,
        };
        SearchCaps { max_exponent: 6, max_candidates }
    }
}

/// A certificate for a collapsing chain: bounded search by increasing total
/// exponent first, then back-substitution through the tracked saturations.
/// `Ok(None)` when the chain collapses but tracking exceeded the caps;
/// `NotACollapse` when the chain does not collapse.
pub fn certify_collapse(r: &Ring, c: &IdealisticChain) -> Result<Option<CollapseCertificate>> {
    certify_collapse_with(r, c, SearchCaps::for_ring(r))
}

pub fn certify_collapse_with(r: &Ring, c: &IdealisticChain, caps: SearchCaps) -> Result<Option<CollapseCertificate>> {
    if !chain_collapses(r, c)? {
        return Err(Error::NotACollapse("the chain does not collapse".into()));
    }
    if let Some(cert) = search(r, c, caps)? {
        return Ok(Some(cert));
    }
    match back_substitute(r, c) {
        Ok(cert) => Ok(Some(cert)),
        Err(Error::ResourceExhausted(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exponent vectors over `k` slots, each ≤ `cap`, of total sum `s`, in
/// lexicographic order.
fn compositions(k: usize, s: u64, cap: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if cur.len() + 1 == k {
        if s <= cap {
            cur.push(s);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    if k == 0 {
        if s == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in 0..=s.min(cap) {
        cur.push(e);
        compositions(k, s - e, cap, out, cur);
        cur.pop();
    }
}

fn search(r: &Ring, c: &IdealisticChain, caps: SearchCaps) -> Result<Option<CollapseCertificate>> {
    let slots: Vec<(usize, usize)> = c
        .primes
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.u.iter().enumerate().filter(|(_, g)| !r.is_one(g)).map(move |(i, _)| (k, i)))
        .collect();
    let mut tried = 0usize;
    for s in 0..=caps.max_exponent * slots.len() as u64 {
        let mut vecs = Vec::new();
        compositions(slots.len(), s, caps.max_exponent, &mut vecs, &mut Vec::new());
        for v in vecs {
            tried += 1;
            if tried > caps.max_candidates {
                return Ok(None);
            }
            let mut exps: Vec<Vec<u64>> = c.primes.iter().map(|p| vec![0; p.u.len()]).collect();
            for (&(k, i), &e) in slots.iter().zip(&v) {
                exps[k][i] = e;
            }
            if let Some(cert) = try_exponents(r, c, exps)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Cofactors completing fixed exponents: −u₀⋯u_ℓ ∈ ⟨u₀⋯u_{k−1}·g : g ∈ J_k⟩.
fn try_exponents(r: &Ring, c: &IdealisticChain, exps: Vec<Vec<u64>>) -> Result<Option<CollapseCertificate>> {
    let mut levels: Vec<Level> =
        exps.into_iter().zip(&c.primes).map(|(exp, p)| Level { exp, cof: vec![r.zero(); p.j.len()] }).collect();
    let shell = CollapseCertificate { levels: levels.clone() };
    let mut pre = r.one();
    let mut gens = Vec::new();
    let mut slots = Vec::new();
    for (k, p) in c.primes.iter().enumerate() {
        for (i, g) in p.j.iter().enumerate() {
            let pg = r.mul(&pre, g);
            if !r.is_zero(&pg) {
                gens.push(pg);
                slots.push((k, i));
            }
        }
        pre = r.mul(&pre, &shell.u(r, c, k));
    }
    let target = r.neg(&pre);
    let cof = match &r.kind {
        Kind::Z | Kind::Zmod(_) => int_box_solve(r, &gens, &target),
        _ => {
            if gens.is_empty() {
                r.is_zero(&target).then(Vec::new)
            } else if !Ideal::untracked(r, &gens)?.contains(&target) {
                None
            } else {
                Ideal::new(r, &gens)?.member(&target)
            }
        }
    };
    let Some(cof) = cof else { return Ok(None) };
    for ((k, i), v) in slots.into_iter().zip(cof) {
        levels[k].cof[i] = v;
    }
    let cert = CollapseCertificate { levels };
    debug_assert!(cert.verify(r, c));
    Ok(Some(cert))
}

/// Lexicographically smallest cofactors in a small box (|c| ≤ 3 over ℤ,
/// [0, n) over ℤ/n), Bézout cofactors when the box is empty or too large.
fn int_box_solve(r: &Ring, gens: &[Elem], target: &Elem) -> Option<Vec<Elem>> {
    let gs: Vec<BigInt> = gens.iter().map(|g| g.as_int().clone()).collect();
    let t = target.as_int().clone();
    let n = r.modulus().cloned();
    let (mut d, bez) = crate::arith::ext_gcd_many(&gs);
    if let Some(n) = &n {
        d = d.gcd(n);
    }
    let divisible = if d.is_zero() { t.is_zero() } else { (&t % &d).is_zero() };
    if !divisible {
        return None;
    }
    if gs.is_empty() {
        return Some(Vec::new());
    }
    let range: Vec<BigInt> = match &n {
        None => (-3..=3).map(BigInt::from).collect(),
        Some(n) => match n.to_i64() {
            Some(v) if v <= 64 => (0..v).map(BigInt::from).collect(),
            _ => Vec::new(),
        },
    };
    let box_size = (range.len() as f64).powi(gs.len() as i32);
    if !range.is_empty() && box_size <= 50_000.0 {
        let mut cur = Vec::new();
        if let Some(v) = box_rec(&gs, &t, n.as_ref(), &range, &mut cur) {
            return Some(v.iter().map(|x| r.from_int(x)).collect());
        }
    }
    let q = if d.is_zero() { BigInt::zero() } else { &t / &d };
    // Over ℤ/n the gcd with n may be smaller than the gcd of the generators.
    let Some(n) = n else { return Some(bez.iter().map(|b| r.from_int(&(&q * b))).collect()) };
    let mut all = gs.clone();
    all.push(n.clone());
    let (_, bez) = crate::arith::ext_gcd_many(&all);
    Some(bez[..gs.len()].iter().map(|b| r.from_int(&(&q * b))).collect())
}

fn box_rec(gs: &[BigInt], t: &BigInt, n: Option<&BigInt>, range: &[BigInt], cur: &mut Vec<BigInt>) -> Option<Vec<BigInt>> {
    let k = cur.len();
    let rest: BigInt = t - cur.iter().zip(gs).map(|(c, g)| c * g).sum::<BigInt>();
    if k + 1 == gs.len() {
        let g = &gs[k];
        for c in range {
            let diff = &rest - c * g;
            let ok = match n {
                Some(n) => diff.mod_floor(n).is_zero(),
                None => diff.is_zero(),
            };
            if ok {
                let mut v = cur.clone();
                v.push(c.clone());
                return Some(v);
            }
        }
        return None;
    }
    for c in range {
        cur.push(c.clone());
        if let Some(v) = box_rec(gs, t, n, range, cur) {
            return Some(v);
        }
        cur.pop();
    }
    None
}

/// Back-substitution through H_k = G_k : P_k^∞ with G_{k+1} = H_k ++ J_{k+1}.
fn back_substitute(r: &Ring, c: &IdealisticChain) -> Result<CollapseCertificate> {
    let l = c.len();
    let ps: Vec<Elem> = c.primes.iter().map(|p| prod(r, &p.u)).collect();
    // g[k] = prefix (H_{k−1}, or a zero placeholder) ++ J_k; hlen[k] = prefix length.
    let mut g: Vec<Vec<Elem>> = Vec::new();
    let mut hlen: Vec<usize> = Vec::new();
    let mut sats: Vec<Vec<SatGen>> = Vec::new();
    let mut prefix: Vec<Elem> = Vec::new();
    for k in 0..=l {
        let mut gk = prefix.clone();
        let mut hl = prefix.len();
        if gk.is_empty() && c.primes[k].j.is_empty() {
            gk.push(r.zero());
            hl = 1;
        }
        gk.extend(c.primes[k].j.iter().cloned());
        if k < l {
            let sat = if r.is_one(&ps[k]) {
                identity_sat(r, &gk)
            } else {
                saturate_tracked(r, &gk, &ps[k])?
            };
            prefix = sat.iter().map(|s| s.elem.clone()).collect();
            sats.push(sat);
        }
        g.push(gk);
        hlen.push(hl);
    }
    let (n, b) = radical_member(r, &ps[l], &g[l])?
        .ok_or_else(|| Error::InternalMismatch("final radical membership failed after a positive decision".into()))?;
    let mut levels: Vec<Level> = c.primes.iter().map(|p| Level { exp: vec![0; p.u.len()], cof: vec![] }).collect();
    levels[l].exp = vec![n as u64; c.primes[l].u.len()];
    // γ over G_k: u_k·N_{k+1} = Σ γ_g g.
    let mut gamma: Vec<Elem> = b;
    for k in (0..=l).rev() {
        if k < l {
            let sat = &sats[k];
            let e = sat.iter().map(|s| s.exp).max().unwrap_or(0);
            let pk_pows: Vec<Elem> = (0..=e).map(|i| r.pow(&ps[k], i as u64)).collect();
            let a = gamma.clone(); // coefficients over H_k, the prefix of G_{k+1}
            let mut next = vec![r.zero(); g[k].len()];
            for (ah, s) in a.iter().zip(sat) {
                if r.is_zero(ah) {
                    continue;
                }
                let scale = r.mul(ah, &pk_pows[(e - s.exp) as usize]);
                for (slot, cg) in next.iter_mut().zip(&s.cofactors) {
                    *slot = r.add(slot, &r.mul(&scale, cg));
                }
            }
            levels[k].exp = vec![e as u64; c.primes[k].u.len()];
            gamma = next;
        }
        let h = hlen[k];
        levels[k].cof = gamma[h..].iter().map(|x| r.neg(x)).collect();
        gamma.truncate(h);
    }
    let cert = CollapseCertificate { levels };
    if !cert.verify(r, c) {
        return Err(Error::InternalMismatch("back-substituted certificate does not evaluate to 0".into()));
    }
    Ok(cert)
}

fn identity_sat(r: &Ring, gens: &[Elem]) -> Vec<SatGen> {
    (0..gens.len())
        .map(|i| {
            let mut cof = vec![r.zero(); gens.len()];
            cof[i] = r.one();
            SatGen { elem: gens[i].clone(), exp: 0, cofactors: cof }
        })
        .collect()
}

/// x₁^{m₁}(x₂^{m₂}⋯(x_ℓ^{m_ℓ}(1+a_ℓx_ℓ)+⋯+a₂x₂)+a₁x₁) = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoSingularCertificate {
    pub m: Vec<u64>,
    pub a: Vec<Elem>,
}

impl PseudoSingularCertificate {
    /// Value of the nested form on `seq`.
    pub fn eval(&self, r: &Ring, seq: &[Elem]) -> Result<Elem> {
        if self.m.len() != seq.len() || self.a.len() != seq.len() {
            return Err(Error::ShapeMismatch(format!("certificate for {} elements, sequence of {}", self.m.len(), seq.len())));
        }
        let mut acc = r.one();
        for k in (0..seq.len()).rev() {
            let inner = r.add(&acc, &r.mul(&self.a[k], &seq[k]));
            acc = r.mul(&r.pow(&seq[k], self.m[k]), &inner);
        }
        Ok(acc)
    }

    pub fn verify(&self, r: &Ring, seq: &[Elem]) -> bool {
        self.eval(r, seq).map(|v| r.is_zero(&v)).unwrap_or(false)
    }

    /// The certificate of the elementary chain of `seq` carrying the same identity.
    pub fn to_collapse(&self, r: &Ring) -> CollapseCertificate {
        let l = self.m.len();
        let mut levels = Vec::with_capacity(l + 1);
        for k in 0..=l {
            let exp = vec![if k < l { self.m[k] } else { 0 }];
            let cof = vec![if k == 0 { r.zero() } else { self.a[k - 1].clone() }];
            levels.push(Level { exp, cof });
        }
        CollapseCertificate { levels }
    }

    /// Reads (m, a) off a certificate of the elementary chain.
    pub fn from_collapse(r: &Ring, cert: &CollapseCertificate) -> PseudoSingularCertificate {
        let l = cert.levels.len() - 1;
        let m = (0..l).map(|k| cert.levels[k].exp.first().copied().unwrap_or(0)).collect();
        let a = (1..=l).map(|k| cert.levels[k].cof.first().cloned().unwrap_or_else(|| r.zero())).collect();
        PseudoSingularCertificate { m, a }
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({ "m": self.m, "a": elems_to_json(r, &self.a) })
    }

    pub fn from_json(r: &Ring, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("certificate must be an object".into()))?;
        reject_unknown(obj, &["m", "a"])?;
        let m = obj
            .get("m")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("\"m\" must be a list".into()))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| Error::Invalid("exponents are naturals".into())))
            .collect::<Result<Vec<_>>>()?;
        let a = elems_from_json(r, obj.get("a"), "a")?;
        Ok(PseudoSingularCertificate { m, a })
    }
}

pub fn pseudo_regular(r: &Ring, seq: &[Elem]) -> Result<bool> {
    Ok(!chain_collapses(r, &IdealisticChain::elementary(r, seq))?)
}

/// `None` when the sequence is pseudo-regular; a verified certificate otherwise.
pub fn pseudo_singular(r: &Ring, seq: &[Elem]) -> Result<Option<PseudoSingularCertificate>> {
    let c = IdealisticChain::elementary(r, seq);
    if !chain_collapses(r, &c)? {
        return Ok(None);
    }
    if let Some(cert) = certify_collapse(r, &c)? {
        let ps = PseudoSingularCertificate::from_collapse(r, &cert);
        if ps.verify(r, seq) {
            return Ok(Some(ps));
        }
        return Err(Error::InternalMismatch("pseudo-singular conversion does not verify".into()));
    }
    if let Kind::Poly { vars, .. } = &r.kind {
        if seq.len() > vars.len() {
            if let Some(q) = find_algebraic_dependence(r, seq, None, None)? {
                return dependence_to_certificate(r, seq, &q).map(Some);
            }
        }
    }
    Err(Error::ResourceExhausted("sequence is singular but no certificate was found within the caps".into()))
}

/// x ∈ the saturated ideal of (J;U): adjoining x to U collapses.
pub fn in_saturated_ideal(r: &Ring, p: &IdealisticPrime, x: &Elem) -> Result<bool> {
    let mut u = p.u.clone();
    u.push(x.clone());
    chain_collapses(r, &IdealisticChain::single(p.j.clone(), u))
}

/// x ∈ the saturated monoid of (J;U): adjoining x to J collapses.
pub fn in_saturated_monoid(r: &Ring, p: &IdealisticPrime, x: &Elem) -> Result<bool> {
    let mut j = p.j.clone();
    j.push(x.clone());
    chain_collapses(r, &IdealisticChain::single(j, p.u.clone()))
}

/// One sequence of a dimension report.
#[derive(Clone, Debug)]
pub struct DimEntry {
    pub seq: Vec<Elem>,
    pub collapses: bool,
    pub certificate: Option<PseudoSingularCertificate>,
}

#[derive(Clone, Debug)]
pub struct DimReport {
    pub ell: usize,
    pub verdict: bool,
    pub header: String,
    pub entries: Vec<DimEntry>,
}

impl DimReport {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "ell": self.ell,
            "verdict": self.verdict,
            "header": self.header,
            "entries": self.entries.iter().map(|e| json!({
                "seq": elems_to_json(r, &e.seq),
                "collapses": e.collapses,
                "certificate": e.certificate.as_ref().map(|c| c.to_json(r)),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Tests dim ≤ ℓ on the given sequences of length ℓ+1. For K[X₁..X_n] with
/// ℓ ≥ n every sequence is algebraically dependent, and the certificate is
/// read off a dependence.
pub fn dim_at_most(r: &Ring, ell: usize, testset: &[Vec<Elem>]) -> Result<DimReport> {
    let poly_bound = match &r.kind {
        Kind::Poly { vars, .. } if ell >= vars.len() => Some(vars.len()),
        _ => None,
    };
    let mut entries = Vec::new();
    let mut witness: Option<Vec<Elem>> = None;
    for seq in testset {
        if seq.len() != ell + 1 {
            return Err(Error::ShapeMismatch(format!("sequence of length {} for ℓ = {ell}", seq.len())));
        }
        let mut certificate = None;
        if poly_bound.is_some() {
            match find_algebraic_dependence(r, seq, None, None) {
                Ok(Some(q)) => certificate = Some(dependence_to_certificate(r, seq, &q)?),
                Ok(None) | Err(Error::ResourceExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let collapses = if certificate.is_some() {
            true
        } else {
            match pseudo_singular(r, seq) {
                Ok(c) => {
                    let col = c.is_some();
                    certificate = c;
                    col
                }
                Err(Error::ResourceExhausted(_)) => true,
                Err(e) => return Err(e),
            }
        };
        if !collapses && witness.is_none() {
            witness = Some(seq.clone());
        }
        entries.push(DimEntry { seq: seq.clone(), collapses, certificate });
    }
    let verdict = witness.is_none();
    let header = match (&witness, poly_bound) {
        (Some(w), _) => {
            let shown: Vec<String> = w.iter().map(|x| r.show(x)).collect();
            format!("dim ≤ {ell} refuted by witness ({})", shown.join(", "))
        }
        (None, Some(n)) => format!(
            "dim ≤ {ell} holds: {} has dimension {n}, every sequence of {} elements is algebraically dependent",
            r.name(),
            ell + 1
        ),
        (None, None) => format!("consistent with dim ≤ {ell} on {} test sequences", testset.len()),
    };
    Ok(DimReport { ell, verdict, header, entries })
}

#[cfg(test)]
mod tests;

//! The Zariski lattice of a computable ring, with elements kept as radicals of
//! finite generator lists, and the bridge between ring and lattice collapse.

use serde_json::{json, Value};

use crate::chain::{elems_from_json, elems_to_json, reject_unknown, CollapseCertificate, IdealisticChain};
use crate::collapse::{certify_collapse, chain_collapses, pseudo_singular};
use crate::error::{Error, Result};
use crate::groebner::{in_radical, saturate};
use crate::lattice::{Lattice, Presentation, Sequent};
use crate::ring::{Elem, Ring};

/// √⟨gens⟩; the empty list is 0 and [1] is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZarElement {
    pub gens: Vec<Elem>,
}

impl ZarElement {
    pub fn zero() -> ZarElement {
        ZarElement { gens: Vec::new() }
    }

    pub fn one(r: &Ring) -> ZarElement {
        ZarElement { gens: vec![r.one()] }
    }

    pub fn principal(a: Elem) -> ZarElement {
        ZarElement { gens: vec![a] }
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({ "radical_of": elems_to_json(r, &self.gens) })
    }

    pub fn from_json(r: &Ring, v: &Value) -> Result<ZarElement> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("Zariski element must be an object".into()))?;
        reject_unknown(obj, &["radical_of"])?;
        Ok(ZarElement { gens: elems_from_json(r, obj.get("radical_of"), "radical_of")? })
    }

    pub fn show(&self, r: &Ring) -> String {
        let gs: Vec<String> = self.gens.iter().map(|g| r.show(g)).collect();
        format!("√⟨{}⟩", gs.join(", "))
    }
}

fn or_zero(r: &Ring, gens: &[Elem]) -> Vec<Elem> {
    if gens.is_empty() {
        vec![r.zero()]
    } else {
        gens.to_vec()
    }
}

/// ∏U ∈ √⟨J⟩: the entailment relation U ⊢ J of Zar(R).
pub fn zar_entails(r: &Ring, u: &[Elem], j: &[Elem]) -> Result<bool> {
    in_radical(r, &r.product(u), &or_zero(r, j))
}

/// Every generator of x lies in √⟨y⟩.
pub fn zar_leq(r: &Ring, x: &ZarElement, y: &ZarElement) -> Result<bool> {
    for g in &x.gens {
        if !zar_entails(r, std::slice::from_ref(g), &y.gens)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn zar_equal(r: &Ring, x: &ZarElement, y: &ZarElement) -> Result<bool> {
    Ok(zar_leq(r, x, y)? && zar_leq(r, y, x)?)
}

pub fn zar_join(x: &ZarElement, y: &ZarElement) -> ZarElement {
    ZarElement { gens: x.gens.iter().chain(&y.gens).cloned().collect() }
}

/// √I ∩ √J = √(IJ).
pub fn zar_meet(r: &Ring, x: &ZarElement, y: &ZarElement) -> ZarElement {
    ZarElement { gens: x.gens.iter().flat_map(|a| y.gens.iter().map(move |b| r.mul(a, b))).collect() }
}

/// Drops zero generators and generators in the radical of the others.
pub fn zar_reduce(r: &Ring, x: &ZarElement) -> Result<ZarElement> {
    let mut gens: Vec<Elem> = x.gens.iter().filter(|g| !r.is_zero(g)).cloned().collect();
    let mut i = 0;
    while i < gens.len() {
        let others: Vec<Elem> = gens.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
        if zar_entails(r, std::slice::from_ref(&gens[i]), &others)? {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(ZarElement { gens })
}

/// x, Ũ ⊢ J̃, y for every generator of x.
fn ladder_step(r: &Ring, x: &ZarElement, u: &[Elem], j: &[Elem], y: &ZarElement) -> Result<bool> {
    let rhs: Vec<Elem> = j.iter().chain(&y.gens).cloned().collect();
    for g in &x.gens {
        let mut lhs = u.to_vec();
        lhs.push(g.clone());
        if !zar_entails(r, &lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// x₁, Ũ₀ ⊢ J̃₀; x_{k+1}, Ũ_k ⊢ J̃_k, x_k; Ũ_ℓ ⊢ J̃_ℓ, x_ℓ.
pub fn check_ladder(r: &Ring, c: &IdealisticChain, xs: &[ZarElement]) -> Result<bool> {
    let l = c.len();
    if xs.len() != l {
        return Err(Error::ShapeMismatch(format!("{} ladder elements for a chain of length {l}", xs.len())));
    }
    let mut prev = ZarElement::zero();
    for (k, x) in xs.iter().enumerate() {
        if !ladder_step(r, x, &c.primes[k].u, &c.primes[k].j, &prev)? {
            return Ok(false);
        }
        prev = x.clone();
    }
    let rhs: Vec<Elem> = c.primes[l].j.iter().chain(&prev.gens).cloned().collect();
    zar_entails(r, &c.primes[l].u, &rhs)
}

/// The principal ladder read off a certificate: v_ℓ = u_ℓ + j_ℓ,
/// v_k = v_{k+1}·u_k + j_k, and x_k = ṽ_k for k = 1..ℓ.
pub fn principal_ladder(r: &Ring, c: &IdealisticChain, cert: &CollapseCertificate) -> Vec<ZarElement> {
    let l = c.len();
    let mut vs = vec![r.zero(); l + 1];
    let mut v = r.add(&cert.u(r, c, l), &cert.j(r, c, l));
    for k in (1..=l).rev() {
        vs[k] = v.clone();
        v = r.add(&r.mul(&v, &cert.u(r, c, k - 1)), &cert.j(r, c, k - 1));
    }
    vs.into_iter().skip(1).map(ZarElement::principal).collect()
}

#[derive(Clone, Debug)]
pub struct BridgeVerdict {
    pub ring: bool,
    pub lattice: bool,
    pub witnesses: Option<Vec<ZarElement>>,
}

impl BridgeVerdict {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "ring": self.ring,
            "lattice": self.lattice,
            "witnesses": self.witnesses.as_ref().map(|w| w.iter().map(|x| x.to_json(r)).collect::<Vec<_>>()),
        })
    }
}

/// Lattice side: x₁ is the largest element with x₁ ∧ Ũ₀ ≤ J̃₀, x_{k+1} the
/// largest with x_{k+1} ∧ Ũ_k ≤ J̃_k ∨ x_k, each checked through zar_entails;
/// the chain collapses iff Ũ_ℓ ≤ J̃_ℓ ∨ x_ℓ.
fn lattice_iteration(r: &Ring, c: &IdealisticChain) -> Result<bool> {
    let l = c.len();
    let mut prev = ZarElement::zero();
    for k in 0..l {
        let (j, u) = (&c.primes[k].j, &c.primes[k].u);
        let base: Vec<Elem> = j.iter().chain(&prev.gens).cloned().collect();
        let p = r.product(u);
        let x = ZarElement { gens: if r.is_one(&p) { or_zero(r, &base) } else { saturate(r, &or_zero(r, &base), &p)? } };
        if !ladder_step(r, &x, u, j, &prev)? {
            return Err(Error::InternalMismatch(format!("saturation at level {k} leaves the ladder ideal")));
        }
        prev = x;
    }
    let rhs: Vec<Elem> = c.primes[l].j.iter().chain(&prev.gens).cloned().collect();
    zar_entails(r, &c.primes[l].u, &rhs)
}

/// Ring and lattice verdicts on a chain, which must agree, with principal
/// witnesses when a certificate is found.
pub fn bridge_collapse(r: &Ring, c: &IdealisticChain) -> Result<BridgeVerdict> {
    let ring = chain_collapses(r, c)?;
    let lattice = lattice_iteration(r, c)?;
    if ring != lattice {
        return Err(Error::InternalMismatch(format!("ring says {ring}, Zariski lattice says {lattice}")));
    }
    let witnesses = if ring {
        match certify_collapse(r, c) {
            Ok(Some(cert)) => Some(principal_ladder(r, c, &cert)),
            Ok(None) | Err(Error::ResourceExhausted(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if let Some(w) = &witnesses {
        if !check_ladder(r, c, w)? {
            return Err(Error::InternalMismatch("principal witnesses fail the ladder".into()));
        }
    }
    Ok(BridgeVerdict { ring, lattice, witnesses })
}

#[derive(Clone, Debug)]
pub struct ZarDimEntry {
    pub seq: Vec<Elem>,
    pub holds: bool,
    /// Principal a₁..a_{ℓ+1} of the ladder a₁x₁ ⊢ 0, a_{k+1}x_{k+1} ⊢ a_k, x_k, ⊢ a_{ℓ+1}, x_{ℓ+1}.
    pub a: Option<Vec<ZarElement>>,
}

#[derive(Clone, Debug)]
pub struct ZarDimReport {
    pub ell: usize,
    pub verdict: bool,
    pub header: String,
    pub entries: Vec<ZarDimEntry>,
}

impl ZarDimReport {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "ell": self.ell,
            "verdict": self.verdict,
            "header": self.header,
            "entries": self.entries.iter().map(|e| json!({
                "seq": elems_to_json(r, &e.seq),
                "holds": e.holds,
                "a": e.a.as_ref().map(|w| w.iter().map(|x| x.to_json(r)).collect::<Vec<_>>()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The dimension ladder inside Zar(R) on each sequence, cross-checked against
/// pseudo-singularity in R.
pub fn zar_dim_at_most(r: &Ring, ell: usize, testset: &[Vec<Elem>]) -> Result<ZarDimReport> {
    let mut entries = Vec::new();
    for seq in testset {
        if seq.len() != ell + 1 {
            return Err(Error::ShapeMismatch(format!("sequence of length {} for ℓ = {ell}", seq.len())));
        }
        let c = IdealisticChain::elementary(r, seq);
        let holds = lattice_iteration(r, &c)?;
        let a = match pseudo_singular(r, seq) {
            Ok(Some(ps)) => {
                let w = principal_ladder(r, &c, &ps.to_collapse(r));
                if !holds || !check_ladder(r, &c, &w)? {
                    return Err(Error::InternalMismatch("ring certificate without a Zariski ladder".into()));
                }
                Some(w)
            }
            Ok(None) if holds => {
                return Err(Error::InternalMismatch("Zariski ladder for a pseudo-regular sequence".into()))
            }
            Ok(None) | Err(Error::ResourceExhausted(_)) => None,
            Err(e) => return Err(e),
        };
        entries.push(ZarDimEntry { seq: seq.clone(), holds, a });
    }
    let verdict = entries.iter().all(|e| e.holds);
    let header = match entries.iter().find(|e| !e.holds) {
        Some(e) => {
            let shown: Vec<String> = e.seq.iter().map(|x| r.show(x)).collect();
            format!("dim ≤ {ell} refuted in Zar({}) by ({})", r.name(), shown.join(", "))
        }
        None => format!("consistent with dim ≤ {ell} in Zar({}) on {} test sequences", r.name(), testset.len()),
    };
    Ok(ZarDimReport { ell, verdict, header, entries })
}

/// The finite sublattice of Zar(R) generated by the radicals of `gens`: every
/// full sequent A ⊢ G∖A with ∏A ∈ √⟨G∖A⟩ is an axiom.
pub fn zar_presentation(r: &Ring, gens: &[Elem]) -> Result<Lattice> {
    let n = gens.len();
    let names: Vec<String> = gens.iter().map(|g| r.show(g)).collect();
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    if n > crate::lattice::MAX_CAP {
        return Err(Error::CapExceeded(format!("{n} generators")));
    }
    let pick = |m: u32| -> Vec<Elem> { (0..n).filter(|i| m >> i & 1 == 1).map(|i| gens[i].clone()).collect() };
    let mut axioms = Vec::new();
    for a in 0..=full {
        if zar_entails(r, &pick(a), &pick(full & !a))? {
            axioms.push(Sequent { lhs: a, rhs: full & !a });
        }
    }
    Lattice::with_cap(Presentation::new(names, axioms)?, crate::lattice::MAX_CAP)
}

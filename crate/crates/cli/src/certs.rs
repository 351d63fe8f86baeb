//! Self-contained certificate records. Each record carries the ring (or
//! presentation) and the data it speaks about, so `verify` can re-check it
//! without the request that produced it.

use krull_core::chain::{elems_to_json, CollapseCertificate, IdealisticChain};
use krull_core::collapse::PseudoSingularCertificate;
use krull_core::extensions::extension_to_json;
use krull_core::lattice::{Element, Lattice, Presentation};
use krull_core::zariski::{check_ladder, ZarElement};
use krull_core::{Elem, Ring};
use serde_json::{json, Value};

use crate::input::{self, Req};
use crate::Failure;

pub fn ring_json(r: &Ring) -> Value {
    match r.descriptor() {
        Some(d) => d.to_json(),
        None => extension_to_json(r),
    }
}

fn chain_list(r: &Ring, c: &IdealisticChain) -> Value {
    c.to_json(r)["chain"].clone()
}

/// u₀(u₁(⋯(u_ℓ + j_ℓ)⋯) + j₁) + j₀ = 0 for the chain.
pub fn collapse(r: &Ring, c: &IdealisticChain, cert: &CollapseCertificate) -> Value {
    json!({ "kind": "collapse", "ring": ring_json(r), "chain": chain_list(r, c), "certificate": cert.to_json(r, c) })
}

/// x₁^{m₁}(⋯(x_ℓ^{m_ℓ}(1 + a_ℓx_ℓ) + ⋯) + a₁x₁) = 0 for the sequence.
pub fn pseudo_singular(r: &Ring, seq: &[Elem], cert: &PseudoSingularCertificate) -> Value {
    json!({ "kind": "pseudo-singular", "ring": ring_json(r), "seq": elems_to_json(r, seq), "certificate": cert.to_json(r) })
}

/// x^exponent = Σ cofactors·ideal.
pub fn membership(r: &Ring, ideal: &[Elem], x: &Elem, exponent: u64, cofactors: &[Elem]) -> Value {
    json!({
        "kind": "membership",
        "ring": ring_json(r),
        "ideal": elems_to_json(r, ideal),
        "x": r.show(x),
        "exponent": exponent,
        "cofactors": elems_to_json(r, cofactors),
    })
}

/// a₁ ∧ x₁ ≤ 0, a_{k+1} ∧ x_{k+1} ≤ a_k ∨ x_k, 1 ≤ a_L ∨ x_L.
pub fn lattice_ladder(t: &Lattice, seq: &[Element], a: &[Element]) -> Value {
    let el = |xs: &[Element]| xs.iter().map(|x| t.element_to_json(x)).collect::<Vec<_>>();
    json!({ "kind": "lattice-ladder", "presentation": t.pres.to_json(), "seq": el(seq), "a": el(a) })
}

/// The ladder of principal radicals through the chain in Zar(R).
pub fn zariski_ladder(r: &Ring, c: &IdealisticChain, xs: &[ZarElement]) -> Value {
    json!({
        "kind": "zariski-ladder",
        "ring": ring_json(r),
        "chain": chain_list(r, c),
        "witnesses": xs.iter().map(|x| x.to_json(r)).collect::<Vec<_>>(),
    })
}

fn ladder_holds(t: &Lattice, seq: &[Element], a: &[Element]) -> bool {
    if seq.len() != a.len() {
        return false;
    }
    let l = seq.len();
    if l == 0 {
        return t.is_trivial();
    }
    let mut prev = t.zero();
    for k in 0..l {
        if !t.leq(&t.meet(&a[k], &seq[k]), &prev) {
            return false;
        }
        prev = t.join(&a[k], &seq[k]);
    }
    t.leq(&t.one(), &prev)
}

/// Re-checks one record. `Ok(false)` is an invalid certificate; errors are
/// malformed records.
pub fn check(v: &Value) -> Result<bool, Failure> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Failure::input("Invalid", "certificate record needs a \"kind\"".into()))?;
    match kind {
        "collapse" => {
            let q = Req::new(v.clone(), &["kind", "ring", "chain", "certificate"])?;
            let r = input::ring(q.need("ring")?)?;
            let c = input::chain(&r, q.need("chain")?)?;
            let cert = CollapseCertificate::from_json(&r, &c, q.need("certificate")?)?;
            Ok(cert.verify(&r, &c))
        }
        "pseudo-singular" => {
            let q = Req::new(v.clone(), &["kind", "ring", "seq", "certificate"])?;
            let r = input::ring(q.need("ring")?)?;
            let seq = input::elems(&r, q.need("seq")?, "seq")?;
            let cert = PseudoSingularCertificate::from_json(&r, q.need("certificate")?)?;
            Ok(cert.verify(&r, &seq))
        }
        "membership" => {
            let q = Req::new(v.clone(), &["kind", "ring", "ideal", "x", "exponent", "cofactors"])?;
            let r = input::ring(q.need("ring")?)?;
            let ideal = input::elems(&r, q.need("ideal")?, "ideal")?;
            let x = input::elem(&r, q.need("x")?, "x")?;
            let e = q.need("exponent")?.as_u64().ok_or_else(|| Failure::input("Invalid", "\"exponent\" must be a natural".into()))?;
            let cof = input::elems(&r, q.need("cofactors")?, "cofactors")?;
            Ok(cof.len() == ideal.len() && r.pow(&x, e) == r.dot(&cof, &ideal))
        }
        "lattice-ladder" => {
            let q = Req::new(v.clone(), &["kind", "presentation", "seq", "a"])?;
            let t = Lattice::with_cap(Presentation::from_json(q.need("presentation")?)?, krull_core::lattice::MAX_CAP)?;
            let seq = input::lattice_elems(&t, q.need("seq")?, "seq")?;
            let a = input::lattice_elems(&t, q.need("a")?, "a")?;
            Ok(ladder_holds(&t, &seq, &a))
        }
        "zariski-ladder" => {
            let q = Req::new(v.clone(), &["kind", "ring", "chain", "witnesses"])?;
            let r = input::ring(q.need("ring")?)?;
            let c = input::chain(&r, q.need("chain")?)?;
            let ws = q.need("witnesses")?.as_array().ok_or_else(|| Failure::input("Invalid", "\"witnesses\" must be a list".into()))?;
            let xs = ws.iter().map(|w| ZarElement::from_json(&r, w)).collect::<Result<Vec<_>, _>>()?;
            Ok(xs.len() == c.len() && check_ladder(&r, &c, &xs)?)
        }
        other => Err(Failure::input("Invalid", format!("unknown certificate kind {other:?}"))),
    }
}

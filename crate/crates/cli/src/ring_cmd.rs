//! Commands over a single ring: collapse, certificates, pseudo-regularity,
//! dimension tests, saturation, and the Zariski lattice bridge.

use krull_core::chain::{elems_to_json, IdealisticChain, IdealisticPrime};
use krull_core::collapse::{
    certify_collapse_with, chain_collapses, complete_chain, dim_at_most, in_saturated_ideal, in_saturated_monoid, pseudo_regular,
    pseudo_singular, SearchCaps,
};
use krull_core::groebner::radical_member;
use krull_core::zariski::{bridge_collapse, zar_dim_at_most, zar_entails};
use krull_core::{Error, Ring};
use serde_json::{json, Value};

use crate::input::{self, Req};
use crate::{certs, testset, Ctx, Failure, Outcome};

fn search_caps(r: &Ring, ctx: &Ctx) -> SearchCaps {
    let mut caps = SearchCaps::for_ring(r);
    if let Some(e) = ctx.caps.exponent {
        caps.max_exponent = e;
    }
    if let Some(c) = ctx.caps.candidates {
        caps.max_candidates = c;
    }
    caps
}

/// The certificate of a collapsing chain, or None when the caps ran out.
fn try_certify(r: &Ring, c: &IdealisticChain, ctx: &Ctx) -> Result<Option<Value>, Failure> {
    match certify_collapse_with(r, c, search_caps(r, ctx)) {
        Ok(Some(cert)) => Ok(Some(certs::collapse(r, c, &cert))),
        Ok(None) | Err(Error::ResourceExhausted(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn ring_and_chain(v: Value, extra: &[&str]) -> Result<(Req, Ring, IdealisticChain), Failure> {
    let mut allowed = vec!["ring", "chain"];
    allowed.extend_from_slice(extra);
    let q = Req::new(v, &allowed)?;
    let r = input::ring(q.need("ring")?)?;
    let c = input::chain(&r, q.need("chain")?)?;
    Ok((q, r, c))
}

pub fn collapse(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (_, r, c) = ring_and_chain(v, &[])?;
    let verdict = chain_collapses(&r, &c)?;
    let mut out = Outcome::new(verdict, json!({ "collapses": verdict, "completion": complete_chain(&c).to_json(&r) }));
    if verdict {
        match try_certify(&r, &c, ctx)? {
            Some(cert) => out.certificates.push(cert),
            None => out.note_caps("collapse decided, certificate search exceeded the caps"),
        }
    }
    Ok(out)
}

pub fn certify(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (_, r, c) = ring_and_chain(v, &[])?;
    if !chain_collapses(&r, &c)? {
        return Ok(Outcome::new(false, json!({ "collapses": false })));
    }
    let mut out = Outcome::new(true, json!({ "collapses": true }));
    match try_certify(&r, &c, ctx)? {
        Some(cert) => out.certificates.push(cert),
        None => {
            out.note_caps("the chain collapses but no certificate was found within the caps");
            out.exhausted = true;
        }
    }
    Ok(out)
}

pub fn pseudo_regular_cmd(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["ring", "seq"])?;
    let r = input::ring(q.need("ring")?)?;
    let seq = input::elems(&r, q.need("seq")?, "seq")?;
    let regular = pseudo_regular(&r, &seq)?;
    let mut out = Outcome::new(regular, json!({ "pseudo_regular": regular }));
    if !regular {
        match pseudo_singular(&r, &seq) {
            Ok(Some(ps)) => out.certificates.push(certs::pseudo_singular(&r, &seq, &ps)),
            Ok(None) => return Err(Failure::core(Error::InternalMismatch("singular sequence without a collapse".into()))),
            Err(Error::ResourceExhausted(m)) => out.note_caps(&m),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn testset_of(q: &Req, r: &Ring, ell: usize, ctx: &Ctx) -> Result<(Vec<Vec<krull_core::Elem>>, bool), Failure> {
    match q.get("testset") {
        Some(t) => Ok((input::sequences(r, t)?, false)),
        None => {
            let count = q.opt_usize("count")?.unwrap_or(ctx.caps.testset);
            Ok((testset::generate(r, ell, count, ctx.seed), true))
        }
    }
}

pub fn dim_le(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["ring", "ell", "testset", "count"])?;
    let r = input::ring(q.need("ring")?)?;
    let ell = q.usize("ell")?;
    let (tests, generated) = testset_of(&q, &r, ell, ctx)?;
    let report = dim_at_most(&r, ell, &tests)?;
    let mut out = Outcome::new(report.verdict, report.to_json(&r));
    for e in &report.entries {
        if let Some(ps) = &e.certificate {
            out.certificates.push(certs::pseudo_singular(&r, &e.seq, ps));
        }
    }
    out.diagnostics.insert("testset".into(), json!(if generated { "generated from the seed" } else { "given" }));
    Ok(out)
}

pub fn saturate_member(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["ring", "prime", "x", "side"])?;
    let r = input::ring(q.need("ring")?)?;
    let p = input::prime(&r, q.need("prime")?)?;
    let x = input::elem(&r, q.need("x")?, "x")?;
    let side = match q.get("side") {
        None => "ideal",
        Some(Value::String(s)) if s == "ideal" || s == "monoid" => s.as_str(),
        Some(_) => return Err(Failure::input("Invalid", "\"side\" must be \"ideal\" or \"monoid\"".into())),
    };
    let in_ideal = in_saturated_ideal(&r, &p, &x)?;
    let in_monoid = in_saturated_monoid(&r, &p, &x)?;
    let verdict = if side == "ideal" { in_ideal } else { in_monoid };
    let mut out = Outcome::new(verdict, json!({ "side": side, "in_ideal": in_ideal, "in_monoid": in_monoid }));
    // Membership is the collapse of the refined prime, which is certified.
    if verdict {
        let refined = if side == "ideal" {
            IdealisticPrime::new(p.j.clone(), p.u.iter().chain([&x]).cloned().collect())
        } else {
            IdealisticPrime::new(p.j.iter().chain([&x]).cloned().collect(), p.u.clone())
        };
        let c = IdealisticChain::new(vec![refined])?;
        match try_certify(&r, &c, ctx)? {
            Some(cert) => out.certificates.push(cert),
            None => out.note_caps("membership decided, certificate search exceeded the caps"),
        }
    }
    Ok(out)
}

pub fn zar_entails_cmd(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["ring", "U", "J"])?;
    let r = input::ring(q.need("ring")?)?;
    let side = |k: &str| q.get(k).map(|x| input::elems(&r, x, k)).transpose().map(Option::unwrap_or_default);
    let (u, j) = (side("U")?, side("J")?);
    let verdict = zar_entails(&r, &u, &j)?;
    let mut out = Outcome::new(verdict, json!({ "entails": verdict, "U": elems_to_json(&r, &u), "J": elems_to_json(&r, &j) }));
    if verdict {
        let gens = if j.is_empty() { vec![r.zero()] } else { j.clone() };
        let x = r.product(&u);
        let (n, cof) = radical_member(&r, &x, &gens)?
            .ok_or_else(|| Failure::core(Error::InternalMismatch("entailment without radical membership".into())))?;
        out.certificates.push(certs::membership(&r, &gens, &x, n.into(), &cof));
    }
    Ok(out)
}

pub fn zar_dim_le(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["ring", "ell", "testset", "count"])?;
    let r = input::ring(q.need("ring")?)?;
    let ell = q.usize("ell")?;
    let (tests, generated) = testset_of(&q, &r, ell, ctx)?;
    let report = zar_dim_at_most(&r, ell, &tests)?;
    let mut out = Outcome::new(report.verdict, report.to_json(&r));
    for e in &report.entries {
        if let Some(a) = &e.a {
            out.certificates.push(certs::zariski_ladder(&r, &IdealisticChain::elementary(&r, &e.seq), a));
        }
    }
    out.diagnostics.insert("testset".into(), json!(if generated { "generated from the seed" } else { "given" }));
    Ok(out)
}

pub fn zar_bridge(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let (_, r, c) = ring_and_chain(v, &[])?;
    let b = bridge_collapse(&r, &c)?;
    let mut out = Outcome::new(b.ring, b.to_json(&r));
    match &b.witnesses {
        Some(w) => out.certificates.push(certs::zariski_ladder(&r, &c, w)),
        None if b.ring => out.note_caps("collapse decided, no principal witnesses within the caps"),
        None => {}
    }
    Ok(out)
}

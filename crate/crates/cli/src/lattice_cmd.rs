//! Commands over finitely presented distributive lattices.

use krull_core::lattice::{boolean_envelope, close_entailment, kr_lattice, lattice_dim_at_most, spec_enumerate, Lattice};
use serde_json::{json, Value};

use crate::input::{self, Req};
use crate::{certs, Ctx, Failure, Outcome};

/// Disjoint pairs are listed up to this many generators (3ⁿ candidates).
const LIST_LIMIT: usize = 12;

fn presented(v: Value, extra: &[&str], ctx: &Ctx) -> Result<(Req, Lattice), Failure> {
    let mut allowed = vec!["presentation"];
    allowed.extend_from_slice(extra);
    let q = Req::new(v, &allowed)?;
    let t = input::lattice(q.need("presentation")?, ctx.caps.lattice)?;
    Ok((q, t))
}

/// The ⊆-minimal sequents A ⊢ B with A, B disjoint.
fn minimal_sequents(t: &Lattice) -> Vec<(u32, u32)> {
    let n = t.n();
    let full = t.full();
    let mut out = Vec::new();
    for a in 0..=full {
        let rest = full & !a;
        let mut b = rest;
        loop {
            if t.entails(a, b) {
                let smaller_a = (0..n).any(|i| a >> i & 1 == 1 && t.entails(a & !(1 << i), b));
                let smaller_b = (0..n).any(|i| b >> i & 1 == 1 && t.entails(a, b & !(1 << i)));
                if !smaller_a && !smaller_b {
                    out.push((a, b));
                }
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & rest;
        }
    }
    out.sort_by_key(|&(a, b)| (a.count_ones() + b.count_ones(), a, b));
    out
}

pub fn close(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["presentation"])?;
    let p = krull_core::lattice::Presentation::from_json(q.need("presentation")?)?;
    let table = close_entailment(&p, ctx.caps.lattice)?;
    let t = Lattice::with_cap(p, ctx.caps.lattice)?;
    let trivial = table.entails(0, 0);
    let mut result = json!({ "generators": t.n(), "trivial": trivial });
    let mut out = Outcome::new(true, Value::Null);
    if t.n() <= LIST_LIMIT {
        let seqs: Vec<Value> =
            minimal_sequents(&t).into_iter().map(|(a, b)| json!({ "lhs": t.pres.names(a), "rhs": t.pres.names(b) })).collect();
        result["minimal_sequents"] = json!(seqs);
    } else {
        out.note_caps(&format!("minimal sequents are listed for at most {LIST_LIMIT} generators"));
    }
    out.result = result;
    Ok(out)
}

pub fn leq(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (q, t) = presented(v, &["x", "y"], ctx)?;
    let x = t.element_from_json(q.need("x")?)?;
    let y = t.element_from_json(q.need("y")?)?;
    let verdict = t.leq(&x, &y);
    Ok(Outcome::new(verdict, json!({ "leq": verdict, "x": t.element_to_json(&x), "y": t.element_to_json(&y) })))
}

pub fn dim(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (q, t) = presented(v, &["d"], ctx)?;
    let d = q.need("d")?.as_i64().ok_or_else(|| Failure::input("Invalid", "\"d\" must be an integer".into()))?;
    let report = lattice_dim_at_most(&t, d as isize)?;
    let el = |xs: &[krull_core::lattice::Element]| xs.iter().map(|x| t.element_to_json(x)).collect::<Vec<_>>();
    let entries: Vec<Value> = report.entries.iter().map(|(s, a)| json!({ "seq": el(s), "a": a.as_deref().map(el) })).collect();
    let refuted = report.entries.iter().find(|(_, a)| a.is_none()).map(|(s, _)| el(s));
    let mut out = Outcome::new(report.holds, json!({ "d": d, "holds": report.holds, "refuted_by": refuted, "entries": entries }));
    for (s, a) in &report.entries {
        if let Some(a) = a {
            out.certificates.push(certs::lattice_ladder(&t, s, a));
        }
    }
    Ok(out)
}

pub fn spec(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (_, t) = presented(v, &[], ctx)?;
    let pts = spec_enumerate(&t);
    let points: Vec<Value> = pts.iter().map(|p| p.to_json(&t.pres)).collect();
    Ok(Outcome::new(true, json!({ "count": pts.len(), "points": points })))
}

pub fn kr(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (q, t) = presented(v, &["ell"], ctx)?;
    let ell = q.usize("ell")?;
    let k = kr_lattice(&t, ell, ctx.caps.lattice)?;
    let trivial = k.is_trivial();
    Ok(Outcome::new(true, json!({ "ell": ell, "trivial": trivial, "presentation": k.pres.to_json() })))
}

pub fn boolean(v: Value, ctx: &Ctx) -> Result<Outcome, Failure> {
    let (_, t) = presented(v, &[], ctx)?;
    let b = boolean_envelope(&t)?;
    let elements = b.elements(ctx.caps.elements)?;
    let complemented = elements.iter().all(|x| elements.iter().any(|y| b.equal(&b.meet(x, y), &b.zero()) && b.equal(&b.join(x, y), &b.one())));
    Ok(Outcome::new(
        complemented,
        json!({
            "presentation": b.pres.to_json(),
            "size": elements.len(),
            "elements": elements.iter().map(|x| b.element_to_json(x)).collect::<Vec<_>>(),
            "complemented": complemented,
        }),
    ))
}

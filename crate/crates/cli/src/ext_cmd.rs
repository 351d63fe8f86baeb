//! Commands over an integral extension S = R[Y]/(f), and flat Going Down
//! over R[X₁..X_n].

use krull_core::chain::{elems_to_json, IdealisticChain, IdealisticPrime};
use krull_core::extensions::{
    base_of, collapse_above, going_down_flat_ext, going_down_flat_poly, going_down_step, going_up_transfer, integral_alist,
    integral_alist_from, lying_over, lying_over_collapse, BasePolyRing, FlatCollapse,
};
use krull_core::parse::parse_univariate;
use krull_core::{Elem, Error, Ring};
use serde_json::{json, Value};

use crate::input::{self, Req};
use crate::{certs, Ctx, Failure, Outcome};

pub fn going_up(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["extension", "c1", "probes", "c2"])?;
    let s = input::extension(q.need("extension")?)?;
    let base = base_of(&s)?.clone();
    let c1 = match q.get("c1") {
        Some(c) => input::primes(&s, c)?,
        None => Vec::new(),
    };
    let probes = match q.get("probes") {
        Some(p) => input::elems(&base, p, "probes")?,
        None => Vec::new(),
    };
    let c2 = input::chain(&base, q.need("c2")?)?;
    let report = going_up_transfer(&s, &c1, &probes, &c2)?;
    let mut out = Outcome::new(report.in_s, report.to_json(&s));
    if let Some(cert) = &report.certificate {
        let mut primes = report.trace.clone();
        primes.extend(c2.primes.iter().cloned());
        out.certificates.push(certs::collapse(&base, &IdealisticChain::new(primes)?, cert));
    } else if report.in_r {
        out.note_caps("collapse in R decided, certificate search exceeded the caps");
    }
    if let Some((k, x, lo)) = &report.final_membership {
        out.certificates.push(certs::membership(&base, k, x, lo.exponent(), &lo.cofactors));
    }
    if !report.agree {
        out.diagnostics.insert("trace".into(), json!("the verdicts differ; add probes to saturate the trace of C₁"));
    }
    Ok(out)
}

fn decomposition(base: &Ring, s_side: impl Fn(&Value) -> Result<Elem, Failure>, v: &Value) -> Result<Vec<(Elem, Elem)>, Failure> {
    let arr = v.as_array().ok_or_else(|| Failure::input("Invalid", "\"decomposition\" must be a list of {\"i\",\"b\"}".into()))?;
    arr.iter()
        .map(|t| {
            let q = Req::new(t.clone(), &["i", "b"])?;
            Ok((input::elem(base, q.need("i")?, "i")?, s_side(q.need("b")?)?))
        })
        .collect()
}

fn flat_certificates(out: &mut Outcome, r: &Ring, p0: &IdealisticPrime, f: &FlatCollapse) {
    let gens: Vec<Elem> = if p0.j.is_empty() { vec![r.zero()] } else { p0.j.clone() };
    for (l, m) in f.membership.iter().enumerate() {
        if let Some(cof) = m {
            out.certificates.push(certs::membership(r, &gens, &f.m[0][l], 1, cof));
        }
    }
    let missing = f.membership.iter().filter(|m| m.is_none()).count();
    if missing > 0 {
        out.diagnostics.insert("saturated_only".into(), json!(missing));
    }
}

pub fn going_down(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["extension", "ring", "vars", "prime", "u0", "v1", "decomposition", "flat"])?;
    if q.has("extension") == q.has("ring") {
        return Err(Failure::input("Invalid", "give either \"extension\" or \"ring\" with \"vars\"".into()));
    }
    if q.has("ring") {
        let base = input::ring(q.need("ring")?)?;
        let names = q.need("vars")?.as_array().ok_or_else(|| Failure::input("Invalid", "\"vars\" must be a list".into()))?;
        let names: Vec<&str> = names.iter().map(|x| x.as_str().ok_or_else(|| Failure::input("Invalid", "variable names are strings".into()))).collect::<Result<_, _>>()?;
        let pr = BasePolyRing::new(&base, &names)?;
        let p0 = input::prime(&base, q.need("prime")?)?;
        let u0 = input::elem(&base, q.need("u0")?, "u0")?;
        let v1 = pr.parse(q.string("v1")?)?;
        let poly = |x: &Value| x.as_str().ok_or_else(|| Failure::input("Invalid", "\"b\" must be a string".into())).and_then(|t| Ok(pr.parse(t)?));
        let arr = q.need("decomposition")?.as_array().ok_or_else(|| Failure::input("Invalid", "\"decomposition\" must be a list".into()))?;
        let rel = arr
            .iter()
            .map(|t| {
                let d = Req::new(t.clone(), &["i", "b"])?;
                Ok((input::elem(&base, d.need("i")?, "i")?, poly(d.need("b")?)?))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let f = flat_outcome(going_down_flat_poly(&pr, &p0, &u0, &v1, &rel))?;
        return Ok(flat_report(&base, &p0, f));
    }
    let s = input::extension(q.need("extension")?)?;
    let base = base_of(&s)?.clone();
    let p0 = input::prime(&base, q.need("prime")?)?;
    let u0 = input::elem(&base, q.need("u0")?, "u0")?;
    let v1 = input::elem(&s, q.need("v1")?, "v1")?;
    let rel = decomposition(&base, |x| input::elem(&s, x, "b"), q.need("decomposition")?)?;
    if q.bool_or("flat", false)? {
        let f = flat_outcome(going_down_flat_ext(&s, &p0, &u0, &v1, &rel))?;
        return Ok(flat_report(&base, &p0, f));
    }
    let step = going_down_step(&s, &p0, &u0, &v1, &rel)?;
    let mut out = Outcome::new(true, step.to_json(&s));
    let gens: Vec<Elem> = p0.j.iter().map(|g| s.embed(g)).collect();
    out.certificates.push(certs::membership(&s, &gens, &v1, step.k, &step.cofactors));
    out.diagnostics.insert("rounds".into(), json!(step.rounds.len()));
    Ok(out)
}

/// A refuted saturation is a false verdict, not an input error.
fn flat_outcome(r: krull_core::Result<FlatCollapse>) -> Result<Option<FlatCollapse>, Failure> {
    match r {
        Ok(f) => Ok(Some(f)),
        Err(Error::SaturationRefutes(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn flat_report(base: &Ring, p0: &IdealisticPrime, f: Option<FlatCollapse>) -> Outcome {
    match f {
        Some(f) => {
            let mut out = Outcome::new(true, f.to_json(base));
            flat_certificates(&mut out, base, p0, &f);
            out
        }
        None => Outcome::new(false, json!({ "refuted": "a coordinate of v₁ is outside the saturation of I₀" })),
    }
}

pub fn lying_over_cmd(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["extension", "prime", "ideal", "x", "n", "js", "bs"])?;
    let s = input::extension(q.need("extension")?)?;
    let base = base_of(&s)?.clone();
    if q.has("prime") {
        for k in ["ideal", "x", "n", "js", "bs"] {
            if q.has(k) {
                return Err(Failure::input("Invalid", format!("{k:?} does not go with \"prime\"")));
            }
        }
        let p = input::prime(&base, q.need("prime")?)?;
        let Some((lo, cert)) = lying_over_collapse(&s, &p)? else {
            return Ok(Outcome::new(false, json!({ "lies_over": false })));
        };
        let gens: Vec<Elem> = if p.j.is_empty() { vec![base.zero()] } else { p.j.clone() };
        let x = base.product(&p.u);
        let mut out = Outcome::new(true, json!({ "lies_over": true, "lying_over": lo.to_json(&base, &gens, &x) }));
        out.certificates.push(certs::membership(&base, &gens, &x, lo.exponent(), &lo.cofactors));
        out.certificates.push(certs::collapse(&base, &IdealisticChain::single(p.j.clone(), p.u.clone()), &cert));
        return Ok(out);
    }
    let gens = input::elems(&base, q.need("ideal")?, "ideal")?;
    let x = input::elem(&base, q.need("x")?, "x")?;
    let n = q.need("n")?.as_u64().ok_or_else(|| Failure::input("Invalid", "\"n\" must be a natural".into()))?;
    let js = input::elems(&base, q.need("js")?, "js")?;
    let bs = input::elems(&s, q.need("bs")?, "bs")?;
    let lo = lying_over(&s, &gens, &x, n, &js, &bs)?;
    let mut out = Outcome::new(true, json!({ "lying_over": lo.to_json(&base, &gens, &x) }));
    out.certificates.push(certs::membership(&base, &gens, &x, lo.exponent(), &lo.cofactors));
    Ok(out)
}

pub fn above(v: Value, _ctx: &Ctx) -> Result<Outcome, Failure> {
    let q = Req::new(v, &["extension", "x", "annihilator", "chain", "alist"])?;
    let s = input::extension(q.need("extension")?)?;
    let base = base_of(&s)?.clone();
    if q.has("chain") {
        if q.has("x") || q.has("annihilator") {
            return Err(Failure::input("Invalid", "give either \"x\" or \"chain\" with \"alist\"".into()));
        }
        let c = input::chain(&s, q.need("chain")?)?;
        let alist = input::elems(&base, q.need("alist")?, "alist")?;
        let rep = collapse_above(&s, &c, &alist)?;
        let mut out = Outcome::new(rep.holds, rep.to_json());
        out.diagnostics.insert("partitions".into(), json!(rep.partitions));
        return Ok(out);
    }
    let x = input::elem(&s, q.need("x")?, "x")?;
    let ia = match q.get("annihilator") {
        None => integral_alist(&s, &x)?,
        Some(p) => {
            let text = p.as_str().ok_or_else(|| Failure::input("Invalid", "\"annihilator\" must be a polynomial in X".into()))?;
            integral_alist_from(&s, &x, &parse_univariate(&base, "X", text)?)?
        }
    };
    let c = IdealisticChain::elementary(&s, std::slice::from_ref(&x));
    let rep = collapse_above(&s, &c, &ia.alist)?;
    let r = ia.alist.len();
    let mut out = Outcome::new(rep.holds, json!({ "holds": rep.holds, "failing": rep.failing, "alist": ia.to_json(&s), "alist_elems": elems_to_json(&base, &ia.alist) }));
    // One certificate per ladder case: the representative partition of case h
    // puts the entries before h on the ideal side and h on the monoid side.
    for case in &ia.cases {
        let mask = match case.h {
            Some(h) => (1u32 << h) - 1,
            None => if r == 32 { u32::MAX } else { (1u32 << r) - 1 },
        };
        let (chain, cert) = ia.certificate_for(&s, &x, mask);
        out.certificates.push(certs::collapse(&s, &chain, &cert));
    }
    out.diagnostics.insert("partitions".into(), json!(rep.partitions));
    out.diagnostics.insert("ladder_cases".into(), json!(ia.cases.len()));
    out.diagnostics.insert("ladder_rungs".into(), json!(r));
    Ok(out)
}

//! Ideal oracles: membership with cofactors, radical membership and
//! saturation, for every supported ring family.
//!
//! Polynomial rings (and extensions of them) go through Buchberger;
//! ℤ and ℤ/n through gcds; extensions of ℤ and ℤ/n through integer lattices.

pub mod buchberger;
pub mod zmodule;

use std::cell::Cell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{ext_gcd_many, least_power_divisible, strip_shared};
use crate::error::{Error, Result};
use crate::poly::{Field, Mono, Poly};
use crate::ring::{Elem, Kind, Ring};
pub use buchberger::{Caps, GPoly, GroebnerBasis, Order};
use zmodule::{echelon, Echelon};

thread_local! {
    static MAX_DEGREE: Cell<u32> = const { Cell::new(40) };
}

/// Overrides the Gröbner degree cap for the current thread.
pub fn set_degree_cap(cap: u32) {
    MAX_DEGREE.with(|c| c.set(cap));
}

pub fn caps() -> Caps {
    Caps { max_degree: MAX_DEGREE.with(Cell::get), ..Caps::default() }
}

/// Variables of the polynomial model of a ring: the ring's own variables, or
/// base variables followed by the extension variable.
fn model(r: &Ring) -> Option<(Field, usize)> {
    match &r.kind {
        Kind::Poly { field, vars } => Some((field.clone(), vars.len())),
        Kind::Ext { base, .. } => match &base.kind {
            Kind::Poly { field, vars } => Some((field.clone(), vars.len() + 1)),
            _ => None,
        },
        _ => None,
    }
}

fn poly_to_gp(p: &Poly, shift: usize, extra: usize, ext_exp: u32, order: Order, field: &Field) -> GPoly {
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = vec![0u32; shift];
            e.extend_from_slice(&m.0);
            for _ in 0..extra {
                e.push(ext_exp);
            }
            (e, c.clone())
        })
        .collect();
    GPoly::from_terms(terms, order, field)
}

/// Element → polynomial in `shift` leading auxiliary variables plus the model.
fn to_gp(r: &Ring, x: &Elem, shift: usize, order: Order) -> GPoly {
    let (field, _) = model(r).expect("polynomial model");
    match x {
        Elem::Poly(p) => poly_to_gp(p, shift, 0, 0, order, &field),
        Elem::Ext(cs) => {
            let mut terms = Vec::new();
            for (j, c) in cs.iter().enumerate() {
                terms.extend(poly_to_gp(c.as_poly(), shift, 1, j as u32, order, &field).terms);
            }
            GPoly::from_terms(terms, order, &field)
        }
        Elem::Int(_) => unreachable!("integer element in a polynomial model"),
    }
}

/// Polynomial in the model (auxiliary variables must not occur) → element.
fn from_gp(r: &Ring, g: &GPoly, shift: usize) -> Elem {
    match &r.kind {
        Kind::Poly { .. } => {
            let mut p = Poly::zero();
            for (m, c) in &g.terms {
                debug_assert!(m[..shift].iter().all(|&e| e == 0));
                p.terms.insert(Mono(m[shift..].to_vec()), c.clone());
            }
            Elem::Poly(p)
        }
        Kind::Ext { base, .. } => {
            let nb = base.nvars();
            let y = r.var(nb);
            let mut acc = r.zero();
            for (m, c) in &g.terms {
                let mut p = Poly::zero();
                p.terms.insert(Mono(m[shift..shift + nb].to_vec()), c.clone());
                let t = r.mul(&r.embed(&Elem::Poly(p)), &r.pow(&y, m[shift + nb] as u64));
                acc = r.add(&acc, &t);
            }
            acc
        }
        _ => unreachable!(),
    }
}

fn gp_one(n: usize) -> GPoly {
    GPoly::constant(n, BigRational::one())
}

/// 1 − t·g with t the first of n variables.
fn rabinowitsch(r: &Ring, g: &Elem, n: usize, order: Order) -> GPoly {
    let (field, _) = model(r).unwrap();
    let tg = to_gp(r, g, 1, order);
    let mut t = vec![0u32; n];
    t[0] = 1;
    gp_one(n).add_scaled(&field.neg(&BigRational::one()), &t, &tg, order, &field)
}

/// Monic polynomial of an extension as a model polynomial.
fn ext_modulus_gp(r: &Ring, shift: usize, order: Order) -> Option<GPoly> {
    let (base, _, tail) = r.ext_parts()?;
    let (field, _) = model(r)?;
    let nb = base.nvars();
    let mut terms = Vec::new();
    for (j, c) in tail.iter().enumerate() {
        terms.extend(poly_to_gp(c.as_poly(), shift, 1, j as u32, order, &field).terms);
    }
    let mut lead = vec![0u32; shift + nb + 1];
    lead[shift + nb] = tail.len() as u32;
    terms.push((lead, BigRational::one()));
    Some(GPoly::from_terms(terms, order, &field))
}

fn int_of(x: &Elem) -> BigInt {
    x.as_int().clone()
}

fn ext_vec(x: &Elem) -> Vec<BigInt> {
    x.coords().iter().map(int_of).collect()
}

enum Inner {
    /// ℤ or ℤ/n: the ideal is ⟨d⟩ with d = Σ bezoutᵢ·genᵢ (mod n).
    Int { d: BigInt, bezout: Vec<BigInt> },
    Poly { gb: GroebnerBasis },
    Lattice { ech: Echelon, labels: Vec<Option<(usize, usize)>> },
}

/// A finitely generated ideal prepared for repeated membership queries.
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Elem>,
    inner: Inner,
}

fn lattice_rows(r: &Ring, gens: &[Elem]) -> (Vec<Vec<BigInt>>, Vec<Option<(usize, usize)>>) {
    let (base, _, tail) = r.ext_parts().unwrap();
    let d = tail.len();
    let y = r.var(base.nvars());
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut cur = g.clone();
        for j in 0..d {
            rows.push(ext_vec(&cur));
            labels.push(Some((i, j)));
            cur = r.mul(&cur, &y);
        }
    }
    if let Some(n) = base.modulus() {
        for k in 0..d {
            let mut v = vec![BigInt::zero(); d];
            v[k] = n.clone();
            rows.push(v);
            labels.push(None);
        }
    }
    (rows, labels)
}

impl Ideal {
    pub fn new(r: &Ring, gens: &[Elem]) -> Result<Ideal> {
        Ideal::build(r, gens, true)
    }

    /// Membership-only variant (no cofactor tracking).
    pub fn untracked(r: &Ring, gens: &[Elem]) -> Result<Ideal> {
        Ideal::build(r, gens, false)
    }

    fn build(r: &Ring, gens: &[Elem], track: bool) -> Result<Ideal> {
        let inner = match &r.kind {
            Kind::Z | Kind::Zmod(_) => {
                let xs: Vec<BigInt> = gens.iter().map(int_of).collect();
                let (mut d, bezout) = ext_gcd_many(&xs);
                if let Some(n) = r.modulus() {
                    d = d.gcd(n);
                }
                Inner::Int { d, bezout }
            }
            Kind::Poly { .. } => {
                let (field, n) = model(r).unwrap();
                let gps: Vec<GPoly> = gens.iter().map(|g| to_gp(r, g, 0, Order::Grevlex)).collect();
                Inner::Poly { gb: buchberger::groebner(&field, n, &gps, Order::Grevlex, track, caps())? }
            }
            Kind::Ext { base, .. } => match &base.kind {
                Kind::Poly { .. } => {
                    let (field, n) = model(r).unwrap();
                    let mut gps: Vec<GPoly> = gens.iter().map(|g| to_gp(r, g, 0, Order::Grevlex)).collect();
                    gps.push(ext_modulus_gp(r, 0, Order::Grevlex).unwrap());
                    Inner::Poly { gb: buchberger::groebner(&field, n, &gps, Order::Grevlex, track, caps())? }
                }
                Kind::Z | Kind::Zmod(_) => {
                    let (rows, labels) = lattice_rows(r, gens);
                    Inner::Lattice { ech: echelon(&rows, r.rank()), labels }
                }
                Kind::Ext { .. } => return Err(Error::UnsupportedRing("nested extension".into())),
            },
        };
        Ok(Ideal { ring: r.clone(), gens: gens.to_vec(), inner })
    }

    pub fn contains(&self, f: &Elem) -> bool {
        match &self.inner {
            Inner::Int { d, .. } => divisible(int_of(f), d),
            Inner::Poly { gb } => gb.contains(&to_gp(&self.ring, f, 0, gb.order)),
            Inner::Lattice { ech, .. } => ech.contains(&ext_vec(f)),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one())
    }

    /// Cofactors c with f = Σ cᵢ·genᵢ, when f is a member.
    pub fn member(&self, f: &Elem) -> Option<Vec<Elem>> {
        let r = &self.ring;
        let out = match &self.inner {
            Inner::Int { d, bezout } => {
                let fv = int_of(f);
                if !divisible(fv.clone(), d) {
                    return None;
                }
                let q = if d.is_zero() { BigInt::zero() } else { fv / d };
                bezout.iter().map(|b| r.from_int(&(&q * b))).collect()
            }
            Inner::Poly { gb } => {
                let cs = gb.cofactors_of(&to_gp(r, f, 0, gb.order))?;
                cs[..self.gens.len()].iter().map(|c| from_gp(r, c, 0)).collect()
            }
            Inner::Lattice { ech, labels } => {
                let c = ech.solve(&ext_vec(f))?;
                let (base, _, _) = r.ext_parts().unwrap();
                let y = r.var(base.nvars());
                let mut out = vec![r.zero(); self.gens.len()];
                for (ci, lab) in c.iter().zip(labels) {
                    if let Some((i, j)) = lab {
                        if !ci.is_zero() {
                            let t = r.mul(&r.from_int(ci), &r.pow(&y, *j as u64));
                            out[*i] = r.add(&out[*i], &t);
                        }
                    }
                }
                out
            }
        };
        debug_assert!(r.dot(&out, &self.gens) == *f, "membership cofactors do not re-evaluate");
        Some(out)
    }
}

fn divisible(f: BigInt, d: &BigInt) -> bool {
    if d.is_zero() {
        f.is_zero()
    } else {
        (f % d).is_zero()
    }
}

/// f ∈ ⟨gens⟩ with cofactors.
pub fn ideal_member(r: &Ring, f: &Elem, gens: &[Elem]) -> Result<Option<Vec<Elem>>> {
    Ok(Ideal::new(r, gens)?.member(f))
}

/// Decides f ∈ √⟨gens⟩ without producing a witness.
pub fn in_radical(r: &Ring, f: &Elem, gens: &[Elem]) -> Result<bool> {
    match &r.kind {
        Kind::Z | Kind::Zmod(_) => {
            let d = int_d(r, gens);
            Ok(least_power_divisible(&int_of(f), &d).is_some())
        }
        Kind::Ext { base, .. } if !matches!(base.kind, Kind::Poly { .. }) => {
            let sat = lattice_saturate(r, gens, f)?;
            Ok(Ideal::untracked(r, &sat)?.is_unit())
        }
        _ => {
            let (field, n) = model(r).unwrap();
            let order = Order::Grevlex;
            let mut gps: Vec<GPoly> = gens.iter().map(|g| to_gp(r, g, 1, order)).collect();
            if let Some(m) = ext_modulus_gp(r, 1, order) {
                gps.push(m);
            }
            gps.push(rabinowitsch(r, f, n + 1, order));
            let gb = buchberger::groebner(&field, n + 1, &gps, order, false, caps())?;
            Ok(gb.is_unit())
        }
    }
}

fn int_d(r: &Ring, gens: &[Elem]) -> BigInt {
    let xs: Vec<BigInt> = gens.iter().map(int_of).collect();
    let (d, _) = ext_gcd_many(&xs);
    match r.modulus() {
        Some(n) => d.gcd(n),
        None => d,
    }
}

/// Some((n, cofactors)) with fⁿ = Σ cofactorsᵢ·genᵢ and n ≥ 1 minimal, found by
/// doubling then bisection; None iff f ∉ √⟨gens⟩.
pub fn radical_member(r: &Ring, f: &Elem, gens: &[Elem]) -> Result<Option<(u32, Vec<Elem>)>> {
    if !in_radical(r, f, gens)? {
        return Ok(None);
    }
    let ideal = Ideal::new(r, gens)?;
    let mut hi = 1u32;
    while !ideal.contains(&r.pow(f, hi as u64)) {
        if hi > 1 << 16 {
            return Err(Error::ResourceExhausted("radical exponent beyond 2^16".into()));
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // fails (or 0)
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ideal.contains(&r.pow(f, mid as u64)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cof = ideal.member(&r.pow(f, hi as u64)).expect("member by search");
    Ok(Some((hi, cof)))
}

/// Generators of ⟨gens⟩ : g^∞.
pub fn saturate(r: &Ring, gens: &[Elem], g: &Elem) -> Result<Vec<Elem>> {
    match &r.kind {
        Kind::Z | Kind::Zmod(_) => {
            let d = int_d(r, gens);
            let h = strip_shared(&d, &int_of(g));
            Ok(vec![r.from_int(&h)])
        }
        Kind::Ext { base, .. } if !matches!(base.kind, Kind::Poly { .. }) => lattice_saturate(r, gens, g),
        _ => {
            if r.is_zero(g) {
                return Ok(vec![r.one()]);
            }
            let (field, n) = model(r).unwrap();
            let order = Order::Elim(1);
            let mut gps: Vec<GPoly> = gens.iter().map(|x| to_gp(r, x, 1, order)).collect();
            if let Some(m) = ext_modulus_gp(r, 1, order) {
                gps.push(m);
            }
            gps.push(rabinowitsch(r, g, n + 1, order));
            let gb = buchberger::groebner(&field, n + 1, &gps, order, false, caps())?;
            let mut out: Vec<Elem> = Vec::new();
            for b in &gb.basis {
                if b.terms.iter().all(|(m, _)| m[0] == 0) {
                    let e = from_gp(r, b, 1);
                    if !r.is_zero(&e) && !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            if out.is_empty() {
                out.push(r.zero());
            }
            Ok(out)
        }
    }
}

/// Extension of ℤ or ℤ/n: iterate the lattice colon ideal I : g until stable.
fn lattice_saturate(r: &Ring, gens: &[Elem], g: &Elem) -> Result<Vec<Elem>> {
    let mut cur = basis_elems(r, gens);
    for _ in 0..256 {
        let next = lattice_colon(r, &cur, g);
        if same_lattice(r, &cur, &next) {
            return Ok(next);
        }
        cur = next;
    }
    Err(Error::ResourceExhausted("lattice saturation did not stabilise".into()))
}

fn basis_elems(r: &Ring, gens: &[Elem]) -> Vec<Elem> {
    let (rows, _) = lattice_rows(r, gens);
    let e = echelon(&rows, r.rank());
    let mut out: Vec<Elem> = e.basis().iter().map(|v| vec_elem(r, v)).collect();
    if out.is_empty() {
        out.push(r.zero());
    }
    out
}

fn vec_elem(r: &Ring, v: &[BigInt]) -> Elem {
    let (base, _, _) = r.ext_parts().unwrap();
    Elem::Ext(v.iter().map(|x| base.from_int(x)).collect())
}

fn same_lattice(r: &Ring, a: &[Elem], b: &[Elem]) -> bool {
    let (ra, _) = lattice_rows(r, a);
    let (rb, _) = lattice_rows(r, b);
    let ea = echelon(&ra, r.rank());
    let eb = echelon(&rb, r.rank());
    ea.basis() == eb.basis()
}

fn lattice_colon(r: &Ring, gens: &[Elem], g: &Elem) -> Vec<Elem> {
    let d = r.rank();
    let (rows, _) = lattice_rows(r, gens);
    let lat = echelon(&rows, d);
    let (base, _, _) = r.ext_parts().unwrap();
    let y = r.var(base.nvars());
    let mut stack: Vec<Vec<BigInt>> = Vec::new();
    let mut cur = g.clone();
    for _ in 0..d {
        stack.push(ext_vec(&cur));
        cur = r.mul(&cur, &y);
    }
    stack.extend(lat.basis().iter().cloned());
    let e = echelon(&stack, d);
    let mut out: Vec<Elem> = Vec::new();
    for k in e.kernel() {
        let v: Vec<BigInt> = k[..d].to_vec();
        out.push(vec_elem(r, &v));
    }
    basis_elems(r, &out)
}

/// A generator h of a saturation with gᵉ·h = Σ cofactorsᵢ·genᵢ.
#[derive(Clone, Debug)]
pub struct SatGen {
    pub elem: Elem,
    pub exp: u32,
    pub cofactors: Vec<Elem>,
}

/// Saturation with, for each returned generator, the exponent and cofactors
/// witnessing its membership.
pub fn saturate_tracked(r: &Ring, gens: &[Elem], g: &Elem) -> Result<Vec<SatGen>> {
    let hs = saturate(r, gens, g)?;
    let ideal = Ideal::new(r, gens)?;
    let mut out = Vec::new();
    for h in hs {
        let mut cur = h.clone();
        let mut found = None;
        for e in 0..=4096u32 {
            if let Some(c) = ideal.member(&cur) {
                found = Some((e, c));
                break;
            }
            cur = r.mul(&cur, g);
        }
        let (exp, cofactors) =
            found.ok_or_else(|| Error::ResourceExhausted("saturation exponent beyond 4096".into()))?;
        out.push(SatGen { elem: h, exp, cofactors });
    }
    Ok(out)
}

/// Mutual membership of two generator lists.
pub fn same_ideal(r: &Ring, a: &[Elem], b: &[Elem]) -> Result<bool> {
    let ia = Ideal::untracked(r, a)?;
    let ib = Ideal::untracked(r, b)?;
    Ok(b.iter().all(|x| ia.contains(x)) && a.iter().all(|x| ib.contains(x)))
}

/// Reduced Gröbner basis of a polynomial ideal, as ring elements.
pub fn groebner_basis(r: &Ring, gens: &[Elem], order: Order) -> Result<Vec<Elem>> {
    let (field, n) = model(r).ok_or_else(|| Error::UnsupportedRing(format!("{r} has no polynomial model")))?;
    if !matches!(r.kind, Kind::Poly { .. }) {
        return Err(Error::UnsupportedRing("Gröbner bases are offered for polynomial rings".into()));
    }
    let gps: Vec<GPoly> = gens.iter().map(|g| to_gp(r, g, 0, order)).collect();
    let gb = buchberger::groebner(&field, n, &gps, order, false, caps())?;
    Ok(gb.basis.iter().map(|b| from_gp(r, b, 0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_membership_examples() {
        let r = Ring::poly(Field::Q, &["X", "Y"]);
        let c = ideal_member(&r, &r.parse("X*Y").unwrap(), &[r.parse("X").unwrap()]).unwrap().unwrap();
        assert_eq!(c, vec![r.parse("Y").unwrap()]);
        let z = Ring::integers();
        assert!(ideal_member(&z, &z.from_i64(7), &[z.from_i64(4), z.from_i64(6)]).unwrap().is_none());
        let qx = Ring::poly(Field::Q, &["X"]);
        assert!(ideal_member(&qx, &qx.one(), &[qx.parse("X").unwrap()]).unwrap().is_none());
    }

    #[test]
    fn spec_radical_examples() {
        let qx = Ring::poly(Field::Q, &["X"]);
        let (n, _) = radical_member(&qx, &qx.parse("X").unwrap(), &[qx.parse("X^2").unwrap()]).unwrap().unwrap();
        assert_eq!(n, 2);
        let z = Ring::integers();
        let (n, c) = radical_member(&z, &z.from_i64(6), &[z.from_i64(12)]).unwrap().unwrap();
        assert_eq!((n, c), (2, vec![z.from_i64(3)]));
        let r = Ring::poly(Field::Q, &["X", "Y"]);
        let gens = r.parse_all(&["X", "Y^2"]).unwrap();
        let f = r.parse("X+Y").unwrap();
        let (n, c) = radical_member(&r, &f, &gens).unwrap().unwrap();
        assert_eq!(n, 2);
        assert_eq!(r.dot(&c, &gens), r.pow(&f, 2));
    }

    #[test]
    fn spec_saturation_examples() {
        let r = Ring::poly(Field::Q, &["X", "Y"]);
        let s = saturate(&r, &[r.parse("X*Y").unwrap()], &r.parse("X").unwrap()).unwrap();
        assert!(same_ideal(&r, &s, &[r.parse("Y").unwrap()]).unwrap());
        let z = Ring::integers();
        assert_eq!(saturate(&z, &[z.from_i64(24)], &z.from_i64(2)).unwrap(), vec![z.from_i64(3)]);
        let gens = r.parse_all(&["X^2 - Y", "X*Y"]).unwrap();
        let s = saturate(&r, &gens, &r.one()).unwrap();
        assert!(same_ideal(&r, &s, &gens).unwrap());
        for sg in saturate_tracked(&r, &[r.parse("X*Y").unwrap()], &r.parse("X").unwrap()).unwrap() {
            let lhs = r.mul(&r.pow(&r.parse("X").unwrap(), sg.exp as u64), &sg.elem);
            assert_eq!(lhs, r.dot(&sg.cofactors, &[r.parse("X*Y").unwrap()]));
        }
    }

    #[test]
    fn extension_oracles() {
        let zi = Ring::extension(&Ring::integers(), "Y", "Y^2+1").unwrap();
        let gens = vec![zi.parse("Y - 1").unwrap()];
        // (Y−1)(−Y−1) = 2.
        let c = ideal_member(&zi, &zi.from_i64(2), &gens).unwrap().unwrap();
        assert_eq!(zi.dot(&c, &gens), zi.from_i64(2));
        assert!(ideal_member(&zi, &zi.one(), &gens).unwrap().is_none());
        assert!(in_radical(&zi, &zi.from_i64(2), &gens).unwrap());
        assert!(!in_radical(&zi, &zi.from_i64(3), &gens).unwrap());
        let s = saturate(&zi, &[zi.from_i64(6)], &zi.from_i64(2)).unwrap();
        assert!(same_ideal(&zi, &s, &[zi.from_i64(3)]).unwrap());
        let t = Ring::poly(Field::Q, &["t"]);
        let s = Ring::extension(&t, "Y", "Y^2 - t").unwrap();
        let gens = vec![s.parse("t").unwrap()];
        assert!(in_radical(&s, &s.parse("Y").unwrap(), &gens).unwrap());
        let (n, c) = radical_member(&s, &s.parse("Y").unwrap(), &gens).unwrap().unwrap();
        assert_eq!(n, 2);
        assert_eq!(s.dot(&c, &gens), s.parse("t").unwrap());
    }
}

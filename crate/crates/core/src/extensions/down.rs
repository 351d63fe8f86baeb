//! Going Down: monic gcds of annihilators over an integrally closed base, the
//! step that collapses (J₀ ; U₀) • (v₁ ; 1) in S, and the flat variant.

use serde_json::{json, Value};

use super::basepoly::{BasePoly, BasePolyRing};
use super::upoly::{self, UPoly};
use super::base_of;
use crate::chain::{char_poly, elems_to_json, eval_univariate, multiplication_matrix, IdealisticPrime};
use crate::collapse::in_saturated_ideal;
use crate::error::{Error, Result};
use crate::groebner::ideal_member;
use crate::ring::{Elem, Kind, Ring};

/// The base must be ℤ or K[t]: integrally closed, with computable gcds.
fn check_base(r: &Ring) -> Result<()> {
    match &r.kind {
        Kind::Z => Ok(()),
        Kind::Poly { vars, .. } if vars.len() == 1 => Ok(()),
        _ => Err(Error::PreconditionBreach(format!("Going Down needs base ℤ or K[t], got {}", r.name()))),
    }
}

fn all_in_ideal(r: &Ring, p: &[Elem], gens: &[Elem]) -> Result<Option<usize>> {
    for (i, c) in p.iter().enumerate() {
        if ideal_member(r, c, gens)?.is_none() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Given monic M with M(x) = 0 and non-leading coefficients in I, and P with
/// P(x) = 0, the monic gcd Q of M and P over Frac(R) has coefficients in R,
/// satisfies Q(x) = 0 and has its non-leading coefficients in √I. Every
/// conclusion is checked; over ℤ and K[t] they hold in I itself for the
/// inputs produced by `going_down_step`.
pub fn gd_monic_gcd(s: &Ring, gens: &[Elem], x: &Elem, m: &[Elem], p: &[Elem]) -> Result<UPoly> {
    let base = base_of(s)?;
    check_base(base)?;
    let m = upoly::trim(base, m.to_vec());
    let p = upoly::trim(base, p.to_vec());
    if !upoly::is_monic(base, &m) {
        return Err(Error::PreconditionBreach("M is not monic".into()));
    }
    if let Some(i) = all_in_ideal(base, &m[..m.len() - 1], gens)? {
        return Err(Error::CoefficientEscapesIdeal(format!("coefficient {i} of M")));
    }
    if !s.is_zero(&eval_univariate(s, &m, x)) {
        return Err(Error::NotAnnihilator("M(x) ≠ 0".into()));
    }
    if !s.is_zero(&eval_univariate(s, &p, x)) {
        return Err(Error::NotAnnihilator("P(x) ≠ 0".into()));
    }
    let q = upoly::monic_gcd_over_fractions(base, &m, &p)?;
    if !s.is_zero(&eval_univariate(s, &q, x)) {
        return Err(Error::NotAnnihilator(format!("gcd {} does not vanish at x", upoly::show(base, &q, "X"))));
    }
    if let Some(i) = all_in_ideal(base, &q[..q.len() - 1], gens)? {
        return Err(Error::CoefficientEscapesIdeal(format!("coefficient {i} of the gcd")));
    }
    for (what, f) in [("M", &m), ("P", &p)] {
        if !upoly::divrem_monic(base, f, &q).1.is_empty() {
            return Err(Error::InternalMismatch(format!("the gcd does not divide {what}")));
        }
    }
    Ok(q)
}

/// Result of the Going Down step: v₁^k = Σ cofactors·gens(I₀) in S, read off
/// B(v₁) = 0 with B monic of degree k and non-leading coefficients in I₀.
#[derive(Clone, Debug)]
pub struct GoingDownStep {
    /// (deg A, deg B) before each round; one entry when the first case holds.
    pub rounds: Vec<(usize, usize)>,
    pub a: UPoly,
    pub b: UPoly,
    pub k: u64,
    pub cofactors: Vec<Elem>,
}

impl GoingDownStep {
    pub fn verify(&self, s: &Ring, p0: &IdealisticPrime, v1: &Elem) -> bool {
        let gens: Vec<Elem> = p0.j.iter().map(|g| s.embed(g)).collect();
        self.cofactors.len() == gens.len() && s.pow(v1, self.k) == s.dot(&self.cofactors, &gens)
    }

    pub fn to_json(&self, s: &Ring) -> Value {
        let base = base_of(s).expect("extension");
        json!({
            "rounds": self.rounds,
            "A": upoly::show(base, &self.a, "X"),
            "B": upoly::show(base, &self.b, "X"),
            "k": self.k,
            "cofactors": elems_to_json(s, &self.cofactors),
        })
    }
}

/// (J₀ ; U₀) saturated in R = ℤ or K[t], u₀ ∈ M(U₀), v₁ ∈ S and
/// j₀ = Σ iₖbₖ (iₖ ∈ I₀, bₖ ∈ S) with u₀v₁ = j₀: returns the membership
/// v₁^k ∈ I₀·S, so (J₀ ; U₀) • (v₁ ; 1) collapses in S.
pub fn going_down_step(s: &Ring, p0: &IdealisticPrime, u0: &Elem, v1: &Elem, decomposition: &[(Elem, Elem)]) -> Result<GoingDownStep> {
    going_down_step_with(s, p0, u0, v1, decomposition, None)
}

/// As `going_down_step`, starting from given annihilators: A monic with
/// A(j₀) = 0 and non-leading coefficients in I₀, B monic with B(v₁) = 0.
/// Without them both are characteristic polynomials, and the first case
/// u₀^{deg B}·B(X) = A(u₀X) holds at once.
pub fn going_down_step_with(
    s: &Ring,
    p0: &IdealisticPrime,
    u0: &Elem,
    v1: &Elem,
    decomposition: &[(Elem, Elem)],
    annihilators: Option<(UPoly, UPoly)>,
) -> Result<GoingDownStep> {
    let base = base_of(s)?;
    check_base(base)?;
    let gens: Vec<Elem> = if p0.j.is_empty() { vec![base.zero()] } else { p0.j.clone() };
    for (i, _) in decomposition {
        if ideal_member(base, i, &gens)?.is_none() {
            return Err(Error::MalformedWitness(format!("{} is not in I₀", base.show(i))));
        }
    }
    let j0 = decomposition.iter().fold(s.zero(), |acc, (i, b)| s.add(&acc, &s.mul(&s.embed(i), b)));
    if s.mul(&s.embed(u0), v1) != j0 {
        return Err(Error::NotACollapse("u₀·v₁ ≠ j₀".into()));
    }
    let d = s.rank();
    let mut mat = vec![vec![base.zero(); d]; d];
    for (i, b) in decomposition {
        for (row, mrow) in mat.iter_mut().zip(multiplication_matrix(s, b)) {
            for (e, v) in row.iter_mut().zip(&mrow) {
                *e = base.add(e, &base.mul(i, v));
            }
        }
    }
    let (mut a, mut b) = match annihilators {
        Some((a, b)) => {
            let (a, b) = (upoly::trim(base, a), upoly::trim(base, b));
            if !upoly::is_monic(base, &a) || !upoly::is_monic(base, &b) {
                return Err(Error::PreconditionBreach("annihilators must be monic".into()));
            }
            if let Some(i) = all_in_ideal(base, &a[..a.len() - 1], &gens)? {
                return Err(Error::CoefficientEscapesIdeal(format!("coefficient {i} of A")));
            }
            if !s.is_zero(&eval_univariate(s, &a, &j0)) || !s.is_zero(&eval_univariate(s, &b, v1)) {
                return Err(Error::NotAnnihilator("A(j₀) = 0 and B(v₁) = 0 are required".into()));
            }
            (a, b)
        }
        None => (char_poly(base, &mat), char_poly(base, &multiplication_matrix(s, v1))),
    };
    let budget = a.len() + b.len();
    let mut rounds = Vec::new();
    loop {
        let (ka, kb) = (a.len() - 1, b.len() - 1);
        rounds.push((ka, kb));
        let lhs = upoly::scale(base, &b, &base.pow(u0, kb as u64));
        let rhs = upoly::scale_var(base, &a, u0);
        if ka == kb && lhs == rhs {
            break;
        }
        if rounds.len() > budget {
            return Err(Error::InternalMismatch("Going Down rounds do not terminate".into()));
        }
        // B₁ divides B and A(u₀X); A₁ = u₀^{d₁}B₁(X/u₀) divides A and u₀^d B(X/u₀).
        let b1 = gd_monic_gcd(s, &[base.one()], v1, &b, &rhs)?;
        let a1 = upoly::homogenize(base, &b1, u0);
        let a1_direct = gd_monic_gcd(s, &gens, &j0, &a, &upoly::homogenize(base, &b, u0))?;
        if a1 != a1_direct {
            return Err(Error::InternalMismatch("the two gcds of the second case differ".into()));
        }
        if a1.len() + b1.len() >= a.len() + b.len() {
            return Err(Error::InternalMismatch("deg A + deg B did not decrease".into()));
        }
        a = a1;
        b = b1;
    }
    // u₀^{k−i}·bᵢ = aᵢ ∈ I₀, hence bᵢ ∈ I₀ by saturation.
    let k = b.len() - 1;
    let mut cofactors = vec![s.zero(); gens.len()];
    for (i, bi) in b[..k].iter().enumerate() {
        let cof = ideal_member(base, bi, &gens)?.ok_or_else(|| {
            Error::PreconditionBreach(format!("coefficient {} is outside I₀, so (J₀ ; U₀) is not saturated", base.show(bi)))
        })?;
        let w = s.neg(&s.pow(v1, i as u64));
        for (acc, c) in cofactors.iter_mut().zip(&cof) {
            *acc = s.add(acc, &s.mul(&w, &s.embed(c)));
        }
    }
    if p0.j.is_empty() {
        cofactors.clear();
    }
    let out = GoingDownStep { rounds, a, b, k: k as u64, cofactors };
    if !out.verify(s, p0, v1) && !(p0.j.is_empty() && s.is_zero(&s.pow(v1, k as u64))) {
        return Err(Error::InternalMismatch("Going Down membership does not verify".into()));
    }
    Ok(out)
}

/// Flat Going Down over coordinates: for the relation u₀·v₁ + Σ iₖbₖ = 0 in a
/// free R-module, W = M·B′ with B′ the support of the basis and M the
/// coordinate matrix, (u₀, i)·M = 0, and every m₀ℓ (coordinate of v₁) lies in
/// the saturation of I₀.
#[derive(Clone, Debug)]
pub struct FlatCollapse {
    /// Labels of the basis elements B′.
    pub basis: Vec<String>,
    /// Row 0 is v₁, row k is bₖ, restricted to B′.
    pub m: Vec<Vec<Elem>>,
    /// Cofactors of m₀ℓ over J₀ when it is a literal member.
    pub membership: Vec<Option<Vec<Elem>>>,
}

impl FlatCollapse {
    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "basis": self.basis,
            "M": self.m.iter().map(|row| elems_to_json(r, row)).collect::<Vec<_>>(),
            "membership": self.membership.iter().map(|c| c.as_ref().map(|c| elems_to_json(r, c))).collect::<Vec<_>>(),
        })
    }
}

pub fn going_down_flat(
    r: &Ring,
    p0: &IdealisticPrime,
    u0: &Elem,
    is: &[Elem],
    rows: &[Vec<Elem>],
    labels: &[String],
) -> Result<FlatCollapse> {
    if rows.len() != is.len() + 1 || rows.iter().any(|v| v.len() != labels.len()) {
        return Err(Error::ShapeMismatch("one coordinate row per element, one column per basis element".into()));
    }
    let coeffs: Vec<&Elem> = std::iter::once(u0).chain(is).collect();
    let support: Vec<usize> = (0..labels.len()).filter(|&l| rows.iter().any(|v| !r.is_zero(&v[l]))).collect();
    for &l in &support {
        let s = coeffs.iter().zip(rows).fold(r.zero(), |acc, (c, v)| r.add(&acc, &r.mul(c, &v[l])));
        if !r.is_zero(&s) {
            return Err(Error::NotARelation(format!("coordinate {} of u₀v₁ + Σ iₖbₖ is {}", labels[l], r.show(&s))));
        }
    }
    let gens: Vec<Elem> = if p0.j.is_empty() { vec![r.zero()] } else { p0.j.clone() };
    let mut membership = Vec::with_capacity(support.len());
    for &l in &support {
        let m0 = &rows[0][l];
        if !in_saturated_ideal(r, p0, m0)? {
            return Err(Error::SaturationRefutes(format!("coordinate {} of v₁ is {}", labels[l], r.show(m0))));
        }
        membership.push(ideal_member(r, m0, &gens)?);
    }
    Ok(FlatCollapse {
        basis: support.iter().map(|&l| labels[l].clone()).collect(),
        m: rows.iter().map(|v| support.iter().map(|&l| v[l].clone()).collect()).collect(),
        membership,
    })
}

/// Flat Going Down for R ⊆ R[X₁..X_n] with the monomial basis.
pub fn going_down_flat_poly(
    pr: &BasePolyRing,
    p0: &IdealisticPrime,
    u0: &Elem,
    v1: &BasePoly,
    rel: &[(Elem, BasePoly)],
) -> Result<FlatCollapse> {
    let mut monos: Vec<Vec<u32>> = v1.terms.keys().cloned().collect();
    for (_, b) in rel {
        monos.extend(b.terms.keys().cloned());
    }
    monos.sort();
    monos.dedup();
    let labels: Vec<String> = monos.iter().map(|m| pr.show_mono(m)).collect();
    let row = |p: &BasePoly| -> Vec<Elem> { monos.iter().map(|m| pr.coeff(p, m)).collect() };
    let mut rows = vec![row(v1)];
    rows.extend(rel.iter().map(|(_, b)| row(b)));
    let is: Vec<Elem> = rel.iter().map(|(i, _)| i.clone()).collect();
    going_down_flat(&pr.base, p0, u0, &is, &rows, &labels)
}

/// Flat Going Down for R ⊆ R[Y]/(f) with the power basis.
pub fn going_down_flat_ext(s: &Ring, p0: &IdealisticPrime, u0: &Elem, v1: &Elem, rel: &[(Elem, Elem)]) -> Result<FlatCollapse> {
    let (base, var, tail) = s.ext_parts().ok_or_else(|| Error::UnsupportedRing("not an extension".into()))?;
    let labels: Vec<String> = (0..tail.len())
        .map(|k| match k {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        })
        .collect();
    let mut rows = vec![v1.coords().to_vec()];
    rows.extend(rel.iter().map(|(_, b)| b.coords().to_vec()));
    let is: Vec<Elem> = rel.iter().map(|(i, _)| i.clone()).collect();
    going_down_flat(base, p0, u0, &is, &rows, &labels)
}

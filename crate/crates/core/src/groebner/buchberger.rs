//! Buchberger's algorithm with the sugar strategy and optional cofactor
//! tracking, over ℚ or 𝔽_p.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{grevlex, lex, Field};

/// Monomial order for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Grevlex,
    Lex,
    /// Block order eliminating the first k variables (grevlex inside each block).
    Elim(usize),
}

impl Order {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Order::Grevlex => grevlex(a, b),
            Order::Lex => lex(a, b),
            Order::Elim(k) => grevlex(&a[..*k], &b[..*k]).then_with(|| grevlex(&a[*k..], &b[*k..])),
        }
    }
}

pub type Term = (Vec<u32>, BigRational);

/// Polynomial as terms sorted by decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GPoly {
    pub terms: Vec<Term>,
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_quo(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl GPoly {
    pub fn zero() -> GPoly {
        GPoly::default()
    }

    pub fn from_terms(mut terms: Vec<Term>, order: Order, field: &Field) -> GPoly {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, field.norm(c))),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        GPoly { terms: out }
    }

    pub fn constant(n: usize, c: BigRational) -> GPoly {
        if c.is_zero() {
            GPoly::zero()
        } else {
            GPoly { terms: vec![(vec![0; n], c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigRational {
        &self.terms[0].1
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| deg(m)).max().unwrap_or(0)
    }

    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// self + c·x^m·o, merging sorted term lists.
    pub fn add_scaled(&self, c: &BigRational, m: &[u32], o: &GPoly, order: Order, field: &Field) -> GPoly {
        if c.is_zero() || o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| (mono_mul(&o.terms[k].0, m), field.mul(&o.terms[k].1, c));
        let mut pending: Option<Term> = if o.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = (j < o.terms.len()).then(|| shifted(j));
                    }
                    Ordering::Equal => {
                        let s = field.add(&a.1, &b.1);
                        if !s.is_zero() {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = (j < o.terms.len()).then(|| shifted(j));
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = (j < o.terms.len()).then(|| shifted(j));
                }
                (None, None) => unreachable!(),
            }
        }
        GPoly { terms: out }
    }

    pub fn add(&self, o: &GPoly, order: Order, field: &Field, n: usize) -> GPoly {
        self.add_scaled(&BigRational::one(), &vec![0; n], o, order, field)
    }

    pub fn scale(&self, c: &BigRational, field: &Field) -> GPoly {
        if c.is_zero() {
            return GPoly::zero();
        }
        GPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), field.mul(v, c))).collect() }
    }

    pub fn mul(&self, o: &GPoly, order: Order, field: &Field) -> GPoly {
        let mut acc = GPoly::zero();
        for (m, c) in &o.terms {
            acc = acc.add_scaled(c, m, self, order, field);
        }
        acc
    }
}

/// Reduced Gröbner basis, optionally with cofactors expressing each basis
/// element in the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub order: Order,
    pub field: Field,
    pub basis: Vec<GPoly>,
    pub cofactors: Option<Vec<Vec<GPoly>>>,
    pub ngens: usize,
}

/// Caps guarding Buchberger runs.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 40, max_pairs: 200_000 }
    }
}

struct Pair {
    sugar: u32,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

struct Builder<'a> {
    n: usize,
    order: Order,
    field: &'a Field,
    polys: Vec<GPoly>,
    sugars: Vec<u32>,
    cofs: Option<Vec<Vec<GPoly>>>,
    ngens: usize,
    alive: Vec<bool>,
}

impl Builder<'_> {
    /// Fully reduces p by the live basis; returns remainder and its cofactors.
    fn reduce(&self, p: &GPoly, mut cof: Option<Vec<GPoly>>) -> (GPoly, Option<Vec<GPoly>>) {
        let mut p = p.clone();
        let mut rem: Vec<Term> = Vec::new();
        'outer: while !p.is_zero() {
            let (lm, lc) = (p.terms[0].0.clone(), p.terms[0].1.clone());
            for k in 0..self.polys.len() {
                if !self.alive[k] {
                    continue;
                }
                let g = &self.polys[k];
                if divides(g.lm(), &lm) {
                    let q = mono_quo(g.lm(), &lm);
                    let c = self.field.neg(&self.field.div(&lc, g.lc()));
                    p = p.add_scaled(&c, &q, g, self.order, self.field);
                    if let (Some(cf), Some(gc)) = (cof.as_mut(), self.cofs.as_ref()) {
                        for (a, b) in cf.iter_mut().zip(&gc[k]) {
                            *a = a.add_scaled(&c, &q, b, self.order, self.field);
                        }
                    }
                    continue 'outer;
                }
            }
            rem.push(p.terms.remove(0));
        }
        (GPoly { terms: rem }, cof)
    }

    fn push(&mut self, p: GPoly, sugar: u32, cof: Option<Vec<GPoly>>) -> usize {
        let inv = self.field.inv(p.lc());
        let p = p.scale(&inv, self.field);
        if let (Some(cs), Some(c)) = (self.cofs.as_mut(), cof) {
            cs.push(c.iter().map(|x| x.scale(&inv, self.field)).collect());
        }
        self.polys.push(p);
        self.sugars.push(sugar);
        self.alive.push(true);
        self.polys.len() - 1
    }
}

pub fn groebner(field: &Field, nvars: usize, gens: &[GPoly], order: Order, track: bool, caps: Caps) -> Result<GroebnerBasis> {
    let ngens = gens.len();
    let mut b = Builder {
        n: nvars,
        order,
        field,
        polys: Vec::new(),
        sugars: Vec::new(),
        cofs: track.then(Vec::new),
        ngens,
        alive: Vec::new(),
    };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut processed = 0usize;

    let mut queue: Vec<(GPoly, u32, Option<Vec<GPoly>>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let cof = track.then(|| {
            let mut c = vec![GPoly::zero(); ngens];
            c[i] = GPoly::constant(nvars, BigRational::one());
            c
        });
        queue.push((g.clone(), g.degree(), cof));
    }

    loop {
        for (p, sugar, cof) in queue.drain(..) {
            let (r, rc) = b.reduce(&p, cof);
            if r.is_zero() {
                continue;
            }
            if deg(r.lm()) > caps.max_degree {
                return Err(Error::ResourceExhausted(format!(
                    "Gröbner degree {} exceeds cap {}",
                    deg(r.lm()),
                    caps.max_degree
                )));
            }
            let k = b.push(r, sugar, rc);
            if b.polys[k].is_unit_constant() {
                // The ideal is the whole ring; keep only this element.
                let cof = b.cofs.as_ref().map(|c| c[k].clone());
                let gb = GroebnerBasis {
                    nvars,
                    order,
                    field: field.clone(),
                    basis: vec![b.polys[k].clone()],
                    cofactors: cof.map(|c| vec![c]),
                    ngens,
                };
                return Ok(gb);
            }
            for i in 0..k {
                if !b.alive[i] {
                    continue;
                }
                let (li, lk) = (b.polys[i].lm(), b.polys[k].lm());
                let lcm = mono_lcm(li, lk);
                let s = (b.sugars[i] + deg(&lcm) - deg(li)).max(b.sugars[k] + deg(&lcm) - deg(lk));
                pairs.push(Pair { sugar: s, lcm, i, j: k });
            }
        }
        if pairs.is_empty() {
            break;
        }
        let idx = (0..pairs.len())
            .min_by(|&x, &y| {
                pairs[x]
                    .sugar
                    .cmp(&pairs[y].sugar)
                    .then_with(|| order.cmp(&pairs[x].lcm, &pairs[y].lcm))
                    .then_with(|| (pairs[x].i, pairs[x].j).cmp(&(pairs[y].i, pairs[y].j)))
            })
            .unwrap();
        let pr = pairs.swap_remove(idx);
        done.insert((pr.i, pr.j));
        processed += 1;
        if processed > caps.max_pairs {
            return Err(Error::ResourceExhausted(format!("more than {} S-pairs", caps.max_pairs)));
        }
        let (gi, gj) = (&b.polys[pr.i], &b.polys[pr.j]);
        // Product criterion.
        if gi.lm().iter().zip(gj.lm()).all(|(a, c)| *a == 0 || *c == 0) {
            continue;
        }
        // Chain criterion.
        let chain = (0..b.polys.len()).any(|k| {
            k != pr.i
                && k != pr.j
                && b.alive[k]
                && divides(b.polys[k].lm(), &pr.lcm)
                && done.contains(&(pr.i.min(k), pr.i.max(k)))
                && done.contains(&(pr.j.min(k), pr.j.max(k)))
        });
        if chain {
            continue;
        }
        if deg(&pr.lcm) > caps.max_degree {
            return Err(Error::ResourceExhausted(format!(
                "S-pair degree {} exceeds cap {}",
                deg(&pr.lcm),
                caps.max_degree
            )));
        }
        let qi = mono_quo(gi.lm(), &pr.lcm);
        let qj = mono_quo(gj.lm(), &pr.lcm);
        let minus_one = field.neg(&BigRational::one());
        let s = GPoly::zero()
            .add_scaled(&BigRational::one(), &qi, gi, order, field)
            .add_scaled(&minus_one, &qj, gj, order, field);
        let cof = b.cofs.as_ref().map(|cs| {
            cs[pr.i]
                .iter()
                .zip(&cs[pr.j])
                .map(|(a, c)| {
                    GPoly::zero()
                        .add_scaled(&BigRational::one(), &qi, a, order, field)
                        .add_scaled(&minus_one, &qj, c, order, field)
                })
                .collect()
        });
        queue.push((s, pr.sugar, cof));
    }
    finish(b)
}

fn finish(b: Builder<'_>) -> Result<GroebnerBasis> {
    let alive: Vec<usize> = (0..b.polys.len()).filter(|&i| b.alive[i]).collect();
    // Minimalise: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<usize> = Vec::new();
    for &i in &alive {
        let li = b.polys[i].lm();
        let redundant = alive.iter().any(|&j| {
            j != i && divides(b.polys[j].lm(), li) && (b.polys[j].lm() != li || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    // Tail-reduce each kept element against the others.
    let mut basis = Vec::new();
    let mut cofs: Option<Vec<Vec<GPoly>>> = b.cofs.as_ref().map(|_| Vec::new());
    let mut rb = Builder {
        n: b.n,
        order: b.order,
        field: b.field,
        polys: b.polys.clone(),
        sugars: b.sugars.clone(),
        cofs: b.cofs.clone(),
        ngens: b.ngens,
        alive: vec![false; b.polys.len()],
    };
    for &i in &keep {
        for &j in &keep {
            rb.alive[j] = j != i;
        }
        let p = &b.polys[i];
        let head = GPoly { terms: vec![p.terms[0].clone()] };
        let tail = GPoly { terms: p.terms[1..].to_vec() };
        let (r, rc) = rb.reduce(&tail, b.cofs.as_ref().map(|c| c[i].clone()));
        basis.push(head.add(&r, b.order, b.field, b.n));
        if let (Some(cs), Some(c)) = (cofs.as_mut(), rc) {
            cs.push(c);
        }
    }
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&x, &y| b.order.cmp(basis[x].lm(), basis[y].lm()));
    let basis2 = idx.iter().map(|&k| basis[k].clone()).collect();
    let cofs2 = cofs.map(|c| idx.iter().map(|&k| c[k].clone()).collect());
    Ok(GroebnerBasis { nvars: b.n, order: b.order, field: b.field.clone(), basis: basis2, cofactors: cofs2, ngens: b.ngens })
}

impl GroebnerBasis {
    /// Normal form with quotients: f = Σ qᵢ·basisᵢ + r.
    pub fn divide(&self, f: &GPoly) -> (Vec<GPoly>, GPoly) {
        let mut p = f.clone();
        let mut qs = vec![GPoly::zero(); self.basis.len()];
        let mut rem: Vec<Term> = Vec::new();
        'outer: while !p.is_zero() {
            let (lm, lc) = (p.terms[0].0.clone(), p.terms[0].1.clone());
            for (k, g) in self.basis.iter().enumerate() {
                if divides(g.lm(), &lm) {
                    let q = mono_quo(g.lm(), &lm);
                    let c = self.field.div(&lc, g.lc());
                    p = p.add_scaled(&self.field.neg(&c), &q, g, self.order, &self.field);
                    qs[k] = qs[k].add(&GPoly { terms: vec![(q, c)] }, self.order, &self.field, self.nvars);
                    continue 'outer;
                }
            }
            rem.push(p.terms.remove(0));
        }
        (qs, GPoly { terms: rem })
    }

    pub fn normal_form(&self, f: &GPoly) -> GPoly {
        self.divide(f).1
    }

    pub fn contains(&self, f: &GPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit_constant()
    }

    /// Cofactors over the original generators when f is in the ideal.
    pub fn cofactors_of(&self, f: &GPoly) -> Option<Vec<GPoly>> {
        let cs = self.cofactors.as_ref()?;
        let (qs, r) = self.divide(f);
        if !r.is_zero() {
            return None;
        }
        let mut out = vec![GPoly::zero(); self.ngens];
        for (q, c) in qs.iter().zip(cs) {
            if q.is_zero() {
                continue;
            }
            for (o, ci) in out.iter_mut().zip(c) {
                *o = o.add(&q.mul(ci, self.order, &self.field), self.order, &self.field, self.nvars);
            }
        }
        Some(out)
    }
}

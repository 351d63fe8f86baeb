//! Finitely presented distributive lattices given by entailment relations.
//!
//! Subsets of the generator set S are bitmasks. A sequent A ⊢ B with A ∩ B ≠ ∅
//! holds by reflexivity and monotonicity; the remaining pairs are disjoint and
//! indexed in base 3 (digit 1: in A, digit 2: in B). A full pair (A ∪ B = S)
//! holds iff it contains an axiom; any other pair holds iff both extensions by
//! its lowest missing generator hold, which is the cut rule.

mod boolean;
mod kr;

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::chain::reject_unknown;
use crate::error::{Error, Result};

pub use boolean::{boolean_envelope, spec_enumerate, SpecPoint};
pub use kr::{kr_embed, kr_lattice, kr_name, lattice_chain_collapses, lattice_dim_at_most, LatticeChain, LatticeDimReport};

/// Default cap on the number of generators.
pub const DEFAULT_CAP: usize = 14;
/// Hard cap: 3^16 table bits.
pub const MAX_CAP: usize = 16;

/// A ⊢ B over generator bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub lhs: u32,
    pub rhs: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub axioms: Vec<Sequent>,
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

impl Presentation {
    pub fn new(gens: Vec<String>, axioms: Vec<Sequent>) -> Result<Presentation> {
        let set: HashSet<&String> = gens.iter().collect();
        if set.len() != gens.len() || gens.iter().any(String::is_empty) {
            return Err(Error::Invalid("generator names must be distinct and nonempty".into()));
        }
        if gens.len() > MAX_CAP {
            return Err(Error::CapExceeded(format!("{} generators (hard cap {MAX_CAP})", gens.len())));
        }
        let full = if gens.is_empty() { 0 } else { u32::MAX >> (32 - gens.len()) };
        if axioms.iter().any(|s| (s.lhs | s.rhs) & !full != 0) {
            return Err(Error::Invalid("axiom mentions an unknown generator".into()));
        }
        Ok(Presentation { gens, axioms })
    }

    /// The chain with k ≥ 2 elements: generators a, b, … with a ⊢ b ⊢ ⋯.
    pub fn chain(k: usize) -> Presentation {
        assert!(k >= 2);
        let gens: Vec<String> = (0..k - 2).map(letter).collect();
        let axioms = (0..k.saturating_sub(3)).map(|i| Sequent { lhs: 1 << i, rhs: 1 << (i + 1) }).collect();
        Presentation { gens, axioms }
    }

    /// The free bounded distributive lattice on n generators.
    pub fn free(n: usize) -> Presentation {
        Presentation { gens: (0..n).map(letter).collect(), axioms: Vec::new() }
    }

    /// The one-element lattice: ⊢ with both sides empty.
    pub fn trivial() -> Presentation {
        Presentation { gens: Vec::new(), axioms: vec![Sequent { lhs: 0, rhs: 0 }] }
    }

    pub fn full_mask(&self) -> u32 {
        if self.gens.is_empty() {
            0
        } else {
            u32::MAX >> (32 - self.gens.len())
        }
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.gens.iter().position(|g| g == name).ok_or_else(|| Error::Invalid(format!("unknown generator {name:?}")))
    }

    pub fn mask_of(&self, names: &[&str]) -> Result<u32> {
        names.iter().try_fold(0u32, |m, n| Ok(m | 1 << self.index(n)?))
    }

    pub fn names(&self, mask: u32) -> Vec<String> {
        bits(mask).map(|i| self.gens[i].clone()).collect()
    }

    fn mask_from_json(&self, v: Option<&Value>) -> Result<u32> {
        let Some(v) = v else { return Ok(0) };
        let arr = v.as_array().ok_or_else(|| Error::Invalid("sequent sides are lists".into()))?;
        arr.iter().try_fold(0u32, |m, x| {
            let s = x.as_str().ok_or_else(|| Error::Invalid("generator names are strings".into()))?;
            Ok(m | 1 << self.index(s)?)
        })
    }

    pub fn from_json(v: &Value) -> Result<Presentation> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("presentation must be an object".into()))?;
        reject_unknown(obj, &["gens", "axioms"])?;
        let gens = obj
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("\"gens\" must be a list".into()))?
            .iter()
            .map(|g| g.as_str().map(str::to_string).ok_or_else(|| Error::Invalid("generator names are strings".into())))
            .collect::<Result<Vec<_>>>()?;
        let shell = Presentation::new(gens, Vec::new())?;
        let mut axioms = Vec::new();
        if let Some(ax) = obj.get("axioms") {
            for a in ax.as_array().ok_or_else(|| Error::Invalid("\"axioms\" must be a list".into()))? {
                let o = a.as_object().ok_or_else(|| Error::Invalid("axiom must be an object".into()))?;
                reject_unknown(o, &["lhs", "rhs"])?;
                axioms.push(Sequent { lhs: shell.mask_from_json(o.get("lhs"))?, rhs: shell.mask_from_json(o.get("rhs"))? });
            }
        }
        Presentation::new(shell.gens, axioms)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "gens": self.gens,
            "axioms": self.axioms.iter().map(|s| json!({"lhs": self.names(s.lhs), "rhs": self.names(s.rhs)})).collect::<Vec<_>>(),
        })
    }
}

fn letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// The saturated entailment relation of a presentation.
#[derive(Clone, Debug)]
pub struct ClosureTable {
    n: usize,
    full: u32,
    words: Vec<u64>,
    tern: Vec<u32>,
}

impl ClosureTable {
    fn bit(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    /// A ⊢ B.
    pub fn entails(&self, a: u32, b: u32) -> bool {
        if a & b != 0 {
            return true;
        }
        self.bit((self.tern[a as usize] + 2 * self.tern[b as usize]) as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// A ⊢ S∖A: the valuation with true set A is not a model.
    pub fn full_pair(&self, a: u32) -> bool {
        self.entails(a, self.full & !a)
    }
}

/// Least entailment relation containing the axioms: reflexive, monotone and
/// closed under cut.
pub fn close_entailment(p: &Presentation, cap: usize) -> Result<ClosureTable> {
    let n = p.gens.len();
    if n > cap.min(MAX_CAP) {
        return Err(Error::CapExceeded(format!("{n} generators exceed the cap {}", cap.min(MAX_CAP))));
    }
    let full = p.full_mask();
    let mut pow3 = vec![1u32; n + 1];
    for i in 1..=n {
        pow3[i] = pow3[i - 1] * 3;
    }
    let tern: Vec<u32> = (0..1u32 << n).map(|m| bits(m).map(|i| pow3[i]).sum()).collect();
    // full_hit[A]: the full pair (A, S∖A) contains an axiom.
    let mut full_hit = vec![false; 1 << n];
    for ax in &p.axioms {
        if ax.lhs & ax.rhs != 0 {
            continue;
        }
        let free = full & !(ax.lhs | ax.rhs);
        let mut sub = free;
        loop {
            full_hit[(ax.lhs | sub) as usize] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    let size = pow3[n] as usize;
    let mut words = vec![0u64; size.div_ceil(64)];
    for idx in (0..size).rev() {
        let mut x = idx;
        let mut a = 0u32;
        let mut missing = None;
        for i in 0..n {
            match x % 3 {
                0 => {
                    if missing.is_none() {
                        missing = Some(i);
                    }
                }
                1 => a |= 1 << i,
                _ => {}
            }
            x /= 3;
        }
        let val = match missing {
            None => full_hit[a as usize],
            Some(i) => {
                let p = pow3[i] as usize;
                let (ia, ib) = (idx + p, idx + 2 * p);
                words[ia >> 6] >> (ia & 63) & 1 == 1 && words[ib >> 6] >> (ib & 63) & 1 == 1
            }
        };
        if val {
            words[idx >> 6] |= 1 << (idx & 63);
        }
    }
    Ok(ClosureTable { n, full, words, tern })
}

/// A lattice element in disjunctive normal form: ⋁ᵢ ⋀Aᵢ, blocks as masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

fn block_key(m: u32) -> (u32, Vec<usize>) {
    (m.count_ones(), bits(m).collect())
}

/// A presentation with its closure table.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub pres: Presentation,
    pub table: ClosureTable,
    /// All masks ordered by size, then by symbol order.
    by_size: Vec<u32>,
}

impl Lattice {
    pub fn new(pres: Presentation) -> Result<Lattice> {
        Lattice::with_cap(pres, DEFAULT_CAP)
    }

    pub fn with_cap(pres: Presentation, cap: usize) -> Result<Lattice> {
        let table = close_entailment(&pres, cap)?;
        let full = pres.full_mask();
        let mut by_size: Vec<u32> = (0..=full).collect();
        by_size.sort_by_key(|&m| block_key(m));
        Ok(Lattice { pres, table, by_size })
    }

    pub fn n(&self) -> usize {
        self.pres.gens.len()
    }

    pub fn full(&self) -> u32 {
        self.pres.full_mask()
    }

    pub fn entails(&self, a: u32, b: u32) -> bool {
        self.table.entails(a, b)
    }

    /// ⋀a ≤ ⋁_{B∈x} ⋀B: a entails every transversal of x, pruned once the
    /// partial transversal already suffices.
    pub fn block_leq(&self, a: u32, x: &[u32]) -> bool {
        fn go(t: &ClosureTable, a: u32, x: &[u32], acc: u32) -> bool {
            if t.entails(a, acc) {
                return true;
            }
            let Some((first, rest)) = x.split_first() else { return false };
            if first & a != 0 && first & !a == 0 {
                return true;
            }
            bits(*first).all(|i| go(t, a, rest, acc | 1 << i))
        }
        go(&self.table, a, x, 0)
    }

    pub fn leq(&self, x: &Element, y: &Element) -> bool {
        x.0.iter().all(|&a| self.block_leq(a, &y.0))
    }

    pub fn equal(&self, x: &Element, y: &Element) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Canonical form: the ⊆-minimal blocks A with ⋀A ≤ x, then blocks that
    /// lie under the join of the others removed, examining larger blocks first.
    pub fn canonical(&self, x: &[u32]) -> Element {
        let mut minimal: Vec<u32> = Vec::new();
        for &m in &self.by_size {
            if minimal.iter().any(|&b| b & !m == 0) {
                continue;
            }
            if self.block_leq(m, x) {
                minimal.push(m);
            }
        }
        if minimal.contains(&0) {
            return Element(vec![0]);
        }
        let mut order = minimal.clone();
        order.sort_by_key(|&m| std::cmp::Reverse(block_key(m)));
        let mut kept: Vec<u32> = minimal;
        for m in order {
            let others: Vec<u32> = kept.iter().copied().filter(|&b| b != m).collect();
            if self.block_leq(m, &others) {
                kept = others;
            }
        }
        kept.sort_by_key(|&m| block_key(m));
        Element(kept)
    }

    pub fn zero(&self) -> Element {
        self.canonical(&[])
    }

    pub fn one(&self) -> Element {
        self.canonical(&[0])
    }

    pub fn gen(&self, i: usize) -> Element {
        self.canonical(&[1 << i])
    }

    pub fn block(&self, m: u32) -> Element {
        self.canonical(&[m])
    }

    pub fn join(&self, x: &Element, y: &Element) -> Element {
        let mut b = x.0.clone();
        b.extend_from_slice(&y.0);
        self.canonical(&b)
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        let mut b = Vec::new();
        for &p in &x.0 {
            for &q in &y.0 {
                b.push(p | q);
            }
        }
        self.canonical(&b)
    }

    pub fn join_all(&self, xs: &[Element]) -> Element {
        let b: Vec<u32> = xs.iter().flat_map(|x| x.0.iter().copied()).collect();
        self.canonical(&b)
    }

    pub fn meet_all(&self, xs: &[Element]) -> Element {
        xs.iter().fold(self.one(), |acc, x| self.meet(&acc, x))
    }

    /// Largest x with x ∧ u ≤ w: the join of all blocks C with ⋀C ∧ u ≤ w.
    pub fn implication(&self, u: &Element, w: &Element) -> Element {
        let blocks: Vec<u32> =
            self.by_size.iter().copied().filter(|c| u.0.iter().all(|&b| self.block_leq(c | b, &w.0))).collect();
        self.canonical(&blocks)
    }

    pub fn is_trivial(&self) -> bool {
        self.entails(0, 0)
    }

    /// All elements, closing generators, 0 and 1 under meet and join.
    pub fn elements(&self, cap: usize) -> Result<Vec<Element>> {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        let mut queue: VecDeque<Element> = VecDeque::new();
        let mut start = vec![self.zero(), self.one()];
        start.extend((0..self.n()).map(|i| self.gen(i)));
        for e in start {
            if !seen.contains(&e) && seen.len() >= cap {
                return Err(Error::CapExceeded(format!("more than {cap} lattice elements")));
            }
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(x) = queue.pop_front() {
            let current: Vec<Element> = seen.iter().cloned().collect();
            for y in current {
                for z in [self.meet(&x, &y), self.join(&x, &y)] {
                    if !seen.contains(&z) {
                        if seen.len() >= cap {
                            return Err(Error::CapExceeded(format!("more than {cap} lattice elements")));
                        }
                        seen.insert(z.clone());
                        queue.push_back(z);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        let arr = v.as_array().ok_or_else(|| Error::Invalid("element must be a list of blocks".into()))?;
        let mut blocks = Vec::new();
        for b in arr {
            blocks.push(self.pres.mask_from_json(Some(b))?);
        }
        Ok(self.canonical(&blocks))
    }

    pub fn element_to_json(&self, x: &Element) -> Value {
        Value::Array(x.0.iter().map(|&b| json!(self.pres.names(b))).collect())
    }

    pub fn show(&self, x: &Element) -> String {
        if x.0.is_empty() {
            return "0".into();
        }
        x.0.iter()
            .map(|&b| if b == 0 { "1".to_string() } else { self.pres.names(b).join("&") })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// T/(J = 0, U = 1) with the same generators.
    pub fn quotient(&self, j: &[Element], u: &[Element]) -> Result<Lattice> {
        let mut axioms = self.pres.axioms.clone();
        for x in j {
            for &a in &x.0 {
                axioms.push(Sequent { lhs: a, rhs: 0 });
            }
        }
        for y in u {
            for t in transversals(&y.0) {
                axioms.push(Sequent { lhs: 0, rhs: t });
            }
        }
        Lattice::with_cap(Presentation::new(self.pres.gens.clone(), axioms)?, self.n().max(DEFAULT_CAP))
    }

    /// Image of an element of the presenting lattice (same generators).
    pub fn project(&self, x: &Element) -> Element {
        self.canonical(&x.0)
    }

    /// ⋀U ≤ ⋁J.
    pub fn prime_collapse(&self, j: &[Element], u: &[Element]) -> bool {
        self.leq(&self.meet_all(u), &self.join_all(j))
    }

    /// (x in the saturated ideal, x in the saturated filter) of (J, U).
    pub fn saturate_prime(&self, j: &[Element], u: &[Element], x: &Element) -> (bool, bool) {
        let mut u2 = u.to_vec();
        u2.push(x.clone());
        let mut j2 = j.to_vec();
        j2.push(x.clone());
        (self.prime_collapse(j, &u2), self.prime_collapse(&j2, u))
    }
}

/// Masks picking one generator from each block; ⋁ᵢ⋀Aᵢ = ⋀ₜ ⋁t.
pub fn transversals(blocks: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = vec![0];
    for &b in blocks {
        let mut next = Vec::new();
        for &t in &out {
            for i in bits(b) {
                next.push(t | 1 << i);
            }
        }
        next.sort_unstable();
        next.dedup();
        out = next;
    }
    // Keep ⊆-minimal transversals.
    let all = out.clone();
    out.retain(|&t| !all.iter().any(|&s| s != t && s & !t == 0));
    out
}

//! Idealistic chains in a finite lattice, the Krull lattices Kr_ℓ, and lattice
//! Krull dimension.

use super::{Element, Lattice, Presentation, Sequent};
use crate::error::{Error, Result};

/// (J_k, U_k) per level; J_k is read as a join, U_k as a meet.
pub type LatticeChain = Vec<(Vec<Element>, Vec<Element>)>;

/// Some(x₁..x_ℓ) with x₁ ∧ U₀ ≤ J₀, x_{k+1} ∧ U_k ≤ J_k ∨ x_k and
/// U_ℓ ≤ J_ℓ ∨ x_ℓ. Each x_{k+1} is the largest element of the ideal
/// I_k = {x | x ∧ U_k ≤ J_k ∨ x_k}, which is principal in a finite lattice.
pub fn lattice_chain_collapses(t: &Lattice, c: &[(Vec<Element>, Vec<Element>)]) -> Option<Vec<Element>> {
    let l = c.len().checked_sub(1)?;
    let mut xs: Vec<Element> = Vec::with_capacity(l);
    let mut prev = t.zero();
    for (j, u) in &c[..l] {
        let w = t.join(&t.join_all(j), &prev);
        let i = t.implication(&t.meet_all(u), &w);
        xs.push(i.clone());
        prev = i;
    }
    let (j, u) = &c[l];
    t.leq(&t.meet_all(u), &t.join(&t.join_all(j), &prev)).then_some(xs)
}

/// Name of the Kr generator (level, symbol).
pub fn kr_name(level: usize, sym: &str) -> String {
    format!("{sym}@{level}")
}

/// φ_level(x): the copy of an element of T at the given level of Kr_ℓ(T).
pub fn kr_embed(t: &Lattice, kr: &Lattice, level: usize, x: &Element) -> Element {
    let shift = level * t.n();
    kr.canonical(&x.0.iter().map(|&b| b << shift).collect::<Vec<_>>())
}

/// Kr_ℓ(T) over generators (i, s): the full sequent with left side
/// φ₀(U₀),…,φ_ℓ(U_ℓ) and right side φ₀(J₀),…,φ_ℓ(J_ℓ) is an axiom iff the
/// chain ((J₀,U₀),…,(J_ℓ,U_ℓ)) collapses in T.
pub fn kr_lattice(t: &Lattice, ell: usize, cap: usize) -> Result<Lattice> {
    let n = t.n();
    let total = (ell + 1) * n;
    if total > cap.min(super::MAX_CAP) {
        return Err(Error::CapExceeded(format!("Kr_{ell} needs {total} generators")));
    }
    let gens: Vec<String> =
        (0..=ell).flat_map(|i| t.pres.gens.iter().map(move |s| kr_name(i, s))).collect();
    let full: u32 = if total == 0 { 0 } else { u32::MAX >> (32 - total) };
    let level_mask = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut axioms = Vec::new();
    let mut a = 0u32;
    loop {
        let b = full & !a;
        let chain: LatticeChain = (0..=ell)
            .map(|i| {
                let ui = (a >> (i * n)) & level_mask;
                let ji = (b >> (i * n)) & level_mask;
                (super::bits(ji).map(|s| t.gen(s)).collect(), vec![t.block(ui)])
            })
            .collect();
        if lattice_chain_collapses(t, &chain).is_some() {
            axioms.push(Sequent { lhs: a, rhs: b });
        }
        if a == full {
            break;
        }
        a += 1;
    }
    super::Lattice::with_cap(Presentation::new(gens, axioms)?, cap)
}

/// Per sequence x₁..x_L (L = d+1) over 0, 1 and the generators: the elements
/// a₁..a_L with a₁ ∧ x₁ ≤ 0, a_{k+1} ∧ x_{k+1} ≤ a_k ∨ x_k, 1 ≤ a_L ∨ x_L.
#[derive(Clone, Debug)]
pub struct LatticeDimReport {
    pub d: isize,
    pub holds: bool,
    pub entries: Vec<(Vec<Element>, Option<Vec<Element>>)>,
}

/// dim T ≤ d, tested on every sequence of length d+1 over 0, 1 and the
/// generators.
pub fn lattice_dim_at_most(t: &Lattice, d: isize) -> Result<LatticeDimReport> {
    if d < -1 {
        return Err(Error::Invalid("dimension bound must be ≥ −1".into()));
    }
    let len = (d + 1) as usize;
    let mut alphabet = vec![t.zero(), t.one()];
    alphabet.extend((0..t.n()).map(|i| t.gen(i)));
    alphabet.dedup();
    let count = alphabet.len().checked_pow(len as u32).filter(|&c| c <= 1_000_000);
    let Some(count) = count else {
        return Err(Error::CapExceeded(format!("{}^{len} sequences", alphabet.len())));
    };
    let mut entries = Vec::with_capacity(count);
    let mut holds = true;
    for code in 0..count {
        let mut x = code;
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(alphabet[x % alphabet.len()].clone());
            x /= alphabet.len();
        }
        let mut chain: LatticeChain = Vec::with_capacity(len + 1);
        let mut prev = t.zero();
        for s in &seq {
            chain.push((vec![prev.clone()], vec![s.clone()]));
            prev = s.clone();
        }
        chain.push((vec![prev], vec![t.one()]));
        let w = lattice_chain_collapses(t, &chain);
        holds &= w.is_some();
        entries.push((seq, w));
    }
    Ok(LatticeDimReport { d, holds, entries })
}

//! The Boolean algebra generated by a distributive lattice, and its points.

use serde_json::{json, Value};

use super::{block_key, Lattice, Presentation, Sequent};
use crate::error::{Error, Result};

/// Name of the complement generator of `s`.
pub fn complement_name(s: &str) -> String {
    format!("~{s}")
}

/// Generators S ⊎ S̄ with A, B̄ ⊢ A′, B̄′ whenever A, B′ ⊢ A′, B in T. Only full
/// sequents are emitted: every instance extends to full ones by monotonicity.
pub fn boolean_envelope(t: &Lattice) -> Result<Lattice> {
    let n = t.n();
    if 2 * n > super::MAX_CAP {
        return Err(Error::CapExceeded(format!("envelope needs {} generators", 2 * n)));
    }
    let mut gens = t.pres.gens.clone();
    gens.extend(t.pres.gens.iter().map(|s| complement_name(s)));
    let s = t.full();
    let full2: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - 2 * n) };
    let mut axioms = Vec::new();
    for lhs in 0..=full2 {
        let (a, b) = (lhs & s, lhs >> n);
        // Right side: A′ = S∖A, B′ = S∖B.
        if t.entails(a | (s & !b), (s & !a) | b) {
            axioms.push(Sequent { lhs, rhs: full2 & !lhs });
        }
    }
    let e = Lattice::with_cap(Presentation::new(gens, axioms)?, super::MAX_CAP)?;
    for i in 0..n {
        let (x, xb) = (e.gen(i), e.gen(i + n));
        if e.meet(&x, &xb) != e.zero() || e.join(&x, &xb) != e.one() {
            return Err(Error::InternalMismatch(format!("{} has no complement in the envelope", t.pres.gens[i])));
        }
    }
    for a in 0..=s {
        for b in 0..=s {
            if t.entails(a, b) != e.entails(a, b) {
                return Err(Error::InternalMismatch("the envelope does not reflect the order of T".into()));
            }
        }
    }
    Ok(e)
}

/// A morphism T → 2 as its prime filter (generators sent to 1) and prime
/// ideal (generators sent to 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoint {
    pub filter: u32,
    pub ideal: u32,
}

impl SpecPoint {
    pub fn to_json(&self, p: &Presentation) -> Value {
        json!({ "filter": p.names(self.filter), "ideal": p.names(self.ideal) })
    }
}

/// Valuations v with v ⊬ S∖v, larger filters first.
pub fn spec_enumerate(t: &Lattice) -> Vec<SpecPoint> {
    let s = t.full();
    let mut pts: Vec<SpecPoint> =
        (0..=s).filter(|&v| !t.table.full_pair(v)).map(|v| SpecPoint { filter: v, ideal: s & !v }).collect();
    pts.sort_by_key(|p| (std::cmp::Reverse(p.filter.count_ones()), block_key(p.filter)));
    pts
}

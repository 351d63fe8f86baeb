//! Collapse above an A-list, and the A-list of an element annihilated by a
//! polynomial with a coefficient equal to 1.

use serde_json::{json, Value};

use super::upoly::{self, UPoly};
use crate::chain::{char_poly, elems_to_json, eval_univariate, multiplication_matrix, CollapseCertificate, IdealisticChain, Level};
use crate::collapse::chain_collapses;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// The chain with a_h added to J₀ for h in `mask` and to U_ℓ otherwise.
pub fn above_chain(s: &Ring, c: &IdealisticChain, alist: &[Elem], mask: u32) -> IdealisticChain {
    let mut primes = c.primes.clone();
    let l = primes.len() - 1;
    for (h, a) in alist.iter().enumerate() {
        let e = s.embed(a);
        if mask >> h & 1 == 1 {
            primes[0].j.push(e);
        } else {
            primes[l].u.push(e);
        }
    }
    IdealisticChain { primes }
}

/// Per partition (H, H′) of the A-list, whether the extended chain collapses.
#[derive(Clone, Debug)]
pub struct AboveReport {
    pub holds: bool,
    pub partitions: usize,
    /// First mask (bit h set: a_h in J₀) whose chain does not collapse.
    pub failing: Option<u32>,
}

impl AboveReport {
    pub fn to_json(&self) -> Value {
        json!({ "holds": self.holds, "partitions": self.partitions, "failing": self.failing })
    }
}

/// C collapses above the A-list iff every one of the 2^k extended chains
/// collapses. Capped at 16 elements.
pub fn collapse_above(s: &Ring, c: &IdealisticChain, alist: &[Elem]) -> Result<AboveReport> {
    if alist.len() > 16 {
        return Err(Error::CapExceeded(format!("A-list of {} elements needs 2^{} chains", alist.len(), alist.len())));
    }
    let partitions = 1usize << alist.len();
    for mask in 0..partitions as u32 {
        if !chain_collapses(s, &above_chain(s, c, alist, mask))? {
            return Ok(AboveReport { holds: false, partitions, failing: Some(mask) });
        }
    }
    Ok(AboveReport { holds: true, partitions, failing: None })
}

/// One case of the ladder: for partitions whose ideal side contains the
/// A-list positions `in_g` and whose monoid side contains `h` (None: the
/// ideal side holds everything), x^m·(g′ + b·x) = g with g in the ideal
/// generated by the a's at `in_g`.
#[derive(Clone, Debug)]
pub struct AlistCase {
    pub h: Option<usize>,
    pub in_g: Vec<usize>,
    pub m: u64,
    pub g_prime: Elem,
    pub b: Elem,
    /// Cofactor in S of each A-list entry at `in_g`, in the same order.
    pub g_cof: Vec<Elem>,
}

/// A-list (a_i)_{i≠k} of x from P(X) = Σ pᵢXⁱ with p_k = 1 and P(x) = 0,
/// where a_i = −p_i. `powers[h]` is the exponent i of the h-th entry.
#[derive(Clone, Debug)]
pub struct IntegralAlist {
    pub annihilator: UPoly,
    pub k: usize,
    pub alist: Vec<Elem>,
    pub powers: Vec<usize>,
    pub cases: Vec<AlistCase>,
}

impl IntegralAlist {
    /// The case covering a partition: the smallest entry outside the mask.
    pub fn case_for(&self, mask: u32) -> &AlistCase {
        let h = (0..self.alist.len()).find(|&h| mask >> h & 1 == 0);
        self.cases.iter().find(|c| c.h == h).expect("one case per entry and one for the full mask")
    }

    /// The certificate of above_chain((x), A, mask) for the elementary chain
    /// ((0 ; x), (x ; 1)) carried by the matching case.
    pub fn certificate_for(&self, s: &Ring, x: &Elem, mask: u32) -> (IdealisticChain, CollapseCertificate) {
        let c = above_chain(s, &IdealisticChain::elementary(s, std::slice::from_ref(x)), &self.alist, mask);
        let case = self.case_for(mask);
        let mut cof0 = vec![s.zero()];
        let mut exp1 = vec![0];
        for h in 0..self.alist.len() {
            if mask >> h & 1 == 1 {
                let pos = case.in_g.iter().position(|&g| g == h);
                cof0.push(pos.map(|p| s.neg(&case.g_cof[p])).unwrap_or_else(|| s.zero()));
            } else {
                exp1.push(u64::from(case.h == Some(h) && !s.is_one(&case.g_prime)));
            }
        }
        let cert = CollapseCertificate {
            levels: vec![Level { exp: vec![case.m], cof: cof0 }, Level { exp: exp1, cof: vec![case.b.clone()] }],
        };
        (c, cert)
    }

    pub fn to_json(&self, s: &Ring) -> Value {
        let base = s.ext_parts().map(|(b, _, _)| b).unwrap_or(s);
        json!({
            "annihilator": upoly::show(base, &self.annihilator, "X"),
            "k": self.k,
            "alist": elems_to_json(base, &self.alist),
            "powers": self.powers,
            "cases": self.cases.iter().map(|c| json!({
                "h": c.h,
                "G": c.in_g,
                "m": c.m,
                "g_prime": s.show(&c.g_prime),
                "b": s.show(&c.b),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A-list from the characteristic polynomial of multiplication by x.
pub fn integral_alist(s: &Ring, x: &Elem) -> Result<IntegralAlist> {
    let base = s.ext_parts().map(|(b, _, _)| b).ok_or_else(|| Error::UnsupportedRing("not an extension".into()))?;
    integral_alist_from(s, x, &char_poly(base, &multiplication_matrix(s, x)))
}

/// A-list from any annihilator P of x with a coefficient equal to 1; the
/// leading coefficient is used when it is 1, else the lowest such one.
pub fn integral_alist_from(s: &Ring, x: &Elem, p: &[Elem]) -> Result<IntegralAlist> {
    let base = s.ext_parts().map(|(b, _, _)| b).unwrap_or(s);
    let p = upoly::trim(base, p.to_vec());
    if !s.is_zero(&eval_univariate(s, &p, x)) {
        return Err(Error::NotAnnihilator(format!("{} does not vanish at x", upoly::show(base, &p, "X"))));
    }
    let k = if upoly::is_monic(base, &p) {
        p.len() - 1
    } else {
        p.iter().position(|c| base.is_one(c)).ok_or_else(|| Error::NoUnitCoefficient(upoly::show(base, &p, "X")))?
    };
    let powers: Vec<usize> = (0..p.len()).filter(|&i| i != k).collect();
    let alist: Vec<Elem> = powers.iter().map(|&i| base.neg(&p[i])).collect();
    let a = |i: usize| s.embed(&base.neg(&p[i]));
    let xp = |e: usize| s.pow(x, e as u64);
    let mut cases = Vec::with_capacity(alist.len() + 1);
    let whole: Vec<usize> = (0..alist.len()).collect();
    cases.push(AlistCase {
        h: None,
        in_g: whole.clone(),
        m: k as u64,
        g_prime: s.one(),
        b: s.zero(),
        g_cof: powers.iter().map(|&i| xp(i)).collect(),
    });
    for (hpos, &h) in powers.iter().enumerate() {
        let in_g: Vec<usize> = (0..hpos).collect();
        let case = if h < k {
            let mut b = s.neg(&xp(k - h - 1));
            for &i in powers.iter().filter(|&&i| i > h) {
                b = s.add(&b, &s.mul(&a(i), &xp(i - h - 1)));
            }
            AlistCase {
                h: Some(hpos),
                m: h as u64,
                g_prime: a(h),
                b,
                g_cof: in_g.iter().map(|&q| s.neg(&xp(powers[q]))).collect(),
                in_g,
            }
        } else {
            let mut b = s.zero();
            for &i in powers.iter().filter(|&&i| i > k) {
                b = s.sub(&b, &s.mul(&a(i), &xp(i - k - 1)));
            }
            let in_g: Vec<usize> = (0..powers.iter().filter(|&&i| i < k).count()).collect();
            AlistCase { h: Some(hpos), m: k as u64, g_prime: s.one(), b, g_cof: in_g.iter().map(|&q| xp(powers[q])).collect(), in_g }
        };
        cases.push(case);
    }
    let out = IntegralAlist { annihilator: p.clone(), k, alist, powers, cases };
    for case in &out.cases {
        let lhs = s.mul(&xp(case.m as usize), &s.add(&case.g_prime, &s.mul(&case.b, x)));
        let g = case.in_g.iter().zip(&case.g_cof).fold(s.zero(), |acc, (&q, c)| s.add(&acc, &s.mul(c, &s.embed(&out.alist[q]))));
        if lhs != g {
            return Err(Error::InternalMismatch(format!("A-list case h = {:?} does not verify", case.h)));
        }
    }
    Ok(out)
}

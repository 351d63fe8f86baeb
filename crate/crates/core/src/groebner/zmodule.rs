//! Integer lattices (finitely generated submodules of ℤ^d) in Hermite normal
//! form. Ideals of ℤ[Y]/(f) and (ℤ/n)[Y]/(f) are handled as such lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Echelon form E = T·A of a generator matrix A (rows), with T unimodular.
/// The first `rank` rows of E are in Hermite normal form: pivots strictly
/// increase, are positive, and entries above a pivot lie in [0, pivot).
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub trans: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

pub fn echelon(gens: &[Vec<BigInt>], dim: usize) -> Echelon {
    let m = gens.len();
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    let mut trans: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        if r == m {
            break;
        }
        loop {
            let best = (r..m).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].abs());
            let Some(b) = best else { break };
            rows.swap(r, b);
            trans.swap(r, b);
            let mut clean = true;
            for i in r + 1..m {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (top, rest) = rows.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[r]);
                let (ttop, trest) = trans.split_at_mut(i);
                axpy(&mut trest[0], &q, &ttop[r]);
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < m && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                for v in rows[r].iter_mut().chain(trans[r].iter_mut()) {
                    *v = -&*v;
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (top, rest) = rows.split_at_mut(r);
                axpy(&mut top[i], &q, &rest[0]);
                let (ttop, trest) = trans.split_at_mut(r);
                axpy(&mut ttop[i], &q, &trest[0]);
            }
            pivots.push(col);
            r += 1;
        }
    }
    Echelon { rows, trans, pivots }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The Hermite basis rows.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows[..self.rank()]
    }

    /// Integer relations among the generators: rows c with Σ cᵢ·genᵢ = 0.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.trans[self.rank()..]
    }

    /// Coefficients c with Σ cᵢ·genᵢ = v, when v lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let m = self.trans.len();
        let mut c = vec![BigInt::zero(); m];
        for (k, &col) in self.pivots.iter().enumerate() {
            if v[..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = v[col].div_rem(&self.rows[k][col]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut v, &q, &self.rows[k]);
            for (ci, ti) in c.iter_mut().zip(&self.trans[k]) {
                *ci += &q * ti;
            }
        }
        v.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_and_solve() {
        let gens = vec![v(&[2, 4]), v(&[0, 6]), v(&[4, 2])];
        let e = echelon(&gens, 2);
        assert_eq!(e.basis(), &[v(&[2, 4]), v(&[0, 6])][..]);
        let c = e.solve(&v(&[6, 18])).unwrap();
        let mut s = v(&[0, 0]);
        for (ci, g) in c.iter().zip(&gens) {
            for (a, b) in s.iter_mut().zip(g) {
                *a += ci * b;
            }
        }
        assert_eq!(s, v(&[6, 18]));
        assert!(!e.contains(&v(&[1, 0])));
        assert_eq!(e.kernel().len(), 1);
    }
}

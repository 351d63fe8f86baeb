//! Minors of an n × (n+1) matrix ranked by decreasing order, with the Cramer
//! identities that place each row's designated entry in the ideal of the
//! earlier minors.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Laplace expansion along the first row; meant for small matrices.
pub fn determinant(r: &Ring, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    match n {
        0 => r.one(),
        1 => m[0][0].clone(),
        2 => r.sub(&r.mul(&m[0][0], &m[1][1]), &r.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = r.zero();
            for c in 0..n {
                if r.is_zero(&m[0][c]) {
                    continue;
                }
                let minor: Vec<Vec<Elem>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, e)| e.clone()).collect()).collect();
                let t = r.mul(&m[0][c], &determinant(r, &minor));
                acc = if c % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            acc
        }
    }
}

/// μ_k of order j on rows ρ and the last j columns. The designated column is
/// w = n − j (0-based); γ are the Cramer numerators for the columns after w;
/// row t satisfies μ·V[t][w] − Σ γ_c·V[t][c] = D_t with D_t = 0 or ±μᵢ for an
/// earlier minor μᵢ of order j+1 (`residuals[t]` = (i, sign)).
#[derive(Clone, Debug)]
pub struct MinorStep {
    pub order: usize,
    pub rows: Vec<usize>,
    pub mu: Elem,
    pub column: usize,
    pub gamma: Vec<Elem>,
    pub residuals: Vec<Option<(usize, i8)>>,
}

#[derive(Clone, Debug)]
pub struct MinorsDecomposition {
    pub steps: Vec<MinorStep>,
}

impl MinorsDecomposition {
    pub fn mus(&self) -> Vec<Elem> {
        self.steps.iter().map(|s| s.mu.clone()).collect()
    }

    /// Re-checks every row identity against the matrix.
    pub fn verify(&self, r: &Ring, v: &[Vec<Elem>]) -> bool {
        self.steps.iter().all(|st| {
            let d = row_residual(r, v, st);
            d.len() == st.residuals.len()
                && d.iter().zip(&st.residuals).all(|(d, res)| match *res {
                    None => r.is_zero(d),
                    Some((i, sg)) => {
                        i < self.steps.len()
                            && self.steps[i].order == st.order + 1
                            && *d == if sg > 0 { self.steps[i].mu.clone() } else { r.neg(&self.steps[i].mu) }
                    }
                })
        })
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| json!({
                "order": s.order,
                "rows": s.rows,
                "mu": r.show(&s.mu),
                "column": s.column,
                "gamma": s.gamma.iter().map(|g| r.show(g)).collect::<Vec<_>>(),
                "residuals": s.residuals.iter().map(|x| x.map(|(i, sg)| json!({"minor": i, "sign": sg}))).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn row_residual(r: &Ring, v: &[Vec<Elem>], st: &MinorStep) -> Vec<Elem> {
    v.iter()
        .map(|row| {
            let mut d = r.mul(&st.mu, &row[st.column]);
            for (k, g) in st.gamma.iter().enumerate() {
                d = r.sub(&d, &r.mul(g, &row[st.column + 1 + k]));
            }
            d
        })
        .collect()
}

fn subsets(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(j);
    fn go(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, j, cur, out);
            cur.pop();
        }
    }
    go(0, n, j, &mut cur, &mut out);
    out
}

/// Every minor on the last j columns, j = n down to 0 (the order-0 minor is
/// 1), with its Cramer identities checked exactly. n ≤ 6.
pub fn minors_decompose(r: &Ring, v: &[Vec<Elem>]) -> Result<MinorsDecomposition> {
    let n = v.len();
    if n > 6 {
        return Err(Error::CapExceeded(format!("{n} rows; at most 6")));
    }
    if v.iter().any(|row| row.len() != n + 1) {
        return Err(Error::ShapeMismatch("an n × (n+1) matrix is required".into()));
    }
    let mut steps: Vec<MinorStep> = Vec::new();
    let mut index: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
    for j in (0..=n).rev() {
        let cols: Vec<usize> = (n + 1 - j..=n).collect();
        let w = n - j;
        for rows in subsets(n, j) {
            let pick = |cs: &[usize]| -> Vec<Vec<Elem>> { rows.iter().map(|&t| cs.iter().map(|&c| v[t][c].clone()).collect()).collect() };
            let mu = determinant(r, &pick(&cols));
            let gamma: Vec<Elem> = (0..j)
                .map(|k| {
                    let mut cs = cols.clone();
                    cs[k] = w;
                    determinant(r, &pick(&cs))
                })
                .collect();
            let mut st = MinorStep { order: j, rows: rows.clone(), mu, column: w, gamma, residuals: vec![None; n] };
            let d = row_residual(r, v, &st);
            for (t, dt) in d.iter().enumerate() {
                if r.is_zero(dt) {
                    continue;
                }
                let mut big = rows.clone();
                big.push(t);
                big.sort_unstable();
                let i = *index
                    .get(&big)
                    .filter(|_| !rows.contains(&t))
                    .ok_or_else(|| Error::InternalMismatch(format!("row {t} of minor {rows:?} has a nonzero residual")))?;
                let sg = if *dt == steps[i].mu {
                    1
                } else if *dt == r.neg(&steps[i].mu) {
                    -1
                } else {
                    return Err(Error::InternalMismatch(format!("row {t} of minor {rows:?} is not ± the minor {big:?}")));
                };
                st.residuals[t] = Some((i, sg));
            }
            index.insert(rows, steps.len());
            steps.push(st);
        }
    }
    Ok(MinorsDecomposition { steps })
}

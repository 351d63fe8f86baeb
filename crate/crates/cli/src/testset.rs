//! Seeded generation of dimension test sets when a request gives none.

use krull_core::ring::Kind;
use krull_core::{Elem, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A small element: an integer in [−6, 6], a residue, or a monomial of
/// degree ≤ 2 with a coefficient in {1, 2, −1}.
fn small(r: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    match &r.kind {
        Kind::Poly { .. } => {
            let n = r.nvars();
            let mut m = r.from_i64([1, 2, -1][rng.gen_range(0..3)]);
            for _ in 0..rng.gen_range(0..=2) {
                m = r.mul(&m, &r.var(rng.gen_range(0..n)));
            }
            m
        }
        _ => r.from_i64(rng.gen_range(-6..=6)),
    }
}

/// `count` sequences of length ℓ+1, fixed by the seed.
pub fn generate(r: &Ring, ell: usize, count: usize, seed: u64) -> Vec<Vec<Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..=ell).map(|_| small(r, &mut rng)).collect()).collect()
}

//! Kronecker (R_d) low-discrepancy sequence in 64-bit fixed point, with optional
//! random (Cranley-Patterson) shifts for randomized quasi-Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RSequence {
    alpha: Vec<u64>,
    shift: Vec<u64>,
}

const SCALE: f64 = 18446744073709551616.0; // 2^64

/// Positive root of `x^(d+1) = x + 1`.
fn generalized_golden_ratio(dim: usize) -> f64 {
    let p = (dim + 1) as f64;
    let mut x = 1.5f64;
    for _ in 0..64 {
        let f = x.powf(p) - x - 1.0;
        let df = p * x.powf(p - 1.0) - 1.0;
        x -= f / df;
    }
    x
}

impl RSequence {
    pub fn new(dim: usize) -> Self {
        let g = generalized_golden_ratio(dim);
        let alpha = (1..=dim)
            .map(|k| {
                let a = (1.0 / g).powi(k as i32);
                (a.fract() * SCALE) as u64
            })
            .collect();
        // The customary 1/2 offset.
        Self {
            alpha,
            shift: vec![1u64 << 63; dim],
        }
    }

    /// Sequence with a uniformly random shift drawn from `seed`.
    pub fn seeded(dim: usize, seed: u64) -> Self {
        let mut s = Self::new(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        s.shift = (0..dim).map(|_| rng.random::<u64>()).collect();
        s
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// Writes point `n` (coordinates in `[0, 1)`) into `out`.
    pub fn point(&self, n: u64, out: &mut [f64]) {
        for ((o, &a), &s) in out.iter_mut().zip(&self.alpha).zip(&self.shift) {
            let v = s.wrapping_add(a.wrapping_mul(n));
            *o = (v >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        }
    }
}

/// Deterministic 64-bit seed derivation (splitmix finalizer).
pub(crate) fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

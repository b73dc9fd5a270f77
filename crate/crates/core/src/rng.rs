//! Seeded randomness. Every trial gets its own generator seeded with
//! `seed ^ index`, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

/// Exact Bernoulli draw with rational success probability `p` in `[0, 1]`.
pub fn bernoulli<R: Rng>(rng: &mut R, p: Rational) -> bool {
    let (num, den) = (*p.numer(), *p.denom());
    if num <= 0 {
        return false;
    }
    if num >= den {
        return true;
    }
    (rng.gen_range(0..den as u128) as i128) < num
}

//! Seeded generation of small test matroids.
//!
//! Matroids come from random transversal presentations (unions of rank-1
//! matroids), optionally dualized, so every draw is valid without rejection.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classes::presentation_matroid;
use crate::expansion::Presentation;
use crate::mask::SubsetMask;
use crate::matroid::{GroundSet, Matroid};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A transversal matroid or its dual on `1..=n` for some `1 <= n <= max_n`.
pub fn random_matroid(rng: &mut TestRng, max_n: usize) -> Matroid {
    let n = rng.gen_range(1..=max_n);
    random_matroid_on(rng, n)
}

/// As [`random_matroid`] with exactly `n` elements.
pub fn random_matroid_on(rng: &mut TestRng, n: usize) -> Matroid {
    let ground = GroundSet::numbered(n).expect("small ground set");
    let p = random_presentation(rng, n);
    let m = presentation_matroid(&p, &ground).expect("small union");
    if rng.gen_bool(0.5) {
        m.dual()
    } else {
        m
    }
}

/// Two to four random subsets of `0..n`.
pub fn random_presentation(rng: &mut TestRng, n: usize) -> Presentation {
    let k = rng.gen_range(2..=4);
    let sets = (0..k)
        .map(|_| SubsetMask(rng.gen_range(0..1u64 << n)))
        .collect();
    Presentation { sets }
}

/// A random subset of the ground set of `m`.
pub fn random_subset(rng: &mut TestRng, m: &Matroid) -> SubsetMask {
    SubsetMask(rng.gen::<u64>()) & m.full()
}

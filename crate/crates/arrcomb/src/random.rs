//! Seeded random deformed braid specs.

use std::collections::BTreeMap;

use arrcomb_core::arrangement::pairs;
use arrcomb_core::{DeformedBraidSpec, Rational};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpecParams {
    pub min_n: usize,
    pub max_n: usize,
    /// Offsets are integers in `low..=high`.
    pub low: i64,
    pub high: i64,
    /// Offset lists have between 1 and `max_len` entries.
    pub max_len: usize,
}

impl RandomSpecParams {
    pub fn small(max_n: usize) -> Self {
        RandomSpecParams { min_n: max_n.min(2), max_n, low: -2, high: 2, max_len: 3 }
    }
}

pub fn random_spec(rng: &mut impl Rng, params: &RandomSpecParams) -> DeformedBraidSpec {
    let n = rng.gen_range(params.min_n..=params.max_n);
    let width = (params.high - params.low + 1) as usize;
    let longest = params.max_len.min(width);
    let table: BTreeMap<(usize, usize), Vec<Rational>> = pairs(n)
        .map(|p| {
            let len = rng.gen_range(1..=longest);
            let mut picked: Vec<i64> = sample(rng, width, len).into_iter().map(|k| params.low + k as i64).collect();
            picked.sort_unstable();
            (p, picked.into_iter().map(|v| Rational::from_integer(v.into())).collect())
        })
        .collect();
    DeformedBraidSpec::new(n, table).expect("sampled offsets are sorted and distinct")
}

/// `count` specs from a ChaCha stream seeded with `seed`.
pub fn random_specs(count: usize, seed: u64, params: &RandomSpecParams) -> Vec<DeformedBraidSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn seeded_and_within_bounds() {
        let params = RandomSpecParams::small(3);
        let specs = random_specs(50, 7, &params);
        assert_eq!(specs, random_specs(50, 7, &params));
        assert_ne!(specs, random_specs(50, 8, &params));
        for spec in &specs {
            assert!((2..=3).contains(&spec.n()));
            for list in spec.offsets().values() {
                assert!((1..=3).contains(&list.len()));
                assert!(list.iter().all(|v| v.abs() <= Rational::from_integer(2.into())));
            }
        }
    }
}

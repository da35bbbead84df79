#![allow(dead_code)]

use std::collections::BTreeMap;

use arrcomb_core::arrangement::pairs;
use arrcomb_core::{DeformedBraidSpec, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn qs(vs: &[i64]) -> Vec<Rational> {
    vs.iter().map(|&v| q(v)).collect()
}

/// Specs on `1..=max_n` coordinates with offsets from `-2..=2`, at most
/// three per pair.
pub fn random_spec(max_n: usize) -> impl Strategy<Value = DeformedBraidSpec> {
    (1..=max_n).prop_flat_map(|n| {
        let lists = prop::collection::vec(prop::sample::subsequence(vec![-2i64, -1, 0, 1, 2], 1..=3), n * (n - 1) / 2);
        lists.prop_map(move |lists| {
            let table: BTreeMap<(usize, usize), Vec<Rational>> =
                pairs(n).zip(lists).map(|(p, list)| (p, qs(&list))).collect();
            DeformedBraidSpec::new(n, table).unwrap()
        })
    })
}

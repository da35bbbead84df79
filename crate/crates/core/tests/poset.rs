mod common;

use arrcomb_core::arrangement::{build_deformed_braid, build_family, centralize, restrict_to_flat, Family};
use arrcomb_core::exactgeom::flat_from_hyperplanes;
use arrcomb_core::poset::{build_intersection_poset, characteristic_polynomial, whitney_by_restriction};
use arrcomb_core::{Arrangement, BivariatePolynomial, IntersectionPoset, LinearConstraint};
use common::{q, random_spec};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn instances() -> Vec<(String, Arrangement)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=4 {
            for a in [1, 2] {
                if a == 2 && (!family.is_extended() || n == 4) {
                    continue;
                }
                out.push((format!("{family} a={a} n={n}"), build_family(family, n, a).unwrap()));
            }
        }
    }
    out
}

fn check_mobius_sums(poset: &IntersectionPoset) -> Result<(), String> {
    for i in 0..poset.len() {
        for j in 0..poset.len() {
            if !poset.leq(i, j) {
                continue;
            }
            let sum: BigInt =
                (0..poset.len()).filter(|&k| poset.leq(i, k) && poset.leq(k, j)).map(|k| poset.mobius(i, k).unwrap()).sum();
            let expected = if i == j { BigInt::one() } else { BigInt::zero() };
            if sum != expected {
                return Err(format!("row sum {sum} on ({i}, {j})"));
            }
        }
    }
    Ok(())
}

fn check_whitney(a: &Arrangement) -> Result<(), String> {
    let poset = build_intersection_poset(a);
    check_mobius_sums(&poset)?;
    let w = poset.whitney_polynomial();
    if w.at_x_zero() != characteristic_polynomial(a) {
        return Err("w(0, t) differs from the characteristic polynomial".into());
    }
    if w != whitney_by_restriction(a) {
        return Err("Möbius and restriction forms differ".into());
    }
    if w.eval(&q(1), &q(1)) != q(1) {
        return Err(format!("w(1, 1) = {}", w.eval(&q(1), &q(1))));
    }
    Ok(())
}

#[test]
fn whitney_invariants_on_families() {
    for (label, a) in instances() {
        check_whitney(&a).unwrap_or_else(|e| panic!("{label}: {e}"));
    }
}

/// `t (t − 1) ⋯ (t − k + 1)`.
fn falling(k: usize) -> BivariatePolynomial {
    (0..k).fold(BivariatePolynomial::one(), |acc, i| {
        &acc * &(&BivariatePolynomial::t() - &BivariatePolynomial::constant(q(i as i64)))
    })
}

#[test]
fn restrictions_centralize_to_braid_arrangements() {
    for (label, a) in instances() {
        let poset = build_intersection_poset(&a);
        for flat in poset.flats() {
            let restricted = restrict_to_flat(&a, flat).unwrap().arrangement;
            let chi = characteristic_polynomial(&centralize(&restricted));
            assert_eq!(chi, falling(flat.dim()), "{label}, flat of dimension {}", flat.dim());
        }
    }
}

#[test]
fn centralize_is_idempotent() {
    for (label, a) in instances() {
        let once = centralize(&a);
        assert_eq!(centralize(&once), once, "{label}");
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn embed(constraint: &LinearConstraint, support: &[usize], n: usize) -> LinearConstraint {
    let mut normal = vec![q(0); n];
    for (c, &i) in support.iter().enumerate() {
        normal[i] = constraint.normal[c].clone();
    }
    LinearConstraint::new(normal, constraint.offset.clone())
}

#[test]
fn induced_posets_match_smaller_family_members() {
    for family in Family::ALL {
        for n in 2..=4 {
            let a = build_family(family, n, 1).unwrap();
            for s in subsets(n) {
                let on_s: Vec<usize> = (0..a.len())
                    .filter(|&k| a.hyperplanes()[k].normal().iter().enumerate().all(|(i, v)| v.is_zero() || s.contains(&i)))
                    .collect();
                let big = build_intersection_poset(&a.subarrangement(&on_s));
                let small = build_intersection_poset(&build_family(family, s.len(), 1).unwrap());
                assert_eq!(big.len(), small.len(), "{family} n={n} S={s:?}");
                let image: Vec<usize> = small
                    .flats()
                    .iter()
                    .map(|flat| {
                        let eqs: Vec<LinearConstraint> = flat.equations().iter().map(|c| embed(c, &s, n)).collect();
                        let embedded = flat_from_hyperplanes(&eqs, n).unwrap().unwrap();
                        big.index_of(&embedded).expect("embedded flat is a flat of the induced arrangement")
                    })
                    .collect();
                for i in 0..small.len() {
                    for j in 0..small.len() {
                        assert_eq!(small.leq(i, j), big.leq(image[i], image[j]));
                        assert_eq!(small.mobius(i, j), big.mobius(image[i], image[j]));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn whitney_invariants_on_random_specs(spec in random_spec(3)) {
        let a = build_deformed_braid(&spec);
        prop_assert_eq!(check_whitney(&a), Ok(()));
        let once = centralize(&a);
        prop_assert_eq!(centralize(&once), once);
    }
}

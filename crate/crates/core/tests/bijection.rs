mod common;

use arrcomb_core::arrangement::{build_deformed_braid, build_family, family_spec, Family};
use arrcomb_core::bijection::{phi, phi_inverse, OrderedPartition};
use arrcomb_core::faces::{enumerate_faces, level_by_recession};
use arrcomb_core::{DeformedBraidSpec, Error};
use common::random_spec;
use proptest::prelude::*;

fn round_trips(spec: &DeformedBraidSpec) -> Result<(), String> {
    let a = build_deformed_braid(spec);
    for face in enumerate_faces(&a) {
        let id = face.sign_string();
        let image = phi(spec, &face).map_err(|e| format!("{id}: {e}"))?;
        if image.partition.len() != face.level() {
            return Err(format!("{id}: {} blocks for level {}", image.partition.len(), face.level()));
        }
        for (block, part) in image.partition.blocks().iter().zip(&image.parts) {
            let sub = build_deformed_braid(&spec.induced(block).unwrap());
            if level_by_recession(&sub, part) != 1 {
                return Err(format!("{id}: part on {block:?} is not of level 1"));
            }
        }
        if image.parts.iter().map(|p| p.dim()).sum::<usize>() != face.dim() {
            return Err(format!("{id}: dimensions do not add up"));
        }
        let back = phi_inverse(spec, &image.partition, &image.parts).map_err(|e| format!("{id}: {e}"))?;
        if back != face {
            return Err(format!("{id}: inverse gives {}", back.sign_string()));
        }
        if phi(spec, &back).map_err(|e| e.to_string())? != image {
            return Err(format!("{id}: image changes on the second pass"));
        }
    }
    Ok(())
}

#[test]
fn round_trips_on_families() {
    for family in Family::ALL {
        for n in 1..=3 {
            round_trips(&family_spec(family, n, 1).unwrap()).unwrap_or_else(|e| panic!("{family} n={n}: {e}"));
        }
    }
}

#[test]
fn parts_must_have_level_one() {
    let spec = family_spec(Family::Shi, 3, 1).unwrap();
    let faces = enumerate_faces(&build_family(Family::Shi, 3, 1).unwrap());
    let region = faces.iter().find(|f| f.level() == 3).unwrap();
    let whole = OrderedPartition::new(3, vec![vec![0, 1, 2]]).unwrap();
    assert_eq!(phi_inverse(&spec, &whole, &[region.clone()]), Err(Error::PartLevel { block: 0, level: 3 }));
    let parts = phi(&spec, region).unwrap().parts;
    let short = OrderedPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
    assert!(matches!(phi_inverse(&spec, &short, &parts), Err(Error::InvalidPartition(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Non-uniform offset tables included.
    #[test]
    fn round_trips_on_random_specs(spec in random_spec(3)) {
        prop_assert_eq!(round_trips(&spec), Ok(()));
    }
}

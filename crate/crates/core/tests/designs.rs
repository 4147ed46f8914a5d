use proptest::prelude::*;
use xeno_core::designs::{
    affine_plane_prime, canonical_pi4, plane_from_json, plane_from_text, plane_to_json, plane_to_text, prime_mols,
    validate_plane, MolsSet,
};
use xeno_core::paratopisms::{canonical_autoparatopisms, is_autoparatopism, Paratopism};

#[test]
fn prime_planes_are_valid() {
    for p in [2, 3, 5, 7] {
        let plane = affine_plane_prime(p).unwrap();
        assert!(validate_plane(&plane).is_ok(), "p = {p}");
        assert_eq!(plane.lines().len(), p * (p + 1));
    }
    assert!(affine_plane_prime(4).is_err());
    assert!(affine_plane_prime(11).is_err());
}

#[test]
fn prime_mols_are_complete_sets() {
    for p in [3, 5, 7] {
        let mols: MolsSet = prime_mols(p).unwrap();
        assert_eq!(mols.len(), p - 1);
    }
}

#[test]
fn golden_plane_file_matches_the_construction() {
    let golden = include_str!("../data/planes/pi4.plane");
    assert_eq!(plane_from_text(golden).unwrap(), canonical_pi4());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeled_planes_stay_valid_and_serialize(seed in any::<u64>()) {
        let plane = canonical_pi4().relabeled(seed);
        prop_assert!(validate_plane(&plane).is_ok());
        let text = plane_to_text(&plane);
        prop_assert_eq!(plane_to_text(&plane_from_text(&text).unwrap()), text);
        let json = plane_to_json(&plane);
        prop_assert_eq!(plane_to_json(&plane_from_json(&json).unwrap()), json);
    }

    #[test]
    fn autoparatopisms_form_a_group(i in 0usize..1152, j in 0usize..1152) {
        let group = canonical_autoparatopisms();
        let pair = xeno_core::designs::canonical_mols4().truncated(2);
        let (g, h): (&Paratopism, &Paratopism) = (&group.elements()[i], &group.elements()[j]);
        prop_assert!(group.contains(&g.compose(h)));
        prop_assert!(group.contains(&g.inverse()));
        prop_assert!(is_autoparatopism(&g.compose(h), &pair).unwrap());
        let text = g.to_string();
        prop_assert_eq!(text.parse::<Paratopism>().unwrap(), *g);
    }
}

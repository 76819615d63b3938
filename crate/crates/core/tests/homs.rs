mod common;

use std::collections::BTreeSet;

use common::*;
use fibercert::groups::{
    catalog, div_phi_alpha, enumerate_homs, enumerate_homs_raw, surjections_up_to_automorphism, Hom,
};
use fibercert::words::{mapping_torus, wirtinger};
use proptest::prelude::*;

#[test]
fn raw_enumeration_is_brute_force() {
    let (p, _) = wirtinger(&load_pd("4_1")).unwrap();
    for g in catalog(8).unwrap() {
        let got: BTreeSet<Vec<usize>> = enumerate_homs_raw(&p, &g, false).iter().map(|h| h.images().to_vec()).collect();
        let want: BTreeSet<Vec<usize>> = brute_force_homs(&p, &g).into_iter().collect();
        assert_eq!(got, want, "{}", g.name());
    }
}

#[test]
fn every_surjection_lies_in_exactly_one_automorphism_class() {
    // Distinct classes never share a kernel, so their Cayley keys differ and
    // each conjugacy class lands in exactly one of them.
    let (p, _) = wirtinger(&load_pd("3_1")).unwrap();
    for g in catalog(12).unwrap() {
        let reps = surjections_up_to_automorphism(&p, &g);
        let keys: BTreeSet<Vec<u32>> = reps.iter().map(|h| g.cayley_key(h.images())).collect();
        assert_eq!(keys.len(), reps.len());
        for h in enumerate_homs(&p, &g, true) {
            assert!(keys.contains(&g.cayley_key(h.images())));
        }
    }
}

#[test]
fn div_matches_oracle_on_knot_quotients() {
    for name in ["3_1", "4_1", "5_2"] {
        let (p, phi) = wirtinger(&load_pd(name)).unwrap();
        for g in catalog(12).unwrap() {
            for h in enumerate_homs(&p, &g, false) {
                assert_eq!(div_phi_alpha(&p, &phi, &h).unwrap(), div_oracle(&g, h.images(), &phi));
            }
        }
    }
}

#[test]
fn conjugation_preserves_homs() {
    let (p, _) = wirtinger(&load_pd("3_1")).unwrap();
    let g = fibercert::groups::group_by_name("S3").unwrap();
    for h in enumerate_homs(&p, &g, true) {
        for c in 0..g.order() {
            let k = h.conjugated(c);
            assert!(Hom::new(&p, g.clone(), k.images().to_vec()).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mapping_torus_surjection_classes(seed in any::<u64>(), order in 2usize..=6) {
        let h = &random_automorphisms(seed, 2, 2, 4)[(seed % 2) as usize];
        let (p, phi) = mapping_torus(h).unwrap();
        for g in catalog(order).unwrap().into_iter().filter(|g| g.order() == order) {
            prop_assert_eq!(enumerate_homs(&p, &g, true).len(), brute_force_surjection_classes(&p, &g));
            for hom in surjections_up_to_automorphism(&p, &g) {
                prop_assert_eq!(div_phi_alpha(&p, &phi, &hom).unwrap(), div_oracle(&g, hom.images(), &phi));
            }
        }
    }
}

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sgrid::oracle::enumerate_grids;
use sgrid::synthesis::{dual_circuit_classes, recover_plan, synthesize};
use sgrid::transverse::{decompose, extract_skeleton};
use sgrid::EmbeddedMap;
use std::sync::OnceLock;

fn catalog() -> &'static [EmbeddedMap] {
    static CATALOG: OnceLock<Vec<EmbeddedMap>> = OnceLock::new();
    CATALOG.get_or_init(|| enumerate_grids(8))
}

fn skeletons() -> &'static [(String, EmbeddedMap)] {
    static SKELETONS: OnceLock<Vec<(String, EmbeddedMap)>> = OnceLock::new();
    SKELETONS.get_or_init(common::skeleton_corpus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(index in 0usize..6546, seed in any::<u64>()) {
        let g = &catalog()[index];
        let copy = common::relabel(g, &mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(copy.canonical_form(), g.canonical_form());
        prop_assert!(copy.dual().is_isomorphic(&g.dual()));
    }

    #[test]
    fn curvature_identity_holds(index in 0usize..6546) {
        let g = &catalog()[index];
        prop_assert_eq!(common::curvature_sum(g), 4 * g.euler_characteristic());
    }

    #[test]
    fn skeleton_keeps_the_surface(index in 0usize..6546) {
        let g = &catalog()[index];
        if !g.curvature_sequence().is_empty() {
            let r = extract_skeleton(g).unwrap();
            prop_assert!(r.skeleton.is_grid());
            prop_assert_eq!(r.skeleton.euler_characteristic(), g.euler_characteristic());
            prop_assert_eq!(r.skeleton.is_orientable(), g.is_orientable());
            prop_assert_eq!(r.skeleton.curvature_sequence(), g.curvature_sequence());
        }
    }

    #[test]
    fn synthesis_round_trips(which in 0usize..7, raw in prop::collection::vec(0usize..=4, 8)) {
        let (name, s) = &skeletons()[which];
        let plan = dual_circuit_classes(s).unwrap();
        let counts = &raw[..plan.classes.len().min(raw.len())];
        prop_assume!(counts.len() == plan.classes.len());
        let g = synthesize(s, counts).unwrap();
        prop_assert!(g.is_grid(), "{}", name);
        let dec = decompose(&g);
        let covered: usize = dec.walks.iter().map(|w| w.darts.len()).sum::<usize>()
            + dec.circuits.iter().map(|c| c.darts.len()).sum::<usize>();
        prop_assert_eq!(covered, g.edge_count());
        let r = extract_skeleton(&g).unwrap();
        prop_assert!(r.skeleton.is_isomorphic(s));
        let mut got = recover_plan(&r).unwrap().counts;
        let mut want = counts.to_vec();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn skeleton_corpus_size() {
    assert_eq!(skeletons().len(), 7);
    assert_eq!(catalog().len(), 6546);
}

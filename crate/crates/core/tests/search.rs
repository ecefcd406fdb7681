mod common;

use sgrid::derived::{check_overlay_form, check_radial_form};
use sgrid::oracle::{enumerate_grids, search_quadrangular, EnumerationBudget};
use sgrid::synthesis::dual_circuit_classes;
use sgrid::{fixtures, Graph};

#[test]
fn wagner_immersions() {
    let budget = EnumerationBudget { max_crossings: 2, max_edges: 16, ..Default::default() };
    let report = search_quadrangular(&fixtures::wagner_graph(), &budget).unwrap();
    assert_eq!(report.forced_chi, 2);
    assert_eq!(report.truncated_at, None);
    // Spherical transverse immersions that are not quadrangular exist too.
    assert!(report.non_quadrangular > 0);
    assert_eq!(report.immersions.len(), 1);
    let found = &report.immersions[0];
    assert_eq!(found.crossings, 2);
    assert!(found.map.is_isomorphic(&fixtures::v8_skeleton()));
    assert_eq!(dual_circuit_classes(&found.map).unwrap().classes.len(), 1);
}

#[test]
fn wagner_needs_two_crossings() {
    let budget = EnumerationBudget { max_crossings: 1, ..Default::default() };
    let report = search_quadrangular(&fixtures::wagner_graph(), &budget).unwrap();
    assert!(report.immersions.is_empty());
    assert_eq!(report.truncated_at, None);
}

#[test]
fn crossing_levels_beyond_the_edge_budget_are_reported() {
    let budget = EnumerationBudget { max_crossings: 3, ..Default::default() };
    let report = search_quadrangular(&fixtures::wagner_graph(), &budget).unwrap();
    assert_eq!(report.truncated_at, Some(2));
}

#[test]
fn alternating_wheel_has_several_crossing_counts() {
    let g = fixtures::alternating_wheel(2);
    let budget = EnumerationBudget { max_crossings: 3, ..Default::default() };
    let report = search_quadrangular(&g, &budget).unwrap();
    let mut counts: Vec<usize> = report.immersions.iter().map(|i| i.crossings).collect();
    counts.dedup();
    assert_eq!(counts, vec![0, 1, 2, 3]);
    for im in &report.immersions {
        assert!(im.map.is_grid());
        assert_eq!(im.map.euler_characteristic(), 2);
    }
    let zero = &report.immersions[0].map;
    let one = report.immersions.iter().find(|i| i.crossings == 1).unwrap();
    assert!(!zero.is_isomorphic(&one.map));
}

#[test]
fn ten_rim_wheel_is_the_planar_double_wheel() {
    let budget = EnumerationBudget { max_crossings: 0, max_edges: 20, ..Default::default() };
    let report = search_quadrangular(&fixtures::alternating_wheel(10), &budget).unwrap();
    assert_eq!(report.immersions.len(), 1);
    assert!(report.immersions[0].map.is_isomorphic(&fixtures::pdw()));
    assert!(common::graphs_isomorphic(&Graph::from_map(&fixtures::pdw()), &fixtures::alternating_wheel(10)));
}

#[test]
fn recognition_counterexamples_exist() {
    let catalog = enumerate_grids(8);
    let odd = catalog.iter().find(|g| g.is_bipartite().is_none()).expect("a non-bipartite grid");
    assert!(!odd.is_orientable() || odd.euler_characteristic() <= 0);
    assert!(!check_radial_form(odd).unwrap().is_radial);
    assert!(!check_overlay_form(odd).unwrap().is_overlay);
    // A bipartite grid with a white class of degree 4 whose R(G) is not
    // bipartite.
    let witness = catalog
        .iter()
        .find(|g| {
            let v = check_overlay_form(g).unwrap();
            v.bipartite && !v.degree4_classes.is_empty() && !v.is_overlay
        })
        .expect("a bipartite grid with degree-4 class that is not an overlay");
    assert!(witness.is_grid());
}

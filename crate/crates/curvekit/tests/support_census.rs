use curvekit::supports::{
    census, complete_types_by_pants, config_tree, enumerate_complete_support_types, max_disjoint_supports,
};

#[test]
fn census_seven_to_twelve() {
    for b in 7..=12 {
        let c = census(b).unwrap();
        assert_eq!(c.nu, (b - 2) / 2, "b={b}");
        assert_eq!(c.nu_by_compositions, c.nu);
        assert_eq!(c.nu_by_pants, c.nu);
        assert!(c.pants_route_agrees, "b={b}");
        assert!(c.shape_violations.is_empty(), "b={b}: {:?}", c.shape_violations);
        assert!(c.minambig_holds, "b={b}");
        for t in &c.complete_types {
            t.tree.validate().unwrap();
            assert_eq!(t.tree.euler_sum(), 2 - b as i64);
        }
        let csv = c.to_csv();
        assert_eq!(csv.lines().count(), c.hinge_supports.len() + 1);
    }
}

#[test]
fn composition_route_small_values() {
    assert_eq!((4..=6).map(max_disjoint_supports).collect::<Vec<_>>(), vec![1, 1, 2]);
    assert_eq!(complete_types_by_pants(7).0, 2);
    assert!(enumerate_complete_support_types(6).is_err());
}

#[test]
fn witnesses_through_the_engine() {
    for b in 9..=10 {
        let (_, types) = enumerate_complete_support_types(b).unwrap();
        for t in types {
            let curves = t.tree.witness().unwrap();
            assert_eq!(config_tree(b, &curves).unwrap().canonical(), t.canonical, "b={b}");
        }
    }
}

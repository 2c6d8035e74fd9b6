use std::sync::Arc;

use eqloc::catalog::{arrow_to_point, free_plus_trivial, free_z2_orbit, trivial_z2_orbit, z2, z2_collapse};
use eqloc::diagram::Diagram;
use eqloc::orbit::{is_orbit, orbit_category_of, orbit_naturality, orbit_point_diagram, orbit_setup};
use eqloc::simplicial::standard::{discrete, standard_simplex};

#[test]
fn orbit_recognition() {
    assert!(is_orbit(&free_z2_orbit()));
    assert!(is_orbit(&trivial_z2_orbit()));
    assert!(is_orbit(&arrow_to_point(Arc::new(standard_simplex(2)))));
    assert!(!is_orbit(&Diagram::constant(z2(), Arc::new(standard_simplex(1)))));
}

#[test]
fn setup_of_free_plus_trivial() {
    let x = free_plus_trivial();
    let s = orbit_setup(&x);
    assert_eq!(s.orbits.len(), 2);
    let sizes: Vec<usize> = s.orbits.iter().map(|o| o.orbit.at(0).cell_count(0)).collect();
    assert_eq!(sizes, vec![2, 1]);
    for o in &s.orbits {
        assert!(is_orbit(&o.orbit));
        assert!(o.into.check().is_ok());
    }
    assert!(orbit_setup(&Arc::new(Diagram::empty(z2()))).orbits.is_empty());
}

#[test]
fn collapse_naturality() {
    let f = z2_collapse();
    let sx = orbit_setup(f.source());
    let sy = orbit_setup(f.target());
    let sq = orbit_naturality(&f, &sx, &sy, 0).unwrap();
    assert_eq!(sq.target_orbit, 0);
    assert!(sq.map.check().is_ok());
}

#[test]
fn orbit_categories() {
    let x = arrow_to_point(Arc::new(discrete(["p", "q"])));
    let e = orbit_category_of(&x, 0);
    assert_eq!(e.orbits.len(), 1);
    let triv = orbit_category_of(&trivial_z2_orbit(), 1);
    assert_eq!(triv.orbits.len(), 1);
    let both = orbit_category_of(&free_plus_trivial(), 1);
    assert_eq!(both.orbits.len(), 2);
}

#[test]
fn fixed_points_through_orbit_points() {
    let x = free_plus_trivial();
    let e = orbit_category_of(&x, 0);
    let (d, homs) = orbit_point_diagram(&x, &e, 1);
    assert!(d.check().is_ok());
    let counts: Vec<usize> = homs.iter().map(|h| h.set().cell_count(0)).collect();
    // free orbit: underlying 3 vertices; trivial orbit: 1 fixed vertex
    let mut sorted = counts.clone();
    sorted.sort();
    assert_eq!(sorted, vec![1, 3]);
}

use std::sync::Arc;

use eqloc::diagram::ops::{colim, free_diagram, nerve, tensor};
use eqloc::diagram::{Diagram, SmallCategory};
use eqloc::simplicial::standard::{discrete, point, standard_simplex};
use eqloc::simplicial::{CellId, Simplex, SimplicialMap};

fn swap2() -> Diagram {
    let g = Arc::new(SmallCategory::cyclic_group(2));
    let x = Arc::new(discrete(["a", "b"]));
    let id = SimplicialMap::identity(x.clone());
    let sw = SimplicialMap::from_fn(x.clone(), x.clone(), |c| Simplex::of_cell(CellId::new(0, 1 - c.idx())));
    Diagram::new(g, vec![x], vec![id, sw]).unwrap()
}

#[test]
fn free_orbit_colim_is_point() {
    let c = colim(&swap2());
    assert_eq!(c.object.cell_counts(), vec![1]);
}

#[test]
fn nerve_of_z2() {
    let n = nerve(&SmallCategory::cyclic_group(2), 3);
    assert_eq!(n.cell_counts(), vec![1, 1, 1, 1]);
    assert!(n.validate().is_ok());
    let e = nerve(&SmallCategory::chaotic(3), 3);
    assert!(e.validate().is_ok());
    assert_eq!(e.cell_counts(), vec![3, 6, 12, 24]);
}

#[test]
fn tensor_with_interval() {
    let x = Arc::new(swap2());
    let t = tensor(&x, &Arc::new(standard_simplex(1)));
    assert!(t.diagram.check().is_ok());
    assert_eq!(t.diagram.at(0).cell_counts(), vec![4, 2]);
    assert_eq!(colim(&t.diagram).object.cell_counts(), vec![2, 1]);
    let p = tensor(&x, &Arc::new(point()));
    assert_eq!(p.diagram.at(0).cell_counts(), vec![2]);
}

#[test]
fn free_diagrams() {
    let arrow = Arc::new(SmallCategory::arrow());
    let f0 = free_diagram(&arrow, 0);
    assert!(f0.check().is_ok());
    assert_eq!(f0.at(0).cell_counts(), vec![1]);
    assert_eq!(f0.at(1).cell_counts(), vec![1]);
    let f1 = free_diagram(&arrow, 1);
    assert!(f1.at(0).is_empty());
}

#[test]
fn orbit_hom_complexes() {
    use eqloc::diagram::hom::{hom_complex, hom_d};
    let free = Arc::new(swap2());
    let triv = Arc::new(Diagram::point(free.shape().clone()));
    let h = hom_complex(&free, &free, 2);
    assert_eq!(h.set().cell_counts(), vec![2]);
    assert_eq!(hom_d(&free, &triv).len(), 1);
    assert_eq!(hom_d(&triv, &free).len(), 0);
    let empty = Arc::new(Diagram::empty(free.shape().clone()));
    let h0 = hom_complex(&empty, &free, 2);
    assert_eq!(h0.set().cell_counts(), vec![1]);
}

#[test]
fn diagram_cotensor() {
    use eqloc::diagram::hom::cotensor;
    let free = Arc::new(swap2());
    let c = cotensor(&free, &Arc::new(standard_simplex(1)), 1);
    assert!(c.diagram.check().is_ok());
    assert_eq!(c.diagram.at(0).cell_counts(), vec![2]);
}

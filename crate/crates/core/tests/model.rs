use std::sync::Arc;

use eqloc::catalog::{free_z2_orbit, trivial_z2_orbit, z2_collapse};
use eqloc::diagram::ops::{colim, nerve};
use eqloc::diagram::{Diagram, DiagramMap, SmallCategory};
use eqloc::model::{
    cone, cylinder, fibrant_replacement, is_kan, is_null_homotopic, is_weq_equivariant, is_weq_simplicial,
    left_properness_probe, null_factorization, pi0, pi_n, pi_n_checked, right_properness_probe, Verdict,
};
use eqloc::orbit::find_iso;
use eqloc::simplicial::limits::coproduct;
use eqloc::simplicial::standard::{boundary, discrete, point, standard_simplex};
use eqloc::simplicial::{CellId, Simplex, SimplicialMap, SimplicialSet};

fn single(x: SimplicialSet) -> Arc<Diagram> {
    Arc::new(Diagram::single(Arc::new(x)))
}

fn single_map(m: SimplicialMap) -> DiagramMap {
    let a = Arc::new(Diagram::single(m.source().clone()));
    let b = Arc::new(Diagram::single(m.target().clone()));
    DiagramMap::new(a, b, vec![m]).unwrap()
}

fn vertex_map(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>, v: usize) -> SimplicialMap {
    SimplicialMap::from_fn(x, y, move |c| {
        Simplex::of_cell(CellId::new(0, v)).degenerate(c.dim(), (1u32 << c.dim()) - 1)
    })
}

fn z2_nerve(cap: usize) -> Arc<SimplicialSet> {
    Arc::new(nerve(&SmallCategory::cyclic_group(2), cap))
}

#[test]
fn kan_examples() {
    assert!(is_kan(&Arc::new(point()), 3));
    assert!(!is_kan(&Arc::new(standard_simplex(1)), 2));
    assert!(is_kan(&z2_nerve(3), 2));
    assert!(!is_kan(&Arc::new(boundary(2)), 2));
}

#[test]
fn pi0_examples() {
    assert_eq!(pi0(&boundary(2)).0, 1);
    assert_eq!(pi0(&discrete(["a", "b"])).0, 2);
    assert_eq!(pi0(&point()).0, 1);
    assert_eq!(pi0(&SimplicialSet::empty()).0, 0);
}

#[test]
fn pi1_of_group_nerve_is_group_order() {
    for order in [1usize, 2, 3] {
        let x = Arc::new(nerve(&SmallCategory::cyclic_group(order), 3));
        let v = CellId::new(0, 0);
        assert_eq!(pi_n_checked(&x, v, 1).unwrap(), order);
        assert_eq!(pi_n(&x, v, 2), 1);
    }
    assert!(pi_n_checked(&Arc::new(boundary(2)), CellId::new(0, 0), 1).is_err());
}

#[test]
fn weq_examples() {
    let x = z2_nerve(3);
    assert_eq!(is_weq_simplicial(&SimplicialMap::identity(x.clone()), 1), Verdict::Yes);
    let pt = Arc::new(point());
    // Z/2 nerve -> point: same pi0, different pi1.
    assert_eq!(is_weq_simplicial(&SimplicialMap::to_point(x.clone(), pt.clone()), 1), Verdict::No);
    assert_eq!(is_weq_simplicial(&SimplicialMap::to_point(x, pt.clone()), 0), Verdict::Yes);

    let collapse = z2_collapse();
    assert_eq!(is_weq_equivariant(&collapse, &[trivial_z2_orbit()], 1), Verdict::No);
    assert_eq!(is_weq_equivariant(&DiagramMap::identity(free_z2_orbit()), &[free_z2_orbit(), trivial_z2_orbit()], 1), Verdict::Yes);
}

#[test]
fn weq_past_the_replacement_budget_is_unknown() {
    // A single loop: vertex bijection with the point, but horn filling fails and
    // the fibrant replacement does not settle within its budget.
    let mut b = SimplicialSet::builder();
    let v = b.add_vertex("v");
    b.add_cell("loop", vec![Simplex::of_cell(v), Simplex::of_cell(v)]);
    let circle = Arc::new(b.build_checked().unwrap());
    let f = SimplicialMap::to_point(circle, Arc::new(point()));
    assert_eq!(is_weq_simplicial(&f, 1), Verdict::Unknown);
}

#[test]
fn fibrant_replacement_of_kan_map_is_itself() {
    let x = z2_nerve(2);
    let rf = fibrant_replacement(&SimplicialMap::identity(x.clone()), 2, 3, 400).unwrap().unwrap();
    assert_eq!(rf.source().cell_counts(), x.cell_counts());
    assert!(rf.is_iso());
}

#[test]
fn cylinder_examples() {
    let empty = single(SimplicialSet::empty());
    let c = cylinder(&empty);
    assert!(c.tensored.diagram.is_empty());

    for a in [single(point()), single(standard_simplex(1)), free_z2_orbit()] {
        let c = cylinder(&a);
        assert!(c.i0.is_injective() && c.i1.is_injective());
        assert!(!c.i0.images_eq(&c.i1));
        c.i0.check().unwrap();
        c.i1.check().unwrap();
    }
}

#[test]
fn cone_of_point_is_interval() {
    let c = cone(&single(point())).unwrap();
    assert!(find_iso(c.object(), &single(standard_simplex(1))).is_some());
}

#[test]
fn cones_are_connected() {
    let sources = [
        single(discrete(["a", "b", "c"])),
        single(boundary(2)),
        free_z2_orbit(),
        trivial_z2_orbit(),
    ];
    for a in sources {
        let c = cone(&a).unwrap();
        assert_eq!(pi0(&colim(c.object()).object).0, 1);
        assert!(c.base.is_injective());
    }
}

#[test]
fn null_homotopy_examples() {
    let iv = Arc::new(standard_simplex(1));
    let pt = Arc::new(point());

    let constant = single_map(vertex_map(Arc::new(boundary(2)), iv.clone(), 1));
    assert!(is_null_homotopic(&constant).unwrap().is_some());

    let two = Arc::new(discrete(["a", "b"]));
    let id = single_map(SimplicialMap::identity(two));
    assert!(is_null_homotopic(&id).unwrap().is_none());

    for v in 0..2 {
        let f = single_map(vertex_map(pt.clone(), iv.clone(), v));
        let (base, h) = null_factorization(&f).unwrap().unwrap();
        assert!(base.then(&h).unwrap().images_eq(&f));
    }
}

#[test]
fn properness_examples() {
    let i = single_map(eqloc::simplicial::standard::boundary_inclusion(1));
    let id = DiagramMap::identity(i.source().clone());
    let orbits = [single(point())];
    assert_eq!(left_properness_probe(&i, &id, &orbits, 1).unwrap(), Verdict::Yes);

    // Pullback of an equivalence along a fibration of Kan complexes.
    let x = z2_nerve(3);
    let pt = Arc::new(point());
    let p = single_map(SimplicialMap::to_point(x.clone(), pt.clone()));
    let w = single_map(SimplicialMap::identity(pt));
    assert_eq!(right_properness_probe(&p, &w, &orbits, 1).unwrap(), Verdict::Yes);
}

#[test]
fn z2_free_cell_properness() {
    // Attach a free cell T ⊗ Δ¹ along T ⊗ ∂Δ¹ and push out along the end inclusion of a cylinder.
    let t = free_z2_orbit();
    let bd = Arc::new(boundary(1));
    let iv = Arc::new(standard_simplex(1));
    let tb = eqloc::diagram::ops::tensor(&t, &bd);
    let ti = eqloc::diagram::ops::tensor(&t, &iv);
    let i = eqloc::diagram::ops::tensor_map(&tb, &ti, &DiagramMap::identity(t.clone()), &eqloc::simplicial::standard::boundary_inclusion(1));
    let w = cylinder(&tb.diagram).i0;
    let orbits = [free_z2_orbit(), trivial_z2_orbit()];
    assert_eq!(left_properness_probe(&i, &w, &orbits, 0).unwrap(), Verdict::Yes);
}

#[test]
fn coproduct_of_points_is_two_components() {
    let x = coproduct(&[Arc::new(point()), Arc::new(point())]).object;
    assert_eq!(pi0(&x).0, 2);
}

use std::sync::Arc;
use std::time::Instant;

use eqloc::catalog::{free_plus_trivial, free_z2_orbit, trivial_z2_orbit, z2, z2_collapse};
use eqloc::diagram::{Diagram, DiagramMap, SmallCategory};
use eqloc::localization::{
    class_k, extend_to_local, fixed_point_locality_report, horns_of, is_s_equivalence, is_s_local, localize,
    HornMember, LocalizationSpec,
};
use eqloc::model::{is_fibrant_equivariant, pi0, Verdict};
use eqloc::simplicial::standard::{boundary_inclusion, discrete, point};
use eqloc::simplicial::{SimplicialMap, SimplicialSet};
use eqloc::soa::{arrows_isomorphic, setup_j, Member, Mode, SoaOptions, StopReason};

fn empty_to_point() -> LocalizationSpec {
    LocalizationSpec::FixedPointwise {
        label: "empty-to-point".into(),
        f: SimplicialMap::from_empty(Arc::new(point())),
    }
}

#[test]
fn fixed_pointwise_contractible() {
    let t0 = Instant::now();
    let x = free_plus_trivial();
    let spec = empty_to_point();
    let loc = localize(&x, &spec, 2, SoaOptions { max_stages: 3, mode: Mode::Default, max_cells: None }).unwrap();
    let l = loc.local_object();
    eprintln!("stages {} stop {:?} cells {:?} {:?}", loc.stages(), loc.factorization.stop, l.at(0).cell_counts(), t0.elapsed());
    assert_eq!(loc.factorization.stop, StopReason::Stabilized);
    let f = SimplicialMap::from_empty(Arc::new(point()));
    let rep = fixed_point_locality_report(l, Some(&f), &[free_z2_orbit(), trivial_z2_orbit()], 2).unwrap();
    eprintln!("{rep:?} {:?}", t0.elapsed());
    assert!(rep.iter().all(|r| r.pi0 == 1 && r.kan && r.local == Verdict::Yes));
    assert!(is_fibrant_equivariant(l, 2).unwrap());
    assert_eq!(is_s_local(l, &spec, 2).unwrap(), Verdict::Yes);
}

fn single(x: SimplicialSet) -> Arc<Diagram> {
    Arc::new(Diagram::single(Arc::new(x)))
}

fn single_map(m: SimplicialMap) -> DiagramMap {
    let a = Arc::new(Diagram::single(m.source().clone()));
    let b = Arc::new(Diagram::single(m.target().clone()));
    DiagramMap::new(a, b, vec![m]).unwrap()
}

fn cell_spec() -> LocalizationSpec {
    let f = DiagramMap::from_empty(single(point()));
    LocalizationSpec::Set(vec![Member { label: "cell".into(), n: 0, k: None, map: f }])
}

fn opts(stages: usize) -> SoaOptions {
    SoaOptions { max_stages: stages, mode: Mode::Default, max_cells: None }
}

#[test]
fn horns_of_cell_are_boundaries() {
    let horns = horns_of(&cell_spec(), 3).unwrap();
    assert_eq!(horns.len(), 4);
    for (label, n, h) in horns {
        let HornMember::Diagram(h) = h else { panic!("set spec gives diagram horns") };
        assert_eq!(label, format!("cell.bd{n}"));
        assert!(arrows_isomorphic(&h, &single_map(boundary_inclusion(n))), "n = {n}");
        for m in 0..=3 {
            if m != n {
                assert!(!arrows_isomorphic(&h, &single_map(boundary_inclusion(m))));
            }
        }
    }
    for (_, n, h) in horns_of(&empty_to_point(), 2).unwrap() {
        let HornMember::Simplicial(h) = h else { panic!("fixed-pointwise spec gives simplicial horns") };
        assert!(arrows_isomorphic(&single_map(h), &single_map(boundary_inclusion(n))));
    }
}

#[test]
fn zeroth_horn_is_the_generator() {
    let f = single_map(boundary_inclusion(1));
    let spec = LocalizationSpec::Set(vec![Member { label: "f".into(), n: 0, k: None, map: f.clone() }]);
    let (_, _, h) = horns_of(&spec, 0).unwrap().remove(0);
    let HornMember::Diagram(h) = h else { unreachable!() };
    assert!(arrows_isomorphic(&h, &f));
}

#[test]
fn class_k_components() {
    let shape = Arc::new(SmallCategory::terminal());
    let empty = class_k(&shape, &LocalizationSpec::Set(Vec::new()), 2).unwrap();
    let j = setup_j(&shape, 2);
    let x = single(discrete(["p", "q"]));
    let p = DiagramMap::to_point(x);
    assert_eq!(empty.assign(0, &p).unwrap().squares.len(), j.assign(0, &p).unwrap().squares.len());
    assert!(empty.assign(1, &p).unwrap().squares.is_empty());

    let k = class_k(&shape, &cell_spec(), 1).unwrap();
    assert_eq!(k.component_count(), 2);
    assert!(!k.assign(0, &p).unwrap().squares.is_empty());
    assert!(!k.assign(1, &p).unwrap().squares.is_empty());
}

#[test]
fn locality_examples() {
    let shape = Arc::new(SmallCategory::terminal());
    let pt = Arc::new(Diagram::point(shape));
    assert_eq!(is_s_local(&pt, &cell_spec(), 2).unwrap(), Verdict::Yes);
    let two = single(discrete(["p", "q"]));
    assert_eq!(is_s_local(&two, &cell_spec(), 2).unwrap(), Verdict::No);
}

#[test]
fn one_stage_connects_components() {
    let two = single(discrete(["p", "q"]));
    let loc = localize(&two, &cell_spec(), 1, opts(1)).unwrap();
    assert_eq!(loc.stages(), 1);
    assert_eq!(pi0(loc.local_object().at(0)).0, 1);
}

#[test]
fn local_objects_need_no_stage() {
    let pt = Arc::new(Diagram::point(z2()));
    let loc = localize(&pt, &empty_to_point(), 2, opts(3)).unwrap();
    assert_eq!(loc.stages(), 0);
    assert!(loc.unit().is_identity());
}

#[test]
fn free_orbit_gains_fixed_points() {
    let x = free_z2_orbit();
    let f = SimplicialMap::from_empty(Arc::new(point()));
    let before = fixed_point_locality_report(&x, Some(&f), &[trivial_z2_orbit()], 2).unwrap();
    assert_eq!(before[0].pi0, 0);
    assert_eq!(before[0].local, Verdict::No);
    let loc = localize(&x, &empty_to_point(), 2, opts(3)).unwrap();
    let after = fixed_point_locality_report(loc.local_object(), Some(&f), &[trivial_z2_orbit()], 2).unwrap();
    assert_eq!(after[0].pi0, 1);
}

#[test]
fn terminal_is_locally_trivial() {
    let pt = Arc::new(Diagram::point(z2()));
    let f = SimplicialMap::from_empty(Arc::new(point()));
    let r = fixed_point_locality_report(&pt, Some(&f), &[free_z2_orbit(), trivial_z2_orbit()], 2).unwrap();
    assert!(r.iter().all(|o| o.local == Verdict::Yes));
}

#[test]
fn s_equivalence_examples() {
    // With no generators the local objects are the fibrant ones; the swap orbit separates orbits.
    let probe = free_z2_orbit();
    assert_eq!(is_s_local(&probe, &LocalizationSpec::Set(Vec::new()), 2).unwrap(), Verdict::Yes);
    assert_eq!(is_s_equivalence(&z2_collapse(), &[probe.clone()], 1), Verdict::No);
    assert_eq!(is_s_equivalence(&DiagramMap::identity(free_z2_orbit()), &[probe], 1), Verdict::Yes);

    let two = single(discrete(["p", "q"]));
    let loc = localize(&two, &cell_spec(), 1, opts(1)).unwrap();
    let pt = Arc::new(Diagram::point(Arc::new(SmallCategory::terminal())));
    assert_eq!(is_s_equivalence(loc.unit(), &[pt], 1), Verdict::Yes);
}

#[test]
fn extensions_along_the_unit() {
    let two = single(discrete(["p", "q"]));
    let loc = localize(&two, &cell_spec(), 1, opts(1)).unwrap();
    let ext = extend_to_local(loc.unit(), &loc, None).unwrap();
    assert!(ext.lifts.iter().any(|l| l.is_identity()));
    assert!(ext.pairwise_homotopic());

    let to_pt = DiagramMap::to_point(two);
    let ext = extend_to_local(&to_pt, &loc, None).unwrap();
    assert_eq!(ext.lifts.len(), 1);
    assert!(ext.exhaustive);
}

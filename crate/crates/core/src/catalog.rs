//! Small named diagrams used by the examples, the CLI and the test suites.

use std::sync::Arc;

use crate::diagram::ops::{coproduct_d, nerve};
use crate::diagram::{Diagram, DiagramMap, SmallCategory};
use crate::simplicial::standard::{discrete, point};
use crate::simplicial::{CellId, Simplex, SimplicialMap, SimplicialSet};

pub fn z2() -> Arc<SmallCategory> {
    Arc::new(SmallCategory::cyclic_group(2))
}

/// A `Z/2`-diagram from a simplicial set and an involution on it.
pub fn z2_diagram(x: Arc<SimplicialSet>, involution: SimplicialMap) -> Diagram {
    Diagram::new(z2(), vec![x.clone()], vec![SimplicialMap::identity(x), involution])
        .expect("involution")
}

/// Two vertices swapped by the generator.
pub fn free_z2_orbit() -> Arc<Diagram> {
    let x = Arc::new(discrete(["a", "b"]));
    let sw = SimplicialMap::from_fn(x.clone(), x.clone(), |c| Simplex::of_cell(CellId::new(0, 1 - c.idx())));
    Arc::new(z2_diagram(x, sw))
}

/// The one-point diagram over `Z/2`.
pub fn trivial_z2_orbit() -> Arc<Diagram> {
    Arc::new(Diagram::point(z2()))
}

/// Free orbit ⊔ trivial orbit.
pub fn free_plus_trivial() -> Arc<Diagram> {
    let c = coproduct_d(&z2(), &[free_z2_orbit(), trivial_z2_orbit()]);
    c.object
}

/// The collapse of the free orbit onto the trivial orbit.
pub fn z2_collapse() -> DiagramMap {
    DiagramMap::to_point(free_z2_orbit())
}

/// Over the arrow category: `X -> Δ⁰`.
pub fn arrow_to_point(x: Arc<SimplicialSet>) -> Arc<Diagram> {
    let pt = Arc::new(point());
    let cat = Arc::new(SmallCategory::arrow());
    let to = SimplicialMap::to_point(x.clone(), pt.clone());
    Arc::new(
        Diagram::new(
            cat,
            vec![x.clone(), pt.clone()],
            vec![SimplicialMap::identity(x), SimplicialMap::identity(pt), to],
        )
        .expect("arrow diagram"),
    )
}

/// `sk_cap` of the nerve of the chaotic groupoid on `{0,1,2,3}` with the
/// involution fixing 0 and 1 and swapping 2 and 3.
pub fn chaotic_z2(cap: usize) -> Arc<Diagram> {
    let cat = SmallCategory::chaotic(4);
    let e = Arc::new(nerve(&cat, cap));
    let swap = |v: usize| match v {
        2 => 3,
        3 => 2,
        v => v,
    };
    let e2 = e.clone();
    let inv = SimplicialMap::from_fn(e.clone(), e.clone(), move |c| {
        let name = e2.name(c);
        let mapped = if c.dim() == 0 {
            swap(name.parse().unwrap()).to_string()
        } else {
            name.split(',')
                .map(|m| {
                    let b = m.as_bytes();
                    let s = swap((b[0] - b'0') as usize);
                    let t = swap((b[1] - b'0') as usize);
                    format!("{s}{t}")
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        Simplex::of_cell(e2.find(&mapped).expect("nerve cell"))
    });
    Arc::new(z2_diagram(e, inv))
}

/// A simplicial set with a single vertex.
pub fn one_point() -> Arc<SimplicialSet> {
    Arc::new(point())
}

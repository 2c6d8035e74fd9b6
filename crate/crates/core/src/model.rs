//! Homotopy-theoretic predicates: Kan conditions, homotopy groups,
//! weak-equivalence probes, cylinders, cones and properness probes.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::diagram::hom::hom_complex;
use crate::diagram::ops::{free_diagram, pullback_d, pushout_d, tensor, tensor_map, DiagramColimit, Tensored};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::orbit::{find_iso, orbit_category_of};
use crate::simplicial::standard::{horn_inclusion, point, standard_simplex};
use crate::simplicial::{CellId, MapSearch, Simplex, SimplicialMap, SimplicialSet};
use crate::soa::{setup_j, small_object_argument, soa_functorial, Mode, SoaOptions, StopReason};

/// Three-valued verdict for properties only decidable up to the configured caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// A horn without a filler.
#[derive(Clone, Debug)]
pub struct HornFailure {
    pub n: usize,
    pub k: usize,
    pub horn: SimplicialMap,
}

/// Checks horn filling for `1 ≤ n ≤ n_cap`; returns the first unfillable horn.
pub fn kan_failure(x: &Arc<SimplicialSet>, n_cap: usize) -> Option<HornFailure> {
    for n in 1..=n_cap {
        for k in 0..=n {
            let i = horn_inclusion(n, k).expect("valid horn");
            let horns = MapSearch::single(i.source().clone(), x.clone()).collect(None).0;
            for mut h in horns {
                let h = h.remove(0);
                let filled = MapSearch::single(i.target().clone(), x.clone()).prescribe(0, &i, &h).first();
                if filled.is_none() {
                    return Some(HornFailure { n, k, horn: h });
                }
            }
        }
    }
    None
}

pub fn is_kan(x: &Arc<SimplicialSet>, n_cap: usize) -> bool {
    kan_failure(x, n_cap).is_none()
}

/// Connected components: the component index of every vertex and the count.
pub fn pi0(x: &SimplicialSet) -> (usize, Vec<usize>) {
    let n = x.cell_count(0);
    let mut uf = UnionFind::<usize>::new(n);
    for e in x.cells(1) {
        let a = x.face(Simplex::of_cell(e), 1).cell().idx();
        let b = x.face(Simplex::of_cell(e), 0).cell().idx();
        uf.union(a, b);
    }
    let labels = uf.into_labeling();
    let mut renum: HashMap<usize, usize> = HashMap::new();
    let comps: Vec<usize> = labels
        .iter()
        .map(|l| {
            let k = renum.len();
            *renum.entry(*l).or_insert(k)
        })
        .collect();
    (renum.len(), comps)
}

/// `|πₙ(X, v)|` for `n ≥ 1`, computed combinatorially (meaningful when `X` is Kan up to `n + 1`).
pub fn pi_n(x: &SimplicialSet, v: CellId, n: usize) -> usize {
    assert!(n >= 1, "use pi0 for n = 0");
    let base = |d: usize| Simplex::of_cell(v).degenerate(d, crate::simplicial::map::full_mask(d));
    let spheres: Vec<Simplex> = x
        .simplices(n)
        .into_iter()
        .filter(|s| (0..=n).all(|i| x.face(*s, i) == base(n - 1)))
        .collect();
    let index: HashMap<Simplex, usize> = spheres.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut uf = UnionFind::<usize>::new(spheres.len());
    for z in x.simplices(n + 1) {
        if (0..n).any(|i| x.face(z, i) != base(n)) {
            continue;
        }
        if let (Some(&a), Some(&b)) = (index.get(&x.face(z, n)), index.get(&x.face(z, n + 1))) {
            uf.union(a, b);
        }
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}

/// Stage budget of the fibrant replacement used by weak-equivalence probes.
pub const REPLACEMENT_STAGES: usize = 3;
/// Cell budget of the fibrant replacement used by weak-equivalence probes.
pub const REPLACEMENT_CELLS: usize = 400;

/// `Rf: RX -> RY` from the `J` small object argument on `X -> *` and `Y -> *`,
/// horns up to `n_cap`; `None` when either run stops on its budget.
pub fn fibrant_replacement(f: &SimplicialMap, n_cap: usize, stages: usize, max_cells: usize) -> Result<Option<SimplicialMap>> {
    let x = Arc::new(Diagram::single(f.source().clone()));
    let y = Arc::new(Diagram::single(f.target().clone()));
    let fd = DiagramMap::new(x.clone(), y.clone(), vec![f.clone()])?;
    let inst = setup_j(x.shape(), n_cap);
    let opts = SoaOptions { max_stages: stages, mode: Mode::Default, max_cells: Some(max_cells) };
    let run1 = small_object_argument(&inst, &DiagramMap::to_point(x), opts)?;
    if run1.stop == StopReason::Budget {
        return Ok(None);
    }
    let run2 = small_object_argument(&inst, &DiagramMap::to_point(y), opts)?;
    if run2.stop == StopReason::Budget {
        return Ok(None);
    }
    let (p1, p2) = (run1.input.target().clone(), run2.input.target().clone());
    let b = DiagramMap::new(p1.clone(), p2.clone(), vec![SimplicialMap::to_point(p1.at(0).clone(), p2.at(0).clone())])?;
    let xi = soa_functorial(&inst, &run1, &run2, &fd, &b)?;
    Ok(Some(xi.component(0).clone()))
}

fn weq_on_kan(f: &SimplicialMap, n_cap: usize) -> Verdict {
    let x = f.source();
    let y = f.target();
    let (cx, lx) = pi0(x);
    let mut seen = vec![false; cx];
    for v in x.cells(0) {
        if std::mem::replace(&mut seen[lx[v.idx()]], true) {
            continue;
        }
        let w = f.image_of_cell(v).cell();
        for n in 1..=n_cap {
            if pi_n(x, v, n) != pi_n(y, w, n) {
                return Verdict::No;
            }
        }
    }
    Verdict::Yes
}

/// `|πₙ(X, v)|`, rejecting inputs that are not Kan up to `n + 1`.
pub fn pi_n_checked(x: &Arc<SimplicialSet>, v: CellId, n: usize) -> Result<usize> {
    if kan_failure(x, n + 1).is_some() {
        return Err(Error::NotKan(n + 1));
    }
    Ok(pi_n(x, v, n))
}

/// Whether a simplicial map induces a bijection on `π₀` and matching `πₙ` counts (`n ≤ n_cap`).
///
/// Non-Kan ends are replaced through the `J` small object argument first; the
/// verdict is `Unknown` when that replacement exceeds its budget.
pub fn is_weq_simplicial(f: &SimplicialMap, n_cap: usize) -> Verdict {
    if f.is_iso() {
        return Verdict::Yes;
    }
    let x = f.source();
    let y = f.target();
    let (cx, _) = pi0(x);
    let (cy, ly) = pi0(y);
    if cx != cy {
        return Verdict::No;
    }
    let mut hit = vec![false; cy];
    for v in x.cells(0) {
        hit[ly[f.image_of_cell(v).cell().idx()]] = true;
    }
    if hit.iter().any(|h| !h) {
        return Verdict::No;
    }
    if n_cap == 0 {
        return Verdict::Yes;
    }
    if is_kan(x, n_cap + 1) && is_kan(y, n_cap + 1) {
        return weq_on_kan(f, n_cap);
    }
    match fibrant_replacement(f, n_cap + 1, REPLACEMENT_STAGES, REPLACEMENT_CELLS) {
        Ok(Some(rf)) => weq_on_kan(&rf, n_cap),
        _ => Verdict::Unknown,
    }
}

/// The orbits used to probe equivariant properties of diagrams over `x`'s shape.
pub fn probe_orbits(xs: &[&Arc<Diagram>], level_cap: usize) -> Vec<Arc<Diagram>> {
    let shape = xs[0].shape().clone();
    let mut out: Vec<Arc<Diagram>> = Vec::new();
    let mut push = |t: Arc<Diagram>| {
        if !out.iter().any(|s| find_iso(s, &t).is_some()) {
            out.push(t);
        }
    };
    for d in 0..shape.object_count() {
        push(Arc::new(free_diagram(&shape, d)));
    }
    push(Arc::new(Diagram::point(shape.clone())));
    for x in xs {
        for t in orbit_category_of(x, level_cap).orbits {
            push(t);
        }
    }
    out
}

/// The map `hom(T, X) -> hom(T, Y)` induced by postcomposition.
pub fn fixed_point_map(t: &Arc<Diagram>, f: &DiagramMap, cap: usize) -> SimplicialMap {
    let hx = hom_complex(t, f.source(), cap);
    let hy = hom_complex(t, f.target(), cap);
    SimplicialMap::from_fn(hx.set().clone(), hy.set().clone(), |c| {
        let m = hx.map_of_cell(c).then_unchecked(f);
        let e: Vec<_> = m.components().iter().map(|c| c.images().clone()).collect();
        hy.realized.simplex_of(c.dim(), &e).expect("postcomposed map is a simplex of the target")
    })
}

/// Equivariant weak equivalence: weak equivalence on `hom(T, -)` for every probe orbit.
pub fn is_weq_equivariant(f: &DiagramMap, orbits: &[Arc<Diagram>], n_cap: usize) -> Verdict {
    let mut verdict = Verdict::Yes;
    for t in orbits {
        match is_weq_simplicial(&fixed_point_map(t, f, n_cap + 1), n_cap) {
            Verdict::No => return Verdict::No,
            Verdict::Unknown => verdict = Verdict::Unknown,
            Verdict::Yes => {}
        }
    }
    verdict
}

/// Fibration test: every orbit-horn square into `p` lifts (`n ≤ n_cap`).
pub fn is_fibration_equivariant(p: &DiagramMap, n_cap: usize) -> Result<bool> {
    let j = setup_j(p.source().shape(), n_cap);
    let a = j.assign(0, p)?;
    Ok(a.squares.iter().all(|s| s.lift().is_some()))
}

pub fn is_fibrant_equivariant(x: &Arc<Diagram>, n_cap: usize) -> Result<bool> {
    is_fibration_equivariant(&DiagramMap::to_point(x.clone()), n_cap)
}

/// `A ⊗ Δ¹` with its two ends.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub tensored: Tensored,
    pub i0: DiagramMap,
    pub i1: DiagramMap,
}

pub fn cylinder(a: &Arc<Diagram>) -> Cylinder {
    let t = tensor(a, &Arc::new(standard_simplex(1)));
    let t0 = tensor(a, &Arc::new(point()));
    let id = DiagramMap::identity(a.clone());
    let ends: Vec<DiagramMap> = (0..2)
        .map(|v| {
            let pt = t0.parts[0].proj_y.target().clone();
            let end = SimplicialMap::from_fn(pt, t.factor.clone(), |_| Simplex::of_cell(CellId::new(0, v)));
            let back = DiagramMap::from_parts(a.clone(), t0.diagram.clone(), {
                (0..a.objects().len())
                    .map(|o| {
                        let ps = &t0.parts[o];
                        let x = a.at(o);
                        SimplicialMap::from_fn(x.clone(), ps.object.clone(), |c| {
                            let top = Simplex::of_cell(CellId::new(0, 0));
                            let k = top.degenerate(c.dim(), crate::simplicial::map::full_mask(c.dim()));
                            ps.pair_simplex(Simplex::of_cell(c), k).expect("pair with the point")
                        })
                    })
                    .collect()
            });
            back.then_unchecked(&tensor_map(&t0, &t, &id, &end))
        })
        .collect();
    let mut ends = ends.into_iter();
    Cylinder { i0: ends.next().unwrap(), i1: ends.next().unwrap(), tensored: t }
}

/// The cone `pt ⊔_A (A ⊗ Δ¹)`, glued at the end `1`; `base` is the end `0`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub cylinder: Cylinder,
    pub pushout: DiagramColimit,
    pub base: DiagramMap,
}

impl Cone {
    pub fn object(&self) -> &Arc<Diagram> {
        &self.pushout.object
    }
}

pub fn cone(a: &Arc<Diagram>) -> Result<Cone> {
    let cyl = cylinder(a);
    let collapse = DiagramMap::to_point(a.clone());
    let po = pushout_d(&collapse, &cyl.i1)?;
    let base = cyl.i0.then_unchecked(&po.legs[1]);
    Ok(Cone { cylinder: cyl, pushout: po, base })
}

/// A null-homotopy of `f: A -> X`, presented as an extension `C(A) -> X` along the base.
pub fn is_null_homotopic(f: &DiagramMap) -> Result<Option<DiagramMap>> {
    let c = cone(f.source())?;
    let x = f.target();
    let mut s = crate::diagram::hom::diagram_search(c.object(), x);
    for o in 0..x.objects().len() {
        s = s.prescribe(o, c.base.component(o), f.component(o));
    }
    Ok(s.first().map(|comps| DiagramMap::from_parts(c.object().clone(), x.clone(), comps)))
}

/// `f = h ∘ base` through the cone, when `f` is null-homotopic.
pub fn null_factorization(f: &DiagramMap) -> Result<Option<(DiagramMap, DiagramMap)>> {
    let c = cone(f.source())?;
    Ok(is_null_homotopic(f)?.map(|h| (c.base, h)))
}

/// Left properness probe: for a cofibration `i: A -> B` and a weak equivalence
/// `w: A -> A'`, whether `B -> B ⊔_A A'` is a weak equivalence.
pub fn left_properness_probe(i: &DiagramMap, w: &DiagramMap, orbits: &[Arc<Diagram>], n_cap: usize) -> Result<Verdict> {
    let po = pushout_d(w, i)?;
    Ok(is_weq_equivariant(&po.legs[1], orbits, n_cap))
}

/// Right properness probe: for a fibration `p: E -> B` and a weak equivalence
/// `w: B' -> B`, whether `E ×_B B' -> E` is a weak equivalence.
pub fn right_properness_probe(p: &DiagramMap, w: &DiagramMap, orbits: &[Arc<Diagram>], n_cap: usize) -> Result<Verdict> {
    let pb = pullback_d(p, w)?;
    Ok(is_weq_equivariant(&pb.proj_x, orbits, n_cap))
}

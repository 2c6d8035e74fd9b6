//! Localization of diagrams with respect to a set of maps or a fixed-pointwise class.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::diagram::hom::{diagram_search, hom_complex};
use crate::diagram::ops::{pushout_d, tensor, tensor_map};
use crate::diagram::{Diagram, DiagramMap, SmallCategory};
use crate::error::{Error, Result};
use crate::model::{is_kan, is_weq_simplicial, pi0, Verdict};
use crate::simplicial::standard::{boundary_inclusion, standard_simplex};
use crate::simplicial::{CellId, SimplicialMap};
use crate::soa::setup::{Component, ComponentKind, SimplicialArrow};
use crate::soa::{
    lifts_in, setup_from_set, setup_j, setup_union, small_object_argument, Factorization, Instrumentation, Member,
    SoaOptions,
};

/// What is being inverted.
#[derive(Clone, Debug)]
pub enum LocalizationSpec {
    /// A set of maps of diagrams.
    Set(Vec<Member>),
    /// A simplicial map `f`, inverted on the fixed points of every orbit (`{f ⊗ T}`).
    FixedPointwise { label: String, f: SimplicialMap },
}

impl LocalizationSpec {
    pub fn label(&self) -> String {
        match self {
            LocalizationSpec::Set(ms) => ms.iter().map(|m| m.label.as_str()).collect::<Vec<_>>().join("+"),
            LocalizationSpec::FixedPointwise { label, .. } => label.clone(),
        }
    }
}

/// The pushout-product `f □ (∂Δⁿ ⊂ Δⁿ)` of a map of diagrams.
pub fn pushout_product_d(f: &DiagramMap, n: usize) -> Result<DiagramMap> {
    let j = boundary_inclusion(n);
    let bd = j.source().clone();
    let full = j.target().clone();
    let a_bd = tensor(f.source(), &bd);
    let a_full = tensor(f.source(), &full);
    let b_bd = tensor(f.target(), &bd);
    let b_full = tensor(f.target(), &full);
    let ida = DiagramMap::identity(f.source().clone());
    let idb = DiagramMap::identity(f.target().clone());
    let id_bd = SimplicialMap::identity(bd.clone());
    let id_full = SimplicialMap::identity(full.clone());
    let a_j = tensor_map(&a_bd, &a_full, &ida, &j);
    let f_bd = tensor_map(&a_bd, &b_bd, f, &id_bd);
    let po = pushout_d(&f_bd, &a_j)?;
    let b_j = tensor_map(&b_bd, &b_full, &idb, &j);
    let f_full = tensor_map(&a_full, &b_full, f, &id_full);
    po.induced(&[b_j, f_full])
}

/// `f □ (∂Δⁿ ⊂ Δⁿ)` for a simplicial map.
pub fn pushout_product(f: &SimplicialMap, n: usize) -> Result<SimplicialMap> {
    let a = Arc::new(Diagram::single(f.source().clone()));
    let b = Arc::new(Diagram::single(f.target().clone()));
    let d = DiagramMap::new(a, b, vec![f.clone()])?;
    Ok(pushout_product_d(&d, n)?.component(0).clone())
}

/// `Hor(S)` truncated at `n ≤ n_cap`, as labelled simplicial or diagram maps.
pub fn horns_of(spec: &LocalizationSpec, n_cap: usize) -> Result<Vec<(String, usize, HornMember)>> {
    let mut out = Vec::new();
    for n in 0..=n_cap {
        match spec {
            LocalizationSpec::Set(ms) => {
                for m in ms {
                    out.push((format!("{}.bd{n}", m.label), n, HornMember::Diagram(pushout_product_d(&m.map, n)?)));
                }
            }
            LocalizationSpec::FixedPointwise { label, f } => {
                out.push((format!("{label}.bd{n}"), n, HornMember::Simplicial(pushout_product(f, n)?)));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum HornMember {
    Simplicial(SimplicialMap),
    Diagram(DiagramMap),
}

/// The instrumentation of `Hor(S)` over a shape.
pub fn hor_instrumentation(shape: &Arc<SmallCategory>, spec: &LocalizationSpec, n_cap: usize) -> Result<Instrumentation> {
    let horns = horns_of(spec, n_cap)?;
    match spec {
        LocalizationSpec::Set(_) => {
            let members = horns
                .into_iter()
                .map(|(label, n, h)| match h {
                    HornMember::Diagram(map) => Ok(Member { label, n, k: None, map }),
                    HornMember::Simplicial(_) => Err(Error::Generator("simplicial horn in a set spec".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            setup_from_set(shape, "Hor", members)
        }
        LocalizationSpec::FixedPointwise { .. } => {
            let w_cap = if shape.is_groupoid() { 0 } else { n_cap };
            let arrows = horns
                .into_iter()
                .map(|(label, n, h)| match h {
                    HornMember::Simplicial(map) => Ok(SimplicialArrow::new(label, n, None, map, w_cap)),
                    HornMember::Diagram(_) => Err(Error::Generator("diagram horn in a fixed-pointwise spec".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Instrumentation {
                shape: shape.clone(),
                components: vec![Component { name: "Hor".into(), kind: ComponentKind::OrbitTensor(arrows) }],
                w_cap,
            })
        }
    }
}

/// `K = J ∪ Hor(S)`, attached in this order within each stage.
pub fn class_k(shape: &Arc<SmallCategory>, spec: &LocalizationSpec, n_cap: usize) -> Result<Instrumentation> {
    setup_union(&[setup_j(shape, n_cap), hor_instrumentation(shape, spec, n_cap)?])
}

/// `X -> L_S X` from the small object argument on `X -> *` with the class `K`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub factorization: Factorization,
    pub class: Instrumentation,
    pub n_cap: usize,
}

impl Localization {
    pub fn local_object(&self) -> &Arc<Diagram> {
        self.factorization.middle()
    }

    pub fn unit(&self) -> &DiagramMap {
        &self.factorization.gamma
    }

    pub fn stages(&self) -> usize {
        self.factorization.attaching_stages()
    }
}

pub fn localize(x: &Arc<Diagram>, spec: &LocalizationSpec, n_cap: usize, opts: SoaOptions) -> Result<Localization> {
    let class = class_k(x.shape(), spec, n_cap)?;
    let factorization = small_object_argument(&class, &DiagramMap::to_point(x.clone()), opts)?;
    Ok(Localization { factorization, class, n_cap })
}

/// `X` is fibrant and has the right lifting property against `Hor(S)` (up to `n_cap`).
///
/// `Unknown` when every square lifts but some assignment was truncated.
pub fn is_s_local(x: &Arc<Diagram>, spec: &LocalizationSpec, n_cap: usize) -> Result<Verdict> {
    let class = class_k(x.shape(), spec, n_cap)?;
    let p = DiagramMap::to_point(x.clone());
    let mut truncated = false;
    for c in 0..class.component_count() {
        let a = class.assign(c, &p)?;
        if !a.squares.iter().all(|s| s.lift().is_some()) {
            return Ok(Verdict::No);
        }
        truncated |= a.truncated;
    }
    Ok(if truncated { Verdict::Unknown } else { Verdict::Yes })
}

/// `hom(B, W) -> hom(A, W)` by precomposition, truncated at `cap`.
pub fn precomposition_map(f: &DiagramMap, w: &Arc<Diagram>, cap: usize) -> SimplicialMap {
    let hb = hom_complex(f.target(), w, cap);
    let ha = hom_complex(f.source(), w, cap);
    let fs: Vec<DiagramMap> = (0..=cap)
        .map(|n| tensor_map(&ha.tensors[n], &hb.tensors[n], f, &SimplicialMap::identity(Arc::new(standard_simplex(n)))))
        .collect();
    SimplicialMap::from_fn(hb.set().clone(), ha.set().clone(), |c| {
        let m = fs[c.dim()].then_unchecked(&hb.map_of_cell(c));
        let e: Vec<_> = m.components().iter().map(|c| c.images().clone()).collect();
        ha.realized.simplex_of(c.dim(), &e).expect("precomposed map is a simplex")
    })
}

/// `f` is seen as an equivalence by each of the given `S`-local objects.
pub fn is_s_equivalence(f: &DiagramMap, locals: &[Arc<Diagram>], n_cap: usize) -> Verdict {
    let mut verdict = Verdict::Yes;
    for w in locals {
        match is_weq_simplicial(&precomposition_map(f, w, n_cap + 1), n_cap) {
            Verdict::No => return Verdict::No,
            Verdict::Unknown => verdict = Verdict::Unknown,
            Verdict::Yes => {}
        }
    }
    verdict
}

/// Extensions of `g: X -> P` along the localization unit, grouped by simplicial homotopy.
#[derive(Clone, Debug)]
pub struct Extension {
    pub lifts: Vec<DiagramMap>,
    pub exhaustive: bool,
    /// Homotopy class of each lift (by index of its representative).
    pub classes: Vec<usize>,
    pub class_count: usize,
}

impl Extension {
    pub fn pairwise_homotopic(&self) -> bool {
        self.class_count <= 1
    }
}

/// A homotopy `H: L ⊗ Δ¹ -> P` from `h0` to `h1`, if one exists.
pub fn find_homotopy(h0: &DiagramMap, h1: &DiagramMap) -> Option<DiagramMap> {
    let l = h0.source();
    let p = h0.target();
    let j = boundary_inclusion(1);
    let t_bd = tensor(l, j.source());
    let t_full = tensor(l, j.target());
    let inc = tensor_map(&t_bd, &t_full, &DiagramMap::identity(l.clone()), &j);
    let comps: Vec<SimplicialMap> = (0..l.objects().len())
        .map(|o| {
            let part = &t_bd.parts[o];
            SimplicialMap::from_fn(part.object.clone(), p.at(o).clone(), |c| {
                let x = part.proj_x.image_of_cell(c);
                let end = part.proj_y.image_of_cell(c).cell();
                let h = if end == CellId::new(0, 0) { h0 } else { h1 };
                h.component(o).image(x)
            })
        })
        .collect();
    let mut s = diagram_search(&t_full.diagram, p);
    for (o, u) in comps.iter().enumerate() {
        s = s.prescribe(o, inc.component(o), u);
    }
    s.first().map(|c| DiagramMap::from_parts(t_full.diagram.clone(), p.clone(), c))
}

/// Lifts in the square `(γ: X -> L, P -> *)` with top `g`, up to `limit`, and their homotopy classes.
pub fn extend_to_local(g: &DiagramMap, loc: &Localization, limit: Option<usize>) -> Result<Extension> {
    let gamma = loc.unit();
    if g.source().as_ref() != gamma.source().as_ref() {
        return Err(Error::Incompatible("g does not start at the localized diagram".into()));
    }
    let p = DiagramMap::to_point(g.target().clone());
    let l_pt = DiagramMap::to_point(gamma.target().clone());
    let (lifts, exhaustive) = lifts_in(gamma, &p, g, &l_pt, limit);
    let mut uf = UnionFind::<usize>::new(lifts.len());
    for a in 0..lifts.len() {
        for b in a + 1..lifts.len() {
            if uf.equiv(a, b) {
                continue;
            }
            if find_homotopy(&lifts[a], &lifts[b]).is_some() || find_homotopy(&lifts[b], &lifts[a]).is_some() {
                uf.union(a, b);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut reps: Vec<usize> = labels.clone();
    reps.sort_unstable();
    reps.dedup();
    Ok(Extension { class_count: reps.len(), classes: labels, lifts, exhaustive })
}

/// Per-orbit report on the fixed-point complexes `hom(T, Z)`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitLocality {
    pub orbit: usize,
    pub cells: Vec<Vec<usize>>,
    pub pi0: usize,
    pub kan: bool,
    /// `hom(T, Z)` is Kan and `f` induces an equivalence on it (when `f` is given).
    pub local: Verdict,
    pub fixed_point_cells: Vec<usize>,
    pub n_cap: usize,
    pub truncated: bool,
}

/// For each orbit `T`: whether `hom(T, Z)` is a Kan complex that is `f`-local, up to `n_cap`.
pub fn fixed_point_locality_report(
    z: &Arc<Diagram>,
    f: Option<&SimplicialMap>,
    orbits: &[Arc<Diagram>],
    n_cap: usize,
) -> Result<Vec<OrbitLocality>> {
    orbits
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let h = hom_complex(t, z, n_cap);
            let kan = is_kan(h.set(), n_cap);
            let local = match (kan, f) {
                (false, _) => Verdict::No,
                (true, None) => Verdict::Yes,
                (true, Some(f)) => {
                    let a = Arc::new(Diagram::single(f.source().clone()));
                    let b = Arc::new(Diagram::single(f.target().clone()));
                    let fd = DiagramMap::new(a, b, vec![f.clone()])?;
                    let k = Arc::new(Diagram::single(h.set().clone()));
                    is_weq_simplicial(&precomposition_map(&fd, &k, n_cap), n_cap.saturating_sub(1))
                }
            };
            Ok(OrbitLocality {
                orbit: i,
                cells: t.objects().iter().map(|o| o.cell_counts()).collect(),
                pi0: pi0(h.set()).0,
                kan,
                local,
                fixed_point_cells: h.set().cell_counts(),
                n_cap,
                truncated: h.truncated(),
            })
        })
        .collect()
}

//! Instrumentations: classes of maps together with a functorial choice of
//! squares into every arrow.

use std::sync::Arc;

use serde::Serialize;

use super::square::{squares_between, Square, Witness};
use crate::diagram::hom::{arrow_mapping_d, LevelDiagram};
use crate::diagram::ops::{tensor, tensor_map, Tensored};
use crate::diagram::{DiagramMap, SmallCategory};
use crate::error::{Error, Result};
use crate::orbit::{orbit_naturality, orbit_setup, OrbitSetup};
use crate::simplicial::hom::{postcompose_images, Images, PairElem, SimplexProducts};
use crate::simplicial::standard::{boundary_inclusion, horn_inclusion};
use crate::simplicial::{CellId, Simplex, SimplicialMap};

/// A simplicial arrow `K -> L`, tensored with orbits to produce class members.
#[derive(Clone, Debug)]
pub struct SimplicialArrow {
    pub label: String,
    pub n: usize,
    pub k: Option<usize>,
    pub map: SimplicialMap,
    k_prods: SimplexProducts,
    l_prods: SimplexProducts,
}

impl SimplicialArrow {
    pub fn new(label: impl Into<String>, n: usize, k: Option<usize>, map: SimplicialMap, w_cap: usize) -> Self {
        let k_prods = SimplexProducts::new(map.source(), w_cap);
        let l_prods = SimplexProducts::new(map.target(), w_cap);
        SimplicialArrow { label: label.into(), n, k, map, k_prods, l_prods }
    }
}

/// A member of a set-based class.
#[derive(Clone, Debug)]
pub struct Member {
    pub label: String,
    pub n: usize,
    pub k: Option<usize>,
    pub map: DiagramMap,
}

#[derive(Clone, Debug)]
pub enum ComponentKind {
    /// Squares are all commutative squares from each member.
    Set(Vec<Member>),
    /// Squares are indexed by the orbits of the diagrams of squares `W_{i,g}`.
    OrbitTensor(Vec<SimplicialArrow>),
}

#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
}

/// An ordered union of components over a fixed shape.
#[derive(Clone, Debug)]
pub struct Instrumentation {
    pub shape: Arc<SmallCategory>,
    pub components: Vec<Component>,
    /// Level cap for the diagrams of squares; zero for groupoid shapes.
    pub w_cap: usize,
}

/// Summary of a component for traces and reports.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub name: String,
    pub kind: String,
    pub members: Vec<String>,
}

fn w_cap_for(shape: &SmallCategory, n_cap: usize) -> usize {
    if shape.is_groupoid() {
        0
    } else {
        n_cap
    }
}

/// `I`: the orbit tensors `T ⊗ (∂Δⁿ ⊂ Δⁿ)` for `n ≤ n_cap`.
pub fn setup_i(shape: &Arc<SmallCategory>, n_cap: usize) -> Instrumentation {
    let w_cap = w_cap_for(shape, n_cap);
    let arrows = (0..=n_cap)
        .map(|n| SimplicialArrow::new(format!("bd{n}"), n, None, boundary_inclusion(n), w_cap))
        .collect();
    Instrumentation {
        shape: shape.clone(),
        components: vec![Component { name: "I".into(), kind: ComponentKind::OrbitTensor(arrows) }],
        w_cap,
    }
}

/// `J`: the orbit tensors `T ⊗ (Λⁿ_k ⊂ Δⁿ)` for `1 ≤ n ≤ n_cap`.
pub fn setup_j(shape: &Arc<SmallCategory>, n_cap: usize) -> Instrumentation {
    let w_cap = w_cap_for(shape, n_cap);
    let mut arrows = Vec::new();
    for n in 1..=n_cap {
        for k in 0..=n {
            let m = horn_inclusion(n, k).expect("valid horn");
            arrows.push(SimplicialArrow::new(format!("horn{n}_{k}"), n, Some(k), m, w_cap));
        }
    }
    Instrumentation {
        shape: shape.clone(),
        components: vec![Component { name: "J".into(), kind: ComponentKind::OrbitTensor(arrows) }],
        w_cap,
    }
}

/// A set-based class with all commutative squares as its assignment.
pub fn setup_from_set(shape: &Arc<SmallCategory>, name: &str, members: Vec<Member>) -> Result<Instrumentation> {
    for m in &members {
        if m.map.source().shape() != shape {
            return Err(Error::Shape(format!("member {} has a different shape", m.label)));
        }
    }
    Ok(Instrumentation {
        shape: shape.clone(),
        components: vec![Component { name: name.into(), kind: ComponentKind::Set(members) }],
        w_cap: 0,
    })
}

/// Ordered union; component names and member labels must be disjoint.
pub fn setup_union(parts: &[Instrumentation]) -> Result<Instrumentation> {
    let first = parts.first().ok_or_else(|| Error::Generator("empty union".into()))?;
    let mut components: Vec<Component> = Vec::new();
    let mut labels = std::collections::HashSet::new();
    for p in parts {
        if p.shape != first.shape {
            return Err(Error::Shape("union of instrumentations over different shapes".into()));
        }
        for c in &p.components {
            if components.iter().any(|d| d.name == c.name) {
                return Err(Error::Overlap(format!("component {} occurs twice", c.name)));
            }
            for l in c.labels() {
                if !labels.insert(l.clone()) {
                    return Err(Error::Overlap(format!("member {l} occurs in two components")));
                }
            }
            components.push(c.clone());
        }
    }
    Ok(Instrumentation {
        shape: first.shape.clone(),
        components,
        w_cap: parts.iter().map(|p| p.w_cap).max().unwrap_or(0),
    })
}

impl Component {
    pub fn labels(&self) -> Vec<String> {
        match &self.kind {
            ComponentKind::Set(ms) => ms.iter().map(|m| m.label.clone()).collect(),
            ComponentKind::OrbitTensor(arrows) => arrows.iter().map(|a| a.label.clone()).collect(),
        }
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            name: self.name.clone(),
            kind: match self.kind {
                ComponentKind::Set(_) => "set".into(),
                ComponentKind::OrbitTensor(_) => "orbit-tensor".into(),
            },
            members: self.labels(),
        }
    }
}

/// Extra data kept for orbit-indexed squares, used by transport.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub arrow: usize,
    pub tk: Tensored,
    pub tl: Tensored,
}

/// The squares assigned by one component to one arrow.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub component: usize,
    pub squares: Vec<Square>,
    pub orbit_data: Vec<Option<OrbitData>>,
    /// Per arrow of an orbit-tensor component: `W` and its orbits.
    pub setups: Vec<(LevelDiagram<PairElem>, OrbitSetup)>,
    /// Whether any `W` was cut off at the level cap.
    pub truncated: bool,
}

fn eval(imgs: &Images, s: Simplex) -> Simplex {
    s.substitute(imgs[s.cell().dim()][s.cell().idx()])
}

/// The map `T ⊗ K -> X` adjunct to the orbit `T -> W`, read off one side of the pairs.
fn adjunct(
    t: &Tensored,
    into: &DiagramMap,
    w: &LevelDiagram<PairElem>,
    prods: &SimplexProducts,
    target: &Arc<crate::diagram::Diagram>,
    side: fn(&PairElem) -> &Images,
) -> DiagramMap {
    let comps = (0..t.parts.len())
        .map(|o| {
            let p = &t.parts[o];
            SimplicialMap::from_fn(t.diagram.at(o).clone(), target.at(o).clone(), |c| {
                let ts = p.proj_x.image_of_cell(c);
                let kappa = p.proj_y.image_of_cell(c);
                let ws = into.component(o).image(ts);
                let top = ws.cell().dim();
                let e = side(w.levels[o].elem_of_cell(ws.cell()));
                let sigma = Simplex::of_cell(CellId::new(top, 0)).degenerate(c.dim(), ws.mask());
                let pair = prods.products[top].pair_simplex(sigma, kappa).expect("pair in Δᵐ × K");
                eval(e, pair)
            })
        })
        .collect();
    DiagramMap::from_parts(t.diagram.clone(), target.clone(), comps)
}

impl Instrumentation {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn summary(&self) -> Vec<ComponentSummary> {
        self.components.iter().map(|c| c.summary()).collect()
    }

    /// All members as diagram maps over the shape (orbit tensors need the orbits of `g`).
    pub fn set_members(&self) -> Vec<&Member> {
        self.components
            .iter()
            .flat_map(|c| match &c.kind {
                ComponentKind::Set(ms) => ms.iter().collect::<Vec<_>>(),
                ComponentKind::OrbitTensor(_) => Vec::new(),
            })
            .collect()
    }

    /// The squares component `ci` assigns to `g`.
    pub fn assign(&self, ci: usize, g: &DiagramMap) -> Result<Assignment> {
        if g.source().shape() != &self.shape {
            return Err(Error::Shape("arrow over a different shape".into()));
        }
        let comp = &self.components[ci];
        let mut out = Assignment { component: ci, squares: Vec::new(), orbit_data: Vec::new(), setups: Vec::new(), truncated: false };
        match &comp.kind {
            ComponentKind::Set(members) => {
                for m in members {
                    for (u, v) in squares_between(&m.map, g) {
                        let witness = Witness {
                            component: comp.name.clone(),
                            member: m.label.clone(),
                            orbit: None,
                            orbit_witness: None,
                            n: m.n,
                            k: m.k,
                        };
                        out.squares.push(Square { witness, top: m.map.clone(), left: u, right: v, bottom: g.clone() });
                        out.orbit_data.push(None);
                    }
                }
            }
            ComponentKind::OrbitTensor(arrows) => {
                for (ai, a) in arrows.iter().enumerate() {
                    let w = arrow_mapping_d(&a.map, g, &a.k_prods, &a.l_prods, self.w_cap);
                    if self.w_cap > 0 && w.truncated() {
                        out.truncated = true;
                    }
                    let wd = w.diagram.clone();
                    let setup = orbit_setup(&wd);
                    for (k, om) in setup.orbits.iter().enumerate() {
                        let tk = tensor(&om.orbit, a.map.source());
                        let tl = tensor(&om.orbit, a.map.target());
                        let top = tensor_map(&tk, &tl, &DiagramMap::identity(om.orbit.clone()), &a.map);
                        let left = adjunct(&tk, &om.into, &w, &a.k_prods, g.source(), |e| &e.0);
                        let right = adjunct(&tl, &om.into, &w, &a.l_prods, g.target(), |e| &e.1);
                        let witness = Witness {
                            component: comp.name.clone(),
                            member: a.label.clone(),
                            orbit: Some(k),
                            orbit_witness: Some(om.witness_name.clone()),
                            n: a.n,
                            k: a.k,
                        };
                        out.squares.push(Square { witness, top, left, right, bottom: g.clone() });
                        out.orbit_data.push(Some(OrbitData { arrow: ai, tk, tl }));
                    }
                    out.setups.push((w, setup));
                }
            }
        }
        Ok(out)
    }
}

/// A square transported along a map of arrows, with the induced maps on its top.
#[derive(Clone, Debug)]
pub struct Transported {
    /// Index of the image square in the target assignment.
    pub index: usize,
    /// `A_s -> A_{s'}`.
    pub on_source: DiagramMap,
    /// `B_s -> B_{s'}`.
    pub on_target: DiagramMap,
}

/// The image of square `si` of `from` in `to`, along `(a, b)` from `from`'s arrow to `to`'s arrow.
pub fn transport(
    inst: &Instrumentation,
    from: &Assignment,
    to: &Assignment,
    si: usize,
    a: &DiagramMap,
    b: &DiagramMap,
) -> Result<Transported> {
    let s = &from.squares[si];
    match &from.orbit_data[si] {
        None => {
            let u = s.left.then_unchecked(a);
            let v = s.right.then_unchecked(b);
            let index = to
                .squares
                .iter()
                .position(|t| t.witness.member == s.witness.member && t.left.images_eq(&u) && t.right.images_eq(&v))
                .ok_or_else(|| Error::Naturality(format!("transported square of {} is not assigned", s.witness.member)))?;
            Ok(Transported {
                index,
                on_source: DiagramMap::identity(s.top.source().clone()),
                on_target: DiagramMap::identity(s.top.target().clone()),
            })
        }
        Some(od) => {
            let ComponentKind::OrbitTensor(arrows) = &inst.components[from.component].kind else {
                return Err(Error::Shape("orbit data on a set-based square".into()));
            };
            let arrow = &arrows[od.arrow];
            let (w1, s1) = &from.setups[od.arrow];
            let (w2, s2) = &to.setups[od.arrow];
            let comps = (0..w1.levels.len())
                .map(|o| {
                    let (ao, bo) = (a.component(o), b.component(o));
                    let mut missing = false;
                    let m = SimplicialMap::from_fn(w1.diagram.at(o).clone(), w2.diagram.at(o).clone(), |c| {
                        let e = w1.levels[o].elem_of_cell(c);
                        let e2 = (postcompose_images(&e.0, ao), postcompose_images(&e.1, bo));
                        w2.levels[o].simplex_of(c.dim(), &e2).unwrap_or_else(|| {
                            missing = true;
                            Simplex::of_cell(CellId::new(0, 0))
                        })
                    });
                    if missing {
                        Err(Error::Naturality("postcomposed square missing from the target".into()))
                    } else {
                        Ok(m)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let wmap = DiagramMap::from_parts(w1.diagram.clone(), w2.diagram.clone(), comps);
            let k = s.witness.orbit.expect("orbit square");
            let sq = orbit_naturality(&wmap, s1, s2, k)?;
            let index = to
                .squares
                .iter()
                .position(|t| t.witness.member == arrow.label && t.witness.orbit == Some(sq.target_orbit))
                .ok_or_else(|| Error::Naturality("target orbit square missing".into()))?;
            let od2 = to.orbit_data[index].as_ref().expect("orbit square");
            Ok(Transported {
                index,
                on_source: tensor_map(&od.tk, &od2.tk, &sq.map, &SimplicialMap::identity(arrow.map.source().clone())),
                on_target: tensor_map(&od.tl, &od2.tl, &sq.map, &SimplicialMap::identity(arrow.map.target().clone())),
            })
        }
    }
}

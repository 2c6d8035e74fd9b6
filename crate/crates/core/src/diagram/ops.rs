//! Colimits, pointwise limits and colimits, tensors, free diagrams and nerves.

use std::collections::HashMap;
use std::sync::Arc;

use super::category::SmallCategory;
use super::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::simplicial::limits::{coproduct, product, pullback, pushout, quotient, Colimit, Pullback};
use crate::simplicial::{CellId, Simplex, SimplicialMap, SimplicialSet};

/// `colim_D X` with its cocone.
pub fn colim(x: &Diagram) -> Colimit {
    let cat = x.shape();
    quotient(x.objects(), cat.objects(), |n, emit| {
        for (f, m) in cat.morphisms().iter().enumerate() {
            if cat.is_identity(f) {
                continue;
            }
            let act = x.act(f);
            for s in x.at(m.source).simplices(n) {
                emit((m.source, s), (m.target, act.image(s)));
            }
        }
    })
}

/// A pointwise colimit with its structure maps.
#[derive(Clone, Debug)]
pub struct DiagramColimit {
    pub object: Arc<Diagram>,
    pub legs: Vec<DiagramMap>,
    pub parts: Vec<Colimit>,
}

impl DiagramColimit {
    /// The mediating map for compatible maps out of the components.
    pub fn induced(&self, legs_out: &[DiagramMap]) -> Result<DiagramMap> {
        let target = legs_out
            .first()
            .map(|l| l.target().clone())
            .ok_or_else(|| Error::Incompatible("no legs to induce from".into()))?;
        let comps = self
            .parts
            .iter()
            .enumerate()
            .map(|(o, c)| {
                let ls: Vec<SimplicialMap> = legs_out.iter().map(|l| l.component(o).clone()).collect();
                c.induced_into(target.at(o).clone(), &ls)
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new_unchecked(self.object.clone(), target, comps)
    }
}

fn assemble(shape: &Arc<SmallCategory>, parts: Vec<Colimit>, sources: &[Arc<Diagram>]) -> DiagramColimit {
    let objects: Vec<Arc<SimplicialSet>> = parts.iter().map(|c| c.object.clone()).collect();
    let actions = shape
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let legs: Vec<SimplicialMap> = sources
                .iter()
                .enumerate()
                .map(|(k, s)| s.act(f).then_unchecked(&parts[m.target].legs[k]))
                .collect();
            parts[m.source]
                .induced_into(objects[m.target].clone(), &legs)
                .expect("pointwise colimit action")
        })
        .collect();
    let object = Arc::new(Diagram::from_parts(shape.clone(), objects, actions));
    let legs = sources
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let comps = parts.iter().map(|c| c.legs[k].clone()).collect();
            DiagramMap::new_unchecked(s.clone(), object.clone(), comps).expect("same shape")
        })
        .collect();
    DiagramColimit { object, legs, parts }
}

/// Pointwise pushout of `f: A -> X` and `g: A -> B`; legs are `X -> P`, `B -> P`.
pub fn pushout_d(f: &DiagramMap, g: &DiagramMap) -> Result<DiagramColimit> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(Error::Incompatible("pushout legs have different sources".into()));
    }
    let parts = (0..f.components().len())
        .map(|o| pushout(f.component(o), g.component(o)))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(f.source().shape(), parts, &[f.target().clone(), g.target().clone()]))
}

/// Pointwise coproduct of diagrams of a common shape.
pub fn coproduct_d(shape: &Arc<SmallCategory>, xs: &[Arc<Diagram>]) -> DiagramColimit {
    let parts = (0..shape.object_count())
        .map(|o| coproduct(&xs.iter().map(|x| x.at(o).clone()).collect::<Vec<_>>()))
        .collect();
    assemble(shape, parts, xs)
}

/// A pointwise pullback with projections.
#[derive(Clone, Debug)]
pub struct DiagramPullback {
    pub object: Arc<Diagram>,
    pub proj_x: DiagramMap,
    pub proj_y: DiagramMap,
    pub parts: Vec<Pullback>,
}

impl DiagramPullback {
    pub fn induced(&self, a: &DiagramMap, b: &DiagramMap) -> Result<DiagramMap> {
        let comps = self
            .parts
            .iter()
            .enumerate()
            .map(|(o, p)| p.induced(a.component(o), b.component(o)))
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new_unchecked(a.source().clone(), self.object.clone(), comps)
    }
}

fn limit_diagram(
    x: &Arc<Diagram>,
    parts: &[Pullback],
    y_act: impl Fn(usize) -> SimplicialMap,
) -> Arc<Diagram> {
    let shape = x.shape().clone();
    let objects: Vec<Arc<SimplicialSet>> = parts.iter().map(|p| p.object.clone()).collect();
    let actions = shape
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let p = &parts[m.source];
            let a = p.proj_x.then_unchecked(x.act(f));
            let b = p.proj_y.then_unchecked(&y_act(f));
            parts[m.target].induced(&a, &b).expect("pointwise limit action")
        })
        .collect();
    Arc::new(Diagram::from_parts(shape, objects, actions))
}

/// Pointwise pullback of `f: X -> Z` and `g: Y -> Z`.
pub fn pullback_d(f: &DiagramMap, g: &DiagramMap) -> Result<DiagramPullback> {
    if f.target().as_ref() != g.target().as_ref() {
        return Err(Error::Incompatible("pullback legs have different targets".into()));
    }
    let parts: Vec<Pullback> = (0..f.components().len())
        .map(|o| pullback(f.component(o), g.component(o)))
        .collect();
    let y = g.source().clone();
    let object = limit_diagram(f.source(), &parts, |a| y.act(a).clone());
    let px = parts.iter().map(|p| p.proj_x.clone()).collect();
    let py = parts.iter().map(|p| p.proj_y.clone()).collect();
    Ok(DiagramPullback {
        proj_x: DiagramMap::from_parts(object.clone(), f.source().clone(), px),
        proj_y: DiagramMap::from_parts(object.clone(), y, py),
        object,
        parts,
    })
}

/// `X ⊗ K`: objectwise product with a constant simplicial set.
#[derive(Clone, Debug)]
pub struct Tensored {
    pub diagram: Arc<Diagram>,
    pub factor: Arc<SimplicialSet>,
    pub proj: DiagramMap,
    pub parts: Vec<Pullback>,
}

impl Tensored {
    /// The simplex `(x, k)` of `X(o) × K`.
    pub fn pair(&self, o: usize, x: Simplex, k: Simplex) -> Option<Simplex> {
        self.parts[o].pair_simplex(x, k)
    }
}

pub fn tensor(x: &Arc<Diagram>, k: &Arc<SimplicialSet>) -> Tensored {
    let parts: Vec<Pullback> = x.objects().iter().map(|o| product(o, k)).collect();
    let diagram = limit_diagram(x, &parts, |_| SimplicialMap::identity(k.clone()));
    let px = parts.iter().map(|p| p.proj_x.clone()).collect();
    Tensored {
        proj: DiagramMap::from_parts(diagram.clone(), x.clone(), px),
        diagram,
        factor: k.clone(),
        parts,
    }
}

/// `f ⊗ κ : X ⊗ K -> Y ⊗ L` between already computed tensors.
pub fn tensor_map(src: &Tensored, tgt: &Tensored, f: &DiagramMap, kappa: &SimplicialMap) -> DiagramMap {
    let comps = (0..src.parts.len())
        .map(|o| {
            let p = &src.parts[o];
            let a = p.proj_x.then_unchecked(f.component(o));
            let b = p.proj_y.then_unchecked(kappa);
            tgt.parts[o].induced(&a, &b).expect("tensor of maps")
        })
        .collect();
    DiagramMap::from_parts(src.diagram.clone(), tgt.diagram.clone(), comps)
}

/// The free diagram on an object: `F(d') = D(d, d')` as a discrete set.
pub fn free_diagram(shape: &Arc<SmallCategory>, d: usize) -> Diagram {
    let homs: Vec<Vec<usize>> = (0..shape.object_count()).map(|t| shape.hom(d, t)).collect();
    let objects: Vec<Arc<SimplicialSet>> = homs
        .iter()
        .map(|hs| {
            Arc::new(crate::simplicial::standard::discrete(
                hs.iter().map(|&f| shape.morphisms()[f].name.clone()),
            ))
        })
        .collect();
    let actions = shape
        .morphisms()
        .iter()
        .enumerate()
        .map(|(a, m)| {
            let tgt_homs = &homs[m.target];
            SimplicialMap::from_fn(objects[m.source].clone(), objects[m.target].clone(), |c| {
                let phi = homs[m.source][c.idx()];
                let comp = shape.compose(a, phi).expect("composable");
                let idx = tgt_homs.iter().position(|&h| h == comp).expect("hom");
                Simplex::of_cell(CellId::new(0, idx))
            })
        })
        .collect();
    Diagram::from_parts(shape.clone(), objects, actions)
}

/// The nerve of a finite category, up to dimension `cap`.
pub fn nerve(cat: &SmallCategory, cap: usize) -> SimplicialSet {
    let mut b = SimplicialSet::builder();
    let mut ids: HashMap<Vec<usize>, CellId> = HashMap::new();
    let mut vertex_of: Vec<CellId> = Vec::new();
    for o in cat.objects() {
        vertex_of.push(b.add_vertex(o.clone()));
    }
    let nonid: Vec<usize> = (0..cat.morphisms().len()).filter(|&f| !cat.is_identity(f)).collect();
    // a chain (possibly containing identities) as a simplex in normal form
    let normal = |chain: &[usize], start: usize, ids: &HashMap<Vec<usize>, CellId>| -> Simplex {
        let n = chain.len();
        let mut mask = 0u32;
        let mut core = Vec::new();
        for (j, &f) in chain.iter().enumerate() {
            if cat.is_identity(f) {
                mask |= 1 << j;
            } else {
                core.push(f);
            }
        }
        let cell = if core.is_empty() { vertex_of[start] } else { ids[&core] };
        Simplex::of_cell(cell).degenerate(n, mask)
    };
    let mut level: Vec<Vec<usize>> = nonid.iter().map(|&f| vec![f]).collect();
    for n in 1..=cap {
        let mut next = Vec::new();
        for chain in &level {
            let start = cat.morphisms()[chain[0]].source;
            let faces: Vec<Simplex> = (0..=n)
                .map(|i| {
                    if n == 1 {
                        let m = &cat.morphisms()[chain[0]];
                        return Simplex::of_cell(vertex_of[if i == 0 { m.target } else { m.source }]);
                    }
                    let (sub, st): (Vec<usize>, usize) = if i == 0 {
                        (chain[1..].to_vec(), cat.morphisms()[chain[0]].target)
                    } else if i == n {
                        (chain[..n - 1].to_vec(), start)
                    } else {
                        let mut c = chain[..i - 1].to_vec();
                        c.push(cat.compose(chain[i], chain[i - 1]).expect("composable"));
                        c.extend_from_slice(&chain[i + 1..]);
                        (c, start)
                    };
                    normal(&sub, st, &ids)
                })
                .collect();
            let name = chain.iter().map(|&f| cat.morphisms()[f].name.clone()).collect::<Vec<_>>().join(",");
            let id = b.add_cell(name, faces);
            ids.insert(chain.clone(), id);
            if n < cap {
                let end = cat.morphisms()[*chain.last().unwrap()].target;
                for &g in &nonid {
                    if cat.morphisms()[g].source == end {
                        let mut c = chain.clone();
                        c.push(g);
                        next.push(c);
                    }
                }
            }
        }
        level = next;
    }
    b.build()
}

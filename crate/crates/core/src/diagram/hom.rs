//! Hom sets, hom-complexes, cotensors and arrow mapping spaces of diagrams.

use std::sync::Arc;

use super::diagram::{Diagram, DiagramMap};
use super::ops::{tensor, tensor_map, Tensored};
use crate::simplicial::hom::{
    arrow_mapping, compose_images, postcompose_images, Cotensor, Images, PairElem, SimplexProducts,
};
use crate::simplicial::ops::{codegeneracy, coface};
use crate::simplicial::realize::{realize, LevelSource, Realized};
use crate::simplicial::standard::{simplex_operator, standard_simplex};
use crate::simplicial::{CellId, MapSearch, Simplex, SimplicialMap, SimplicialSet};

/// A search for diagram maps `A -> X` (components constrained by naturality).
pub fn diagram_search(a: &Diagram, x: &Diagram) -> MapSearch {
    let mut s = MapSearch::new(a.objects().to_vec(), x.objects().to_vec());
    let cat = a.shape();
    for (f, m) in cat.morphisms().iter().enumerate() {
        if cat.is_identity(f) {
            continue;
        }
        s = s.with_action(m.source, m.target, a.act(f).clone(), x.act(f).clone());
    }
    s
}

/// Every diagram map `A -> X`, in canonical order.
pub fn hom_d(a: &Arc<Diagram>, x: &Arc<Diagram>) -> Vec<DiagramMap> {
    diagram_search(a, x)
        .collect(None)
        .0
        .into_iter()
        .map(|comps| DiagramMap::from_parts(a.clone(), x.clone(), comps))
        .collect()
}

/// Number of diagram maps `A -> X`.
pub fn count_hom_d(a: &Diagram, x: &Diagram) -> usize {
    diagram_search(a, x).count()
}

struct HomSource<'a> {
    x: &'a Arc<Diagram>,
    tensors: &'a [Tensored],
    cofaces: &'a [Vec<DiagramMap>],
    codegens: &'a [Vec<DiagramMap>],
}

fn compose_all(first: &DiagramMap, second: &[Images]) -> Vec<Images> {
    first
        .components()
        .iter()
        .zip(second)
        .map(|(c, s)| compose_images(c, s))
        .collect()
}

impl LevelSource for HomSource<'_> {
    type Elem = Vec<Images>;

    fn elements(&self, n: usize) -> Vec<Vec<Images>> {
        diagram_search(&self.tensors[n].diagram, self.x)
            .collect(None)
            .0
            .into_iter()
            .map(|comps| comps.iter().map(|c| c.images().clone()).collect())
            .collect()
    }

    fn face(&self, n: usize, i: usize, e: &Vec<Images>) -> Vec<Images> {
        compose_all(&self.cofaces[n][i], e)
    }

    fn degeneracy(&self, n: usize, j: usize, e: &Vec<Images>) -> Vec<Images> {
        compose_all(&self.codegens[n][j], e)
    }

    fn name(&self, n: usize, index: usize, _e: &Vec<Images>) -> String {
        format!("h{n}_{index}")
    }
}

/// The simplicial mapping space `hom(A, X)` truncated at `cap`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Arc<Diagram>,
    pub target: Arc<Diagram>,
    pub tensors: Vec<Tensored>,
    pub realized: Realized<Vec<Images>>,
}

impl HomComplex {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.realized.set
    }

    pub fn truncated(&self) -> bool {
        self.realized.truncated
    }

    /// The diagram map `A ⊗ Δⁿ -> X` presented by a cell.
    pub fn map_of_cell(&self, c: CellId) -> DiagramMap {
        let t = &self.tensors[c.dim()];
        let comps = self
            .realized
            .elem_of_cell(c)
            .iter()
            .enumerate()
            .map(|(o, img)| SimplicialMap::new_unchecked(t.diagram.at(o).clone(), self.target.at(o).clone(), img.clone()))
            .collect();
        DiagramMap::from_parts(t.diagram.clone(), self.target.clone(), comps)
    }

    /// The vertex presenting a map `A -> X` (via `A ⊗ Δ⁰ ≅ A`).
    pub fn vertex_of(&self, f: &DiagramMap) -> Option<Simplex> {
        let t = &self.tensors[0];
        let e: Vec<Images> = f
            .components()
            .iter()
            .enumerate()
            .map(|(o, c)| compose_images(t.proj.component(o), c.images()))
            .collect();
        self.realized.simplex_of(0, &e)
    }
}

fn tensor_family(a: &Arc<Diagram>, cap: usize) -> (Vec<Tensored>, Vec<Vec<DiagramMap>>, Vec<Vec<DiagramMap>>) {
    let tensors: Vec<Tensored> = (0..=cap).map(|n| tensor(a, &Arc::new(standard_simplex(n)))).collect();
    let id = DiagramMap::identity(a.clone());
    let cofaces = (0..=cap)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..=n)
                .map(|i| {
                    let op = simplex_operator(n - 1, n, &coface(n, i));
                    tensor_map(&tensors[n - 1], &tensors[n], &id, &op)
                })
                .collect()
        })
        .collect();
    let codegens = (0..cap)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let op = simplex_operator(n + 1, n, &codegeneracy(n, j));
                    tensor_map(&tensors[n + 1], &tensors[n], &id, &op)
                })
                .collect()
        })
        .collect();
    (tensors, cofaces, codegens)
}

/// `hom(A, X)` with `n`-simplices `hom_D(A ⊗ Δⁿ, X)` for `n ≤ cap`.
pub fn hom_complex(a: &Arc<Diagram>, x: &Arc<Diagram>, cap: usize) -> HomComplex {
    let (tensors, cofaces, codegens) = tensor_family(a, cap);
    let src = HomSource { x, tensors: &tensors, cofaces: &cofaces, codegens: &codegens };
    let realized = realize(&src, cap);
    HomComplex { source: a.clone(), target: x.clone(), tensors, realized }
}

/// A diagram of truncated levelwise objects, with the per-object realizations.
#[derive(Clone, Debug)]
pub struct LevelDiagram<E> {
    pub diagram: Arc<Diagram>,
    pub levels: Vec<Realized<E>>,
    pub cap: usize,
}

impl<E> LevelDiagram<E> {
    pub fn truncated(&self) -> bool {
        self.levels.iter().any(|r| r.truncated)
    }
}

fn assemble_levels<E: Clone + Eq + std::hash::Hash>(
    shape_src: &Diagram,
    levels: Vec<Realized<E>>,
    cap: usize,
    push: impl Fn(usize, &E) -> E,
) -> LevelDiagram<E> {
    let shape = shape_src.shape().clone();
    let objects: Vec<Arc<SimplicialSet>> = levels.iter().map(|r| r.set.clone()).collect();
    let actions = shape
        .morphisms()
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let src = &levels[m.source];
            let tgt = &levels[m.target];
            SimplicialMap::from_fn(objects[m.source].clone(), objects[m.target].clone(), |c| {
                let e = push(f, src.elem_of_cell(c));
                tgt.simplex_of(c.dim(), &e).expect("postcomposition stays in the target level")
            })
        })
        .collect();
    LevelDiagram { diagram: Arc::new(Diagram::from_parts(shape, objects, actions)), levels, cap }
}

/// The cotensor `X^K`, objectwise, truncated at `cap`.
pub fn cotensor(x: &Arc<Diagram>, k: &Arc<SimplicialSet>, cap: usize) -> LevelDiagram<Images> {
    let prods = SimplexProducts::new(k, cap);
    let levels: Vec<Realized<Images>> = x
        .objects()
        .iter()
        .map(|xo| realize(&Cotensor { x: xo, k: &prods }, cap))
        .collect();
    assemble_levels(x, levels, cap, |f, e| postcompose_images(e, x.act(f)))
}

/// The diagram `W` of squares from the simplicial arrow `i: K -> L` into `g: X -> Y`.
pub fn arrow_mapping_d(
    i: &SimplicialMap,
    g: &DiagramMap,
    k: &SimplexProducts,
    l: &SimplexProducts,
    cap: usize,
) -> LevelDiagram<PairElem> {
    let levels: Vec<Realized<PairElem>> = g
        .components()
        .iter()
        .map(|go| arrow_mapping(i, go, k, l, cap))
        .collect();
    let x = g.source().clone();
    let y = g.target().clone();
    assemble_levels(&x, levels, cap, |f, e| {
        (postcompose_images(&e.0, x.act(f)), postcompose_images(&e.1, y.act(f)))
    })
}

//! Orbits of diagrams: fibers over colimit vertices, orbit categories and
//! orbit-point diagrams.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::diagram::hom::{cotensor, diagram_search, hom_complex, hom_d, HomComplex};
use crate::diagram::ops::{colim, tensor_map};
use crate::diagram::{Diagram, DiagramMap, Morphism, SmallCategory};
use crate::error::{Error, Result};
use crate::simplicial::hom::compose_images;
use crate::simplicial::limits::Colimit;
use crate::simplicial::standard::standard_simplex;
use crate::simplicial::{CellId, Simplex, SimplicialMap, SimplicialSet};

/// An orbit with its structure map into an ambient diagram.
#[derive(Clone, Debug)]
pub struct OrbitMap {
    pub orbit: Arc<Diagram>,
    pub into: DiagramMap,
    /// Cotensor level `n` of the witnessing vertex.
    pub level: usize,
    /// Vertex of `colim` of the (cotensored) ambient diagram.
    pub witness: CellId,
    pub witness_name: String,
}

/// `colim_D T ≅ Δ⁰`.
pub fn is_orbit(t: &Diagram) -> bool {
    colim(t).object.cell_counts() == vec![1]
}

/// The orbit decomposition of a diagram over the vertices of its colimit.
#[derive(Clone, Debug)]
pub struct OrbitSetup {
    pub ambient: Arc<Diagram>,
    pub colim: Colimit,
    pub orbits: Vec<OrbitMap>,
    // per orbit, per object: ambient cell -> orbit cell
    renum: Vec<Vec<HashMap<CellId, CellId>>>,
}

/// One orbit map per vertex of `colim X` (level 0).
pub fn orbit_setup(x: &Arc<Diagram>) -> OrbitSetup {
    let c = colim(x);
    let shape = x.shape().clone();
    let mut orbits = Vec::new();
    let mut renums = Vec::new();
    for v in c.object.cells(0) {
        let mut objs = Vec::new();
        let mut renum = Vec::new();
        for (o, xo) in x.objects().iter().enumerate() {
            let leg = &c.legs[o];
            let (sub, map) = xo
                .subcomplex(|cell| leg.image_of_cell(cell).cell() == v)
                .expect("fibers are subcomplexes");
            objs.push(Arc::new(sub));
            renum.push(map);
        }
        let actions = shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| {
                let act = x.act(f);
                let rs = &renum[m.source];
                let rt = &renum[m.target];
                let src_cells: HashMap<CellId, CellId> = rs.iter().map(|(a, b)| (*b, *a)).collect();
                SimplicialMap::from_fn(objs[m.source].clone(), objs[m.target].clone(), |cell| {
                    let y = act.image_of_cell(src_cells[&cell]);
                    Simplex::of_cell(rt[&y.cell()]).degenerate(y.dim(), y.mask())
                })
            })
            .collect();
        let orbit = Arc::new(Diagram::from_parts(shape.clone(), objs.clone(), actions));
        let comps = renum
            .iter()
            .enumerate()
            .map(|(o, r)| {
                let back: HashMap<CellId, CellId> = r.iter().map(|(a, b)| (*b, *a)).collect();
                SimplicialMap::from_fn(objs[o].clone(), x.at(o).clone(), |cell| Simplex::of_cell(back[&cell]))
            })
            .collect();
        let into = DiagramMap::from_parts(orbit.clone(), x.clone(), comps);
        orbits.push(OrbitMap {
            orbit,
            into,
            level: 0,
            witness: v,
            witness_name: c.object.name(v).to_string(),
        });
        renums.push(renum);
    }
    OrbitSetup { ambient: x.clone(), colim: c, orbits, renum: renums }
}

impl OrbitSetup {
    /// Restricts an ambient simplex lying in orbit `k` to that orbit.
    pub fn restrict(&self, k: usize, o: usize, s: Simplex) -> Option<Simplex> {
        self.renum[k][o]
            .get(&s.cell())
            .map(|c| Simplex::of_cell(*c).degenerate(s.dim(), s.mask()))
    }

    /// The orbit containing a vertex of `X(o)`.
    pub fn orbit_of_vertex(&self, o: usize, v: CellId) -> usize {
        self.colim.legs[o].image_of_cell(v).cell().idx()
    }
}

/// The square `T_x -> T_y` over `f: X -> Y` carrying orbit `k` of `sx`.
#[derive(Clone, Debug)]
pub struct OrbitSquare {
    pub source_orbit: usize,
    pub target_orbit: usize,
    pub map: DiagramMap,
}

pub fn orbit_naturality(f: &DiagramMap, sx: &OrbitSetup, sy: &OrbitSetup, k: usize) -> Result<OrbitSquare> {
    let ox = &sx.orbits[k];
    let t_x = &ox.orbit;
    let legs: Vec<SimplicialMap> = (0..f.components().len())
        .map(|o| f.component(o).then_unchecked(&sy.colim.legs[o]))
        .collect();
    let induced = sx.colim.induced_into(sy.colim.object.clone(), &legs)?;
    let w = induced.image_of_cell(ox.witness).cell().idx();
    let oy = &sy.orbits[w];
    let comps = (0..f.components().len())
        .map(|o| {
            let fo = ox.into.component(o).then_unchecked(f.component(o));
            let mut bad = None;
            let m = SimplicialMap::from_fn(t_x.at(o).clone(), oy.orbit.at(o).clone(), |c| {
                let y = fo.image_of_cell(c);
                sy.restrict(w, o, y).unwrap_or_else(|| {
                    bad = Some(c);
                    y
                })
            });
            match bad {
                Some(_) => Err(Error::Naturality("orbit image leaves its fiber".into())),
                None => Ok(m),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitSquare {
        source_orbit: k,
        target_orbit: w,
        map: DiagramMap::from_parts(t_x.clone(), oy.orbit.clone(), comps),
    })
}

/// Finds an isomorphism `A -> B` if one exists.
pub fn find_iso(a: &Arc<Diagram>, b: &Arc<Diagram>) -> Option<DiagramMap> {
    if a.objects().iter().zip(b.objects()).any(|(x, y)| x.cell_counts() != y.cell_counts()) {
        return None;
    }
    let mut found = None;
    diagram_search(a, b).run(|comps| {
        if comps.iter().all(|c| c.is_iso()) {
            found = Some(DiagramMap::from_parts(a.clone(), b.clone(), comps.to_vec()));
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    });
    found
}

/// A finite, isomorphism-deduplicated fragment of the orbit category.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    pub orbits: Vec<Arc<Diagram>>,
    /// `(level, witness name)` of the first vertex producing each orbit.
    pub sources: Vec<(usize, String)>,
    /// `homs[i][j]` = all maps `orbits[i] -> orbits[j]`.
    pub homs: Vec<Vec<Vec<DiagramMap>>>,
    pub level_cap: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub index: usize,
    pub level: usize,
    pub witness: String,
    pub cells: Vec<Vec<usize>>,
}

impl OrbitCategory {
    /// Orbits given directly (deduplicated).
    pub fn from_orbits(list: Vec<Arc<Diagram>>) -> Self {
        let mut cat = OrbitCategory { orbits: Vec::new(), sources: Vec::new(), homs: Vec::new(), level_cap: 0, truncated: false };
        for t in list {
            cat.insert(t, 0, String::new());
        }
        cat.fill_homs();
        cat
    }

    fn insert(&mut self, t: Arc<Diagram>, level: usize, witness: String) {
        if self.orbits.iter().any(|o| find_iso(o, &t).is_some()) {
            return;
        }
        self.orbits.push(t);
        self.sources.push((level, witness));
    }

    fn fill_homs(&mut self) {
        self.homs = self
            .orbits
            .iter()
            .map(|a| self.orbits.iter().map(|b| hom_d(a, b)).collect())
            .collect();
    }

    pub fn summary(&self) -> Vec<OrbitSummary> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(i, t)| OrbitSummary {
                index: i,
                level: self.sources[i].0,
                witness: self.sources[i].1.clone(),
                cells: t.objects().iter().map(|x| x.cell_counts()).collect(),
            })
            .collect()
    }

    /// The orbits and all maps between them as a finite category.
    pub fn category(&self) -> (SmallCategory, Vec<(usize, usize, usize)>) {
        let mut morphisms = Vec::new();
        let mut index = Vec::new();
        let mut identities = Vec::new();
        for (i, row) in self.homs.iter().enumerate() {
            for (j, maps) in row.iter().enumerate() {
                for (k, m) in maps.iter().enumerate() {
                    if i == j && m.is_identity() {
                        identities.push((i, morphisms.len()));
                    }
                    index.push((i, j, k));
                    morphisms.push(Morphism { name: format!("o{i}o{j}_{k}"), source: i, target: j });
                }
            }
        }
        identities.sort();
        let ids: Vec<usize> = identities.into_iter().map(|(_, m)| m).collect();
        let mut triples = Vec::new();
        for (gi, &(b, c, gk)) in index.iter().enumerate() {
            for (fi, &(a, b2, fk)) in index.iter().enumerate() {
                if b2 != b {
                    continue;
                }
                let comp = self.homs[a][b][fk].then_unchecked(&self.homs[b][c][gk]);
                let hk = self.homs[a][c].iter().position(|h| h.images_eq(&comp)).expect("closed under composition");
                let hi = index.iter().position(|&t| t == (a, c, hk)).unwrap();
                triples.push((gi, fi, hi));
            }
        }
        let names = self.orbits.iter().enumerate().map(|(i, _)| format!("T{i}")).collect();
        let cat = SmallCategory::new(names, morphisms, ids, &triples).expect("orbit category");
        (cat, index)
    }
}

/// Orbits `T_x` for all vertices `x` of `colim X^{Δⁿ}`, `n ≤ level_cap`, up to isomorphism.
pub fn orbit_category_of(x: &Arc<Diagram>, level_cap: usize) -> OrbitCategory {
    let mut cat = OrbitCategory { orbits: Vec::new(), sources: Vec::new(), homs: Vec::new(), level_cap, truncated: false };
    for n in 0..=level_cap {
        let cot = cotensor(x, &Arc::new(standard_simplex(n)), level_cap);
        cat.truncated |= cot.truncated() && !x.shape().is_groupoid();
        let setup = orbit_setup(&cot.diagram);
        for om in setup.orbits {
            cat.insert(om.orbit, n, om.witness_name);
        }
    }
    cat.fill_homs();
    cat
}

/// The diagram of orbit-points over `E^op`: `T ↦ hom(T, X)`.
pub fn orbit_point_diagram(x: &Arc<Diagram>, e: &OrbitCategory, dim_cap: usize) -> (Diagram, Vec<HomComplex>) {
    let (cat, index) = e.category();
    let op = Arc::new(cat.opposite());
    let homs: Vec<HomComplex> = e.orbits.iter().map(|t| hom_complex(t, x, dim_cap)).collect();
    let objects: Vec<Arc<SimplicialSet>> = homs.iter().map(|h| h.set().clone()).collect();
    let actions = index
        .iter()
        .map(|&(i, j, k)| {
            // φ: T_i -> T_j acts as hom(T_j, X) -> hom(T_i, X)
            let phi = &e.homs[i][j][k];
            let src = &homs[j];
            let tgt = &homs[i];
            let mut cache: HashMap<usize, DiagramMap> = HashMap::new();
            SimplicialMap::from_fn(objects[j].clone(), objects[i].clone(), |c| {
                let n = c.dim();
                let pre = cache.entry(n).or_insert_with(|| {
                    let delta = SimplicialMap::identity(Arc::new(standard_simplex(n)));
                    tensor_map(&tgt.tensors[n], &src.tensors[n], phi, &delta)
                });
                let elem = src.realized.elem_of_cell(c);
                let composed: Vec<_> = pre
                    .components()
                    .iter()
                    .zip(elem)
                    .map(|(p, img)| compose_images(p, img))
                    .collect();
                tgt.realized.simplex_of(n, &composed).expect("precomposition stays in level")
            })
        })
        .collect();
    (Diagram::from_parts(op, objects, actions), homs)
}

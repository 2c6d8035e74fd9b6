//! Products, pullbacks, pushouts, coproducts and general finite colimits.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::map::SimplicialMap;
use super::ops::quotient_mask;
use super::set::{CellId, Simplex, SimplicialSet, SimplicialSetBuilder};
use super::standard::point;
use crate::error::{Error, Result};

/// A pullback `X ×_Z Y` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<SimplicialSet>,
    pub proj_x: SimplicialMap,
    pub proj_y: SimplicialMap,
    index: HashMap<(Simplex, Simplex), CellId>,
}

impl Pullback {
    /// The simplex of the pullback with the given components.
    pub fn pair_simplex(&self, x: Simplex, y: Simplex) -> Option<Simplex> {
        let common = x.mask() & y.mask();
        let n = x.dim();
        let k = n - common.count_ones() as usize;
        let xr = Simplex::new(k, quotient_mask(n, x.mask(), common), x.cell()).ok()?;
        let yr = Simplex::new(k, quotient_mask(n, y.mask(), common), y.cell()).ok()?;
        let c = self.index.get(&(xr, yr))?;
        Some(Simplex::of_cell(*c).degenerate(n, common))
    }

    /// The map `W -> X ×_Z Y` induced by a compatible pair.
    pub fn induced(&self, a: &SimplicialMap, b: &SimplicialMap) -> Result<SimplicialMap> {
        let src = a.source().clone();
        let mut missing = None;
        let m = SimplicialMap::from_fn(src.clone(), self.object.clone(), |c| {
            match self.pair_simplex(a.image_of_cell(c), b.image_of_cell(c)) {
                Some(s) => s,
                None => {
                    missing.get_or_insert(c);
                    Simplex::of_cell(c)
                }
            }
        });
        if let Some(c) = missing {
            return Err(Error::Incompatible(format!(
                "cell {} does not land in the pullback",
                src.name(c)
            )));
        }
        Ok(m)
    }
}

fn pair_name(x: &SimplicialSet, a: Simplex, y: &SimplicialSet, b: Simplex) -> String {
    format!("({},{})", x.show(a), y.show(b))
}

/// `X ×_Z Y` for `f: X -> Z`, `g: Y -> Z`.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Pullback {
    pullback_impl(f.source().clone(), g.source().clone(), Some((f, g)))
}

/// `X × Y` with its projections.
pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Pullback {
    pullback_impl(x.clone(), y.clone(), None)
}

fn pullback_impl(
    x: Arc<SimplicialSet>,
    y: Arc<SimplicialSet>,
    over: Option<(&SimplicialMap, &SimplicialMap)>,
) -> Pullback {
    let mut b = SimplicialSetBuilder::default();
    let mut index: HashMap<(Simplex, Simplex), CellId> = HashMap::new();
    let mut px: Vec<Vec<Simplex>> = Vec::new();
    let mut py: Vec<Vec<Simplex>> = Vec::new();
    let top = match (x.dim(), y.dim()) {
        (Some(a), Some(c)) => a + c,
        _ => {
            let object = Arc::new(SimplicialSet::empty());
            return Pullback {
                proj_x: SimplicialMap::new_unchecked(object.clone(), x, Vec::new()),
                proj_y: SimplicialMap::new_unchecked(object.clone(), y, Vec::new()),
                object,
                index,
            };
        }
    };
    for n in 0..=top {
        let xs = x.simplices(n);
        let ys = y.simplices(n);
        let mut by_image: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        if let Some((_, g)) = over {
            for &t in &ys {
                by_image.entry(g.image(t)).or_default().push(t);
            }
        }
        let mut lx = Vec::new();
        let mut ly = Vec::new();
        for &s in &xs {
            let partners: &[Simplex] = match over {
                Some((f, _)) => by_image.get(&f.image(s)).map_or(&[], |v| v.as_slice()),
                None => &ys,
            };
            for &t in partners {
                if s.mask() & t.mask() != 0 {
                    continue;
                }
                let faces: Vec<Simplex> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let (fs, ft) = (x.face(s, i), y.face(t, i));
                            let common = fs.mask() & ft.mask();
                            let k = n - 1 - common.count_ones() as usize;
                            let key = (
                                Simplex::new(k, quotient_mask(n - 1, fs.mask(), common), fs.cell()).unwrap(),
                                Simplex::new(k, quotient_mask(n - 1, ft.mask(), common), ft.cell()).unwrap(),
                            );
                            Simplex::of_cell(index[&key]).degenerate(n - 1, common)
                        })
                        .collect()
                };
                let id = b.add_cell(pair_name(&x, s, &y, t), faces);
                index.insert((s, t), id);
                lx.push(s);
                ly.push(t);
            }
        }
        px.push(lx);
        py.push(ly);
    }
    while px.last().is_some_and(|l| l.is_empty()) {
        px.pop();
        py.pop();
    }
    let object = Arc::new(b.build());
    Pullback {
        proj_x: SimplicialMap::new_unchecked(object.clone(), x, px),
        proj_y: SimplicialMap::new_unchecked(object.clone(), y, py),
        object,
        index,
    }
}

/// A colimit cocone with the data needed for induced maps.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub object: Arc<SimplicialSet>,
    pub legs: Vec<SimplicialMap>,
    /// For every cell of the colimit, one component cell mapping onto it.
    origin: Vec<Vec<(usize, CellId)>>,
}

impl Colimit {
    /// The mediating map for a compatible family of maps out of the components.
    pub fn induced(&self, legs_out: &[SimplicialMap]) -> Result<SimplicialMap> {
        if legs_out.len() != self.legs.len() {
            return Err(Error::Incompatible("wrong number of cocone legs".into()));
        }
        let target = legs_out
            .first()
            .map(|l| l.target().clone())
            .unwrap_or_else(|| Arc::new(SimplicialSet::empty()));
        let m = SimplicialMap::from_fn(self.object.clone(), target, |c| {
            let (k, cell) = self.origin[c.dim()][c.idx()];
            legs_out[k].image_of_cell(cell)
        });
        for (k, leg) in self.legs.iter().enumerate() {
            for c in leg.source().all_cells() {
                if m.image(leg.image_of_cell(c)) != legs_out[k].image_of_cell(c) {
                    return Err(Error::Incompatible(format!(
                        "cocone leg {k} disagrees on cell {}",
                        leg.source().name(c)
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Same as [`Colimit::induced`] with an explicit target (needed when there are no legs).
    pub fn induced_into(&self, target: Arc<SimplicialSet>, legs_out: &[SimplicialMap]) -> Result<SimplicialMap> {
        if self.legs.is_empty() {
            return Ok(SimplicialMap::from_empty(target));
        }
        self.induced(legs_out)
    }
}

fn unique_name(used: &mut HashSet<String>, base: &str, label: &str) -> String {
    if used.insert(base.to_string()) {
        return base.to_string();
    }
    let mut cand = format!("{base}@{label}");
    let mut i = 1;
    while !used.insert(cand.clone()) {
        i += 1;
        cand = format!("{base}@{label}{i}");
    }
    cand
}

/// Disjoint union; cells ordered by dimension, then component.
pub fn coproduct(parts: &[Arc<SimplicialSet>]) -> Colimit {
    let top = parts.iter().filter_map(|p| p.dim()).max();
    let mut b = SimplicialSetBuilder::default();
    let mut legs_img: Vec<Vec<Vec<Simplex>>> = parts.iter().map(|_| Vec::new()).collect();
    let mut origin = Vec::new();
    if let Some(top) = top {
        for n in 0..=top {
            let mut used = HashSet::new();
            let mut orig = Vec::new();
            for (k, p) in parts.iter().enumerate() {
                let mut lvl = Vec::new();
                for c in p.cells(n) {
                    let faces = p
                        .faces_of(c)
                        .iter()
                        .map(|y| y.substitute(legs_img[k][y.cell().dim()][y.cell().idx()]))
                        .collect();
                    let name = unique_name(&mut used, p.name(c), &k.to_string());
                    let id = b.add_cell(name, faces);
                    lvl.push(Simplex::of_cell(id));
                    orig.push((k, c));
                }
                if n < p.cell_counts().len() {
                    legs_img[k].push(lvl);
                }
            }
            origin.push(orig);
        }
    }
    let object = Arc::new(b.build());
    let legs = parts
        .iter()
        .zip(legs_img)
        .map(|(p, img)| SimplicialMap::new_unchecked(p.clone(), object.clone(), img))
        .collect();
    Colimit { object, legs, origin }
}

/// Quotient of a disjoint union by the levelwise equivalence relation
/// generated by `relate(n, emit)`, which emits pairs of `n`-simplices.
pub fn quotient(
    parts: &[Arc<SimplicialSet>],
    labels: &[String],
    mut relate: impl FnMut(usize, &mut dyn FnMut((usize, Simplex), (usize, Simplex))),
) -> Colimit {
    let top = match parts.iter().filter_map(|p| p.dim()).max() {
        Some(t) => t,
        None => return coproduct(parts),
    };
    // Per level: flat numbering of all simplices of all parts.
    struct Level {
        offsets: Vec<usize>,
        lists: Vec<Vec<Simplex>>,
        pos: Vec<HashMap<Simplex, usize>>,
        uf: UnionFind<usize>,
    }
    let mut levels: Vec<Level> = Vec::new();
    for n in 0..=top {
        let lists: Vec<Vec<Simplex>> = parts.iter().map(|p| p.simplices(n)).collect();
        let mut offsets = Vec::new();
        let mut total = 0;
        for l in &lists {
            offsets.push(total);
            total += l.len();
        }
        let pos = lists
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let mut lvl = Level { offsets, lists, pos, uf: UnionFind::new(total) };
        relate(n, &mut |(k1, s1), (k2, s2)| {
            let a = lvl.offsets[k1] + lvl.pos[k1][&s1];
            let b = lvl.offsets[k2] + lvl.pos[k2][&s2];
            lvl.uf.union(a, b);
        });
        levels.push(lvl);
    }
    let flat = |lvl: &Level, k: usize, s: Simplex| lvl.offsets[k] + lvl.pos[k][&s];
    // Classes per level: representative = smallest flat index (parts in order, cells first).
    let mut b = SimplicialSetBuilder::default();
    let mut class_cell: Vec<HashMap<usize, Simplex>> = Vec::new();
    let mut origin = Vec::new();
    for n in 0..=top {
        let lvl = &levels[n];
        let labels_uf = lvl.uf.clone().into_labeling();
        let mut degenerate_member: HashMap<usize, (usize, Simplex)> = HashMap::new();
        let mut first: HashMap<usize, (usize, Simplex)> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        for (k, list) in lvl.lists.iter().enumerate() {
            for &s in list {
                let root = labels_uf[lvl.offsets[k] + lvl.pos[k][&s]];
                if !first.contains_key(&root) {
                    first.insert(root, (k, s));
                    order.push(root);
                }
                if s.is_degenerate() {
                    degenerate_member.entry(root).or_insert((k, s));
                }
            }
        }
        let mut map: HashMap<usize, Simplex> = HashMap::new();
        let mut used = HashSet::new();
        let mut orig = Vec::new();
        for &root in &order {
            if let Some(&(k, s)) = degenerate_member.get(&root) {
                let c = s.cell();
                let low = &levels[c.dim()];
                let cls = class_cell[c.dim()][&low.uf.find(flat(low, k, Simplex::of_cell(c)))];
                map.insert(root, cls.degenerate(n, s.mask()));
            } else {
                let (k, s) = first[&root];
                let p = &parts[k];
                let faces: Vec<Simplex> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let fc = p.face(s, i);
                            let low = &levels[n - 1];
                            class_cell[n - 1][&low.uf.find(flat(low, k, fc))]
                        })
                        .collect()
                };
                let name = unique_name(&mut used, p.name(s.cell()), &labels[k]);
                let id = b.add_cell(name, faces);
                map.insert(root, Simplex::of_cell(id));
                orig.push((k, s.cell()));
            }
        }
        class_cell.push(map);
        origin.push(orig);
    }
    while origin.last().is_some_and(|o| o.is_empty()) {
        origin.pop();
    }
    let object = Arc::new(b.build());
    let legs = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            SimplicialMap::from_fn(p.clone(), object.clone(), |c| {
                let lvl = &levels[c.dim()];
                class_cell[c.dim()][&lvl.uf.find(flat(lvl, k, Simplex::of_cell(c)))]
            })
        })
        .collect();
    Colimit { object, legs, origin }
}

/// Pushout of `f: A -> X` and `g: A -> B`; legs are `X -> P` then `B -> P`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Colimit> {
    if !(Arc::ptr_eq(f.source(), g.source()) || f.source() == g.source()) {
        return Err(Error::Incompatible("pushout legs have different sources".into()));
    }
    if g.is_injective() {
        return Ok(pushout_along_injection(f, g));
    }
    let a = f.source().clone();
    let parts = vec![f.target().clone(), g.target().clone()];
    Ok(quotient(&parts, &["X".into(), "B".into()], |n, emit| {
        for s in a.simplices(n) {
            emit((0, f.image(s)), (1, g.image(s)));
        }
    }))
}

fn pushout_along_injection(f: &SimplicialMap, g: &SimplicialMap) -> Colimit {
    let x = f.target().clone();
    let bset = g.target().clone();
    let mut preimage: HashMap<CellId, CellId> = HashMap::new();
    for c in g.source().all_cells() {
        preimage.insert(g.image_of_cell(c).cell(), c);
    }
    let top = x.dim().into_iter().chain(bset.dim()).max();
    let mut builder = SimplicialSetBuilder::default();
    let mut b_img: Vec<Vec<Simplex>> = Vec::new();
    let mut x_img: Vec<Vec<Simplex>> = Vec::new();
    let mut origin = Vec::new();
    if let Some(top) = top {
        for n in 0..=top {
            let mut used = HashSet::new();
            let mut orig = Vec::new();
            let mut xl = Vec::new();
            for c in x.cells(n) {
                used.insert(x.name(c).to_string());
                let id = builder.add_cell(x.name(c), x.faces_of(c).to_vec());
                xl.push(Simplex::of_cell(id));
                orig.push((0, c));
            }
            let mut bl = Vec::new();
            for c in bset.cells(n) {
                if let Some(a) = preimage.get(&c) {
                    bl.push(f.image_of_cell(*a));
                    continue;
                }
                let faces = bset
                    .faces_of(c)
                    .iter()
                    .map(|y| y.substitute(b_img[y.cell().dim()][y.cell().idx()]))
                    .collect();
                let name = unique_name(&mut used, bset.name(c), "B");
                let id = builder.add_cell(name, faces);
                bl.push(Simplex::of_cell(id));
                orig.push((1, c));
            }
            if n < x.cell_counts().len() {
                x_img.push(xl);
            }
            b_img.push(bl);
            origin.push(orig);
        }
    }
    b_img.truncate(bset.cell_counts().len());
    let object = Arc::new(builder.build());
    let legs = vec![
        SimplicialMap::new_unchecked(x, object.clone(), x_img),
        SimplicialMap::new_unchecked(bset, object.clone(), b_img),
    ];
    Colimit { object, legs, origin }
}

/// A fresh Δ⁰.
pub fn terminal() -> Arc<SimplicialSet> {
    Arc::new(point())
}

/// The unique map to Δ⁰.
pub fn to_terminal(x: &Arc<SimplicialSet>) -> SimplicialMap {
    SimplicialMap::to_point(x.clone(), terminal())
}

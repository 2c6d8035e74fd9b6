//! Mapping spaces out of products with standard simplices.

use std::sync::Arc;

use super::limits::{product, Pullback};
use super::map::SimplicialMap;
use super::realize::{realize, LevelSource, Realized};
use super::search::MapSearch;
use super::set::{Simplex, SimplicialSet};
use super::standard::{simplex_operator, standard_simplex};
use super::ops;

/// Cell images of a map, the hashable form used for levelwise elements.
pub type Images = Vec<Vec<Simplex>>;

/// Images of `second ∘ first`, where `second` is given by its images.
pub fn compose_images(first: &SimplicialMap, second: &Images) -> Images {
    first
        .images()
        .iter()
        .map(|lvl| {
            lvl.iter()
                .map(|y| y.substitute(second[y.cell().dim()][y.cell().idx()]))
                .collect()
        })
        .collect()
}

/// Images of `post ∘ m` for `m` given by images.
pub fn postcompose_images(m: &Images, post: &SimplicialMap) -> Images {
    m.iter().map(|lvl| lvl.iter().map(|&y| post.image(y)).collect()).collect()
}

/// `Δᵐ × K` for `m ≤ cap` with the structure maps induced by cofaces and codegeneracies.
#[derive(Clone, Debug)]
pub struct SimplexProducts {
    pub factor: Arc<SimplicialSet>,
    pub products: Vec<Pullback>,
    /// `cofaces[m][i] = δ^i × 1 : Δ^{m-1} × K -> Δᵐ × K` (empty for m = 0).
    pub cofaces: Vec<Vec<SimplicialMap>>,
    /// `codegens[m][j] = σ^j × 1 : Δ^{m+1} × K -> Δᵐ × K` for `m < cap`.
    pub codegens: Vec<Vec<SimplicialMap>>,
}

impl SimplexProducts {
    pub fn new(k: &Arc<SimplicialSet>, cap: usize) -> Self {
        let products: Vec<Pullback> = (0..=cap)
            .map(|m| product(&Arc::new(standard_simplex(m)), k))
            .collect();
        let id = SimplicialMap::identity(k.clone());
        let induced = |src: &Pullback, tgt: &Pullback, op: &SimplicialMap| {
            let a = src.proj_x.then_unchecked(&op.rebind(src.proj_x.target().clone(), tgt.proj_x.target().clone()));
            let b = src.proj_y.then_unchecked(&id);
            tgt.induced(&a, &b).expect("product of maps")
        };
        let cofaces = (0..=cap)
            .map(|m| {
                (0..=m)
                    .filter(|_| m > 0)
                    .map(|i| {
                        let op = simplex_operator(m - 1, m, &ops::coface(m, i));
                        induced(&products[m - 1], &products[m], &op)
                    })
                    .collect()
            })
            .collect();
        let codegens = (0..cap)
            .map(|m| {
                (0..=m)
                    .map(|j| {
                        let op = simplex_operator(m + 1, m, &ops::codegeneracy(m, j));
                        induced(&products[m + 1], &products[m], &op)
                    })
                    .collect()
            })
            .collect();
        SimplexProducts { factor: k.clone(), products, cofaces, codegens }
    }

    pub fn at(&self, m: usize) -> &Arc<SimplicialSet> {
        &self.products[m].object
    }

    /// `1 × i : Δᵐ × K -> Δᵐ × L`.
    pub fn along(&self, other: &SimplexProducts, m: usize, i: &SimplicialMap) -> SimplicialMap {
        let src = &self.products[m];
        let tgt = &other.products[m];
        let a = src.proj_x.rebind(src.object.clone(), tgt.proj_x.target().clone());
        let b = src.proj_y.then_unchecked(i);
        tgt.induced(&a, &b).expect("product of maps")
    }

    /// The simplex `(ι_m, κ)` of `Δᵐ × K` for an `m`-simplex `κ` of `K`.
    pub fn top_pair(&self, m: usize, kappa: Simplex) -> Simplex {
        let top = Simplex::of_cell(super::set::CellId::new(m, 0));
        self.products[m].pair_simplex(top, kappa).expect("pair in product")
    }
}

/// The space of squares from a simplicial arrow `i: K -> L` into `g: X -> Y`:
/// `m`-simplices are pairs `(v: Δᵐ×K -> X, u: Δᵐ×L -> Y)` with `u ∘ (1×i) = g ∘ v`.
pub struct ArrowMapping<'a> {
    pub i: &'a SimplicialMap,
    pub g: &'a SimplicialMap,
    pub k: &'a SimplexProducts,
    pub l: &'a SimplexProducts,
    along: Vec<SimplicialMap>,
}

pub type PairElem = (Images, Images);

impl<'a> ArrowMapping<'a> {
    pub fn new(i: &'a SimplicialMap, g: &'a SimplicialMap, k: &'a SimplexProducts, l: &'a SimplexProducts) -> Self {
        let along = (0..k.products.len()).map(|m| k.along(l, m, i)).collect();
        ArrowMapping { i, g, k, l, along }
    }
}

impl LevelSource for ArrowMapping<'_> {
    type Elem = PairElem;

    fn elements(&self, n: usize) -> Vec<PairElem> {
        let x = self.g.source();
        let y = self.g.target();
        let mut out = Vec::new();
        let vs = MapSearch::single(self.k.at(n).clone(), x.clone()).collect(None).0;
        for mut v in vs {
            let v = v.remove(0);
            let gv = v.then_unchecked(self.g);
            let us = MapSearch::single(self.l.at(n).clone(), y.clone())
                .prescribe(0, &self.along[n], &gv)
                .collect(None)
                .0;
            for mut u in us {
                out.push((v.images().clone(), u.remove(0).images().clone()));
            }
        }
        out
    }

    fn face(&self, n: usize, i: usize, e: &PairElem) -> PairElem {
        (
            compose_images(&self.k.cofaces[n][i], &e.0),
            compose_images(&self.l.cofaces[n][i], &e.1),
        )
    }

    fn degeneracy(&self, n: usize, j: usize, e: &PairElem) -> PairElem {
        (
            compose_images(&self.k.codegens[n][j], &e.0),
            compose_images(&self.l.codegens[n][j], &e.1),
        )
    }

    fn name(&self, n: usize, index: usize, _e: &PairElem) -> String {
        format!("w{n}_{index}")
    }
}

/// Realizes the arrow mapping space up to `cap` (which must not exceed the product caps).
pub fn arrow_mapping(
    i: &SimplicialMap,
    g: &SimplicialMap,
    k: &SimplexProducts,
    l: &SimplexProducts,
    cap: usize,
) -> Realized<PairElem> {
    realize(&ArrowMapping::new(i, g, k, l), cap)
}

/// Levelwise data of `X^K`: `m`-simplices are maps `Δᵐ × K -> X`.
pub struct Cotensor<'a> {
    pub x: &'a Arc<SimplicialSet>,
    pub k: &'a SimplexProducts,
}

impl LevelSource for Cotensor<'_> {
    type Elem = Images;

    fn elements(&self, n: usize) -> Vec<Images> {
        MapSearch::single(self.k.at(n).clone(), self.x.clone())
            .collect(None)
            .0
            .into_iter()
            .map(|mut v| v.remove(0).images().clone())
            .collect()
    }

    fn face(&self, n: usize, i: usize, e: &Images) -> Images {
        compose_images(&self.k.cofaces[n][i], e)
    }

    fn degeneracy(&self, n: usize, j: usize, e: &Images) -> Images {
        compose_images(&self.k.codegens[n][j], e)
    }

    fn name(&self, n: usize, index: usize, _e: &Images) -> String {
        format!("c{n}_{index}")
    }
}

/// `X^K` truncated at `cap`.
pub fn cotensor_set(x: &Arc<SimplicialSet>, k: &Arc<SimplicialSet>, cap: usize) -> Realized<Images> {
    let prods = SimplexProducts::new(k, cap);
    realize(&Cotensor { x, k: &prods }, cap)
}

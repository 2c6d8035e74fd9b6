//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use eqloc::diagram::{Diagram, DiagramMap};
use eqloc::simplicial::{CellId, Simplex, SimplicialMap, SimplicialSet};

/// Images of the nondegenerate cells, indexed by dimension then cell index.
pub type Images = Vec<Vec<Simplex>>;

fn apply(imgs: &Images, s: Simplex) -> Simplex {
    s.substitute(imgs[s.cell().dim()][s.cell().idx()])
}

/// Every simplicial map `X -> Y`, by trying all simplices of `Y` for each cell in
/// order and keeping assignments whose faces agree.
pub fn homs(x: &SimplicialSet, y: &SimplicialSet) -> Vec<Images> {
    let cells: Vec<CellId> = x.all_cells();
    let top = x.dim().map_or(0, |d| d + 1);
    let candidates: Vec<Vec<Simplex>> = (0..top).map(|d| y.simplices(d)).collect();
    let mut imgs: Images = (0..top).map(|d| vec![Simplex::of_cell(CellId::new(0, 0)); x.cell_count(d)]).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        cells: &[CellId],
        x: &SimplicialSet,
        y: &SimplicialSet,
        cands: &[Vec<Simplex>],
        imgs: &mut Images,
        out: &mut Vec<Images>,
    ) {
        if k == cells.len() {
            out.push(imgs.clone());
            return;
        }
        let c = cells[k];
        let d = c.dim();
        for &s in &cands[d] {
            let ok = d == 0
                || (0..=d).all(|i| apply(imgs, x.face(Simplex::of_cell(c), i)) == y.face(s, i));
            if ok {
                imgs[d][c.idx()] = s;
                rec(k + 1, cells, x, y, cands, imgs, out);
            }
        }
    }
    rec(0, &cells, x, y, &candidates, &mut imgs, &mut out);
    out
}

pub fn images_of(f: &SimplicialMap) -> Images {
    let x = f.source();
    let top = x.dim().map_or(0, |d| d + 1);
    (0..top).map(|d| x.cells(d).map(|c| f.image_of_cell(c)).collect()).collect()
}

pub fn to_map(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>, imgs: &Images) -> SimplicialMap {
    let imgs = imgs.clone();
    SimplicialMap::from_fn(x.clone(), y.clone(), move |c| imgs[c.dim()][c.idx()])
}

/// `g ∘ f` on images.
pub fn compose(f: &Images, g: &Images) -> Images {
    f.iter().map(|row| row.iter().map(|&s| apply(g, s)).collect()).collect()
}

/// Connected components by depth-first search over the edge graph.
pub fn components(x: &SimplicialSet) -> usize {
    let n = x.cell_count(0);
    let mut adj = vec![Vec::new(); n];
    for e in x.cells(1) {
        let fs = x.faces_of(e);
        let (a, b) = (fs[0].cell().idx(), fs[1].cell().idx());
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Whether `p` has the right lifting property against `i`, by enumerating squares and diagonals.
pub fn rlp(i: &SimplicialMap, p: &SimplicialMap) -> bool {
    let (a, b, x, y) = (i.source(), i.target(), p.source(), p.target());
    let ii = images_of(i);
    let pp = images_of(p);
    let hs = homs(b, x);
    let vs = homs(b, y);
    for u in homs(a, x) {
        let pu = compose(&u, &pp);
        for v in &vs {
            if compose(&ii, v) != pu {
                continue;
            }
            if !hs.iter().any(|h| compose(&ii, h) == u && &compose(h, &pp) == v) {
                return false;
            }
        }
    }
    true
}

/// Number of pairs of `n`-simplices with equal images, the simplices of a pullback.
pub fn pullback_simplices(f: &SimplicialMap, g: &SimplicialMap, n: usize) -> usize {
    let fi = images_of(f);
    let gi = images_of(g);
    let ys: Vec<Simplex> = g.source().simplices(n).into_iter().map(|s| apply(&gi, s)).collect();
    f.source()
        .simplices(n)
        .into_iter()
        .map(|s| {
            let z = apply(&fi, s);
            ys.iter().filter(|&&w| w == z).count()
        })
        .sum()
}

/// All simplices of `X` up to dimension `n`, as a set.
pub fn simplex_set(x: &SimplicialSet, n: usize) -> BTreeSet<(usize, u32, usize, usize)> {
    (0..=n)
        .flat_map(|d| x.simplices(d))
        .map(|s| (s.dim(), s.mask(), s.cell().dim(), s.cell().idx()))
        .collect()
}

pub fn single_map(m: SimplicialMap) -> DiagramMap {
    let a = Arc::new(Diagram::single(m.source().clone()));
    let b = Arc::new(Diagram::single(m.target().clone()));
    DiagramMap::new(a, b, vec![m]).unwrap()
}

//! Presentation of a simplicial object given levelwise (elements, faces,
//! degeneracies) as a finite simplicial set, truncated at a dimension cap.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::set::{Simplex, SimplicialSet, SimplicialSetBuilder};

/// Levelwise access to a simplicial set that may be infinite-dimensional.
pub trait LevelSource {
    type Elem: Clone + Eq + Hash;

    fn elements(&self, n: usize) -> Vec<Self::Elem>;
    fn face(&self, n: usize, i: usize, e: &Self::Elem) -> Self::Elem;
    fn degeneracy(&self, n: usize, j: usize, e: &Self::Elem) -> Self::Elem;
    fn name(&self, n: usize, index: usize, e: &Self::Elem) -> String;
}

/// A finite presentation of the `cap`-skeleton of a levelwise object.
#[derive(Clone, Debug)]
pub struct Realized<E> {
    pub set: Arc<SimplicialSet>,
    pub cap: usize,
    /// Whether cells were found at the cap itself, so the object may continue above it.
    pub truncated: bool,
    /// The element presented by each cell.
    pub cell_elems: Vec<Vec<E>>,
    lookup: Vec<HashMap<E, Simplex>>,
}

impl<E: Clone + Eq + Hash> Realized<E> {
    /// The simplex presenting an element of level `n ≤ cap`.
    pub fn simplex_of(&self, n: usize, e: &E) -> Option<Simplex> {
        self.lookup.get(n)?.get(e).copied()
    }

    pub fn elem_of_cell(&self, c: super::set::CellId) -> &E {
        &self.cell_elems[c.dim()][c.idx()]
    }
}

/// Realizes levels `0..=cap`.
pub fn realize<S: LevelSource>(src: &S, cap: usize) -> Realized<S::Elem> {
    let mut b = SimplicialSetBuilder::default();
    let mut lookup: Vec<HashMap<S::Elem, Simplex>> = Vec::new();
    let mut cell_elems: Vec<Vec<S::Elem>> = Vec::new();
    let mut top_nondeg = false;
    for n in 0..=cap {
        let elems = src.elements(n);
        let mut map: HashMap<S::Elem, Simplex> = HashMap::with_capacity(elems.len());
        let mut cells = Vec::new();
        let mut count = 0;
        for e in elems {
            if map.contains_key(&e) {
                continue;
            }
            let mut degenerate = None;
            if n > 0 {
                for j in 0..n {
                    let y = src.face(n, j, &e);
                    if src.degeneracy(n - 1, j, &y) == e {
                        degenerate = Some((j, y));
                        break;
                    }
                }
            }
            let s = match degenerate {
                Some((j, y)) => lookup[n - 1][&y].degenerate(n, 1 << j),
                None => {
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| lookup[n - 1][&src.face(n, i, &e)]).collect()
                    };
                    let id = b.add_cell(src.name(n, count, &e), faces);
                    count += 1;
                    cells.push(e.clone());
                    Simplex::of_cell(id)
                }
            };
            map.insert(e, s);
        }
        if n == cap && !cells.is_empty() {
            top_nondeg = true;
        }
        lookup.push(map);
        cell_elems.push(cells);
    }
    let set = Arc::new(b.build());
    cell_elems.truncate(set.cell_counts().len());
    Realized { set, cap, truncated: top_nondeg, cell_elems, lookup }
}

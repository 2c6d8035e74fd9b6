use std::fmt;
use std::sync::Arc;

use super::set::{CellId, Simplex, SimplicialSet};
use crate::error::{Error, Result};

/// A simplicial map given by the images of the nondegenerate source cells.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Vec<Simplex>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for SimplicialMap {}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for c in self.source.all_cells() {
            m.entry(&self.source.name(c), &self.target.show(self.image_of_cell(c)));
        }
        m.finish()
    }
}

impl SimplicialMap {
    /// Builds a map and checks dimensions and face commutation.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let m = SimplicialMap::new_unchecked(source, target, images);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Self {
        SimplicialMap { source, target, images }
    }

    /// Builds a map from a per-cell assignment function.
    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(CellId) -> Simplex,
    ) -> Self {
        let images = (0..source.cell_counts().len())
            .map(|n| source.cells(n).map(&mut f).collect())
            .collect();
        SimplicialMap { source, target, images }
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        SimplicialMap::from_fn(x.clone(), x, Simplex::of_cell)
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(target: Arc<SimplicialSet>) -> Self {
        SimplicialMap { source: Arc::new(SimplicialSet::empty()), target, images: Vec::new() }
    }

    /// The unique map to a one-vertex target.
    pub fn to_point(source: Arc<SimplicialSet>, point: Arc<SimplicialSet>) -> Self {
        let v = CellId::new(0, 0);
        SimplicialMap::from_fn(source, point, |c| Simplex::of_cell(v).degenerate(c.dim(), full_mask(c.dim())))
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn image_of_cell(&self, c: CellId) -> Simplex {
        self.images[c.dim()][c.idx()]
    }

    pub fn image(&self, x: Simplex) -> Simplex {
        x.substitute(self.image_of_cell(x.cell()))
    }

    pub(crate) fn images(&self) -> &Vec<Vec<Simplex>> {
        &self.images
    }

    /// Verifies that every image lives in the right dimension and that faces commute.
    pub fn check(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        if self.images.len() != s.cell_counts().len() {
            return Err(Error::NotSimplicial("assignment does not cover the source".into()));
        }
        for n in 0..self.images.len() {
            if self.images[n].len() != s.cell_count(n) {
                return Err(Error::NotSimplicial(format!("assignment missing {n}-cells")));
            }
            for c in s.cells(n) {
                let y = self.image_of_cell(c);
                if y.dim() != n || !t.contains(y.cell()) {
                    return Err(Error::NotSimplicial(format!(
                        "cell {} is sent outside the target's {n}-simplices",
                        s.name(c)
                    )));
                }
                for (i, &face) in s.faces_of(c).iter().enumerate() {
                    if self.image(face) != t.face(y, i) {
                        return Err(Error::NotSimplicial(format!(
                            "d_{i} does not commute on cell {}: {} vs {}",
                            s.name(c),
                            t.show(self.image(face)),
                            t.show(t.face(y, i))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !(Arc::ptr_eq(&self.target, &other.source) || *self.target == *other.source) {
            return Err(Error::Incompatible("composing maps with mismatched ends".into()));
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &SimplicialMap) -> SimplicialMap {
        let images = self
            .images
            .iter()
            .map(|lvl| lvl.iter().map(|&y| other.image(y)).collect())
            .collect();
        SimplicialMap { source: self.source.clone(), target: other.target.clone(), images }
    }

    /// Injective in every level: nondegenerate cells go to distinct nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|y| !y.is_degenerate() && seen.insert(y.cell()))
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.source.total_cells() == self.target.total_cells()
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target
            && self
                .source
                .all_cells()
                .into_iter()
                .all(|c| self.image_of_cell(c) == Simplex::of_cell(c))
    }

    /// Same cell assignment, ignoring the ends.
    pub fn images_eq(&self, other: &SimplicialMap) -> bool {
        self.images == other.images
    }

    /// Replaces source and target by equal sets (pointer rebinding).
    pub(crate) fn rebind(&self, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> SimplicialMap {
        SimplicialMap { source, target, images: self.images.clone() }
    }

    /// Cell assignment as (name, word, image name) triples.
    pub fn assignment(&self) -> Vec<(String, Vec<usize>, String)> {
        self.source
            .all_cells()
            .into_iter()
            .map(|c| {
                let y = self.image_of_cell(c);
                (
                    self.source.name(c).to_string(),
                    y.word().indices().to_vec(),
                    self.target.name(y.cell()).to_string(),
                )
            })
            .collect()
    }
}

pub(crate) fn full_mask(dim: usize) -> u32 {
    if dim == 0 {
        0
    } else {
        (1u32 << dim) - 1
    }
}

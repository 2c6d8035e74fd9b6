use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::ops::{self, compose_masks, epi_mono, surj_value, DegeneracyWord, Values, MAX_DIM};
use crate::error::{Error, Result};

/// Identifier of a nondegenerate cell: its dimension and position in that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellId {
    pub dim: u8,
    pub idx: u32,
}

impl CellId {
    pub fn new(dim: usize, idx: usize) -> Self {
        CellId { dim: dim as u8, idx: idx as u32 }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn idx(self) -> usize {
        self.idx as usize
    }
}

/// A simplex in Eilenberg–Zilber normal form: a nondegenerate cell together
/// with a surjection (degeneracy mask) onto its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    dim: u8,
    mask: u32,
    cell: CellId,
}

/// Alias used where the normal-form reading matters.
pub type FormalSimplex = Simplex;

impl Simplex {
    /// The nondegenerate simplex of a cell.
    pub fn of_cell(cell: CellId) -> Self {
        Simplex { dim: cell.dim, mask: 0, cell }
    }

    pub fn new(dim: usize, mask: u32, cell: CellId) -> Result<Self> {
        if dim > MAX_DIM || mask >> dim != 0 {
            return Err(Error::OutOfRange(format!("mask {mask:#b} on dimension {dim}")));
        }
        if dim - mask.count_ones() as usize != cell.dim() {
            return Err(Error::OutOfRange(format!(
                "degeneracy of length {} does not lift a {}-cell to dimension {dim}",
                mask.count_ones(),
                cell.dim
            )));
        }
        Ok(Simplex { dim: dim as u8, mask, cell })
    }

    pub fn from_word(word: &DegeneracyWord, cell: CellId) -> Result<Self> {
        let dim = cell.dim() + word.len();
        let mask = word.to_mask(dim)?;
        Simplex::new(dim, mask, cell)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn cell(&self) -> CellId {
        self.cell
    }

    pub fn word(&self) -> DegeneracyWord {
        DegeneracyWord::from_mask(self.mask)
    }

    pub fn is_degenerate(&self) -> bool {
        self.mask != 0
    }

    /// `self · η` for a surjection `η : [new_dim] -> [self.dim]` given by its mask.
    pub fn degenerate(self, new_dim: usize, eta: u32) -> Simplex {
        debug_assert_eq!(new_dim - eta.count_ones() as usize, self.dim());
        Simplex {
            dim: new_dim as u8,
            mask: compose_masks(new_dim, eta, self.mask),
            cell: self.cell,
        }
    }

    /// Re-target the cell while keeping the degeneracy.
    pub(crate) fn with_cell(self, cell: CellId) -> Simplex {
        Simplex { cell, ..self }
    }

    /// Replace the underlying cell by a simplex `y` (its image), composing degeneracies.
    pub fn substitute(self, y: Simplex) -> Simplex {
        y.degenerate(self.dim(), self.mask)
    }
}

#[derive(Default)]
pub(crate) struct LevelIndex {
    pub by_faces: HashMap<Vec<Simplex>, Vec<Simplex>>,
}

#[derive(Default)]
struct IndexCache(RwLock<Vec<Option<Arc<LevelIndex>>>>);

impl Clone for IndexCache {
    fn clone(&self) -> Self {
        IndexCache::default()
    }
}

/// A finite simplicial set presented by its nondegenerate cells and their
/// face data in normal form.
#[derive(Clone, Default)]
pub struct SimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    cache: IndexCache,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.faces == other.faces
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialSet")
            .field("cells", &self.cell_counts())
            .finish()
    }
}

/// One failed identity found by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub cell: String,
    pub dim: usize,
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet::default()
    }

    pub fn builder() -> SimplicialSetBuilder {
        SimplicialSetBuilder::default()
    }

    /// Highest dimension with a cell; `None` for the empty simplicial set.
    pub fn dim(&self) -> Option<usize> {
        self.names.iter().rposition(|l| !l.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.names.iter().all(|l| l.is_empty())
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |l| l.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.names.iter().map(|l| l.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|l| l.len()).sum()
    }

    /// Cells of dimension `n` in canonical order.
    pub fn cells(&self, n: usize) -> impl Iterator<Item = CellId> {
        (0..self.cell_count(n)).map(move |i| CellId::new(n, i))
    }

    /// All cells, ordered by dimension then position.
    pub fn all_cells(&self) -> Vec<CellId> {
        (0..self.names.len()).flat_map(|n| self.cells(n)).collect()
    }

    pub fn name(&self, c: CellId) -> &str {
        &self.names[c.dim()][c.idx()]
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.names.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn find(&self, name: &str) -> Option<CellId> {
        self.names.iter().enumerate().find_map(|(n, level)| {
            level.iter().position(|s| s == name).map(|i| CellId::new(n, i))
        })
    }

    pub fn contains(&self, c: CellId) -> bool {
        c.idx() < self.cell_count(c.dim())
    }

    /// Face data of a cell (`dim + 1` simplices, empty for vertices).
    pub fn faces_of(&self, c: CellId) -> &[Simplex] {
        &self.faces[c.dim()][c.idx()]
    }

    /// `x · θ` for a monotone map `θ : [p] -> [x.dim]` given by its values.
    pub fn apply(&self, x: Simplex, theta: &[u8]) -> Simplex {
        let vals: Values = theta
            .iter()
            .map(|&i| surj_value(x.mask, i as usize) as u8)
            .collect();
        let (eta, image) = epi_mono(&vals);
        let p = theta.len() - 1;
        let base = if image.len() == x.cell.dim() + 1 {
            Simplex::of_cell(x.cell)
        } else {
            self.cell_along(x.cell, &image)
        };
        base.degenerate(p, eta)
    }

    fn cell_along(&self, c: CellId, image: &[u8]) -> Simplex {
        let missing = (0..=c.dim() as u8)
            .find(|v| !image.contains(v))
            .expect("proper face") as usize;
        let y = self.faces[c.dim()][c.idx()][missing];
        let adjusted: Values = image
            .iter()
            .map(|&v| if v as usize > missing { v - 1 } else { v })
            .collect();
        self.apply(y, &adjusted)
    }

    /// `d_i x`.
    pub fn face(&self, x: Simplex, i: usize) -> Simplex {
        self.apply(x, &ops::coface(x.dim(), i))
    }

    /// `s_j x`.
    pub fn degeneracy(&self, x: Simplex, j: usize) -> Simplex {
        x.degenerate(x.dim() + 1, 1 << j)
    }

    /// Vertices of a simplex in order.
    pub fn vertices_of(&self, x: Simplex) -> Vec<CellId> {
        (0..=x.dim())
            .map(|i| self.apply(x, &[i as u8]).cell)
            .collect()
    }

    /// Every `n`-simplex (degenerate ones included): nondegenerate cells first,
    /// then by decreasing cell dimension.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in (0..=n.min(self.names.len().saturating_sub(1))).rev() {
            if self.cell_count(k) == 0 {
                continue;
            }
            for mask in ops::surjection_masks(n, k) {
                for c in self.cells(k) {
                    out.push(Simplex { dim: n as u8, mask, cell: c });
                }
            }
        }
        out
    }

    /// Number of `n`-simplices.
    pub fn simplex_count(&self, n: usize) -> usize {
        (0..=n)
            .map(|k| self.cell_count(k) * binomial(n, k))
            .sum()
    }

    pub(crate) fn level_index(&self, n: usize) -> Arc<LevelIndex> {
        if let Some(Some(ix)) = self.cache.0.read().unwrap().get(n) {
            return ix.clone();
        }
        let all = self.simplices(n);
        let mut by_faces: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
        if n > 0 {
            for &x in &all {
                let key: Vec<Simplex> = (0..=n).map(|i| self.face(x, i)).collect();
                by_faces.entry(key).or_default().push(x);
            }
        }
        let ix = Arc::new(LevelIndex { by_faces });
        let mut w = self.cache.0.write().unwrap();
        if w.len() <= n {
            w.resize(n + 1, None);
        }
        w[n] = Some(ix.clone());
        ix
    }

    /// `n`-simplices with the given faces.
    pub fn simplices_with_faces(&self, faces: &[Simplex]) -> Vec<Simplex> {
        let n = faces.len() - 1;
        let ix = self.level_index(n);
        ix.by_faces.get(faces).cloned().unwrap_or_default()
    }

    /// Checks face-target well-formedness and the identities `d_i d_j = d_{j-1} d_i`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |c: CellId, name: &str, i, j, detail: String| {
            violations.push(Violation { cell: name.to_string(), dim: c.dim(), i, j, detail })
        };
        let mut well_formed = true;
        for n in 0..self.names.len() {
            for c in self.cells(n) {
                let fs = self.faces_of(c);
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    push(c, self.name(c), 0, 0, format!("{} faces, expected {expected}", fs.len()));
                    well_formed = false;
                    continue;
                }
                for (i, y) in fs.iter().enumerate() {
                    let ok = y.dim() + 1 == n
                        && y.mask >> y.dim() == 0
                        && y.dim() - y.mask.count_ones() as usize == y.cell.dim()
                        && self.contains(y.cell);
                    if !ok {
                        push(c, self.name(c), i, i, format!("face {i} is not a valid {}-simplex", n - 1));
                        well_formed = false;
                    }
                }
            }
        }
        if !well_formed {
            return ValidationReport { violations };
        }
        for n in 2..self.names.len() {
            for c in self.cells(n) {
                let fs = self.faces_of(c);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(fs[j], i);
                        let rhs = self.face(fs[i], j - 1);
                        if lhs != rhs {
                            push(
                                c,
                                self.name(c),
                                i,
                                j,
                                format!(
                                    "d_{i} d_{j} = {} but d_{} d_{i} = {}",
                                    self.show(lhs),
                                    j - 1,
                                    self.show(rhs)
                                ),
                            );
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Human-readable form `s_2 s_0 name`.
    pub fn show(&self, x: Simplex) -> String {
        let mut s = String::new();
        for i in x.word().indices() {
            s.push_str(&format!("s{i} "));
        }
        s.push_str(self.name(x.cell));
        s
    }

    /// The sub-simplicial set on the cells selected by `keep`, which must be
    /// closed under faces. Returns the subcomplex and, per kept cell, its new id.
    pub fn subcomplex(
        &self,
        keep: impl Fn(CellId) -> bool,
    ) -> Result<(SimplicialSet, HashMap<CellId, CellId>)> {
        let mut renum: HashMap<CellId, CellId> = HashMap::new();
        let mut b = SimplicialSetBuilder::default();
        for n in 0..self.names.len() {
            for c in self.cells(n) {
                if !keep(c) {
                    continue;
                }
                let mut faces = Vec::with_capacity(n + 1);
                for y in self.faces_of(c) {
                    let nc = renum.get(&y.cell).ok_or_else(|| {
                        Error::Malformed(format!(
                            "selection not closed under faces at {}",
                            self.name(c)
                        ))
                    })?;
                    faces.push(y.with_cell(*nc));
                }
                let id = b.add_cell(self.name(c).to_string(), faces);
                renum.insert(c, id);
            }
        }
        Ok((b.build(), renum))
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Incremental construction of a presentation.
#[derive(Default, Clone)]
pub struct SimplicialSetBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl SimplicialSetBuilder {
    pub fn add_vertex(&mut self, name: impl Into<String>) -> CellId {
        self.add_cell(name, Vec::new())
    }

    /// Adds a cell whose dimension is `faces.len() - 1` (a vertex for no faces).
    pub fn add_cell(&mut self, name: impl Into<String>, faces: Vec<Simplex>) -> CellId {
        let n = faces.len().saturating_sub(1);
        while self.names.len() <= n {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        self.names[n].push(name.into());
        self.faces[n].push(faces);
        CellId::new(n, self.names[n].len() - 1)
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |l| l.len())
    }

    pub fn build(mut self) -> SimplicialSet {
        while self.names.last().is_some_and(|l| l.is_empty()) {
            self.names.pop();
            self.faces.pop();
        }
        SimplicialSet { names: self.names, faces: self.faces, cache: IndexCache::default() }
    }

    /// Builds and validates; the first violation becomes the error.
    pub fn build_checked(self) -> Result<SimplicialSet> {
        let x = self.build();
        let report = x.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::Malformed(format!(
                "cell {} (dim {}), identity ({}, {}): {}",
                v.cell, v.dim, v.i, v.j, v.detail
            )));
        }
        Ok(x)
    }
}

/// `d_i (word · cell)` in normal form.
pub fn normalize(x: &SimplicialSet, word: &DegeneracyWord, cell: CellId, face_index: usize) -> Result<Simplex> {
    if !x.contains(cell) {
        return Err(Error::OutOfRange(format!("no cell {cell:?}")));
    }
    let s = Simplex::from_word(word, cell)?;
    if s.dim() == 0 || face_index > s.dim() {
        return Err(Error::OutOfRange(format!(
            "face index {face_index} on a {}-simplex",
            s.dim()
        )));
    }
    Ok(x.face(s, face_index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::standard_simplex;

    #[test]
    fn normalize_degenerate_vertices() {
        let mut b = SimplicialSet::builder();
        let v = b.add_vertex("v");
        let x = b.build();
        let s0 = DegeneracyWord::new(vec![0]).unwrap();
        let s10 = DegeneracyWord::new(vec![1, 0]).unwrap();
        assert_eq!(normalize(&x, &s0, v, 0).unwrap(), Simplex::of_cell(v));
        assert_eq!(normalize(&x, &s0, v, 1).unwrap(), Simplex::of_cell(v));
        let r = normalize(&x, &s10, v, 0).unwrap();
        assert_eq!(r.word(), s0);
        assert!(normalize(&x, &s0, v, 2).is_err());
    }

    #[test]
    fn faces_of_degenerate_edge_in_triangle() {
        let d2 = standard_simplex(2);
        let e01 = d2.find("01").unwrap();
        let x = Simplex::of_cell(e01).degenerate(2, 0b10);
        assert_eq!(d2.face(x, 2), Simplex::of_cell(e01));
        assert_eq!(d2.face(x, 1), Simplex::of_cell(e01));
        let v1 = d2.find("1").unwrap();
        assert_eq!(d2.face(x, 0), Simplex::of_cell(v1).degenerate(1, 1));
        assert_eq!(d2.simplex_count(2), d2.simplices(2).len());
        assert_eq!(d2.simplex_count(3), 15);
    }

    #[test]
    fn broken_presentation_reports_identity() {
        let mut b = SimplicialSet::builder();
        let a = b.add_vertex("a");
        let c = b.add_vertex("c");
        let e = b.add_cell("e", vec![Simplex::of_cell(c), Simplex::of_cell(a)]);
        let f = b.add_cell("f", vec![Simplex::of_cell(a), Simplex::of_cell(c)]);
        b.add_cell("t", vec![Simplex::of_cell(e), Simplex::of_cell(f), Simplex::of_cell(e)]);
        let x = b.build();
        let report = x.validate();
        assert!(!report.is_ok());
        assert!(report.violations.iter().all(|v| v.cell == "t"));
        assert!(SimplicialSet::empty().validate().is_ok());
    }
}

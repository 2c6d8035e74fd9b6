use std::fmt;
use std::sync::Arc;

use super::category::SmallCategory;
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// A functor from a finite category to finite simplicial sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram {
    shape: Arc<SmallCategory>,
    objects: Vec<Arc<SimplicialSet>>,
    actions: Vec<SimplicialMap>,
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_map();
        for (o, x) in self.shape.objects().iter().zip(&self.objects) {
            d.entry(o, &x.cell_counts());
        }
        d.finish()
    }
}

impl Diagram {
    /// Builds a diagram and checks functoriality.
    pub fn new(
        shape: Arc<SmallCategory>,
        objects: Vec<Arc<SimplicialSet>>,
        actions: Vec<SimplicialMap>,
    ) -> Result<Self> {
        let d = Diagram::new_unchecked(shape, objects, actions)?;
        d.check()?;
        Ok(d)
    }

    /// Builds a diagram without the functoriality check; actions are rebound
    /// to the listed objects.
    pub fn new_unchecked(
        shape: Arc<SmallCategory>,
        objects: Vec<Arc<SimplicialSet>>,
        actions: Vec<SimplicialMap>,
    ) -> Result<Self> {
        if objects.len() != shape.object_count() || actions.len() != shape.morphisms().len() {
            return Err(Error::Shape("diagram does not match its shape".into()));
        }
        let actions = actions
            .into_iter()
            .zip(shape.morphisms())
            .map(|(a, m)| {
                if a.source().as_ref() != objects[m.source].as_ref()
                    || a.target().as_ref() != objects[m.target].as_ref()
                {
                    return Err(Error::Functoriality(format!(
                        "action of {} has the wrong source or target",
                        m.name
                    )));
                }
                Ok(a.rebind(objects[m.source].clone(), objects[m.target].clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram { shape, objects, actions })
    }

    pub(crate) fn from_parts(
        shape: Arc<SmallCategory>,
        objects: Vec<Arc<SimplicialSet>>,
        actions: Vec<SimplicialMap>,
    ) -> Self {
        Diagram { shape, objects, actions }
    }

    /// Checks that actions are simplicial, identities act trivially and composition is respected.
    pub fn check(&self) -> Result<()> {
        let cat = &self.shape;
        for (f, a) in self.actions.iter().enumerate() {
            a.check().map_err(|e| {
                Error::Functoriality(format!("action of {}: {e}", cat.morphisms()[f].name))
            })?;
        }
        for o in 0..cat.object_count() {
            if !self.actions[cat.identity(o)].is_identity() {
                return Err(Error::Functoriality(format!(
                    "identity of {} does not act trivially",
                    cat.objects()[o]
                )));
            }
        }
        for (g, f, h) in cat.triples() {
            if self.actions[f].then_unchecked(&self.actions[g]).images_eq(&self.actions[h]) {
                continue;
            }
            return Err(Error::Functoriality(format!(
                "act({}) ∘ act({}) ≠ act({})",
                cat.morphisms()[g].name,
                cat.morphisms()[f].name,
                cat.morphisms()[h].name
            )));
        }
        Ok(())
    }

    /// The constant diagram at `x`.
    pub fn constant(shape: Arc<SmallCategory>, x: Arc<SimplicialSet>) -> Self {
        let objects = vec![x.clone(); shape.object_count()];
        let actions = shape.morphisms().iter().map(|_| SimplicialMap::identity(x.clone())).collect();
        Diagram { shape, objects, actions }
    }

    /// The terminal diagram.
    pub fn point(shape: Arc<SmallCategory>) -> Self {
        Diagram::constant(shape, Arc::new(crate::simplicial::point()))
    }

    /// The initial diagram.
    pub fn empty(shape: Arc<SmallCategory>) -> Self {
        Diagram::constant(shape, Arc::new(SimplicialSet::empty()))
    }

    /// A diagram over the terminal category.
    pub fn single(x: Arc<SimplicialSet>) -> Self {
        Diagram::constant(Arc::new(SmallCategory::terminal()), x)
    }

    pub fn shape(&self) -> &Arc<SmallCategory> {
        &self.shape
    }

    pub fn at(&self, o: usize) -> &Arc<SimplicialSet> {
        &self.objects[o]
    }

    pub fn objects(&self) -> &[Arc<SimplicialSet>] {
        &self.objects
    }

    pub fn act(&self, f: usize) -> &SimplicialMap {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[SimplicialMap] {
        &self.actions
    }

    pub fn is_empty(&self) -> bool {
        self.objects.iter().all(|x| x.is_empty())
    }

    pub fn total_cells(&self) -> usize {
        self.objects.iter().map(|x| x.total_cells()).sum()
    }

    pub fn dim(&self) -> Option<usize> {
        self.objects.iter().filter_map(|x| x.dim()).max()
    }
}

/// A natural transformation between diagrams of the same shape.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramMap {
    source: Arc<Diagram>,
    target: Arc<Diagram>,
    components: Vec<SimplicialMap>,
}

impl fmt::Debug for DiagramMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl DiagramMap {
    /// Builds a map and checks every component and naturality square.
    pub fn new(source: Arc<Diagram>, target: Arc<Diagram>, components: Vec<SimplicialMap>) -> Result<Self> {
        let m = DiagramMap::new_unchecked(source, target, components)?;
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(
        source: Arc<Diagram>,
        target: Arc<Diagram>,
        components: Vec<SimplicialMap>,
    ) -> Result<Self> {
        if source.shape() != target.shape() {
            return Err(Error::Shape("source and target have different shapes".into()));
        }
        if components.len() != source.shape().object_count() {
            return Err(Error::Shape("one component per object required".into()));
        }
        let components = components
            .into_iter()
            .enumerate()
            .map(|(o, c)| c.rebind(source.at(o).clone(), target.at(o).clone()))
            .collect();
        Ok(DiagramMap { source, target, components })
    }

    pub(crate) fn from_parts(source: Arc<Diagram>, target: Arc<Diagram>, components: Vec<SimplicialMap>) -> Self {
        DiagramMap { source, target, components }
    }

    pub fn check(&self) -> Result<()> {
        let cat = self.source.shape();
        for (o, c) in self.components.iter().enumerate() {
            if c.source().as_ref() != self.source.at(o).as_ref() || c.target().as_ref() != self.target.at(o).as_ref() {
                return Err(Error::Naturality(format!("component at {} has wrong ends", cat.objects()[o])));
            }
            c.check()?;
        }
        for (f, m) in cat.morphisms().iter().enumerate() {
            let lhs = self.components[m.source].then_unchecked(self.target.act(f));
            let rhs = self.source.act(f).then_unchecked(&self.components[m.target]);
            if !lhs.images_eq(&rhs) {
                return Err(Error::Naturality(format!("square for {} does not commute", m.name)));
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<Diagram>) -> Self {
        let components = x.objects().iter().map(|o| SimplicialMap::identity(o.clone())).collect();
        DiagramMap { source: x.clone(), target: x, components }
    }

    /// The unique map from the empty diagram of the same shape.
    pub fn from_empty(target: Arc<Diagram>) -> Self {
        let source = Arc::new(Diagram::empty(target.shape().clone()));
        let components = target
            .objects()
            .iter()
            .zip(source.objects())
            .map(|(t, s)| SimplicialMap::from_empty(t.clone()).rebind(s.clone(), t.clone()))
            .collect();
        DiagramMap { source, target, components }
    }

    /// The unique map to the terminal diagram.
    pub fn to_point(source: Arc<Diagram>) -> Self {
        let target = Arc::new(Diagram::point(source.shape().clone()));
        let components = source
            .objects()
            .iter()
            .enumerate()
            .map(|(o, s)| SimplicialMap::to_point(s.clone(), target.at(o).clone()))
            .collect();
        DiagramMap { source, target, components }
    }

    pub fn source(&self) -> &Arc<Diagram> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Diagram> {
        &self.target
    }

    pub fn component(&self, o: usize) -> &SimplicialMap {
        &self.components[o]
    }

    pub fn components(&self) -> &[SimplicialMap] {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DiagramMap) -> Result<DiagramMap> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(Error::Incompatible("composing diagram maps with mismatched ends".into()));
        }
        Ok(self.then_unchecked(other))
    }

    pub(crate) fn then_unchecked(&self, other: &DiagramMap) -> DiagramMap {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.then_unchecked(b))
            .collect();
        DiagramMap { source: self.source.clone(), target: other.target.clone(), components }
    }

    /// Same cell assignments in every component (ends compared by value elsewhere).
    pub fn images_eq(&self, other: &DiagramMap) -> bool {
        self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.images_eq(b))
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| c.is_injective())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|c| c.is_identity())
    }
}

//! The JSON document format (`eqloc/1`) and the in-memory workspace.
//!
//! A document lists categories, simplicial sets, diagrams, maps of diagrams
//! and localization specs. Faces and map images are written as
//! `[degeneracy word, cell name]` pairs with strictly decreasing words.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, DiagramMap, Morphism, SmallCategory};
use crate::error::{Error, Result};
use crate::simplicial::{CellId, DegeneracyWord, Simplex, SimplicialMap, SimplicialSet};

pub const SCHEMA: &str = "eqloc/1";

/// `[word, cell]`.
pub type Ref = (Vec<usize>, String);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategoryDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<SetDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagrams: Vec<DiagramDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub specs: Vec<SpecDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, Provenance>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reports: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub name: String,
    /// `terminal`, `arrow`, `cyclic:N` or `chaotic:N`; the table fields are then ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    /// Object name to identity morphism name.
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    /// `[g, f, g ∘ f]`; composites with identities may be omitted.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDoc {
    pub name: String,
    /// Cells by dimension.
    pub cells: Vec<Vec<CellDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Ref>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub name: String,
    pub shape: String,
    /// Object name to set name.
    pub objects: BTreeMap<String, String>,
    /// Non-identity morphism name to cell images.
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, Ref>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Object name to cell images.
    pub components: BTreeMap<String, BTreeMap<String, Ref>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub name: String,
    /// A named simplicial map for fixed-pointwise localization (`empty-to-point`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixedpointwise: Option<String>,
    /// Names of maps of diagrams forming the set `S`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<String>,
}

/// Where an artifact came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    File { file: String },
    Derived {
        op: String,
        source: String,
        inputs: BTreeMap<String, String>,
        args: BTreeMap<String, serde_json::Value>,
    },
}

/// Parsed, validated artifacts.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<SmallCategory>>,
    pub sets: BTreeMap<String, Arc<SimplicialSet>>,
    pub diagrams: BTreeMap<String, Arc<Diagram>>,
    pub maps: BTreeMap<String, DiagramMap>,
    pub specs: BTreeMap<String, SpecDoc>,
    pub provenance: BTreeMap<String, Provenance>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, col)
}

/// Position of the entry whose `"name"` is `name`, for diagnostics.
fn locate(text: &str, name: &str) -> Option<(usize, usize)> {
    let quoted = format!("\"{name}\"");
    let mut from = 0;
    while let Some(pos) = text[from..].find(&quoted) {
        let at = from + pos;
        let head = text[..at].trim_end();
        if let Some(h) = head.strip_suffix(':') {
            if h.trim_end().ends_with("\"name\"") {
                return Some(line_col(text, at));
            }
        }
        from = at + quoted.len();
    }
    None
}

fn diag(text: &str, entry: &str, e: Error) -> Error {
    match locate(text, entry) {
        Some((l, c)) => Error::Document(format!("line {l}, column {c}: in {entry}: {e}")),
        None => Error::Document(format!("in {entry}: {e}")),
    }
}

/// Parses and validates a document; an empty or whitespace-only text is an empty workspace.
pub fn parse(text: &str, file: Option<&str>) -> Result<Workspace> {
    if text.trim().is_empty() {
        return Ok(Workspace::default());
    }
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::Document(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if doc.schema != SCHEMA {
        return Err(Error::Document(format!("unsupported schema {:?}, expected {SCHEMA:?}", doc.schema)));
    }
    let mut ws = Workspace::default();
    ws.load(&doc, text, file)?;
    Ok(ws)
}

pub fn builtin_category(spec: &str) -> Result<SmallCategory> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let n = || arg.parse::<usize>().map_err(|_| Error::Document(format!("bad builtin category {spec:?}")));
    match kind {
        "terminal" => Ok(SmallCategory::terminal()),
        "arrow" => Ok(SmallCategory::arrow()),
        "cyclic" => Ok(SmallCategory::cyclic_group(n()?)),
        "chaotic" => Ok(SmallCategory::chaotic(n()?)),
        _ => Err(Error::Document(format!("unknown builtin category {spec:?}"))),
    }
}

fn category_from_doc(c: &CategoryDoc) -> Result<SmallCategory> {
    if let Some(b) = &c.builtin {
        return builtin_category(b);
    }
    let obj = |n: &str| {
        c.objects
            .iter()
            .position(|o| o == n)
            .ok_or_else(|| Error::UnknownName(format!("object {n}")))
    };
    let morphisms = c
        .morphisms
        .iter()
        .map(|m| Ok(Morphism { name: m.name.clone(), source: obj(&m.source)?, target: obj(&m.target)? }))
        .collect::<Result<Vec<_>>>()?;
    let mor = |n: &str| {
        morphisms
            .iter()
            .position(|m| m.name == n)
            .ok_or_else(|| Error::UnknownName(format!("morphism {n}")))
    };
    let identities = c
        .objects
        .iter()
        .map(|o| {
            let id = c
                .identities
                .get(o)
                .ok_or_else(|| Error::Category(format!("no identity for {o}")))?;
            mor(id)
        })
        .collect::<Result<Vec<_>>>()?;
    let triples = c
        .compose
        .iter()
        .map(|[g, f, h]| Ok((mor(g)?, mor(f)?, mor(h)?)))
        .collect::<Result<Vec<_>>>()?;
    SmallCategory::new(c.objects.clone(), morphisms, identities, &triples)
}

fn lookup_ref(x: &SimplicialSet, r: &Ref, dim: usize) -> Result<Simplex> {
    let cell = x.find(&r.1).ok_or_else(|| Error::UnknownName(format!("cell {}", r.1)))?;
    let word = DegeneracyWord::new(r.0.clone())?;
    let s = Simplex::from_word(&word, cell)?;
    if s.dim() != dim {
        return Err(Error::Malformed(format!(
            "{:?}·{} has dimension {}, expected {dim}",
            r.0,
            r.1,
            s.dim()
        )));
    }
    Ok(s)
}

fn set_from_doc(s: &SetDoc) -> Result<SimplicialSet> {
    let mut b = SimplicialSet::builder();
    let mut partial = SimplicialSet::empty();
    let mut seen = std::collections::HashSet::new();
    for (n, level) in s.cells.iter().enumerate() {
        for c in level {
            if !seen.insert(c.name.clone()) {
                return Err(Error::Malformed(format!("duplicate cell name {}", c.name)));
            }
            if n == 0 {
                if !c.faces.is_empty() {
                    return Err(Error::Malformed(format!("vertex {} has faces", c.name)));
                }
                b.add_vertex(c.name.clone());
                continue;
            }
            if c.faces.len() != n + 1 {
                return Err(Error::Malformed(format!("cell {} needs {} faces", c.name, n + 1)));
            }
            let faces = c
                .faces
                .iter()
                .map(|r| lookup_ref(&partial, r, n - 1))
                .collect::<Result<Vec<_>>>()?;
            b.add_cell(c.name.clone(), faces);
        }
        partial = b.clone().build();
    }
    b.build_checked()
}

fn map_from_images(src: &Arc<SimplicialSet>, tgt: &Arc<SimplicialSet>, imgs: &BTreeMap<String, Ref>) -> Result<SimplicialMap> {
    for k in imgs.keys() {
        if src.find(k).is_none() {
            return Err(Error::UnknownName(format!("cell {k} in map source")));
        }
    }
    let images = (0..=src.dim().unwrap_or(0))
        .take(if src.is_empty() { 0 } else { usize::MAX })
        .map(|n| {
            src.cells(n)
                .map(|c| {
                    let name = src.name(c);
                    let r = imgs.get(name).ok_or_else(|| Error::Malformed(format!("no image for cell {name}")))?;
                    lookup_ref(tgt, r, n)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(src.clone(), tgt.clone(), images)
}

impl Workspace {
    pub fn load(&mut self, doc: &Document, text: &str, file: Option<&str>) -> Result<()> {
        let mut names = std::collections::HashSet::new();
        let mut fresh = |n: &str| -> Result<()> {
            if names.insert(n.to_string()) {
                Ok(())
            } else {
                Err(Error::Document(format!("name {n} is used twice")))
            }
        };
        let origin = |ws: &mut Workspace, n: &str| {
            if let (Some(f), false) = (file, doc.provenance.contains_key(n)) {
                ws.provenance.insert(n.to_string(), Provenance::File { file: f.to_string() });
            }
        };
        for c in &doc.categories {
            fresh(&c.name)?;
            let cat = category_from_doc(c).map_err(|e| diag(text, &c.name, e))?;
            self.categories.insert(c.name.clone(), Arc::new(cat));
            origin(self, &c.name);
        }
        for s in &doc.sets {
            fresh(&s.name)?;
            let x = set_from_doc(s).map_err(|e| diag(text, &s.name, e))?;
            self.sets.insert(s.name.clone(), Arc::new(x));
            origin(self, &s.name);
        }
        for d in &doc.diagrams {
            fresh(&d.name)?;
            let x = self.diagram_from_doc(d).map_err(|e| diag(text, &d.name, e))?;
            self.diagrams.insert(d.name.clone(), Arc::new(x));
            origin(self, &d.name);
        }
        for m in &doc.maps {
            fresh(&m.name)?;
            let f = self.map_from_doc(m).map_err(|e| diag(text, &m.name, e))?;
            self.maps.insert(m.name.clone(), f);
            origin(self, &m.name);
        }
        for s in &doc.specs {
            fresh(&s.name)?;
            for m in &s.maps {
                if !self.maps.contains_key(m) {
                    return Err(diag(text, &s.name, Error::UnknownName(format!("map {m}"))));
                }
            }
            if s.fixedpointwise.is_some() == !s.maps.is_empty() {
                return Err(diag(text, &s.name, Error::Generator("a spec needs exactly one of fixedpointwise, maps".into())));
            }
            self.specs.insert(s.name.clone(), s.clone());
            origin(self, &s.name);
        }
        for (k, v) in &doc.provenance {
            self.provenance.insert(k.clone(), v.clone());
        }
        Ok(())
    }

    /// A declared category or a builtin spec such as `cyclic:2`.
    pub fn category(&self, name: &str) -> Result<Arc<SmallCategory>> {
        match self.categories.get(name) {
            Some(c) => Ok(c.clone()),
            None => builtin_category(name).map(Arc::new).map_err(|_| Error::UnknownName(format!("category {name}"))),
        }
    }

    pub fn diagram(&self, name: &str) -> Result<&Arc<Diagram>> {
        self.diagrams.get(name).ok_or_else(|| Error::UnknownName(format!("diagram {name}")))
    }

    pub fn map(&self, name: &str) -> Result<&DiagramMap> {
        self.maps.get(name).ok_or_else(|| Error::UnknownName(format!("map {name}")))
    }

    pub fn set(&self, name: &str) -> Result<&Arc<SimplicialSet>> {
        self.sets.get(name).ok_or_else(|| Error::UnknownName(format!("set {name}")))
    }

    fn diagram_from_doc(&self, d: &DiagramDoc) -> Result<Diagram> {
        let shape = self.category(&d.shape)?;
        let objects = shape
            .objects()
            .iter()
            .map(|o| {
                let s = d.objects.get(o).ok_or_else(|| Error::Shape(format!("no value at object {o}")))?;
                Ok(self.set(s)?.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        for k in d.actions.keys() {
            let f = shape.find_morphism(k).ok_or_else(|| Error::UnknownName(format!("morphism {k}")))?;
            if shape.is_identity(f) {
                return Err(Error::Functoriality(format!("identity {k} must not be given an action")));
            }
        }
        let actions = shape
            .morphisms()
            .iter()
            .enumerate()
            .map(|(f, m)| {
                let (s, t) = (&objects[m.source], &objects[m.target]);
                if shape.is_identity(f) {
                    return Ok(SimplicialMap::identity(s.clone()));
                }
                let imgs = d
                    .actions
                    .get(&m.name)
                    .ok_or_else(|| Error::Functoriality(format!("no action for {}", m.name)))?;
                map_from_images(s, t, imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(shape, objects, actions)
    }

    fn map_from_doc(&self, m: &MapDoc) -> Result<DiagramMap> {
        let a = self.diagram(&m.source)?.clone();
        let b = self.diagram(&m.target)?.clone();
        let comps = a
            .shape()
            .objects()
            .iter()
            .enumerate()
            .map(|(o, name)| {
                let imgs = m
                    .components
                    .get(name)
                    .ok_or_else(|| Error::Shape(format!("no component at {name}")))?;
                map_from_images(a.at(o), b.at(o), imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(a, b, comps)
    }
}

/// Serialization of in-memory artifacts into a document.
#[derive(Clone, Debug, Default)]
pub struct DocumentWriter {
    doc: Document,
    categories: HashMap<*const SmallCategory, String>,
    diagrams: HashMap<*const Diagram, String>,
}

pub fn category_doc(name: &str, c: &SmallCategory) -> CategoryDoc {
    let objs = c.objects();
    let ms = c.morphisms();
    let mut compose = Vec::new();
    for g in 0..ms.len() {
        for f in 0..ms.len() {
            if let Some(h) = c.compose(g, f) {
                if !c.is_identity(g) && !c.is_identity(f) {
                    compose.push([ms[g].name.clone(), ms[f].name.clone(), ms[h].name.clone()]);
                }
            }
        }
    }
    CategoryDoc {
        name: name.to_string(),
        builtin: None,
        objects: objs.to_vec(),
        morphisms: ms
            .iter()
            .map(|m| MorphismDoc { name: m.name.clone(), source: objs[m.source].clone(), target: objs[m.target].clone() })
            .collect(),
        identities: (0..objs.len()).map(|o| (objs[o].clone(), ms[c.identity(o)].name.clone())).collect(),
        compose,
    }
}

pub fn set_doc(name: &str, x: &SimplicialSet) -> SetDoc {
    let cells = (0..=x.dim().unwrap_or(0))
        .take(if x.is_empty() { 0 } else { usize::MAX })
        .map(|n| {
            x.cells(n)
                .map(|c| CellDoc {
                    name: x.name(c).to_string(),
                    faces: if n == 0 { Vec::new() } else { x.faces_of(c).iter().map(|s| simplex_ref(x, *s)).collect() },
                })
                .collect()
        })
        .collect();
    SetDoc { name: name.to_string(), cells }
}

pub fn simplex_ref(x: &SimplicialSet, s: Simplex) -> Ref {
    (s.word().indices().to_vec(), x.name(s.cell()).to_string())
}

pub fn images_doc(m: &SimplicialMap) -> BTreeMap<String, Ref> {
    let src = m.source();
    src.all_cells()
        .into_iter()
        .map(|c| (src.name(c).to_string(), simplex_ref(m.target(), m.image_of_cell(c))))
        .collect()
}

impl DocumentWriter {
    pub fn new() -> Self {
        DocumentWriter { doc: Document { schema: SCHEMA.into(), ..Document::default() }, ..Default::default() }
    }

    /// Registers a category under `name` (once per instance).
    pub fn category(&mut self, name: &str, c: &Arc<SmallCategory>) -> String {
        let key = Arc::as_ptr(c);
        if let Some(n) = self.categories.get(&key) {
            return n.clone();
        }
        self.doc.categories.push(category_doc(name, c));
        self.categories.insert(key, name.to_string());
        name.to_string()
    }

    pub fn set(&mut self, name: &str, x: &SimplicialSet) -> String {
        self.doc.sets.push(set_doc(name, x));
        name.to_string()
    }

    /// Writes a diagram with its values as sets named `name.object`.
    pub fn diagram(&mut self, name: &str, x: &Arc<Diagram>, shape_name: &str) -> String {
        let key = Arc::as_ptr(x);
        if let Some(n) = self.diagrams.get(&key) {
            return n.clone();
        }
        let shape = self.category(shape_name, x.shape());
        let cat = x.shape();
        let mut objects = BTreeMap::new();
        for (o, on) in cat.objects().iter().enumerate() {
            let sn = self.set(&format!("{name}.{on}"), x.at(o));
            objects.insert(on.clone(), sn);
        }
        let actions = cat
            .morphisms()
            .iter()
            .enumerate()
            .filter(|(f, _)| !cat.is_identity(*f))
            .map(|(f, m)| (m.name.clone(), images_doc(x.act(f))))
            .collect();
        self.doc.diagrams.push(DiagramDoc { name: name.to_string(), shape, objects, actions });
        self.diagrams.insert(key, name.to_string());
        name.to_string()
    }

    /// Writes a map; its source and target must already be written.
    pub fn map(&mut self, name: &str, f: &DiagramMap) -> Result<String> {
        let src = self
            .diagrams
            .get(&Arc::as_ptr(f.source()))
            .cloned()
            .ok_or_else(|| Error::Document(format!("source of {name} not written")))?;
        let tgt = self
            .diagrams
            .get(&Arc::as_ptr(f.target()))
            .cloned()
            .ok_or_else(|| Error::Document(format!("target of {name} not written")))?;
        let cat = f.source().shape();
        let components = cat
            .objects()
            .iter()
            .enumerate()
            .map(|(o, on)| (on.clone(), images_doc(f.component(o))))
            .collect();
        self.doc.maps.push(MapDoc { name: name.to_string(), source: src, target: tgt, components });
        Ok(name.to_string())
    }

    pub fn provenance(&mut self, name: &str, p: Provenance) {
        self.doc.provenance.insert(name.to_string(), p);
    }

    pub fn report(&mut self, name: &str, v: serde_json::Value) {
        self.doc.reports.insert(name.to_string(), v);
    }

    pub fn finish(self) -> Document {
        self.doc
    }
}

/// Canonical text of a document (pretty JSON with a trailing newline).
pub fn to_text(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Resolves a cell name in a set.
pub fn cell(x: &SimplicialSet, name: &str) -> Result<CellId> {
    x.find(name).ok_or_else(|| Error::UnknownName(format!("cell {name}")))
}

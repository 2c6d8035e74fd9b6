use std::collections::BTreeMap;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqloc::diagram::hom::hom_complex;
use eqloc::diagram::ops::colim;
use eqloc::diagram::{DiagramMap, SmallCategory};
use eqloc::document::{self, parse, to_text, Document, DocumentWriter, Provenance, Workspace};
use eqloc::localization::{fixed_point_locality_report, is_s_local, localize, LocalizationSpec};
use eqloc::model::{
    cone, is_null_homotopic, left_properness_probe, pi0, pi_n_checked, probe_orbits, right_properness_probe, Verdict,
};
use eqloc::orbit::{orbit_category_of, orbit_setup};
use eqloc::simplicial::standard::point;
use eqloc::simplicial::{SimplicialMap, SimplicialSet};
use eqloc::soa::{
    pullback_over_colimit, rlp_check, setup_i, setup_j, small_object_argument, Member, Mode, RlpOutcome, SoaOptions,
    StopReason,
};
use eqloc::{Error, Result};

use crate::caps::Caps;

#[derive(Parser, Debug)]
#[command(name = "eqloc", version, about = "Diagrams of finite simplicial sets, small object arguments and equivariant localization")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Input document (`eqloc/1` JSON).
    #[arg(long)]
    pub doc: Option<String>,
    /// Write the result document here.
    #[arg(long)]
    pub out: Option<String>,
    /// Print the result document instead of the text report.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized utilities.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    #[value(name = "I")]
    I,
    #[value(name = "J")]
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Colimit of a diagram.
    Colim {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
    },
    /// Orbit decomposition and orbit category of a diagram.
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        level_cap: Option<usize>,
    },
    /// Hom-complex `hom(A, X)` truncated at the cap.
    Homcx {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        n_cap: Option<usize>,
    },
    /// Right lifting property of `against` with respect to `map`.
    Rlp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        against: String,
    },
    /// Small object argument factorization.
    Factorize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n_cap: Option<usize>,
        #[arg(long)]
        stages: Option<usize>,
        /// Attach every assigned square, not only those without a lift.
        #[arg(long)]
        strict: bool,
    },
    /// Localization `X -> L X`.
    Localize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        fixedpointwise_f: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        n_cap: Option<usize>,
        #[arg(long)]
        stages: Option<usize>,
    },
    /// Per-orbit locality of the fixed-point complexes.
    Locality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        fixedpointwise_f: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        n_cap: Option<usize>,
    },
    /// Homotopy sets of a simplicial set (or a one-object diagram).
    Pi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        complex: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Cone of a diagram.
    Cone {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
    },
    /// Null-homotopy search for a map.
    Nullcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
    },
    /// Left or right properness probe.
    ProperProbe {
        #[command(flatten)]
        common: Common,
        /// The cofibration (left) or fibration (right).
        #[arg(long)]
        map: String,
        /// The weak equivalence.
        #[arg(long)]
        weq: String,
        #[arg(long, value_enum)]
        kind: Side,
        #[arg(long)]
        n_cap: Option<usize>,
    },
    /// A seeded random simplicial set as a document.
    Random {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        cells: usize,
    },
    /// Re-runs the provenance of every derived artifact and compares bytes.
    Replay {
        #[command(flatten)]
        common: Common,
    },
}

impl Cli {
    pub fn common(&self) -> &Common {
        match &self.cmd {
            Cmd::Colim { common, .. }
            | Cmd::Orbits { common, .. }
            | Cmd::Homcx { common, .. }
            | Cmd::Rlp { common, .. }
            | Cmd::Factorize { common, .. }
            | Cmd::Localize { common, .. }
            | Cmd::Locality { common, .. }
            | Cmd::Pi { common, .. }
            | Cmd::Cone { common, .. }
            | Cmd::Nullcheck { common, .. }
            | Cmd::ProperProbe { common, .. }
            | Cmd::Random { common, .. }
            | Cmd::Replay { common } => common,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decisive,
    Inconclusive,
}

pub struct Outcome {
    pub doc: Document,
    pub human: String,
    pub status: Status,
}

fn load(common: &Common) -> Result<(Workspace, String)> {
    let path = common.doc.as_deref().ok_or_else(|| Error::Document("--doc is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("cannot read {path}: {e}")))?;
    Ok((parse(&text, Some(path))?, path.to_string()))
}

fn shape_name(ws: &Workspace, cat: &SmallCategory) -> String {
    ws.categories
        .iter()
        .find(|(_, c)| c.as_ref() == cat)
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| "shape".into())
}

/// Provenance of a derived artifact: the command, its input names and its resolved arguments.
struct Prov {
    op: &'static str,
    source: String,
    inputs: BTreeMap<String, String>,
    args: BTreeMap<String, Value>,
}

impl Prov {
    fn new(op: &'static str, source: &str) -> Self {
        Prov { op, source: source.to_string(), inputs: BTreeMap::new(), args: BTreeMap::new() }
    }

    fn input(mut self, k: &str, v: &str) -> Self {
        self.inputs.insert(k.into(), v.into());
        self
    }

    fn arg(mut self, k: &str, v: Value) -> Self {
        self.args.insert(k.into(), v);
        self
    }

    fn get(&self) -> Provenance {
        Provenance::Derived {
            op: self.op.into(),
            source: self.source.clone(),
            inputs: self.inputs.clone(),
            args: self.args.clone(),
        }
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Unknown => Status::Inconclusive,
        _ => Status::Decisive,
    }
}

fn resolve_spec(ws: &Workspace, f: &Option<String>, spec: &Option<String>) -> Result<Option<LocalizationSpec>> {
    let fixed = |name: &str| -> Result<LocalizationSpec> {
        match name {
            "empty-to-point" => Ok(LocalizationSpec::FixedPointwise {
                label: name.into(),
                f: SimplicialMap::from_empty(Arc::new(point())),
            }),
            other => Err(Error::UnknownName(format!("fixed-pointwise map {other} (known: empty-to-point)"))),
        }
    };
    match (f, spec) {
        (Some(_), Some(_)) => Err(Error::Generator("give either --fixedpointwise-f or --spec".into())),
        (Some(f), None) => Ok(Some(fixed(f)?)),
        (None, Some(s)) => {
            let sd = ws.specs.get(s).ok_or_else(|| Error::UnknownName(format!("spec {s}")))?;
            if let Some(f) = &sd.fixedpointwise {
                return Ok(Some(fixed(f)?));
            }
            let members = sd
                .maps
                .iter()
                .map(|m| {
                    Ok(Member { label: m.clone(), n: 0, k: None, map: ws.map(m)?.clone() })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(LocalizationSpec::Set(members)))
        }
        (None, None) => Ok(None),
    }
}

fn spec_f(spec: &LocalizationSpec) -> Option<&SimplicialMap> {
    match spec {
        LocalizationSpec::FixedPointwise { f, .. } => Some(f),
        LocalizationSpec::Set(_) => None,
    }
}

fn complex_of(ws: &Workspace, name: &str) -> Result<Arc<SimplicialSet>> {
    if let Some(x) = ws.sets.get(name) {
        return Ok(x.clone());
    }
    let d = ws.diagram(name)?;
    if d.objects().len() != 1 {
        return Err(Error::Shape(format!("{name} has more than one object")));
    }
    Ok(d.at(0).clone())
}

/// Adds the default caps and a truncation flag to reports that do not carry their own.
fn report(w: &mut DocumentWriter, caps: &Caps, name: &str, mut value: Value) {
    if let Value::Object(m) = &mut value {
        m.entry("caps").or_insert(json!({ "n_cap": caps.n_cap, "stages": caps.stages, "level_cap": caps.level_cap }));
        m.entry("truncated").or_insert(json!(false));
    } else {
        value = json!({
            "value": value,
            "caps": { "n_cap": caps.n_cap, "stages": caps.stages, "level_cap": caps.level_cap },
            "truncated": false,
        });
    }
    w.report(name, value);
}

pub fn execute(cli: &Cli, caps: &Caps) -> Result<Outcome> {
    let mut w = DocumentWriter::new();
    let mut human = String::new();
    let mut status = Status::Decisive;
    let mut eff = *caps;
    macro_rules! line {
        ($($t:tt)*) => {{ human.push_str(&format!($($t)*)); human.push('\n'); }};
    }
    match &cli.cmd {
        Cmd::Colim { common, diagram } => {
            let (ws, src) = load(common)?;
            let x = ws.diagram(diagram)?;
            let c = colim(x);
            let name = format!("{diagram}.colim");
            w.set(&name, &c.object);
            w.provenance(&name, Prov::new("colim", &src).input("diagram", diagram).get());
            line!("colim {diagram}: cells {:?}", c.object.cell_counts());
            report(&mut w, &eff, "colim", json!({ "diagram": diagram, "cells": c.object.cell_counts() }));
        }
        Cmd::Orbits { common, diagram, level_cap } => {
            let (ws, src) = load(common)?;
            let x = ws.diagram(diagram)?;
            let level_cap = level_cap.unwrap_or(caps.level_cap);
            eff.level_cap = level_cap;
            let setup = orbit_setup(x);
            let cat = orbit_category_of(x, level_cap);
            let sname = shape_name(&ws, x.shape());
            let prov = Prov::new("orbits", &src).input("diagram", diagram).arg("level-cap", json!(level_cap));
            for (k, t) in cat.orbits.iter().enumerate() {
                let name = format!("{diagram}.orbit{k}");
                w.diagram(&name, t, &sname);
                w.provenance(&name, prov.get());
            }
            line!("orbit maps of {diagram}: {}", setup.orbits.len());
            for o in &setup.orbits {
                line!("  over {}: cells {:?}", o.witness_name, o.orbit.objects().iter().map(|s| s.cell_counts()).collect::<Vec<_>>());
            }
            line!("orbit category (level cap {level_cap}, truncated {}): {} orbits", cat.truncated, cat.orbits.len());
            report(&mut w, &eff, 
                "orbits",
                json!({
                    "diagram": diagram,
                    "orbit_maps": setup.orbits.iter().map(|o| json!({
                        "witness": o.witness_name,
                        "cells": o.orbit.objects().iter().map(|s| s.cell_counts()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "orbit_category": cat.summary(),
                    "level_cap": level_cap,
                    "truncated": cat.truncated,
                }),
            );
        }
        Cmd::Homcx { common, source, diagram, n_cap } => {
            let (ws, src) = load(common)?;
            let n_cap = n_cap.unwrap_or(caps.n_cap);
            eff.n_cap = n_cap;
            let h = hom_complex(ws.diagram(source)?, ws.diagram(diagram)?, n_cap);
            let name = format!("hom({source},{diagram})");
            w.set(&name, h.set());
            w.provenance(
                &name,
                Prov::new("homcx", &src).input("source", source).input("diagram", diagram).arg("n-cap", json!(n_cap)).get(),
            );
            let (p0, _) = pi0(h.set());
            line!("hom({source}, {diagram}): cells {:?}, pi0 {p0}, cap {n_cap}, truncated {}", h.set().cell_counts(), h.truncated());
            report(&mut w, &eff, 
                "homcx",
                json!({ "cells": h.set().cell_counts(), "pi0": p0, "n_cap": n_cap, "truncated": h.truncated() }),
            );
        }
        Cmd::Rlp { common, map, against } => {
            let (ws, _) = load(common)?;
            let out = rlp_check(ws.map(map)?, ws.map(against)?);
            match &out {
                RlpOutcome::Lifts(l) => {
                    line!("{against} has the RLP against {map}: {} squares, all lift", l.len());
                    report(&mut w, &eff, "rlp", json!({ "holds": true, "squares": l.len() }));
                }
                RlpOutcome::Counterexample { u, v } => {
                    line!("{against} fails the RLP against {map}");
                    let comps = |m: &DiagramMap| -> Vec<BTreeMap<String, document::Ref>> {
                        m.components().iter().map(document::images_doc).collect()
                    };
                    report(&mut w, &eff, "rlp", json!({ "holds": false, "counterexample": { "top": comps(u), "bottom": comps(v) } }));
                }
            }
        }
        Cmd::Factorize { common, map, class, n_cap, stages, strict } => {
            let (ws, src) = load(common)?;
            let f = ws.map(map)?;
            let n_cap = n_cap.unwrap_or(caps.n_cap);
            eff.n_cap = n_cap;
            let stages = stages.unwrap_or(caps.stages);
            eff.stages = stages;
            let shape = f.source().shape().clone();
            let inst = match class {
                ClassArg::I => setup_i(&shape, n_cap),
                ClassArg::J => setup_j(&shape, n_cap),
            };
            let mode = if *strict { Mode::Strict } else { Mode::Default };
            let fact = small_object_argument(&inst, f, SoaOptions { max_stages: stages, mode, max_cells: None })?;
            let sname = shape_name(&ws, &shape);
            let src_name = ws.diagrams.iter().find(|(_, d)| Arc::ptr_eq(d, f.source())).map(|(n, _)| n.clone()).unwrap_or("X".into());
            let tgt_name = ws.diagrams.iter().find(|(_, d)| Arc::ptr_eq(d, f.target())).map(|(n, _)| n.clone()).unwrap_or("Y".into());
            w.diagram(&src_name, f.source(), &sname);
            w.diagram(&tgt_name, f.target(), &sname);
            let z = format!("{map}.Z");
            w.diagram(&z, fact.middle(), &sname);
            w.map(&format!("{map}.gamma"), &fact.gamma)?;
            w.map(&format!("{map}.delta"), &fact.delta)?;
            let class_name = match class {
                ClassArg::I => "I",
                ClassArg::J => "J",
            };
            let mut prov = Prov::new("factorize", &src)
                .input("map", map)
                .arg("class", json!(class_name))
                .arg("n-cap", json!(n_cap))
                .arg("stages", json!(stages));
            if *strict {
                prov = prov.arg("strict", json!(true));
            }
            for n in [z.clone(), format!("{map}.gamma"), format!("{map}.delta")] {
                w.provenance(&n, prov.get());
            }
            let checks: Vec<bool> = fact.stage_maps().iter().map(pullback_over_colimit).collect::<Result<_>>()?;
            let assigned = inst.assign(0, &fact.delta)?;
            let liftable = assigned.squares.iter().filter(|s| s.lift().is_some()).count();
            line!(
                "factorized {map} with {class_name} (n_cap {n_cap}, budget {stages}): {} stages, stop {:?}, truncated {}",
                fact.stages,
                fact.stop,
                fact.truncated
            );
            line!("middle object cells {:?}", fact.middle().objects().iter().map(|o| o.cell_counts()).collect::<Vec<_>>());
            line!("delta RLP: {liftable}/{} assigned squares lift", assigned.squares.len());
            report(&mut w, &eff, "trace", serde_json::to_value(fact.trace()).expect("trace serializes"));
            report(&mut w, &eff, 
                "delta_rlp",
                json!({
                    "class": class_name,
                    "n_cap": n_cap,
                    "squares": assigned.squares.len(),
                    "liftable": liftable,
                    "holds": liftable == assigned.squares.len(),
                    "truncated": assigned.truncated,
                }),
            );
            report(&mut w, &eff, "stage_pullback_checks", json!(checks));
            if fact.stop == StopReason::Budget {
                status = Status::Inconclusive;
            }
        }
        Cmd::Localize { common, diagram, fixedpointwise_f, spec, n_cap, stages } => {
            let (ws, src) = load(common)?;
            let x = ws.diagram(diagram)?;
            let sp = resolve_spec(&ws, fixedpointwise_f, spec)?
                .ok_or_else(|| Error::Generator("localize needs --fixedpointwise-f or --spec".into()))?;
            let n_cap = n_cap.unwrap_or(caps.n_cap);
            eff.n_cap = n_cap;
            let stages = stages.unwrap_or(caps.stages);
            eff.stages = stages;
            let loc = localize(x, &sp, n_cap, SoaOptions { max_stages: stages, mode: Mode::Default, max_cells: None })?;
            let sname = shape_name(&ws, x.shape());
            w.diagram(diagram, x, &sname);
            let l = format!("{diagram}.L");
            w.diagram(&l, loc.local_object(), &sname);
            w.map(&format!("{diagram}.unit"), loc.unit())?;
            let mut prov = Prov::new("localize", &src)
                .input("diagram", diagram)
                .arg("n-cap", json!(n_cap))
                .arg("stages", json!(stages));
            prov = match (fixedpointwise_f, spec) {
                (Some(f), _) => prov.arg("fixedpointwise-f", json!(f)),
                (_, Some(s)) => prov.input("spec", s),
                _ => prov,
            };
            w.provenance(&l, prov.get());
            w.provenance(&format!("{diagram}.unit"), prov.get());
            let orbits = probe_orbits(&[x, loc.local_object()], caps.level_cap);
            let per_orbit = fixed_point_locality_report(loc.local_object(), spec_f(&sp), &orbits, n_cap)?;
            let local = is_s_local(loc.local_object(), &sp, n_cap)?;
            line!(
                "localized {diagram} at {} (n_cap {n_cap}, budget {stages}): {} attaching stages, stop {:?}, truncated {}",
                sp.label(),
                loc.stages(),
                loc.factorization.stop,
                loc.factorization.truncated
            );
            for r in &per_orbit {
                line!("  orbit {}: pi0 {}, kan {}, local {:?}, truncated {}", r.orbit, r.pi0, r.kan, r.local, r.truncated);
            }
            line!("S-local up to caps: {local:?}");
            report(&mut w, &eff, 
                "localization",
                json!({
                    "spec": sp.label(),
                    "n_cap": n_cap,
                    "stage_budget": stages,
                    "stages": loc.stages(),
                    "stop": loc.factorization.stop,
                    "truncated": loc.factorization.truncated,
                    "s_local": local,
                    "locality": per_orbit,
                    "trace": loc.factorization.trace(),
                }),
            );
            if loc.factorization.stop == StopReason::Budget || local == Verdict::Unknown {
                status = Status::Inconclusive;
            }
        }
        Cmd::Locality { common, diagram, fixedpointwise_f, spec, n_cap } => {
            let (ws, _) = load(common)?;
            let x = ws.diagram(diagram)?;
            let n_cap = n_cap.unwrap_or(caps.n_cap);
            eff.n_cap = n_cap;
            let sp = resolve_spec(&ws, fixedpointwise_f, spec)?;
            let orbits = probe_orbits(&[x], caps.level_cap);
            let per_orbit = fixed_point_locality_report(x, sp.as_ref().and_then(spec_f), &orbits, n_cap)?;
            let local = match &sp {
                Some(sp) => Some(is_s_local(x, sp, n_cap)?),
                None => None,
            };
            for r in &per_orbit {
                line!("orbit {}: pi0 {}, kan {}, local {:?}, truncated {}", r.orbit, r.pi0, r.kan, r.local, r.truncated);
            }
            if let Some(l) = local {
                line!("S-local up to caps: {l:?}");
                if l == Verdict::Unknown {
                    status = Status::Inconclusive;
                }
            }
            if per_orbit.iter().any(|r| r.local == Verdict::Unknown) {
                status = Status::Inconclusive;
            }
            report(&mut w, &eff, "locality", json!({ "n_cap": n_cap, "orbits": per_orbit, "s_local": local }));
        }
        Cmd::Pi { common, complex, n, vertex } => {
            let (ws, _) = load(common)?;
            let x = complex_of(&ws, complex)?;
            if *n == 0 {
                let (count, _) = pi0(&x);
                line!("{count}");
                report(&mut w, &eff, "pi", json!({ "n": 0, "count": count }));
            } else {
                let v = match vertex {
                    Some(v) => document::cell(&x, v)?,
                    None => x.cells(0).next().ok_or_else(|| Error::OutOfRange("no vertices".into()))?,
                };
                let count = pi_n_checked(&x, v, *n)?;
                line!("{count}");
                report(&mut w, &eff, "pi", json!({ "n": n, "vertex": x.name(v), "count": count, "kan_to": n + 1 }));
            }
        }
        Cmd::Cone { common, diagram } => {
            let (ws, src) = load(common)?;
            let a = ws.diagram(diagram)?;
            let c = cone(a)?;
            let sname = shape_name(&ws, a.shape());
            w.diagram(diagram, a, &sname);
            let name = format!("{diagram}.cone");
            w.diagram(&name, c.object(), &sname);
            w.map(&format!("{diagram}.cone_base"), &c.base)?;
            let prov = Prov::new("cone", &src).input("diagram", diagram);
            w.provenance(&name, prov.get());
            w.provenance(&format!("{diagram}.cone_base"), prov.get());
            line!("cone({diagram}): cells {:?}", c.object().objects().iter().map(|o| o.cell_counts()).collect::<Vec<_>>());
        }
        Cmd::Nullcheck { common, map } => {
            let (ws, _) = load(common)?;
            let f = ws.map(map)?;
            let h = is_null_homotopic(f)?;
            line!("{map} null-homotopic: {}", h.is_some());
            report(&mut w, &eff, "nullcheck", json!({ "map": map, "null_homotopic": h.is_some() }));
        }
        Cmd::ProperProbe { common, map, weq, kind, n_cap } => {
            let (ws, _) = load(common)?;
            let n_cap = n_cap.unwrap_or(caps.n_cap);
            eff.n_cap = n_cap;
            let (m, e) = (ws.map(map)?, ws.map(weq)?);
            let orbits = probe_orbits(&[m.source(), m.target(), e.source(), e.target()], caps.level_cap);
            let v = match kind {
                Side::Left => left_properness_probe(m, e, &orbits, n_cap)?,
                Side::Right => right_properness_probe(m, e, &orbits, n_cap)?,
            };
            line!("{kind:?} properness probe: {v:?} (n_cap {n_cap}, {} probe orbits)", orbits.len());
            report(&mut w, &eff, "properness", json!({ "kind": format!("{kind:?}").to_lowercase(), "verdict": v, "n_cap": n_cap }));
            status = verdict_status(v);
        }
        Cmd::Random { common, cells } => {
            let mut rng = eqloc::random::rng(common.seed);
            let x = eqloc::random::random_set(&mut rng, *cells);
            w.set("random", &x);
            line!("random set (seed {}): cells {:?}", common.seed, x.cell_counts());
        }
        Cmd::Replay { common } => {
            let path = common.doc.as_deref().ok_or_else(|| Error::Document("--doc is required".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("cannot read {path}: {e}")))?;
            let doc: Document = serde_json::from_str(&text).map_err(|e| Error::Document(e.to_string()))?;
            let mut seen = Vec::new();
            for (name, p) in &doc.provenance {
                let Provenance::Derived { .. } = p else { continue };
                if seen.contains(p) {
                    continue;
                }
                seen.push(p.clone());
                let replayed = replay(p)?;
                if to_text(&replayed) != text {
                    return Err(Error::Document(format!("replay of {name} differs from {path}")));
                }
                line!("replayed {name}: identical");
            }
            report(&mut w, &eff, "replay", json!({ "replayed": seen.len() }));
        }
    }
    Ok(Outcome { doc: w.finish(), human, status })
}

/// Re-executes a derived provenance record with caps taken only from the record.
pub fn replay(p: &Provenance) -> Result<Document> {
    let Provenance::Derived { op, source, inputs, args } = p else {
        return Err(Error::Document("not a derived artifact".into()));
    };
    let mut argv = vec!["eqloc".to_string(), op.clone(), "--doc".into(), source.clone()];
    for (k, v) in inputs {
        argv.push(format!("--{k}"));
        argv.push(v.clone());
    }
    for (k, v) in args {
        match v {
            Value::Bool(true) => argv.push(format!("--{k}")),
            Value::Bool(false) => {}
            Value::String(s) => {
                argv.push(format!("--{k}"));
                argv.push(s.clone());
            }
            other => {
                argv.push(format!("--{k}"));
                argv.push(other.to_string());
            }
        }
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| Error::Document(format!("bad provenance: {e}")))?;
    Ok(execute(&cli, &Caps::default())?.doc)
}

//! The staged small object argument, its functoriality and its trace.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::setup::{transport, Assignment, ComponentSummary, Instrumentation};
use super::square::{lift_in, Square, Witness};
use crate::diagram::ops::{colim, coproduct_d, pullback_d, pushout_d, DiagramColimit};
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Attach only squares without a lift.
    #[default]
    Default,
    /// Attach every assigned square.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoaOptions {
    pub max_stages: usize,
    pub mode: Mode,
    /// Stop on budget once the middle object has more nondegenerate cells than this.
    #[serde(default)]
    pub max_cells: Option<usize>,
}

impl Default for SoaOptions {
    fn default() -> Self {
        SoaOptions { max_stages: 4, mode: Mode::Default, max_cells: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopReason {
    Stabilized,
    Budget,
}

/// The pushout formed in one step.
#[derive(Clone, Debug)]
pub struct StepPushout {
    pub a_sum: DiagramColimit,
    pub b_sum: DiagramColimit,
    /// Legs `Z -> Z'` and `⊔B -> Z'`.
    pub colimit: DiagramColimit,
}

/// One component's phase within a stage.
#[derive(Clone, Debug)]
pub struct Step {
    pub stage: usize,
    pub component: usize,
    pub assignment: Assignment,
    /// Indices into `assignment.squares` that were attached.
    pub attached: Vec<usize>,
    pub z_before: Arc<Diagram>,
    pub rho_before: DiagramMap,
    pub pushout: Option<StepPushout>,
    pub inclusion: DiagramMap,
    pub rho_after: DiagramMap,
}

impl Step {
    pub fn attached_squares(&self) -> impl Iterator<Item = &Square> {
        self.attached.iter().map(|&i| &self.assignment.squares[i])
    }
}

/// A factorization `f = δ ∘ γ` produced by the small object argument.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub input: DiagramMap,
    pub gamma: DiagramMap,
    pub delta: DiagramMap,
    pub steps: Vec<Step>,
    /// Number of stages that ran (including ones attaching nothing).
    pub stages: usize,
    pub stop: StopReason,
    pub truncated: bool,
    pub options: SoaOptions,
    pub components: Vec<ComponentSummary>,
}

impl Factorization {
    pub fn middle(&self) -> &Arc<Diagram> {
        self.gamma.target()
    }

    /// The composite `Z_α -> Z_{α+1}` for each stage.
    pub fn stage_maps(&self) -> Vec<DiagramMap> {
        let mut out: Vec<DiagramMap> = Vec::new();
        for s in &self.steps {
            if out.len() == s.stage {
                out.push(s.inclusion.clone());
            } else {
                let last = out.pop().expect("stage in progress");
                out.push(last.then_unchecked(&s.inclusion));
            }
        }
        out
    }

    /// Stages that attached at least one square.
    pub fn attaching_stages(&self) -> usize {
        let mut st: Vec<usize> = self.steps.iter().filter(|s| !s.attached.is_empty()).map(|s| s.stage).collect();
        st.dedup();
        st.len()
    }

    pub fn trace(&self) -> Trace {
        Trace {
            components: self.components.clone(),
            options: self.options,
            steps: self
                .steps
                .iter()
                .map(|s| TraceStep {
                    stage: s.stage,
                    component: self.components[s.component].name.clone(),
                    assigned: s.assignment.squares.len(),
                    attached: s.attached_squares().map(|q| q.witness.clone()).collect(),
                    cells_after: s.rho_after.source().objects().iter().map(|o| o.cell_counts()).collect(),
                })
                .collect(),
            stages: self.stages,
            stop: self.stop,
            truncated: self.truncated,
            middle_cells: self.middle().objects().iter().map(|o| o.cell_counts()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub stage: usize,
    pub component: String,
    pub assigned: usize,
    pub attached: Vec<Witness>,
    pub cells_after: Vec<Vec<usize>>,
}

/// Serializable record of a run.
#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub components: Vec<ComponentSummary>,
    pub options: SoaOptions,
    pub steps: Vec<TraceStep>,
    pub stages: usize,
    pub stop: StopReason,
    pub truncated: bool,
    pub middle_cells: Vec<Vec<usize>>,
}

fn attach(shape_src: &DiagramMap, squares: &[&Square]) -> Result<StepPushout> {
    let shape = shape_src.source().shape();
    let a_sum = coproduct_d(shape, &squares.iter().map(|s| s.top.source().clone()).collect::<Vec<_>>());
    let b_sum = coproduct_d(shape, &squares.iter().map(|s| s.top.target().clone()).collect::<Vec<_>>());
    let lefts: Vec<DiagramMap> = squares.iter().map(|s| s.left.clone()).collect();
    let tops: Vec<DiagramMap> = squares
        .iter()
        .enumerate()
        .map(|(j, s)| s.top.then_unchecked(&b_sum.legs[j]))
        .collect();
    let left_sum = a_sum.induced(&lefts)?;
    let top_sum = a_sum.induced(&tops)?;
    let colimit = pushout_d(&left_sum, &top_sum)?;
    Ok(StepPushout { a_sum, b_sum, colimit })
}

fn step_rho(p: &StepPushout, rho: &DiagramMap, squares: &[&Square]) -> Result<DiagramMap> {
    let rights: Vec<DiagramMap> = squares.iter().map(|s| s.right.clone()).collect();
    let r = p.b_sum.induced(&rights)?;
    p.colimit.induced(&[rho.clone(), r])
}

/// Runs the small object argument on `f` with the given instrumentation.
pub fn small_object_argument(inst: &Instrumentation, f: &DiagramMap, opts: SoaOptions) -> Result<Factorization> {
    if f.source().shape() != &inst.shape {
        return Err(Error::Shape("arrow over a different shape than the class".into()));
    }
    let mut rho = f.clone();
    let mut gamma = DiagramMap::identity(f.source().clone());
    let mut steps = Vec::new();
    let mut truncated = false;
    let mut stage = 0;
    let stop = loop {
        if let Some(cap) = opts.max_cells {
            let cells: usize = rho.source().objects().iter().map(|o| o.cell_counts().iter().sum::<usize>()).sum();
            if cells > cap {
                break StopReason::Budget;
            }
        }
        let mut fresh: Vec<Assignment> = (0..inst.component_count())
            .map(|c| inst.assign(c, &rho))
            .collect::<Result<_>>()?;
        truncated |= fresh.iter().any(|a| a.truncated);
        let liftable: Vec<Vec<bool>> = fresh
            .iter()
            .map(|a| a.squares.iter().map(|s| s.lift().is_some()).collect())
            .collect();
        if liftable.iter().flatten().all(|&l| l) {
            break StopReason::Stabilized;
        }
        if stage == opts.max_stages {
            break StopReason::Budget;
        }
        let mut changed = false;
        for c in 0..inst.component_count() {
            let (assignment, lifts) = if changed {
                let a = inst.assign(c, &rho)?;
                truncated |= a.truncated;
                let l = if opts.mode == Mode::Strict {
                    vec![false; a.squares.len()]
                } else {
                    a.squares.iter().map(|s| s.lift().is_some()).collect()
                };
                (a, l)
            } else {
                let l = liftable[c].clone();
                let a = 
                std::mem::replace(&mut fresh[c], Assignment {
                    component: c,
                    squares: Vec::new(),
                    orbit_data: Vec::new(),
                    setups: Vec::new(),
                    truncated: false,
                });
                (a, l)
            };
            let attached: Vec<usize> = assignment
                .squares
                .iter()
                .enumerate()
                .filter(|&(i, _)| opts.mode == Mode::Strict || !lifts[i])
                .map(|(i, _)| i)
                .collect();
            let z_before = rho.source().clone();
            let rho_before = rho.clone();
            let (pushout, inclusion, rho_after) = if attached.is_empty() {
                (None, DiagramMap::identity(z_before.clone()), rho.clone())
            } else {
                let sq: Vec<&Square> = attached.iter().map(|&i| &assignment.squares[i]).collect();
                let p = attach(f, &sq)?;
                let r = step_rho(&p, &rho, &sq)?;
                let inc = p.colimit.legs[0].clone();
                (Some(p), inc, r)
            };
            changed |= !attached.is_empty();
            gamma = gamma.then_unchecked(&inclusion);
            rho = rho_after.clone();
            steps.push(Step { stage, component: c, assignment, attached, z_before, rho_before, pushout, inclusion, rho_after });
        }
        stage += 1;
    };
    let fact = Factorization {
        input: f.clone(),
        gamma,
        delta: rho,
        steps,
        stages: stage,
        stop,
        truncated,
        options: opts,
        components: inst.summary(),
    };
    if !fact.gamma.then_unchecked(&fact.delta).images_eq(f) {
        return Err(Error::Incompatible("δ ∘ γ differs from the input".into()));
    }
    Ok(fact)
}

/// The induced map `ξ: Z₁ -> Z₂` of middle objects for a commutative square
/// `(a: X₁ -> X₂, b: Y₁ -> Y₂)` from `run1.input` to `run2.input`.
pub fn soa_functorial(
    inst: &Instrumentation,
    run1: &Factorization,
    run2: &Factorization,
    a: &DiagramMap,
    b: &DiagramMap,
) -> Result<DiagramMap> {
    let lhs = run1.input.then_unchecked(b);
    let rhs = a.then_unchecked(&run2.input);
    if !lhs.images_eq(&rhs) {
        return Err(Error::Naturality("(a, b) is not a map of arrows".into()));
    }
    let mut xi = a.clone();
    for (t, s1) in run1.steps.iter().enumerate() {
        let s2 = run2.steps.get(t);
        if let Some(s2) = s2 {
            if s2.stage != s1.stage || s2.component != s1.component {
                return Err(Error::StageMismatch(format!("step {t} differs between the runs")));
            }
        } else if run2.stop == StopReason::Budget {
            return Err(Error::StageMismatch("second run stopped on budget before the first".into()));
        }
        let (inclusion2, rho2) = match s2 {
            Some(s2) => (s2.inclusion.clone(), s2.rho_before.clone()),
            None => (DiagramMap::identity(run2.middle().clone()), run2.delta.clone()),
        };
        let Some(p1) = &s1.pushout else {
            xi = xi.then_unchecked(&inclusion2);
            continue;
        };
        let owned;
        let asg2 = match s2 {
            Some(s2) => &s2.assignment,
            None => {
                owned = inst.assign(s1.component, &rho2)?;
                &owned
            }
        };
        let mut legs = Vec::new();
        for &si in &s1.attached {
            let tr = transport(inst, &s1.assignment, asg2, si, &xi, b)?;
            let attached_at = s2.and_then(|s2| s2.attached.iter().position(|&j| j == tr.index));
            let leg = match (attached_at, s2.and_then(|s2| s2.pushout.as_ref())) {
                (Some(j), Some(p2)) => tr
                    .on_target
                    .then_unchecked(&p2.b_sum.legs[j])
                    .then_unchecked(&p2.colimit.legs[1]),
                _ => {
                    let q = &asg2.squares[tr.index];
                    let h = lift_in(&q.top, &rho2, &q.left, &q.right)
                        .ok_or_else(|| Error::NoLift(format!("transported square {} has no lift", q.witness.member)))?;
                    tr.on_target.then_unchecked(&h).then_unchecked(&inclusion2)
                }
            };
            legs.push(leg);
        }
        let from_b = p1.b_sum.induced(&legs)?;
        xi = p1.colimit.induced(&[xi.then_unchecked(&inclusion2), from_b])?;
    }
    for s2 in run2.steps.iter().skip(run1.steps.len()) {
        xi = xi.then_unchecked(&s2.inclusion);
    }
    Ok(xi)
}

/// A lift `r: Y -> Z` with `r ∘ f = γ` and `δ ∘ r = 1`, exhibiting `f` as a retract of `γ`.
pub fn retract_witness(fact: &Factorization) -> Option<DiagramMap> {
    let id = DiagramMap::identity(fact.input.target().clone());
    lift_in(&fact.input, &fact.delta, &fact.gamma, &id)
}

/// Whether `A ≅ B ×_{colim B} colim A` canonically, for a map `i: A -> B`.
pub fn pullback_over_colimit(i: &DiagramMap) -> Result<bool> {
    let a = i.source();
    let b = i.target();
    let shape = a.shape().clone();
    let ca = colim(a);
    let cb = colim(b);
    let legs: Vec<SimplicialMap> = (0..a.objects().len())
        .map(|o| i.component(o).then_unchecked(&cb.legs[o]))
        .collect();
    let ci = ca.induced_into(cb.object.clone(), &legs)?;
    let const_a = Arc::new(Diagram::constant(shape.clone(), ca.object.clone()));
    let const_b = Arc::new(Diagram::constant(shape.clone(), cb.object.clone()));
    let n = shape.object_count();
    let cocone_a = DiagramMap::new(a.clone(), const_a.clone(), ca.legs.clone())?;
    let cocone_b = DiagramMap::new(b.clone(), const_b.clone(), cb.legs.clone())?;
    let cmap = DiagramMap::new(const_a, const_b, vec![ci; n])?;
    let pb = pullback_d(&cocone_b, &cmap)?;
    let canon = pb.induced(i, &cocone_a)?;
    Ok(canon.is_iso())
}

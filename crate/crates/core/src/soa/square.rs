use std::sync::Arc;

use serde::Serialize;

use crate::diagram::hom::diagram_search;
use crate::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};

/// Where an assigned square came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    /// Name of the instrumentation component.
    pub component: String,
    /// Label of the class member (for example `bd3` or `horn2_1`).
    pub member: String,
    /// Index of the member's orbit in its setup, when orbit-indexed.
    pub orbit: Option<usize>,
    /// Name of the colimit vertex witnessing the orbit.
    pub orbit_witness: Option<String>,
    pub n: usize,
    pub k: Option<usize>,
}

/// A commutative square from a class member `top: A -> B` into an arrow `bottom: X -> Y`.
#[derive(Clone, Debug)]
pub struct Square {
    pub witness: Witness,
    pub top: DiagramMap,
    pub left: DiagramMap,
    pub right: DiagramMap,
    pub bottom: DiagramMap,
}

impl Square {
    pub fn new(witness: Witness, top: DiagramMap, left: DiagramMap, right: DiagramMap, bottom: DiagramMap) -> Result<Self> {
        let s = Square { witness, top, left, right, bottom };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        let a = self.top.then_unchecked(&self.right);
        let b = self.left.then_unchecked(&self.bottom);
        if !a.images_eq(&b) {
            return Err(Error::Naturality(format!("square {} does not commute", self.witness.member)));
        }
        Ok(())
    }

    /// A diagonal `h: B -> X` with `h ∘ top = left` and `bottom ∘ h = right`.
    pub fn lift(&self) -> Option<DiagramMap> {
        lift_in(&self.top, &self.bottom, &self.left, &self.right)
    }
}

/// All diagonals in the square `(i, p, u, v)`, up to `limit`.
pub fn lifts_in(
    i: &DiagramMap,
    p: &DiagramMap,
    u: &DiagramMap,
    v: &DiagramMap,
    limit: Option<usize>,
) -> (Vec<DiagramMap>, bool) {
    let b = i.target();
    let x = p.source();
    let mut s = diagram_search(b, x);
    for o in 0..b.objects().len() {
        s = s.prescribe(o, i.component(o), u.component(o)).over(o, p.component(o), v.component(o));
    }
    let (sols, complete) = s.collect(limit);
    (
        sols.into_iter()
            .map(|c| DiagramMap::from_parts(b.clone(), x.clone(), c))
            .collect(),
        complete,
    )
}

pub fn lift_in(i: &DiagramMap, p: &DiagramMap, u: &DiagramMap, v: &DiagramMap) -> Option<DiagramMap> {
    lifts_in(i, p, u, v, Some(1)).0.into_iter().next()
}

/// Outcome of a lifting-property check.
#[derive(Clone, Debug)]
pub enum RlpOutcome {
    /// Every square lifts; one lift per square in enumeration order.
    Lifts(Vec<DiagramMap>),
    /// A square `(u, v)` without a lift.
    Counterexample { u: DiagramMap, v: DiagramMap },
}

impl RlpOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, RlpOutcome::Lifts(_))
    }
}

/// Enumerates every square from `i: A -> B` to `p: X -> Y` and searches a lift for each.
pub fn rlp_check(i: &DiagramMap, p: &DiagramMap) -> RlpOutcome {
    let mut lifts = Vec::new();
    for (u, v) in squares_between(i, p) {
        match lift_in(i, p, &u, &v) {
            Some(h) => lifts.push(h),
            None => return RlpOutcome::Counterexample { u, v },
        }
    }
    RlpOutcome::Lifts(lifts)
}

/// All commutative squares `(u: A -> X, v: B -> Y)` with `v ∘ i = p ∘ u`.
pub fn squares_between(i: &DiagramMap, p: &DiagramMap) -> Vec<(DiagramMap, DiagramMap)> {
    let a = i.source();
    let b = i.target();
    let x = p.source();
    let y = p.target();
    let mut out = Vec::new();
    let (us, _) = diagram_search(a, x).collect(None);
    for comps in us {
        let u = DiagramMap::from_parts(a.clone(), x.clone(), comps);
        let pu = u.then_unchecked(p);
        let mut s = diagram_search(b, y);
        for o in 0..b.objects().len() {
            s = s.prescribe(o, i.component(o), pu.component(o));
        }
        for vc in s.collect(None).0 {
            out.push((u.clone(), DiagramMap::from_parts(b.clone(), y.clone(), vc)));
        }
    }
    out
}

/// Arrow `A -> B` equal up to isomorphism of both ends to `C -> D`.
pub fn arrows_isomorphic(f: &DiagramMap, g: &DiagramMap) -> bool {
    use crate::orbit::find_iso;
    let (Some(_), Some(_)) = (find_iso(f.source(), g.source()), find_iso(f.target(), g.target())) else {
        return false;
    };
    // search a pair of isomorphisms making the square commute
    let fa: &Arc<Diagram> = f.source();
    let ga: &Arc<Diagram> = g.source();
    let (isos_a, _) = diagram_search(fa, ga).collect(None);
    for comps in isos_a {
        if !comps.iter().all(|c| c.is_iso()) {
            continue;
        }
        let alpha = DiagramMap::from_parts(fa.clone(), ga.clone(), comps);
        let ga_f = alpha.then_unchecked(g);
        let mut s = diagram_search(f.target(), g.target());
        for o in 0..fa.objects().len() {
            s = s.prescribe(o, f.component(o), ga_f.component(o));
        }
        let mut found = false;
        s.run(|c| {
            if c.iter().all(|m| m.is_iso()) {
                found = true;
                return std::ops::ControlFlow::Break(());
            }
            std::ops::ControlFlow::Continue(())
        });
        if found {
            return true;
        }
    }
    false
}

//! Backtracking enumeration of families of simplicial maps subject to
//! face, naturality, extension and "over" constraints.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{CellId, Simplex, SimplicialSet};

#[derive(Clone, Copy)]
struct NatCheck {
    action: usize,
    // source-side cell, whose image is pushed forward along the target action
    from: (usize, CellId),
    // A-action image of `from`: (object, mask, cell)
    to: (usize, u32, CellId),
    dim: usize,
}

/// A search for maps `h_o : A_o -> B_o`, one per object.
#[derive(Clone)]
pub struct MapSearch {
    sources: Vec<Arc<SimplicialSet>>,
    targets: Vec<Arc<SimplicialSet>>,
    actions: Vec<(usize, usize, SimplicialMap, SimplicialMap)>,
    forced: Vec<HashMap<CellId, Simplex>>,
    extra: Vec<HashMap<CellId, Vec<(usize, u32, Simplex)>>>,
    over: Vec<Option<(SimplicialMap, SimplicialMap)>>,
    conflict: bool,
}

impl MapSearch {
    pub fn new(sources: Vec<Arc<SimplicialSet>>, targets: Vec<Arc<SimplicialSet>>) -> Self {
        let k = sources.len();
        assert_eq!(k, targets.len());
        MapSearch {
            sources,
            targets,
            actions: Vec::new(),
            forced: vec![HashMap::new(); k],
            extra: vec![HashMap::new(); k],
            over: vec![None; k],
            conflict: false,
        }
    }

    /// Maps `A -> B` of plain simplicial sets.
    pub fn single(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Self {
        MapSearch::new(vec![source], vec![target])
    }

    /// Requires `b_act ∘ h_from = h_to ∘ a_act`.
    pub fn with_action(mut self, from: usize, to: usize, a_act: SimplicialMap, b_act: SimplicialMap) -> Self {
        self.actions.push((from, to, a_act, b_act));
        self
    }

    /// Requires `h_o ∘ i = u` for `i: K -> A_o`, `u: K -> B_o`.
    pub fn prescribe(mut self, o: usize, i: &SimplicialMap, u: &SimplicialMap) -> Self {
        for c in i.source().all_cells() {
            let y = i.image_of_cell(c);
            let want = u.image_of_cell(c);
            if y.is_degenerate() {
                self.extra[o]
                    .entry(y.cell())
                    .or_default()
                    .push((y.dim(), y.mask(), want));
            } else {
                match self.forced[o].get(&y.cell()) {
                    Some(prev) if *prev != want => self.conflict = true,
                    _ => {
                        self.forced[o].insert(y.cell(), want);
                    }
                }
            }
        }
        self
    }

    /// Fixes the image of a single cell.
    pub fn fix(mut self, o: usize, c: CellId, image: Simplex) -> Self {
        match self.forced[o].get(&c) {
            Some(prev) if *prev != image => self.conflict = true,
            _ => {
                self.forced[o].insert(c, image);
            }
        }
        self
    }

    /// Requires `p ∘ h_o = k` for `p: B_o -> Y`, `k: A_o -> Y`.
    pub fn over(mut self, o: usize, p: &SimplicialMap, k: &SimplicialMap) -> Self {
        self.over[o] = Some((p.clone(), k.clone()));
        self
    }

    fn variables(&self) -> Vec<(usize, CellId)> {
        let top = self.sources.iter().filter_map(|s| s.dim()).max();
        let mut vars = Vec::new();
        if let Some(top) = top {
            for n in 0..=top {
                for (o, s) in self.sources.iter().enumerate() {
                    vars.extend(s.cells(n).map(|c| (o, c)));
                }
            }
        }
        vars
    }

    /// Visits every solution in canonical order until `visit` breaks.
    /// Returns whether the search ran to completion.
    pub fn run(&self, mut visit: impl FnMut(&[SimplicialMap]) -> ControlFlow<()>) -> bool {
        if self.conflict {
            return true;
        }
        let vars = self.variables();
        let pos: HashMap<(usize, CellId), usize> =
            vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut checks: Vec<Vec<NatCheck>> = vec![Vec::new(); vars.len()];
        for (ai, (from, to, a_act, _)) in self.actions.iter().enumerate() {
            for c in self.sources[*from].all_cells() {
                let y = a_act.image_of_cell(c);
                let at = pos[&(*from, c)].max(pos[&(*to, y.cell())]);
                checks[at].push(NatCheck {
                    action: ai,
                    from: (*from, c),
                    to: (*to, y.mask(), y.cell()),
                    dim: c.dim(),
                });
            }
        }
        let mut assign: Vec<Vec<Vec<Simplex>>> = self
            .sources
            .iter()
            .map(|s| s.cell_counts().iter().map(|&k| vec![Simplex::of_cell(CellId::new(0, 0)); k]).collect())
            .collect();
        let mut st = State { vars: &vars, checks: &checks, assign: &mut assign };
        self.rec(0, &mut st, &mut visit).is_continue()
    }

    fn rec(
        &self,
        depth: usize,
        st: &mut State<'_>,
        visit: &mut impl FnMut(&[SimplicialMap]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == st.vars.len() {
            let maps: Vec<SimplicialMap> = self
                .sources
                .iter()
                .zip(&self.targets)
                .zip(st.assign.iter())
                .map(|((s, t), img)| SimplicialMap::new_unchecked(s.clone(), t.clone(), img.clone()))
                .collect();
            return visit(&maps);
        }
        let (o, c) = st.vars[depth];
        let src = &self.sources[o];
        let tgt = &self.targets[o];
        let n = c.dim();
        let faces: Vec<Simplex> = src
            .faces_of(c)
            .iter()
            .map(|y| y.substitute(st.assign[o][y.cell().dim()][y.cell().idx()]))
            .collect();
        let candidates: Vec<Simplex> = if let Some(&v) = self.forced[o].get(&c) {
            if v.dim() == n
                && tgt.contains(v.cell())
                && (0..faces.len()).all(|i| tgt.face(v, i) == faces[i])
            {
                vec![v]
            } else {
                Vec::new()
            }
        } else if n == 0 {
            tgt.simplices(0)
        } else {
            tgt.simplices_with_faces(&faces)
        };
        'cand: for v in candidates {
            if let Some(ex) = self.extra[o].get(&c) {
                for &(d, mask, want) in ex {
                    if v.degenerate(d, mask) != want {
                        continue 'cand;
                    }
                }
            }
            if let Some((p, k)) = &self.over[o] {
                if p.image(v) != k.image_of_cell(c) {
                    continue;
                }
            }
            st.assign[o][n][c.idx()] = v;
            for chk in &st.checks[depth] {
                let (fo, fc) = chk.from;
                let (to, mask, tc) = chk.to;
                let b_act = &self.actions[chk.action].3;
                let lhs = b_act.image(st.assign[fo][fc.dim()][fc.idx()]);
                let rhs = st.assign[to][tc.dim()][tc.idx()].degenerate(chk.dim, mask);
                if lhs != rhs {
                    continue 'cand;
                }
            }
            self.rec(depth + 1, st, visit)?;
        }
        ControlFlow::Continue(())
    }

    pub fn count(&self) -> usize {
        let mut k = 0;
        self.run(|_| {
            k += 1;
            ControlFlow::Continue(())
        });
        k
    }

    /// Collects up to `limit` solutions; the flag is true when the search was exhaustive.
    pub fn collect(&self, limit: Option<usize>) -> (Vec<Vec<SimplicialMap>>, bool) {
        let mut out = Vec::new();
        let mut hit_limit = false;
        self.run(|m| {
            if limit.is_some_and(|l| out.len() >= l) {
                hit_limit = true;
                return ControlFlow::Break(());
            }
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        (out, !hit_limit)
    }

    pub fn first(&self) -> Option<Vec<SimplicialMap>> {
        let mut out = None;
        self.run(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        });
        out
    }
}

struct State<'a> {
    vars: &'a [(usize, CellId)],
    checks: &'a [Vec<NatCheck>],
    assign: &'a mut Vec<Vec<Vec<Simplex>>>,
}

/// All simplicial maps `X -> Y` in canonical order.
pub fn hom_set(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Vec<SimplicialMap> {
    MapSearch::single(x.clone(), y.clone())
        .collect(None)
        .0
        .into_iter()
        .map(|mut v| v.remove(0))
        .collect()
}

/// A lift `h: B -> X` with `h ∘ i = u` and `p ∘ h = v`, if one exists.
pub fn find_lift(
    i: &SimplicialMap,
    p: &SimplicialMap,
    u: &SimplicialMap,
    v: &SimplicialMap,
) -> Option<SimplicialMap> {
    MapSearch::single(i.target().clone(), p.source().clone())
        .prescribe(0, i, u)
        .over(0, p, v)
        .first()
        .map(|mut m| m.remove(0))
}

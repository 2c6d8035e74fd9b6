use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{CellId, Simplex, SimplicialSet};
use crate::error::{Error, Result};

fn subset_name(vs: &[usize], n: usize) -> String {
    let sep = if n < 10 { "" } else { "," };
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Subcomplex of Δⁿ on the vertex subsets accepted by `keep` (closed under faces).
fn simplex_part(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut b = SimplicialSet::builder();
    let mut ids: HashMap<Vec<usize>, CellId> = HashMap::new();
    for m in 0..=n {
        for s in subsets(n, m + 1) {
            if !keep(&s) {
                continue;
            }
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        Simplex::of_cell(ids[&f])
                    })
                    .collect()
            };
            let id = b.add_cell(subset_name(&s, n), faces);
            ids.insert(s, id);
        }
    }
    b.build()
}

/// The standard n-simplex Δⁿ; its cells are vertex subsets in lexicographic order.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    simplex_part(n, |_| true)
}

/// The boundary ∂Δⁿ.
pub fn boundary(n: usize) -> SimplicialSet {
    simplex_part(n, |s| s.len() < n + 1)
}

/// The horn Λⁿ_k.
pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("no horn Λ^{n}_{k}")));
    }
    Ok(simplex_part(n, |s| s.len() < n || s.len() == n && s.contains(&k)))
}

/// Inclusion of a subcomplex of Δⁿ built by this module, matched by cell name.
pub fn inclusion_into_simplex(sub: Arc<SimplicialSet>, n: usize) -> SimplicialMap {
    let full = Arc::new(standard_simplex(n));
    named_inclusion(sub, full)
}

/// Inclusion sending every cell to the target cell of the same name.
pub fn named_inclusion(sub: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> SimplicialMap {
    let t = target.clone();
    SimplicialMap::from_fn(sub.clone(), target, move |c| {
        Simplex::of_cell(t.find(sub.name(c)).expect("named subcomplex"))
    })
}

/// ∂Δⁿ ⊂ Δⁿ.
pub fn boundary_inclusion(n: usize) -> SimplicialMap {
    inclusion_into_simplex(Arc::new(boundary(n)), n)
}

/// Λⁿ_k ⊂ Δⁿ.
pub fn horn_inclusion(n: usize, k: usize) -> Result<SimplicialMap> {
    Ok(inclusion_into_simplex(Arc::new(horn(n, k)?), n))
}

/// The one-point simplicial set Δ⁰.
pub fn point() -> SimplicialSet {
    standard_simplex(0)
}

/// A discrete simplicial set on the given vertex names.
pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> SimplicialSet {
    let mut b = SimplicialSet::builder();
    for n in names {
        b.add_vertex(n);
    }
    b.build()
}

/// The map Δᵐ → Δⁿ induced by a monotone vertex map given by its values.
pub fn simplex_operator(m: usize, n: usize, values: &[u8]) -> SimplicialMap {
    let src = Arc::new(standard_simplex(m));
    let tgt = Arc::new(standard_simplex(n));
    let top = Simplex::of_cell(CellId::new(n, 0));
    let t2 = tgt.clone();
    let levels: Vec<Vec<Vec<usize>>> = (0..=m).map(|d| subsets(m, d + 1)).collect();
    SimplicialMap::from_fn(src, tgt, move |c| {
        let vs: Vec<u8> = levels[c.dim()][c.idx()].iter().map(|&v| values[v]).collect();
        t2.apply(top, &vs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let d3 = standard_simplex(3);
        assert_eq!(d3.cell_counts(), vec![4, 6, 4, 1]);
        assert_eq!(boundary(2).cell_counts(), vec![3, 3]);
        assert_eq!(horn(2, 1).unwrap().cell_counts(), vec![3, 2]);
        assert_eq!(horn(3, 0).unwrap().cell_counts(), vec![4, 6, 3]);
        assert!(horn(0, 0).is_err());
        assert!(d3.validate().is_ok());
        assert!(boundary_inclusion(3).check().is_ok());
        assert!(horn_inclusion(3, 2).unwrap().check().is_ok());
    }
}

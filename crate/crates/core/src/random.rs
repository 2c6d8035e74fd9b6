//! Seeded generators of small simplicial sets and maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplicial::{CellId, Simplex, SimplicialSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn edge_between(x: &SimplicialSet, a: CellId, b: CellId, rng: &mut ChaCha8Rng) -> Option<Simplex> {
    let mut options: Vec<Simplex> = x
        .cells(1)
        .filter(|&e| {
            let s = Simplex::of_cell(e);
            x.face(s, 1).cell() == a && x.face(s, 0).cell() == b
        })
        .map(Simplex::of_cell)
        .collect();
    if a == b {
        options.push(Simplex::of_cell(a).degenerate(1, 1));
    }
    options.choose(rng).copied()
}

/// A random simplicial set of dimension at most 2 with at most `max_cells` nondegenerate cells.
///
/// Edges may be loops and triangles may have degenerate faces.
pub fn random_set(rng: &mut ChaCha8Rng, max_cells: usize) -> SimplicialSet {
    let max_cells = max_cells.max(1);
    let verts = rng.gen_range(1..=max_cells.min(4));
    let mut b = SimplicialSet::builder();
    for v in 0..verts {
        b.add_vertex(format!("v{v}"));
    }
    let mut budget = max_cells - verts;
    let edges = if budget == 0 { 0 } else { rng.gen_range(0..=budget.min(5)) };
    for e in 0..edges {
        let s = rng.gen_range(0..verts);
        let t = rng.gen_range(0..verts);
        b.add_cell(format!("e{e}"), vec![Simplex::of_cell(CellId::new(0, t)), Simplex::of_cell(CellId::new(0, s))]);
    }
    budget -= edges;
    let x1 = b.clone().build();
    let tris = if budget == 0 { 0 } else { rng.gen_range(0..=budget.min(3)) };
    let mut made = 0;
    for _ in 0..tris * 4 {
        if made == tris {
            break;
        }
        let v: Vec<CellId> = (0..3).map(|_| CellId::new(0, rng.gen_range(0..verts))).collect();
        let faces = [
            edge_between(&x1, v[1], v[2], rng),
            edge_between(&x1, v[0], v[2], rng),
            edge_between(&x1, v[0], v[1], rng),
        ];
        if faces.iter().all(|f| f.is_some()) {
            b.add_cell(format!("t{made}"), faces.iter().map(|f| f.unwrap()).collect());
            made += 1;
        }
    }
    b.build_checked().expect("generated faces are consistent")
}

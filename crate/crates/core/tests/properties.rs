mod common;

use std::sync::Arc;

use proptest::prelude::*;

use eqloc::document::{parse, to_text, DocumentWriter};
use eqloc::model::pi0;
use eqloc::random::{random_set, rng};
use eqloc::simplicial::limits::{coproduct, pullback, pushout};
use eqloc::simplicial::standard::{boundary_inclusion, horn_inclusion, point};
use eqloc::simplicial::{hom_set, SimplicialMap, SimplicialSet};
use eqloc::soa::rlp_check;

fn set(seed: u64, cells: usize) -> Arc<SimplicialSet> {
    Arc::new(random_set(&mut rng(seed), cells))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplicial_identities(seed in any::<u64>(), pick in any::<usize>()) {
        let x = set(seed, 10);
        for n in 1..=3usize {
            let ss = x.simplices(n);
            if ss.is_empty() {
                continue;
            }
            let s = ss[pick % ss.len()];
            for j in (0..=n).filter(|_| n >= 2) {
                for i in 0..j {
                    prop_assert_eq!(x.face(x.face(s, j), i), x.face(x.face(s, i), j - 1));
                }
            }
            for j in 0..n {
                for i in 0..=j {
                    prop_assert_eq!(x.degeneracy(x.degeneracy(s, j), i), x.degeneracy(x.degeneracy(s, i), j + 1));
                }
            }
            for j in 0..=n {
                let t = x.degeneracy(s, j);
                for i in 0..=n + 1 {
                    let lhs = x.face(t, i);
                    let rhs = if i < j {
                        x.degeneracy(x.face(s, i), j - 1)
                    } else if i == j || i == j + 1 {
                        s
                    } else {
                        x.degeneracy(x.face(s, i - 1), j)
                    };
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn random_sets_validate(seed in any::<u64>(), cells in 1usize..=10) {
        let x = set(seed, cells);
        prop_assert!(x.validate().is_ok());
        prop_assert!(x.total_cells() <= cells);
    }

    #[test]
    fn hom_sets_match_oracle(a in any::<u64>(), b in any::<u64>()) {
        let x = set(a, 6);
        let y = set(b, 6);
        let found = hom_set(&x, &y);
        let oracle = common::homs(&x, &y);
        prop_assert_eq!(found.len(), oracle.len());
        for f in &found {
            prop_assert!(oracle.contains(&common::images_of(f)));
        }
    }

    #[test]
    fn pi0_matches_oracle(seed in any::<u64>(), cells in 1usize..=10) {
        let x = set(seed, cells);
        prop_assert_eq!(pi0(&x).0, common::components(&x));
    }

    #[test]
    fn pullbacks_count_matching_pairs(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), pf in any::<usize>(), pg in any::<usize>()) {
        let z = set(c, 4);
        let x = set(a, 5);
        let y = set(b, 5);
        let fs = common::homs(&x, &z);
        let gs = common::homs(&y, &z);
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let f = common::to_map(&x, &z, &fs[pf % fs.len()]);
        let g = common::to_map(&y, &z, &gs[pg % gs.len()]);
        let p = pullback(&f, &g);
        for n in 0..=2 {
            prop_assert_eq!(p.object.simplex_count(n), common::pullback_simplices(&f, &g, n));
        }
        prop_assert!(p.proj_x.then(&f).unwrap().images_eq(&p.proj_y.then(&g).unwrap()));
    }

    #[test]
    fn pushouts_along_a_vertex(a in any::<u64>(), b in any::<u64>()) {
        let x = set(a, 6);
        let y = set(b, 6);
        let pt = Arc::new(point());
        let to_x = SimplicialMap::from_fn(pt.clone(), x.clone(), |_| x.simplices(0)[0]);
        let to_y = SimplicialMap::from_fn(pt.clone(), y.clone(), |_| y.simplices(0)[0]);
        let p = pushout(&to_x, &to_y).unwrap();
        for n in 0..=2 {
            prop_assert_eq!(p.object.simplex_count(n), x.simplex_count(n) + y.simplex_count(n) - 1);
        }
        let sum = coproduct(&[x.clone(), y.clone()]);
        prop_assert_eq!(pi0(&sum.object).0, pi0(&x).0 + pi0(&y).0);
        prop_assert_eq!(pi0(&p.object).0, pi0(&x).0 + pi0(&y).0 - 1);
    }

    #[test]
    fn rlp_matches_oracle(a in any::<u64>(), b in any::<u64>(), which in 0usize..5, pick in any::<usize>()) {
        let x = set(a, 6);
        let y = set(b, 4);
        let maps = common::homs(&x, &y);
        prop_assume!(!maps.is_empty());
        let p = common::to_map(&x, &y, &maps[pick % maps.len()]);
        let i = match which {
            0 => boundary_inclusion(0),
            1 => boundary_inclusion(1),
            2 => horn_inclusion(2, 0).unwrap(),
            3 => horn_inclusion(2, 1).unwrap(),
            _ => horn_inclusion(2, 2).unwrap(),
        };
        let found = rlp_check(&common::single_map(i.clone()), &common::single_map(p.clone())).holds();
        prop_assert_eq!(found, common::rlp(&i, &p));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), cells in 1usize..=10) {
        let x = set(seed, cells);
        let mut w = DocumentWriter::new();
        w.set("x", &x);
        let text = to_text(&w.finish());
        let ws = parse(&text, None).unwrap();
        let y = &ws.sets["x"];
        prop_assert_eq!(y.cell_counts(), x.cell_counts());
        let mut w2 = DocumentWriter::new();
        w2.set("x", y);
        prop_assert_eq!(to_text(&w2.finish()), text);
    }
}

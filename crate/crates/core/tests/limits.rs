use std::sync::Arc;

use eqloc::simplicial::standard::{boundary_inclusion, discrete, point, standard_simplex};
use eqloc::simplicial::{coproduct, product, pushout, to_terminal};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn square_product_counts() {
    let d1 = Arc::new(standard_simplex(1));
    let p = product(&d1, &d1);
    assert_eq!(p.object.cell_counts(), vec![4, 5, 2]);
    assert!(p.object.validate().is_ok());
    assert!(p.proj_x.check().is_ok());
    assert!(p.proj_y.check().is_ok());
}

#[test]
fn shuffle_counts() {
    for a in 0..=3 {
        for b in 0..=3 {
            let x = Arc::new(standard_simplex(a));
            let y = Arc::new(standard_simplex(b));
            let p = product(&x, &y);
            assert_eq!(p.object.cell_count(a + b), binom(a + b, a), "Δ{a}×Δ{b}");
            assert!(p.object.validate().is_ok());
        }
    }
}

#[test]
fn product_units() {
    let d1 = Arc::new(standard_simplex(1));
    let pt = Arc::new(point());
    assert_eq!(product(&d1, &pt).object.cell_counts(), vec![2, 1]);
    let empty = Arc::new(discrete(Vec::<String>::new()));
    assert!(product(&empty, &d1).object.is_empty());
}

#[test]
fn circle_from_pushout() {
    let i = boundary_inclusion(1);
    let collapse = to_terminal(i.source());
    let c = pushout(&collapse, &i).unwrap();
    assert_eq!(c.object.cell_counts(), vec![1, 1]);
    assert!(c.object.validate().is_ok());
    for leg in &c.legs {
        assert!(leg.check().is_ok());
    }
    // same pushout through the general quotient engine
    let c2 = pushout(&i, &collapse).unwrap();
    assert_eq!(c2.object.cell_counts(), vec![1, 1]);
    assert!(c2.object.validate().is_ok());
}

#[test]
fn coproduct_of_points() {
    let pt = Arc::new(point());
    let c = coproduct(&[pt.clone(), pt]);
    assert_eq!(c.object.cell_counts(), vec![2]);
}

#[test]
fn small_hom_sets() {
    use eqloc::simplicial::hom_set;
    let d0 = Arc::new(point());
    let d1 = Arc::new(standard_simplex(1));
    let empty = Arc::new(discrete(Vec::<String>::new()));
    assert_eq!(hom_set(&d0, &d0).len(), 1);
    assert_eq!(hom_set(&d1, &d1).len(), 3);
    assert_eq!(hom_set(&d1, &empty).len(), 0);
    assert_eq!(hom_set(&empty, &d1).len(), 1);
    let d2 = Arc::new(standard_simplex(2));
    assert_eq!(hom_set(&d2, &d2).len(), 10);
}

#[test]
fn interval_cotensor() {
    use eqloc::simplicial::hom::cotensor_set;
    let d1 = Arc::new(standard_simplex(1));
    let c = cotensor_set(&d1, &d1, 1);
    assert_eq!(c.set.cell_counts(), vec![3, 3]);
    assert!(c.set.validate().is_ok());
    let pt = Arc::new(point());
    let c0 = cotensor_set(&d1, &pt, 2);
    assert_eq!(c0.set.cell_counts(), vec![2, 1]);
}
